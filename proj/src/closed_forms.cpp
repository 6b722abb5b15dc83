#include "cmccp/closed_forms.hpp"

#include <stdexcept>

#include "cmccp/combinatorics.hpp"

namespace cmccp {

namespace {

void check_single(long labels, long lot) {
    if (labels < 1) throw std::invalid_argument("M must be >= 1");
    if (lot < 1 || lot > labels) throw std::invalid_argument("L must satisfy 1 <= L <= M");
}

Rational sign(long exponent) { return (exponent % 2 == 0) ? Rational(1) : Rational(-1); }

}  // namespace

Probability single_player_entry(long row, long col, long labels, long lot) {
    check_single(labels, lot);
    if (row < 0 || col < 0 || row >= labels || col >= labels) {
        throw std::out_of_range("single_player_entry: index outside [0, M-1]");
    }
    if (row - col > lot || row < col) return Probability();
    return Probability(binomial(labels - col, row - col) * binomial(col, lot - row + col),
                       binomial(labels, lot));
}

RationalMatrix single_player_matrix(long labels, long lot) {
    RationalMatrix t(labels, labels);
    for (long j = 0; j < labels; ++j) {
        for (long k = 0; k < labels; ++k) t(j, k) = single_player_entry(j, k, labels, lot).exact();
    }
    return t;
}

InvolutionMatrix involution(long labels) {
    if (labels < 1) throw std::invalid_argument("M must be >= 1");
    InvolutionMatrix e{labels, RationalMatrix(labels, labels)};
    for (long j = 0; j < labels; ++j) {
        for (long k = 0; k < labels; ++k) {
            e.entries(j, k) = sign(labels - j) * Rational(binomial(labels - k, labels - j));
        }
    }
    return e;
}

RationalMatrix single_player_eigenvalues(long labels, long lot) {
    check_single(labels, lot);
    RationalMatrix lambda = RationalMatrix::Zero(labels, labels);
    const Count lots = binomial(labels, lot);
    for (long j = 0; j < labels; ++j) lambda(j, j) = Rational(binomial(j, lot), lots);
    return lambda;
}

Rational bgoal_single_closed_exact(long labels, long lot) {
    check_single(labels, lot);
    const Count lots = binomial(labels, lot);
    Rational sum(0);
    for (long k = 0; k < labels; ++k) {
        sum += sign(k + labels - 1) * Rational(binomial(labels, k), lots - binomial(k, lot));
    }
    return Rational(lots) * sum;
}

double bgoal_single_closed(long labels, long lot) { return bgoal_single_closed_exact(labels, lot).to_double(); }

Rational tau_single_exact(long level, long labels, long lot) {
    check_single(labels, lot);
    if (level < 0 || level >= labels) throw std::out_of_range("tau_single: level outside [0, M-1]");
    const Count lots = binomial(labels, lot);
    Rational sum(0);
    for (long k = 0; k <= level; ++k) {
        sum += sign(level + k) * Rational(binomial(level, k), lots - binomial(k, lot));
    }
    return Rational(lots * binomial(labels, level)) * sum;
}

double tau_single(long level, long labels, long lot) { return tau_single_exact(level, labels, lot).to_double(); }

}  // namespace cmccp
