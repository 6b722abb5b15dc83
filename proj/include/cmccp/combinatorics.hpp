#pragma once

#include <span>
#include <vector>

#include "cmccp/rational.hpp"

namespace cmccp {

/// C(n, k); zero for k < 0 or k > n.
Count binomial(long n, long k);

/// total! / prod(parts_i!). Throws std::invalid_argument if the parts do not sum to total.
Count multinomial(long total, std::span<const long> parts);
Count multinomial(long total, std::initializer_list<long> parts);

/// Number of game states for `players` players and m labels: C(m + P, P), zero for m < 0.
Count mu(int players, long m);

/// Sum_{j=1..M} 1/j, exactly.
Rational harmonic(long labels);

/// Pascal triangle up to row n_max, for hot loops that hit small binomials repeatedly.
class BinomialTable {
public:
    explicit BinomialTable(long n_max);

    const Count& operator()(long n, long k) const {
        static const Count zero{0};
        if (k < 0 || k > n || n < 0) return zero;
        return rows_[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)];
    }
    long n_max() const { return static_cast<long>(rows_.size()) - 1; }

private:
    std::vector<std::vector<Count>> rows_;
};

}  // namespace cmccp
