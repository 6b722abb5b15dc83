#include "cmccp/combinatorics.hpp"

#include <numeric>
#include <stdexcept>

namespace cmccp {

Count binomial(long n, long k) {
    if (n < 0) throw std::invalid_argument("binomial: negative n");
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    Count result = 1;
    for (long i = 1; i <= k; ++i) {
        // Exact at every step: result * (n - k + i) is divisible by i.
        result *= (n - k + i);
        result /= i;
    }
    return result;
}

Count multinomial(long total, std::span<const long> parts) {
    if (total < 0) throw std::invalid_argument("multinomial: negative total");
    long sum = 0;
    for (long p : parts) {
        if (p < 0) throw std::invalid_argument("multinomial: negative part");
        sum += p;
    }
    if (sum != total) throw std::invalid_argument("multinomial: parts do not sum to total");
    Count result = 1;
    long remaining = total;
    for (long p : parts) {
        result *= binomial(remaining, p);
        remaining -= p;
    }
    return result;
}

Count multinomial(long total, std::initializer_list<long> parts) {
    return multinomial(total, std::span<const long>(parts.begin(), parts.size()));
}

Count mu(int players, long m) {
    if (players < 1) throw std::invalid_argument("mu: player count must be >= 1");
    if (m < 0) return 0;
    return binomial(m + players, players);
}

Rational harmonic(long labels) {
    if (labels < 1) throw std::invalid_argument("harmonic: M must be >= 1");
    Rational sum(0);
    for (long j = 1; j <= labels; ++j) sum += Rational(Count(1), Count(j));
    return sum;
}

BinomialTable::BinomialTable(long n_max) {
    if (n_max < 0) throw std::invalid_argument("BinomialTable: negative size");
    rows_.resize(static_cast<std::size_t>(n_max) + 1);
    for (std::size_t n = 0; n < rows_.size(); ++n) {
        auto& row = rows_[n];
        row.resize(n + 1);
        row.front() = 1;
        row.back() = 1;
        for (std::size_t k = 1; k < n; ++k) row[k] = rows_[n - 1][k - 1] + rows_[n - 1][k];
    }
}

}  // namespace cmccp
