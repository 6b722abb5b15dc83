#include "cmccp/markov_engine.hpp"

#include <numeric>
#include <sstream>

namespace cmccp {

void check_envelope(int players, int labels, int lot, const Envelope& envelope) {
    if (players < 1) throw std::invalid_argument("P must be >= 1");
    if (labels < 1) throw std::invalid_argument("M must be >= 1");
    if (lot < 1 || lot > labels) throw std::invalid_argument("L must satisfy 1 <= L <= M");
    const Count states = mu(players, labels);
    if (players > envelope.max_players || labels > envelope.max_labels) {
        throw EnvelopeExceeded("P=" + std::to_string(players) + ", M=" + std::to_string(labels) +
                                   " is outside the supported envelope (P <= " +
                                   std::to_string(envelope.max_players) + ", M <= " +
                                   std::to_string(envelope.max_labels) + "); mu_P(M) = " + states.str(),
                               states);
    }
    if (states > Count(envelope.max_states)) {
        throw EnvelopeExceeded("mu_P(M) = " + states.str() + " states exceeds the limit of " +
                                   std::to_string(envelope.max_states),
                               states);
    }
    const Count entry_bound = binomial(lot + players, players) * (states - 1);
    if (entry_bound > Count(envelope.max_nonzeros)) {
        throw EnvelopeExceeded("entry bound " + entry_bound.str() + " for mu_P(M) = " + states.str() +
                                   " states exceeds the limit of " + std::to_string(envelope.max_nonzeros),
                               states);
    }
}

LotPartition::LotPartition(std::vector<int> counts) : counts_(std::move(counts)) {
    if (counts_.size() < 2) throw std::invalid_argument("LotPartition: need at least one player");
    for (int c : counts_) {
        if (c < 0) throw std::invalid_argument("LotPartition: negative count");
    }
    lot_size_ = std::accumulate(counts_.begin(), counts_.end(), 0);
}

std::ostream& operator<<(std::ostream& os, const LotPartition& r) {
    os << '(';
    for (int l = 0; l <= r.players(); ++l) os << (l ? "," : "") << r[l];
    return os << ')';
}

std::vector<LotPartition> feasible_partitions(const StateVector& s, int lot) {
    if (lot < 1 || lot > s.labels()) throw std::invalid_argument("feasible_partitions: need 1 <= L <= M");
    std::vector<LotPartition> out;
    for_each_partition(s, lot, [&](const std::vector<int>& r) { out.emplace_back(r); });
    return out;
}

namespace {

// Successor without feasibility checks; counts[k] += R_{k-1} - R_k with R_P kept in place.
std::vector<int> successor_counts(const std::vector<int>& s, const std::vector<int>& r) {
    const std::size_t top = s.size() - 1;
    std::vector<int> next = s;
    next[0] -= r[0];
    for (std::size_t k = 1; k < top; ++k) next[k] += r[k - 1] - r[k];
    next[top] += r[top - 1];
    return next;
}

}  // namespace

StateVector apply_partition(const StateVector& s, const LotPartition& r) {
    if (r.players() != s.players()) throw std::invalid_argument("apply_partition: player count mismatch");
    for (int l = 0; l <= s.players(); ++l) {
        if (r[l] > s[l]) {
            throw std::invalid_argument("apply_partition: R_" + std::to_string(l) + " exceeds S_" +
                                        std::to_string(l));
        }
    }
    return StateVector(successor_counts(s.counts(), r.counts()));
}

Probability transition_probability(const StateVector& source, const StateVector& target, int lot) {
    const int players = source.players();
    if (target.players() != players || target.labels() != source.labels()) {
        throw std::invalid_argument("transition_probability: states of different (P, M)");
    }
    const int labels = source.labels();
    if (lot < 1 || lot > labels) throw std::invalid_argument("transition_probability: need 1 <= L <= M");

    // R = W(target - source) must satisfy the per-class bounds.
    std::vector<int> r(static_cast<std::size_t>(players) + 1, 0);
    int suffix = 0;
    int weighted = 0;
    for (int k = players; k >= 1; --k) {
        const int d = target[k] - source[k];
        suffix += d;
        weighted += k * d;
        r[static_cast<std::size_t>(k) - 1] = suffix;
    }
    r[static_cast<std::size_t>(players)] = lot - weighted;
    Count weight = 1;
    for (int k = 0; k <= players; ++k) {
        const int rk = r[static_cast<std::size_t>(k)];
        if (rk < 0 || rk > std::min(lot, source[k])) return Probability();
        weight *= binomial(source[k], rk);
    }
    return Probability(weight, binomial(labels, lot));
}

Probability TransitionMatrix::at(StateIndex row, StateIndex col) const {
    for (const Entry& e : column(col)) {
        if (e.row == row) return Probability(e.weight, denominator_);
    }
    return Probability();
}

std::size_t TransitionMatrix::nonzeros() const {
    std::size_t n = 0;
    for (const auto& c : columns_) n += c.size();
    return n;
}

TransitionMatrix build_transition_matrix(int players, int labels, int lot, const Envelope& envelope) {
    check_envelope(players, labels, lot, envelope);
    StateSpace space(players, labels);
    const BinomialTable choose(labels);
    TransitionMatrix t(space, lot, choose(labels, lot));

    const auto n = static_cast<std::size_t>(t.dimension());
    t.columns_.resize(n);
    t.goal_weights_.assign(n, Count(0));
    const StateIndex goal = space.size() - 1;
    for (std::size_t c = 0; c < n; ++c) {
        const StateVector source = space.decode(c);
        auto& column = t.columns_[c];
        for_each_partition(source, lot, [&](const std::vector<int>& r) {
            Count weight = 1;
            for (int k = 0; k <= players; ++k) weight *= choose(source[k], r[static_cast<std::size_t>(k)]);
            const StateIndex row = space.encode(StateVector(successor_counts(source.counts(), r)));
            if (row == goal) {
                t.goal_weights_[c] += weight;
            } else {
                const double value = ratio_to_double(weight, t.denominator_);
                column.push_back({row, std::move(weight), value});
            }
        });
        std::sort(column.begin(), column.end(), [](const auto& a, const auto& b) { return a.row < b.row; });
    }
    return t;
}

void write_matrix_dump(std::ostream& os, const TransitionMatrix& t) {
    os << "P=" << t.players() << " M=" << t.labels() << " L=" << t.lot() << " dimension=" << t.dimension()
       << '\n';
    const StateSpace& space = t.space();
    for (StateIndex c = 0; c < t.dimension(); ++c) {
        const std::string col_state = format_state(space.decode(c));
        for (const auto& e : t.column(c)) {
            const Rational p(e.weight, t.denominator());
            os << e.row << ' ' << c << ' ' << p.numerator() << ' ' << p.denominator() << ' '
               << format_state(space.decode(e.row)) << ' ' << col_state << '\n';
        }
    }
    for (StateIndex c = 0; c < t.dimension(); ++c) {
        if (t.goal_weight(c).is_zero()) continue;
        const Rational p(t.goal_weight(c), t.denominator());
        os << "goal " << c << ' ' << p.numerator() << ' ' << p.denominator() << ' '
           << format_state(space.decode(c)) << '\n';
    }
}

std::string matrix_dump(const TransitionMatrix& t) {
    std::ostringstream os;
    write_matrix_dump(os, t);
    return os.str();
}

namespace {

std::vector<int> shifted(const std::vector<int>& counts, std::size_t drop) {
    return std::vector<int>(counts.begin() + static_cast<std::ptrdiff_t>(drop), counts.end());
}

}  // namespace

Count AssignmentCounter::total(const std::vector<int>& counts) {
    const long players = static_cast<long>(counts.size()) - 1;
    long labels = 0;
    std::vector<long> parts;
    parts.reserve(counts.size());
    for (int c : counts) {
        parts.push_back(c);
        labels += c;
    }
    Count u = multinomial(labels, parts);
    for (long j = 0; j <= players; ++j) {
        u *= boost::multiprecision::pow(binomial(players, j), static_cast<unsigned>(counts[static_cast<std::size_t>(j)]));
    }
    return u;
}

Count AssignmentCounter::incomplete(const std::vector<int>& counts) {
    const std::size_t players = counts.size() - 1;
    if (players == 0) return 1;
    if (auto it = memo_.find(counts); it != memo_.end()) return it->second;

    // j players can all be complete only if no label has fewer than j owners.
    std::size_t max_complete = 0;
    while (max_complete < players && counts[max_complete] == 0) ++max_complete;
    Count v = total(counts);
    for (std::size_t j = 1; j <= max_complete; ++j) {
        v -= binomial(static_cast<long>(players), static_cast<long>(j)) * incomplete(shifted(counts, j));
    }
    memo_.emplace(counts, v);
    return v;
}

AssignmentCounts AssignmentCounter::operator()(const StateVector& s) {
    return {total(s.counts()), incomplete(s.counts())};
}

AssignmentCounts assignment_counts(const StateVector& s) {
    AssignmentCounter counter;
    return counter(s);
}

Rational fixed_player_incomplete(const StateVector& s) {
    const int players = s.players();
    Count owned = 1;
    for (int k = 0; k <= players; ++k) {
        owned *= boost::multiprecision::pow(Count(k), static_cast<unsigned>(s[k]));
    }
    const Count all = boost::multiprecision::pow(Count(players), static_cast<unsigned>(s.labels()));
    return Rational(1) - Rational(owned, all);
}

}  // namespace cmccp
