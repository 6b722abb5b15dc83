#include "cmccp/state_space.hpp"

#include <limits>
#include <numeric>
#include <sstream>

#include "cmccp/combinatorics.hpp"

namespace cmccp {

StateVector::StateVector(std::vector<int> counts) : counts_(std::move(counts)) {
    if (counts_.size() < 2) throw std::invalid_argument("StateVector: need at least one player");
    for (int c : counts_) {
        if (c < 0) throw std::invalid_argument("StateVector: negative count");
    }
    labels_ = std::accumulate(counts_.begin(), counts_.end(), 0);
}

StateVector StateVector::descending(std::initializer_list<int> high_to_low) {
    return StateVector(std::vector<int>(std::rbegin(high_to_low), std::rend(high_to_low)));
}

StateVector StateVector::initial(int players, int labels) {
    std::vector<int> counts(static_cast<std::size_t>(players) + 1, 0);
    counts.front() = labels;
    return StateVector(std::move(counts));
}

StateVector StateVector::goal(int players, int labels) {
    std::vector<int> counts(static_cast<std::size_t>(players) + 1, 0);
    counts.back() = labels;
    return StateVector(std::move(counts));
}

std::string format_state(const StateVector& s) {
    std::ostringstream os;
    os << '(';
    for (int j = s.players(); j >= 1; --j) {
        os << s[j];
        if (j > 1) os << ',';
    }
    os << ')';
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const StateVector& s) { return os << format_state(s); }

StateSpace::StateSpace(int players, int labels) : players_(players), labels_(labels) {
    if (players < 1) throw std::invalid_argument("StateSpace: P must be >= 1");
    if (labels < 1) throw std::invalid_argument("StateSpace: M must be >= 1");
    const Count total = cmccp::mu(players, labels);
    if (total > Count(std::numeric_limits<StateIndex>::max())) {
        throw EnvelopeExceeded("state count " + total.str() + " does not fit a 64-bit index", total);
    }
    size_ = static_cast<StateIndex>(total);
    table_.assign(static_cast<std::size_t>(players) + 1,
                  std::vector<StateIndex>(static_cast<std::size_t>(labels) + 1, 0));
    for (int p = 1; p <= players; ++p) {
        for (int s = 0; s <= labels; ++s) {
            table_[static_cast<std::size_t>(p)][static_cast<std::size_t>(s)] =
                static_cast<StateIndex>(binomial(s + p, p));
        }
    }
}

void StateSpace::check(const StateVector& s) const {
    if (s.players() != players_ || s.labels() != labels_) {
        throw std::invalid_argument("state " + format_state(s) + " does not belong to P=" +
                                    std::to_string(players_) + ", M=" + std::to_string(labels_));
    }
}

StateIndex StateSpace::encode(const StateVector& s) const {
    check(s);
    // Q_P = sum_{j=0}^{P-1} mu_{P-j}(sum_{k=j+1}^{P} S_k - 1)
    StateIndex q = 0;
    long suffix = labels_ - s[0];
    for (int k = 1; k <= players_; ++k) {
        q += mu(players_ - k + 1, suffix - 1);
        suffix -= s[k];
    }
    return q;
}

StateVector StateSpace::decode(StateIndex q) const {
    if (q >= size_) {
        throw std::out_of_range("decode: index " + std::to_string(q) + " outside [0, " +
                                std::to_string(size_ - 1) + "]");
    }
    // suffix[j] = S_j + ... + S_P, recovered level by level from the disjoint
    // ranges [mu_p(s-1), mu_p(s) - 1].
    std::vector<long> suffix(static_cast<std::size_t>(players_) + 2, 0);
    long bound = labels_;
    for (int p = players_; p >= 2; --p) {
        long s = 0;
        while (s < bound && mu(p, s) <= q) ++s;
        q -= mu(p, s - 1);
        suffix[static_cast<std::size_t>(players_ - p + 1)] = s;
        bound = s;
    }
    suffix[static_cast<std::size_t>(players_)] = static_cast<long>(q);

    std::vector<int> counts(static_cast<std::size_t>(players_) + 1);
    for (int j = 1; j <= players_; ++j) {
        counts[static_cast<std::size_t>(j)] =
            static_cast<int>(suffix[static_cast<std::size_t>(j)] - suffix[static_cast<std::size_t>(j) + 1]);
    }
    counts[0] = labels_ - static_cast<int>(suffix[1]);
    return StateVector(std::move(counts));
}

std::vector<StateVector> StateSpace::enumerate() const {
    std::vector<StateVector> out;
    out.reserve(static_cast<std::size_t>(size_));
    for (StateIndex q = 0; q < size_; ++q) out.push_back(decode(q));
    return out;
}

StateIndex encode(const StateVector& s) { return StateSpace(s.players(), s.labels()).encode(s); }

StateVector decode(StateIndex q, int players, int labels) {
    return StateSpace(players, labels).decode(q);
}

std::vector<StateVector> enumerate_states(int players, int labels) {
    return StateSpace(players, labels).enumerate();
}

}  // namespace cmccp
