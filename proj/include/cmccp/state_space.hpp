#pragma once

#include <cstdint>
#include <initializer_list>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "cmccp/rational.hpp"

namespace cmccp {

/// Linear index of a state under the lower-triangular embedding.
using StateIndex = std::uint64_t;

/// Thrown when a configuration does not fit the supported envelope.
/// Carries the state count that triggered it.
class EnvelopeExceeded : public std::runtime_error {
public:
    EnvelopeExceeded(const std::string& what, Count states)
        : std::runtime_error(what), states_(std::move(states)) {}
    const Count& states() const { return states_; }

private:
    Count states_;
};

/// Game state: by_owners()[j] is the number of labels owned by exactly j players.
///
/// The P+1 counts always sum to M. S_0 is stored even though the embedding
/// ignores it, since partition bounds need it.
class StateVector {
public:
    /// counts[j] = S_j, j = 0..P. Throws std::invalid_argument on negative counts
    /// or an empty vector.
    explicit StateVector(std::vector<int> counts);

    /// Builds from the (S_P, ..., S_0) reading order used in printed states.
    static StateVector descending(std::initializer_list<int> high_to_low);

    /// (0, ..., 0, M).
    static StateVector initial(int players, int labels);
    /// (M, 0, ..., 0).
    static StateVector goal(int players, int labels);

    int players() const { return static_cast<int>(counts_.size()) - 1; }
    int labels() const { return labels_; }
    int operator[](int owners) const { return counts_[static_cast<std::size_t>(owners)]; }
    const std::vector<int>& counts() const { return counts_; }

    bool is_goal() const { return counts_.back() == labels_; }

    friend bool operator==(const StateVector&, const StateVector&) = default;

private:
    std::vector<int> counts_;
    int labels_ = 0;
};

inline bool is_goal(const StateVector& s) { return s.is_goal(); }

/// "(S_P,...,S_1)"; S_0 is omitted.
std::string format_state(const StateVector& s);
std::ostream& operator<<(std::ostream& os, const StateVector& s);

/// The set of states for a fixed (P, M) together with the embedding Q_P and its inverse.
///
/// Index 0 is the initial state and index size()-1 is goal. Indices are
/// ordered so that every feasible transition goes from a lower index to a
/// higher or equal one.
class StateSpace {
public:
    /// Throws std::invalid_argument for P < 1 or M < 1, and EnvelopeExceeded
    /// when mu_P(M) does not fit a 64-bit index.
    StateSpace(int players, int labels);

    int players() const { return players_; }
    int labels() const { return labels_; }
    /// mu_P(M).
    StateIndex size() const { return size_; }

    StateIndex encode(const StateVector& s) const;
    StateVector decode(StateIndex q) const;

    /// mu_p(s) for 1 <= p <= P and -1 <= s <= M.
    StateIndex mu(int p, long s) const {
        if (s < 0) return 0;
        return table_[static_cast<std::size_t>(p)][static_cast<std::size_t>(s)];
    }

    /// All mu_P(M) states in index order, initial first, goal last.
    std::vector<StateVector> enumerate() const;

private:
    void check(const StateVector& s) const;

    int players_;
    int labels_;
    StateIndex size_;
    std::vector<std::vector<StateIndex>> table_;  // table_[p][s] = C(s + p, p)
};

StateIndex encode(const StateVector& s);
StateVector decode(StateIndex q, int players, int labels);
std::vector<StateVector> enumerate_states(int players, int labels);

}  // namespace cmccp
