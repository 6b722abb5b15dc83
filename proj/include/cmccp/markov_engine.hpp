#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

#include <Eigen/Core>

#include "cmccp/combinatorics.hpp"
#include "cmccp/rational.hpp"
#include "cmccp/state_space.hpp"

namespace cmccp {

/// Limits on configurations the exact engine accepts.
struct Envelope {
    int max_players = 6;
    int max_labels = 64;
    StateIndex max_states = 2'000'000;
    /// Upper bound on stored entries, using the C(L+P,P) per-column bound.
    std::uint64_t max_nonzeros = 60'000'000;
};

/// Throws std::invalid_argument for malformed (P, M, L) and EnvelopeExceeded
/// when the state space or the entry bound is too large.
void check_envelope(int players, int labels, int lot, const Envelope& envelope = {});

/// Split of a lot by owner-count class: (*this)[l] = R_l coupons whose label
/// is currently owned by exactly l players.
class LotPartition {
public:
    explicit LotPartition(std::vector<int> counts);
    static LotPartition ascending(std::initializer_list<int> r0_to_rp) {
        return LotPartition(std::vector<int>(r0_to_rp));
    }

    int operator[](int owners) const { return counts_[static_cast<std::size_t>(owners)]; }
    int players() const { return static_cast<int>(counts_.size()) - 1; }
    int lot_size() const { return lot_size_; }
    const std::vector<int>& counts() const { return counts_; }
    /// True when every coupon lands on a label everybody already owns.
    bool discards_all() const { return counts_.back() == lot_size_; }

    friend bool operator==(const LotPartition&, const LotPartition&) = default;

private:
    std::vector<int> counts_;
    int lot_size_ = 0;
};

std::ostream& operator<<(std::ostream& os, const LotPartition& r);

namespace detail {

template <class F>
void partitions_from(const StateVector& s, int owners, int remaining, std::vector<int>& r, F& visit) {
    const int players = s.players();
    if (owners == players) {
        if (remaining <= s[players]) {
            r[static_cast<std::size_t>(owners)] = remaining;
            visit(static_cast<const std::vector<int>&>(r));
        }
        return;
    }
    const int cap = std::min(remaining, s[owners]);
    for (int take = 0; take <= cap; ++take) {
        r[static_cast<std::size_t>(owners)] = take;
        partitions_from(s, owners + 1, remaining - take, r, visit);
    }
}

}  // namespace detail

/// Calls visit(const std::vector<int>& r) once for every R with
/// 0 <= R_l <= min(L, S_l) and sum R_l = L.
template <class F>
void for_each_partition(const StateVector& s, int lot, F&& visit) {
    std::vector<int> r(static_cast<std::size_t>(s.players()) + 1, 0);
    detail::partitions_from(s, 0, lot, r, visit);
}

std::vector<LotPartition> feasible_partitions(const StateVector& s, int lot);

/// Successor of s when a lot partitioned as r arrives. Throws std::invalid_argument
/// if r is not feasible for s.
StateVector apply_partition(const StateVector& s, const LotPartition& r);

/// Probability that one burst moves source to target: the partition is
/// reconstructed from the state difference, and infeasible pairs give zero.
Probability transition_probability(const StateVector& source, const StateVector& target, int lot);

/// Transition structure over the mu_P(M)-1 non-goal states.
///
/// Columns are indexed by source state. Every entry shares the denominator
/// C(M,L), so only integer weights are stored. Transitions into goal are kept
/// apart as the per-column goal weight.
class TransitionMatrix {
public:
    struct Entry {
        StateIndex row;
        Count weight;
        double value;  // weight / denominator, correctly rounded
    };

    int players() const { return space_.players(); }
    int labels() const { return space_.labels(); }
    int lot() const { return lot_; }
    StateIndex dimension() const { return space_.size() - 1; }
    const StateSpace& space() const { return space_; }

    /// C(M, L).
    const Count& denominator() const { return denominator_; }

    std::span<const Entry> column(StateIndex c) const { return columns_.at(static_cast<std::size_t>(c)); }
    const Count& goal_weight(StateIndex c) const { return goal_weights_.at(static_cast<std::size_t>(c)); }

    Probability at(StateIndex row, StateIndex col) const;
    Probability goal_mass(StateIndex col) const { return Probability(goal_weight(col), denominator_); }
    std::size_t nonzeros() const;

    template <class Scalar>
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> to_dense() const {
        const auto n = static_cast<Eigen::Index>(dimension());
        Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> out =
            Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>::Zero(n, n);
        for (StateIndex c = 0; c < dimension(); ++c) {
            for (const Entry& e : column(c)) {
                out(static_cast<Eigen::Index>(e.row), static_cast<Eigen::Index>(c)) =
                    entry_as<Scalar>(e);
            }
        }
        return out;
    }

    template <class Scalar>
    Scalar entry_as(const Entry& e) const {
        if constexpr (std::is_same_v<Scalar, double>) {
            return e.value;
        } else {
            return Scalar(Rational(e.weight, denominator_));
        }
    }

private:
    friend TransitionMatrix build_transition_matrix(int, int, int, const Envelope&);
    TransitionMatrix(StateSpace space, int lot, Count denominator)
        : space_(std::move(space)), lot_(lot), denominator_(std::move(denominator)) {}

    StateSpace space_;
    int lot_;
    Count denominator_;
    std::vector<std::vector<Entry>> columns_;
    std::vector<Count> goal_weights_;
};

TransitionMatrix build_transition_matrix(int players, int labels, int lot, const Envelope& envelope = {});

/// Text dump: a header line "P=.. M=.. L=.. dimension=..", then one line per
/// stored entry "row col numerator denominator row_state col_state" in
/// column-major order, then one "goal col numerator denominator col_state"
/// line per column with non-zero goal mass. Fractions are in lowest terms.
void write_matrix_dump(std::ostream& os, const TransitionMatrix& t);
std::string matrix_dump(const TransitionMatrix& t);

/// tau_j: expected number of bursts spent in non-goal state j starting from
/// the initial state. b_goal is their sum.
template <class Scalar>
struct AbsorptionProfile {
    std::vector<Scalar> tau;
    Scalar b_goal{};
};

/// Forward substitution over the triangular structure, column by column.
/// Throws std::logic_error if a diagonal entry equals one.
template <class Scalar>
AbsorptionProfile<Scalar> absorption_profile(const TransitionMatrix& t) {
    const auto n = static_cast<std::size_t>(t.dimension());
    AbsorptionProfile<Scalar> out;
    out.tau.assign(n, Scalar(0));
    std::vector<Scalar> inflow(n, Scalar(0));
    if (n > 0) inflow[0] = Scalar(1);
    for (std::size_t c = 0; c < n; ++c) {
        const auto col = t.column(static_cast<StateIndex>(c));
        Scalar stay(0);
        for (const auto& e : col) {
            if (e.row == c) stay = t.template entry_as<Scalar>(e);
        }
        if (stay == Scalar(1)) {
            throw std::logic_error("absorption_profile: state " + std::to_string(c) + " is absorbing");
        }
        Scalar tau_c = c == 0 ? Scalar(1) : inflow[c] / (Scalar(1) - stay);
        for (const auto& e : col) {
            if (e.row != c) inflow[static_cast<std::size_t>(e.row)] += t.template entry_as<Scalar>(e) * tau_c;
        }
        out.b_goal += tau_c;
        out.tau[c] = std::move(tau_c);
    }
    return out;
}

/// Number of owner assignments compatible with a state (U) and how many of
/// them leave every player incomplete (V).
struct AssignmentCounts {
    Count total;       // U
    Count incomplete;  // V
};

/// Memoized evaluator of U and V. Memo entries are keyed by the (possibly
/// shifted) state, so one instance can be reused across a whole state space.
class AssignmentCounter {
public:
    AssignmentCounts operator()(const StateVector& s);

private:
    Count total(const std::vector<int>& counts);
    Count incomplete(const std::vector<int>& counts);

    std::map<std::vector<int>, Count> memo_;
};

AssignmentCounts assignment_counts(const StateVector& s);

/// Per-state conditional probabilities, indexed like tau:
/// nu_j = Pr{no player complete | state j}, xi_j = Pr{player 0 incomplete | state j}.
template <class Scalar>
struct CompletionVectors {
    std::vector<Scalar> nu;
    std::vector<Scalar> xi;
};

/// Pr{a fixed player misses some label | s} = 1 - prod_k (k/P)^{S_k}, exactly.
Rational fixed_player_incomplete(const StateVector& s);

template <class Scalar>
CompletionVectors<Scalar> completion_vectors(int players, int labels) {
    const StateSpace space(players, labels);
    const auto n = static_cast<std::size_t>(space.size() - 1);
    CompletionVectors<Scalar> out;
    out.nu.reserve(n);
    out.xi.reserve(n);
    AssignmentCounter counter;
    for (StateIndex q = 0; q + 1 < space.size(); ++q) {
        const StateVector s = space.decode(q);
        const AssignmentCounts uv = counter(s);
        if constexpr (std::is_same_v<Scalar, double>) {
            out.nu.push_back(ratio_to_double(uv.incomplete, uv.total));
            out.xi.push_back(fixed_player_incomplete(s).to_double());
        } else {
            out.nu.push_back(Scalar(Rational(uv.incomplete, uv.total)));
            out.xi.push_back(Scalar(fixed_player_incomplete(s)));
        }
    }
    return out;
}

template <class Scalar>
struct CompletionMetrics {
    Scalar b_first{};
    Scalar b_this{};
    Scalar b_goal{};
};

/// Expected bursts until the first player, player 0, and every player
/// complete, for single-coupon lots.
template <class Scalar>
CompletionMetrics<Scalar> completion_metrics(int players, int labels, const Envelope& envelope = {}) {
    const TransitionMatrix t = build_transition_matrix(players, labels, 1, envelope);
    const auto profile = absorption_profile<Scalar>(t);
    const auto vectors = completion_vectors<Scalar>(players, labels);
    CompletionMetrics<Scalar> out;
    for (std::size_t j = 0; j < profile.tau.size(); ++j) {
        out.b_first += vectors.nu[j] * profile.tau[j];
        out.b_this += vectors.xi[j] * profile.tau[j];
    }
    out.b_goal = profile.b_goal;
    return out;
}

}  // namespace cmccp
