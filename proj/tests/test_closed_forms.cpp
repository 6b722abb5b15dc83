#include <cmath>

#include "doctest.h"

#include "cmccp/closed_forms.hpp"
#include "cmccp/combinatorics.hpp"
#include "cmccp/markov_engine.hpp"

using namespace cmccp;

namespace {

Rational q(long n, long d) { return Rational(Count(n), Count(d)); }

}  // namespace

TEST_CASE("single_player_entry") {
    CHECK(single_player_entry(1, 0, 3, 1).exact() == Rational(1));
    CHECK(single_player_entry(1, 1, 3, 1).exact() == q(1, 3));
    CHECK(single_player_entry(2, 1, 3, 1).exact() == q(2, 3));
    CHECK(single_player_entry(2, 0, 3, 2).exact() == Rational(1));
    CHECK(single_player_entry(2, 0, 3, 1).exact() == Rational(0));
    CHECK(single_player_entry(0, 1, 3, 1).exact() == Rational(0));
    CHECK_THROWS_AS(single_player_entry(3, 0, 3, 1), std::out_of_range);
}

TEST_CASE("single_player_matrix equals the engine matrix at P = 1") {
    for (long m = 1; m <= 10; ++m) {
        for (long l = 1; l <= m; ++l) {
            REQUIRE(single_player_matrix(m, l) == build_transition_matrix(1, static_cast<int>(m), static_cast<int>(l)).to_dense<Rational>());
        }
    }
}

TEST_CASE("involution: E is lower triangular and E E = I") {
    for (long m = 1; m <= 30; ++m) {
        const auto e = involution(m).entries;
        REQUIRE(e.rows() == m);
        for (Eigen::Index r = 0; r < m; ++r) {
            for (Eigen::Index c = r + 1; c < m; ++c) REQUIRE(e(r, c) == Rational(0));
        }
        const RationalMatrix id = RationalMatrix::Identity(m, m);
        REQUIRE(RationalMatrix(e * e) == id);
    }
}

TEST_CASE("T = E Lambda E at P = 1") {
    for (long m = 1; m <= 12; ++m) {
        const auto e = involution(m).entries;
        for (long l = 1; l <= m; ++l) {
            const RationalMatrix rebuilt = e * single_player_eigenvalues(m, l) * e;
            REQUIRE(rebuilt == single_player_matrix(m, l));
        }
    }
}

TEST_CASE("single-player closed forms match the engine for M <= 12") {
    for (int m = 1; m <= 12; ++m) {
        for (int l = 1; l <= m; ++l) {
            const auto profile = absorption_profile<Rational>(build_transition_matrix(1, m, l));
            REQUIRE(bgoal_single_closed_exact(m, l) == profile.b_goal);
            const double closed = bgoal_single_closed(m, l);
            REQUIRE(std::abs(closed - profile.b_goal.to_double()) <= 1e-10 * closed);
            Rational sum(0);
            for (int j = 0; j < m; ++j) {
                const Rational tau = tau_single_exact(j, m, l);
                REQUIRE(tau == profile.tau[static_cast<std::size_t>(j)]);
                sum += tau;
                REQUIRE(std::abs(tau_single(j, m, l) - tau.to_double()) <= 1e-10 * std::max(1.0, tau.to_double()));
            }
            REQUIRE(sum == profile.b_goal);
        }
        REQUIRE(bgoal_single_closed_exact(m, 1) == Rational(m) * harmonic(m));
    }
    CHECK(bgoal_single_closed_exact(3, 1) == q(11, 2));
    CHECK(bgoal_single_closed_exact(3, 2) == q(5, 2));
    CHECK(bgoal_single_closed_exact(7, 7) == Rational(1));
}
