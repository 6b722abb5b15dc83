#include <set>

#include "doctest.h"

#include "cmccp/combinatorics.hpp"
#include "cmccp/state_space.hpp"

using namespace cmccp;

TEST_CASE("StateVector invariants") {
    const auto s = StateVector::descending({1, 0, 2});
    CHECK(s.players() == 2);
    CHECK(s.labels() == 3);
    CHECK(s[2] == 1);
    CHECK(s[1] == 0);
    CHECK(s[0] == 2);
    CHECK(format_state(s) == "(1,0)");
    CHECK_THROWS_AS(StateVector({1, -1, 3}), std::invalid_argument);
    CHECK_THROWS_AS(StateVector({3}), std::invalid_argument);
    CHECK(StateVector::initial(2, 3) == StateVector::descending({0, 0, 3}));
    CHECK(StateVector::goal(2, 3) == StateVector::descending({3, 0, 0}));
}

TEST_CASE("is_goal") {
    CHECK(is_goal(StateVector::descending({3, 0, 0})));
    CHECK_FALSE(is_goal(StateVector::descending({0, 0, 3})));
    CHECK_FALSE(is_goal(StateVector::descending({2, 1, 0})));
}

TEST_CASE("encode follows the figure ordering for P=2, M=3") {
    CHECK(encode(StateVector::descending({1, 1, 1})) == 4);
    CHECK(encode(StateVector::descending({0, 0, 3})) == 0);
    CHECK(encode(StateVector::descending({2, 1, 0})) == 8);

    const StateSpace space(2, 3);
    const std::vector<std::string> expected = {"(0,0)", "(0,1)", "(1,0)", "(0,2)", "(1,1)",
                                               "(2,0)", "(0,3)", "(1,2)", "(2,1)", "(3,0)"};
    const auto states = space.enumerate();
    REQUIRE(states.size() == expected.size());
    for (std::size_t q = 0; q < states.size(); ++q) CHECK(format_state(states[q]) == expected[q]);
}

TEST_CASE("decode") {
    CHECK(decode(5, 2, 3) == StateVector::descending({2, 0, 1}));
    CHECK(decode(9, 2, 3) == StateVector::descending({3, 0, 0}));
    CHECK_THROWS_AS(decode(10, 2, 3), std::out_of_range);
    CHECK_THROWS_AS(StateSpace(2, 3).encode(StateVector::descending({1, 1})), std::invalid_argument);
}

TEST_CASE("enumerate_states") {
    CHECK(enumerate_states(2, 3).size() == 10);
    const auto single = enumerate_states(1, 3);
    REQUIRE(single.size() == 4);
    for (int level = 0; level <= 3; ++level) CHECK(single[static_cast<std::size_t>(level)][1] == level);
    CHECK(enumerate_states(3, 5).front() == StateVector::initial(3, 5));
}

TEST_CASE("embedding is a bijection for P <= 4, M <= 12") {
    for (int p = 1; p <= 4; ++p) {
        for (int m = 1; m <= 12; ++m) {
            const StateSpace space(p, m);
            REQUIRE(Count(space.size()) == mu(p, m));
            std::set<std::vector<int>> seen;
            for (StateIndex q = 0; q < space.size(); ++q) {
                const StateVector s = space.decode(q);
                REQUIRE(s.labels() == m);
                REQUIRE(space.encode(s) == q);
                seen.insert(s.counts());
            }
            REQUIRE(seen.size() == space.size());
            CHECK(space.encode(StateVector::initial(p, m)) == 0);
            CHECK(space.encode(StateVector::goal(p, m)) == space.size() - 1);
        }
    }
}

TEST_CASE("largest supported envelope fits the index type") {
    const StateSpace space(6, 64);
    CHECK(Count(space.size()) == binomial(70, 6));
    CHECK(space.encode(StateVector::goal(6, 64)) == space.size() - 1);
    const auto mid = StateVector({10, 11, 9, 8, 7, 10, 9});
    CHECK(space.decode(space.encode(mid)) == mid);
}

TEST_CASE("state spaces too large for 64-bit indices are rejected") {
    CHECK_THROWS_AS(StateSpace(40, 2000), EnvelopeExceeded);
}
