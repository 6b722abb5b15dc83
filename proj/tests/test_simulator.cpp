#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "doctest.h"

#include "cmccp/markov_engine.hpp"
#include "cmccp/simulator.hpp"

using namespace cmccp;

namespace {

GameConfig make_config(int p, int m, int l, Policy policy = Policy::coc, std::uint64_t seed = 5) {
    GameConfig c;
    c.players = p;
    c.labels = m;
    c.lot = l;
    c.policy = policy;
    c.seed = seed;
    return c;
}

StateVector state_of(std::span<const int> owners, int players) {
    std::vector<int> counts(static_cast<std::size_t>(players) + 1, 0);
    for (int o : owners) ++counts[static_cast<std::size_t>(o)];
    return StateVector(std::move(counts));
}

}  // namespace

TEST_CASE("Rng streams are reproducible and distinct") {
    Rng a(1, 0), b(1, 0), c(1, 1), d(2, 0);
    const auto x = a.next();
    CHECK(x == b.next());
    CHECK(x != c.next());
    CHECK(x != d.next());
    Rng r(3, 4);
    for (int i = 0; i < 1000; ++i) {
        CHECK(r.below(7) < 7);
        const double u = r.unit();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
    }
}

TEST_CASE("Rng::below is uniform") {
    Rng r(9, 0);
    constexpr int kBins = 6;
    constexpr long kDraws = 600'000;
    std::array<long, kBins> hits{};
    for (long i = 0; i < kDraws; ++i) ++hits[r.below(kBins)];
    const double expected = static_cast<double>(kDraws) / kBins;
    const double sigma = std::sqrt(expected * (1.0 - 1.0 / kBins));
    for (long h : hits) CHECK(std::abs(static_cast<double>(h) - expected) < 5 * sigma);
}

TEST_CASE("draw_lot returns distinct labels with uniform subset frequencies") {
    Rng r(17, 0);
    constexpr long kDraws = 200'000;
    std::map<std::vector<int>, long> seen;
    for (long i = 0; i < kDraws; ++i) {
        auto lot = draw_lot(r, 5, 2);
        REQUIRE(lot.size() == 2);
        REQUIRE(lot[0] != lot[1]);
        std::sort(lot.begin(), lot.end());
        ++seen[lot];
    }
    REQUIRE(seen.size() == 10);
    const double expected = kDraws / 10.0;
    const double sigma = std::sqrt(expected * 0.9);
    for (const auto& [lot, count] : seen) CHECK(std::abs(static_cast<double>(count) - expected) < 5 * sigma);
}

TEST_CASE("weighted draw_lot follows the weights") {
    Rng r(21, 0);
    const std::vector<double> w = {1, 2, 3, 4};
    constexpr long kDraws = 200'000;
    std::array<long, 4> hits{};
    for (long i = 0; i < kDraws; ++i) ++hits[static_cast<std::size_t>(draw_lot(r, 4, 1, w).front())];
    for (std::size_t x = 0; x < 4; ++x) {
        const double p = w[x] / 10.0;
        const double sigma = std::sqrt(kDraws * p * (1 - p));
        CHECK(std::abs(static_cast<double>(hits[x]) - kDraws * p) < 5 * sigma);
    }
    CHECK_THROWS_AS(draw_lot(r, 4, 1, std::vector<double>{1, 2}), std::invalid_argument);
}

TEST_CASE("GameConfig validation") {
    CHECK_THROWS_AS(make_config(0, 3, 1).validate(), std::invalid_argument);
    CHECK_THROWS_AS(make_config(2, 0, 1).validate(), std::invalid_argument);
    CHECK_THROWS_AS(make_config(2, 3, 4).validate(), std::invalid_argument);
    auto c = make_config(2, 3, 1);
    c.label_weights = {1, 2};
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    c.label_weights = {1, 0, 2};
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    c.label_weights = {1, 2, 3};
    CHECK_NOTHROW(c.validate());
}

TEST_CASE("per-run conservation") {
    for (Policy policy : {Policy::coc, Policy::eoc}) {
        for (int p = 1; p <= 4; ++p) {
            for (int m = 1; m <= 6; ++m) {
                for (int l = 1; l <= m; ++l) {
                    const auto config = make_config(p, m, l, policy);
                    for (std::uint64_t run = 0; run < 20; ++run) {
                        const auto r = play_one(config, run);
                        REQUIRE(r.offers == r.transfers + r.discards);
                        REQUIRE(r.retained + r.offers == r.bursts_to_goal * l);
                        REQUIRE(r.retained + r.transfers == static_cast<long>(m) * p);
                        REQUIRE(r.bursts_to_first <= r.bursts_to_player0);
                        REQUIRE(r.bursts_to_player0 <= r.bursts_to_goal);
                        REQUIRE(*std::min_element(r.completion_bursts.begin(), r.completion_bursts.end()) ==
                                r.bursts_to_first);
                        REQUIRE(*std::max_element(r.completion_bursts.begin(), r.completion_bursts.end()) ==
                                r.bursts_to_goal);
                        if (p == 1) REQUIRE(r.requests == 0);
                    }
                }
            }
        }
    }
}

TEST_CASE("observed bursts follow the lot partition update") {
    for (Policy policy : {Policy::coc, Policy::eoc}) {
        for (int p = 1; p <= 4; ++p) {
            for (int l = 1; l <= 3; ++l) {
                const auto config = make_config(p, 5, l, policy);
                long bursts = 0;
                BurstObserver check = [&](const BurstTrace& t) {
                    ++bursts;
                    const StateVector before = state_of(t.owners_before, p);
                    const StateVector after = state_of(t.owners_after, p);
                    std::vector<int> r(static_cast<std::size_t>(p) + 1, 0);
                    std::set<int> distinct;
                    for (int x : t.lot) {
                        ++r[static_cast<std::size_t>(t.owners_before[static_cast<std::size_t>(x)])];
                        distinct.insert(x);
                    }
                    REQUIRE(distinct.size() == static_cast<std::size_t>(l));
                    REQUIRE(apply_partition(before, LotPartition(r)) == after);
                    if (policy == Policy::eoc) REQUIRE(t.active_before[static_cast<std::size_t>(t.receiver)]);
                    for (std::size_t i = 0; i < t.lot.size(); ++i) {
                        const int x = t.lot[i];
                        // Every coupon whose label someone still needs is kept or transferred.
                        REQUIRE((t.holder[i] >= 0) == (t.needy[i] > 0));
                        REQUIRE(t.needy[i] == p - t.owners_before[static_cast<std::size_t>(x)]);
                    }
                };
                for (std::uint64_t run = 0; run < 10; ++run) {
                    bursts = 0;
                    const auto rec = play_one(config, run, &check);
                    REQUIRE(bursts == rec.bursts_to_goal);
                }
            }
        }
    }
}

TEST_CASE("eoc counterexample is deterministic") {
    const auto config = make_config(3, 2, 2, Policy::eoc);
    for (std::uint64_t run = 0; run < 200; ++run) {
        const auto r = play_one(config, run);
        REQUIRE(r.bursts_to_first == 1);
        REQUIRE(r.bursts_to_goal == 3);
        REQUIRE(r.offers == 0);
    }
}

TEST_CASE("run_many does not depend on the thread count") {
    auto config = make_config(3, 6, 2, Policy::coc, 99);
    config.label_weights = {1, 2, 3, 4, 5, 6};
    const auto one = run_many(config, 5000, 1);
    const auto many = run_many(config, 5000, 7);
    for (Metric m : kAllMetrics) {
        CHECK(one[m].mean == many[m].mean);
        CHECK(one[m].std_error == many[m].std_error);
    }
    REQUIRE(one.retention.size() == many.retention.size());
    for (std::size_t i = 0; i < one.retention.size(); ++i) {
        CHECK(one.retention[i].arrivals == many.retention[i].arrivals);
        CHECK(one.retention[i].retained == many.retention[i].retained);
    }
}

TEST_CASE("StatsAccumulator moments") {
    StatsAccumulator acc(1);
    for (long v : {2L, 4L, 4L, 4L, 5L, 5L, 7L, 9L}) {
        RunRecord r;
        r.bursts_to_goal = v;
        acc.add(r);
    }
    const auto s = acc.finish();
    CHECK(s[Metric::bursts_to_goal].mean == 5.0);
    CHECK(s[Metric::bursts_to_goal].stddev == doctest::Approx(std::sqrt(32.0 / 7.0)));
    CHECK(s[Metric::bursts_to_goal].std_error == doctest::Approx(std::sqrt(32.0 / 7.0) / std::sqrt(8.0)));
    CHECK(s[Metric::offers].stddev == 0.0);
}

TEST_CASE("single player mean matches the exact expectation") {
    const auto s = run_many(make_config(1, 6, 1), 40'000);
    const double exact = absorption_profile<double>(build_transition_matrix(1, 6, 1)).b_goal;
    CHECK(std::abs(s[Metric::bursts_to_goal].mean - exact) < 4 * s[Metric::bursts_to_goal].std_error);
}
