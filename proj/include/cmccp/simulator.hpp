#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <span>
#include <string_view>
#include <vector>

#include "cmccp/cost_model.hpp"

namespace cmccp {

/// Per-replication random stream: mt19937_64 seeded through std::seed_seq from
/// two splitmix64 words derived from (seed, stream). Streams for different
/// run indices are independent and the mapping is platform-stable.
class Rng {
public:
    static constexpr std::string_view kName = "mt19937_64/seed_seq(splitmix64(seed,run))";

    Rng(std::uint64_t seed, std::uint64_t stream);

    std::uint64_t next() { return engine_(); }
    /// Uniform integer in [0, n), n > 0, without modulo bias.
    std::uint64_t below(std::uint64_t n);
    /// Uniform double in [0, 1) with 53 random bits.
    double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

private:
    std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t& state);

struct GameConfig {
    int players = 1;
    int labels = 1;
    int lot = 1;
    Policy policy = Policy::coc;
    /// Per-label weights; empty means every L-subset is equally likely.
    std::vector<double> label_weights;
    std::uint64_t seed = 0;

    /// Throws std::invalid_argument on P < 1, M < 1, L outside [1, M], or bad weights.
    void validate() const;
};

/// L distinct labels. Without weights every L-subset has probability 1/C(M,L);
/// with weights, labels are picked one at a time proportionally to the
/// weights of those not yet picked.
std::vector<int> draw_lot(Rng& rng, int labels, int lot, std::span<const double> weights = {});

struct RetentionEntry {
    int needy;                  // players missing the label when it arrived
    bool preselected_retained;  // the lowest-index needy player ended up with it
};

struct RunRecord {
    long bursts_to_first = 0;
    long bursts_to_player0 = 0;
    long bursts_to_goal = 0;
    long offers = 0;
    long requests = 0;
    long transfers = 0;
    long discards = 0;
    long retained = 0;  // coupons kept by the player the lot was assigned to
    std::vector<long> completion_bursts;  // per player
    std::vector<RetentionEntry> retention_log;
};

/// One burst as seen by an observer. Per-label vectors have length M;
/// per-coupon vectors follow the order of `lot`.
struct BurstTrace {
    long burst;
    int receiver;
    std::span<const int> lot;
    std::span<const int> owners_before;
    std::span<const int> owners_after;
    std::span<const int> holder;  // player who ended up with the coupon, -1 if discarded
    std::span<const int> needy;   // players missing the coupon's label on arrival
    std::span<const std::uint8_t> active_before;  // per player: could receive the lot
};

using BurstObserver = std::function<void(const BurstTrace&)>;

/// Plays one game to the common goal with the random stream for run_index.
RunRecord play_one(const GameConfig& config, std::uint64_t run_index, const BurstObserver* observer = nullptr);

enum class Metric : std::size_t {
    bursts_to_first,
    bursts_to_player0,
    bursts_to_goal,
    offers,
    requests,
    transfers,
    discards,
    retained,
};
inline constexpr std::size_t kMetricCount = 8;
inline constexpr std::array<Metric, kMetricCount> kAllMetrics = {
    Metric::bursts_to_first, Metric::bursts_to_player0, Metric::bursts_to_goal, Metric::offers,
    Metric::requests,        Metric::transfers,         Metric::discards,       Metric::retained};

std::string_view to_string(Metric m);
long metric_value(const RunRecord& r, Metric m);

struct MetricSummary {
    double mean = 0;
    double stddev = 0;
    double std_error = 0;  // stddev / sqrt(runs)
    long runs = 0;
};

struct RetentionBucket {
    long arrivals = 0;
    long retained = 0;
    double frequency() const { return arrivals ? static_cast<double>(retained) / static_cast<double>(arrivals) : 0; }
};

struct RunStats {
    long runs = 0;
    std::array<MetricSummary, kMetricCount> metrics{};
    /// Indexed by the number of needy players (entry 0 unused).
    std::vector<RetentionBucket> retention;

    const MetricSummary& operator[](Metric m) const { return metrics[static_cast<std::size_t>(m)]; }
};

/// Exact integer accumulator for per-run metrics; merging is associative.
class StatsAccumulator {
public:
    explicit StatsAccumulator(int players) : retention_(static_cast<std::size_t>(players) + 1) {}

    void add(const RunRecord& r);
    void merge(const StatsAccumulator& other);
    RunStats finish() const;

private:
    long runs_ = 0;
    std::array<std::uint64_t, kMetricCount> sum_{};
    std::array<unsigned __int128, kMetricCount> sum_sq_{};
    std::vector<RetentionBucket> retention_;
};

/// Plays runs 0..runs-1. Results depend only on (config, runs); threads = 0
/// uses the hardware concurrency.
RunStats run_many(const GameConfig& config, long runs, unsigned threads = 0);

}  // namespace cmccp
