#include "cmccp/simulator.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>
#include <thread>

namespace cmccp {

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

Rng::Rng(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t state = seed;
    const std::uint64_t base = splitmix64(state);
    std::uint64_t keyed = base ^ (stream * 0xD1B54A32D192ED03ULL);
    const std::uint64_t a = splitmix64(keyed);
    const std::uint64_t b = splitmix64(keyed);
    std::seed_seq seq{static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(a >> 32),
                      static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32)};
    engine_.seed(seq);
}

std::uint64_t Rng::below(std::uint64_t n) {
    // Lemire's multiply-and-reject.
    unsigned __int128 m = static_cast<unsigned __int128>(engine_()) * n;
    auto low = static_cast<std::uint64_t>(m);
    if (low < n) {
        const std::uint64_t threshold = (0 - n) % n;
        while (low < threshold) {
            m = static_cast<unsigned __int128>(engine_()) * n;
            low = static_cast<std::uint64_t>(m);
        }
    }
    return static_cast<std::uint64_t>(m >> 64);
}

void GameConfig::validate() const {
    if (players < 1) throw std::invalid_argument("players must be >= 1");
    if (labels < 1) throw std::invalid_argument("labels must be >= 1");
    if (lot < 1 || lot > labels) throw std::invalid_argument("lot size must satisfy 1 <= L <= M");
    if (!label_weights.empty()) {
        if (label_weights.size() != static_cast<std::size_t>(labels)) {
            throw std::invalid_argument("expected " + std::to_string(labels) + " label weights, got " +
                                        std::to_string(label_weights.size()));
        }
        for (double w : label_weights) {
            if (!(w > 0) || !std::isfinite(w)) throw std::invalid_argument("label weights must be positive");
        }
    }
}

namespace {

class LotSampler {
public:
    LotSampler(int labels, int lot, std::span<const double> weights)
        : lot_(lot), weights_(weights.begin(), weights.end()), order_(static_cast<std::size_t>(labels)),
          picked_(weights.empty() ? 0 : static_cast<std::size_t>(labels), 0) {
        std::iota(order_.begin(), order_.end(), 0);
    }

    void draw(Rng& rng, std::vector<int>& out) {
        out.clear();
        if (weights_.empty()) {
            // Partial Fisher-Yates: any starting arrangement gives uniform L-subsets.
            const auto m = order_.size();
            for (std::size_t i = 0; i < static_cast<std::size_t>(lot_); ++i) {
                const auto j = i + static_cast<std::size_t>(rng.below(m - i));
                std::swap(order_[i], order_[j]);
                out.push_back(order_[i]);
            }
            return;
        }
        std::fill(picked_.begin(), picked_.end(), 0);
        double remaining = std::accumulate(weights_.begin(), weights_.end(), 0.0);
        for (int i = 0; i < lot_; ++i) {
            const double target = rng.unit() * remaining;
            double acc = 0;
            std::size_t chosen = weights_.size();
            for (std::size_t x = 0; x < weights_.size(); ++x) {
                if (picked_[x]) continue;
                chosen = x;
                acc += weights_[x];
                if (target < acc) break;
            }
            picked_[chosen] = 1;
            remaining -= weights_[chosen];
            out.push_back(static_cast<int>(chosen));
        }
    }

private:
    int lot_;
    std::vector<double> weights_;
    std::vector<int> order_;
    std::vector<std::uint8_t> picked_;
};

}  // namespace

std::vector<int> draw_lot(Rng& rng, int labels, int lot, std::span<const double> weights) {
    if (labels < 1 || lot < 1 || lot > labels) throw std::invalid_argument("draw_lot: need 1 <= L <= M");
    if (!weights.empty() && weights.size() != static_cast<std::size_t>(labels)) {
        throw std::invalid_argument("draw_lot: weight count differs from M");
    }
    LotSampler sampler(labels, lot, weights);
    std::vector<int> out;
    sampler.draw(rng, out);
    return out;
}

RunRecord play_one(const GameConfig& config, std::uint64_t run_index, const BurstObserver* observer) {
    config.validate();
    const int players = config.players;
    const int labels = config.labels;
    const auto cell = [labels](int p, int x) {
        return static_cast<std::size_t>(p) * static_cast<std::size_t>(labels) + static_cast<std::size_t>(x);
    };

    Rng rng(config.seed, run_index);
    LotSampler sampler(labels, config.lot, config.label_weights);

    std::vector<std::uint8_t> has(static_cast<std::size_t>(players) * static_cast<std::size_t>(labels), 0);
    std::vector<int> missing(static_cast<std::size_t>(players), labels);
    std::vector<int> owners(static_cast<std::size_t>(labels), 0);
    std::vector<std::uint8_t> active(static_cast<std::size_t>(players), 1);
    std::vector<int> active_list;
    std::vector<int> lot;
    std::vector<int> needy;
    std::vector<int> owners_before;
    std::vector<int> holder;
    std::vector<int> needy_count;
    std::vector<std::uint8_t> active_before;

    RunRecord record;
    record.completion_bursts.assign(static_cast<std::size_t>(players), 0);
    record.retention_log.reserve(static_cast<std::size_t>(players) * static_cast<std::size_t>(labels));

    int complete = 0;
    long burst = 0;
    while (complete < players) {
        ++burst;
        int receiver = 0;
        if (config.policy == Policy::coc) {
            receiver = static_cast<int>(rng.below(static_cast<std::uint64_t>(players)));
        } else {
            active_list.clear();
            for (int p = 0; p < players; ++p) {
                if (active[static_cast<std::size_t>(p)]) active_list.push_back(p);
            }
            receiver = active_list[rng.below(active_list.size())];
        }
        sampler.draw(rng, lot);
        if (observer) {
            owners_before = owners;
            active_before = active;
            holder.clear();
            needy_count.clear();
        }

        for (int x : lot) {
            // Anyone missing x is still incomplete, hence active under either policy.
            needy.clear();
            for (int p = 0; p < players; ++p) {
                if (!has[cell(p, x)]) needy.push_back(p);
            }
            const int needy_players = static_cast<int>(needy.size());
            int winner = -1;
            if (!has[cell(receiver, x)]) {
                winner = receiver;
                ++record.retained;
            } else {
                ++record.offers;
                record.requests += needy_players;
                if (needy_players > 0) {
                    winner = needy[rng.below(needy.size())];
                    ++record.transfers;
                } else {
                    ++record.discards;
                }
            }
            if (winner >= 0) {
                has[cell(winner, x)] = 1;
                --missing[static_cast<std::size_t>(winner)];
                ++owners[static_cast<std::size_t>(x)];
            }
            if (needy_players > 0) record.retention_log.push_back({needy_players, winner == needy.front()});
            if (observer) {
                holder.push_back(winner);
                needy_count.push_back(needy_players);
            }
        }

        for (int p = 0; p < players; ++p) {
            auto& done = record.completion_bursts[static_cast<std::size_t>(p)];
            if (missing[static_cast<std::size_t>(p)] == 0 && done == 0) {
                done = burst;
                active[static_cast<std::size_t>(p)] = 0;
                if (complete++ == 0) record.bursts_to_first = burst;
            }
        }
        if (observer) {
            (*observer)(BurstTrace{burst, receiver, lot, owners_before, owners, holder, needy_count, active_before});
        }
    }
    record.bursts_to_goal = burst;
    record.bursts_to_player0 = record.completion_bursts.front();
    return record;
}

std::string_view to_string(Metric m) {
    switch (m) {
        case Metric::bursts_to_first: return "bursts_to_first";
        case Metric::bursts_to_player0: return "bursts_to_player0";
        case Metric::bursts_to_goal: return "bursts_to_goal";
        case Metric::offers: return "offers";
        case Metric::requests: return "requests";
        case Metric::transfers: return "transfers";
        case Metric::discards: return "discards";
        case Metric::retained: return "retained";
    }
    return "unknown";
}

long metric_value(const RunRecord& r, Metric m) {
    switch (m) {
        case Metric::bursts_to_first: return r.bursts_to_first;
        case Metric::bursts_to_player0: return r.bursts_to_player0;
        case Metric::bursts_to_goal: return r.bursts_to_goal;
        case Metric::offers: return r.offers;
        case Metric::requests: return r.requests;
        case Metric::transfers: return r.transfers;
        case Metric::discards: return r.discards;
        case Metric::retained: return r.retained;
    }
    return 0;
}

void StatsAccumulator::add(const RunRecord& r) {
    ++runs_;
    for (std::size_t i = 0; i < kMetricCount; ++i) {
        const auto v = static_cast<std::uint64_t>(metric_value(r, kAllMetrics[i]));
        sum_[i] += v;
        sum_sq_[i] += static_cast<unsigned __int128>(v) * v;
    }
    for (const auto& e : r.retention_log) {
        auto& bucket = retention_.at(static_cast<std::size_t>(e.needy));
        ++bucket.arrivals;
        bucket.retained += e.preselected_retained ? 1 : 0;
    }
}

void StatsAccumulator::merge(const StatsAccumulator& other) {
    runs_ += other.runs_;
    for (std::size_t i = 0; i < kMetricCount; ++i) {
        sum_[i] += other.sum_[i];
        sum_sq_[i] += other.sum_sq_[i];
    }
    if (retention_.size() < other.retention_.size()) retention_.resize(other.retention_.size());
    for (std::size_t i = 0; i < other.retention_.size(); ++i) {
        retention_[i].arrivals += other.retention_[i].arrivals;
        retention_[i].retained += other.retention_[i].retained;
    }
}

RunStats StatsAccumulator::finish() const {
    RunStats out;
    out.runs = runs_;
    out.retention = retention_;
    if (runs_ == 0) return out;
    const auto n = static_cast<unsigned __int128>(runs_);
    for (std::size_t i = 0; i < kMetricCount; ++i) {
        MetricSummary& m = out.metrics[i];
        m.runs = runs_;
        m.mean = static_cast<double>(sum_[i]) / static_cast<double>(runs_);
        if (runs_ > 1) {
            // n * sum(x^2) - (sum x)^2 is an exact non-negative integer.
            const unsigned __int128 s = sum_[i];
            const unsigned __int128 spread = n * sum_sq_[i] - s * s;
            const double variance = static_cast<double>(spread) / (static_cast<double>(runs_) * static_cast<double>(runs_ - 1));
            m.stddev = std::sqrt(variance);
            m.std_error = m.stddev / std::sqrt(static_cast<double>(runs_));
        }
    }
    return out;
}

RunStats run_many(const GameConfig& config, long runs, unsigned threads) {
    config.validate();
    if (runs < 1) throw std::invalid_argument("runs must be >= 1");
    constexpr long kChunk = 1024;
    const long chunks = (runs + kChunk - 1) / kChunk;
    if (threads == 0) threads = std::max(1U, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<long>(threads, chunks));

    std::vector<StatsAccumulator> partial(static_cast<std::size_t>(chunks), StatsAccumulator(config.players));
    std::atomic<long> next{0};
    auto worker = [&] {
        for (long c = next++; c < chunks; c = next++) {
            auto& acc = partial[static_cast<std::size_t>(c)];
            const long end = std::min(runs, (c + 1) * kChunk);
            for (long i = c * kChunk; i < end; ++i) acc.add(play_one(config, static_cast<std::uint64_t>(i)));
        }
    };
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    }

    StatsAccumulator total(config.players);
    for (const auto& p : partial) total.merge(p);
    return total.finish();
}

}  // namespace cmccp
