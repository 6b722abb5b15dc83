#pragma once

#include <cstdint>
#include <map>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "cmccp/cost_model.hpp"
#include "cmccp/markov_engine.hpp"
#include "cmccp/simulator.hpp"

namespace cmccp {

inline constexpr std::string_view kSchemaVersion = "cmccp/1";
inline constexpr std::string_view kCsvVersionLine = "# cmccp-sweep-csv v1";
inline constexpr std::string_view kCsvHeader = "P,M,L,policy,metric,value,stderr,runs,seed,mode,error";

/// Exact engine figures for one (P, M, L): state count, b_goal, coc costs and,
/// for L = 1, b_first and b_this. Normalized values are b * L / P.
nlohmann::json analyze_document(int players, int labels, int lot, bool exact_rational,
                                 const Envelope& envelope = {});

/// Monte Carlo statistics for every metric plus the retention buckets.
nlohmann::json simulate_document(const GameConfig& config, long runs);

/// Exact values next to simulated means, with z = (simulated - exact) / stderr.
nlohmann::json compare_document(const GameConfig& config, long runs, const Envelope& envelope = {});

enum class SweepMode { exact, sim, both };
std::string_view to_string(SweepMode m);
SweepMode parse_sweep_mode(std::string_view text);

struct SweepSpec {
    std::vector<int> players;
    std::vector<int> labels;
    std::vector<int> lots;
    std::vector<Policy> policies{Policy::coc};
    SweepMode mode = SweepMode::exact;
    long runs = 10'000;  // per simulated cell
    std::uint64_t seed = 1;
    unsigned threads = 0;
    /// Optional per-P upper bound on M.
    std::map<int, int> label_cap;
    Envelope envelope{};
};

/// P in {1,2,4}, L in {1,2,4}, M in [2,60], with M capped at 30 for P = 4.
SweepSpec figure_sweep_spec();

struct SweepRow {
    int players = 0;
    int labels = 0;
    int lot = 0;
    Policy policy = Policy::coc;
    std::string metric;
    double value = 0;
    double std_error = 0;
    long runs = 0;
    std::uint64_t seed = 0;
    std::string mode;  // "exact" or "sim"
    std::string error;
};

/// Rows in deterministic spec order (P, then M, then L, then policy), whatever
/// order the cells finish in. Cells with L > M are skipped; failing cells
/// produce one row carrying the error.
std::vector<SweepRow> run_sweep(const SweepSpec& spec);

void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows);
nlohmann::json sweep_document(const SweepSpec& spec, const std::vector<SweepRow>& rows);

/// Shortest round-trip decimal representation.
std::string format_double(double x);

}  // namespace cmccp
