// Command-line front end: analyze, simulate, compare, sweep, matrix.
//
// Exit codes: 0 success, 1 unexpected failure, 2 invalid configuration,
// 3 configuration outside the supported envelope.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "cmccp/harness.hpp"
#include "cmccp/markov_engine.hpp"

namespace {

constexpr int kExitInvalid = 2;
constexpr int kExitEnvelope = 3;

// "1,2,4-8" -> {1,2,4,5,6,7,8}
std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        const auto dash = item.find('-', 1);
        if (dash == std::string::npos) {
            out.push_back(std::stoi(item));
            continue;
        }
        const int lo = std::stoi(item.substr(0, dash));
        const int hi = std::stoi(item.substr(dash + 1));
        if (hi < lo) throw std::invalid_argument("empty range '" + item + "'");
        for (int v = lo; v <= hi; ++v) out.push_back(v);
    }
    if (out.empty()) throw std::invalid_argument("empty list '" + text + "'");
    return out;
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream file(out_path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open " + out_path + " for writing");
    file << text;
}

struct GameFlags {
    int players = 1;
    int labels = 1;
    int lot = 1;
    std::string policy = "coc";
    long runs = 10'000;
    std::uint64_t seed = 1;
    std::vector<double> weights;

    void attach(CLI::App* cmd) {
        cmd->add_option("--players", players, "Number of players P")->required();
        cmd->add_option("--labels", labels, "Number of labels M")->required();
        cmd->add_option("--lot", lot, "Lot size L")->capture_default_str();
        cmd->add_option("--policy", policy, "coc or eoc")->capture_default_str();
        cmd->add_option("--runs", runs, "Replications")->capture_default_str();
        cmd->add_option("--seed", seed, "Base seed")->capture_default_str();
        cmd->add_option("--weights", weights, "Comma-separated label weights")->delimiter(',');
    }

    cmccp::GameConfig config() const {
        cmccp::GameConfig c;
        c.players = players;
        c.labels = labels;
        c.lot = lot;
        c.policy = cmccp::parse_policy(policy);
        c.seed = seed;
        c.label_weights = weights;
        c.validate();
        return c;
    }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Cooperative multiplayer coupon collector: exact analysis and simulation"};
    app.require_subcommand(1);

    std::string out_path;
    std::string format;

    // analyze
    auto* analyze = app.add_subcommand("analyze", "Exact expected bursts and protocol costs");
    int a_players = 1, a_labels = 1, a_lot = 1;
    bool exact_rational = false;
    analyze->add_option("--players", a_players, "Number of players P")->required();
    analyze->add_option("--labels", a_labels, "Number of labels M")->required();
    analyze->add_option("--lot", a_lot, "Lot size L")->capture_default_str();
    analyze->add_flag("--exact-rational", exact_rational, "Run the recursion in exact rationals");
    analyze->add_option("--out", out_path, "Output file (default stdout)");

    // simulate / compare
    GameFlags sim_flags;
    auto* simulate = app.add_subcommand("simulate", "Monte Carlo statistics for one configuration");
    sim_flags.attach(simulate);
    simulate->add_option("--out", out_path, "Output file (default stdout)");

    GameFlags cmp_flags;
    auto* compare = app.add_subcommand("compare", "Exact values against simulated means");
    cmp_flags.attach(compare);
    compare->add_option("--out", out_path, "Output file (default stdout)");

    // sweep
    auto* sweep = app.add_subcommand("sweep", "Grid of exact and/or simulated figures");
    std::string s_players, s_labels, s_lots, s_policies = "coc", s_mode = "exact";
    std::vector<std::string> s_caps;
    long s_runs = 10'000;
    std::uint64_t s_seed = 1;
    unsigned s_threads = 0;
    format = "csv";
    sweep->add_option("--players", s_players, "List of P, e.g. 1,2,4 (default figure grid)");
    sweep->add_option("--labels", s_labels, "List or range of M, e.g. 2-60");
    sweep->add_option("--lot", s_lots, "List of L");
    sweep->add_option("--policy", s_policies, "coc, eoc or coc,eoc")->capture_default_str();
    sweep->add_option("--mode", s_mode, "exact, sim or both")->capture_default_str();
    sweep->add_option("--runs", s_runs, "Replications per simulated cell")->capture_default_str();
    sweep->add_option("--seed", s_seed, "Base seed for simulated cells")->capture_default_str();
    sweep->add_option("--label-cap", s_caps, "Per-P cap on M as P:M, e.g. 4:30");
    sweep->add_option("--threads", s_threads, "Worker threads (0 = all cores)");
    sweep->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    sweep->add_option("--out", out_path, "Output file (default stdout)");

    // matrix
    auto* matrix = app.add_subcommand("matrix", "Exact transition matrix dump");
    int m_players = 1, m_labels = 1, m_lot = 1;
    cmccp::StateIndex threshold = 10'000;
    matrix->add_option("--players", m_players, "Number of players P")->required();
    matrix->add_option("--labels", m_labels, "Number of labels M")->required();
    matrix->add_option("--lot", m_lot, "Lot size L")->capture_default_str();
    matrix->add_option("--max-states", threshold, "Refuse to dump larger state spaces")->capture_default_str();
    matrix->add_option("--out", out_path, "Output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitInvalid;
    }

    try {
        if (*analyze) {
            emit(cmccp::analyze_document(a_players, a_labels, a_lot, exact_rational).dump(2) + "\n", out_path);
        } else if (*simulate) {
            emit(cmccp::simulate_document(sim_flags.config(), sim_flags.runs).dump(2) + "\n", out_path);
        } else if (*compare) {
            emit(cmccp::compare_document(cmp_flags.config(), cmp_flags.runs).dump(2) + "\n", out_path);
        } else if (*sweep) {
            cmccp::SweepSpec spec = cmccp::figure_sweep_spec();
            if (!s_players.empty()) spec.players = parse_int_list(s_players);
            if (!s_labels.empty()) spec.labels = parse_int_list(s_labels);
            if (!s_lots.empty()) spec.lots = parse_int_list(s_lots);
            if (!s_players.empty() || !s_labels.empty()) spec.label_cap.clear();
            for (const auto& cap : s_caps) {
                const auto colon = cap.find(':');
                if (colon == std::string::npos) throw std::invalid_argument("label cap must be P:M, got " + cap);
                spec.label_cap[std::stoi(cap.substr(0, colon))] = std::stoi(cap.substr(colon + 1));
            }
            spec.policies.clear();
            std::stringstream ss(s_policies);
            for (std::string p; std::getline(ss, p, ',');) spec.policies.push_back(cmccp::parse_policy(p));
            spec.mode = cmccp::parse_sweep_mode(s_mode);
            spec.runs = s_runs;
            spec.seed = s_seed;
            spec.threads = s_threads;
            const auto rows = cmccp::run_sweep(spec);
            if (format == "json") {
                emit(cmccp::sweep_document(spec, rows).dump(2) + "\n", out_path);
            } else {
                std::ostringstream os;
                cmccp::write_sweep_csv(os, rows);
                emit(os.str(), out_path);
            }
        } else if (*matrix) {
            cmccp::Envelope envelope;
            envelope.max_states = threshold;
            emit(cmccp::matrix_dump(cmccp::build_transition_matrix(m_players, m_labels, m_lot, envelope)), out_path);
        }
    } catch (const cmccp::EnvelopeExceeded& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitEnvelope;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInvalid;
    } catch (const std::out_of_range& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInvalid;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
