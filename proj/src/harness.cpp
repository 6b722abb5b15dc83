#include "cmccp/harness.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <thread>

namespace cmccp {

using nlohmann::json;

std::string format_double(double x) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

namespace {

json metric_json(const MetricSummary& m) {
    return {{"mean", m.mean}, {"stddev", m.stddev}, {"stderr", m.std_error}, {"runs", m.runs}};
}

json config_json(const GameConfig& c, long runs) {
    return {{"players", c.players}, {"labels", c.labels}, {"lot", c.lot},
            {"policy", std::string(to_string(c.policy))}, {"seed", c.seed},
            {"weights", c.label_weights}, {"runs", runs}};
}

template <class Scalar>
void fill_chain_figures(json& doc, const TransitionMatrix& t, int players, int labels, int lot,
                        const Envelope& envelope) {
    const auto profile = absorption_profile<Scalar>(t);
    const double b_goal = to_double(profile.b_goal);
    doc["b_goal"] = b_goal;
    doc["b_goal_norm"] = b_goal * lot / players;
    if constexpr (std::is_same_v<Scalar, Rational>) doc["exact"]["b_goal"] = profile.b_goal.str();

    const CostReport costs = coc_costs(players, labels, lot, b_goal);
    doc["costs"] = {{"policy", "coc"}, {"basis", "exact"}, {"transfers", costs.transfers},
                    {"requests", costs.requests}, {"offers", costs.offers}};
    if (lot == 1) {
        const auto metrics = completion_metrics<Scalar>(players, labels, envelope);
        doc["b_first"] = to_double(metrics.b_first);
        doc["b_this"] = to_double(metrics.b_this);
        doc["b_first_norm"] = to_double(metrics.b_first) / players;
        doc["b_this_norm"] = to_double(metrics.b_this) / players;
        if constexpr (std::is_same_v<Scalar, Rational>) {
            doc["exact"]["b_first"] = metrics.b_first.str();
            doc["exact"]["b_this"] = metrics.b_this.str();
        }
    }
}

}  // namespace

json analyze_document(int players, int labels, int lot, bool exact_rational, const Envelope& envelope) {
    const TransitionMatrix t = build_transition_matrix(players, labels, lot, envelope);
    json doc;
    doc["schema"] = kSchemaVersion;
    doc["command"] = "analyze";
    doc["config"] = {{"players", players}, {"labels", labels}, {"lot", lot}, {"exact_rational", exact_rational}};
    doc["states"] = t.space().size();
    doc["dimension"] = t.dimension();
    doc["nonzeros"] = t.nonzeros();
    if (exact_rational) {
        fill_chain_figures<Rational>(doc, t, players, labels, lot, envelope);
    } else {
        fill_chain_figures<double>(doc, t, players, labels, lot, envelope);
    }
    return doc;
}

json simulate_document(const GameConfig& config, long runs) {
    const RunStats stats = run_many(config, runs);
    json doc;
    doc["schema"] = kSchemaVersion;
    doc["command"] = "simulate";
    doc["config"] = config_json(config, runs);
    doc["generator"] = Rng::kName;
    json metrics = json::object();
    for (Metric m : kAllMetrics) metrics[std::string(to_string(m))] = metric_json(stats[m]);
    doc["metrics"] = metrics;
    json retention = json::array();
    for (std::size_t k = 1; k < stats.retention.size(); ++k) {
        const auto& b = stats.retention[k];
        retention.push_back({{"needy", k}, {"arrivals", b.arrivals}, {"retained", b.retained},
                             {"frequency", b.frequency()}, {"expected", 1.0 / static_cast<double>(k)}});
    }
    doc["retention"] = retention;
    return doc;
}

json compare_document(const GameConfig& config, long runs, const Envelope& envelope) {
    config.validate();
    const RunStats stats = run_many(config, runs);
    const TransitionMatrix t = build_transition_matrix(config.players, config.labels, config.lot, envelope);
    const double b_goal = absorption_profile<double>(t).b_goal;

    json rows = json::array();
    auto add = [&](Metric m, double exact, std::string_view relation) {
        const MetricSummary& s = stats[m];
        json row = {{"metric", std::string(to_string(m))}, {"exact", exact},    {"relation", relation},
                    {"mean", s.mean},                      {"stderr", s.std_error}};
        row["z"] = s.std_error > 0 ? json((s.mean - exact) / s.std_error) : json(nullptr);
        rows.push_back(row);
    };
    const bool uniform = config.label_weights.empty();
    if (uniform) add(Metric::bursts_to_goal, b_goal, "equal");
    if (uniform && config.lot == 1) {
        const auto metrics = completion_metrics<double>(config.players, config.labels, envelope);
        add(Metric::bursts_to_first, metrics.b_first, "equal");
        add(Metric::bursts_to_player0, metrics.b_this, "equal");
    }
    const CostReport costs = coc_costs(config.players, config.labels, config.lot, b_goal);
    const std::string_view bound = config.policy == Policy::coc ? "equal" : "upper_bound";
    add(Metric::transfers, costs.transfers, bound);
    add(Metric::requests, costs.requests, bound);
    if (uniform) add(Metric::offers, costs.offers, bound);

    json doc;
    doc["schema"] = kSchemaVersion;
    doc["command"] = "compare";
    doc["config"] = config_json(config, runs);
    doc["generator"] = Rng::kName;
    doc["rows"] = rows;
    return doc;
}

std::string_view to_string(SweepMode m) {
    switch (m) {
        case SweepMode::exact: return "exact";
        case SweepMode::sim: return "sim";
        case SweepMode::both: return "both";
    }
    return "exact";
}

SweepMode parse_sweep_mode(std::string_view text) {
    if (text == "exact") return SweepMode::exact;
    if (text == "sim") return SweepMode::sim;
    if (text == "both") return SweepMode::both;
    throw std::invalid_argument("unknown sweep mode '" + std::string(text) + "'");
}

SweepSpec figure_sweep_spec() {
    SweepSpec spec;
    spec.players = {1, 2, 4};
    spec.lots = {1, 2, 4};
    for (int m = 2; m <= 60; ++m) spec.labels.push_back(m);
    spec.label_cap = {{4, 30}};
    spec.mode = SweepMode::exact;
    return spec;
}

namespace {

struct Cell {
    int players;
    int labels;
    int lot;
};

std::vector<SweepRow> exact_rows(const SweepSpec& spec, const Cell& c) {
    std::vector<SweepRow> rows;
    const TransitionMatrix t = build_transition_matrix(c.players, c.labels, c.lot, spec.envelope);
    const double b_goal = absorption_profile<double>(t).b_goal;
    std::vector<std::pair<std::string, double>> shared = {
        {"b_goal", b_goal}, {"b_goal_norm", b_goal * c.lot / c.players}};
    if (c.lot == 1) {
        const auto m = completion_metrics<double>(c.players, c.labels, spec.envelope);
        shared.emplace_back("b_first", m.b_first);
        shared.emplace_back("b_first_norm", m.b_first / c.players);
        shared.emplace_back("b_this", m.b_this);
        shared.emplace_back("b_this_norm", m.b_this / c.players);
    }
    const CostReport costs = coc_costs(c.players, c.labels, c.lot, b_goal);
    for (Policy policy : spec.policies) {
        auto values = shared;
        if (policy == Policy::coc) {
            values.emplace_back("c_tra", costs.transfers);
            values.emplace_back("c_req", costs.requests);
            values.emplace_back("c_off", costs.offers);
        }
        for (const auto& [name, value] : values) {
            rows.push_back({c.players, c.labels, c.lot, policy, name, value, 0, 0, spec.seed, "exact", ""});
        }
    }
    return rows;
}

std::vector<SweepRow> sim_rows(const SweepSpec& spec, const Cell& c, unsigned threads) {
    std::vector<SweepRow> rows;
    for (Policy policy : spec.policies) {
        GameConfig config;
        config.players = c.players;
        config.labels = c.labels;
        config.lot = c.lot;
        config.policy = policy;
        config.seed = spec.seed;
        const RunStats stats = run_many(config, spec.runs, threads);
        for (Metric m : kAllMetrics) {
            rows.push_back({c.players, c.labels, c.lot, policy, std::string(to_string(m)), stats[m].mean,
                            stats[m].std_error, stats.runs, spec.seed, "sim", ""});
        }
    }
    return rows;
}

}  // namespace

std::vector<SweepRow> run_sweep(const SweepSpec& spec) {
    if (spec.policies.empty()) throw std::invalid_argument("sweep: no policies");
    if (spec.mode != SweepMode::exact && spec.runs < 1) throw std::invalid_argument("sweep: runs must be >= 1");
    std::vector<Cell> cells;
    for (int p : spec.players) {
        const auto cap = spec.label_cap.find(p);
        for (int m : spec.labels) {
            if (cap != spec.label_cap.end() && m > cap->second) continue;
            for (int l : spec.lots) {
                if (l <= m) cells.push_back({p, m, l});
            }
        }
    }

    std::vector<std::vector<SweepRow>> results(cells.size());
    unsigned threads = spec.threads ? spec.threads : std::max(1U, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(cells.size(), 1)));
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < cells.size(); i = next++) {
            const Cell& c = cells[i];
            auto& out = results[i];
            try {
                if (spec.mode != SweepMode::sim) {
                    auto rows = exact_rows(spec, c);
                    out.insert(out.end(), rows.begin(), rows.end());
                }
                if (spec.mode != SweepMode::exact) {
                    auto rows = sim_rows(spec, c, 1);
                    out.insert(out.end(), rows.begin(), rows.end());
                }
            } catch (const std::exception& e) {
                out.clear();
                for (Policy policy : spec.policies) {
                    out.push_back({c.players, c.labels, c.lot, policy, "", 0, 0, 0, spec.seed,
                                   std::string(to_string(spec.mode)), e.what()});
                }
            }
        }
    };
    {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    }

    std::vector<SweepRow> rows;
    for (auto& r : results) rows.insert(rows.end(), r.begin(), r.end());
    return rows;
}

namespace {

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
    }
    return out + "\"";
}

}  // namespace

void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows) {
    os << kCsvVersionLine << '\n' << kCsvHeader << '\n';
    for (const SweepRow& r : rows) {
        const bool failed = !r.error.empty();
        const bool sim = r.mode == "sim";
        os << r.players << ',' << r.labels << ',' << r.lot << ',' << to_string(r.policy) << ',' << r.metric << ','
           << (failed ? "" : format_double(r.value)) << ',' << (sim ? format_double(r.std_error) : "") << ','
           << (sim ? std::to_string(r.runs) : "") << ',' << r.seed << ',' << r.mode << ',' << csv_escape(r.error)
           << '\n';
    }
}

json sweep_document(const SweepSpec& spec, const std::vector<SweepRow>& rows) {
    json doc;
    doc["schema"] = kSchemaVersion;
    doc["command"] = "sweep";
    json policies = json::array();
    for (Policy p : spec.policies) policies.push_back(std::string(to_string(p)));
    json caps = json::object();
    for (const auto& [p, m] : spec.label_cap) caps[std::to_string(p)] = m;
    doc["spec"] = {{"players", spec.players}, {"labels", spec.labels}, {"lots", spec.lots},
                   {"policies", policies},    {"mode", std::string(to_string(spec.mode))},
                   {"runs", spec.runs},       {"seed", spec.seed}, {"label_cap", caps}};
    doc["generator"] = Rng::kName;
    json out = json::array();
    for (const SweepRow& r : rows) {
        json row = {{"P", r.players},   {"M", r.labels},   {"L", r.lot}, {"policy", std::string(to_string(r.policy))},
                    {"metric", r.metric}, {"mode", r.mode}, {"seed", r.seed}};
        if (r.error.empty()) {
            row["value"] = r.value;
            if (r.mode == "sim") {
                row["stderr"] = r.std_error;
                row["runs"] = r.runs;
            }
        } else {
            row["error"] = r.error;
        }
        out.push_back(row);
    }
    doc["rows"] = out;
    return doc;
}

}  // namespace cmccp
