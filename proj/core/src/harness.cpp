#include "sonsim/harness.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "sonsim/errors.hpp"

namespace sonsim {

double compute_precision(const std::vector<RoutingOutcome> &dk_bis_outcomes,
                         const std::vector<RoutingOutcome> &baseline_outcomes) {
    if (dk_bis_outcomes.size() != baseline_outcomes.size())
        throw SimError("mismatched-runs", "outcome vectors differ in length");
    long num = 0, den = 0;
    for (std::size_t i = 0; i < dk_bis_outcomes.size(); ++i) {
        if (dk_bis_outcomes[i].query_id != baseline_outcomes[i].query_id)
            throw SimError("mismatched-runs",
                           "query ids diverge at index " + std::to_string(i));
        num += static_cast<long>(dk_bis_outcomes[i].answering_peers.size());
        den += static_cast<long>(baseline_outcomes[i].answering_peers.size());
    }
    if (den == 0) return 1.0;
    return static_cast<double>(num) / static_cast<double>(den);
}

std::vector<MetricsRow> rows_from_report(const ScenarioReport &report) {
    std::vector<MetricsRow> rows;
    for (Strategy s : {Strategy::baseline, Strategy::dk, Strategy::dk_bis}) {
        MetricsRow row;
        row.n_peers = report.config.n_peers;
        row.n_super_peers = report.config.n_super_peers;
        row.strategy = strategy_name(s);
        if (auto it = report.totals.find(s); it != report.totals.end()) {
            row.total_messages = it->second.messages;
            row.total_sim_evaluations = it->second.sim_evaluations;
            row.total_tree_node_visits = it->second.tree_node_visits;
            row.wall_clock_ms = it->second.wall_clock_ms;
        }
        row.precision = report.precision;
        row.classifier_top1_accuracy = report.classifier.top1_accuracy;
        row.candidate_hit_rate = report.classifier.candidate_hit_rate;
        rows.push_back(row);
    }
    return rows;
}

std::vector<MetricsRow> sweep(const ScenarioConfig &base, const std::string &axis,
                              const std::vector<long> &values) {
    std::vector<MetricsRow> rows;
    for (long v : values) {
        ScenarioConfig cfg = base;
        if (axis == "n_peers")
            cfg.n_peers = static_cast<int>(v);
        else if (axis == "n_super_peers")
            cfg.n_super_peers = static_cast<int>(v);
        else if (axis == "queries_per_peer")
            cfg.queries_per_peer = static_cast<int>(v);
        else
            throw SimError("unknown-axis", axis);
        ScenarioReport report = run_scenario(cfg);
        auto r = rows_from_report(report);
        rows.insert(rows.end(), r.begin(), r.end());
    }
    return rows;
}

namespace {

std::string fixed6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return buf;
}

} // namespace

std::string metrics_csv(const std::vector<MetricsRow> &rows) {
    std::ostringstream out;
    out << "n_peers,n_super_peers,strategy,total_messages,total_sim_evaluations,"
           "total_tree_node_visits,precision,classifier_top1_accuracy,"
           "candidate_hit_rate,wall_clock_ms\n";
    for (const auto &r : rows) {
        out << r.n_peers << "," << r.n_super_peers << "," << r.strategy << ","
            << r.total_messages << "," << r.total_sim_evaluations << ","
            << r.total_tree_node_visits << "," << fixed6(r.precision) << ","
            << fixed6(r.classifier_top1_accuracy) << "," << fixed6(r.candidate_hit_rate)
            << "," << fixed6(r.wall_clock_ms) << "\n";
    }
    return out.str();
}

namespace {

std::string trim(const std::string &s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

long to_long(const std::string &key, const std::string &v) {
    try {
        std::size_t pos = 0;
        long out = std::stol(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return out;
    } catch (const std::exception &) {
        throw SimError("config-error", key + ": not an integer: " + v);
    }
}

double to_double(const std::string &key, const std::string &v) {
    try {
        std::size_t pos = 0;
        double out = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return out;
    } catch (const std::exception &) {
        throw SimError("config-error", key + ": not a number: " + v);
    }
}

} // namespace

ScenarioConfig parse_config_text(const std::string &text) {
    ScenarioConfig cfg;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        lineno++;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw SimError("config-error",
                           "line " + std::to_string(lineno) + ": expected key = value");
        std::string key = trim(line.substr(0, eq));
        std::string val = trim(line.substr(eq + 1));
        if (key == "seed") cfg.seed = static_cast<std::uint64_t>(to_long(key, val));
        else if (key == "n_peers") cfg.n_peers = static_cast<int>(to_long(key, val));
        else if (key == "n_super_peers") cfg.n_super_peers = static_cast<int>(to_long(key, val));
        else if (key == "k_components") cfg.k_components = static_cast<int>(to_long(key, val));
        else if (key == "eps_acc") cfg.eps_acc = to_double(key, val);
        else if (key == "group_threshold") cfg.group_threshold = to_double(key, val);
        else if (key == "relevance_fraction") cfg.relevance_fraction = to_double(key, val);
        else if (key == "forward_threshold") cfg.forward_threshold = to_double(key, val);
        else if (key == "top_p") cfg.top_p = to_double(key, val);
        else if (key == "queries_per_peer") cfg.queries_per_peer = static_cast<int>(to_long(key, val));
        else if (key == "warmup_fraction") cfg.warmup_fraction = to_double(key, val);
        else if (key == "churn_events") cfg.churn_events = static_cast<int>(to_long(key, val));
        else if (key == "hop_limit") cfg.hop_limit = static_cast<int>(to_long(key, val));
        else if (key == "cluster_size") cfg.cluster_size = static_cast<int>(to_long(key, val));
        else if (key == "theme_triples") cfg.theme_triples = static_cast<int>(to_long(key, val));
        else if (key == "pool_concepts") cfg.pool_concepts = static_cast<int>(to_long(key, val));
        else if (key == "drop_prob") cfg.drop_prob = to_double(key, val);
        else if (key == "add_max") cfg.add_max = static_cast<int>(to_long(key, val));
        else
            throw SimError("config-error", "unknown key: " + key);
    }
    cfg.validate();
    return cfg;
}

ScenarioConfig parse_config_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) throw SimError("config-error", "cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

} // namespace sonsim
