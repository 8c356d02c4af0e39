#pragma once

#include <string>
#include <vector>

#include "sonsim/simkernel.hpp"

namespace sonsim {

struct MetricsRow {
    int n_peers = 0;
    int n_super_peers = 0;
    std::string strategy;
    long total_messages = 0;
    long total_sim_evaluations = 0;
    long total_tree_node_visits = 0;
    double precision = 1.0;
    double classifier_top1_accuracy = 0.0;
    double candidate_hit_rate = 0.0;
    double wall_clock_ms = 0.0; // last column: the only nondeterministic one
};

// Sum of dk_bis answer-set sizes over the paired baseline's; 1.0 when both
// are zero. Outcomes must pair up by query id.
double compute_precision(const std::vector<RoutingOutcome> &dk_bis_outcomes,
                         const std::vector<RoutingOutcome> &baseline_outcomes);

std::vector<MetricsRow> rows_from_report(const ScenarioReport &report);

// Run one scenario per axis value, three strategy rows each, axis in
// {n_peers, n_super_peers, queries_per_peer}.
std::vector<MetricsRow> sweep(const ScenarioConfig &base, const std::string &axis,
                              const std::vector<long> &values);

std::string metrics_csv(const std::vector<MetricsRow> &rows);

// key = value config lines; '#' comments; unknown keys rejected.
ScenarioConfig parse_config_text(const std::string &text);
ScenarioConfig parse_config_file(const std::string &path);

} // namespace sonsim
