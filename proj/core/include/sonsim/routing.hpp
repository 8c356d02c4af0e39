#pragma once

#include <set>
#include <string>
#include <vector>

#include "sonsim/dtree.hpp"
#include "sonsim/overlay.hpp"
#include "sonsim/query.hpp"

namespace sonsim {

enum class Strategy { baseline, dk, dk_bis };

const char *strategy_name(Strategy s);

struct RoutingParams {
    double relevance_fraction = 0.5;
    // minimum component-to-theme Sim for a baseline forward; 0 means any
    // positive overlap forwards (see docs/decisions on completeness)
    double forward_threshold = 0.0;
    double top_p = 0.1;
    int hop_limit = 1;
};

struct RoutingOutcome {
    std::string query_id;
    Strategy strategy = Strategy::baseline;
    std::set<std::string> answering_peers;
    long messages = 0;
    long sim_evaluations = 0;
    long tree_node_visits = 0;
    bool used_fallback = false;
};

// Two-level mapping search: the origin SP screens its own members, then
// forwards to linked neighbor SPs (up to hop_limit hops) whose themes share at
// least one component mapping above forward_threshold; each screens its own
// members identically.
RoutingOutcome route_baseline(const OverlayState &state, const Query &q,
                              const RoutingParams &params);

// Index-only routing: the SSP predicts candidate responders; in-group SP
// candidates screen their members, foreign-SSP candidates have their whole
// group screened. Never falls back, may miss.
RoutingOutcome route_dk_bis(const OverlayState &state, const Query &q,
                            const RoutingParams &params);

// Hybrid: the index path of dk_bis, and when it yields no candidate or no
// answer the SSP returns the query and the baseline runs; answers union.
RoutingOutcome route_dk(const OverlayState &state, const Query &q,
                        const RoutingParams &params);

// One record per distinct home SP of the answering peers, labeled by the SP
// id when that SP is in the group and by its SSP id otherwise.
int append_log(SSPGroup &group, const Query &q, const RoutingOutcome &outcome,
               const OverlayState &state);

Dataset dataset_from_log(const std::vector<LogRecord> &log, std::size_t k);

// CSV interchange: header peer,sp,comp1..compK,responder; quotes doubled.
std::string log_to_csv(const std::vector<LogRecord> &log, std::size_t k);
std::vector<LogRecord> log_from_csv(const std::string &csv, std::size_t *k_out = nullptr);

} // namespace sonsim
