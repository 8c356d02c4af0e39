#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <queue>
#include <string>
#include <vector>

#include "sonsim/dtree.hpp"
#include "sonsim/overlay.hpp"
#include "sonsim/routing.hpp"
#include "sonsim/rng.hpp"

namespace sonsim {

enum class EventKind { peer_join, query_submit, sp_leave, induce_index, phase_marker };

struct Event {
    long time = 0; // abstract ticks
    std::uint64_t seq = 0;
    EventKind kind = EventKind::phase_marker;
    std::string subject; // peer id, sp id or phase name
    int round = 0;       // query round, for query_submit
};

// Min-queue over (time, seq): total, deterministic dequeue order.
class EventQueue {
public:
    void push(long time, EventKind kind, std::string subject, int round = 0);
    bool empty() const { return heap_.empty(); }
    std::size_t size() const { return heap_.size(); }
    Event pop();
    long now() const { return now_; }

private:
    struct Later {
        bool operator()(const Event &a, const Event &b) const {
            if (a.time != b.time) return a.time > b.time;
            return a.seq > b.seq;
        }
    };
    std::priority_queue<Event, std::vector<Event>, Later> heap_;
    std::uint64_t next_seq_ = 0;
    long now_ = 0;
};

struct ScenarioConfig {
    std::uint64_t seed = 42;
    int n_peers = 300;
    int n_super_peers = 10;
    int k_components = 4;
    double eps_acc = 0.5;
    double group_threshold = 0.6;
    double relevance_fraction = 0.5;
    double forward_threshold = 0.0;
    double top_p = 0.1;
    int queries_per_peer = 20;
    double warmup_fraction = 0.5;
    int churn_events = 0;
    int hop_limit = 1;
    // topology generator knobs
    int cluster_size = 3;   // mean SPs per theme cluster
    int theme_triples = 8;  // triples per theme description
    int pool_concepts = 8;  // concept vocabulary per cluster
    double drop_prob = 0.3; // chance a peer drops a non-anchor theme triple
    int add_max = 1;        // extra pool triples a peer may add

    void validate() const; // throws SimError("config-error", ...)
    RoutingParams routing_params() const;
};

struct ChurnRecord {
    std::string removed_sp;
    std::string target_sp;
    std::size_t orphan_count = 0;
};

struct MeasuredQuery {
    Query query;
    std::map<Strategy, RoutingOutcome> outcomes;
};

struct StrategyTotals {
    long messages = 0;
    long sim_evaluations = 0;
    long tree_node_visits = 0;
    long answers = 0;
    double wall_clock_ms = 0.0;
};

struct ScenarioReport {
    ScenarioConfig config;
    OverlayState final_state;
    std::size_t warmup_queries = 0;
    std::size_t measured_queries = 0;
    std::vector<MeasuredQuery> per_query;
    std::map<Strategy, StrategyTotals> totals;
    std::vector<ChurnRecord> churn;
    double precision = 1.0; // dk_bis vs baseline answer mass
    AccuracyReport classifier; // 70/30 split over the warm-up logs
    std::vector<LogRecord> global_log;
};

// Seeded synthesis: clustered theme vocabulary, per-peer expertise perturbed
// from a chosen theme, joins, inter-SP mappings/trust, SSP grouping.
OverlayState generate_network(const ScenarioConfig &cfg, Rng &rng);

// Warm-up (baseline + logging), per-group index induction, paired-state
// measurement of the three strategies, optional interleaved SP churn.
ScenarioReport run_scenario(const ScenarioConfig &cfg);

} // namespace sonsim
