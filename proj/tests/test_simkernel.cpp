#include <doctest.h>

#include "sonsim/errors.hpp"
#include "sonsim/simkernel.hpp"

using namespace sonsim;

TEST_CASE("event queue dequeues in (time, seq) order") {
    EventQueue q;
    q.push(5, EventKind::query_submit, "b");
    q.push(1, EventKind::query_submit, "a");
    q.push(5, EventKind::sp_leave, "c");
    CHECK(q.pop().subject == "a");
    Event first5 = q.pop();
    CHECK(first5.subject == "b"); // earlier seq wins at equal time
    CHECK(q.pop().subject == "c");
    CHECK(q.empty());
    CHECK_THROWS_WITH_AS(q.pop(), doctest::Contains("empty-queue"), SimError);
}

TEST_CASE("the clock never goes backwards") {
    EventQueue q;
    q.push(3, EventKind::phase_marker, "x");
    q.pop();
    CHECK(q.now() == 3);
    CHECK_THROWS_WITH_AS(q.push(1, EventKind::phase_marker, "y"),
                         doctest::Contains("time-reversal"), SimError);
}

TEST_CASE("config validation rejects out-of-range values") {
    ScenarioConfig cfg;
    cfg.n_peers = 0;
    CHECK_THROWS_WITH_AS(cfg.validate(), doctest::Contains("config-error"), SimError);
    cfg = ScenarioConfig{};
    cfg.warmup_fraction = 0.0;
    CHECK_THROWS_AS(cfg.validate(), SimError);
    cfg = ScenarioConfig{};
    cfg.eps_acc = 1.5;
    CHECK_THROWS_AS(cfg.validate(), SimError);
}

TEST_CASE("a 1x1 network is one peer on one SP in one group") {
    ScenarioConfig cfg;
    cfg.n_peers = 1;
    cfg.n_super_peers = 1;
    Rng rng(cfg.seed);
    OverlayState state = generate_network(cfg, rng);
    CHECK(state.peers.size() == 1);
    CHECK(state.super_peers.size() == 1);
    CHECK(state.ssp_groups.size() == 1);
    CHECK(state.peers.begin()->second.home_sp == state.super_peers.begin()->first);
}

TEST_CASE("generation is deterministic per seed") {
    ScenarioConfig cfg;
    cfg.n_peers = 50;
    cfg.n_super_peers = 5;
    Rng a(cfg.seed), b(cfg.seed);
    CHECK(export_snapshot(generate_network(cfg, a)) ==
          export_snapshot(generate_network(cfg, b)));
    Rng c(cfg.seed + 1);
    CHECK(export_snapshot(generate_network(cfg, a)) !=
          export_snapshot(generate_network(cfg, c)));
}

TEST_CASE("a 300-peer network keeps the partition laws and homes every peer") {
    ScenarioConfig cfg; // defaults: 300 peers, 10 SPs
    Rng rng(cfg.seed);
    OverlayState state = generate_network(cfg, rng);
    CHECK(state.peers.size() == 300);
    std::set<std::string> grouped;
    for (const auto &[gid, g] : state.ssp_groups)
        for (const auto &sp : g.member_sps) CHECK(grouped.insert(sp).second);
    CHECK(grouped.size() == state.super_peers.size());
    for (const auto &[pid, p] : state.peers)
        CHECK(state.super_peers.count(p.home_sp) == 1);
}

TEST_CASE("warm-up query count follows the ceiling arithmetic") {
    ScenarioConfig cfg;
    cfg.n_peers = 25;
    cfg.n_super_peers = 4;
    cfg.queries_per_peer = 1;
    cfg.warmup_fraction = 0.5;
    ScenarioReport rep = run_scenario(cfg);
    CHECK(rep.warmup_queries == 13); // ceil(25/2)
    CHECK(rep.measured_queries == 12);
}

TEST_CASE("run_scenario is deterministic per seed") {
    ScenarioConfig cfg;
    cfg.n_peers = 40;
    cfg.n_super_peers = 4;
    cfg.queries_per_peer = 4;
    ScenarioReport a = run_scenario(cfg);
    ScenarioReport b = run_scenario(cfg);
    CHECK(a.precision == b.precision);
    CHECK(a.totals.at(Strategy::baseline).messages ==
          b.totals.at(Strategy::baseline).messages);
    CHECK(a.totals.at(Strategy::dk_bis).sim_evaluations ==
          b.totals.at(Strategy::dk_bis).sim_evaluations);
    CHECK(log_to_csv(a.global_log, cfg.k_components) ==
          log_to_csv(b.global_log, cfg.k_components));
}

TEST_CASE("measured strategies see identical paired state") {
    ScenarioConfig cfg;
    cfg.n_peers = 40;
    cfg.n_super_peers = 4;
    cfg.queries_per_peer = 4;
    ScenarioReport rep = run_scenario(cfg);
    REQUIRE(rep.measured_queries > 0);
    for (const auto &mq : rep.per_query) {
        REQUIRE(mq.outcomes.size() == 3);
        const auto &bis = mq.outcomes.at(Strategy::dk_bis);
        CHECK_FALSE(bis.used_fallback);
        // dk repeats the index path, so it can never answer less
        const auto &dk = mq.outcomes.at(Strategy::dk);
        for (const auto &p : bis.answering_peers)
            CHECK(dk.answering_peers.count(p) == 1);
    }
}

TEST_CASE("churn events leave no orphans") {
    ScenarioConfig cfg;
    cfg.n_peers = 60;
    cfg.n_super_peers = 6;
    cfg.queries_per_peer = 2;
    cfg.churn_events = 2;
    ScenarioReport rep = run_scenario(cfg);
    CHECK(rep.churn.size() == 2);
    for (const auto &[pid, p] : rep.final_state.peers)
        CHECK(rep.final_state.super_peers.count(p.home_sp) == 1);
}

TEST_CASE("an oversized network exhausts the concept vocabulary") {
    ScenarioConfig cfg;
    cfg.n_peers = 1;
    cfg.n_super_peers = 2000;
    cfg.cluster_size = 1;
    cfg.pool_concepts = 600;
    Rng rng(1);
    CHECK_THROWS_WITH_AS(generate_network(cfg, rng),
                         doctest::Contains("vocabulary-exhausted"), SimError);
}
