#include <doctest.h>

#include "sonsim/errors.hpp"
#include "sonsim/routing.hpp"
#include "sonsim/simkernel.hpp"

using namespace sonsim;

namespace {

// flooding oracle: apply is_relevant to every peer in the network
std::set<std::string> flood_relevant(const OverlayState &state, const Query &q,
                                     double fraction) {
    std::set<std::string> out;
    for (const auto &[pid, p] : state.peers)
        if (is_relevant(p, q, fraction)) out.insert(pid);
    return out;
}

// two linked domains sharing a triple, one isolated foreign domain
OverlayState two_domain_state() {
    OverlayState state;
    auto add_sp = [&](const std::string &id, std::initializer_list<ExpertiseTriple> ts) {
        SuperPeer sp;
        sp.sp_id = id;
        Expertise e;
        for (const auto &t : ts) e.add(t);
        sp.theme = {"T" + id, e};
        state.super_peers.emplace(id, sp);
    };
    add_sp("SP0", {{"IsA", "Researcher", "Employee"},
                   {"provides", "Researcher", "Publication"}});
    add_sp("SP1", {{"IsA", "Researcher", "Employee"},
                   {"funds", "Agency", "Researcher"}});
    add_sp("SP2", {{"orbits", "Planet", "Star"}, {"IsA", "Star", "Body"}});
    build_inter_sp_links(state, 0.5);
    group_super_peers(state, 0.9); // tight threshold: three singleton groups
    return state;
}

void join(OverlayState &state, const std::string &pid,
          std::initializer_list<ExpertiseTriple> ts) {
    DomainAdvertisement ad;
    ad.pid = pid;
    for (const auto &t : ts) ad.expertise.add(t);
    ad.eps_acc = 0.5;
    join_peer(state, ad);
}

Query query_of(const OverlayState &state, const std::string &pid,
               std::vector<std::string> comps) {
    Query q;
    q.query_id = "Qt";
    q.origin_peer = pid;
    q.origin_sp = state.peer(pid).home_sp;
    q.components = std::move(comps);
    return q;
}

void give_index(OverlayState &state, const std::string &sp_id,
                const std::vector<LogRecord> &log, std::size_t k) {
    SSPGroup &g = state.ssp_groups.at(state.sp(sp_id).ssp_id);
    g.log = log;
    g.index = std::make_shared<DecisionTree>(induce(dataset_from_log(log, k)));
}

} // namespace

TEST_CASE("baseline answers only the origin when nobody else matches") {
    OverlayState state = two_domain_state();
    join(state, "P1", {{"IsA", "Researcher", "Employee"},
                       {"studies", "Researcher", "Biology"}});
    Query q = query_of(state, "P1",
                       {"studies(Researcher;Biology)", "none", "none", "none"});
    RoutingParams params;
    auto out = route_baseline(state, q, params);
    CHECK(out.answering_peers == std::set<std::string>{"P1"});
    CHECK(out.sim_evaluations > 0);
    CHECK_FALSE(out.used_fallback);
}

TEST_CASE("baseline reaches a relevant peer in a linked neighbor domain") {
    OverlayState state = two_domain_state();
    join(state, "P1", {{"IsA", "Researcher", "Employee"},
                       {"provides", "Researcher", "Publication"}});
    join(state, "P2", {{"IsA", "Researcher", "Employee"},
                       {"funds", "Agency", "Researcher"}});
    REQUIRE(state.peer("P1").home_sp == "SP0");
    REQUIRE(state.peer("P2").home_sp == "SP1");
    Query q = query_of(state, "P1",
                       {"IsA(Researcher;Employee)", "none", "none", "none"});
    RoutingParams params;
    auto out = route_baseline(state, q, params);
    CHECK(out.answering_peers.count("P2") == 1);
    CHECK(out.messages >= 1 + 1 + 2); // submit + forward + two replies
}

TEST_CASE("baseline equals the flooding oracle on a seeded scenario") {
    ScenarioConfig cfg;
    cfg.n_peers = 100;
    cfg.n_super_peers = 6;
    Rng rng(42);
    OverlayState state = generate_network(cfg, rng);
    RoutingParams params = cfg.routing_params();
    int checked = 0;
    for (const auto &[pid, p] : state.peers) {
        if (checked++ == 25) break;
        Query q = generate_query(p, cfg.k_components, rng);
        q.query_id = "Q" + pid;
        auto out = route_baseline(state, q, params);
        CHECK(out.answering_peers == flood_relevant(state, q, cfg.relevance_fraction));
    }
}

TEST_CASE("unknown origin peer errors") {
    OverlayState state = two_domain_state();
    Query q;
    q.origin_peer = "Pmissing";
    q.components = {"IsA(Researcher;Employee)", "none", "none", "none"};
    CHECK_THROWS_WITH_AS(route_baseline(state, q, RoutingParams{}),
                         doctest::Contains("unknown-peer"), SimError);
}

TEST_CASE("append_log labels in-group responders by SP and foreign ones by SSP") {
    OverlayState state = two_domain_state();
    join(state, "P1", {{"IsA", "Researcher", "Employee"},
                       {"provides", "Researcher", "Publication"}});
    join(state, "P2", {{"IsA", "Researcher", "Employee"},
                       {"funds", "Agency", "Researcher"}});
    Query q = query_of(state, "P1",
                       {"IsA(Researcher;Employee)", "none", "none", "none"});
    auto out = route_baseline(state, q, RoutingParams{});
    REQUIRE(out.answering_peers == std::set<std::string>{"P1", "P2"});

    SSPGroup &g = state.ssp_groups.at(state.sp("SP0").ssp_id);
    int n = append_log(g, q, out, state);
    CHECK(n == 2); // two distinct responding SPs
    std::set<std::string> responders;
    for (const auto &rec : g.log) responders.insert(rec.responder);
    CHECK(responders == std::set<std::string>{"SP0", state.sp("SP1").ssp_id});
}

TEST_CASE("append_log writes one record per distinct responding SP") {
    OverlayState state = two_domain_state();
    join(state, "P1", {{"IsA", "Researcher", "Employee"}});
    join(state, "P2", {{"IsA", "Researcher", "Employee"}});
    Query q = query_of(state, "P1",
                       {"IsA(Researcher;Employee)", "none", "none", "none"});
    auto out = route_baseline(state, q, RoutingParams{});
    // both peers joined SP0, so one record despite two answers
    REQUIRE(out.answering_peers.size() >= 2);
    SSPGroup &g = state.ssp_groups.at(state.sp("SP0").ssp_id);
    std::set<std::string> home;
    for (const auto &pid : out.answering_peers) home.insert(state.peer(pid).home_sp);
    CHECK(append_log(g, q, out, state) == static_cast<int>(home.size()));
}

TEST_CASE("dk_bis message arithmetic for an origin-only prediction") {
    OverlayState state = two_domain_state();
    join(state, "P1", {{"IsA", "Researcher", "Employee"},
                       {"provides", "Researcher", "Publication"}});
    Query q = query_of(state, "P1",
                       {"provides(Researcher;Publication)", "none", "none", "none"});
    std::vector<LogRecord> log = {
        {"P1", "SP0", q.components, "SP0"},
        {"P1", "SP0", q.components, "SP0"},
    };
    give_index(state, "SP0", log, 4);
    auto out = route_dk_bis(state, q, RoutingParams{});
    CHECK(out.answering_peers == std::set<std::string>{"P1"});
    CHECK(out.messages == 2 + 1); // peer->SP, SP->SSP, one reply
    CHECK(out.tree_node_visits >= 1);
    CHECK_FALSE(out.used_fallback);
}

TEST_CASE("dk_bis may come back empty when the index points at a barren SSP") {
    OverlayState state = two_domain_state();
    join(state, "P1", {{"IsA", "Researcher", "Employee"},
                       {"provides", "Researcher", "Publication"}});
    std::string foreign_ssp = state.sp("SP2").ssp_id;
    Query q = query_of(state, "P1",
                       {"provides(Researcher;Publication)", "none", "none", "none"});
    std::vector<LogRecord> log = {{"P1", "SP0", q.components, foreign_ssp}};
    give_index(state, "SP0", log, 4);
    auto out = route_dk_bis(state, q, RoutingParams{});
    CHECK(out.answering_peers.empty());
    CHECK(out.messages == 2 + 1); // plus the foreign forward, no replies
}

TEST_CASE("missing index raises index-not-built") {
    OverlayState state = two_domain_state();
    join(state, "P1", {{"IsA", "Researcher", "Employee"}});
    Query q = query_of(state, "P1",
                       {"IsA(Researcher;Employee)", "none", "none", "none"});
    CHECK_THROWS_WITH_AS(route_dk_bis(state, q, RoutingParams{}),
                         doctest::Contains("index-not-built"), SimError);
    CHECK_THROWS_WITH_AS(route_dk(state, q, RoutingParams{}),
                         doctest::Contains("index-not-built"), SimError);
}

TEST_CASE("dk falls back to baseline when the index path finds nothing") {
    OverlayState state = two_domain_state();
    join(state, "P1", {{"IsA", "Researcher", "Employee"},
                       {"provides", "Researcher", "Publication"}});
    std::string foreign_ssp = state.sp("SP2").ssp_id;
    Query q = query_of(state, "P1",
                       {"provides(Researcher;Publication)", "none", "none", "none"});
    std::vector<LogRecord> log = {{"P1", "SP0", q.components, foreign_ssp}};
    give_index(state, "SP0", log, 4);

    auto dk = route_dk(state, q, RoutingParams{});
    auto base = route_baseline(state, q, RoutingParams{});
    CHECK(dk.used_fallback);
    CHECK(dk.answering_peers == base.answering_peers);
    auto bis = route_dk_bis(state, q, RoutingParams{});
    CHECK(dk.messages > bis.messages);
}

TEST_CASE("dk matches dk_bis when the index path succeeds") {
    OverlayState state = two_domain_state();
    join(state, "P1", {{"IsA", "Researcher", "Employee"},
                       {"provides", "Researcher", "Publication"}});
    Query q = query_of(state, "P1",
                       {"provides(Researcher;Publication)", "none", "none", "none"});
    std::vector<LogRecord> log = {{"P1", "SP0", q.components, "SP0"}};
    give_index(state, "SP0", log, 4);
    auto dk = route_dk(state, q, RoutingParams{});
    auto bis = route_dk_bis(state, q, RoutingParams{});
    CHECK_FALSE(dk.used_fallback);
    CHECK(dk.answering_peers == bis.answering_peers);
    CHECK(dk.messages == bis.messages);
}

TEST_CASE("log CSV round-trips including awkward tokens") {
    std::vector<LogRecord> log = {
        {"P1", "SP0", {"IsA(Researcher;Employee)", "none", "none", "none"}, "SP0"},
        {"P2", "SP1", {"a\"b", "c,d", "none", "none"}, "SSP17"},
    };
    std::string csv = log_to_csv(log, 4);
    CHECK(csv.rfind("peer,sp,comp1,comp2,comp3,comp4,responder\n", 0) == 0);
    std::size_t k = 0;
    auto back = log_from_csv(csv, &k);
    CHECK(k == 4);
    REQUIRE(back.size() == 2);
    CHECK(back[1].components[0] == "a\"b");
    CHECK(back[1].components[1] == "c,d");
    CHECK(back[1].responder == "SSP17");
    CHECK(log_to_csv(back, 4) == csv);
}
