#include <benchmark/benchmark.h>

#include <vector>

#include "sonsim/dtree.hpp"
#include "sonsim/routing.hpp"
#include "sonsim/rng.hpp"
#include "sonsim/similarity.hpp"
#include "sonsim/simkernel.hpp"

namespace {

using namespace sonsim;

std::vector<ExpertiseTriple> make_triples(std::size_t n) {
    std::vector<ExpertiseTriple> out;
    Rng rng(99);
    static const char *const roots[] = {"Researcher", "Employee", "Doctor", "Publication",
                                        "Patient", "Hospital", "SeniorStaff", "Department"};
    for (std::size_t i = 0; i < n; ++i) {
        ExpertiseTriple t;
        t.relation = (i % 3 == 0) ? "IsA" : "provides";
        t.source = roots[rng.below(8)];
        t.target = roots[rng.below(8)];
        out.push_back(t);
    }
    return out;
}

void BM_Sim(benchmark::State &state) {
    auto triples = make_triples(64);
    std::size_t i = 0;
    for (auto _ : state) {
        const auto &a = triples[i % triples.size()];
        const auto &b = triples[(i * 7 + 3) % triples.size()];
        benchmark::DoNotOptimize(sim(a, b));
        ++i;
    }
}
BENCHMARK(BM_Sim);

void BM_Induce(benchmark::State &state) {
    Dataset d;
    d.attribute_names = {"c1", "c2", "c3", "c4"};
    Rng rng(5);
    static const char *const vals[] = {"u", "v", "w", "x"};
    static const char *const labels[] = {"SP0", "SP1", "SP2", "SSP17"};
    for (int r = 0; r < static_cast<int>(state.range(0)); ++r) {
        Dataset::Row row;
        for (int a = 0; a < 4; ++a) row.values.push_back(vals[rng.below(4)]);
        row.label = labels[(row.values[0][0] + r / 40) % 4];
        d.rows.push_back(std::move(row));
    }
    for (auto _ : state) {
        benchmark::DoNotOptimize(induce(d));
    }
}
BENCHMARK(BM_Induce)->Arg(100)->Arg(400);

void BM_RouteBaseline(benchmark::State &state) {
    ScenarioConfig cfg;
    cfg.n_peers = static_cast<int>(state.range(0));
    cfg.n_super_peers = 8;
    Rng rng(cfg.seed);
    OverlayState st = generate_network(cfg, rng);
    const Peer &origin = st.peers.begin()->second;
    Query q = generate_query(origin, 4, rng);
    RoutingParams params = cfg.routing_params();
    for (auto _ : state) {
        benchmark::DoNotOptimize(route_baseline(st, q, params));
    }
}
BENCHMARK(BM_RouteBaseline)->Arg(100)->Arg(300);

} // namespace

BENCHMARK_MAIN();
