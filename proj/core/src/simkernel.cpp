#include "sonsim/simkernel.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cmath>

#include "sonsim/errors.hpp"
#include "sonsim/similarity.hpp"

namespace sonsim {

void EventQueue::push(long time, EventKind kind, std::string subject, int round) {
    if (time < now_)
        throw SimError("time-reversal", "event scheduled before current tick");
    Event e;
    e.time = time;
    e.seq = next_seq_++;
    e.kind = kind;
    e.subject = std::move(subject);
    e.round = round;
    heap_.push(std::move(e));
}

Event EventQueue::pop() {
    if (heap_.empty()) throw SimError("empty-queue", "pop from an empty event queue");
    Event e = heap_.top();
    heap_.pop();
    now_ = e.time;
    return e;
}

void ScenarioConfig::validate() const {
    auto require = [](bool ok, const std::string &what) {
        if (!ok) throw SimError("config-error", what);
    };
    require(n_peers >= 1, "n_peers must be >= 1");
    require(n_super_peers >= 1, "n_super_peers must be >= 1");
    require(k_components >= 1, "k_components must be >= 1");
    require(queries_per_peer >= 1, "queries_per_peer must be >= 1");
    require(eps_acc >= 0.0 && eps_acc <= 1.0, "eps_acc must be in [0,1]");
    require(group_threshold >= 0.0 && group_threshold <= 1.0,
            "group_threshold must be in [0,1]");
    require(relevance_fraction > 0.0 && relevance_fraction <= 1.0,
            "relevance_fraction must be in (0,1]");
    require(warmup_fraction > 0.0 && warmup_fraction <= 1.0,
            "warmup_fraction must be in (0,1]");
    require(top_p > 0.0 && top_p <= 1.0, "top_p must be in (0,1]");
    require(forward_threshold >= 0.0 && forward_threshold <= 1.0,
            "forward_threshold must be in [0,1]");
    require(churn_events >= 0, "churn_events must be >= 0");
    require(hop_limit >= 1, "hop_limit must be >= 1");
    require(cluster_size >= 1, "cluster_size must be >= 1");
    require(theme_triples >= 2, "theme_triples must be >= 2");
    require(pool_concepts >= 3, "pool_concepts must be >= 3");
    require(drop_prob >= 0.0 && drop_prob < 1.0, "drop_prob must be in [0,1)");
    require(add_max >= 0, "add_max must be >= 0");
}

RoutingParams ScenarioConfig::routing_params() const {
    RoutingParams p;
    p.relevance_fraction = relevance_fraction;
    p.forward_threshold = forward_threshold;
    p.top_p = top_p;
    p.hop_limit = hop_limit;
    return p;
}

namespace {

std::string pad_id(const std::string &prefix, int i, int width) {
    std::string n = std::to_string(i);
    while (static_cast<int>(n.size()) < width) n.insert(n.begin(), '0');
    return prefix + n;
}

const std::vector<std::string> &role_names() {
    static const std::vector<std::string> roles = {
        "uses", "provides", "teaches", "manages", "treats", "employs", "funds",
        "studies"};
    return roles;
}

// Synthetic concept vocabulary: capitalized syllable pairs, shuffled per seed
// so cluster pools differ between runs.
std::vector<std::string> concept_vocabulary(Rng &rng, std::size_t needed) {
    static const std::vector<std::string> syl = {
        "ra", "ve",  "lo",  "mi", "tan", "dor", "ke",  "su",  "pa",  "nor",
        "fi", "gal", "tu",  "ben", "cor", "li", "mar", "ze",  "hul", "qui",
        "sol", "ne", "vim", "ost", "dra", "yel", "pim", "gro", "ats", "uln"};
    if (needed > syl.size() * syl.size())
        throw SimError("vocabulary-exhausted",
                       "network needs more concepts than the vocabulary holds");
    std::vector<std::string> words;
    words.reserve(syl.size() * syl.size());
    for (const auto &a : syl)
        for (const auto &b : syl) {
            std::string w = a + b;
            w[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(w[0])));
            words.push_back(w);
        }
    rng.shuffle(words);
    words.resize(std::max(needed, std::size_t{1}));
    return words;
}

ExpertiseTriple random_pool_triple(const std::vector<std::string> &pool, Rng &rng) {
    std::size_t a = rng.below(pool.size());
    std::size_t b = rng.below(pool.size() - 1);
    if (b >= a) ++b;
    const auto &roles = role_names();
    std::size_t r = rng.below(roles.size() + 1);
    std::string rel = r == roles.size() ? "IsA" : roles[r];
    return {rel, pool[a], pool[b]};
}

} // namespace

OverlayState generate_network(const ScenarioConfig &cfg, Rng &rng) {
    cfg.validate();

    // carve super-peers into theme clusters of ~cluster_size
    std::vector<int> cluster_of_sp(cfg.n_super_peers);
    int n_clusters = 0;
    {
        int assigned = 0;
        while (assigned < cfg.n_super_peers) {
            int size = cfg.cluster_size;
            if (cfg.cluster_size > 1 && rng.below(2) == 0) size += rng.below(2) ? 1 : -1;
            size = std::max(1, std::min(size, cfg.n_super_peers - assigned));
            for (int i = 0; i < size; ++i) cluster_of_sp[assigned++] = n_clusters;
            n_clusters++;
        }
    }

    auto words = concept_vocabulary(
        rng, static_cast<std::size_t>(n_clusters) * cfg.pool_concepts);
    std::vector<std::vector<std::string>> pools(n_clusters);
    for (int c = 0; c < n_clusters; ++c)
        pools[c].assign(words.begin() + static_cast<std::ptrdiff_t>(c) * cfg.pool_concepts,
                        words.begin() + static_cast<std::ptrdiff_t>(c + 1) * cfg.pool_concepts);

    // each cluster shares an anchor triple; every theme covers the whole pool
    std::vector<ExpertiseTriple> anchors(n_clusters);
    for (int c = 0; c < n_clusters; ++c)
        anchors[c] = {"IsA", pools[c][0], pools[c][1]};

    OverlayState state;
    const int sp_width = cfg.n_super_peers > 100 ? 4 : 3;
    for (int i = 0; i < cfg.n_super_peers; ++i) {
        int c = cluster_of_sp[i];
        const auto &pool = pools[c];
        Expertise desc;
        desc.add(anchors[c]);
        for (int ci = 0; ci < cfg.pool_concepts; ++ci) {
            // cover concept ci with a triple to a random other pool concept
            std::size_t other = rng.below(pool.size() - 1);
            if (other >= static_cast<std::size_t>(ci)) ++other;
            const auto &roles = role_names();
            std::size_t r = rng.below(roles.size() + 1);
            std::string rel = r == roles.size() ? "IsA" : roles[r];
            desc.add({rel, pool[ci], pool[other]});
        }
        while (static_cast<int>(desc.size()) < cfg.theme_triples)
            desc.add(random_pool_triple(pool, rng));

        SuperPeer sp;
        sp.sp_id = pad_id("SP", i, sp_width);
        sp.theme = Theme{pad_id("T", i, sp_width), desc};
        state.super_peers.emplace(sp.sp_id, std::move(sp));
    }

    build_inter_sp_links(state, cfg.eps_acc);
    group_super_peers(state, cfg.group_threshold);

    // peers: perturbations of a randomly chosen theme
    std::vector<std::string> sp_ids;
    for (const auto &[id, sp] : state.super_peers) sp_ids.push_back(id);
    const int peer_width = cfg.n_peers > 1000 ? 5 : 4;
    for (int i = 0; i < cfg.n_peers; ++i) {
        std::size_t t = rng.below(sp_ids.size());
        const SuperPeer &sp = state.sp(sp_ids[t]);
        int c = cluster_of_sp[t];
        Expertise exp;
        exp.add(anchors[c]);
        for (const auto &tr : sp.theme.description.triples()) {
            if (tr == anchors[c]) continue;
            if (rng.real01() >= cfg.drop_prob) exp.add(tr);
        }
        std::uint64_t extra = cfg.add_max ? rng.below(cfg.add_max + 1) : 0;
        for (std::uint64_t e = 0; e < extra; ++e)
            exp.add(random_pool_triple(pools[c], rng));

        DomainAdvertisement ad;
        ad.pid = pad_id("P", i, peer_width);
        ad.expertise = exp;
        ad.topic = sp.theme.theme_id;
        ad.eps_acc = cfg.eps_acc;
        ad.ttl = 0;
        join_peer(state, ad);
    }
    return state;
}

namespace {

double ms_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                     t0)
        .count();
}

} // namespace

ScenarioReport run_scenario(const ScenarioConfig &cfg) {
    cfg.validate();
    Rng rng(cfg.seed);
    ScenarioReport report;
    report.config = cfg;

    OverlayState state = generate_network(cfg, rng);
    RoutingParams params = cfg.routing_params();

    std::vector<std::string> peer_ids;
    for (const auto &[id, p] : state.peers) peer_ids.push_back(id);

    const std::size_t total =
        static_cast<std::size_t>(cfg.n_peers) * static_cast<std::size_t>(cfg.queries_per_peer);
    const std::size_t warmup =
        static_cast<std::size_t>(std::ceil(static_cast<double>(total) * cfg.warmup_fraction));
    const std::size_t measured = total - warmup;

    // schedule: one query-submit per (round, peer) round-robin; churn spread
    // evenly through the measurement window
    EventQueue queue;
    long tick = 0;
    queue.push(tick++, EventKind::phase_marker, "warmup");
    std::size_t scheduled = 0;
    long induce_tick = 0;
    for (int round = 0; round < cfg.queries_per_peer; ++round) {
        for (const auto &pid : peer_ids) {
            queue.push(tick++, EventKind::query_submit, pid, round);
            scheduled++;
            if (scheduled == warmup) {
                queue.push(tick++, EventKind::induce_index, "");
                induce_tick = tick;
                queue.push(tick++, EventKind::phase_marker, "measurement");
            }
        }
    }
    if (cfg.churn_events > 0 && measured > 0) {
        std::size_t gap = std::max<std::size_t>(1, measured / (cfg.churn_events + 1));
        for (int i = 1; i <= cfg.churn_events; ++i) {
            long t = induce_tick + static_cast<long>(gap) * i + i;
            queue.push(std::min(t, tick - 1) , EventKind::sp_leave, "");
        }
    }

    std::size_t query_counter = 0;
    std::size_t routed = 0;
    bool measuring = false;
    std::map<Strategy, StrategyTotals> totals;

    while (!queue.empty()) {
        Event ev = queue.pop();
        switch (ev.kind) {
        case EventKind::phase_marker:
            measuring = ev.subject == "measurement";
            break;
        case EventKind::peer_join:
            break; // joins happen during generation in this scenario
        case EventKind::induce_index: {
            bool any = false;
            for (auto &[gid, group] : state.ssp_groups) {
                if (group.log.empty()) continue;
                Dataset data = dataset_from_log(group.log, cfg.k_components);
                group.index = std::make_shared<DecisionTree>(induce(data, 1));
                any = true;
            }
            if (!any)
                throw SimError("no-training-data",
                               "every group log is empty after warm-up");
            break;
        }
        case EventKind::sp_leave: {
            if (state.super_peers.size() < 2) break;
            std::vector<std::string> ids;
            for (const auto &[id, sp] : state.super_peers) ids.push_back(id);
            const std::string victim = ids[rng.below(ids.size())];
            auto rep = remove_super_peer(state, victim);
            report.churn.push_back(
                {rep.removed_sp, rep.target_sp, rep.reattached_peers.size()});
            break;
        }
        case EventKind::query_submit: {
            auto pit = state.peers.find(ev.subject);
            if (pit == state.peers.end()) break; // peer vanished with churn
            Query q = generate_query(pit->second, cfg.k_components, rng);
            q.query_id = "Q" + std::to_string(++query_counter);
            routed++;
            if (!measuring) {
                RoutingOutcome out = route_baseline(state, q, params);
                SSPGroup &group = state.ssp_groups.at(state.sp(q.origin_sp).ssp_id);
                append_log(group, q, out, state);
                report.warmup_queries++;
            } else {
                MeasuredQuery mq;
                mq.query = q;
                for (Strategy s :
                     {Strategy::baseline, Strategy::dk, Strategy::dk_bis}) {
                    auto t0 = std::chrono::steady_clock::now();
                    RoutingOutcome out = s == Strategy::baseline
                                             ? route_baseline(state, q, params)
                                         : s == Strategy::dk
                                             ? route_dk(state, q, params)
                                             : route_dk_bis(state, q, params);
                    auto &tot = totals[s];
                    tot.wall_clock_ms += ms_since(t0);
                    tot.messages += out.messages;
                    tot.sim_evaluations += out.sim_evaluations;
                    tot.tree_node_visits += out.tree_node_visits;
                    tot.answers += static_cast<long>(out.answering_peers.size());
                    mq.outcomes.emplace(s, std::move(out));
                }
                report.per_query.push_back(std::move(mq));
                report.measured_queries++;
            }
            break;
        }
        }
    }

    report.totals = totals;

    // precision: dk_bis answer mass over baseline answer mass
    long dkbis_mass = totals.count(Strategy::dk_bis) ? totals[Strategy::dk_bis].answers : 0;
    long base_mass = totals.count(Strategy::baseline) ? totals[Strategy::baseline].answers : 0;
    report.precision =
        base_mass == 0 ? 1.0 : static_cast<double>(dkbis_mass) / static_cast<double>(base_mass);

    // classifier quality on a 70/30 split of each group's warm-up log
    {
        double top1 = 0.0, hit = 0.0, sz = 0.0, weight = 0.0;
        for (const auto &[gid, group] : state.ssp_groups) {
            if (group.log.size() < 10) continue;
            std::size_t cut = group.log.size() * 7 / 10;
            if (cut == 0 || cut == group.log.size()) continue;
            std::vector<LogRecord> train(group.log.begin(),
                                         group.log.begin() + static_cast<std::ptrdiff_t>(cut));
            std::vector<LogRecord> hold(group.log.begin() + static_cast<std::ptrdiff_t>(cut),
                                        group.log.end());
            DecisionTree tree = induce(dataset_from_log(train, cfg.k_components), 1);
            AccuracyReport r =
                evaluate(tree, dataset_from_log(hold, cfg.k_components), cfg.top_p);
            double w = static_cast<double>(hold.size());
            top1 += r.top1_accuracy * w;
            hit += r.candidate_hit_rate * w;
            sz += r.candidate_mean_size * w;
            weight += w;
        }
        if (weight > 0) {
            report.classifier.top1_accuracy = top1 / weight;
            report.classifier.candidate_hit_rate = hit / weight;
            report.classifier.candidate_mean_size = sz / weight;
        }
    }

    for (const auto &[gid, group] : state.ssp_groups)
        report.global_log.insert(report.global_log.end(), group.log.begin(),
                                 group.log.end());

    report.final_state = std::move(state);
    (void)routed;
    return report;
}

} // namespace sonsim
