#include "sonsim/routing.hpp"

#include <algorithm>
#include <sstream>

#include "sonsim/errors.hpp"
#include "sonsim/similarity.hpp"

namespace sonsim {

namespace {

// Screening cost model: one sim evaluation per (active component, expertise
// triple) pair, whether or not the peer ends up relevant.
void screen_sp(const OverlayState &state, const SuperPeer &sp, const Query &q,
               double fraction, RoutingOutcome &out) {
    auto active = q.active_components();
    for (const auto &pid : sp.member_peers) {
        const Peer &p = state.peer(pid);
        out.sim_evaluations +=
            static_cast<long>(active.size()) * static_cast<long>(p.expertise.size());
        if (is_relevant(p, q, fraction)) out.answering_peers.insert(pid);
    }
}

// Does the theme share at least one component mapping above the threshold?
// Every Sim actually computed is charged to the outcome.
bool theme_matches_query(const Expertise &theme, const Query &q, double threshold,
                         RoutingOutcome &out) {
    bool matched = false;
    for (const auto &comp : q.active_components()) {
        ExpertiseTriple t = ExpertiseTriple::parse(comp);
        for (const auto &tt : theme.triples()) {
            out.sim_evaluations++;
            if (sim(t, tt) > threshold) matched = true;
        }
    }
    return matched;
}

std::set<std::string> linked_sps(const OverlayState &state, const std::string &sp_id) {
    std::set<std::string> out;
    const SuperPeer &sp = state.sp(sp_id);
    for (const auto &[other, entries] : sp.msp_sp)
        if (!entries.empty() && state.super_peers.count(other)) out.insert(other);
    return out;
}

const SSPGroup &group_of(const OverlayState &state, const std::string &sp_id) {
    const SuperPeer &sp = state.sp(sp_id);
    auto it = state.ssp_groups.find(sp.ssp_id);
    if (it == state.ssp_groups.end())
        throw SimError("unknown-super-peer", "SP has no SSP group: " + sp_id);
    return it->second;
}

} // namespace

const char *strategy_name(Strategy s) {
    switch (s) {
    case Strategy::baseline: return "baseline";
    case Strategy::dk: return "dk";
    case Strategy::dk_bis: return "dk_bis";
    }
    return "?";
}

RoutingOutcome route_baseline(const OverlayState &state, const Query &q,
                              const RoutingParams &params) {
    const Peer &origin = state.peer(q.origin_peer);
    RoutingOutcome out;
    out.query_id = q.query_id;
    out.strategy = Strategy::baseline;

    const std::string origin_sp = origin.home_sp;
    out.messages = 1; // peer -> SP
    screen_sp(state, state.sp(origin_sp), q, params.relevance_fraction, out);

    // hop-limited spread over SP links, gated by the theme/component filter
    std::set<std::string> visited{origin_sp};
    std::vector<std::string> frontier{origin_sp};
    for (int hop = 0; hop < params.hop_limit && !frontier.empty(); ++hop) {
        std::vector<std::string> next;
        for (const auto &at : frontier) {
            for (const auto &nb : linked_sps(state, at)) {
                if (visited.count(nb)) continue;
                visited.insert(nb);
                if (!theme_matches_query(state.sp(nb).theme.description, q,
                                         params.forward_threshold, out))
                    continue;
                out.messages++; // forward
                screen_sp(state, state.sp(nb), q, params.relevance_fraction, out);
                next.push_back(nb);
            }
        }
        frontier = std::move(next);
    }

    out.messages += static_cast<long>(out.answering_peers.size()); // replies
    return out;
}

RoutingOutcome route_dk_bis(const OverlayState &state, const Query &q,
                            const RoutingParams &params) {
    const Peer &origin = state.peer(q.origin_peer);
    const SSPGroup &group = group_of(state, origin.home_sp);
    if (!group.index)
        throw SimError("index-not-built", group.ssp_id);

    RoutingOutcome out;
    out.query_id = q.query_id;
    out.strategy = Strategy::dk_bis;
    out.messages = 2; // peer -> SP, SP -> SSP

    Prediction pred = predict(*group.index, q);
    out.tree_node_visits = static_cast<long>(pred.nodes_visited);

    for (const auto &[cls, p] : pred.ranked) {
        if (p < params.top_p) continue;
        if (group.member_sps.count(cls)) {
            screen_sp(state, state.sp(cls), q, params.relevance_fraction, out);
        } else if (auto it = state.ssp_groups.find(cls);
                   it != state.ssp_groups.end() && cls != group.ssp_id) {
            out.messages++; // forward to the foreign SSP
            for (const auto &sp_id : it->second.member_sps)
                screen_sp(state, state.sp(sp_id), q, params.relevance_fraction, out);
        }
        // classes naming departed SPs are skipped
    }

    out.messages += static_cast<long>(out.answering_peers.size());
    return out;
}

RoutingOutcome route_dk(const OverlayState &state, const Query &q,
                        const RoutingParams &params) {
    RoutingOutcome out = route_dk_bis(state, q, params);
    out.strategy = Strategy::dk;

    bool any_candidate = false;
    {
        const Peer &origin = state.peer(q.origin_peer);
        const SSPGroup &group = group_of(state, origin.home_sp);
        Prediction pred = predict(*group.index, q);
        for (const auto &[cls, p] : pred.ranked)
            if (p >= params.top_p) any_candidate = true;
    }

    if (!any_candidate || out.answering_peers.empty()) {
        out.messages++; // SSP returns the query
        RoutingOutcome fb = route_baseline(state, q, params);
        out.messages += fb.messages;
        out.sim_evaluations += fb.sim_evaluations;
        for (const auto &p : fb.answering_peers) out.answering_peers.insert(p);
        out.used_fallback = true;
    }
    return out;
}

int append_log(SSPGroup &group, const Query &q, const RoutingOutcome &outcome,
               const OverlayState &state) {
    std::set<std::string> responder_sps;
    for (const auto &pid : outcome.answering_peers)
        responder_sps.insert(state.peer(pid).home_sp);
    int appended = 0;
    for (const auto &sp_id : responder_sps) {
        LogRecord rec;
        rec.peer_id = q.origin_peer;
        rec.sp_id = q.origin_sp;
        rec.components = q.components;
        rec.responder = group.member_sps.count(sp_id)
                            ? sp_id
                            : state.sp(sp_id).ssp_id;
        group.log.push_back(std::move(rec));
        appended++;
    }
    return appended;
}

Dataset dataset_from_log(const std::vector<LogRecord> &log, std::size_t k) {
    Dataset d;
    for (std::size_t i = 1; i <= k; ++i)
        d.attribute_names.push_back("composanteW" + std::to_string(i));
    for (const auto &rec : log) {
        Dataset::Row row;
        row.values = rec.components;
        row.values.resize(k, kNoneComponent);
        row.label = rec.responder;
        d.rows.push_back(std::move(row));
    }
    return d;
}

namespace {

std::string csv_field(const std::string &s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    return out + "\"";
}

std::vector<std::string> csv_split(const std::string &line) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    fields.push_back(cur);
    return fields;
}

} // namespace

std::string log_to_csv(const std::vector<LogRecord> &log, std::size_t k) {
    std::ostringstream out;
    out << "peer,sp";
    for (std::size_t i = 1; i <= k; ++i) out << ",comp" << i;
    out << ",responder\n";
    for (const auto &rec : log) {
        out << csv_field(rec.peer_id) << "," << csv_field(rec.sp_id);
        for (std::size_t i = 0; i < k; ++i)
            out << ","
                << csv_field(i < rec.components.size() ? rec.components[i]
                                                       : kNoneComponent);
        out << "," << csv_field(rec.responder) << "\n";
    }
    return out.str();
}

std::vector<LogRecord> log_from_csv(const std::string &csv, std::size_t *k_out) {
    std::istringstream in(csv);
    std::string line;
    if (!std::getline(in, line))
        throw SimError("bad-log-file", "empty log CSV");
    auto header = csv_split(line);
    if (header.size() < 4 || header.front() != "peer" || header[1] != "sp" ||
        header.back() != "responder")
        throw SimError("bad-log-file", "unexpected header: " + line);
    std::size_t k = header.size() - 3;
    if (k_out) *k_out = k;

    std::vector<LogRecord> log;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto fields = csv_split(line);
        if (fields.size() != header.size())
            throw SimError("bad-log-file", "row arity mismatch: " + line);
        LogRecord rec;
        rec.peer_id = fields[0];
        rec.sp_id = fields[1];
        rec.components.assign(fields.begin() + 2, fields.end() - 1);
        rec.responder = fields.back();
        log.push_back(std::move(rec));
    }
    return log;
}

} // namespace sonsim
