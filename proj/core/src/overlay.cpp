#include "sonsim/overlay.hpp"

#include <algorithm>
#include <sstream>

#include "sonsim/errors.hpp"

namespace sonsim {

namespace {

std::pair<std::string, std::string> ordered(const std::string &a, const std::string &b) {
    return a < b ? std::make_pair(a, b) : std::make_pair(b, a);
}

} // namespace

const SuperPeer &OverlayState::sp(const std::string &id) const {
    auto it = super_peers.find(id);
    if (it == super_peers.end()) throw SimError("unknown-super-peer", id);
    return it->second;
}

SuperPeer &OverlayState::sp(const std::string &id) {
    auto it = super_peers.find(id);
    if (it == super_peers.end()) throw SimError("unknown-super-peer", id);
    return it->second;
}

const Peer &OverlayState::peer(const std::string &id) const {
    auto it = peers.find(id);
    if (it == peers.end()) throw SimError("unknown-peer", id);
    return it->second;
}

JoinReport join_peer(OverlayState &state, const DomainAdvertisement &ad) {
    if (state.super_peers.empty())
        throw SimError("no-super-peer", "cannot join an empty network");
    if (ad.expertise.empty())
        throw SimError("invalid-triple", "advertisement carries empty expertise");
    if (state.peers.count(ad.pid))
        throw SimError("peer-exists", ad.pid);

    // one pass: remember both the best mapped SP and the global best
    std::string best_mapped, best_global;
    double best_mapped_sim = -1.0, best_global_sim = -1.0;
    std::map<std::string, std::vector<CorrespondenceEntry>> entries_by_sp;
    for (const auto &[id, sp] : state.super_peers) {
        double agg = expertise_similarity(ad.expertise, sp.theme.description);
        auto entries = map_schemas(ad.expertise, sp.theme.description, ad.eps_acc);
        if (agg > best_global_sim) {
            best_global_sim = agg;
            best_global = id;
        }
        if (!entries.empty() && agg > best_mapped_sim) {
            best_mapped_sim = agg;
            best_mapped = id;
            entries_by_sp[id] = std::move(entries);
        }
    }

    JoinReport report;
    if (!best_mapped.empty()) {
        report.sp_id = best_mapped;
        report.entries = entries_by_sp[best_mapped];
    } else {
        report.sp_id = best_global;
        report.unmapped = true;
    }

    Peer p;
    p.peer_id = ad.pid;
    p.expertise = ad.expertise;
    p.home_sp = report.sp_id;
    p.advertisement = ad;
    p.unmapped = report.unmapped;
    state.peers.emplace(ad.pid, std::move(p));

    SuperPeer &sp = state.sp(report.sp_id);
    sp.member_peers.insert(ad.pid);
    sp.msp_p[ad.pid] = report.entries;
    state.links.insert(ordered(ad.pid, report.sp_id));
    return report;
}

void build_inter_sp_links(OverlayState &state, double eps_acc) {
    for (auto it = state.super_peers.begin(); it != state.super_peers.end(); ++it) {
        for (auto jt = std::next(it); jt != state.super_peers.end(); ++jt) {
            auto entries = map_schemas(it->second.theme.description,
                                       jt->second.theme.description, eps_acc);
            if (entries.empty()) continue;
            it->second.msp_sp[jt->first] = entries;
            jt->second.msp_sp[it->first] = entries;
            state.links.insert(ordered(it->first, jt->first));
            state.trust_counts[ordered(it->first, jt->first)] =
                static_cast<int>(entries.size());
        }
    }
}

std::string derive_ssp_id(const std::string &sp_id) {
    if (sp_id.rfind("SP", 0) == 0) return "SSP" + sp_id.substr(2);
    return "SSP_" + sp_id;
}

void group_super_peers(OverlayState &state, double group_threshold) {
    if (state.super_peers.empty())
        throw SimError("no-super-peer", "nothing to group");
    state.ssp_groups.clear();
    struct Seed {
        std::string ssp_id;
        std::string seed_sp;
    };
    std::vector<Seed> seeds; // creation order
    for (auto &[id, sp] : state.super_peers) {
        std::string chosen;
        for (const auto &seed : seeds) {
            double s = expertise_similarity(sp.theme.description,
                                            state.sp(seed.seed_sp).theme.description);
            if (s >= group_threshold) {
                chosen = seed.ssp_id;
                break;
            }
        }
        if (chosen.empty()) {
            chosen = derive_ssp_id(id);
            seeds.push_back({chosen, id});
            state.ssp_groups[chosen].ssp_id = chosen;
        }
        state.ssp_groups[chosen].member_sps.insert(id);
        sp.ssp_id = chosen;
    }
}

int trust(const OverlayState &state, const std::string &a, const std::string &b) {
    state.sp(a);
    state.sp(b);
    auto it = state.trust_counts.find(ordered(a, b));
    return it == state.trust_counts.end() ? 0 : it->second;
}

ReattachmentReport remove_super_peer(OverlayState &state, const std::string &sp_id) {
    const SuperPeer &departing = state.sp(sp_id);
    if (state.super_peers.size() < 2)
        throw SimError("cannot-orphan-network", "refusing to remove the last super-peer");

    ReattachmentReport report;
    report.removed_sp = sp_id;

    // max-trust survivor, ties to ascending id (map order gives that for free)
    int best_trust = -1;
    for (const auto &[id, sp] : state.super_peers) {
        if (id == sp_id) continue;
        int t = trust(state, sp_id, id);
        if (t > best_trust) {
            best_trust = t;
            report.target_sp = id;
        }
    }

    std::vector<std::string> orphans(departing.member_peers.begin(),
                                     departing.member_peers.end());
    std::vector<DomainAdvertisement> ads;
    for (const auto &pid : orphans) ads.push_back(state.peer(pid).advertisement);

    // tear the SP out of the topology
    const std::string group_id = departing.ssp_id;
    state.super_peers.erase(sp_id);
    for (auto &[id, sp] : state.super_peers) sp.msp_sp.erase(sp_id);
    for (auto it = state.links.begin(); it != state.links.end();) {
        if (it->first == sp_id || it->second == sp_id)
            it = state.links.erase(it);
        else
            ++it;
    }
    for (auto it = state.trust_counts.begin(); it != state.trust_counts.end();) {
        if (it->first.first == sp_id || it->first.second == sp_id)
            it = state.trust_counts.erase(it);
        else
            ++it;
    }
    if (auto git = state.ssp_groups.find(group_id); git != state.ssp_groups.end()) {
        git->second.member_sps.erase(sp_id);
        if (git->second.member_sps.empty()) state.ssp_groups.erase(git);
    }
    for (const auto &pid : orphans) state.peers.erase(pid);

    // re-join each orphan against the forced target, reusing its advertisement
    SuperPeer &target = state.sp(report.target_sp);
    for (const auto &ad : ads) {
        auto entries = map_schemas(ad.expertise, target.theme.description, ad.eps_acc);
        Peer p;
        p.peer_id = ad.pid;
        p.expertise = ad.expertise;
        p.home_sp = report.target_sp;
        p.advertisement = ad;
        p.unmapped = entries.empty();
        state.peers.emplace(ad.pid, std::move(p));
        target.member_peers.insert(ad.pid);
        target.msp_p[ad.pid] = std::move(entries);
        state.links.insert(ordered(ad.pid, report.target_sp));
        report.reattached_peers.push_back(ad.pid);
    }
    return report;
}

std::string export_snapshot(const OverlayState &state) {
    std::ostringstream out;
    for (const auto &[id, p] : state.peers)
        out << "PEER " << id << " " << p.home_sp << " " << p.expertise.to_text() << "\n";
    for (const auto &[id, sp] : state.super_peers)
        out << "SP " << id << " " << sp.ssp_id << " " << sp.theme.description.to_text()
            << "\n";
    for (const auto &[a, b] : state.links) out << "LINK " << a << " " << b << "\n";
    for (const auto &[pair, n] : state.trust_counts)
        out << "TRUST " << pair.first << " " << pair.second << " " << n << "\n";
    return out.str();
}

} // namespace sonsim
