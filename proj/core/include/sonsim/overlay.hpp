#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "sonsim/expertise.hpp"
#include "sonsim/similarity.hpp"

namespace sonsim {

class DecisionTree; // dtree.hpp

struct Theme {
    std::string theme_id;
    Expertise description;
};

// What a joining peer sends to the network. TTL is recorded but never
// consumed anywhere downstream.
struct DomainAdvertisement {
    std::string pid;
    Expertise expertise;
    std::string topic;
    double eps_acc = 0.5;
    int ttl = 0;
};

struct Peer {
    std::string peer_id;
    Expertise expertise;
    std::string home_sp;
    DomainAdvertisement advertisement; // kept for reattachment on SP departure
    bool unmapped = false;             // attached without any entry above eps_acc
};

struct SuperPeer {
    std::string sp_id;
    Theme theme;
    std::set<std::string> member_peers;
    // MSP/P: one row per member peer (possibly empty when the peer is unmapped)
    std::map<std::string, std::vector<CorrespondenceEntry>> msp_p;
    // MSP/SP: correspondences to neighbor SPs, mirrored on both sides
    std::map<std::string, std::vector<CorrespondenceEntry>> msp_sp;
    std::string ssp_id;
};

struct LogRecord {
    std::string peer_id;
    std::string sp_id;
    std::vector<std::string> components;
    std::string responder; // SP id in-group, foreign SSP id otherwise
};

struct SSPGroup {
    std::string ssp_id;
    std::set<std::string> member_sps;
    std::shared_ptr<const DecisionTree> index; // absent until induced
    std::vector<LogRecord> log;
};

struct OverlayState {
    std::map<std::string, Peer> peers;
    std::map<std::string, SuperPeer> super_peers;
    std::map<std::string, SSPGroup> ssp_groups;
    std::set<std::pair<std::string, std::string>> links; // normalized a < b
    std::map<std::pair<std::string, std::string>, int> trust_counts; // a < b

    const SuperPeer &sp(const std::string &id) const;
    SuperPeer &sp(const std::string &id);
    const Peer &peer(const std::string &id) const;
};

struct JoinReport {
    std::string sp_id;
    std::vector<CorrespondenceEntry> entries;
    bool unmapped = false;
};

struct ReattachmentReport {
    std::string removed_sp;
    std::string target_sp; // max-trust survivor
    std::vector<std::string> reattached_peers;
};

// Attach a new peer per its advertisement: among SPs with at least one
// correspondence entry above ad.eps_acc, the one with the highest aggregate
// theme similarity wins; with no such SP the peer goes to the globally most
// similar SP with an empty row, flagged unmapped. Ties break by ascending id.
JoinReport join_peer(OverlayState &state, const DomainAdvertisement &ad);

// Build inter-SP correspondences, links and trust for every SP pair whose
// theme descriptions map at eps_acc. Idempotent.
void build_inter_sp_links(OverlayState &state, double eps_acc);

// Greedy agglomeration over ascending SP id: join the first existing group
// whose seed's theme similarity >= group_threshold, else found a new group.
// Rebuilds state.ssp_groups; the partition laws hold by construction.
void group_super_peers(OverlayState &state, double group_threshold);

// Number of correspondence entries between a and b; symmetric.
int trust(const OverlayState &state, const std::string &a, const std::string &b);

// Remove an SP and re-join each orphaned peer (reusing its original
// advertisement) to the surviving SP with maximal trust to the departed one,
// ties to the ascending id.
ReattachmentReport remove_super_peer(OverlayState &state, const std::string &sp_id);

// Line-oriented topology snapshot (PEER/SP/LINK/TRUST records), stable order.
std::string export_snapshot(const OverlayState &state);

std::string derive_ssp_id(const std::string &sp_id);

} // namespace sonsim
