#include "sonsim/query.hpp"

#include "sonsim/errors.hpp"

namespace sonsim {

std::vector<std::string> Query::active_components() const {
    std::vector<std::string> out;
    for (const auto &c : components)
        if (c != kNoneComponent) out.push_back(c);
    return out;
}

Query generate_query(const Peer &peer, std::size_t k, Rng &rng) {
    if (peer.expertise.empty())
        throw SimError("empty-expertise", peer.peer_id);
    if (k < 1) throw SimError("bad-query", "component count must be >= 1");

    Query q;
    q.origin_peer = peer.peer_id;
    q.origin_sp = peer.home_sp;
    const auto &triples = peer.expertise.triples();
    for (std::size_t idx : rng.sample_indices(triples.size(), k))
        q.components.push_back(triples[idx].canonical());
    while (q.components.size() < k) q.components.emplace_back(kNoneComponent);
    return q;
}

bool is_relevant(const Peer &peer, const Query &q, double fraction) {
    auto active = q.active_components();
    if (active.empty()) throw SimError("empty-query", q.query_id);
    std::size_t shared = 0;
    for (const auto &c : active)
        if (peer.expertise.contains_canonical(c)) ++shared;
    return static_cast<double>(shared) / static_cast<double>(active.size()) >= fraction;
}

} // namespace sonsim
