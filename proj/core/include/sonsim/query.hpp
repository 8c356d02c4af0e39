#pragma once

#include <string>
#include <vector>

#include "sonsim/overlay.hpp"
#include "sonsim/rng.hpp"

namespace sonsim {

inline constexpr const char *kNoneComponent = "none";

// A peer's query: a fixed-arity tuple of component tokens, each the canonical
// form of a triple from the origin peer's expertise, padded with "none".
struct Query {
    std::string query_id;
    std::string origin_peer;
    std::string origin_sp;
    std::vector<std::string> components;

    std::vector<std::string> active_components() const; // non-"none" only
};

// min(k, |expertise|) distinct triples drawn uniformly without replacement,
// canonicalized, padded to k with "none". Deterministic under a fixed rng.
Query generate_query(const Peer &peer, std::size_t k, Rng &rng);

// True iff at least `fraction` of the query's non-"none" components appear
// verbatim in the peer's expertise.
bool is_relevant(const Peer &peer, const Query &q, double fraction);

} // namespace sonsim
