#pragma once

#include <vector>

#include "sonsim/expertise.hpp"

namespace sonsim {

// One accepted schema correspondence: left mapped to right with Sim score
// strictly above the threshold under which it was created.
struct CorrespondenceEntry {
    ExpertiseTriple left_entity;
    ExpertiseTriple right_entity;
    double score = 0.0;

    bool operator==(const CorrespondenceEntry &) const = default;
};

// Entity similarity in [0,1]: Jaccard overlap of the two triples' token bags.
// Symmetric; identical triples score 1, token-disjoint triples score 0.
double sim(const ExpertiseTriple &a, const ExpertiseTriple &b);

// For each triple of s1, the best-scoring triple of s2 strictly above
// threshold (at most one entry per s1 triple). Best-score ties break by
// canonical-form lexicographic order of the s2 triple.
std::vector<CorrespondenceEntry> map_schemas(const Expertise &s1, const Expertise &s2,
                                             double threshold);

// Scalar similarity between two expertises in [0,1]: symmetrized mean
// best-match score. 1 for identical sets. Used for SP selection on join and
// for SSP grouping.
double expertise_similarity(const Expertise &a, const Expertise &b);

} // namespace sonsim
