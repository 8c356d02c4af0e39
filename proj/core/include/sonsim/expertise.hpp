#pragma once

#include <set>
#include <string>
#include <vector>

namespace sonsim {

// One relation instance theta(source;target). The relation token is either
// the reserved "IsA" or a role name. Canonical text form: relation(source;target).
struct ExpertiseTriple {
    std::string relation;
    std::string source;
    std::string target;

    std::string canonical() const;
    static ExpertiseTriple parse(const std::string &text);

    auto operator<=>(const ExpertiseTriple &) const = default;
};

// A peer's (or theme's) published schema fragment: a non-empty duplicate-free
// set of triples. Kept sorted by canonical form for deterministic iteration.
class Expertise {
public:
    Expertise() = default;
    explicit Expertise(std::vector<ExpertiseTriple> triples);

    const std::vector<ExpertiseTriple> &triples() const { return triples_; }
    bool empty() const { return triples_.empty(); }
    std::size_t size() const { return triples_.size(); }

    bool contains(const ExpertiseTriple &t) const;
    bool contains_canonical(const std::string &canonical_form) const;
    void add(const ExpertiseTriple &t);

    // ;-joined canonical forms, sorted
    std::string to_text() const;
    static Expertise from_text(const std::string &text);

    bool operator==(const Expertise &) const = default;

private:
    std::vector<ExpertiseTriple> triples_; // sorted, unique
    std::set<std::string> canon_;
};

// Lowercased word tokens of a triple: the relation as one token plus the
// camelCase/underscore/digit-boundary-split words of source and target.
std::vector<std::string> token_bag(const ExpertiseTriple &t);

// splitting helper exposed for tests
std::vector<std::string> split_words(const std::string &name);

} // namespace sonsim
