#include "sonsim/expertise.hpp"

#include <algorithm>
#include <cctype>

#include "sonsim/errors.hpp"

namespace sonsim {

namespace {

bool valid_token(const std::string &s) {
    if (s.empty()) return false;
    for (char c : s) {
        if (c == '(' || c == ')' || c == ';' || std::isspace(static_cast<unsigned char>(c)))
            return false;
    }
    return true;
}

} // namespace

std::string ExpertiseTriple::canonical() const {
    return relation + "(" + source + ";" + target + ")";
}

ExpertiseTriple ExpertiseTriple::parse(const std::string &text) {
    auto open = text.find('(');
    if (open == std::string::npos || text.empty() || text.back() != ')')
        throw SimError("invalid-triple", "expected relation(source;target): " + text);
    std::string rel = text.substr(0, open);
    std::string inner = text.substr(open + 1, text.size() - open - 2);
    auto semi = inner.find(';');
    if (semi == std::string::npos)
        throw SimError("invalid-triple", "missing ';' in: " + text);
    ExpertiseTriple t{rel, inner.substr(0, semi), inner.substr(semi + 1)};
    if (!valid_token(t.relation) || !valid_token(t.source) || !valid_token(t.target))
        throw SimError("invalid-triple", "empty or malformed token in: " + text);
    return t;
}

Expertise::Expertise(std::vector<ExpertiseTriple> triples) {
    for (const auto &t : triples) add(t);
}

void Expertise::add(const ExpertiseTriple &t) {
    if (!valid_token(t.relation) || !valid_token(t.source) || !valid_token(t.target))
        throw SimError("invalid-triple", "malformed triple: " + t.canonical());
    if (!canon_.insert(t.canonical()).second) return; // duplicate
    auto pos = std::lower_bound(triples_.begin(), triples_.end(), t,
                                [](const ExpertiseTriple &a, const ExpertiseTriple &b) {
                                    return a.canonical() < b.canonical();
                                });
    triples_.insert(pos, t);
}

bool Expertise::contains(const ExpertiseTriple &t) const {
    return canon_.count(t.canonical()) > 0;
}

bool Expertise::contains_canonical(const std::string &canonical_form) const {
    return canon_.count(canonical_form) > 0;
}

std::string Expertise::to_text() const {
    std::string out;
    for (const auto &t : triples_) {
        if (!out.empty()) out += ";";
        out += t.canonical();
    }
    return out;
}

Expertise Expertise::from_text(const std::string &text) {
    // triples themselves contain ';' inside parens, so split at depth 0 only
    Expertise e;
    std::string cur;
    int depth = 0;
    for (char c : text) {
        if (c == '(') depth++;
        if (c == ')') depth--;
        if (c == ';' && depth == 0) {
            if (!cur.empty()) e.add(ExpertiseTriple::parse(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) e.add(ExpertiseTriple::parse(cur));
    return e;
}

std::vector<std::string> split_words(const std::string &name) {
    std::vector<std::string> words;
    std::string cur;
    auto flush = [&] {
        if (!cur.empty()) {
            words.push_back(cur);
            cur.clear();
        }
    };
    for (std::size_t i = 0; i < name.size(); ++i) {
        unsigned char c = static_cast<unsigned char>(name[i]);
        if (c == '_' || std::isdigit(c)) {
            flush();
            continue;
        }
        if (std::isupper(c) && !cur.empty()) flush();
        cur += static_cast<char>(std::tolower(c));
    }
    flush();
    return words;
}

std::vector<std::string> token_bag(const ExpertiseTriple &t) {
    std::vector<std::string> bag;
    std::string rel;
    for (char c : t.relation) rel += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    bag.push_back(rel);
    for (const auto &w : split_words(t.source)) bag.push_back(w);
    for (const auto &w : split_words(t.target)) bag.push_back(w);
    std::sort(bag.begin(), bag.end());
    bag.erase(std::unique(bag.begin(), bag.end()), bag.end());
    return bag;
}

} // namespace sonsim
