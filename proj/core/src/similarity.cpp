#include "sonsim/similarity.hpp"

#include <algorithm>

#include "sonsim/errors.hpp"

namespace sonsim {

double sim(const ExpertiseTriple &a, const ExpertiseTriple &b) {
    auto ta = token_bag(a); // sorted unique
    auto tb = token_bag(b);
    std::size_t inter = 0;
    std::size_t i = 0, j = 0;
    while (i < ta.size() && j < tb.size()) {
        if (ta[i] == tb[j]) {
            ++inter;
            ++i;
            ++j;
        } else if (ta[i] < tb[j]) {
            ++i;
        } else {
            ++j;
        }
    }
    std::size_t uni = ta.size() + tb.size() - inter;
    if (uni == 0) return 0.0;
    return static_cast<double>(inter) / static_cast<double>(uni);
}

std::vector<CorrespondenceEntry> map_schemas(const Expertise &s1, const Expertise &s2,
                                             double threshold) {
    std::vector<CorrespondenceEntry> out;
    for (const auto &t1 : s1.triples()) {
        const ExpertiseTriple *best = nullptr;
        double best_score = threshold; // strict: only scores > threshold qualify
        for (const auto &t2 : s2.triples()) {
            double s = sim(t1, t2);
            if (s > best_score ||
                (best && s == best_score && t2.canonical() < best->canonical())) {
                best = &t2;
                best_score = s;
            }
        }
        if (best) out.push_back({t1, *best, best_score});
    }
    return out;
}

double expertise_similarity(const Expertise &a, const Expertise &b) {
    if (a.empty() || b.empty()) return 0.0;
    auto directed = [](const Expertise &x, const Expertise &y) {
        double total = 0.0;
        for (const auto &tx : x.triples()) {
            double best = 0.0;
            for (const auto &ty : y.triples()) best = std::max(best, sim(tx, ty));
            total += best;
        }
        return total / static_cast<double>(x.size());
    };
    return (directed(a, b) + directed(b, a)) / 2.0;
}

} // namespace sonsim
