#include "sonsim/dtree.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <sstream>

#include "sonsim/errors.hpp"
#include "sonsim/query.hpp"

namespace sonsim {

namespace {

using RowIndex = std::vector<std::size_t>;

Histogram count_labels(const Dataset &data, const RowIndex &rows) {
    Histogram h;
    for (auto i : rows) h[data.rows[i].label]++;
    return h;
}

double entropy_of(const Histogram &h) {
    double total = 0.0;
    for (const auto &[cls, n] : h) total += n;
    double e = 0.0;
    for (const auto &[cls, n] : h) {
        if (n == 0) continue;
        double p = n / total;
        e -= p * std::log2(p);
    }
    return e;
}

struct SplitScore {
    double gain = 0.0;
    double ratio = 0.0;
};

SplitScore score_split(const Dataset &data, int attribute, const RowIndex &rows) {
    std::map<std::string, Histogram> partitions;
    for (auto i : rows) partitions[data.rows[i].values[attribute]][data.rows[i].label]++;
    if (partitions.size() < 2) return {0.0, 0.0};

    const double total = static_cast<double>(rows.size());
    double child_entropy = 0.0, split_info = 0.0;
    for (const auto &[value, hist] : partitions) {
        double n = 0.0;
        for (const auto &[cls, c] : hist) n += c;
        double w = n / total;
        child_entropy += w * entropy_of(hist);
        split_info -= w * std::log2(w);
    }
    double gain = entropy_of(count_labels(data, rows)) - child_entropy;
    if (split_info <= 0.0) return {gain, 0.0};
    return {gain, gain / split_info};
}

// majority class: highest count, ties to the ascending class token
std::pair<std::string, int> majority(const Histogram &h) {
    std::string cls;
    int best = -1;
    for (const auto &[c, n] : h) {
        if (n > best) {
            best = n;
            cls = c;
        }
    }
    return {cls, best};
}

constexpr double kTieEps = 1e-12;

std::unique_ptr<TreeNode> build(const Dataset &data, const RowIndex &rows,
                                std::vector<bool> &used, int min_rows) {
    auto node = std::make_unique<TreeNode>();
    Histogram hist = count_labels(data, rows);

    bool pure = hist.size() == 1;
    bool too_small = static_cast<int>(rows.size()) < min_rows;

    int best_attr = -1;
    double best_ratio = 0.0;
    double best_gain = 0.0;
    if (!pure && !too_small) {
        for (int a = 0; a < static_cast<int>(data.attribute_names.size()); ++a) {
            if (used[a]) continue;
            auto s = score_split(data, a, rows);
            if (s.ratio > best_ratio + kTieEps) {
                best_ratio = s.ratio;
                best_gain = s.gain;
                best_attr = a;
            }
        }
    }

    if (best_attr < 0) {
        node->histogram = std::move(hist);
        return node;
    }

    double parent_entropy = entropy_of(hist);
    assert(best_gain >= -kTieEps && best_gain <= parent_entropy + kTieEps);
    (void)parent_entropy;

    node->attribute = best_attr;
    std::map<std::string, RowIndex> partitions;
    for (auto i : rows) partitions[data.rows[i].values[best_attr]].push_back(i);

    used[best_attr] = true;
    for (auto &[value, sub] : partitions)
        node->children[value] = build(data, sub, used, min_rows);
    used[best_attr] = false;

    node->empty_child = std::make_unique<TreeNode>();
    node->empty_child->histogram = hist; // parent distribution for unseen values
    return node;
}

std::string count_text(int n) { return std::to_string(n) + ".0"; }

std::string leaf_suffix(const Histogram &h) {
    auto [cls, best] = majority(h);
    int total = 0;
    for (const auto &[c, n] : h) total += n;
    int mis = total - best;
    std::string s = ": " + cls + " (" + count_text(total);
    if (mis > 0) s += "/" + count_text(mis);
    return s + ")";
}

void render_node(const DecisionTree &tree, const TreeNode &node, int depth,
                 std::ostringstream &out) {
    std::string prefix;
    for (int i = 0; i < depth; ++i) prefix += "| ";
    for (const auto &[value, child] : node.children) {
        out << prefix << tree.attribute_names()[node.attribute] << " = " << value;
        if (child->is_leaf()) {
            out << leaf_suffix(child->histogram) << "\n";
        } else {
            out << "\n";
            render_node(tree, *child, depth + 1, out);
        }
    }
}

} // namespace

double Prediction::probability_of(const std::string &cls) const {
    for (const auto &[c, p] : ranked)
        if (c == cls) return p;
    return 0.0;
}

double entropy(const Histogram &class_counts) {
    int total = 0;
    for (const auto &[cls, n] : class_counts) total += n;
    if (total < 1) throw SimError("empty-data", "entropy of an empty histogram");
    return entropy_of(class_counts);
}

double gain_ratio(const Dataset &data, int attribute) {
    if (data.rows.empty()) throw SimError("empty-data", "gain ratio on empty dataset");
    if (attribute < 0 || attribute >= static_cast<int>(data.attribute_names.size()))
        throw SimError("bad-attribute", std::to_string(attribute));
    RowIndex rows(data.rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) rows[i] = i;
    return score_split(data, attribute, rows).ratio;
}

DecisionTree induce(const Dataset &data, int min_rows) {
    if (data.rows.empty()) throw SimError("empty-data", "cannot induce from zero rows");
    if (min_rows < 1) throw SimError("empty-data", "min_rows must be >= 1");
    for (const auto &row : data.rows)
        if (row.values.size() != data.attribute_names.size())
            throw SimError("bad-attribute", "row arity mismatch");
    RowIndex rows(data.rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) rows[i] = i;
    std::vector<bool> used(data.attribute_names.size(), false);
    return DecisionTree(data.attribute_names, build(data, rows, used, min_rows));
}

Prediction predict(const DecisionTree &tree, const std::vector<std::string> &components) {
    if (components.size() != tree.arity())
        throw SimError("bad-query", "component count does not match tree arity");
    Prediction pred;
    const TreeNode *node = tree.root();
    pred.nodes_visited = 1;
    while (!node->is_leaf()) {
        auto it = node->children.find(components[node->attribute]);
        node = it != node->children.end() ? it->second.get() : node->empty_child.get();
        pred.nodes_visited++;
    }
    double total = 0.0;
    for (const auto &[cls, n] : node->histogram) total += n;
    for (const auto &[cls, n] : node->histogram)
        pred.ranked.emplace_back(cls, n / total);
    std::stable_sort(pred.ranked.begin(), pred.ranked.end(),
                     [](const auto &a, const auto &b) {
                         if (a.second != b.second) return a.second > b.second;
                         return a.first < b.first;
                     });
    return pred;
}

Prediction predict(const DecisionTree &tree, const Query &q) {
    return predict(tree, q.components);
}

std::string render(const DecisionTree &tree) {
    std::ostringstream out;
    if (tree.root()->is_leaf()) {
        out << leaf_suffix(tree.root()->histogram) << "\n";
        return out.str();
    }
    render_node(tree, *tree.root(), 0, out);
    return out.str();
}

namespace {

// Leaf histogram consistent with "(n/m)": the labeled class gets n-m and the
// remaining m is spread over placeholder classes, none exceeding the majority.
Histogram synth_histogram(const std::string &label, int total, int mis) {
    if (mis >= total || total < 1)
        throw SimError("bad-tree-text", "leaf counts out of range");
    Histogram h;
    int maj = total - mis;
    h[label] = maj;
    int k = 1;
    while (mis > 0) {
        int chunk = std::min(mis, maj);
        h["~other" + std::to_string(k++)] = chunk;
        mis -= chunk;
    }
    return h;
}

int parse_count(const std::string &s) {
    double v = std::stod(s);
    return static_cast<int>(v + 0.5);
}

struct LeafAnnotation {
    std::string label;
    int total = 0;
    int mis = 0;
};

LeafAnnotation parse_annotation(const std::string &s) {
    // "<label> (<n>.0[/<m>.0])"
    auto open = s.find(" (");
    if (open == std::string::npos || s.back() != ')')
        throw SimError("bad-tree-text", "malformed leaf annotation: " + s);
    LeafAnnotation a;
    a.label = s.substr(0, open);
    std::string nums = s.substr(open + 2, s.size() - open - 3);
    auto slash = nums.find('/');
    if (slash == std::string::npos) {
        a.total = parse_count(nums);
    } else {
        a.total = parse_count(nums.substr(0, slash));
        a.mis = parse_count(nums.substr(slash + 1));
    }
    return a;
}

} // namespace

DecisionTree parse_tree(const std::string &text) {
    std::vector<std::string> names;
    auto attr_index = [&](const std::string &name) {
        for (std::size_t i = 0; i < names.size(); ++i)
            if (names[i] == name) return static_cast<int>(i);
        names.push_back(name);
        return static_cast<int>(names.size() - 1);
    };

    auto root = std::make_unique<TreeNode>();
    std::vector<TreeNode *> path{root.get()};

    std::istringstream in(text);
    std::string line;
    bool any = false;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        any = true;
        if (line.rfind(": ", 0) == 0) {
            // bare root leaf
            auto a = parse_annotation(line.substr(2));
            root->histogram = synth_histogram(a.label, a.total, a.mis);
            return DecisionTree({}, std::move(root));
        }
        int depth = 0;
        std::size_t pos = 0;
        while (line.compare(pos, 2, "| ") == 0) {
            depth++;
            pos += 2;
        }
        if (depth >= static_cast<int>(path.size()))
            throw SimError("bad-tree-text", "orphan depth in line: " + line);
        std::string content = line.substr(pos);
        auto eq = content.find(" = ");
        if (eq == std::string::npos)
            throw SimError("bad-tree-text", "missing ' = ' in line: " + line);
        std::string attr = content.substr(0, eq);
        std::string rest = content.substr(eq + 3);

        TreeNode *parent = path[depth];
        int idx = attr_index(attr);
        if (parent->attribute < 0)
            parent->attribute = idx;
        else if (parent->attribute != idx)
            throw SimError("bad-tree-text", "conflicting split attribute at: " + line);

        auto colon = rest.find(": ");
        auto child = std::make_unique<TreeNode>();
        std::string value;
        if (colon == std::string::npos) {
            value = rest;
        } else {
            value = rest.substr(0, colon);
            auto a = parse_annotation(rest.substr(colon + 2));
            child->histogram = synth_histogram(a.label, a.total, a.mis);
        }
        TreeNode *raw = child.get();
        parent->children[value] = std::move(child);
        path.resize(depth + 1);
        path.push_back(raw);
    }
    if (!any) throw SimError("bad-tree-text", "empty tree text");
    return DecisionTree(std::move(names), std::move(root));
}

AccuracyReport evaluate(const DecisionTree &tree, const Dataset &holdout, double top_p) {
    if (holdout.rows.empty()) throw SimError("empty-data", "empty holdout");
    AccuracyReport rep;
    double candidates_total = 0.0;
    for (const auto &row : holdout.rows) {
        auto pred = predict(tree, row.values);
        if (!pred.ranked.empty() && pred.ranked.front().first == row.label)
            rep.top1_accuracy += 1.0;
        bool hit = false;
        int candidates = 0;
        for (const auto &[cls, p] : pred.ranked) {
            if (p >= top_p) {
                candidates++;
                if (cls == row.label) hit = true;
            }
        }
        if (hit) rep.candidate_hit_rate += 1.0;
        candidates_total += candidates;
    }
    double n = static_cast<double>(holdout.rows.size());
    rep.top1_accuracy /= n;
    rep.candidate_hit_rate /= n;
    rep.candidate_mean_size = candidates_total / n;
    return rep;
}

} // namespace sonsim
