#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

namespace sonsim {

struct Query;

// Training view of a query log: one row per (query, responder) pair.
struct Dataset {
    std::vector<std::string> attribute_names; // componentW1..componentWK style
    struct Row {
        std::vector<std::string> values;
        std::string label;
    };
    std::vector<Row> rows;
};

using Histogram = std::map<std::string, int>;

struct TreeNode {
    // attribute < 0 means leaf
    int attribute = -1;
    std::map<std::string, std::unique_ptr<TreeNode>> children;
    std::unique_ptr<TreeNode> empty_child; // route for unseen values
    Histogram histogram;                   // class counts at leaves

    bool is_leaf() const { return attribute < 0; }
};

class DecisionTree {
public:
    DecisionTree() = default;
    DecisionTree(std::vector<std::string> attribute_names, std::unique_ptr<TreeNode> root)
        : attribute_names_(std::move(attribute_names)), root_(std::move(root)) {}

    const TreeNode *root() const { return root_.get(); }
    const std::vector<std::string> &attribute_names() const { return attribute_names_; }
    std::size_t arity() const { return attribute_names_.size(); }

private:
    std::vector<std::string> attribute_names_;
    std::unique_ptr<TreeNode> root_;
};

struct Prediction {
    // descending probability, then ascending class token; probabilities sum to 1
    std::vector<std::pair<std::string, double>> ranked;
    std::size_t nodes_visited = 0;

    double probability_of(const std::string &cls) const;
};

struct AccuracyReport {
    double top1_accuracy = 0.0;
    double candidate_hit_rate = 0.0;
    double candidate_mean_size = 0.0;
};

// Shannon entropy -sum p log2 p over nonzero classes.
double entropy(const Histogram &class_counts);

// C4.5 split criterion: information gain over split information for the given
// attribute; 0 when the attribute is single-valued on this data.
double gain_ratio(const Dataset &data, int attribute);

// Recursive gain-ratio induction. A node leafs out when the rows are pure, no
// unused attribute improves, or fewer than min_rows rows remain; otherwise it
// splits on the best unused attribute (ties to the lowest index) with one
// child per observed value plus an "empty" child holding the parent histogram.
DecisionTree induce(const Dataset &data, int min_rows = 1);

// Descend by component values (unseen value takes the empty child) and return
// the reached leaf's histogram normalized and ranked.
Prediction predict(const DecisionTree &tree, const std::vector<std::string> &components);
Prediction predict(const DecisionTree &tree, const Query &q);

// One line per node, '|' prefixes per depth, leaves annotated
// ": <class> (<n>.0/<m>.0)" with the misclassified count omitted when 0.
std::string render(const DecisionTree &tree);

// Inverse of render, up to the information the text carries; re-rendering a
// parsed tree reproduces the input byte for byte.
DecisionTree parse_tree(const std::string &text);

AccuracyReport evaluate(const DecisionTree &tree, const Dataset &holdout, double top_p);

} // namespace sonsim
