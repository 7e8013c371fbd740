#include "treelike/newick.hpp"

#include <algorithm>
#include <cctype>
#include <optional>
#include <stdexcept>

namespace treelike {

namespace {

struct ParseNode {
    int label = 0;  // 0 for unlabeled groups
    std::optional<Rat> length;
    std::vector<ParseNode> children;
};

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    ParseNode parse() {
        ParseNode root = parse_node();
        skip_space();
        if (pos_ >= text_.size() || text_[pos_] != ';')
            throw std::invalid_argument("newick: missing trailing ';'");
        ++pos_;
        skip_space();
        if (pos_ != text_.size()) throw std::invalid_argument("newick: trailing characters");
        return root;
    }

private:
    std::string_view text_;
    size_t pos_ = 0;

    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    char peek() {
        skip_space();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    ParseNode parse_node() {
        ParseNode node;
        if (peek() == '(') {
            ++pos_;
            node.children.push_back(parse_node());
            while (peek() == ',') {
                ++pos_;
                node.children.push_back(parse_node());
            }
            if (peek() != ')') throw std::invalid_argument("newick: expected ')'");
            ++pos_;
            if (std::isdigit(static_cast<unsigned char>(peek()))) node.label = parse_label();
        } else {
            node.label = parse_label();
        }
        if (peek() == ':') {
            ++pos_;
            node.length = parse_length();
        }
        return node;
    }

    int parse_label() {
        skip_space();
        size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (start == pos_) throw std::invalid_argument("newick: expected a leaf label");
        int label = 0;
        for (size_t i = start; i < pos_; ++i) {
            label = label * 10 + (text_[i] - '0');
            if (label > kMaxLabels) throw std::invalid_argument("newick: leaf label too large");
        }
        if (label == 0) throw std::invalid_argument("newick: leaf labels start at 1");
        return label;
    }

    Rat parse_length() {
        skip_space();
        size_t start = pos_;
        while (pos_ < text_.size() && text_[pos_] != ',' && text_[pos_] != ')' && text_[pos_] != ';')
            ++pos_;
        if (start == pos_) throw std::invalid_argument("newick: empty branch length");
        return rat_from_string(text_.substr(start, pos_ - start));
    }
};

void build(const ParseNode& node, WeightedTree& tree, int vertex) {
    for (const ParseNode& child : node.children) {
        if (!child.length)
            throw std::invalid_argument("newick: missing branch length on a non-root edge");
        const int child_vertex = tree.topo.add_vertex(child.label);
        tree.topo.add_edge(vertex, child_vertex);
        tree.weights.push_back(*child.length);
        build(child, tree, child_vertex);
    }
}

WeightedTree suppress_vertex(const WeightedTree& tree, int target) {
    int nbr[2] = {-1, -1}, via[2] = {-1, -1}, found = 0;
    for (int e = 0; e < static_cast<int>(tree.topo.edges.size()); ++e) {
        for (int end : {0, 1}) {
            if (tree.topo.edges[e][end] == target) {
                nbr[found] = tree.topo.edges[e][1 - end];
                via[found] = e;
                ++found;
            }
        }
    }
    WeightedTree next;
    std::vector<int> vertex_map(tree.topo.vertex_count, -1);
    for (int v = 0; v < tree.topo.vertex_count; ++v) {
        if (v == target) continue;
        vertex_map[v] = next.topo.add_vertex(tree.topo.leaf_label[v]);
    }
    for (int e = 0; e < static_cast<int>(tree.topo.edges.size()); ++e) {
        if (e == via[0] || e == via[1]) continue;
        next.topo.add_edge(vertex_map[tree.topo.edges[e][0]], vertex_map[tree.topo.edges[e][1]]);
        next.weights.push_back(tree.weights[e]);
    }
    next.topo.add_edge(vertex_map[nbr[0]], vertex_map[nbr[1]]);
    next.weights.push_back(tree.weights[via[0]] + tree.weights[via[1]]);
    return next;
}

}  // namespace

WeightedTree parse_newick(std::string_view text) {
    const ParseNode root = Parser(text).parse();
    WeightedTree tree;
    const int root_vertex = tree.topo.add_vertex(root.label);
    build(root, tree, root_vertex);

    // forget the rooting: a degree-2 unlabeled root is suppressed
    const auto deg = tree.topo.degrees();
    if (tree.topo.vertex_count >= 3 && deg[root_vertex] == 2 &&
        tree.topo.leaf_label[root_vertex] == 0) {
        tree = suppress_vertex(tree, root_vertex);
    }

    if (!tree.topo.valid())
        throw std::invalid_argument("newick: not a valid leaf-labeled tree (check labels)");
    if (!tree.topo.labels_contiguous())
        throw std::invalid_argument("newick: leaf labels must be exactly 1..n");
    return tree;
}

namespace {

struct RenderNode {
    int min_label;
    std::string text;
};

RenderNode render(const WeightedTree& tree,
                  const std::vector<std::vector<std::array<int, 2>>>& adj, int v, int parent_edge,
                  int parent) {
    const Topology& topo = tree.topo;
    if (topo.leaf_label[v] != 0) {
        return {topo.leaf_label[v],
                std::to_string(topo.leaf_label[v]) + ":" + rat_to_string(tree.weights[parent_edge])};
    }
    std::vector<RenderNode> children;
    for (const auto& [to, e] : adj[v])
        if (to != parent) children.push_back(render(tree, adj, to, e, v));
    std::sort(children.begin(), children.end(),
              [](const RenderNode& x, const RenderNode& y) { return x.min_label < y.min_label; });
    std::string text = "(";
    int min_label = kMaxLabels + 1;
    for (size_t i = 0; i < children.size(); ++i) {
        if (i) text += ",";
        text += children[i].text;
        min_label = std::min(min_label, children[i].min_label);
    }
    text += ")";
    if (parent >= 0) text += ":" + rat_to_string(tree.weights[parent_edge]);
    return {min_label, text};
}

}  // namespace

std::string to_newick(const WeightedTree& tree) {
    const Topology& topo = tree.topo;
    const auto labels = topo.labels_sorted();
    if (labels.empty()) throw std::invalid_argument("to_newick: tree has no leaves");
    const int first_leaf = topo.vertex_of_label(labels.front());
    const auto adj = topo.adjacency();
    if (adj[first_leaf].empty()) throw std::invalid_argument("to_newick: isolated leaf");
    const int root = adj[first_leaf][0][0];

    std::vector<RenderNode> children;
    for (const auto& [to, e] : adj[root]) children.push_back(render(tree, adj, to, e, root));
    std::sort(children.begin(), children.end(),
              [](const RenderNode& x, const RenderNode& y) { return x.min_label < y.min_label; });
    std::string text = "(";
    for (size_t i = 0; i < children.size(); ++i) {
        if (i) text += ",";
        text += children[i].text;
    }
    text += ")";
    if (topo.leaf_label[root] != 0) text += std::to_string(topo.leaf_label[root]);
    return text + ";";
}

bool same_weighted_tree(const WeightedTree& a, const WeightedTree& b) {
    return to_newick(a) == to_newick(b);
}

}  // namespace treelike
