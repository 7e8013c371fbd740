#include "treelike/tree.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace treelike {

int Topology::add_vertex(int label) {
    leaf_label.push_back(label);
    return vertex_count++;
}

int Topology::add_edge(int u, int v) {
    edges.push_back({u, v});
    return static_cast<int>(edges.size()) - 1;
}

int Topology::n_leaves() const {
    int n = 0;
    for (int label : leaf_label)
        if (label != 0) ++n;
    return n;
}

std::vector<int> Topology::labels_sorted() const {
    std::vector<int> labels;
    for (int label : leaf_label)
        if (label != 0) labels.push_back(label);
    std::sort(labels.begin(), labels.end());
    return labels;
}

LeafSet Topology::label_set() const {
    LeafSet set = 0;
    for (int label : leaf_label)
        if (label != 0) set |= leaf_bit(label);
    return set;
}

int Topology::vertex_of_label(int label) const {
    for (int v = 0; v < vertex_count; ++v)
        if (leaf_label[v] == label) return v;
    return -1;
}

std::vector<int> Topology::degrees() const {
    std::vector<int> deg(vertex_count, 0);
    for (const auto& e : edges) {
        ++deg[e[0]];
        ++deg[e[1]];
    }
    return deg;
}

std::vector<std::vector<std::array<int, 2>>> Topology::adjacency() const {
    std::vector<std::vector<std::array<int, 2>>> adj(vertex_count);
    for (int e = 0; e < static_cast<int>(edges.size()); ++e) {
        adj[edges[e][0]].push_back({edges[e][1], e});
        adj[edges[e][1]].push_back({edges[e][0], e});
    }
    return adj;
}

bool Topology::valid() const {
    if (vertex_count == 0) return false;
    if (static_cast<int>(edges.size()) != vertex_count - 1) return false;
    const auto adj = adjacency();
    // connectivity
    std::vector<bool> seen(vertex_count, false);
    std::vector<int> stack{0};
    seen[0] = true;
    int visited = 0;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        ++visited;
        for (const auto& [to, e] : adj[v]) {
            if (!seen[to]) {
                seen[to] = true;
                stack.push_back(to);
            }
        }
    }
    if (visited != vertex_count) return false;
    const auto deg = degrees();
    std::set<int> used;
    for (int v = 0; v < vertex_count; ++v) {
        if (deg[v] == 1) {
            if (leaf_label[v] <= 0) return false;
            if (!used.insert(leaf_label[v]).second) return false;
        } else if (leaf_label[v] != 0) {
            return false;
        }
    }
    return true;
}

bool Topology::labels_contiguous() const {
    if (!valid()) return false;
    const auto labels = labels_sorted();
    for (int i = 0; i < static_cast<int>(labels.size()); ++i)
        if (labels[i] != i + 1) return false;
    return true;
}

std::vector<LeafSet> edge_splits(const Topology& topo) {
    const auto adj = topo.adjacency();
    std::vector<LeafSet> below(topo.vertex_count, 0);
    std::vector<LeafSet> split(topo.edges.size(), 0);
    // iterative post-order from vertex 0
    std::vector<std::array<int, 2>> stack{{0, -1}};
    std::vector<std::array<int, 2>> order;
    while (!stack.empty()) {
        auto [v, parent] = stack.back();
        stack.pop_back();
        order.push_back({v, parent});
        for (const auto& [to, e] : adj[v])
            if (to != parent) stack.push_back({to, v});
    }
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        int v = (*it)[0], parent = (*it)[1];
        if (topo.leaf_label[v] != 0) below[v] |= leaf_bit(topo.leaf_label[v]);
        for (const auto& [to, e] : adj[v])
            if (to != parent) below[v] |= below[to];
    }
    const LeafSet universe = topo.label_set();
    // the side of edges[e][0]: if edges[e][0] is the deeper endpoint it is the
    // subtree below it, otherwise the complement
    std::vector<int> depth(topo.vertex_count, -1);
    for (const auto& [v, parent] : order) depth[v] = parent < 0 ? 0 : depth[parent] + 1;
    for (int e = 0; e < static_cast<int>(topo.edges.size()); ++e) {
        int u = topo.edges[e][0], v = topo.edges[e][1];
        int child = depth[u] > depth[v] ? u : v;
        LeafSet side = below[child];
        split[e] = (child == u) ? side : (universe & ~side);
    }
    return split;
}

std::vector<bool> twig_edge_flags(const Topology& topo) {
    const auto adj = topo.adjacency();
    const auto deg = topo.degrees();
    std::vector<bool> twig(topo.edges.size(), false);
    bool has_node = false;
    for (int d : deg)
        if (d >= 3) has_node = true;
    if (!has_node) {
        // a bare path: no internal edges at all
        return std::vector<bool>(topo.edges.size(), true);
    }
    for (int v = 0; v < topo.vertex_count; ++v) {
        if (deg[v] != 1) continue;
        int cur = v, prev = -1;
        while (deg[cur] <= 2) {
            int next = -1, via = -1;
            for (const auto& [to, e] : adj[cur]) {
                if (to != prev) {
                    next = to;
                    via = e;
                }
            }
            twig[via] = true;
            prev = cur;
            cur = next;
            if (deg[cur] >= 3) break;
        }
    }
    return twig;
}

int pendant_edge(const Topology& topo, int label) {
    const int v = topo.vertex_of_label(label);
    if (v < 0) throw std::invalid_argument("label not in tree");
    for (int e = 0; e < static_cast<int>(topo.edges.size()); ++e)
        if (topo.edges[e][0] == v || topo.edges[e][1] == v) return e;
    throw std::logic_error("isolated labeled vertex");
}

Rat twig_weight(const WeightedTree& tree, int label) {
    const int v = tree.topo.vertex_of_label(label);
    if (v < 0) throw std::invalid_argument("label not in tree");
    const auto adj = tree.topo.adjacency();
    const auto deg = tree.topo.degrees();
    bool has_node = false;
    for (int d : deg)
        if (d >= 3) has_node = true;
    if (!has_node) throw std::invalid_argument("twig undefined: tree has no vertex of degree >= 3");
    Rat total = 0;
    int cur = v, prev = -1;
    while (deg[cur] < 3) {
        int next = -1, via = -1;
        for (const auto& [to, e] : adj[cur]) {
            if (to != prev) {
                next = to;
                via = e;
            }
        }
        total += tree.weights[via];
        prev = cur;
        cur = next;
    }
    return total;
}

namespace {

LeafSet subset_mask_checked(const Topology& topo, const std::vector<int>& subset) {
    const LeafSet universe = topo.label_set();
    LeafSet mask = 0;
    for (int label : subset) {
        if (label < 1 || label > kMaxLabels || !contains(universe, label))
            throw std::invalid_argument("subset contains a non-leaf label");
        mask |= leaf_bit(label);
    }
    return mask;
}

}  // namespace

Rat k_weight(const WeightedTree& tree, const std::vector<int>& subset) {
    if (subset.size() < 2) throw std::invalid_argument("k_weight needs at least two labels");
    const LeafSet mask = subset_mask_checked(tree.topo, subset);
    const LeafSet universe = tree.topo.label_set();
    const auto splits = edge_splits(tree.topo);
    Rat total = 0;
    for (size_t e = 0; e < splits.size(); ++e) {
        const LeafSet side = splits[e];
        if ((side & mask) != 0 && ((universe & ~side) & mask) != 0) total += tree.weights[e];
    }
    return total;
}

Rat internal_restricted_weight(const WeightedTree& tree, const std::vector<int>& subset) {
    if (subset.size() < 2) throw std::invalid_argument("need at least two labels");
    const LeafSet mask = subset_mask_checked(tree.topo, subset);
    const LeafSet universe = tree.topo.label_set();
    const auto splits = edge_splits(tree.topo);
    const auto twig = twig_edge_flags(tree.topo);
    Rat total = 0;
    for (size_t e = 0; e < splits.size(); ++e) {
        if (twig[e]) continue;
        const LeafSet side = splits[e];
        if ((side & mask) != 0 && ((universe & ~side) & mask) != 0) total += tree.weights[e];
    }
    return total;
}

KDissimilarityFamily k_dissimilarity(const WeightedTree& tree, int k) {
    if (!tree.topo.labels_contiguous())
        throw std::invalid_argument("k_dissimilarity needs labels exactly 1..n");
    const int n = tree.topo.n_leaves();
    if (k < 2 || k > n - 1) throw std::invalid_argument("k out of range (2 <= k <= n-1)");
    const LeafSet universe = full_leaf_set(n);
    const auto splits = edge_splits(tree.topo);
    KDissimilarityFamily family(n, k);
    long long index = 0;
    for_each_subset(n, k, [&](const std::vector<int>& subset) {
        LeafSet mask = 0;
        for (int label : subset) mask |= leaf_bit(label);
        Rat total = 0;
        for (size_t e = 0; e < splits.size(); ++e) {
            const LeafSet side = splits[e];
            if ((side & mask) != 0 && ((universe & ~side) & mask) != 0) total += tree.weights[e];
        }
        family.values()[index++] = total;
    });
    return family;
}

WeightedTree restrict_tree(const WeightedTree& tree, const std::vector<int>& subset) {
    if (subset.size() < 2) throw std::invalid_argument("restriction needs at least two labels");
    const LeafSet mask = subset_mask_checked(tree.topo, subset);
    const LeafSet universe = tree.topo.label_set();
    const auto splits = edge_splits(tree.topo);
    std::vector<int> vertex_map(tree.topo.vertex_count, -1);
    WeightedTree result;
    for (size_t e = 0; e < splits.size(); ++e) {
        const LeafSet side = splits[e];
        if ((side & mask) == 0 || ((universe & ~side) & mask) == 0) continue;
        for (int end : {0, 1}) {
            int v = tree.topo.edges[e][end];
            if (vertex_map[v] < 0) {
                int label = tree.topo.leaf_label[v];
                vertex_map[v] = result.topo.add_vertex(contains(mask, label) ? label : 0);
            }
        }
        result.topo.add_edge(vertex_map[tree.topo.edges[e][0]], vertex_map[tree.topo.edges[e][1]]);
        result.weights.push_back(tree.weights[e]);
    }
    return result;
}

WeightedTree essentialize(const WeightedTree& tree) {
    WeightedTree current = tree;
    while (true) {
        const auto deg = current.topo.degrees();
        int target = -1;
        for (int v = 0; v < current.topo.vertex_count; ++v)
            if (deg[v] == 2) target = v;
        if (target < 0) return current;

        int nbr[2] = {-1, -1}, via[2] = {-1, -1}, found = 0;
        for (int e = 0; e < static_cast<int>(current.topo.edges.size()); ++e) {
            for (int end : {0, 1}) {
                if (current.topo.edges[e][end] == target) {
                    nbr[found] = current.topo.edges[e][1 - end];
                    via[found] = e;
                    ++found;
                }
            }
        }
        WeightedTree next;
        std::vector<int> vertex_map(current.topo.vertex_count, -1);
        for (int v = 0; v < current.topo.vertex_count; ++v) {
            if (v == target) continue;
            vertex_map[v] = next.topo.add_vertex(current.topo.leaf_label[v]);
        }
        for (int e = 0; e < static_cast<int>(current.topo.edges.size()); ++e) {
            if (e == via[0] || e == via[1]) continue;
            next.topo.add_edge(vertex_map[current.topo.edges[e][0]],
                               vertex_map[current.topo.edges[e][1]]);
            next.weights.push_back(current.weights[e]);
        }
        next.topo.add_edge(vertex_map[nbr[0]], vertex_map[nbr[1]]);
        next.weights.push_back(current.weights[via[0]] + current.weights[via[1]]);
        current = std::move(next);
    }
}

bool is_pseudostar(const Topology& topo, int k) {
    const int n = topo.n_leaves();
    if (k < 1 || k > n - 1) throw std::invalid_argument("pseudostar kind out of range");
    const auto splits = edge_splits(topo);
    for (const LeafSet side : splits) {
        const int s = popcount(side);
        if (std::max(s, n - s) < k) return false;
    }
    return true;
}

BunemanIndex quartet_topology(const Topology& topo, int a, int b, int c, int d) {
    const std::vector<int> quartet{a, b, c, d};
    const LeafSet mask = subset_mask_checked(topo, quartet);
    if (popcount(mask) != 4) throw std::invalid_argument("quartet labels must be distinct");
    const LeafSet universe = topo.label_set();
    const auto splits = edge_splits(topo);
    auto separated = [&](int p, int q, int r, int s) {
        const LeafSet left = leaf_bit(p) | leaf_bit(q);
        const LeafSet right = leaf_bit(r) | leaf_bit(s);
        for (const LeafSet side : splits) {
            const LeafSet other = universe & ~side;
            if ((side & left) == left && (other & right) == right) return true;
            if ((other & left) == left && (side & right) == right) return true;
        }
        return false;
    };
    if (separated(a, b, c, d)) return BunemanIndex::AB_CD;
    if (separated(a, c, b, d)) return BunemanIndex::AC_BD;
    if (separated(a, d, b, c)) return BunemanIndex::AD_BC;
    return BunemanIndex::Star;
}

namespace {

std::vector<int> bfs_parents(const Topology& topo, int root) {
    const auto adj = topo.adjacency();
    std::vector<int> parent(topo.vertex_count, -2);
    std::vector<int> queue{root};
    parent[root] = -1;
    for (size_t head = 0; head < queue.size(); ++head) {
        int v = queue[head];
        for (const auto& [to, e] : adj[v]) {
            if (parent[to] == -2) {
                parent[to] = v;
                queue.push_back(to);
            }
        }
    }
    return parent;
}

std::vector<int> path_vertices(const Topology& topo, int u, int v) {
    const auto parent = bfs_parents(topo, u);
    std::vector<int> path;
    for (int cur = v; cur != -1; cur = parent[cur]) path.push_back(cur);
    std::reverse(path.begin(), path.end());
    return path;
}

/// The unique vertex lying on all three pairwise paths.
int median_vertex(const Topology& topo, int u, int v, int w) {
    const auto pv = path_vertices(topo, u, v);
    const auto pw = path_vertices(topo, u, w);
    int last_common = u;
    for (size_t i = 0; i < std::min(pv.size(), pw.size()); ++i) {
        if (pv[i] != pw[i]) break;
        last_common = pv[i];
    }
    return last_common;
}

int edge_between(const Topology& topo, int u, int v) {
    for (int e = 0; e < static_cast<int>(topo.edges.size()); ++e) {
        if ((topo.edges[e][0] == u && topo.edges[e][1] == v) ||
            (topo.edges[e][0] == v && topo.edges[e][1] == u))
            return e;
    }
    throw std::logic_error("no edge between adjacent path vertices");
}

}  // namespace

std::vector<int> path_between_labels(const Topology& topo, int label_u, int label_v) {
    const int u = topo.vertex_of_label(label_u);
    const int v = topo.vertex_of_label(label_v);
    if (u < 0 || v < 0) throw std::invalid_argument("label not in tree");
    return path_vertices(topo, u, v);
}

Bridge bridge_and_stalks(const Topology& topo, int a, int b, int c, int d) {
    if (quartet_topology(topo, a, b, c, d) != BunemanIndex::AB_CD)
        throw std::invalid_argument("quartet is a star or paired differently");
    Bridge bridge;
    const int va = topo.vertex_of_label(a);
    const int vb = topo.vertex_of_label(b);
    const int vc = topo.vertex_of_label(c);
    const int vd = topo.vertex_of_label(d);
    bridge.stalk_ab = median_vertex(topo, va, vb, vc);
    bridge.stalk_cd = median_vertex(topo, vc, vd, va);
    bridge.path_vertices = path_vertices(topo, bridge.stalk_ab, bridge.stalk_cd);
    for (size_t i = 0; i + 1 < bridge.path_vertices.size(); ++i)
        bridge.path_edges.push_back(
            edge_between(topo, bridge.path_vertices[i], bridge.path_vertices[i + 1]));
    return bridge;
}

std::set<int> restriction_vertices(const Topology& topo, const std::vector<int>& labels) {
    std::set<int> vertices;
    for (size_t i = 0; i < labels.size(); ++i) {
        for (size_t j = i + 1; j < labels.size(); ++j) {
            for (int v : path_between_labels(topo, labels[i], labels[j])) vertices.insert(v);
        }
    }
    return vertices;
}

bool clings_to(const Topology& topo, int x_label, const std::set<int>& s_vertices,
               const std::set<int>& tprime_vertices) {
    const int x = topo.vertex_of_label(x_label);
    if (x < 0) throw std::invalid_argument("label not in tree");
    if (tprime_vertices.count(x)) throw std::invalid_argument("x is a leaf of the subtree");
    // the nearest subtree vertex is the first one met on the unique path from x
    const auto parent = bfs_parents(topo, x);
    int nearest = -1;
    for (int v : tprime_vertices) {
        // walk v -> x; the entry point is the last subtree vertex on the walk
        std::vector<int> walk;
        for (int cur = v; cur != -1; cur = parent[cur]) walk.push_back(cur);
        // walk is v .. x; find the vertex after which the path leaves the subtree
        nearest = v;
        for (int w : walk) {
            if (tprime_vertices.count(w))
                nearest = w;
            else
                break;
        }
        break;  // any subtree vertex gives the same entry point
    }
    if (nearest < 0) throw std::invalid_argument("empty subtree");
    return s_vertices.count(nearest) > 0;
}

namespace {

struct ShapeString {
    int min_label;
    std::string text;
};

ShapeString shape_string(const Topology& topo,
                         const std::vector<std::vector<std::array<int, 2>>>& adj, int v,
                         int parent) {
    if (topo.leaf_label[v] != 0)
        return {topo.leaf_label[v], "L" + std::to_string(topo.leaf_label[v])};
    std::vector<ShapeString> children;
    for (const auto& [to, e] : adj[v])
        if (to != parent) children.push_back(shape_string(topo, adj, to, v));
    std::sort(children.begin(), children.end(),
              [](const ShapeString& x, const ShapeString& y) { return x.min_label < y.min_label; });
    std::string text = "(";
    int min_label = kMaxLabels + 1;
    for (size_t i = 0; i < children.size(); ++i) {
        if (i) text += ",";
        text += children[i].text;
        min_label = std::min(min_label, children[i].min_label);
    }
    text += ")";
    return {min_label, text};
}

}  // namespace

std::string canonical_topology_string(const Topology& topo) {
    const auto labels = topo.labels_sorted();
    if (labels.empty()) throw std::invalid_argument("tree has no leaves");
    const int leaf1 = topo.vertex_of_label(labels.front());
    const auto adj = topo.adjacency();
    if (adj[leaf1].empty()) throw std::invalid_argument("isolated leaf");
    const int root = adj[leaf1][0][0];
    // the root's expansion includes the smallest leaf as an ordinary child
    std::vector<ShapeString> children;
    for (const auto& [to, e] : adj[root]) children.push_back(shape_string(topo, adj, to, root));
    if (topo.leaf_label[root] != 0) {
        // two-leaf tree rooted at the other leaf
        children.push_back({topo.leaf_label[root], "R" + std::to_string(topo.leaf_label[root])});
    }
    std::sort(children.begin(), children.end(),
              [](const ShapeString& x, const ShapeString& y) { return x.min_label < y.min_label; });
    std::string text = "(";
    for (size_t i = 0; i < children.size(); ++i) {
        if (i) text += ",";
        text += children[i].text;
    }
    text += ")";
    return text;
}

}  // namespace treelike
