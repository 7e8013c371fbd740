#pragma once

#include <array>
#include <set>
#include <vector>

#include "treelike/dissimilarity.hpp"
#include "treelike/rational.hpp"
#include "treelike/subsets.hpp"

namespace treelike {

/// An unrooted finite tree whose degree-1 vertices carry distinct positive
/// leaf labels. Vertex ids are internal and never serialized.
struct Topology {
    int vertex_count = 0;
    std::vector<std::array<int, 2>> edges;
    std::vector<int> leaf_label;  // per vertex; 0 for internal vertices

    int add_vertex(int label = 0);
    int add_edge(int u, int v);

    int n_leaves() const;
    std::vector<int> labels_sorted() const;
    LeafSet label_set() const;
    int vertex_of_label(int label) const;  // -1 if absent

    std::vector<int> degrees() const;
    // adjacency()[v] lists (neighbor vertex, edge index)
    std::vector<std::vector<std::array<int, 2>>> adjacency() const;

    /// Connected, acyclic, labels exactly on the degree-1 vertices, no dups.
    bool valid() const;
    /// valid() and labels are exactly 1..n.
    bool labels_contiguous() const;
};

struct WeightedTree {
    Topology topo;
    std::vector<Rat> weights;  // parallel to topo.edges
};

/// For each edge, the labels on the side of edges[e][0].
std::vector<LeafSet> edge_splits(const Topology& topo);

/// Edge flags: true for edges lying on some twig (pendant path from a leaf to
/// its nearest vertex of degree >= 3). In a tree without any such vertex
/// (a bare path), every edge counts as a twig edge.
std::vector<bool> twig_edge_flags(const Topology& topo);

/// Total weight of the twig of `label` (single pendant edge in an essential tree).
Rat twig_weight(const WeightedTree& tree, int label);

/// Index of the pendant edge at `label`.
int pendant_edge(const Topology& topo, int label);

/// Weight of the minimal subtree of `tree` spanning the labels in `subset`.
Rat k_weight(const WeightedTree& tree, const std::vector<int>& subset);

/// Sum over the internal edges of the FULL tree that lie in the restriction
/// to `subset`.
Rat internal_restricted_weight(const WeightedTree& tree, const std::vector<int>& subset);

/// All k-weights of a tree with labels exactly 1..n, for 2 <= k <= n-1.
KDissimilarityFamily k_dissimilarity(const WeightedTree& tree, int k);

/// Minimal spanning subtree on the labels in `subset`, induced weights,
/// degree-2 vertices retained.
WeightedTree restrict_tree(const WeightedTree& tree, const std::vector<int>& subset);

/// Suppresses every degree-2 vertex, summing the incident weights.
WeightedTree essentialize(const WeightedTree& tree);

/// True iff every edge's leaf bipartition has a side of size >= k.
bool is_pseudostar(const Topology& topo, int k);

enum class BunemanIndex { AB_CD, AC_BD, AD_BC, Star };

/// Pairing of the quartet {a,b,c,d} realized by the restricted tree.
BunemanIndex quartet_topology(const Topology& topo, int a, int b, int c, int d);

struct Bridge {
    int stalk_ab = -1;
    int stalk_cd = -1;
    std::vector<int> path_vertices;  // stalk_ab .. stalk_cd
    std::vector<int> path_edges;
};

/// Stalks and bridge of a quartet with Buneman index AB|CD; throws if the
/// quartet is a star or paired differently.
Bridge bridge_and_stalks(const Topology& topo, int a, int b, int c, int d);

/// Vertex list of the path between the vertices carrying two labels.
std::vector<int> path_between_labels(const Topology& topo, int label_u, int label_v);

/// Vertices of the minimal subtree spanning the given labels.
std::set<int> restriction_vertices(const Topology& topo, const std::vector<int>& labels);

/// True iff the nearest vertex of the subtree `tprime_vertices` to leaf `x`
/// lies inside `s_vertices` (a path within that subtree). Throws if x is a
/// leaf of the subtree.
bool clings_to(const Topology& topo, int x_label, const std::set<int>& s_vertices,
               const std::set<int>& tprime_vertices);

/// Label-aware canonical shape string (weights ignored); equal strings iff
/// equal leaf-labeled topologies.
std::string canonical_topology_string(const Topology& topo);

}  // namespace treelike
