#pragma once

#include <string>
#include <string_view>

#include "treelike/tree.hpp"

namespace treelike {

/// Parses a rooted Newick string with integer leaf labels 1..n and branch
/// lengths given as decimals or "p/q" literals, then forgets the rooting:
/// a degree-2 root is suppressed (its incident weights summed). The root's
/// own branch length, if present, is ignored.
/// Throws std::invalid_argument on malformed input, duplicate or
/// non-contiguous labels, or a missing branch length on a non-root edge.
WeightedTree parse_newick(std::string_view text);

/// Canonical serialization: rooted at the vertex adjacent to the smallest
/// leaf label, children ordered by smallest descendant label, weights printed
/// as "p/q" when non-integral. parse_newick(to_newick(t)) == t for essential
/// trees with labels 1..n.
std::string to_newick(const WeightedTree& tree);

/// Equality up to vertex renaming, via canonical serialization.
bool same_weighted_tree(const WeightedTree& a, const WeightedTree& b);

}  // namespace treelike
