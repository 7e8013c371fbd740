#pragma once

#include <string>
#include <vector>

#include "treelike/dissimilarity.hpp"
#include "treelike/newick.hpp"
#include "treelike/tree.hpp"

namespace treelike::testing {

// the worked five-leaf example: leaves 1,2 on one node, 3,4,5 on the other,
// internal edge of weight 2, all twigs 1
inline WeightedTree t5() { return parse_newick("(1:1,2:1,(3:1,4:1,5:1):2);"); }

inline WeightedTree tstar5() { return parse_newick("(1:1,2:1,3:1,4:1,5:1);"); }

inline KDissimilarityFamily f5() { return k_dissimilarity(t5(), 3); }

// the 4-leaf, k=3 family D_123=11, D_124=12, D_134=13, D_234=14
inline KDissimilarityFamily t4_family() {
    KDissimilarityFamily family(4, 3);
    family.at({1, 2, 3}) = 11;
    family.at({1, 2, 4}) = 12;
    family.at({1, 3, 4}) = 13;
    family.at({2, 3, 4}) = 14;
    return family;
}

// 6-leaf binary caterpillar with cherries {1,2} and {5,6}
inline WeightedTree caterpillar6_binary() {
    return parse_newick("(1:1,2:1,(3:1,(4:1,(5:1,6:1):1):1):1);");
}

// 6-leaf caterpillar with a single middle vertex carrying leaves 3 and 4
inline WeightedTree caterpillar6_mid() {
    return parse_newick("(1:1,2:1,(3:1,4:1,(5:1,6:1):1):1);");
}

}  // namespace treelike::testing
