#pragma once

#include <cstdint>
#include <functional>
#include <vector>

namespace treelike {

// Leaf labels live in 1..n with n <= 32; a LeafSet stores label i at bit i-1.
using LeafSet = std::uint32_t;

constexpr int kMaxLabels = 32;

inline LeafSet leaf_bit(int label) { return LeafSet(1) << (label - 1); }

inline LeafSet full_leaf_set(int n) {
    return n >= kMaxLabels ? ~LeafSet(0) : (LeafSet(1) << n) - 1;
}

inline bool contains(LeafSet set, int label) { return (set & leaf_bit(label)) != 0; }

int popcount(LeafSet set);

LeafSet to_leaf_set(const std::vector<int>& labels);
std::vector<int> to_labels(LeafSet set);

/// C(m, r) with the conventions C(m, 0) = 1 and C(m, r) = 0 for m < r or r < 0.
long long binomial(int m, int r);

/// Lexicographic rank of a sorted k-subset of {1..n} among all C(n,k) subsets.
long long subset_rank(const std::vector<int>& subset, int n);

/// Inverse of subset_rank.
std::vector<int> subset_unrank(long long rank, int n, int k);

/// Visits every k-subset of {1..n} in lexicographic order.
void for_each_subset(int n, int k, const std::function<void(const std::vector<int>&)>& visit);

}  // namespace treelike
