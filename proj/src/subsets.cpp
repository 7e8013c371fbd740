#include "treelike/subsets.hpp"

#include <bit>
#include <stdexcept>

namespace treelike {

int popcount(LeafSet set) { return std::popcount(set); }

LeafSet to_leaf_set(const std::vector<int>& labels) {
    LeafSet set = 0;
    for (int label : labels) {
        if (label < 1 || label > kMaxLabels) throw std::invalid_argument("leaf label out of range");
        set |= leaf_bit(label);
    }
    return set;
}

std::vector<int> to_labels(LeafSet set) {
    std::vector<int> labels;
    for (int label = 1; label <= kMaxLabels; ++label) {
        if (contains(set, label)) labels.push_back(label);
    }
    return labels;
}

long long binomial(int m, int r) {
    if (r < 0 || m < r) return 0;
    r = std::min(r, m - r);
    long long result = 1;
    for (int i = 1; i <= r; ++i) {
        result = result * (m - r + i) / i;
    }
    return result;
}

long long subset_rank(const std::vector<int>& subset, int n) {
    const int k = static_cast<int>(subset.size());
    long long rank = 0;
    int prev = 0;
    for (int pos = 0; pos < k; ++pos) {
        const int value = subset[pos];
        if (value <= prev || value > n) throw std::invalid_argument("subset not sorted or out of range");
        // subsets that agree on the first `pos` entries but pick a smaller element here
        for (int smaller = prev + 1; smaller < value; ++smaller) {
            rank += binomial(n - smaller, k - pos - 1);
        }
        prev = value;
    }
    return rank;
}

std::vector<int> subset_unrank(long long rank, int n, int k) {
    std::vector<int> subset;
    subset.reserve(k);
    int next = 1;
    for (int pos = 0; pos < k; ++pos) {
        for (int candidate = next;; ++candidate) {
            if (candidate > n) throw std::invalid_argument("subset rank out of range");
            const long long block = binomial(n - candidate, k - pos - 1);
            if (rank < block) {
                subset.push_back(candidate);
                next = candidate + 1;
                break;
            }
            rank -= block;
        }
    }
    return subset;
}

void for_each_subset(int n, int k, const std::function<void(const std::vector<int>&)>& visit) {
    if (k < 0 || k > n) return;
    std::vector<int> subset(k);
    for (int i = 0; i < k; ++i) subset[i] = i + 1;
    while (true) {
        visit(subset);
        int i = k - 1;
        while (i >= 0 && subset[i] == n - (k - 1 - i)) --i;
        if (i < 0) break;
        ++subset[i];
        for (int j = i + 1; j < k; ++j) subset[j] = subset[j - 1] + 1;
    }
}

}  // namespace treelike
