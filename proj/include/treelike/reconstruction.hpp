#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "treelike/dissimilarity.hpp"
#include "treelike/tree.hpp"

namespace treelike {

/// Negative certificate: the first pipeline stage that failed, with the
/// indices witnessing the failure.
struct FailureWitness {
    std::string stage;
    std::vector<int> indices;
    std::string detail;
};

struct ReconstructionResult {
    WeightedTree tree;           // essential, internal weights > 0
    std::map<int, Rat> tau;      // tau_i = k * twig weight of leaf i
    std::vector<QClass> classes;
    std::vector<int> class_edge;  // edge index in `tree` assigned to each class
};

struct ReconstructOutcome {
    std::optional<ReconstructionResult> result;
    std::optional<FailureWitness> failure;
    bool ok() const { return result.has_value(); }
};

/// Builds the essential internal-positive tree whose pairwise path weights
/// equal the table exactly, by incremental leaf insertion (attachment offset
/// (S_ix + S_ij - S_jx)/2 from i along p(i,j)). Requires the four-point
/// condition; an inconsistency discovered mid-insertion throws.
/// The insertion runs on a twig-shifted copy of the table so that negative
/// twig weights cannot confuse the attachment search; the shift is undone on
/// the finished tree.
WeightedTree tree_from_pair_table(const PairTable& table);

/// Same, with an explicit insertion order (a permutation of the labels);
/// the result never depends on it.
WeightedTree tree_from_pair_table(const PairTable& table, const std::vector<int>& order);

/// Replaces each internal weight by the wtilde of the class matching the
/// edge's leaf split (equivalently 2 w'(e) / denominator; the two routes are
/// checked to agree exactly). Twigs untouched. Throws on an unmatched
/// internal edge or a route disagreement (non-treelike input).
WeightedTree rescale_internal(const WeightedTree& tprime, const std::vector<QClass>& classes);

/// The k-1 smallest elements of [n] - {i,j}: the canonical X selector.
std::vector<int> canonical_x(int n, int k, int i, int j);

/// Visits X choices for the pair (i,j): exhaustive for n <= 9, otherwise 64
/// deterministic seeded samples per pair.
void for_each_x(int n, int k, int i, int j,
                const std::function<void(const std::vector<int>&)>& visit);

/// Delta(i,j,X) = D_jX - D_iX + q_hat(iX) - q_hat(jX); antisymmetric in
/// (i,j), and for tree families independent of X with value twig(j) - twig(i).
Rat delta(const KDissimilarityFamily& family, const std::vector<QClass>& classes, int i, int j,
          const std::vector<int>& x, QMembership membership = QMembership::EdgeInSubtree);

/// tau_i(I) = D_I - sum_{j in I} Delta(i,j,X_ij) - q_hat(I), with canonical
/// X choices; equals k * twig(i) for tree families, for any I (i need not
/// belong to I).
Rat tau(const KDissimilarityFamily& family, const std::vector<QClass>& classes, int i,
        const std::vector<int>& big_i, QMembership membership = QMembership::EdgeInSubtree);

/// Audit-only: the literal per-I double sum over ordered pairs of I with
/// symmetric X choices. Identically zero for any family (the summands cancel
/// in antisymmetric pairs), which is why the operative check is the per-pair
/// X-independence of Delta instead.
Rat literal_pairwise_sum(const KDissimilarityFamily& family, const std::vector<QClass>& classes,
                         const std::vector<int>& big_i);

/// Full pipeline: s_table, four-point check, pair-table realization,
/// pseudostar check, class rescaling, twig solve with constancy sweeps.
/// For k = 2 the pair-table realization is the answer and the class
/// machinery is skipped.
ReconstructOutcome reconstruct(const KDissimilarityFamily& family);

}  // namespace treelike
