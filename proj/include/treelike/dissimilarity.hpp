#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "treelike/rational.hpp"
#include "treelike/subsets.hpp"

namespace treelike {

/// Total map from the k-subsets of {1..n} to rationals, stored flat in
/// lexicographic subset order.
class KDissimilarityFamily {
public:
    KDissimilarityFamily() = default;
    KDissimilarityFamily(int n, int k);

    int n() const { return n_; }
    int k() const { return k_; }
    long long size() const { return static_cast<long long>(values_.size()); }

    const Rat& at(const std::vector<int>& subset) const;
    Rat& at(const std::vector<int>& subset);
    const Rat& at_set(LeafSet subset) const;

    const std::vector<Rat>& values() const { return values_; }
    std::vector<Rat>& values() { return values_; }

private:
    int n_ = 0;
    int k_ = 0;
    std::vector<Rat> values_;
};

/// Symmetric table S_{i,j} over the 2-subsets of {1..n}.
class PairTable {
public:
    PairTable() = default;
    explicit PairTable(int n);

    int n() const { return n_; }
    const Rat& at(int i, int j) const;
    Rat& at(int i, int j);

    const std::vector<Rat>& values() const { return values_; }

private:
    int n_ = 0;
    std::vector<Rat> values_;  // lexicographic over pairs i < j
};

/// S_{i,j} = sum of D over all k-subsets containing {i,j}.
/// For k = 2 the sum has a single empty completion, so the table equals D.
PairTable s_table(const KDissimilarityFamily& family);

struct QuadrupleWitness {
    int a = 0, b = 0, c = 0, d = 0;
};

/// Four-point condition: for every 4-subset the maximum of the three pairing
/// sums is attained at least twice. Returns the first violating quadruple in
/// lexicographic order, or nullopt on pass.
std::optional<QuadrupleWitness> four_point_check(const PairTable& table);

/// Relaxed variant: at least two of the three pairing sums are equal.
std::optional<QuadrupleWitness> relaxed_four_point_check(const PairTable& table);

/// Endpoint-inclusive L-set of the pair {a,b} within the quartet {a,b,c,d}:
/// {a,b} plus every x outside the quartet whose S-differences against a (over
/// z in {b,c,d}) or against b (over z in {a,c,d}) are constant.
LeafSet l_set(const PairTable& table, int a, int b, int c, int d, bool of_ab);

/// One equivalence class of quartets witnessing a single internal edge:
/// the two leaf sides of the edge split, the rescaled weight, and the member
/// quartets (each oriented so its first pair lies in side_ab).
struct QClass {
    std::array<int, 4> representative{};
    LeafSet side_ab = 0;
    LeafSet side_cd = 0;
    Rat wtilde;
    long long denominator = 0;  // C(#side_ab - 2, k-2) + C(#side_cd - 2, k-2)
    std::vector<std::array<int, 4>> members;
};

/// Scans all quartets with S_ab + S_cd < S_ac + S_bd = S_ad + S_bc and
/// L-set union = {1..n}, and groups them into classes (one per single-edge
/// bridge). Throws on a zero rescaling denominator (family outside the
/// characterization's reach) or inconsistent sides within a class (both
/// signal a non-treelike table).
std::vector<QClass> q_classes(const PairTable& table, int k);

enum class QMembership {
    EdgeInSubtree,    // class counts for W iff both sides meet W (operative)
    LiteralQuartets,  // class counts for W iff it has a member quartet inside W (audit)
};

/// Sum of wtilde over the classes whose edge lies in the subtree spanned by W.
Rat q_hat(const std::vector<QClass>& classes, LeafSet w,
          QMembership membership = QMembership::EdgeInSubtree);

/// Restriction to S (|S| >= k+1) with order-preserving relabeling to {1..|S|}.
KDissimilarityFamily restrict_family(const KDissimilarityFamily& family,
                                     const std::vector<int>& s);

}  // namespace treelike
