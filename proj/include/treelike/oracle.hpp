#pragma once

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "treelike/dissimilarity.hpp"
#include "treelike/tree.hpp"

namespace treelike {

/// Deterministic seeded randomness. Integer draws use rejection sampling on
/// the raw mt19937_64 stream so results do not depend on the standard
/// library's distribution implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }
    /// Uniform integer in [lo, hi].
    int uniform_int(int lo, int hi);
    /// Uniform rational p/q with q in [1, max_den] and value in (0, hi].
    Rat positive_rational(int hi, int max_den);
    /// Uniform rational p/q with q in [1, max_den] and value in [lo, hi].
    Rat signed_rational(int lo, int hi, int max_den);

private:
    std::mt19937_64 engine_;
};

struct TopologyCatalog {
    int n = 0;
    std::vector<Topology> topologies;  // canonical order, duplicate-free
};

/// Every essential unrooted tree with leaves exactly {1..n}, 3 <= n <= 8.
/// Counts: 1, 4, 26, 236, 2752, 39208 for n = 3..8.
TopologyCatalog enumerate_topologies(int n);

enum class SignConstraint { None, InternalPositive, AllPositive };

struct Realization {
    enum class Kind { None, Unique, Affine };
    Kind kind = Kind::None;
    WeightedTree witness;  // populated when kind != None
    int dimension = 0;     // of the full solution space, before sign cuts
};

/// Solves the exact linear system D_I = sum of w(e) over edges in T|_I for
/// all C(n,k) subsets, then looks for a solution meeting the sign constraint
/// (exact Fourier-Motzkin feasibility when the space is positive-dimensional).
Realization realize_exact(const Topology& topo, const KDissimilarityFamily& family,
                          SignConstraint constraint);

/// Spec surface: boolean flag selects internal-positive.
Realization realize_exact(const Topology& topo, const KDissimilarityFamily& family,
                          bool require_internal_positive);

/// True iff the system admits a realization whose internal weights are all
/// nonzero (exact: the solution space exists and no internal weight vanishes
/// identically on it).
bool admits_internal_nonzero(const Topology& topo, const KDissimilarityFamily& family);

/// Ground truth by exhaustion: ip answer = some topology admits an
/// internal-positive exact realization; p answer = some topology admits an
/// all-positive one. Requires n <= 8.
std::pair<bool, bool> brute_decide(const KDissimilarityFamily& family);

/// Random essential tree by repeated leaf attachment (to an edge, creating a
/// vertex, or to an internal vertex).
Topology random_topology(int n, Rng& rng);

/// Random essential tree with internal weights in (0, max_abs] and twig
/// weights in [-max_abs, max_abs].
WeightedTree random_weighted_tree(int n, Rng& rng, int max_abs = 10, int max_den = 4);

/// Seeded, reproducible essential internal-positive pseudostar of kind (n,k):
/// topologies are rejection-sampled until the pseudostar test holds; twig
/// weights may be negative.
WeightedTree random_pseudostar(int n, int k, std::uint64_t seed, int max_abs = 10,
                               int max_den = 4);

}  // namespace treelike
