#include "treelike/oracle.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>

namespace treelike {

int Rng::uniform_int(int lo, int hi) {
    if (lo > hi) throw std::invalid_argument("uniform_int: empty range");
    const std::uint64_t span = static_cast<std::uint64_t>(hi) - lo + 1;
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() / span * span;
    std::uint64_t draw;
    do {
        draw = next();
    } while (draw >= limit);
    return lo + static_cast<int>(draw % span);
}

Rat Rng::positive_rational(int hi, int max_den) {
    const int den = uniform_int(1, max_den);
    const int num = uniform_int(1, hi * den);
    Rat value(num, den);
    value.canonicalize();
    return value;
}

Rat Rng::signed_rational(int lo, int hi, int max_den) {
    const int den = uniform_int(1, max_den);
    const int num = uniform_int(lo * den, hi * den);
    Rat value(num, den);
    value.canonicalize();
    return value;
}

TopologyCatalog enumerate_topologies(int n) {
    if (n < 3 || n > 8) throw std::invalid_argument("enumerate_topologies: 3 <= n <= 8");
    // two labeled leaves joined by an edge
    Topology seed;
    seed.add_vertex(1);
    seed.add_vertex(2);
    seed.add_edge(0, 1);

    std::vector<Topology> level{seed};
    for (int label = 3; label <= n; ++label) {
        std::map<std::string, Topology> next;
        for (const Topology& topo : level) {
            const auto deg = topo.degrees();
            // attach to an edge: subdivide and hang the new leaf off the middle
            for (int e = 0; e < static_cast<int>(topo.edges.size()); ++e) {
                Topology grown = topo;
                const int mid = grown.add_vertex();
                const int leaf = grown.add_vertex(label);
                const int v = grown.edges[e][1];
                grown.edges[e][1] = mid;
                grown.add_edge(mid, v);
                grown.add_edge(mid, leaf);
                next.emplace(canonical_topology_string(grown), std::move(grown));
            }
            // attach to an internal vertex, raising its degree
            for (int v = 0; v < topo.vertex_count; ++v) {
                if (deg[v] < 3) continue;
                Topology grown = topo;
                const int leaf = grown.add_vertex(label);
                grown.add_edge(v, leaf);
                next.emplace(canonical_topology_string(grown), std::move(grown));
            }
        }
        level.clear();
        for (auto& [key, topo] : next) level.push_back(std::move(topo));
    }

    TopologyCatalog catalog;
    catalog.n = n;
    catalog.topologies = std::move(level);
    return catalog;
}

namespace {

// ---- exact linear algebra -------------------------------------------------

struct LinearSolution {
    bool consistent = false;
    std::vector<Rat> particular;            // free variables set to 0
    std::vector<std::vector<Rat>> nullspace;  // basis vectors
};

LinearSolution solve_exact(std::vector<std::vector<Rat>> rows, int cols) {
    // rows are augmented: cols unknowns + 1 rhs column
    const int width = cols + 1;
    int rank = 0;
    std::vector<int> pivot_col;
    for (int col = 0; col < cols && rank < static_cast<int>(rows.size()); ++col) {
        int pivot = -1;
        for (int r = rank; r < static_cast<int>(rows.size()); ++r) {
            if (rows[r][col] != 0) {
                pivot = r;
                break;
            }
        }
        if (pivot < 0) continue;
        std::swap(rows[rank], rows[pivot]);
        const Rat inv = 1 / rows[rank][col];
        for (int c = col; c < width; ++c) rows[rank][c] *= inv;
        for (int r = 0; r < static_cast<int>(rows.size()); ++r) {
            if (r == rank || rows[r][col] == 0) continue;
            const Rat factor = rows[r][col];
            for (int c = col; c < width; ++c) rows[r][c] -= factor * rows[rank][c];
        }
        pivot_col.push_back(col);
        ++rank;
    }
    LinearSolution solution;
    for (int r = rank; r < static_cast<int>(rows.size()); ++r) {
        if (rows[r][cols] != 0) return solution;  // inconsistent
    }
    solution.consistent = true;
    solution.particular.assign(cols, Rat(0));
    for (int r = 0; r < rank; ++r) solution.particular[pivot_col[r]] = rows[r][cols];
    std::vector<bool> is_pivot(cols, false);
    for (int c : pivot_col) is_pivot[c] = true;
    for (int free = 0; free < cols; ++free) {
        if (is_pivot[free]) continue;
        std::vector<Rat> basis(cols, Rat(0));
        basis[free] = 1;
        for (int r = 0; r < rank; ++r) basis[pivot_col[r]] = -rows[r][free];
        solution.nullspace.push_back(std::move(basis));
    }
    return solution;
}

// ---- exact strict/weak linear feasibility (Fourier-Motzkin) ----------------

struct Inequality {
    std::vector<Rat> coeff;  // over the free parameters
    Rat constant;
    bool strict;  // coeff . t + constant > 0 (strict) or >= 0
};

// Returns a feasible parameter point, or nullopt.
std::optional<std::vector<Rat>> feasible_point(std::vector<Inequality> system, int dim) {
    if (dim == 0) {
        for (const auto& q : system) {
            if (q.strict ? !(q.constant > 0) : !(q.constant >= 0)) return std::nullopt;
        }
        return std::vector<Rat>{};
    }
    const int var = dim - 1;
    std::vector<Inequality> reduced;
    std::vector<Inequality> lowers, uppers;
    for (auto& q : system) {
        if (q.coeff[var] == 0) {
            Inequality passed = q;
            passed.coeff.resize(var);
            reduced.push_back(std::move(passed));
        } else if (q.coeff[var] > 0) {
            lowers.push_back(q);
        } else {
            uppers.push_back(q);
        }
    }
    for (const auto& lo : lowers) {
        for (const auto& up : uppers) {
            // lo: a t_var >= -(lo rest); up: b t_var <= ... combine to drop t_var
            Inequality combined;
            combined.coeff.assign(var, Rat(0));
            const Rat a = lo.coeff[var];
            const Rat b = -up.coeff[var];
            for (int c = 0; c < var; ++c) combined.coeff[c] = lo.coeff[c] * b + up.coeff[c] * a;
            combined.constant = lo.constant * b + up.constant * a;
            combined.strict = lo.strict || up.strict;
            reduced.push_back(std::move(combined));
        }
    }
    auto inner = feasible_point(std::move(reduced), var);
    if (!inner) return std::nullopt;

    // numeric interval for t_var at the inner point
    bool has_lo = false, has_hi = false, lo_strict = false, hi_strict = false;
    Rat lo_val, hi_val;
    auto eval_rest = [&](const Inequality& q) {
        Rat value = q.constant;
        for (int c = 0; c < var; ++c) value += q.coeff[c] * (*inner)[c];
        return value;
    };
    for (const auto& q : lowers) {
        const Rat bound = -eval_rest(q) / q.coeff[var];
        if (!has_lo) {
            lo_val = bound;
            lo_strict = q.strict;
            has_lo = true;
        } else if (bound > lo_val) {
            lo_val = bound;
            lo_strict = q.strict;
        } else if (bound == lo_val) {
            lo_strict = lo_strict || q.strict;
        }
    }
    for (const auto& q : uppers) {
        const Rat bound = -eval_rest(q) / q.coeff[var];
        if (!has_hi) {
            hi_val = bound;
            hi_strict = q.strict;
            has_hi = true;
        } else if (bound < hi_val) {
            hi_val = bound;
            hi_strict = q.strict;
        } else if (bound == hi_val) {
            hi_strict = hi_strict || q.strict;
        }
    }
    Rat chosen;
    if (has_lo && has_hi) {
        if (lo_val < hi_val)
            chosen = (lo_val + hi_val) / 2;
        else if (lo_val == hi_val && !lo_strict && !hi_strict)
            chosen = lo_val;
        else
            return std::nullopt;  // unreachable when FM said feasible
    } else if (has_lo) {
        chosen = lo_val + 1;
    } else if (has_hi) {
        chosen = hi_val - 1;
    } else {
        chosen = 0;
    }
    inner->push_back(chosen);
    return inner;
}

}  // namespace

namespace {

// incidence rows: D_I = sum of w(e) over edges whose split crosses I
std::vector<std::vector<Rat>> incidence_rows(const Topology& topo,
                                             const KDissimilarityFamily& family) {
    const int n = topo.n_leaves();
    const int k = family.k();
    const int edge_count = static_cast<int>(topo.edges.size());
    const auto splits = edge_splits(topo);
    const LeafSet universe = full_leaf_set(n);
    std::vector<std::vector<Rat>> rows;
    rows.reserve(family.size());
    long long index = 0;
    for_each_subset(n, k, [&](const std::vector<int>& subset) {
        LeafSet mask = 0;
        for (int label : subset) mask |= leaf_bit(label);
        std::vector<Rat> row(edge_count + 1, Rat(0));
        for (int e = 0; e < edge_count; ++e) {
            const LeafSet side = splits[e];
            if ((side & mask) != 0 && ((universe & ~side) & mask) != 0) row[e] = 1;
        }
        row[edge_count] = family.values()[index++];
        rows.push_back(std::move(row));
    });
    return rows;
}

}  // namespace

Realization realize_exact(const Topology& topo, const KDissimilarityFamily& family,
                          SignConstraint constraint) {
    if (!topo.labels_contiguous())
        throw std::invalid_argument("realize_exact: topology labels must be 1..n");
    const int n = topo.n_leaves();
    if (n != family.n()) throw std::invalid_argument("realize_exact: leaf count mismatch");
    const int edge_count = static_cast<int>(topo.edges.size());

    Realization realization;
    const LinearSolution solution = solve_exact(incidence_rows(topo, family), edge_count);
    if (!solution.consistent) return realization;
    realization.dimension = static_cast<int>(solution.nullspace.size());

    const auto twig = twig_edge_flags(topo);
    const int dim = realization.dimension;

    // sign constraints over the affine solution space, eliminated exactly
    std::vector<Inequality> system;
    for (int e = 0; e < edge_count; ++e) {
        const bool constrained = constraint == SignConstraint::AllPositive ||
                                 (constraint == SignConstraint::InternalPositive && !twig[e]);
        if (!constrained) continue;
        Inequality q;
        q.coeff.assign(dim, Rat(0));
        for (int t = 0; t < dim; ++t) q.coeff[t] = solution.nullspace[t][e];
        q.constant = solution.particular[e];
        q.strict = true;
        system.push_back(std::move(q));
    }
    const auto point = feasible_point(std::move(system), dim);
    if (!point) return realization;  // solvable but not with the required signs

    std::vector<Rat> weights = solution.particular;
    for (int t = 0; t < dim; ++t)
        for (int e = 0; e < edge_count; ++e) weights[e] += (*point)[t] * solution.nullspace[t][e];

    realization.kind = dim == 0 ? Realization::Kind::Unique : Realization::Kind::Affine;
    realization.witness.topo = topo;
    realization.witness.weights = std::move(weights);
    return realization;
}

Realization realize_exact(const Topology& topo, const KDissimilarityFamily& family,
                          bool require_internal_positive) {
    return realize_exact(topo, family,
                         require_internal_positive ? SignConstraint::InternalPositive
                                                   : SignConstraint::None);
}

bool admits_internal_nonzero(const Topology& topo, const KDissimilarityFamily& family) {
    const int edge_count = static_cast<int>(topo.edges.size());
    const LinearSolution solution = solve_exact(incidence_rows(topo, family), edge_count);
    if (!solution.consistent) return false;
    const auto twig = twig_edge_flags(topo);
    for (int e = 0; e < edge_count; ++e) {
        if (twig[e]) continue;
        bool identically_zero = solution.particular[e] == 0;
        for (const auto& basis : solution.nullspace)
            if (basis[e] != 0) identically_zero = false;
        // a finite union of proper hyperplane cuts cannot cover the affine
        // solution space, so nonvanishing per edge suffices
        if (identically_zero) return false;
    }
    return true;
}

std::pair<bool, bool> brute_decide(const KDissimilarityFamily& family) {
    if (family.n() > 8) throw std::invalid_argument("brute_decide: n <= 8");
    const TopologyCatalog catalog = enumerate_topologies(family.n());
    bool ip = false, p = false;
    for (const Topology& topo : catalog.topologies) {
        if (!ip && realize_exact(topo, family, SignConstraint::InternalPositive).kind !=
                       Realization::Kind::None)
            ip = true;
        if (!p && realize_exact(topo, family, SignConstraint::AllPositive).kind !=
                      Realization::Kind::None)
            p = true;
        if (ip && p) break;
    }
    return {ip, p};
}

Topology random_topology(int n, Rng& rng) {
    if (n < 3 || n > kMaxLabels) throw std::invalid_argument("random_topology: bad n");
    Topology topo;
    topo.add_vertex(1);
    topo.add_vertex(2);
    topo.add_edge(0, 1);
    for (int label = 3; label <= n; ++label) {
        const auto deg = topo.degrees();
        std::vector<int> internal;
        for (int v = 0; v < topo.vertex_count; ++v)
            if (deg[v] >= 3) internal.push_back(v);
        const int edge_count = static_cast<int>(topo.edges.size());
        const int choice = rng.uniform_int(0, edge_count + static_cast<int>(internal.size()) - 1);
        if (choice < edge_count) {
            const int mid = topo.add_vertex();
            const int leaf = topo.add_vertex(label);
            const int v = topo.edges[choice][1];
            topo.edges[choice][1] = mid;
            topo.add_edge(mid, v);
            topo.add_edge(mid, leaf);
        } else {
            const int leaf = topo.add_vertex(label);
            topo.add_edge(internal[choice - edge_count], leaf);
        }
    }
    return topo;
}

WeightedTree random_weighted_tree(int n, Rng& rng, int max_abs, int max_den) {
    WeightedTree tree;
    tree.topo = random_topology(n, rng);
    const auto twig = twig_edge_flags(tree.topo);
    tree.weights.resize(tree.topo.edges.size());
    for (size_t e = 0; e < tree.weights.size(); ++e) {
        tree.weights[e] = twig[e] ? rng.signed_rational(-max_abs, max_abs, max_den)
                                  : rng.positive_rational(max_abs, max_den);
    }
    return tree;
}

WeightedTree random_pseudostar(int n, int k, std::uint64_t seed, int max_abs, int max_den) {
    if (k < 3 || k > n - 1) throw std::invalid_argument("random_pseudostar: 3 <= k <= n-1");
    Rng rng(seed);
    Topology topo;
    for (long attempt = 0;; ++attempt) {
        if (attempt > 2000000) throw std::logic_error("random_pseudostar: rejection cap hit");
        topo = random_topology(n, rng);
        if (is_pseudostar(topo, k)) break;
    }
    WeightedTree tree;
    tree.topo = std::move(topo);
    const auto twig = twig_edge_flags(tree.topo);
    tree.weights.resize(tree.topo.edges.size());
    for (size_t e = 0; e < tree.weights.size(); ++e) {
        tree.weights[e] = twig[e] ? rng.signed_rational(-max_abs, max_abs, max_den)
                                  : rng.positive_rational(max_abs, max_den);
    }
    return tree;
}

}  // namespace treelike
