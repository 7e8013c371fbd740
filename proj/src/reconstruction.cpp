#include "treelike/reconstruction.hpp"

#include <algorithm>
#include <stdexcept>

namespace treelike {

namespace {

// Pairwise leaf-to-leaf path weights of a tree, as a PairTable over its labels
// relabeled by position in sorted label order.
void verify_pairwise(const WeightedTree& tree, const PairTable& table) {
    const auto labels = tree.topo.labels_sorted();
    for (size_t i = 0; i < labels.size(); ++i) {
        for (size_t j = i + 1; j < labels.size(); ++j) {
            const Rat d = k_weight(tree, {labels[i], labels[j]});
            if (d != table.at(labels[i], labels[j]))
                throw std::runtime_error(
                    "tree_from_pair_table: four-point violation discovered during insertion");
        }
    }
}

struct PathStep {
    int vertex;
    int edge_from_prev;  // -1 for the first vertex
};

std::vector<PathStep> tree_path(const WeightedTree& tree, int from_vertex, int to_vertex) {
    const auto adj = tree.topo.adjacency();
    std::vector<int> parent(tree.topo.vertex_count, -2);
    std::vector<int> parent_edge(tree.topo.vertex_count, -1);
    std::vector<int> queue{from_vertex};
    parent[from_vertex] = -1;
    for (size_t head = 0; head < queue.size(); ++head) {
        const int v = queue[head];
        for (const auto& [to, e] : adj[v]) {
            if (parent[to] == -2) {
                parent[to] = v;
                parent_edge[to] = e;
                queue.push_back(to);
            }
        }
    }
    std::vector<PathStep> path;
    for (int cur = to_vertex; cur != -1; cur = parent[cur])
        path.push_back({cur, parent_edge[cur]});
    std::reverse(path.begin(), path.end());
    path.front().edge_from_prev = -1;
    return path;
}

}  // namespace

WeightedTree tree_from_pair_table(const PairTable& table) {
    std::vector<int> order(table.n());
    for (int i = 0; i < table.n(); ++i) order[i] = i + 1;
    return tree_from_pair_table(table, order);
}

WeightedTree tree_from_pair_table(const PairTable& table, const std::vector<int>& order) {
    const int n = table.n();
    if (n < 3) throw std::invalid_argument("tree_from_pair_table: need n >= 3");
    {
        std::vector<int> check = order;
        std::sort(check.begin(), check.end());
        for (int i = 0; i < n; ++i)
            if (i >= static_cast<int>(check.size()) || check[i] != i + 1)
                throw std::invalid_argument("tree_from_pair_table: order must permute 1..n");
    }

    // Shift every twig by M so the shifted table is realized by a tree with
    // all weights positive; insertion below relies on that positivity.
    Rat max_abs = 0;
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) max_abs = std::max(max_abs, Rat(abs(table.at(i, j))));
    const Rat m_shift = 2 * max_abs + 1;
    auto shifted = [&](int i, int j) -> Rat { return table.at(i, j) + 2 * m_shift; };

    WeightedTree tree;
    {
        const int v0 = tree.topo.add_vertex(order[0]);
        const int v1 = tree.topo.add_vertex(order[1]);
        tree.topo.add_edge(v0, v1);
        tree.weights.push_back(shifted(order[0], order[1]));
    }

    for (int step = 2; step < n; ++step) {
        const int x = order[step];
        const auto present = tree.topo.labels_sorted();
        const int i = present.front();

        // the attachment point sits at offset max_j (S_ix + S_ij - S_jx)/2
        // from i, witnessed by any j whose path from i passes through it
        Rat best;
        int best_j = -1;
        for (int j : present) {
            if (j == i) continue;
            const Rat alpha = (shifted(i, x) + shifted(i, j) - shifted(j, x)) / 2;
            if (best_j < 0 || alpha > best) {
                best = alpha;
                best_j = j;
            }
        }

        const auto path = tree_path(tree, tree.topo.vertex_of_label(i),
                                    tree.topo.vertex_of_label(best_j));
        const Rat pendant = shifted(i, x) - best;
        if (best <= 0 || pendant <= 0)
            throw std::runtime_error(
                "tree_from_pair_table: four-point violation discovered during insertion");

        Rat cumulative = 0;
        int attach_vertex = -1;
        for (size_t t = 1; t < path.size(); ++t) {
            const Rat next = cumulative + tree.weights[path[t].edge_from_prev];
            if (next == best) {
                if (t + 1 == path.size())  // would attach at leaf best_j
                    throw std::runtime_error(
                        "tree_from_pair_table: four-point violation discovered during insertion");
                attach_vertex = path[t].vertex;
                break;
            }
            if (next > best) {
                // split the edge at offset best - cumulative from path[t-1]
                const int e = path[t].edge_from_prev;
                const int u = path[t - 1].vertex;
                const int v = path[t].vertex;
                const int mid = tree.topo.add_vertex();
                const Rat first_part = best - cumulative;
                const Rat second_part = next - best;
                // rewrite edge e as (u, mid), append (mid, v)
                tree.topo.edges[e] = {u, mid};
                tree.weights[e] = first_part;
                tree.topo.add_edge(mid, v);
                tree.weights.push_back(second_part);
                attach_vertex = mid;
                break;
            }
            cumulative = next;
        }
        if (attach_vertex < 0)
            throw std::runtime_error(
                "tree_from_pair_table: four-point violation discovered during insertion");

        const int leaf = tree.topo.add_vertex(x);
        tree.topo.add_edge(attach_vertex, leaf);
        tree.weights.push_back(pendant);
    }

    // undo the shift on the pendant edges, then certify the realization
    for (int label = 1; label <= n; ++label)
        tree.weights[pendant_edge(tree.topo, label)] -= m_shift;
    verify_pairwise(tree, table);
    return tree;
}

WeightedTree rescale_internal(const WeightedTree& tprime, const std::vector<QClass>& classes) {
    WeightedTree result = tprime;
    const auto splits = edge_splits(tprime.topo);
    const auto twig = twig_edge_flags(tprime.topo);
    const LeafSet universe = tprime.topo.label_set();
    std::vector<bool> matched(classes.size(), false);
    for (size_t e = 0; e < splits.size(); ++e) {
        if (twig[e]) continue;
        const LeafSet side = splits[e];
        const LeafSet other = universe & ~side;
        bool found = false;
        for (size_t c = 0; c < classes.size(); ++c) {
            const QClass& qc = classes[c];
            if ((qc.side_ab == side && qc.side_cd == other) ||
                (qc.side_ab == other && qc.side_cd == side)) {
                // both routes must agree: wtilde == 2 w'(e) / denominator
                if (qc.wtilde * Rat(static_cast<long>(qc.denominator)) != 2 * tprime.weights[e])
                    throw std::runtime_error(
                        "rescale_internal: S-sum weight disagrees with the pair-table tree");
                result.weights[e] = qc.wtilde;
                matched[c] = true;
                found = true;
                break;
            }
        }
        if (!found)
            throw std::runtime_error("rescale_internal: internal edge split matches no class");
    }
    for (size_t c = 0; c < classes.size(); ++c)
        if (!matched[c])
            throw std::runtime_error("rescale_internal: class matches no internal edge");
    return result;
}

std::vector<int> canonical_x(int n, int k, int i, int j) {
    std::vector<int> x;
    for (int v = 1; v <= n && static_cast<int>(x.size()) < k - 1; ++v)
        if (v != i && v != j) x.push_back(v);
    return x;
}

void for_each_x(int n, int k, int i, int j,
                const std::function<void(const std::vector<int>&)>& visit) {
    std::vector<int> rest;
    for (int v = 1; v <= n; ++v)
        if (v != i && v != j) rest.push_back(v);
    const int m = static_cast<int>(rest.size());
    if (n <= 9) {
        for_each_subset(m, k - 1, [&](const std::vector<int>& pick) {
            std::vector<int> x(k - 1);
            for (int t = 0; t < k - 1; ++t) x[t] = rest[pick[t] - 1];
            visit(x);
        });
        return;
    }
    // sampled sweep above desk scale, deterministic per pair
    std::mt19937_64 engine(0x5eedULL * 1'000'003 + static_cast<std::uint64_t>(i) * 1'009 + j);
    for (int sample = 0; sample < 64; ++sample) {
        std::vector<int> pool = rest;
        std::vector<int> x;
        for (int t = 0; t < k - 1; ++t) {
            const std::uint64_t span = pool.size() - t;
            const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() / span * span;
            std::uint64_t draw;
            do {
                draw = engine();
            } while (draw >= limit);
            const int pos = t + static_cast<int>(draw % span);
            std::swap(pool[t], pool[pos]);
            x.push_back(pool[t]);
        }
        std::sort(x.begin(), x.end());
        visit(x);
    }
}

Rat delta(const KDissimilarityFamily& family, const std::vector<QClass>& classes, int i, int j,
          const std::vector<int>& x, QMembership membership) {
    if (i == j) throw std::invalid_argument("delta: i and j must differ");
    if (static_cast<int>(x.size()) != family.k() - 1)
        throw std::invalid_argument("delta: |X| must be k-1");
    LeafSet mask = 0;
    for (int v : x) mask |= leaf_bit(v);
    if (contains(mask, i) || contains(mask, j))
        throw std::invalid_argument("delta: X must avoid i and j");
    const LeafSet ix = mask | leaf_bit(i);
    const LeafSet jx = mask | leaf_bit(j);
    return family.at_set(jx) - family.at_set(ix) + q_hat(classes, ix, membership) -
           q_hat(classes, jx, membership);
}

Rat tau(const KDissimilarityFamily& family, const std::vector<QClass>& classes, int i,
        const std::vector<int>& big_i, QMembership membership) {
    const int n = family.n();
    const int k = family.k();
    Rat total = family.at(big_i);
    for (int j : big_i) {
        if (j == i) continue;
        total -= delta(family, classes, i, j, canonical_x(n, k, i, j), membership);
    }
    LeafSet mask = 0;
    for (int v : big_i) mask |= leaf_bit(v);
    total -= q_hat(classes, mask, membership);
    return total;
}

Rat literal_pairwise_sum(const KDissimilarityFamily& family, const std::vector<QClass>& classes,
                         const std::vector<int>& big_i) {
    const int n = family.n();
    const int k = family.k();
    Rat total = 0;
    for (int i : big_i) {
        for (int j : big_i) {
            if (i == j) continue;
            // symmetric choice: X_{ij} = X_{ji}
            const auto x = canonical_x(n, k, std::min(i, j), std::max(i, j));
            LeafSet mask = 0;
            for (int v : x) mask |= leaf_bit(v);
            const LeafSet ix = mask | leaf_bit(i);
            const LeafSet jx = mask | leaf_bit(j);
            // the half sits on the D difference only, as displayed
            total += (family.at_set(jx) - family.at_set(ix)) / 2 + q_hat(classes, ix) -
                     q_hat(classes, jx);
        }
    }
    return total;
}

namespace {

FailureWitness make_failure(std::string stage, std::vector<int> indices, std::string detail) {
    return FailureWitness{std::move(stage), std::move(indices), std::move(detail)};
}

}  // namespace

ReconstructOutcome reconstruct(const KDissimilarityFamily& family) {
    const int n = family.n();
    const int k = family.k();
    ReconstructOutcome outcome;

    // stage 1: S table
    const PairTable table = s_table(family);

    // stage 2: four-point condition
    if (n >= 4) {
        if (const auto witness = four_point_check(table)) {
            outcome.failure = make_failure("four_point_condition",
                                           {witness->a, witness->b, witness->c, witness->d},
                                           "maximum pairing sum attained only once");
            return outcome;
        }
    }

    // stage 3: realize the pair table
    WeightedTree tprime;
    try {
        tprime = tree_from_pair_table(table);
    } catch (const std::exception& ex) {
        outcome.failure = make_failure("pair_table_realization", {}, ex.what());
        return outcome;
    }

    if (k == 2) {
        // the pair-table realization is already the answer
        ReconstructionResult result;
        result.tree = std::move(tprime);
        for (int i = 1; i <= n; ++i) result.tau[i] = 2 * twig_weight(result.tree, i);
        outcome.result = std::move(result);
        return outcome;
    }

    // stage 4: pseudostar of kind (n,k)
    if (!is_pseudostar(tprime.topo, k)) {
        const auto splits = edge_splits(tprime.topo);
        std::vector<int> witness;
        for (const LeafSet side : splits) {
            const int s = popcount(side);
            if (std::max(s, n - s) < k) {
                witness = to_labels(side);
                break;
            }
        }
        outcome.failure =
            make_failure("pseudostar", witness, "edge split with both sides smaller than k");
        return outcome;
    }

    // stage 5: quartet classes and internal rescaling
    std::vector<QClass> classes;
    WeightedTree rescaled;
    try {
        classes = q_classes(table, k);
        rescaled = rescale_internal(tprime, classes);
    } catch (const std::exception& ex) {
        outcome.failure = make_failure("q_classes", {}, ex.what());
        return outcome;
    }

    // stage 6: twig weights, with constancy sweeps over X and I
    for (int i = 1; i <= n; ++i) {
        for (int j = i + 1; j <= n; ++j) {
            std::optional<Rat> seen;
            std::vector<int> seen_x;
            std::optional<FailureWitness> sweep_failure;
            for_each_x(n, k, i, j, [&](const std::vector<int>& x) {
                if (sweep_failure) return;
                const Rat value = delta(family, classes, i, j, x);
                if (!seen) {
                    seen = value;
                    seen_x = x;
                } else if (*seen != value) {
                    std::vector<int> indices{i, j};
                    indices.insert(indices.end(), seen_x.begin(), seen_x.end());
                    indices.insert(indices.end(), x.begin(), x.end());
                    sweep_failure = make_failure("twig_constancy", indices,
                                                 "Delta(i,j,X) depends on X");
                }
            });
            if (sweep_failure) {
                outcome.failure = std::move(sweep_failure);
                return outcome;
            }
        }
    }

    std::map<int, Rat> tau_map;
    for (int i = 1; i <= n; ++i) {
        std::optional<Rat> seen;
        std::vector<int> seen_i;
        std::optional<FailureWitness> sweep_failure;
        for_each_subset(n, k, [&](const std::vector<int>& big_i) {
            if (sweep_failure) return;
            const Rat value = tau(family, classes, i, big_i);
            if (!seen) {
                seen = value;
                seen_i = big_i;
            } else if (*seen != value) {
                std::vector<int> indices{i};
                indices.insert(indices.end(), seen_i.begin(), seen_i.end());
                indices.insert(indices.end(), big_i.begin(), big_i.end());
                sweep_failure = make_failure("twig_constancy", indices, "tau_i depends on I");
            }
        });
        if (sweep_failure) {
            outcome.failure = std::move(sweep_failure);
            return outcome;
        }
        tau_map[i] = *seen;
    }

    WeightedTree final_tree = std::move(rescaled);
    for (int i = 1; i <= n; ++i)
        final_tree.weights[pendant_edge(final_tree.topo, i)] = tau_map.at(i) / k;

    ReconstructionResult result;
    result.tree = std::move(final_tree);
    result.tau = std::move(tau_map);
    // record the class -> edge assignment on the final tree
    const auto splits = edge_splits(result.tree.topo);
    const LeafSet universe = result.tree.topo.label_set();
    for (const QClass& qc : classes) {
        int assigned = -1;
        for (size_t e = 0; e < splits.size(); ++e) {
            if (splits[e] == qc.side_ab || splits[e] == (universe & ~qc.side_ab)) {
                assigned = static_cast<int>(e);
                break;
            }
        }
        result.class_edge.push_back(assigned);
    }
    result.classes = std::move(classes);
    outcome.result = std::move(result);
    return outcome;
}

}  // namespace treelike
