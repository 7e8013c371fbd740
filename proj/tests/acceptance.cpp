// Acceptance suite: one exact (zero-tolerance) check per criterion, one
// pass/fail line each. Exits nonzero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "treelike/checker.hpp"
#include "treelike/newick.hpp"
#include "treelike/oracle.hpp"
#include "treelike/reconstruction.hpp"

using namespace treelike;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

WeightedTree t5() { return parse_newick("(1:1,2:1,(3:1,4:1,5:1):2);"); }

// normalized split key: the side mask not containing leaf 1
LeafSet split_key(LeafSet side, LeafSet universe) {
    return contains(side, 1) ? (universe & ~side) : side;
}

std::map<LeafSet, Rat> internal_split_weights(const WeightedTree& tree) {
    std::map<LeafSet, Rat> result;
    const auto splits = edge_splits(tree.topo);
    const auto twig = twig_edge_flags(tree.topo);
    const LeafSet universe = tree.topo.label_set();
    for (size_t e = 0; e < splits.size(); ++e)
        if (!twig[e]) result.emplace(split_key(splits[e], universe), tree.weights[e]);
    return result;
}

// ---------------------------------------------------------------------------

bool criterion_1(std::string& note) {
    const auto start = Clock::now();
    const auto tree = t5();
    const auto family = k_dissimilarity(tree, 3);

    const PairTable table = s_table(family);
    for (int i = 1; i <= 5; ++i) {
        for (int j = i + 1; j <= 5; ++j) {
            const Rat expected = (i >= 3 && j >= 3) ? Rat(13) : Rat(15);
            if (table.at(i, j) != expected) {
                note = "S-table value off at (" + std::to_string(i) + "," + std::to_string(j) + ")";
                return false;
            }
        }
    }

    const auto classes = q_classes(table, 3);
    if (classes.size() != 1 || classes.front().wtilde != Rat(2)) {
        note = "expected a single class with wtilde = 2";
        return false;
    }

    const Verdict verdict = decide(family);
    if (!verdict.ip_l_treelike || !verdict.p_l_treelike) {
        note = "F5 must decide treelike";
        return false;
    }
    for (int i = 1; i <= 5; ++i) {
        if (verdict.tau.at(i) != Rat(3)) {
            note = "tau must be identically 3";
            return false;
        }
    }
    if (!same_weighted_tree(*verdict.tree, tree)) {
        note = "reconstructed tree differs from T5";
        return false;
    }

    const double elapsed = seconds_since(start);
    note = "exact worked-example values, " + std::to_string(elapsed) + " s";
    return elapsed < 1.0;
}

bool criterion_2(std::string& note) {
    const auto start = Clock::now();
    const std::vector<std::pair<int, int>> configs{{5, 3}, {6, 3}, {6, 4}, {7, 3},
                                                   {7, 4}, {7, 5}, {8, 4}, {9, 4}};
    int trials_total = 0;
    for (size_t c = 0; c < configs.size(); ++c) {
        const auto [n, k] = configs[c];
        for (int trial = 0; trial < 100; ++trial) {
            const std::uint64_t seed = 10'000 * (c + 1) + trial;
            const WeightedTree tree = random_pseudostar(n, k, seed);
            const auto outcome = reconstruct(k_dissimilarity(tree, k));
            if (!outcome.ok() || !same_weighted_tree(outcome.result->tree, tree)) {
                note = "roundtrip mismatch at (n=" + std::to_string(n) +
                       ",k=" + std::to_string(k) + ",seed=" + std::to_string(seed) + ")";
                return false;
            }
            ++trials_total;
        }
    }
    const double elapsed = seconds_since(start);
    note = std::to_string(trials_total) + " exact roundtrips, " + std::to_string(elapsed) + " s";
    return elapsed < 60.0;
}

bool criterion_3(std::string& note) {
    std::vector<KDissimilarityFamily> bases;
    int checked = 0;

    auto agree = [&](const KDissimilarityFamily& family) {
        const Verdict verdict = decide(family);
        const auto [ip, p] = brute_decide(family);
        ++checked;
        return verdict.ip_l_treelike == ip && verdict.p_l_treelike == p;
    };

    // exhaustive over the catalogs with seeded weight draws
    for (int n : {4, 5}) {
        const TopologyCatalog catalog = enumerate_topologies(n);
        for (size_t t = 0; t < catalog.topologies.size(); ++t) {
            for (int k = 3; k <= n - 1; ++k) {
                for (int draw = 0; draw < 10; ++draw) {
                    Rng rng(100'000 + 1'000 * t + 10 * k + draw);
                    WeightedTree tree;
                    tree.topo = catalog.topologies[t];
                    const auto twig = twig_edge_flags(tree.topo);
                    tree.weights.resize(tree.topo.edges.size());
                    for (size_t e = 0; e < tree.weights.size(); ++e)
                        tree.weights[e] = twig[e] ? rng.signed_rational(-5, 9, 2)
                                                  : rng.positive_rational(9, 2);
                    const auto family = k_dissimilarity(tree, k);
                    if (!agree(family)) {
                        note = "disagreement on a catalog draw (n=" + std::to_string(n) +
                               ", topology " + std::to_string(t) + ")";
                        return false;
                    }
                    bases.push_back(family);
                }
            }
        }
    }

    // 500 single-entry +-1 edits
    Rng rng(424242);
    for (int edit = 0; edit < 500; ++edit) {
        KDissimilarityFamily family = bases[edit % bases.size()];
        auto& value = family.values()[rng.uniform_int(0, static_cast<int>(family.size()) - 1)];
        value += rng.uniform_int(0, 1) ? 1 : -1;
        if (!agree(family)) {
            note = "disagreement on perturbed family #" + std::to_string(edit);
            return false;
        }
    }

    note = std::to_string(checked) + " decide/brute_decide agreements";
    return true;
}

// criteria 4-6 share the same 500 seeded internal-positive trees
struct ForwardRuns {
    int fourpoint_failures = 0;
    int pseudostar_failures = 0;
    int rescale_failures = 0;
    int runs = 0;
};

ForwardRuns forward_runs() {
    ForwardRuns result;
    int produced = 0;
    std::uint64_t seed = 7'000'000;
    while (produced < 500) {
        for (int n = 4; n <= 8 && produced < 500; ++n) {
            for (int k = 3; k <= n - 1 && produced < 500; ++k) {
                Rng rng(seed++);
                const WeightedTree tree = random_weighted_tree(n, rng, 9, 2);
                const auto family = k_dissimilarity(tree, k);
                const PairTable table = s_table(family);
                ++produced;
                ++result.runs;

                if (four_point_check(table)) {
                    ++result.fourpoint_failures;
                    continue;
                }
                const WeightedTree tprime = tree_from_pair_table(table);
                if (!is_pseudostar(tprime.topo, k)) {
                    ++result.pseudostar_failures;
                    continue;
                }
                const auto classes = q_classes(table, k);
                const WeightedTree rescaled = rescale_internal(tprime, classes);
                const auto source_internal = internal_split_weights(tree);
                const auto rescaled_internal = internal_split_weights(rescaled);
                for (const auto& [key, weight] : rescaled_internal) {
                    const auto found = source_internal.find(key);
                    if (found == source_internal.end() || found->second != weight) {
                        ++result.rescale_failures;
                        break;
                    }
                }
            }
        }
    }
    return result;
}

bool criterion_7(std::string& note) {
    auto family = k_dissimilarity(t5(), 3);

    auto edited = family;
    edited.at({1, 2, 3}) = 6;
    const Verdict broken = decide(edited);
    const auto brute_broken = brute_decide(edited);
    if (broken.ip_l_treelike || brute_broken.first) {
        note = "D_{1,2,3}=6 edit must decide false on both paths";
        return false;
    }
    if (!broken.witness || broken.witness->stage != "four_point_condition" ||
        broken.witness->indices != std::vector<int>{1, 3, 4, 5}) {
        note = "expected the four-point witness (1,3,4,5)";
        return false;
    }

    auto still_tree = family;
    still_tree.at({3, 4, 5}) = 4;
    const Verdict accepted = decide(still_tree);
    const auto brute_accepted = brute_decide(still_tree);
    if (!accepted.ip_l_treelike || !brute_accepted.first) {
        note = "D_{3,4,5}=4 edit must decide true on both paths";
        return false;
    }
    if (to_newick(*accepted.tree) != "(1:4/3,2:4/3,(3:4/3,4:4/3,5:4/3):1);") {
        note = "D_{3,4,5}=4 edit must yield twigs 4/3 over internal 1";
        return false;
    }

    const auto negative_twig = k_dissimilarity(parse_newick("(1:-1,2:1,(3:1,4:1,5:1):2);"), 3);
    const Verdict mixed = decide(negative_twig);
    const auto brute_mixed = brute_decide(negative_twig);
    if (!(mixed.ip_l_treelike && !mixed.p_l_treelike && brute_mixed.first &&
          !brute_mixed.second)) {
        note = "negative twig variant must be ip but not p on both paths";
        return false;
    }

    note = "all three hand variants, cross-checked against the oracle";
    return true;
}

bool criterion_8(std::string& note) {
    for (int n = 4; n <= 6; ++n) {
        const TopologyCatalog catalog = enumerate_topologies(n);
        for (int k = 3; k <= n - 1; ++k) {
            for (std::uint64_t seed = 1; seed <= 5; ++seed) {
                const WeightedTree tree = random_pseudostar(n, k, 900'000 + seed);
                const auto family = k_dissimilarity(tree, k);
                int realizers = 0;
                for (const Topology& topo : catalog.topologies) {
                    if (!is_pseudostar(topo, k)) continue;
                    if (admits_internal_nonzero(topo, family)) ++realizers;
                }
                if (realizers != 1) {
                    note = "expected exactly one internal-nonzero pseudostar realization, got " +
                           std::to_string(realizers) + " at (n=" + std::to_string(n) +
                           ",k=" + std::to_string(k) + ")";
                    return false;
                }
            }
        }
    }
    note = "unique pseudostar realization across all catalogs up to n=6";
    return true;
}

bool criterion_9(std::string& note) {
    const TopologyCatalog catalog = enumerate_topologies(7);
    std::vector<std::vector<Rat>> vectors;
    vectors.reserve(catalog.topologies.size());
    for (size_t t = 0; t < catalog.topologies.size(); ++t) {
        Rng rng(300'000 + t);
        WeightedTree tree;
        tree.topo = catalog.topologies[t];
        tree.weights.resize(tree.topo.edges.size());
        for (auto& w : tree.weights) w = rng.positive_rational(9, 2);
        vectors.push_back(k_dissimilarity(tree, 3).values());
    }
    std::sort(vectors.begin(), vectors.end());
    for (size_t i = 1; i < vectors.size(); ++i) {
        if (vectors[i] == vectors[i - 1]) {
            note = "two distinct trees produced the same 3-dissimilarity family";
            return false;
        }
    }
    note = std::to_string(vectors.size()) + " catalog trees, all families distinct";
    return true;
}

bool criterion_10(std::string& note) {
    Rng rng(505'000);
    int agreements = 0;
    for (int trial = 0; trial < 100; ++trial) {
        WeightedTree tree;
        tree.topo = random_topology(7, rng);
        tree.weights.resize(tree.topo.edges.size());
        for (auto& w : tree.weights) w = rng.positive_rational(9, 2);
        KDissimilarityFamily family = k_dissimilarity(tree, 3);
        if (trial >= 50) {
            auto& value = family.values()[rng.uniform_int(0, static_cast<int>(family.size()) - 1)];
            value += rng.uniform_int(0, 1) ? 1 : -1;
        }
        const bool whole = decide(family).ip_l_treelike;
        bool conjunction = true;
        for (int drop = 1; drop <= 7; ++drop) {
            std::vector<int> keep;
            for (int v = 1; v <= 7; ++v)
                if (v != drop) keep.push_back(v);
            if (!decide(restrict_family(family, keep)).ip_l_treelike) {
                conjunction = false;
                break;
            }
        }
        if (whole != conjunction) {
            note = "restriction conjunction disagrees at trial " + std::to_string(trial);
            return false;
        }
        ++agreements;
    }
    note = std::to_string(agreements) + " families, decision equals 6-subset conjunction";
    return true;
}

}  // namespace

int main() {
    int failed = 0;
    const auto report = [&](int id, const std::string& label, bool ok, const std::string& note) {
        std::cout << (ok ? "[PASS]" : "[FAIL]") << " criterion " << id << ": " << label;
        if (!note.empty()) std::cout << " — " << note;
        std::cout << "\n" << std::flush;
        if (!ok) ++failed;
    };

    std::string note;

    note.clear();
    report(1, "worked-example suite on the five-leaf family", criterion_1(note), note);

    note.clear();
    report(2, "roundtrip A over eight (n,k) configurations", criterion_2(note), note);

    note.clear();
    report(3, "checker agrees with the brute-force oracle", criterion_3(note), note);

    const ForwardRuns runs = forward_runs();
    report(4, "S tables of tree families satisfy the four-point condition",
           runs.fourpoint_failures == 0,
           std::to_string(runs.runs) + " trees, " + std::to_string(runs.fourpoint_failures) +
               " failures");
    report(5, "pair-table realizations are pseudostars of kind (n,k)",
           runs.pseudostar_failures == 0,
           std::to_string(runs.pseudostar_failures) + " failures");
    report(6, "rescaled internal weights match the source tree exactly",
           runs.rescale_failures == 0, std::to_string(runs.rescale_failures) + " failures");

    note.clear();
    report(7, "hand-derived edits decide as specified", criterion_7(note), note);

    note.clear();
    report(8, "unique internal-nonzero pseudostar realization (n <= 6)", criterion_8(note), note);

    note.clear();
    report(9, "distinct trees give distinct families at (7,3)", criterion_9(note), note);

    note.clear();
    report(10, "decision equals the conjunction over 2k-subsets at (7,3)", criterion_10(note),
           note);

    if (failed != 0) {
        std::cout << failed << " criterion(s) failed\n";
        return 1;
    }
    std::cout << "all acceptance criteria passed\n";
    return 0;
}
