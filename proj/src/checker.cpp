#include "treelike/checker.hpp"

#include <stdexcept>

namespace treelike {

ConditionResult condition_i(const KDissimilarityFamily& family) {
    if (family.n() < 4) return ConditionResult::not_applicable("needs n >= 4");
    const auto witness = four_point_check(s_table(family));
    if (!witness) return ConditionResult::pass();
    return ConditionResult::violation({witness->a, witness->b, witness->c, witness->d},
                                      "maximum pairing sum attained only once");
}

ConditionResult condition_ii(const KDissimilarityFamily& family) {
    const int n = family.n();
    const int k = family.k();
    if (k < 3) return ConditionResult::not_applicable("needs k >= 3");
    if (n < 4) return ConditionResult::not_applicable("needs n >= 4");
    const PairTable table = s_table(family);
    const LeafSet everyone = full_leaf_set(n);
    for (int a = 1; a <= n; ++a) {
        for (int b = a + 1; b <= n; ++b) {
            for (int c = b + 1; c <= n; ++c) {
                for (int d = c + 1; d <= n; ++d) {
                    // the three pairings of {a,b,c,d}, each tested as (ab|cd)
                    const std::array<std::array<int, 4>, 3> pairings{
                        {{a, b, c, d}, {a, c, b, d}, {a, d, b, c}}};
                    for (const auto& p : pairings) {
                        const Rat cross1 = table.at(p[0], p[2]) + table.at(p[1], p[3]);
                        const Rat cross2 = table.at(p[0], p[3]) + table.at(p[1], p[2]);
                        if (cross1 != cross2) continue;
                        const LeafSet lab = l_set(table, p[0], p[1], p[2], p[3], true);
                        const LeafSet lcd = l_set(table, p[0], p[1], p[2], p[3], false);
                        if ((lab | lcd) != everyone) continue;
                        if (popcount(lab) >= k || popcount(lcd) >= k) continue;
                        const Rat own = table.at(p[0], p[1]) + table.at(p[2], p[3]);
                        if (own != cross1)
                            return ConditionResult::violation(
                                {p[0], p[1], p[2], p[3]},
                                "small-sided bridge with a strictly smaller pairing sum");
                    }
                }
            }
        }
    }
    return ConditionResult::pass();
}

ConditionResult condition_iii(const KDissimilarityFamily& family,
                              const std::vector<QClass>& classes) {
    const int n = family.n();
    const int k = family.k();
    if (k < 3) return ConditionResult::not_applicable("needs k >= 3");
    for (int i = 1; i <= n; ++i) {
        for (int j = i + 1; j <= n; ++j) {
            std::optional<Rat> seen;
            std::vector<int> seen_x;
            std::optional<ConditionResult> failure;
            for_each_x(n, k, i, j, [&](const std::vector<int>& x) {
                if (failure) return;
                const Rat value = delta(family, classes, i, j, x);
                if (!seen) {
                    seen = value;
                    seen_x = x;
                } else if (*seen != value) {
                    std::vector<int> w{i, j};
                    w.insert(w.end(), seen_x.begin(), seen_x.end());
                    w.insert(w.end(), x.begin(), x.end());
                    failure =
                        ConditionResult::violation(std::move(w), "Delta(i,j,X) depends on X");
                }
            });
            if (failure) return *failure;
        }
    }
    return ConditionResult::pass();
}

ConditionResult condition_iv(const KDissimilarityFamily& family,
                             const std::vector<QClass>& classes, std::map<int, Rat>* tau_out) {
    const int n = family.n();
    const int k = family.k();
    if (k < 3) return ConditionResult::not_applicable("needs k >= 3");
    std::map<int, Rat> result;
    for (int i = 1; i <= n; ++i) {
        std::optional<Rat> seen;
        std::vector<int> seen_i;
        std::optional<ConditionResult> failure;
        for_each_subset(n, k, [&](const std::vector<int>& big_i) {
            if (failure) return;
            const Rat value = tau(family, classes, i, big_i);
            if (!seen) {
                seen = value;
                seen_i = big_i;
            } else if (*seen != value) {
                std::vector<int> w{i};
                w.insert(w.end(), seen_i.begin(), seen_i.end());
                w.insert(w.end(), big_i.begin(), big_i.end());
                failure = ConditionResult::violation(std::move(w), "tau_i depends on I");
            }
        });
        if (failure) return *failure;
        result[i] = *seen;
    }
    if (tau_out) *tau_out = std::move(result);
    return ConditionResult::pass();
}

namespace {

void fill_diagnostics(const KDissimilarityFamily& family, Verdict& verdict) {
    verdict.cond_i = condition_i(family);
    if (family.n() >= 4) {
        const auto witness = relaxed_four_point_check(s_table(family));
        verdict.relaxed = witness ? ConditionResult::violation(
                                        {witness->a, witness->b, witness->c, witness->d},
                                        "all three pairing sums distinct")
                                  : ConditionResult::pass();
    } else {
        verdict.relaxed = ConditionResult::not_applicable("needs n >= 4");
    }
    if (family.k() < 3) {
        verdict.cond_ii = ConditionResult::not_applicable("needs k >= 3");
        verdict.cond_iii = ConditionResult::not_applicable("needs k >= 3");
        verdict.cond_iv = ConditionResult::not_applicable("needs k >= 3");
        return;
    }
    verdict.cond_ii = condition_ii(family);
    try {
        const auto classes = q_classes(s_table(family), family.k());
        verdict.cond_iii = condition_iii(family, classes);
        verdict.cond_iv = condition_iv(family, classes);
    } catch (const std::exception& ex) {
        verdict.cond_iii = ConditionResult::error(ex.what());
        verdict.cond_iv = ConditionResult::error(ex.what());
    }
}

}  // namespace

Verdict decide(const KDissimilarityFamily& family) {
    Verdict verdict;
    fill_diagnostics(family, verdict);

    const int n = family.n();
    const int k = family.k();

    ReconstructOutcome outcome = reconstruct(family);
    if (!outcome.ok()) {
        verdict.witness = std::move(outcome.failure);
        return verdict;
    }

    // decisive test: the reconstructed tree must reproduce the family exactly
    const KDissimilarityFamily produced = k_dissimilarity(outcome.result->tree, k);
    for (long long r = 0; r < produced.size(); ++r) {
        if (produced.values()[r] != family.values()[r]) {
            verdict.witness = FailureWitness{"verification", subset_unrank(r, n, k),
                                             "reconstructed tree misses this k-weight"};
            return verdict;
        }
    }

    verdict.ip_l_treelike = true;
    verdict.tree = std::move(outcome.result->tree);
    verdict.tau = std::move(outcome.result->tau);
    verdict.p_l_treelike = true;
    for (const auto& [leaf, value] : verdict.tau) {
        if (value <= 0) verdict.p_l_treelike = false;
    }
    return verdict;
}

}  // namespace treelike
