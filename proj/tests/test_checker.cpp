#include <doctest.h>

#include "helpers.hpp"
#include "treelike/checker.hpp"
#include "treelike/newick.hpp"
#include "treelike/oracle.hpp"

using namespace treelike;
using namespace treelike::testing;

namespace {

KDissimilarityFamily f5_with(const std::vector<int>& subset, const Rat& value) {
    auto family = f5();
    family.at(subset) = value;
    return family;
}

KDissimilarityFamily star_family(int n, int k, const Rat& value) {
    KDissimilarityFamily family(n, k);
    for (auto& v : family.values()) v = value;
    return family;
}

}  // namespace

TEST_CASE("condition_i") {
    CHECK(condition_i(f5()).status == ConditionResult::Status::Pass);
    CHECK(condition_i(star_family(5, 3, 3)).status == ConditionResult::Status::Pass);
    const auto violated = condition_i(f5_with({1, 2, 3}, 6));
    CHECK(violated.status == ConditionResult::Status::Violation);
    CHECK(violated.witness == std::vector<int>{1, 3, 4, 5});
}

TEST_CASE("condition_i witnesses replay against the table") {
    const auto family = f5_with({1, 2, 3}, 6);
    const auto violated = condition_i(family);
    REQUIRE(violated.status == ConditionResult::Status::Violation);
    const auto table = s_table(family);
    const int a = violated.witness[0], b = violated.witness[1], c = violated.witness[2],
              d = violated.witness[3];
    const Rat s1 = table.at(a, b) + table.at(c, d);
    const Rat s2 = table.at(a, c) + table.at(b, d);
    const Rat s3 = table.at(a, d) + table.at(b, c);
    const Rat top = std::max({s1, s2, s3});
    CHECK(((s1 == top) + (s2 == top) + (s3 == top)) == 1);
    CHECK(s1 == Rat(29));
    CHECK(s2 == Rat(28));
    CHECK(s3 == Rat(28));
}

TEST_CASE("condition_ii") {
    CHECK(condition_ii(f5()).status == ConditionResult::Status::Pass);
    CHECK(condition_ii(t4_family()).status == ConditionResult::Status::Pass);
    CHECK(condition_ii(star_family(6, 4, 10)).status == ConditionResult::Status::Pass);
    // any family over n = 4 passes vacuously or through equal sums
    Rng rng(5);
    KDissimilarityFamily random4(4, 3);
    for (auto& v : random4.values()) v = rng.signed_rational(-9, 9, 3);
    CHECK(condition_ii(random4).status == ConditionResult::Status::Pass);
}

TEST_CASE("condition_iii") {
    const auto family = f5();
    const auto classes = q_classes(s_table(family), 3);
    CHECK(condition_iii(family, classes).status == ConditionResult::Status::Pass);

    const auto edited = f5_with({3, 4, 5}, 4);
    const auto edited_classes = q_classes(s_table(edited), 3);
    CHECK(condition_iii(edited, edited_classes).status == ConditionResult::Status::Pass);

    const auto spread = k_dissimilarity(parse_newick("(1:1,2:2,(3:3,4:4,5:5):2);"), 3);
    const auto spread_classes = q_classes(s_table(spread), 3);
    CHECK(condition_iii(spread, spread_classes).status == ConditionResult::Status::Pass);
}

TEST_CASE("condition_iv") {
    const auto family = f5();
    const auto classes = q_classes(s_table(family), 3);
    std::map<int, Rat> tau_map;
    CHECK(condition_iv(family, classes, &tau_map).status == ConditionResult::Status::Pass);
    for (int i = 1; i <= 5; ++i) CHECK(tau_map.at(i) == Rat(3));

    const auto edited = f5_with({3, 4, 5}, 4);
    const auto edited_classes = q_classes(s_table(edited), 3);
    tau_map.clear();
    CHECK(condition_iv(edited, edited_classes, &tau_map).status == ConditionResult::Status::Pass);
    for (int i = 1; i <= 5; ++i) CHECK(tau_map.at(i) == Rat(4));

    const auto star = star_family(5, 3, 3);
    const auto star_classes = q_classes(s_table(star), 3);
    tau_map.clear();
    CHECK(condition_iv(star, star_classes, &tau_map).status == ConditionResult::Status::Pass);
    for (int i = 1; i <= 5; ++i) CHECK(tau_map.at(i) == Rat(3));
}

TEST_CASE("decide on F5") {
    const auto verdict = decide(f5());
    CHECK(verdict.ip_l_treelike);
    CHECK(verdict.p_l_treelike);
    REQUIRE(verdict.tree.has_value());
    CHECK(same_weighted_tree(*verdict.tree, t5()));
    CHECK(verdict.cond_i.status == ConditionResult::Status::Pass);
    CHECK(verdict.cond_ii.status == ConditionResult::Status::Pass);
    CHECK(verdict.cond_iii.status == ConditionResult::Status::Pass);
    CHECK(verdict.cond_iv.status == ConditionResult::Status::Pass);
    CHECK(verdict.relaxed.status == ConditionResult::Status::Pass);
}

TEST_CASE("decide on the negative and positive edits") {
    const auto broken = decide(f5_with({1, 2, 3}, 6));
    CHECK(!broken.ip_l_treelike);
    CHECK(!broken.p_l_treelike);
    CHECK(!broken.tree.has_value());
    REQUIRE(broken.witness.has_value());
    CHECK(broken.witness->stage == "four_point_condition");
    CHECK(broken.witness->indices == std::vector<int>{1, 3, 4, 5});

    const auto still_tree = decide(f5_with({3, 4, 5}, 4));
    CHECK(still_tree.ip_l_treelike);
    CHECK(still_tree.p_l_treelike);
    CHECK(to_newick(*still_tree.tree) == "(1:4/3,2:4/3,(3:4/3,4:4/3,5:4/3):1);");
}

TEST_CASE("decide separates ip from p on a negative twig") {
    const auto tree = parse_newick("(1:-1,2:1,(3:1,4:1,5:1):2);");
    const auto verdict = decide(k_dissimilarity(tree, 3));
    CHECK(verdict.ip_l_treelike);
    CHECK(!verdict.p_l_treelike);
    CHECK(verdict.tau.at(1) == Rat(-3));
    CHECK(verdict.tau.at(2) == Rat(3));
    CHECK(same_weighted_tree(*verdict.tree, tree));
}

TEST_CASE("decide handles k = 2 through the pair-table route") {
    const auto family = k_dissimilarity(t5(), 2);
    const auto verdict = decide(family);
    CHECK(verdict.ip_l_treelike);
    CHECK(verdict.p_l_treelike);
    CHECK(same_weighted_tree(*verdict.tree, t5()));
    for (int i = 1; i <= 5; ++i) CHECK(verdict.tau.at(i) == 2 * twig_weight(t5(), i));
    CHECK(verdict.cond_ii.status == ConditionResult::Status::NotApplicable);

    auto broken = family;
    broken.at({1, 2}) = 100;
    const auto negative = decide(broken);
    CHECK(!negative.ip_l_treelike);
    REQUIRE(negative.witness.has_value());
    CHECK(negative.witness->stage == "four_point_condition");
}

TEST_CASE("decide agrees with the brute-force oracle on random families") {
    int checked = 0;
    for (std::uint64_t seed = 1; seed <= 60; ++seed) {
        const int n = 5;
        const int k = 3 + static_cast<int>(seed % 2);
        Rng rng(seed);
        KDissimilarityFamily family(n, k);
        if (seed % 3 == 0) {
            for (auto& v : family.values()) v = rng.signed_rational(1, 12, 2);
        } else {
            // treelike base, sometimes perturbed
            family = k_dissimilarity(random_weighted_tree(n, rng, 6, 2), k);
            if (seed % 3 == 1) {
                auto& value = family.values()[rng.uniform_int(0, static_cast<int>(family.size()) - 1)];
                value += rng.uniform_int(0, 1) ? 1 : -1;
            }
        }
        const auto verdict = decide(family);
        const auto [ip, p] = brute_decide(family);
        CHECK(verdict.ip_l_treelike == ip);
        CHECK(verdict.p_l_treelike == p);
        ++checked;
    }
    CHECK(checked == 60);
}

TEST_CASE("restriction conjunction matches the decision at (7,3)") {
    Rng rng(77);
    for (int trial = 0; trial < 4; ++trial) {
        auto family = k_dissimilarity(random_weighted_tree(7, rng, 5, 2), 3);
        if (trial % 2 == 1) {
            auto& value = family.values()[rng.uniform_int(0, static_cast<int>(family.size()) - 1)];
            value += 1;
        }
        const bool whole = decide(family).ip_l_treelike;
        bool all_restrictions = true;
        for (int drop = 1; drop <= 7; ++drop) {
            std::vector<int> keep;
            for (int v = 1; v <= 7; ++v)
                if (v != drop) keep.push_back(v);
            if (!decide(restrict_family(family, keep)).ip_l_treelike) all_restrictions = false;
        }
        CHECK(whole == all_restrictions);
    }
}
