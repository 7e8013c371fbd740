#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "treelike/dissimilarity.hpp"
#include "treelike/reconstruction.hpp"
#include "treelike/tree.hpp"

namespace treelike {

struct ConditionResult {
    enum class Status { Pass, Violation, NotApplicable, Error };
    Status status = Status::NotApplicable;
    std::vector<int> witness;
    std::string detail;

    static ConditionResult pass() { return {Status::Pass, {}, {}}; }
    static ConditionResult violation(std::vector<int> w, std::string d = {}) {
        return {Status::Violation, std::move(w), std::move(d)};
    }
    static ConditionResult not_applicable(std::string d = {}) {
        return {Status::NotApplicable, {}, std::move(d)};
    }
    static ConditionResult error(std::string d) { return {Status::Error, {}, std::move(d)}; }
};

/// Four-point condition on the S table.
ConditionResult condition_i(const KDissimilarityFamily& family);

/// For every quartet with equal cross sums, full L-set union and both sides
/// smaller than k, the third pairing sum must equal them.
ConditionResult condition_ii(const KDissimilarityFamily& family);

/// Delta(i,j,X) must not depend on X, for every pair.
ConditionResult condition_iii(const KDissimilarityFamily& family,
                              const std::vector<QClass>& classes);

/// tau_i(I) must not depend on I, for every i; fills `tau_out` on pass.
ConditionResult condition_iv(const KDissimilarityFamily& family,
                             const std::vector<QClass>& classes,
                             std::map<int, Rat>* tau_out = nullptr);

struct Verdict {
    bool ip_l_treelike = false;
    bool p_l_treelike = false;
    std::optional<WeightedTree> tree;
    std::map<int, Rat> tau;
    ConditionResult cond_i, cond_ii, cond_iii, cond_iv, relaxed;
    std::optional<FailureWitness> witness;
};

/// Decides ip-l-treelike and p-l-treelike. The decision path is
/// reconstruct-and-verify: a family is accepted only if the reconstructed
/// pseudostar reproduces every one of its C(n,k) values exactly. The four
/// theorem conditions are reported as diagnostics alongside.
Verdict decide(const KDissimilarityFamily& family);

}  // namespace treelike
