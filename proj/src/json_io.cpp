#include "treelike/json_io.hpp"

#include <nlohmann/json.hpp>
#include <stdexcept>

#include "treelike/newick.hpp"

namespace treelike {

namespace {

using nlohmann::json;

Rat value_from_json(const json& j) {
    if (j.is_string()) return rat_from_string(j.get<std::string>());
    if (j.is_number_integer()) return Rat(static_cast<long>(j.get<std::int64_t>()));
    if (j.is_number_unsigned()) return Rat(static_cast<unsigned long>(j.get<std::uint64_t>()));
    if (j.is_number_float()) {
        Rat value;
        value = j.get<double>();  // exact binary-to-rational conversion
        return value;
    }
    throw std::invalid_argument("family JSON: entry value must be a number or string");
}

json value_to_json(const Rat& value) {
    if (value.get_den() == 1 && value.get_num().fits_slong_p())
        return json(static_cast<std::int64_t>(value.get_num().get_si()));
    return json(rat_to_string(value));
}

std::vector<int> subset_from_json(const json& j, int expected, int n) {
    if (!j.is_array() || static_cast<int>(j.size()) != expected)
        throw std::invalid_argument("family JSON: \"I\" must list exactly " +
                                    std::to_string(expected) + " labels");
    std::vector<int> subset;
    int prev = 0;
    for (const auto& element : j) {
        if (!element.is_number_integer())
            throw std::invalid_argument("family JSON: labels must be integers");
        const int label = element.get<int>();
        if (label <= prev || label > n)
            throw std::invalid_argument("family JSON: labels must be sorted, distinct, in 1..n");
        subset.push_back(label);
        prev = label;
    }
    return subset;
}

}  // namespace

KDissimilarityFamily family_from_json(const json& j) {
    if (!j.is_object() || !j.contains("n") || !j.contains("k") || !j.contains("entries"))
        throw std::invalid_argument("family JSON: need object with n, k, entries");
    const int n = j.at("n").get<int>();
    const int k = j.at("k").get<int>();
    if (n < 3 || n > kMaxLabels) throw std::invalid_argument("family JSON: n out of range");
    if (k < 2 || k > n - 1) throw std::invalid_argument("family JSON: k out of range");
    KDissimilarityFamily family(n, k);
    std::vector<bool> seen(family.size(), false);
    const auto& entries = j.at("entries");
    if (!entries.is_array()) throw std::invalid_argument("family JSON: entries must be an array");
    for (const auto& entry : entries) {
        const auto subset = subset_from_json(entry.at("I"), k, n);
        const long long rank = subset_rank(subset, n);
        if (seen[rank]) throw std::invalid_argument("family JSON: duplicate subset");
        seen[rank] = true;
        family.values()[rank] = value_from_json(entry.at("D"));
    }
    for (bool covered : seen) {
        if (!covered)
            throw std::invalid_argument("family JSON: must cover all C(n,k) subsets exactly once");
    }
    return family;
}

json family_to_json(const KDissimilarityFamily& family) {
    json entries = json::array();
    long long index = 0;
    for_each_subset(family.n(), family.k(), [&](const std::vector<int>& subset) {
        entries.push_back({{"I", subset}, {"D", value_to_json(family.values()[index++])}});
    });
    return json{{"n", family.n()}, {"k", family.k()}, {"entries", std::move(entries)}};
}

PairTable pair_table_from_json(const json& j) {
    if (!j.is_object() || !j.contains("n") || !j.contains("entries"))
        throw std::invalid_argument("pair table JSON: need object with n, entries");
    const int n = j.at("n").get<int>();
    if (n < 2 || n > kMaxLabels) throw std::invalid_argument("pair table JSON: n out of range");
    PairTable table(n);
    std::vector<bool> seen(binomial(n, 2), false);
    for (const auto& entry : j.at("entries")) {
        const auto pair = subset_from_json(entry.at("I"), 2, n);
        const long long rank = subset_rank(pair, n);
        if (seen[rank]) throw std::invalid_argument("pair table JSON: duplicate pair");
        seen[rank] = true;
        table.at(pair[0], pair[1]) = value_from_json(entry.at("D"));
    }
    for (bool covered : seen) {
        if (!covered) throw std::invalid_argument("pair table JSON: must cover all pairs");
    }
    return table;
}

json pair_table_to_json(const PairTable& table) {
    json entries = json::array();
    for (int i = 1; i <= table.n(); ++i)
        for (int j2 = i + 1; j2 <= table.n(); ++j2)
            entries.push_back({{"I", std::vector<int>{i, j2}}, {"D", value_to_json(table.at(i, j2))}});
    return json{{"n", table.n()}, {"entries", std::move(entries)}};
}

namespace {

json condition_to_json(const ConditionResult& result) {
    json j;
    switch (result.status) {
        case ConditionResult::Status::Pass:
            j["status"] = "pass";
            break;
        case ConditionResult::Status::Violation:
            j["status"] = "violation";
            break;
        case ConditionResult::Status::NotApplicable:
            j["status"] = "not_applicable";
            break;
        case ConditionResult::Status::Error:
            j["status"] = "error";
            break;
    }
    if (!result.witness.empty()) j["witness"] = result.witness;
    if (!result.detail.empty()) j["detail"] = result.detail;
    return j;
}

}  // namespace

json verdict_to_json(const Verdict& verdict, bool include_diagnostics) {
    json j;
    j["ip_l_treelike"] = verdict.ip_l_treelike;
    j["p_l_treelike"] = verdict.p_l_treelike;
    j["tree"] = verdict.tree ? json(to_newick(*verdict.tree)) : json(nullptr);
    if (verdict.tree) {
        json tau = json::object();
        for (const auto& [leaf, value] : verdict.tau) tau[std::to_string(leaf)] = rat_to_string(value);
        j["tau"] = std::move(tau);
    } else {
        j["tau"] = nullptr;
    }
    if (include_diagnostics) {
        j["diagnostics"] = json{{"condition_i", condition_to_json(verdict.cond_i)},
                                {"condition_ii", condition_to_json(verdict.cond_ii)},
                                {"condition_iii", condition_to_json(verdict.cond_iii)},
                                {"condition_iv", condition_to_json(verdict.cond_iv)},
                                {"relaxed_four_point", condition_to_json(verdict.relaxed)}};
    }
    if (verdict.witness) {
        j["witness"] = json{{"stage", verdict.witness->stage},
                            {"indices", verdict.witness->indices},
                            {"detail", verdict.witness->detail}};
    } else {
        j["witness"] = nullptr;
    }
    return j;
}

KDissimilarityFamily family_from_json_text(const std::string& text) {
    json parsed;
    try {
        parsed = json::parse(text);
    } catch (const json::parse_error& ex) {
        throw std::invalid_argument(std::string("family JSON: ") + ex.what());
    }
    return family_from_json(parsed);
}

}  // namespace treelike
