#pragma once

#include <nlohmann/json_fwd.hpp>
#include <string>

#include "treelike/checker.hpp"
#include "treelike/dissimilarity.hpp"

namespace treelike {

// Family JSON: {"n": int, "k": int, "entries": [{"I": [sorted ints],
// "D": "p/q" | number}, ...]} covering all C(n,k) subsets exactly once.
// Values given as JSON strings are parsed exactly ("p/q" or decimal);
// integer JSON numbers are exact as well.
KDissimilarityFamily family_from_json(const nlohmann::json& j);
nlohmann::json family_to_json(const KDissimilarityFamily& family);

// PairTable JSON is analogous with 2-element "I" and no "k".
PairTable pair_table_from_json(const nlohmann::json& j);
nlohmann::json pair_table_to_json(const PairTable& table);

nlohmann::json verdict_to_json(const Verdict& verdict, bool include_diagnostics);

KDissimilarityFamily family_from_json_text(const std::string& text);

}  // namespace treelike
