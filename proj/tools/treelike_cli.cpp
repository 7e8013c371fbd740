// Command-line surface for k-dissimilarity computation, treelike decision,
// reconstruction, and the brute-force oracle.

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "treelike/checker.hpp"
#include "treelike/json_io.hpp"
#include "treelike/newick.hpp"
#include "treelike/oracle.hpp"
#include "treelike/reconstruction.hpp"

namespace {

using nlohmann::json;
using namespace treelike;

constexpr int kExitAffirmative = 0;
constexpr int kExitNegative = 1;
constexpr int kExitUsage = 2;

std::string read_input(const std::string& path) {
    if (path == "-") {
        std::ostringstream buffer;
        buffer << std::cin.rdbuf();
        return buffer.str();
    }
    std::ifstream file(path);
    if (!file) throw std::invalid_argument("cannot open input file: " + path);
    std::ostringstream buffer;
    buffer << file.rdbuf();
    return buffer.str();
}

void write_output(const std::string& path, const std::string& content) {
    if (path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream file(path);
    if (!file) throw std::invalid_argument("cannot open output file: " + path);
    file << content;
}

int cmd_kweights(const std::string& tree_file, int k, const std::string& out_file) {
    const WeightedTree tree = parse_newick(read_input(tree_file));
    const int n = tree.topo.n_leaves();
    if (k < 2 || k > n - 1)
        throw std::invalid_argument("k must satisfy 2 <= k <= n-1 (n = " + std::to_string(n) + ")");
    const KDissimilarityFamily family = k_dissimilarity(tree, k);
    write_output(out_file, family_to_json(family).dump(2) + "\n");
    return kExitAffirmative;
}

int cmd_check(const std::string& family_file, bool diagnostics, const std::string& out_file) {
    const KDissimilarityFamily family = family_from_json_text(read_input(family_file));
    const Verdict verdict = decide(family);
    const std::string rendered = verdict_to_json(verdict, diagnostics).dump(2) + "\n";
    std::cout << rendered;
    if (!out_file.empty() && out_file != "-") write_output(out_file, rendered);
    return verdict.ip_l_treelike ? kExitAffirmative : kExitNegative;
}

int cmd_reconstruct(const std::string& family_file, const std::string& out_file) {
    const KDissimilarityFamily family = family_from_json_text(read_input(family_file));
    const Verdict verdict = decide(family);
    if (!verdict.ip_l_treelike) {
        if (verdict.witness) {
            std::cerr << "not ip-l-treelike: stage " << verdict.witness->stage;
            if (!verdict.witness->indices.empty()) {
                std::cerr << ", witness (";
                for (size_t i = 0; i < verdict.witness->indices.size(); ++i)
                    std::cerr << (i ? "," : "") << verdict.witness->indices[i];
                std::cerr << ")";
            }
            std::cerr << "\n";
        } else {
            std::cerr << "not ip-l-treelike\n";
        }
        return kExitNegative;
    }
    write_output(out_file, to_newick(*verdict.tree) + "\n");
    return kExitAffirmative;
}

int cmd_roundtrip(int n, int k, int trials, std::uint64_t seed) {
    if (n < 4 || n > 9) throw std::invalid_argument("roundtrip: 4 <= n <= 9");
    if (k < 3 || k > n - 1) throw std::invalid_argument("roundtrip: 3 <= k <= n-1");
    if (trials < 1) throw std::invalid_argument("roundtrip: trials must be positive");
    for (int trial = 0; trial < trials; ++trial) {
        const WeightedTree tree = random_pseudostar(n, k, seed + trial);
        const KDissimilarityFamily family = k_dissimilarity(tree, k);
        const Verdict verdict = decide(family);
        const bool tree_matches =
            verdict.ip_l_treelike && same_weighted_tree(tree, *verdict.tree);
        if (!tree_matches) {
            std::cerr << "roundtrip failed at trial " << trial << " (seed " << seed + trial
                      << ")\n  source tree: " << to_newick(tree) << "\n";
            if (verdict.ip_l_treelike)
                std::cerr << "  reconstructed: " << to_newick(*verdict.tree) << "\n";
            else if (verdict.witness)
                std::cerr << "  decision failed at stage " << verdict.witness->stage << "\n";
            return kExitNegative;
        }
    }
    std::cout << trials << " roundtrips exact (n=" << n << ", k=" << k << ", seed=" << seed
              << ")\n";
    return kExitAffirmative;
}

int cmd_oracle(const std::string& family_file) {
    const KDissimilarityFamily family = family_from_json_text(read_input(family_file));
    if (family.n() > 8) throw std::invalid_argument("oracle: supports n <= 8 only");
    const auto [ip, p] = brute_decide(family);
    json realizations = json::array();
    const TopologyCatalog catalog = enumerate_topologies(family.n());
    for (const Topology& topo : catalog.topologies) {
        const Realization any = realize_exact(topo, family, SignConstraint::None);
        if (any.kind == Realization::Kind::None) continue;
        const bool internal_positive =
            realize_exact(topo, family, SignConstraint::InternalPositive).kind !=
            Realization::Kind::None;
        const bool all_positive = realize_exact(topo, family, SignConstraint::AllPositive).kind !=
                                  Realization::Kind::None;
        realizations.push_back({{"tree", to_newick(any.witness)},
                                {"unique", any.kind == Realization::Kind::Unique},
                                {"solution_dimension", any.dimension},
                                {"internal_positive", internal_positive},
                                {"all_positive", all_positive}});
    }
    const json output{{"ip_l_treelike", ip}, {"p_l_treelike", p},
                      {"realizations", std::move(realizations)}};
    std::cout << output.dump(2) << "\n";
    return ip ? kExitAffirmative : kExitNegative;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"k-dissimilarity families of weighted trees: compute, decide, reconstruct"};
    app.require_subcommand(1);

    std::string tree_file, family_file, out_file;
    int k = 0, n = 0, trials = 0;
    std::uint64_t seed = 0;
    bool diagnostics = false;

    auto* kweights = app.add_subcommand("kweights", "k-weights of a Newick tree");
    kweights->add_option("--tree", tree_file, "Newick file ('-' for stdin)")->required();
    kweights->add_option("--k", k, "subset size")->required();
    kweights->add_option("--out", out_file, "family JSON output ('-' for stdout)")->required();

    auto* check = app.add_subcommand("check", "decide whether a family is ip-l-treelike");
    check->add_option("--family", family_file, "family JSON ('-' for stdin)")->required();
    check->add_flag("--diagnostics", diagnostics, "include condition (i)-(iv) diagnostics");
    check->add_option("--out", out_file, "also write the verdict JSON here");

    auto* reconstruct_cmd = app.add_subcommand("reconstruct", "write the realizing tree");
    reconstruct_cmd->add_option("--family", family_file, "family JSON ('-' for stdin)")->required();
    reconstruct_cmd->add_option("--out", out_file, "Newick output ('-' for stdout)")->required();

    auto* roundtrip = app.add_subcommand("roundtrip", "random pseudostar roundtrip property run");
    roundtrip->add_option("--n", n, "leaf count (<= 9)")->required();
    roundtrip->add_option("--k", k, "subset size")->required();
    roundtrip->add_option("--trials", trials, "number of trials")->required();
    roundtrip->add_option("--seed", seed, "base seed (mandatory for reproducibility)")->required();

    auto* oracle_cmd = app.add_subcommand("oracle", "brute-force ground truth (n <= 8)");
    oracle_cmd->add_option("--family", family_file, "family JSON ('-' for stdin)")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (kweights->parsed()) return cmd_kweights(tree_file, k, out_file);
        if (check->parsed()) return cmd_check(family_file, diagnostics, out_file);
        if (reconstruct_cmd->parsed()) return cmd_reconstruct(family_file, out_file);
        if (roundtrip->parsed()) return cmd_roundtrip(n, k, trials, seed);
        if (oracle_cmd->parsed()) return cmd_oracle(family_file);
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
