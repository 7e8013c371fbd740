#include "treelike/dissimilarity.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace treelike {

KDissimilarityFamily::KDissimilarityFamily(int n, int k) : n_(n), k_(k) {
    if (n < 3 || n > kMaxLabels) throw std::invalid_argument("family: n out of range");
    if (k < 2 || k > n - 1) throw std::invalid_argument("family: k out of range (2 <= k <= n-1)");
    values_.resize(binomial(n, k));
}

const Rat& KDissimilarityFamily::at(const std::vector<int>& subset) const {
    if (static_cast<int>(subset.size()) != k_) throw std::invalid_argument("family: wrong subset size");
    return values_[subset_rank(subset, n_)];
}

Rat& KDissimilarityFamily::at(const std::vector<int>& subset) {
    if (static_cast<int>(subset.size()) != k_) throw std::invalid_argument("family: wrong subset size");
    return values_[subset_rank(subset, n_)];
}

const Rat& KDissimilarityFamily::at_set(LeafSet subset) const { return at(to_labels(subset)); }

PairTable::PairTable(int n) : n_(n) {
    if (n < 2 || n > kMaxLabels) throw std::invalid_argument("pair table: n out of range");
    values_.resize(binomial(n, 2));
}

namespace {

long long pair_index(int i, int j, int n) {
    if (i == j || i < 1 || j < 1 || i > n || j > n)
        throw std::invalid_argument("pair table: bad indices");
    if (i > j) std::swap(i, j);
    // lexicographic rank of {i,j}
    return static_cast<long long>(i - 1) * n - static_cast<long long>(i - 1) * i / 2 + (j - i - 1);
}

}  // namespace

const Rat& PairTable::at(int i, int j) const { return values_[pair_index(i, j, n_)]; }
Rat& PairTable::at(int i, int j) { return values_[pair_index(i, j, n_)]; }

PairTable s_table(const KDissimilarityFamily& family) {
    const int n = family.n();
    const int k = family.k();
    PairTable table(n);
    for (int i = 1; i <= n; ++i) {
        for (int j = i + 1; j <= n; ++j) {
            Rat sum = 0;
            // all (k-2)-subsets Y of [n]-{i,j}; for k = 2 only Y = {}
            std::vector<int> rest;
            for (int x = 1; x <= n; ++x)
                if (x != i && x != j) rest.push_back(x);
            std::vector<int> subset(k);
            subset[0] = i;
            subset[1] = j;
            const int m = static_cast<int>(rest.size());
            std::vector<int> pick(k - 2);
            std::iota(pick.begin(), pick.end(), 0);
            while (true) {
                for (int t = 0; t < k - 2; ++t) subset[2 + t] = rest[pick[t]];
                std::vector<int> sorted = subset;
                std::sort(sorted.begin(), sorted.end());
                sum += family.at(sorted);
                if (k == 2) break;
                int t = k - 3;
                while (t >= 0 && pick[t] == m - (k - 2 - t)) --t;
                if (t < 0) break;
                ++pick[t];
                for (int u = t + 1; u < k - 2; ++u) pick[u] = pick[u - 1] + 1;
            }
            table.at(i, j) = sum;
        }
    }
    return table;
}

namespace {

template <typename Check>
std::optional<QuadrupleWitness> scan_quadruples(int n, Check&& check) {
    for (int a = 1; a <= n; ++a)
        for (int b = a + 1; b <= n; ++b)
            for (int c = b + 1; c <= n; ++c)
                for (int d = c + 1; d <= n; ++d)
                    if (!check(a, b, c, d)) return QuadrupleWitness{a, b, c, d};
    return std::nullopt;
}

}  // namespace

std::optional<QuadrupleWitness> four_point_check(const PairTable& table) {
    if (table.n() < 4) throw std::invalid_argument("four-point check needs n >= 4");
    return scan_quadruples(table.n(), [&](int a, int b, int c, int d) {
        const Rat s1 = table.at(a, b) + table.at(c, d);
        const Rat s2 = table.at(a, c) + table.at(b, d);
        const Rat s3 = table.at(a, d) + table.at(b, c);
        const Rat top = std::max({s1, s2, s3});
        const int hits = (s1 == top) + (s2 == top) + (s3 == top);
        return hits >= 2;
    });
}

std::optional<QuadrupleWitness> relaxed_four_point_check(const PairTable& table) {
    if (table.n() < 4) throw std::invalid_argument("four-point check needs n >= 4");
    return scan_quadruples(table.n(), [&](int a, int b, int c, int d) {
        const Rat s1 = table.at(a, b) + table.at(c, d);
        const Rat s2 = table.at(a, c) + table.at(b, d);
        const Rat s3 = table.at(a, d) + table.at(b, c);
        return s1 == s2 || s1 == s3 || s2 == s3;
    });
}

LeafSet l_set(const PairTable& table, int a, int b, int c, int d, bool of_ab) {
    if (!of_ab) {
        std::swap(a, c);
        std::swap(b, d);
    }
    const int n = table.n();
    LeafSet result = leaf_bit(a) | leaf_bit(b);
    const LeafSet quartet = leaf_bit(a) | leaf_bit(b) | leaf_bit(c) | leaf_bit(d);
    for (int x = 1; x <= n; ++x) {
        if (contains(quartet, x)) continue;
        const Rat da_b = table.at(x, b) - table.at(a, b);
        const Rat da_c = table.at(x, c) - table.at(a, c);
        const Rat da_d = table.at(x, d) - table.at(a, d);
        const bool rel_a = (da_b == da_c) && (da_c == da_d);
        const Rat db_a = table.at(x, a) - table.at(b, a);
        const Rat db_c = table.at(x, c) - table.at(b, c);
        const Rat db_d = table.at(x, d) - table.at(b, d);
        const bool rel_b = (db_a == db_c) && (db_c == db_d);
        if (rel_a || rel_b) result |= leaf_bit(x);
    }
    return result;
}

namespace {

struct QuartetInstance {
    std::array<int, 4> quartet;  // oriented: first pair spans side_ab
    LeafSet side_ab;
    LeafSet side_cd;
    Rat excess;  // S_ac + S_bd - S_ab - S_cd
};

struct Dsu {
    std::vector<int> parent;
    explicit Dsu(size_t size) : parent(size) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); }
    void unite(int x, int y) { parent[find(x)] = find(y); }
};

bool related(const QuartetInstance& p, const QuartetInstance& q) {
    const LeafSet p_ab = leaf_bit(p.quartet[0]) | leaf_bit(p.quartet[1]);
    const LeafSet p_cd = leaf_bit(p.quartet[2]) | leaf_bit(p.quartet[3]);
    const LeafSet q_ab = leaf_bit(q.quartet[0]) | leaf_bit(q.quartet[1]);
    const LeafSet q_cd = leaf_bit(q.quartet[2]) | leaf_bit(q.quartet[3]);
    const bool direct = ((p_ab & q.side_ab) == p_ab) && ((p_cd & q.side_cd) == p_cd) &&
                        ((q_ab & p.side_ab) == q_ab) && ((q_cd & p.side_cd) == q_cd);
    const bool swapped = ((p_ab & q.side_cd) == p_ab) && ((p_cd & q.side_ab) == p_cd) &&
                         ((q_ab & p.side_cd) == q_ab) && ((q_cd & p.side_ab) == q_cd);
    return direct || swapped;
}

}  // namespace

std::vector<QClass> q_classes(const PairTable& table, int k) {
    const int n = table.n();
    if (k < 3) throw std::invalid_argument("q_classes needs k >= 3");
    if (n < 4) return {};
    const LeafSet everyone = full_leaf_set(n);

    std::vector<QuartetInstance> instances;
    for (int a = 1; a <= n; ++a) {
        for (int b = a + 1; b <= n; ++b) {
            for (int c = b + 1; c <= n; ++c) {
                for (int d = c + 1; d <= n; ++d) {
                    const Rat s1 = table.at(a, b) + table.at(c, d);
                    const Rat s2 = table.at(a, c) + table.at(b, d);
                    const Rat s3 = table.at(a, d) + table.at(b, c);
                    // at most one pairing can be the strict minimum with the
                    // other two sums equal
                    std::array<int, 4> oriented{};
                    Rat low, high;
                    if (s1 < s2 && s2 == s3) {
                        oriented = {a, b, c, d};
                        low = s1;
                        high = s2;
                    } else if (s2 < s1 && s1 == s3) {
                        oriented = {a, c, b, d};
                        low = s2;
                        high = s1;
                    } else if (s3 < s1 && s1 == s2) {
                        oriented = {a, d, b, c};
                        low = s3;
                        high = s1;
                    } else {
                        continue;
                    }
                    const LeafSet lab = l_set(table, oriented[0], oriented[1], oriented[2],
                                              oriented[3], true);
                    const LeafSet lcd = l_set(table, oriented[0], oriented[1], oriented[2],
                                              oriented[3], false);
                    if ((lab | lcd) != everyone) continue;
                    instances.push_back({oriented, lab, lcd, high - low});
                }
            }
        }
    }

    Dsu dsu(instances.size());
    for (size_t i = 0; i < instances.size(); ++i)
        for (size_t j = i + 1; j < instances.size(); ++j)
            if (related(instances[i], instances[j])) dsu.unite(static_cast<int>(i), static_cast<int>(j));

    std::vector<std::vector<int>> groups;
    std::vector<int> group_of(instances.size(), -1);
    for (size_t i = 0; i < instances.size(); ++i) {
        const int root = dsu.find(static_cast<int>(i));
        if (group_of[root] < 0) {
            group_of[root] = static_cast<int>(groups.size());
            groups.emplace_back();
        }
        groups[group_of[root]].push_back(static_cast<int>(i));
    }

    std::vector<QClass> classes;
    for (const auto& group : groups) {
        QClass qc;
        // normalize: side_ab is the side containing the smallest label
        const QuartetInstance& first = instances[group.front()];
        const bool flip_first = !contains(first.side_ab, to_labels(everyone).front());
        qc.side_ab = flip_first ? first.side_cd : first.side_ab;
        qc.side_cd = flip_first ? first.side_ab : first.side_cd;
        qc.wtilde = 0;  // set below
        Rat excess = first.excess;
        for (int idx : group) {
            const QuartetInstance& inst = instances[idx];
            std::array<int, 4> member = inst.quartet;
            LeafSet mem_ab = inst.side_ab, mem_cd = inst.side_cd;
            if (mem_ab != qc.side_ab) {
                std::swap(mem_ab, mem_cd);
                member = {inst.quartet[2], inst.quartet[3], inst.quartet[0], inst.quartet[1]};
            }
            if (mem_ab != qc.side_ab || mem_cd != qc.side_cd)
                throw std::runtime_error("q_classes: inconsistent L-set sides within one class");
            if (inst.excess != excess)
                throw std::runtime_error("q_classes: inconsistent edge weights within one class");
            qc.members.push_back(member);
        }
        std::sort(qc.members.begin(), qc.members.end());
        qc.representative = qc.members.front();
        classes.push_back(std::move(qc));
    }
    // wtilde = excess / (C(#side_ab - 2, k-2) + C(#side_cd - 2, k-2))
    for (auto& qc : classes) {
        const auto& m = qc.representative;
        const Rat excess = table.at(m[0], m[2]) + table.at(m[1], m[3]) - table.at(m[0], m[1]) -
                           table.at(m[2], m[3]);
        const long long denom = binomial(popcount(qc.side_ab) - 2, k - 2) +
                                binomial(popcount(qc.side_cd) - 2, k - 2);
        if (denom == 0)
            throw std::runtime_error(
                "q_classes: zero rescaling denominator (both split sides smaller than k)");
        qc.denominator = denom;
        qc.wtilde = excess / Rat(static_cast<long>(denom));
        if (qc.wtilde <= 0) throw std::logic_error("q_classes: nonpositive rescaled weight");
    }
    std::sort(classes.begin(), classes.end(),
              [](const QClass& x, const QClass& y) { return x.side_ab < y.side_ab; });
    return classes;
}

Rat q_hat(const std::vector<QClass>& classes, LeafSet w, QMembership membership) {
    if (popcount(w) < 2) throw std::invalid_argument("q_hat needs |W| >= 2");
    Rat total = 0;
    for (const QClass& qc : classes) {
        if (membership == QMembership::EdgeInSubtree) {
            if ((qc.side_ab & w) != 0 && (qc.side_cd & w) != 0) total += qc.wtilde;
        } else {
            for (const auto& member : qc.members) {
                const LeafSet quartet = leaf_bit(member[0]) | leaf_bit(member[1]) |
                                        leaf_bit(member[2]) | leaf_bit(member[3]);
                if ((quartet & w) == quartet) {
                    total += qc.wtilde;
                    break;
                }
            }
        }
    }
    return total;
}

KDissimilarityFamily restrict_family(const KDissimilarityFamily& family,
                                     const std::vector<int>& s) {
    const int k = family.k();
    std::vector<int> sorted = s;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    if (static_cast<int>(sorted.size()) != static_cast<int>(s.size()))
        throw std::invalid_argument("restrict_family: duplicate labels");
    if (static_cast<int>(sorted.size()) <= k)
        throw std::invalid_argument("restrict_family: need |S| >= k+1");
    for (int label : sorted)
        if (label < 1 || label > family.n())
            throw std::invalid_argument("restrict_family: label out of range");

    const int m = static_cast<int>(sorted.size());
    KDissimilarityFamily result(m, k);
    long long index = 0;
    for_each_subset(m, k, [&](const std::vector<int>& relabeled) {
        std::vector<int> original(k);
        for (int t = 0; t < k; ++t) original[t] = sorted[relabeled[t] - 1];
        result.values()[index++] = family.at(original);
    });
    return result;
}

}  // namespace treelike
