#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "crepant/errors.hpp"
#include "crepant/exact/lattice.hpp"
#include "crepant/exact/rational.hpp"

namespace crepant {

/// Sorted list of 1-based indices.
using IndexSet = std::vector<int>;

inline std::string format_set(const IndexSet& s) {
    std::string out = "{";
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(s[i]);
    }
    return out + "}";
}

/// A laminar family of index sets with weights.
struct SpecialDatum {
    int d = 0;
    std::vector<IndexSet> sets;
    std::vector<std::int64_t> weights;

    void add(IndexSet s, std::int64_t w) {
        std::sort(s.begin(), s.end());
        sets.push_back(std::move(s));
        weights.push_back(w);
    }

    std::optional<std::int64_t> weight_of(const IndexSet& s) const {
        for (std::size_t i = 0; i < sets.size(); ++i)
            if (sets[i] == s) return weights[i];
        return std::nullopt;
    }

    /// Entries in preorder: by smallest element, larger sets first.
    std::vector<std::pair<IndexSet, std::int64_t>> entries() const {
        std::vector<std::pair<IndexSet, std::int64_t>> e;
        for (std::size_t i = 0; i < sets.size(); ++i) e.emplace_back(sets[i], weights[i]);
        std::sort(e.begin(), e.end(), [](const auto& a, const auto& b) {
            if (a.first.front() != b.first.front()) return a.first.front() < b.first.front();
            if (a.first.size() != b.first.size()) return a.first.size() > b.first.size();
            return a.first < b.first;
        });
        return e;
    }

    bool operator==(const SpecialDatum& o) const { return d == o.d && entries() == o.entries(); }
};

struct ValidationReport {
    bool valid = true;
    std::string clause;  // "(i)".."(v)", or "structure"
    std::vector<IndexSet> offending;
    std::string message;
};

namespace detail {

inline bool subset_of(const IndexSet& a, const IndexSet& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

inline bool disjoint(const IndexSet& a, const IndexSet& b) {
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] == b[j]) return false;
        if (a[i] < b[j])
            ++i;
        else
            ++j;
    }
    return true;
}

// Parent index (smallest strict superset) of each set of a laminar family, or -1.
inline std::vector<int> cover_parents(const std::vector<IndexSet>& sets) {
    std::vector<int> parent(sets.size(), -1);
    for (std::size_t i = 0; i < sets.size(); ++i)
        for (std::size_t j = 0; j < sets.size(); ++j) {
            if (i == j || sets[j].size() <= sets[i].size() || !subset_of(sets[i], sets[j])) continue;
            if (parent[i] < 0 || sets[j].size() < sets[static_cast<std::size_t>(parent[i])].size())
                parent[i] = static_cast<int>(j);
        }
    return parent;
}

}  // namespace detail

inline ValidationReport validate(const SpecialDatum& datum) {
    ValidationReport r;
    auto fail = [&](std::string clause, std::vector<IndexSet> sets, std::string msg) {
        r.valid = false;
        r.clause = std::move(clause);
        r.offending = std::move(sets);
        r.message = std::move(msg);
        return r;
    };
    if (datum.d < 1) return fail("structure", {}, "dimension must be positive");
    if (datum.sets.size() != datum.weights.size()) return fail("structure", {}, "sets and weights differ in length");
    for (std::size_t i = 0; i < datum.sets.size(); ++i) {
        const auto& s = datum.sets[i];
        if (s.empty()) return fail("structure", {s}, "empty index set");
        if (!std::is_sorted(s.begin(), s.end()) || std::adjacent_find(s.begin(), s.end()) != s.end())
            return fail("structure", {s}, "index set must be sorted without repeats");
        if (s.front() < 1 || s.back() > datum.d) return fail("structure", {s}, "index out of range 1..d");
        if (datum.weights[i] < 1) return fail("structure", {s}, "weights must be positive");
        for (std::size_t j = 0; j < i; ++j)
            if (datum.sets[j] == s) return fail("structure", {s}, "set listed twice");
    }
    for (int i = 1; i <= datum.d; ++i)
        if (!datum.weight_of({i})) return fail("(i)", {{i}}, "singleton {" + std::to_string(i) + "} is missing");
    for (std::size_t i = 0; i < datum.sets.size(); ++i)
        for (std::size_t j = i + 1; j < datum.sets.size(); ++j) {
            const auto &a = datum.sets[i], &b = datum.sets[j];
            if (!detail::subset_of(a, b) && !detail::subset_of(b, a) && !detail::disjoint(a, b))
                return fail("(ii)", {a, b}, "sets neither nested nor disjoint");
        }
    auto parent = detail::cover_parents(datum.sets);
    for (std::size_t i = 0; i < datum.sets.size(); ++i)
        if (parent[i] < 0 && datum.weights[i] != 1)
            return fail("(iii)", {datum.sets[i]}, "maximal set must have weight 1");
    for (std::size_t i = 0; i < datum.sets.size(); ++i)
        for (std::size_t j = 0; j < datum.sets.size(); ++j) {
            if (i == j || datum.sets[j].size() <= datum.sets[i].size() ||
                !detail::subset_of(datum.sets[i], datum.sets[j]))
                continue;
            const auto wi = datum.weights[i], wj = datum.weights[j];
            if (!(wi > wj) || wi % wj != 0)
                return fail("(iv)", {datum.sets[i], datum.sets[j]},
                            "nested sets need w(J) > w(J') and w(J') | w(J)");
        }
    for (std::size_t i = 0; i < datum.sets.size(); ++i)
        for (std::size_t j = i + 1; j < datum.sets.size(); ++j)
            if (parent[i] >= 0 && parent[i] == parent[j] && datum.weights[i] != datum.weights[j])
                return fail("(v)", {datum.sets[i], datum.sets[j]}, "siblings must have equal weight");
    return r;
}

/// Datum with contiguous sets plus the relabelling used: index i becomes theta[i - 1].
struct CanonicalForm {
    SpecialDatum datum;
    std::vector<int> theta;
};

/// Every set is a segment {nu, ..., xi}.
inline bool is_contiguous(const SpecialDatum& datum) {
    for (const auto& s : datum.sets)
        if (s.back() - s.front() + 1 != static_cast<int>(s.size())) return false;
    return true;
}

namespace detail {

struct LaminarTree {
    std::vector<int> parent;
    std::vector<std::vector<int>> children;
    std::vector<int> roots;
};

inline LaminarTree laminar_tree(const SpecialDatum& datum) {
    LaminarTree t;
    t.parent = cover_parents(datum.sets);
    t.children.assign(datum.sets.size(), {});
    for (std::size_t i = 0; i < datum.sets.size(); ++i) {
        if (t.parent[i] < 0)
            t.roots.push_back(static_cast<int>(i));
        else
            t.children[static_cast<std::size_t>(t.parent[i])].push_back(static_cast<int>(i));
    }
    auto by_min = [&](int a, int b) {
        return datum.sets[static_cast<std::size_t>(a)].front() < datum.sets[static_cast<std::size_t>(b)].front();
    };
    std::sort(t.roots.begin(), t.roots.end(), by_min);
    for (auto& c : t.children) std::sort(c.begin(), c.end(), by_min);
    return t;
}

inline std::string padded(std::int64_t w) {
    std::string s = std::to_string(w);
    return std::string(s.size() < 20 ? 20 - s.size() : 0, '0') + s;
}

}  // namespace detail

inline CanonicalForm canonicalize(const SpecialDatum& datum) {
    auto report = validate(datum);
    if (!report.valid) throw ValidationError("invalid datum, clause " + report.clause + ": " + report.message);
    auto tree = detail::laminar_tree(datum);
    std::vector<std::string> code(datum.sets.size());
    std::function<const std::string&(int)> encode = [&](int v) -> const std::string& {
        auto& kids = tree.children[static_cast<std::size_t>(v)];
        const auto w = datum.weights[static_cast<std::size_t>(v)];
        if (kids.empty()) {
            code[static_cast<std::size_t>(v)] = "[" + detail::padded(w) + "]";
        } else {
            for (int c : kids) encode(c);
            std::stable_sort(kids.begin(), kids.end(), [&](int a, int b) {
                return code[static_cast<std::size_t>(a)] < code[static_cast<std::size_t>(b)];
            });
            std::string s = "(" + detail::padded(w);
            for (int c : kids) s += code[static_cast<std::size_t>(c)];
            code[static_cast<std::size_t>(v)] = s + ")";
        }
        return code[static_cast<std::size_t>(v)];
    };
    for (int r : tree.roots) encode(r);
    std::stable_sort(tree.roots.begin(), tree.roots.end(), [&](int a, int b) {
        return code[static_cast<std::size_t>(a)] < code[static_cast<std::size_t>(b)];
    });
    CanonicalForm out;
    out.theta.assign(static_cast<std::size_t>(datum.d), 0);
    int next = 1;
    std::function<void(int)> label = [&](int v) {
        const auto& kids = tree.children[static_cast<std::size_t>(v)];
        if (kids.empty()) {
            out.theta[static_cast<std::size_t>(datum.sets[static_cast<std::size_t>(v)].front()) - 1] = next++;
            return;
        }
        for (int c : kids) label(c);
    };
    for (int r : tree.roots) label(r);
    out.datum.d = datum.d;
    std::vector<std::pair<IndexSet, std::int64_t>> entries;
    for (std::size_t i = 0; i < datum.sets.size(); ++i) {
        IndexSet s;
        for (int x : datum.sets[i]) s.push_back(out.theta[static_cast<std::size_t>(x - 1)]);
        std::sort(s.begin(), s.end());
        entries.emplace_back(std::move(s), datum.weights[i]);
    }
    SpecialDatum tmp;
    tmp.d = datum.d;
    for (auto& e : entries) tmp.add(e.first, e.second);
    for (auto& e : tmp.entries()) out.datum.add(e.first, e.second);
    return out;
}

/// One vertex v_J of a Watanabe forest; J = {first, ..., last}.
struct ForestNode {
    int first = 0;
    int last = 0;
    std::int64_t weight = 1;
    /// Free parameter carried by the edges to the children (0 for leaves).
    std::int64_t parameter = 0;
    int parent = -1;
    std::vector<int> children;

    bool leaf() const { return children.empty(); }
    IndexSet indices() const {
        IndexSet s;
        for (int i = first; i <= last; ++i) s.push_back(i);
        return s;
    }
    bool operator==(const ForestNode&) const = default;
};

struct WatanabeForest {
    int d = 0;
    std::vector<ForestNode> nodes;  // preorder
    std::vector<int> roots;

    std::size_t components() const { return roots.size(); }
    bool is_tree() const { return roots.size() == 1; }
    const ForestNode& node(int i) const { return nodes[static_cast<std::size_t>(i)]; }
    bool operator==(const WatanabeForest&) const = default;
};

/// Structural description of a rooted plane tree with free parameters.
struct ForestShape {
    std::int64_t parameter = 0;
    std::vector<ForestShape> children;

    bool leaf() const { return children.empty(); }
    int leaves() const {
        if (children.empty()) return 1;
        int n = 0;
        for (const auto& c : children) n += c.leaves();
        return n;
    }
    bool operator==(const ForestShape&) const = default;
};

inline WatanabeForest forest_from_shapes(const std::vector<ForestShape>& components) {
    WatanabeForest f;
    int next = 1;
    std::function<int(const ForestShape&, int, std::int64_t)> build = [&](const ForestShape& s, int parent,
                                                                          std::int64_t w) -> int {
        const int id = static_cast<int>(f.nodes.size());
        f.nodes.push_back({});
        f.nodes.back().parent = parent;
        f.nodes.back().weight = w;
        f.nodes.back().first = next;
        if (s.children.empty()) {
            f.nodes.back().last = next++;
            return id;
        }
        if (s.children.size() < 2) throw InvalidParameter("internal forest vertex needs at least two children");
        if (s.parameter < 2) throw InvalidParameter("free parameter must be at least 2");
        std::int64_t cw = arith::mul(w, s.parameter);
        f.nodes[static_cast<std::size_t>(id)].parameter = s.parameter;
        for (const auto& c : s.children) {
            int cid = build(c, id, cw);
            f.nodes[static_cast<std::size_t>(id)].children.push_back(cid);
        }
        f.nodes[static_cast<std::size_t>(id)].last = next - 1;
        return id;
    };
    for (const auto& c : components) f.roots.push_back(build(c, -1, 1));
    f.d = next - 1;
    return f;
}

inline std::vector<ForestShape> forest_shapes(const WatanabeForest& f) {
    std::function<ForestShape(int)> rec = [&](int v) {
        ForestShape s;
        const auto& n = f.node(v);
        s.parameter = n.leaf() ? 0 : n.parameter;
        for (int c : n.children) s.children.push_back(rec(c));
        return s;
    };
    std::vector<ForestShape> out;
    for (int r : f.roots) out.push_back(rec(r));
    return out;
}

inline WatanabeForest to_forest(const SpecialDatum& datum) {
    auto report = validate(datum);
    if (!report.valid) throw ValidationError("invalid datum, clause " + report.clause + ": " + report.message);
    if (!is_contiguous(datum)) throw CanonicalizationRequired("datum sets are not contiguous segments");
    auto tree = detail::laminar_tree(datum);
    WatanabeForest f;
    f.d = datum.d;
    std::function<int(int, int)> add = [&](int v, int parent) -> int {
        const int id = static_cast<int>(f.nodes.size());
        const auto& s = datum.sets[static_cast<std::size_t>(v)];
        ForestNode node;
        node.first = s.front();
        node.last = s.back();
        node.weight = datum.weights[static_cast<std::size_t>(v)];
        node.parent = parent;
        f.nodes.push_back(node);
        const auto& kids = tree.children[static_cast<std::size_t>(v)];
        if (!kids.empty())
            f.nodes[static_cast<std::size_t>(id)].parameter =
                datum.weights[static_cast<std::size_t>(kids.front())] / node.weight;
        for (int c : kids) {
            int cid = add(c, id);
            f.nodes[static_cast<std::size_t>(id)].children.push_back(cid);
        }
        return id;
    };
    for (int r : tree.roots) f.roots.push_back(add(r, -1));
    return f;
}

inline SpecialDatum from_forest(const WatanabeForest& forest) {
    WatanabeForest f = forest_from_shapes(forest_shapes(forest));
    SpecialDatum d;
    d.d = f.d;
    for (const auto& n : f.nodes) d.add(n.indices(), n.weight);
    return d;
}

inline int splitting_codimension(const WatanabeForest& f) {
    int trivial = 0;
    for (int r : f.roots)
        if (f.node(r).leaf()) ++trivial;
    return f.d - trivial;
}

/// Diagonal generator (1/order)(e_plus - e_minus), positions 1-based.
struct GroupGenerator {
    int plus = 0;
    int minus = 0;
    std::int64_t order = 1;
    RationalVector exponents;

    /// Exponents reduced into [0, 1).
    RationalVector reduced() const {
        RationalVector r = exponents;
        for (auto& x : r) x -= Rational(floor_of(x));
        return r;
    }
};

inline std::vector<GroupGenerator> group_generators(const SpecialDatum& datum) {
    auto f = to_forest(datum);
    std::vector<GroupGenerator> gens;
    for (const auto& n : f.nodes)
        for (std::size_t i = 1; i < n.children.size(); ++i) {
            const auto& c = f.node(n.children[i]);
            GroupGenerator g;
            g.plus = n.first;
            g.minus = c.first;
            g.order = c.weight;
            g.exponents.assign(static_cast<std::size_t>(datum.d), Rational(0));
            g.exponents[static_cast<std::size_t>(g.plus - 1)] = make_rational(1, c.weight);
            g.exponents[static_cast<std::size_t>(g.minus - 1)] = make_rational(-1, c.weight);
            gens.push_back(std::move(g));
        }
    return gens;
}

struct WeightLattice {
    LatticeBasis basis;
    Integer order;  // |G| = [N_G : Z^d]
};

/// Basis {e_r (r a root's first index), n_j (all other j)} of the lattice of weights.
inline WeightLattice weight_lattice(const SpecialDatum& datum) {
    auto f = to_forest(datum);
    auto gens = group_generators(datum);
    const auto d = static_cast<std::size_t>(datum.d);
    std::vector<RationalVector> vecs(d);
    for (int r : f.roots) vecs[static_cast<std::size_t>(f.node(r).first - 1)] = unit_vector(d, static_cast<std::size_t>(f.node(r).first - 1));
    for (const auto& g : gens) vecs[static_cast<std::size_t>(g.minus - 1)] = g.exponents;
    WeightLattice out{LatticeBasis(vecs, "N_G"), 0};
    Rational inv = 1 / out.basis.determinant();
    if (inv < 0) inv = -inv;
    if (!is_integral(inv)) throw LatticeInconsistency("reciprocal lattice determinant is not an integer");
    out.order = numerator_of(inv);
    return out;
}

}  // namespace crepant
