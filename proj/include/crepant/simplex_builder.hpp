#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "crepant/errors.hpp"
#include "crepant/exact/lattice.hpp"
#include "crepant/special_data.hpp"

namespace crepant {

/// Simplex with rational vertices and its reference lattice.
struct LatticeSimplex {
    std::vector<RationalVector> vertices;
    LatticeBasis lattice;

    int dim() const { return static_cast<int>(vertices.size()) - 1; }
};

/// Junior simplex of the lattice of weights and the affine map that carries it
/// to the transformed simplex in coordinates 2..d.
struct JuniorGeometry {
    SpecialDatum datum;
    WatanabeForest forest;
    WeightLattice weights;
    LatticeSimplex junior;
    /// Phi = Phi2 o Phi1 with Phi1(x) = e1 - x.
    AffineMap phi;
    AffineMap phi_inverse;
    /// Phi(e_j) restricted to coordinates 2..d, for j = 1..d.
    std::vector<IntVector> transformed;

    int d() const { return datum.d; }
    const Integer& group_order() const { return weights.order; }
};

namespace detail {

inline IntVector drop_first(const RationalVector& v) {
    IntVector out;
    for (std::size_t i = 1; i < v.size(); ++i) out.push_back(to_int64(v[i]));
    return out;
}

inline JuniorGeometry geometry_from(const SpecialDatum& datum) {
    JuniorGeometry g;
    g.datum = datum;
    g.forest = to_forest(datum);
    g.weights = weight_lattice(datum);
    const auto d = static_cast<std::size_t>(datum.d);
    for (std::size_t j = 0; j < d; ++j) g.junior.vertices.push_back(unit_vector(d, j));
    g.junior.lattice = g.weights.basis;

    // Columns m_1 = e_1, m_j = n_j for non-root j, m_r = e_1 - e_r for the other roots.
    std::vector<RationalVector> cols = g.weights.basis.vectors();
    for (std::size_t c = 1; c < g.forest.roots.size(); ++c) {
        const auto r = static_cast<std::size_t>(g.forest.node(g.forest.roots[c]).first - 1);
        RationalVector v(d, Rational(0));
        v[0] = 1;
        v[r] = -1;
        cols[r] = v;
    }
    RationalMatrix phi2 = inverse(RationalMatrix::from_columns(cols));
    RationalMatrix lin(d, d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) lin(i, j) = -phi2(i, j);
    g.phi = AffineMap{lin, phi2 * unit_vector(d, 0)};
    g.phi_inverse = g.phi.inverse();

    // Phi sends N_G isomorphically onto Z^d.
    RationalMatrix in_basis = g.phi.linear * g.weights.basis.matrix();
    Rational dt = det(in_basis);
    if (!in_basis.is_integral() || (dt != 1 && dt != -1))
        throw LatticeInconsistency("Phi is not unimodular on the lattice of weights");
    for (const auto& t : g.phi.translation)
        if (!is_integral(t)) throw LatticeInconsistency("Phi translation is not integral");
    for (std::size_t j = 0; j < d; ++j) {
        RationalVector img = g.phi.apply(g.junior.vertices[j]);
        if (img[0] != 0) throw LatticeInconsistency("Phi(e_j) leaves the hyperplane x_1 = 0");
        g.transformed.push_back(drop_first(img));
    }
    for (auto x : g.transformed.front())
        if (x != 0) throw LatticeInconsistency("Phi(e_1) is not the origin");
    return g;
}

}  // namespace detail

/// Geometry of a datum whose forest may have several components.
inline JuniorGeometry build_forest_geometry(const SpecialDatum& datum) { return detail::geometry_from(datum); }

/// Geometry of a single-tree datum; forests are routed to build_forest_geometry.
inline JuniorGeometry build_phi(const SpecialDatum& datum) { return detail::geometry_from(datum); }

/// Vertices of the transformed simplex from the recursive vertex formulas, as
/// d-dimensional vectors with vanishing first coordinate (index j-1 holds y_j).
inline std::vector<RationalVector> vertex_formulas(const SpecialDatum& datum) {
    auto f = to_forest(datum);
    const auto d = static_cast<std::size_t>(datum.d);
    std::vector<IntVector> y(d, IntVector(d, 0));
    // Fills y for the leaves of v, relative to the block of v.
    std::function<void(int)> rec = [&](int v) {
        const auto& n = f.node(v);
        if (n.leaf()) return;
        const auto k = n.parameter;
        for (std::size_t i = 0; i < n.children.size(); ++i) {
            const auto& c = f.node(n.children[i]);
            rec(n.children[i]);
            for (int j = c.first; j <= c.last; ++j) {
                auto& vec = y[static_cast<std::size_t>(j - 1)];
                if (i > 0) vec[static_cast<std::size_t>(c.first - 1)] += 1;
                for (auto& x : vec) x = arith::mul(x, k);
            }
        }
    };
    for (std::size_t c = 0; c < f.roots.size(); ++c) {
        const auto& r = f.node(f.roots[c]);
        rec(f.roots[c]);
        if (c > 0)
            for (int j = r.first; j <= r.last; ++j) y[static_cast<std::size_t>(j - 1)][static_cast<std::size_t>(r.first - 1)] += 1;
    }
    std::vector<RationalVector> out;
    for (const auto& v : y) out.push_back(to_rational(v));
    return out;
}

/// One node of the join/dilation decomposition of the transformed simplex.
/// All simplices are given in coordinates 2..d (position j-2 holds coordinate j).
struct DecompositionNode {
    enum class Kind { point, join, dilation };

    Kind kind = Kind::point;
    std::int64_t lambda = 1;
    std::vector<DecompositionNode> children;
    /// Join nodes: translation applied to each child before taking the join.
    std::vector<IntVector> translations;
    /// Index block {first, ..., last} of the subdatum.
    int first = 0;
    int last = 0;
    /// Concrete simplex of this node (before the parent's translation).
    std::vector<IntVector> simplex;

    int dim() const { return static_cast<int>(simplex.size()) - 1; }
};

struct WatanabeDecomposition {
    int ambient_dim = 0;  // d - 1
    DecompositionNode root;
};

namespace detail {

inline IntVector shifted(IntVector v, const IntVector& t) {
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = arith::add(v[i], t[i]);
    return v;
}

inline DecompositionNode join_node(std::vector<DecompositionNode> kids, std::vector<IntVector> shifts, int first,
                                   int last) {
    DecompositionNode j;
    j.kind = DecompositionNode::Kind::join;
    j.first = first;
    j.last = last;
    for (std::size_t i = 0; i < kids.size(); ++i)
        for (const auto& v : kids[i].simplex) j.simplex.push_back(shifted(v, shifts[i]));
    j.children = std::move(kids);
    j.translations = std::move(shifts);
    return j;
}

}  // namespace detail

inline WatanabeDecomposition decompose(const SpecialDatum& datum) {
    auto f = to_forest(datum);
    const auto n = static_cast<std::size_t>(datum.d - 1);
    auto unit = [&](int index) {  // e_index in coordinates 2..d
        IntVector v(n, 0);
        v.at(static_cast<std::size_t>(index - 2)) = 1;
        return v;
    };
    std::function<DecompositionNode(int)> build = [&](int v) -> DecompositionNode {
        const auto& node = f.node(v);
        if (node.leaf()) {
            DecompositionNode p;
            p.first = p.last = node.first;
            p.simplex = {IntVector(n, 0)};
            return p;
        }
        std::vector<DecompositionNode> kids;
        std::vector<IntVector> shifts;
        for (std::size_t i = 0; i < node.children.size(); ++i) {
            kids.push_back(build(node.children[i]));
            shifts.push_back(i == 0 ? IntVector(n, 0) : unit(f.node(node.children[i]).first));
        }
        DecompositionNode dil;
        dil.kind = DecompositionNode::Kind::dilation;
        dil.lambda = node.parameter;
        dil.first = node.first;
        dil.last = node.last;
        dil.children.push_back(detail::join_node(std::move(kids), std::move(shifts), node.first, node.last));
        for (const auto& x : dil.children.front().simplex) {
            IntVector y(x);
            for (auto& c : y) c = arith::mul(c, dil.lambda);
            dil.simplex.push_back(std::move(y));
        }
        return dil;
    };
    WatanabeDecomposition out;
    out.ambient_dim = static_cast<int>(n);
    if (f.roots.size() == 1) {
        out.root = build(f.roots.front());
    } else {
        std::vector<DecompositionNode> kids;
        std::vector<IntVector> shifts;
        for (std::size_t c = 0; c < f.roots.size(); ++c) {
            kids.push_back(build(f.roots[c]));
            shifts.push_back(c == 0 ? IntVector(n, 0) : unit(f.node(f.roots[c]).first));
        }
        out.root = detail::join_node(std::move(kids), std::move(shifts), 1, datum.d);
    }
    return out;
}

/// Recomputes a node's simplex bottom-up from its children only.
inline std::vector<IntVector> evaluate(const DecompositionNode& node) {
    switch (node.kind) {
        case DecompositionNode::Kind::point:
            return node.simplex;
        case DecompositionNode::Kind::dilation: {
            auto s = evaluate(node.children.front());
            for (auto& v : s)
                for (auto& x : v) x = arith::mul(x, node.lambda);
            return s;
        }
        case DecompositionNode::Kind::join: {
            std::vector<IntVector> s;
            for (std::size_t i = 0; i < node.children.size(); ++i)
                for (const auto& v : evaluate(node.children[i])) s.push_back(detail::shifted(v, node.translations[i]));
            return s;
        }
    }
    return {};
}

namespace detail {

inline std::vector<IntVector> int_lattice_points(const std::vector<IntVector>& verts) {
    IntegralFrame frame(verts);
    std::vector<IntVector> local;
    for (const auto& v : verts) local.push_back(frame.coordinates(v));
    std::vector<IntVector> out;
    SimplexScanner scan(local);
    scan.for_each([&](const std::int64_t* x) { out.push_back(frame.embed(IntVector(x, x + frame.rank()))); });
    return out;
}

inline bool watanabe_rec(const std::vector<IntVector>& verts) {
    const std::size_t k = verts.size();
    auto pts = int_lattice_points(verts);
    IntegralFrame hull(pts);
    if (!hull.saturated()) return false;
    if (k == 1) return true;
    // Join branch: every split into two non-empty vertex sets (vertex 0 in the first part).
    const std::uint32_t full = (1u << k) - 1;
    for (std::uint32_t a_mask = 1; a_mask < full; a_mask += 2) {
        std::vector<IntVector> a, b;
        for (std::size_t i = 0; i < k; ++i) ((a_mask >> i) & 1u ? a : b).push_back(verts[i]);
        if (!watanabe_rec(a) || !watanabe_rec(b)) continue;
        IntegralFrame fa(a), fb(b);
        std::vector<IntVector> gens = {fa.origin(), fb.origin()};
        for (std::size_t i = 0; i < fa.rank(); ++i) {
            IntVector c(fa.rank(), 0);
            c[i] = 1;
            gens.push_back(fa.embed(c));
        }
        for (std::size_t i = 0; i < fb.rank(); ++i) {
            IntVector c(fb.rank(), 0);
            c[i] = 1;
            gens.push_back(fb.embed(c));
        }
        IntegralFrame joined(gens);
        if (joined.rank() == k - 1 && joined.saturated()) return true;
    }
    // Dilation branch: lambda >= 2 dividing every edge vector.
    std::int64_t g = 0;
    for (std::size_t i = 1; i < k; ++i)
        for (std::size_t j = 0; j < verts[i].size(); ++j) g = arith::gcd64(g, verts[i][j] - verts[0][j]);
    for (std::int64_t lambda = 2; lambda <= g; ++lambda) {
        if (g % lambda != 0) continue;
        std::vector<IntVector> smaller;
        for (const auto& v : verts) {
            IntVector w(v.size());
            for (std::size_t j = 0; j < v.size(); ++j) w[j] = (v[j] - verts[0][j]) / lambda;
            smaller.push_back(std::move(w));
        }
        if (watanabe_rec(smaller)) return true;
    }
    return false;
}

}  // namespace detail

/// Brute-force test of the recursive join/dilation definition (dimension <= 4).
inline bool verify_watanabe(const LatticeSimplex& simplex, int max_dim) {
    if (max_dim > 4) throw BudgetExceeded("verify_watanabe supports max_dim <= 4");
    if (simplex.dim() > max_dim) throw BudgetExceeded("simplex dimension exceeds the search budget");
    if (simplex.vertices.empty()) return false;
    std::vector<IntVector> verts;
    for (const auto& v : simplex.vertices) {
        auto c = simplex.lattice.coordinates(v);
        IntVector iv;
        for (const auto& x : c) {
            if (!is_integral(x)) return false;
            iv.push_back(to_int64(x));
        }
        verts.push_back(std::move(iv));
    }
    if (affine_rank(simplex.vertices) != simplex.dim()) return false;
    return detail::watanabe_rec(verts);
}

}  // namespace crepant
