#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "crepant/errors.hpp"
#include "crepant/simplex_builder.hpp"
#include "crepant/staircase.hpp"
#include "crepant/triangulation.hpp"

namespace crepant {

namespace detail {

/// Open-addressing index from integer points to vertex ids, storing the points
/// in an external flat coordinate array.
class PointIndex {
public:
    PointIndex(int n, std::vector<std::int64_t>& coords) : n_(n), coords_(coords) { rehash(1024); }

    /// Returns (id, inserted).
    std::pair<std::uint32_t, bool> insert(const std::int64_t* x) {
        if ((count_ + 1) * 2 > table_.size()) rehash(table_.size() * 2);
        std::size_t slot = hash(x) & mask_;
        while (table_[slot] != kEmpty) {
            const std::int64_t* y = coords_.data() + static_cast<std::size_t>(table_[slot]) * n_;
            if (std::equal(x, x + n_, y)) return {table_[slot], false};
            slot = (slot + 1) & mask_;
        }
        const auto id = static_cast<std::uint32_t>(count_++);
        table_[slot] = id;
        coords_.insert(coords_.end(), x, x + n_);
        return {id, true};
    }

private:
    static constexpr std::uint32_t kEmpty = 0xffffffffu;

    std::uint64_t hash(const std::int64_t* x) const {
        std::uint64_t h = 0x243f6a8885a308d3ULL;
        for (int i = 0; i < n_; ++i) h = mix64(h ^ static_cast<std::uint64_t>(x[i]));
        return h;
    }

    void rehash(std::size_t size) {
        table_.assign(size, kEmpty);
        mask_ = size - 1;
        for (std::size_t id = 0; id < count_; ++id) {
            std::size_t slot = hash(coords_.data() + id * n_) & mask_;
            while (table_[slot] != kEmpty) slot = (slot + 1) & mask_;
            table_[slot] = static_cast<std::uint32_t>(id);
        }
    }

    int n_;
    std::vector<std::int64_t>& coords_;
    std::vector<std::uint32_t> table_;
    std::size_t mask_ = 0;
    std::size_t count_ = 0;
};

inline Triangulation& ensure_certificate(Triangulation& t) {
    if (!t.certificate) attach_certificate(t);
    return t;
}

}  // namespace detail

/// The one-cell triangulation of a lattice point.
inline Triangulation point_triangulation(const IntVector& p) {
    Triangulation t;
    t.n = static_cast<int>(p.size());
    t.dim = 0;
    t.coords = p;
    t.cells = {0};
    t.colour = {0};
    t.height = {Rational(0)};
    t.ambient = {p};
    return t;
}

inline Triangulation translate(Triangulation t, const IntVector& v) {
    if (static_cast<int>(v.size()) != t.n) throw DimensionMismatch("translation vector has the wrong length");
    for (std::size_t i = 0; i < t.coords.size(); ++i)
        t.coords[i] = arith::add(t.coords[i], v[i % static_cast<std::size_t>(t.n)]);
    for (auto& a : t.ambient)
        for (std::size_t j = 0; j < a.size(); ++j) a[j] = arith::add(a[j], v[j]);
    return t;
}

/// lambda * t with heights x -> h(x / lambda) and transported colours (no refinement).
inline Triangulation dilate(Triangulation t, std::int64_t lambda) {
    if (lambda == 0) throw EmptyDilation("dilation by 0");
    if (lambda < 0) throw InvalidParameter("dilation factor must be positive");
    for (auto& x : t.coords) x = arith::mul(x, lambda);
    for (auto& a : t.ambient)
        for (auto& x : a) x = arith::mul(x, lambda);
    t.certificate.reset();
    return t;
}

/// Join of two triangulations whose supports lie in skew affine subspaces.
inline Triangulation join(const Triangulation& a, const Triangulation& b, bool with_certificate = true) {
    if (a.n != b.n) throw DimensionMismatch("join operands live in different ambient spaces");
    const int dim = a.dim + b.dim + 1;
    std::vector<IntVector> corners = a.ambient;
    corners.insert(corners.end(), b.ambient.begin(), b.ambient.end());
    IntegralFrame corner_frame(corners);
    if (static_cast<int>(corner_frame.rank()) != dim)
        throw JoinHypothesisError("skewness: the affine hulls of the operands are not skew");
    std::vector<IntVector> all;
    all.reserve(a.vertex_count() + b.vertex_count());
    for (std::size_t i = 0; i < a.vertex_count(); ++i) all.push_back(a.vertex(i));
    for (std::size_t i = 0; i < b.vertex_count(); ++i) all.push_back(b.vertex(i));
    IntegralFrame hull(all);
    if (!hull.saturated())
        throw JoinHypothesisError("integral affine hull: the vertices generate a sublattice of index " +
                                  to_string(hull.index()));

    Triangulation t;
    t.n = a.n;
    t.dim = dim;
    t.coords = a.coords;
    t.coords.insert(t.coords.end(), b.coords.begin(), b.coords.end());
    t.colour = a.colour;
    for (auto c : b.colour) t.colour.push_back(static_cast<std::uint16_t>(c + a.dim + 1));
    if (a.height.size() == a.vertex_count() && b.height.size() == b.vertex_count()) {
        t.height = a.height;
        t.height.insert(t.height.end(), b.height.begin(), b.height.end());
    }
    t.ambient = corners;
    t.epsilon_trace = a.epsilon_trace;
    t.epsilon_trace.insert(t.epsilon_trace.end(), b.epsilon_trace.begin(), b.epsilon_trace.end());
    const auto offset = static_cast<std::uint32_t>(a.vertex_count());
    const std::size_t ka = static_cast<std::size_t>(a.dim + 1), kb = static_cast<std::size_t>(b.dim + 1);
    t.cells.reserve(a.cell_count() * b.cell_count() * (ka + kb));
    for (std::size_t i = 0; i < a.cell_count(); ++i)
        for (std::size_t j = 0; j < b.cell_count(); ++j) {
            t.cells.insert(t.cells.end(), a.cell_ptr(i), a.cell_ptr(i) + ka);
            for (std::size_t q = 0; q < kb; ++q) t.cells.push_back(b.cell_ptr(j)[q] + offset);
        }
    if (with_certificate) attach_certificate(t);
    return t;
}

/// Refines lambda * t into lambda^dim basic cells per cell of t by gluing
/// colour-respecting copies of the staircase triangulation.
inline Triangulation refine_dilation(const Triangulation& t_in, std::int64_t lambda, bool with_certificate = true) {
    if (lambda == 0) throw EmptyDilation("dilation by 0");
    if (lambda < 0) throw InvalidParameter("dilation factor must be positive");
    Triangulation parent = t_in;
    detail::ensure_certificate(parent);
    if (!parent.certificate->overall)
        throw PreconditionError("refine_dilation needs a basic, coherent and balanced input");
    if (lambda == 1) return parent;

    const int m = parent.dim;
    const int n = parent.n;
    const std::size_t k = static_cast<std::size_t>(m + 1);
    const auto stairs = staircase_complex(m, lambda);
    const std::size_t vs = stairs.points.size();
    const std::size_t cs = stairs.cell_count();
    const std::size_t np = parent.cell_count();

    // Parent heights as integers over a common denominator.
    Integer lp = 1;
    for (const auto& h : parent.height) lp = lcm_of(lp, denominator_of(h));
    std::vector<std::int64_t> ph(parent.vertex_count());
    for (std::size_t i = 0; i < ph.size(); ++i)
        ph[i] = to_int64(numerator_of(parent.height[i]) * (lp / denominator_of(parent.height[i])));

    Triangulation out;
    out.n = n;
    out.dim = m;
    for (const auto& a : parent.ambient) {
        IntVector v(a);
        for (auto& x : v) x = arith::mul(x, lambda);
        out.ambient.push_back(v);
    }
    std::vector<std::int64_t> pvals, qvals;
    detail::PointIndex index(n, out.coords);
    std::vector<std::uint32_t> block(np * vs);
    std::vector<std::int64_t> x(static_cast<std::size_t>(n));
    std::vector<std::uint32_t> ordered(k);
    std::vector<std::int64_t> edge(static_cast<std::size_t>(m * n));
    out.cells.resize(np * cs * k);

    for (std::size_t f = 0; f < np; ++f) {
        const std::uint32_t* cell = parent.cell_ptr(f);
        std::fill(ordered.begin(), ordered.end(), 0xffffffffu);
        for (std::size_t i = 0; i < k; ++i) {
            const auto c = parent.colour[cell[i]];
            if (c >= k || ordered[c] != 0xffffffffu) throw PreconditionError("parent cell is not properly coloured");
            ordered[c] = cell[i];
        }
        const std::int64_t* f0 = parent.vertex_ptr(ordered[0]);
        for (int i = 1; i <= m; ++i) {
            const std::int64_t* fi = parent.vertex_ptr(ordered[static_cast<std::size_t>(i)]);
            const std::int64_t* fp = parent.vertex_ptr(ordered[static_cast<std::size_t>(i - 1)]);
            for (int j = 0; j < n; ++j) edge[static_cast<std::size_t>((i - 1) * n + j)] = fi[j] - fp[j];
        }
        for (std::size_t s = 0; s < vs; ++s) {
            const IntVector& y = stairs.points[s];
            for (int j = 0; j < n; ++j) {
                std::int64_t acc = arith::mul(lambda, f0[j]);
                for (int i = 0; i < m; ++i)
                    acc = arith::add(acc, arith::mul(y[static_cast<std::size_t>(i)], edge[static_cast<std::size_t>(i * n + j)]));
                x[static_cast<std::size_t>(j)] = acc;
            }
            // P(x) = lambda * psi(x / lambda) from the barycentric weights y_i - y_{i+1}.
            std::int64_t pv = 0;
            for (int i = 0; i <= m; ++i) {
                std::int64_t hi = i == 0 ? lambda : y[static_cast<std::size_t>(i - 1)];
                std::int64_t lo = i == m ? 0 : y[static_cast<std::size_t>(i)];
                pv = arith::add(pv, arith::mul(ph[ordered[static_cast<std::size_t>(i)]], hi - lo));
            }
            auto [id, inserted] = index.insert(x.data());
            if (inserted) {
                out.colour.push_back(stairs.colour[s]);
                pvals.push_back(pv);
                qvals.push_back(stairs.psi_bar[s]);
            } else if (out.colour[id] != stairs.colour[s] || pvals[id] != pv || qvals[id] != stairs.psi_bar[s]) {
                throw ConventionError("neighbouring staircase pieces disagree at a shared vertex");
            }
            block[f * vs + s] = id;
        }
        std::uint32_t* dst = out.cells.data() + f * cs * k;
        for (std::size_t c = 0; c < cs; ++c) {
            for (std::size_t i = 0; i < k; ++i) dst[c * k + i] = block[f * vs + stairs.cells[c * k + i]];
            std::sort(dst + c * k, dst + (c + 1) * k);
        }
    }

    // Walls between pieces sit over the interior walls of the parent.
    out.height.clear();
    detail::Prepared<std::int64_t> prep = detail::prepare<std::int64_t>(out);
    if (!prep.failure.empty()) throw ConventionError("refined complex is malformed: " + prep.failure);
    std::vector<std::uint32_t> fa(k), fb(k);
    std::size_t cross = 0;
    int need = 0;        // smallest admissible number of halvings
    int forbid = 65;     // halvings at or above this fail some wall
    using u128 = unsigned __int128;
    const Integer scale_q = Integer(lambda) * lp;
    const std::int64_t sq = to_int64(scale_q);
    auto on_parent_wall = [&](std::uint32_t c1, std::uint32_t p1, std::uint32_t c2, std::uint32_t p2) {
        const auto colour = parent.colour[parent.cell_ptr(c1)[p1]];
        if (colour != parent.colour[parent.cell_ptr(c2)[p2]])
            throw PreconditionError("parent wall is not opposite equal colours");
        for (const auto& [sc, pos] : stairs.boundary[colour]) {
            const std::uint32_t* sv = stairs.cells.data() + sc * k;
            std::size_t r = 0;
            for (std::size_t i = 0; i < k; ++i)
                if (i != pos) {
                    fa[r] = block[c1 * vs + sv[i]];
                    fb[r] = block[c2 * vs + sv[i]];
                    ++r;
                }
            std::sort(fa.begin(), fa.begin() + static_cast<std::ptrdiff_t>(k - 1));
            std::sort(fb.begin(), fb.begin() + static_cast<std::ptrdiff_t>(k - 1));
            if (!std::equal(fa.begin(), fa.begin() + static_cast<std::ptrdiff_t>(k - 1), fb.begin()))
                throw ConventionError("staircase pieces disagree on a shared wall");
            const std::uint32_t* new_cell = out.cells.data() + (c1 * cs + sc) * k;
            const std::uint32_t apex = block[c1 * vs + sv[pos]];
            const std::uint32_t other = block[c2 * vs + sv[pos]];
            int p_new = 0;
            while (new_cell[p_new] != apex) ++p_new;
            auto sol = detail::solve_wall(prep, new_cell, p_new, other, &pvals, &qvals);
            std::int64_t mp = sol.numerator, mq = sol.numerator2;
            if (sol.denominator < 0) {
                mp = -mp;
                mq = -mq;
            }
            ++cross;
            // Wall condition: 2^j * mp + lambda * lp * mq > 0.
            const __int128 rq = static_cast<__int128>(sq) * mq;
            if (mp > 0) {
                if (rq >= 0) continue;
                const u128 bound = static_cast<u128>(-rq);
                int j = 0;
                while (j <= 64 && (static_cast<u128>(mp) << j) <= bound) ++j;
                need = std::max(need, j);
            } else if (mp == 0) {
                if (rq <= 0) forbid = 0;
            } else {
                if (rq <= 0) {
                    forbid = 0;
                    continue;
                }
                const u128 bound = static_cast<u128>(rq);
                int j = 0;
                while (j <= 64 && (static_cast<u128>(-mp) << j) < bound) ++j;
                forbid = std::min(forbid, j);
            }
        }
    };
    auto ignore_boundary = [](std::uint32_t, std::uint32_t) {};
    std::string defect = detail::match_facets(parent, on_parent_wall, ignore_boundary);
    if (!defect.empty()) throw PreconditionError("parent is not a triangulation: " + defect);
    if (need > 64 || need >= forbid) throw EpsilonSearchError("no epsilon = 2^-j with j <= 64 makes every wall convex");

    const Integer den_p = Integer(lambda) * lp;
    const Integer two_j = Integer(1) << need;
    out.height.reserve(pvals.size());
    for (std::size_t i = 0; i < pvals.size(); ++i)
        out.height.push_back(make_rational(pvals[i], den_p) + make_rational(qvals[i], two_j));
    out.epsilon_trace = parent.epsilon_trace;
    out.epsilon_trace.push_back({m, lambda, need, make_rational(1, two_j), cross});
    if (with_certificate) attach_certificate(out);
    return out;
}

struct TriangulateOptions {
    /// Recompute certificates after every join and refinement, not only at the end.
    bool certify_intermediate = true;
};

namespace detail {

inline Triangulation triangulate_node(const DecompositionNode& node, const TriangulateOptions& opt) {
    switch (node.kind) {
        case DecompositionNode::Kind::point:
            return point_triangulation(node.simplex.front());
        case DecompositionNode::Kind::dilation: {
            Triangulation child = triangulate_node(node.children.front(), opt);
            ensure_certificate(child);
            return refine_dilation(child, node.lambda, opt.certify_intermediate);
        }
        case DecompositionNode::Kind::join: {
            Triangulation acc = translate(triangulate_node(node.children.front(), opt), node.translations.front());
            for (std::size_t i = 1; i < node.children.size(); ++i) {
                Triangulation next = translate(triangulate_node(node.children[i], opt), node.translations[i]);
                acc = join(acc, next, opt.certify_intermediate);
            }
            return acc;
        }
    }
    throw ConventionError("unknown decomposition node");
}

}  // namespace detail

/// b.c.b.-triangulation of the transformed simplex described by a decomposition.
inline Triangulation triangulate(const WatanabeDecomposition& dec, const TriangulateOptions& opt = {}) {
    Triangulation t = detail::triangulate_node(dec.root, opt);
    attach_certificate(t);
    return t;
}

}  // namespace crepant
