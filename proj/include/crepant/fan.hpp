#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <unordered_set>
#include <vector>

#include "crepant/errors.hpp"
#include "crepant/exact/lattice.hpp"
#include "crepant/simplex_builder.hpp"
#include "crepant/triangulation.hpp"

namespace crepant {

/// Simplicial fan refining the positive orthant, given by its rays in the lattice N.
struct ResolutionFan {
    LatticeBasis lattice;
    int d = 0;
    std::vector<RationalVector> rays;
    /// Ray coordinates with respect to the lattice basis (flat, stride d).
    std::vector<std::int64_t> ray_coords;
    /// Maximal cones as sorted ray-index tuples (flat, stride d).
    std::vector<std::uint32_t> cones;
    std::size_t source_cells = 0;

    std::size_t cone_count() const { return d == 0 ? 0 : cones.size() / static_cast<std::size_t>(d); }
    std::vector<RationalVector> cone(std::size_t c) const {
        std::vector<RationalVector> out;
        for (int i = 0; i < d; ++i) out.push_back(rays[cones[c * static_cast<std::size_t>(d) + static_cast<std::size_t>(i)]]);
        return out;
    }
};

struct GroupElement {
    RationalVector representative;
    int age = 0;
};

struct CrepancyWitness {
    bool ok = false;
    /// (ray index, coordinate sum) for every ray off the junior hyperplane.
    std::vector<std::pair<std::size_t, Rational>> violations;
};

struct SmoothnessWitness {
    bool ok = false;
    /// multiplicity -> number of cones.
    std::map<Integer, std::size_t> multiplicities;
    /// First few cones with multiplicity other than 1.
    std::vector<std::size_t> singular_cones;
};

namespace detail {

inline Rational coordinate_sum(const RationalVector& v) {
    Rational s = 0;
    for (const auto& x : v) s += x;
    return s;
}

inline ResolutionFan fan_from_coords(const LatticeBasis& lattice, std::vector<std::int64_t> coords,
                                     std::vector<std::uint32_t> cones, std::size_t source_cells) {
    ResolutionFan f;
    f.lattice = lattice;
    f.d = static_cast<int>(lattice.dim());
    const auto d = lattice.dim();
    f.ray_coords = std::move(coords);
    for (std::size_t i = 0; i < f.ray_coords.size() / d; ++i) {
        RationalVector c(d);
        for (std::size_t j = 0; j < d; ++j) c[j] = f.ray_coords[i * d + j];
        f.rays.push_back(lattice.point(c));
    }
    f.cones = std::move(cones);
    f.source_cells = source_cells;
    return f;
}

}  // namespace detail

/// Pulls a triangulation of the transformed simplex back through the inverse of Phi.
inline ResolutionFan build_fan(const JuniorGeometry& g, const Triangulation& t) {
    const auto d = static_cast<std::size_t>(g.d());
    if (t.n + 1 != g.d() || t.dim + 1 != g.d())
        throw DimensionMismatch("triangulation does not live in the transformed coordinates of this datum");
    // Lattice coordinates of Phi^{-1}(0, x) are an integral affine function of x.
    RationalMatrix m = g.weights.basis.inverse_matrix() * g.phi_inverse.linear;
    RationalVector c = g.weights.basis.inverse_matrix() * g.phi_inverse.translation;
    if (!m.is_integral())
        throw LatticeInconsistency("pullback does not map the standard lattice into the lattice of weights");
    for (const auto& x : c)
        if (!is_integral(x)) throw LatticeInconsistency("pullback translation leaves the lattice of weights");
    std::vector<std::int64_t> mi(d * d), ci(d);
    for (std::size_t i = 0; i < d; ++i) {
        ci[i] = to_int64(c[i]);
        for (std::size_t j = 0; j < d; ++j) mi[i * d + j] = to_int64(m(i, j));
    }
    std::vector<std::int64_t> coords(t.vertex_count() * d);
    for (std::size_t v = 0; v < t.vertex_count(); ++v) {
        const std::int64_t* x = t.vertex_ptr(v);
        for (std::size_t i = 0; i < d; ++i) {
            std::int64_t acc = ci[i];
            for (std::size_t j = 1; j < d; ++j) acc = arith::add(acc, arith::mul(mi[i * d + j], x[j - 1]));
            coords[v * d + i] = acc;
        }
    }
    return detail::fan_from_coords(g.weights.basis, std::move(coords), t.cells, t.cell_count());
}

/// Fan over an explicitly supplied triangulation of the junior simplex (points given in R^d).
inline ResolutionFan fan_from_cells(const LatticeBasis& lattice, const std::vector<RationalVector>& points,
                                    std::vector<std::uint32_t> cells) {
    const auto d = lattice.dim();
    std::vector<std::int64_t> coords;
    for (const auto& p : points) {
        if (p.size() != d) throw DimensionMismatch("ray has the wrong dimension");
        for (const auto& x : lattice.coordinates(p)) {
            if (!is_integral(x)) throw LatticeInconsistency("ray generator is not a lattice point");
            coords.push_back(to_int64(x));
        }
    }
    for (auto& x : cells)
        if (x >= points.size()) throw ShapeError("cone refers to a missing ray");
    for (std::size_t c = 0; c + d <= cells.size(); c += d) std::sort(cells.begin() + static_cast<std::ptrdiff_t>(c), cells.begin() + static_cast<std::ptrdiff_t>(c + d));
    const std::size_t n = cells.size() / d;
    return detail::fan_from_coords(lattice, std::move(coords), std::move(cells), n);
}

/// The single cone spanned by e_1, ..., e_d.
inline ResolutionFan orthant_fan(const LatticeBasis& lattice) {
    const auto d = lattice.dim();
    std::vector<RationalVector> pts;
    std::vector<std::uint32_t> cell;
    for (std::size_t i = 0; i < d; ++i) {
        pts.push_back(unit_vector(d, i));
        cell.push_back(static_cast<std::uint32_t>(i));
    }
    return fan_from_cells(lattice, pts, cell);
}

inline CrepancyWitness check_crepant(const ResolutionFan& fan) {
    CrepancyWitness w;
    for (std::size_t i = 0; i < fan.rays.size(); ++i) {
        Rational s = detail::coordinate_sum(fan.rays[i]);
        if (s != 1) w.violations.emplace_back(i, s);
    }
    w.ok = w.violations.empty();
    return w;
}

inline SmoothnessWitness check_smooth(const ResolutionFan& fan) {
    SmoothnessWitness w;
    const auto d = static_cast<std::size_t>(fan.d);
    std::array<std::int64_t, 16 * 16> a;
    std::vector<std::int64_t> flat(d * d);
    std::map<std::int64_t, std::size_t> small;
    for (std::size_t c = 0; c < fan.cone_count(); ++c) {
        const std::uint32_t* cone = fan.cones.data() + c * d;
        Integer mult;
        bool exact = true;
        try {
            for (std::size_t j = 0; j < d; ++j)
                for (std::size_t i = 0; i < d; ++i) a[i * d + j] = fan.ray_coords[cone[j] * d + i];
            std::int64_t det = detail::bareiss_det(a.data(), static_cast<int>(d));
            if (det < 0) det = arith::neg(det);
            ++small[det];
            if (det != 1 && w.singular_cones.size() < 16) w.singular_cones.push_back(c);
        } catch (const OverflowError&) {
            exact = false;
        }
        if (!exact) {
            for (std::size_t j = 0; j < d; ++j)
                for (std::size_t i = 0; i < d; ++i) flat[i * d + j] = fan.ray_coords[cone[j] * d + i];
            mult = abs(int_det(flat, static_cast<int>(d)));
            ++w.multiplicities[mult];
            if (mult != 1 && w.singular_cones.size() < 16) w.singular_cones.push_back(c);
        }
    }
    for (const auto& [m, n] : small) w.multiplicities[Integer(m)] += n;
    w.ok = !w.multiplicities.empty() && w.multiplicities.size() == 1 && w.multiplicities.begin()->first == 1;
    return w;
}

/// Every weight vector has an integral coordinate sum.
inline bool check_gorenstein(const std::vector<RationalVector>& weights) {
    for (const auto& w : weights)
        if (!is_integral(detail::coordinate_sum(w))) return false;
    return true;
}

inline bool check_gorenstein(const SpecialDatum& datum) {
    std::vector<RationalVector> w;
    for (const auto& g : group_generators(datum)) w.push_back(g.exponents);
    return check_gorenstein(w);
}

namespace detail {

struct VecHash {
    std::size_t operator()(const IntVector& v) const {
        std::uint64_t h = 0x51ed270b27f3a6c5ULL;
        for (auto x : v) h = mix64(h ^ static_cast<std::uint64_t>(x));
        return static_cast<std::size_t>(h);
    }
};

/// Closure of {0} under the given generators modulo Z^d.
inline std::vector<GroupElement> close_group(const std::vector<RationalVector>& gens, std::size_t d, const Integer& bound) {
    Integer den = 1;
    for (const auto& g : gens)
        for (const auto& x : g) den = lcm_of(den, denominator_of(x));
    const std::int64_t l = to_int64(den);
    std::vector<IntVector> steps;
    for (const auto& g : gens) {
        IntVector s(d);
        for (std::size_t i = 0; i < d; ++i) {
            Rational r = g[i] - Rational(floor_of(g[i]));
            s[i] = to_int64(numerator_of(r) * (den / denominator_of(r)));
        }
        steps.push_back(std::move(s));
    }
    std::unordered_set<IntVector, VecHash> seen;
    std::vector<IntVector> order = {IntVector(d, 0)};
    seen.insert(order.front());
    for (std::size_t q = 0; q < order.size(); ++q) {
        for (const auto& s : steps) {
            IntVector next = order[q];
            for (std::size_t i = 0; i < d; ++i) next[i] = (next[i] + s[i]) % l;
            if (seen.insert(next).second) {
                order.push_back(next);
                if (Integer(order.size()) > bound) throw LatticeInconsistency("group closure exceeds the determinant bound");
            }
        }
    }
    std::sort(order.begin(), order.end());
    std::vector<GroupElement> out;
    out.reserve(order.size());
    for (const auto& v : order) {
        GroupElement e;
        std::int64_t total = 0;
        for (auto x : v) {
            e.representative.push_back(make_rational(x, l));
            total += x;
        }
        e.age = static_cast<int>(total / l);
        if (total % l != 0) e.age = -1;
        out.push_back(std::move(e));
    }
    return out;
}

inline Integer lattice_index(const LatticeBasis& lattice) {
    Rational inv = 1 / lattice.determinant();
    if (inv < 0) inv = -inv;
    if (!is_integral(inv)) throw LatticeInconsistency("lattice does not contain the standard lattice");
    return numerator_of(inv);
}

}  // namespace detail

/// Group elements as points of the half-open unit cube, sorted by their numerators.
/// An age of -1 marks a non-integral coordinate sum (non-Gorenstein input).
inline std::vector<GroupElement> enumerate_group(const LatticeBasis& lattice) {
    auto out = detail::close_group(lattice.vectors(), lattice.dim(), detail::lattice_index(lattice));
    if (Integer(out.size()) != detail::lattice_index(lattice))
        throw LatticeInconsistency("group closure does not reach the lattice index");
    return out;
}

inline std::vector<GroupElement> enumerate_group(const JuniorGeometry& g) {
    std::vector<RationalVector> gens;
    for (const auto& gen : group_generators(g.datum)) gens.push_back(gen.exponents);
    auto out = detail::close_group(gens, static_cast<std::size_t>(g.d()), g.group_order());
    if (Integer(out.size()) != g.group_order())
        throw LatticeInconsistency("group closure does not reach the lattice index");
    return out;
}

/// Lattice points of the junior simplex other than its vertices.
inline std::vector<RationalVector> exceptional_divisors(const LatticeBasis& lattice) {
    const auto d = lattice.dim();
    std::vector<RationalVector> verts;
    for (std::size_t i = 0; i < d; ++i) verts.push_back(unit_vector(d, i));
    std::vector<RationalVector> out;
    for (auto& p : lattice_points_in_simplex(verts, lattice))
        if (std::find(verts.begin(), verts.end(), p) == verts.end()) out.push_back(std::move(p));
    return out;
}

inline std::vector<RationalVector> exceptional_divisors(const JuniorGeometry& g) {
    return exceptional_divisors(g.weights.basis);
}

/// Number of lattice points of the junior simplex, counted in the transformed coordinates.
inline Integer junior_point_count(const JuniorGeometry& g) {
    if (g.d() == 1) return 1;
    SimplexScanner scan(g.transformed);
    return scan.count();
}

/// Crepant resolution fan of a three-dimensional quotient given by its lattice,
/// obtained by inserting every lattice point of the junior triangle as a stellar subdivision.
inline ResolutionFan stellar_fan(const LatticeBasis& lattice) {
    if (lattice.dim() != 3) throw InvalidParameter("stellar resolution is implemented for d = 3 only");
    auto points = exceptional_divisors(lattice);
    std::vector<RationalVector> all = {unit_vector(3, 0), unit_vector(3, 1), unit_vector(3, 2)};
    all.insert(all.end(), points.begin(), points.end());
    for (const auto& p : all) {
        if (detail::coordinate_sum(p) != 1)
            throw LatticeInconsistency("lattice point of the junior simplex off the junior plane");
    }
    // Planar coordinates (x1, x2) on the junior plane.
    auto orient = [&](std::uint32_t a, std::uint32_t b, std::uint32_t c) {
        Rational v = (all[b][0] - all[a][0]) * (all[c][1] - all[a][1]) - (all[b][1] - all[a][1]) * (all[c][0] - all[a][0]);
        return v.sign();
    };
    std::vector<std::array<std::uint32_t, 3>> cells = {{0, 1, 2}};
    for (std::uint32_t p = 3; p < all.size(); ++p) {
        std::vector<std::array<std::uint32_t, 3>> next;
        for (const auto& c : cells) {
            const int o = orient(c[0], c[1], c[2]);
            const int s0 = orient(p, c[1], c[2]) * o, s1 = orient(c[0], p, c[2]) * o, s2 = orient(c[0], c[1], p) * o;
            if (s0 < 0 || s1 < 0 || s2 < 0) {
                next.push_back(c);
                continue;
            }
            if (s0 > 0) next.push_back({p, c[1], c[2]});
            if (s1 > 0) next.push_back({c[0], p, c[2]});
            if (s2 > 0) next.push_back({c[0], c[1], p});
        }
        cells = std::move(next);
    }
    std::vector<std::uint32_t> flat;
    for (const auto& c : cells) flat.insert(flat.end(), c.begin(), c.end());
    return fan_from_cells(lattice, all, flat);
}

}  // namespace crepant
