#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <cstring>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "crepant/errors.hpp"
#include "crepant/exact/lattice.hpp"
#include "crepant/exact/matrix.hpp"

namespace crepant {

/// One epsilon choice made while gluing the pieces of a dilation.
struct EpsilonStep {
    int dim = 0;
    std::int64_t lambda = 1;
    int halvings = 0;
    Rational epsilon = 1;
    std::size_t cross_walls = 0;
};

struct BasicWitness {
    bool ok = false;
    Integer ambient_volume = 0;
    Integer volume_sum = 0;
    /// |det| -> number of cells with that normalized volume.
    std::map<Integer, std::size_t> determinant_histogram;
    /// Per-cell determinants, kept only for small triangulations.
    std::vector<Integer> determinants;
    bool facets_ok = false;
    std::size_t interior_walls = 0;
    std::size_t boundary_facets = 0;
    std::string failure;
};

struct CoherentWitness {
    bool ok = false;
    std::size_t walls = 0;
    std::size_t failing_walls = 0;
    std::optional<Rational> min_margin;
    std::string failure;
};

struct BalancedWitness {
    bool ok = false;
    bool edges_distinct = false;
    bool all_colours = false;
    std::size_t bad_cells = 0;
};

struct Certificate {
    BasicWitness basic;
    CoherentWitness coherent;
    BalancedWitness balanced;
    bool overall = false;
};

/// Lattice triangulation of a simplex with colours and heights.
/// Coordinates are integer vectors of length n (flat, stride n); cells are sorted
/// vertex-index tuples of length dim + 1 (flat).
struct Triangulation {
    int n = 0;
    int dim = 0;
    std::vector<std::int64_t> coords;
    std::vector<std::uint32_t> cells;
    std::vector<std::uint16_t> colour;
    std::vector<Rational> height;
    std::vector<IntVector> ambient;
    std::vector<EpsilonStep> epsilon_trace;
    std::optional<Certificate> certificate;

    std::size_t vertex_count() const { return colour.size(); }
    std::size_t cell_count() const { return cells.size() / static_cast<std::size_t>(dim + 1); }
    const std::int64_t* vertex_ptr(std::size_t i) const { return coords.data() + i * static_cast<std::size_t>(n); }
    IntVector vertex(std::size_t i) const { return IntVector(vertex_ptr(i), vertex_ptr(i) + n); }
    const std::uint32_t* cell_ptr(std::size_t c) const { return cells.data() + c * static_cast<std::size_t>(dim + 1); }
    std::vector<std::uint32_t> cell(std::size_t c) const { return {cell_ptr(c), cell_ptr(c) + dim + 1}; }
};

using CertifiedTriangulation = Triangulation;

namespace detail {

constexpr int kMaxDim = 15;

inline std::uint64_t mix64(std::uint64_t x) {
    x ^= x >> 30;
    x *= 0xbf58476d1ce4e5b9ULL;
    x ^= x >> 27;
    x *= 0x94d049bb133111ebULL;
    x ^= x >> 31;
    return x;
}

struct FacetRecord {
    std::uint64_t hash;
    std::uint32_t cell;
    std::uint32_t pos;
};

inline void radix_sort(std::vector<FacetRecord>& v, std::vector<FacetRecord>& tmp, int passes = 4) {
    if (v.size() < 2048) {
        std::sort(v.begin(), v.end(), [](const FacetRecord& a, const FacetRecord& b) { return a.hash < b.hash; });
        return;
    }
    tmp.resize(v.size());
    std::vector<std::size_t> count(1u << 16);
    for (int pass = 0; pass < passes; ++pass) {
        const int shift = 16 * pass;
        std::fill(count.begin(), count.end(), 0);
        for (const auto& r : v) ++count[(r.hash >> shift) & 0xffffu];
        std::size_t sum = 0;
        for (auto& c : count) {
            std::size_t t = c;
            c = sum;
            sum += t;
        }
        for (const auto& r : v) tmp[count[(r.hash >> shift) & 0xffffu]++] = r;
        v.swap(tmp);
    }
}

/// Matches the facets of all cells. Calls wall(c1, p1, c2, p2) for every facet
/// shared by two cells and boundary(c, p) for every facet of a single cell.
/// Returns an empty string on success, otherwise a description of the defect.
template <class Wall, class Boundary>
std::string match_facets(const Triangulation& t, Wall&& wall, Boundary&& boundary) {
    const std::size_t k = static_cast<std::size_t>(t.dim + 1);
    const std::size_t cells = t.cell_count();
    auto facet_hash = [&](std::size_t c, std::size_t p) {
        const std::uint32_t* s = t.cell_ptr(c);
        std::uint64_t h = 0x9e3779b97f4a7c15ULL;
        for (std::size_t i = 0; i < k; ++i)
            if (i != p) h = mix64(h ^ s[i]);
        return h;
    };
    auto same_facet = [&](const FacetRecord& a, const FacetRecord& b) {
        const std::uint32_t* s = t.cell_ptr(a.cell);
        const std::uint32_t* u = t.cell_ptr(b.cell);
        std::size_t i = 0, j = 0;
        for (std::size_t r = 0; r + 1 < k; ++r, ++i, ++j) {
            if (i == a.pos) ++i;
            if (j == b.pos) ++j;
            if (s[i] != u[j]) return false;
        }
        return true;
    };
    // Facets are bucketed by their smallest vertex, so each one is hashed exactly once and
    // neighbouring walls are visited close together.
    constexpr std::size_t chunk = std::size_t(1) << 23;
    constexpr std::size_t span = std::size_t(1) << 24;
    const std::size_t nv = t.vertex_count();
    auto anchor = [&](std::size_t c, std::size_t p) { return t.cell_ptr(c)[p == 0 ? 1 : 0]; };
    std::vector<std::uint32_t> per_vertex(nv + 1, 0);
    if (k > 1)
        for (std::size_t c = 0; c < cells; ++c) {
            const std::uint32_t* s = t.cell_ptr(c);
            if (s[0] >= nv || s[1] >= nv) return "cell refers to a missing vertex";
            per_vertex[s[0]] += static_cast<std::uint32_t>(k - 1);
            ++per_vertex[s[1]];
        }
    std::vector<std::size_t> bounds = {0};
    std::size_t load = 0;
    for (std::size_t v = 0; v < nv; ++v) {
        if (v > bounds.back() && (load + per_vertex[v] > chunk || v - bounds.back() >= span)) {
            bounds.push_back(v);
            load = 0;
        }
        load += per_vertex[v];
    }
    bounds.push_back(nv);
    std::vector<FacetRecord> recs, tmp;
    for (std::size_t b = 0; b + 1 < bounds.size(); ++b) {
        const std::size_t lo = bounds[b], hi = bounds[b + 1];
        int anchor_bits = 0;
        while ((std::size_t(1) << anchor_bits) < hi - lo) ++anchor_bits;
        recs.clear();
        for (std::size_t c = 0; c < cells; ++c) {
            const std::uint32_t* s = t.cell_ptr(c);
            if (s[0] >= hi || (s[0] < lo && (k < 2 || s[1] < lo))) continue;
            for (std::size_t p = 0; p < k; ++p) {
                const std::size_t a = k > 1 ? anchor(c, p) : 0;
                if (a < lo || a >= hi) continue;
                const std::uint64_t key = (static_cast<std::uint64_t>(a - lo) << 24) | (facet_hash(c, p) >> 40);
                recs.push_back({key, static_cast<std::uint32_t>(c), static_cast<std::uint32_t>(p)});
            }
        }
        radix_sort(recs, tmp, (anchor_bits + 24 + 15) / 16);
        std::size_t i = 0;
        while (i < recs.size()) {
            std::size_t j = i + 1;
            while (j < recs.size() && recs[j].hash == recs[i].hash) ++j;
            if (j - i == 1) {
                boundary(recs[i].cell, recs[i].pos);
            } else if (j - i == 2 && same_facet(recs[i], recs[i + 1])) {
                wall(recs[i].cell, recs[i].pos, recs[i + 1].cell, recs[i + 1].pos);
            } else {
                // Hash collision or a facet shared by more than two cells.
                std::vector<bool> used(j - i, false);
                for (std::size_t a = i; a < j; ++a) {
                    if (used[a - i]) continue;
                    std::vector<std::size_t> group = {a};
                    for (std::size_t c = a + 1; c < j; ++c)
                        if (!used[c - i] && same_facet(recs[a], recs[c])) {
                            used[c - i] = true;
                            group.push_back(c);
                        }
                    if (group.size() == 1)
                        boundary(recs[a].cell, recs[a].pos);
                    else if (group.size() == 2)
                        wall(recs[a].cell, recs[a].pos, recs[group[1]].cell, recs[group[1]].pos);
                    else
                        return "facet shared by " + std::to_string(group.size()) + " cells";
                }
            }
            i = j;
        }
    }
    return {};
}

inline int sign_of(std::int64_t x) { return (x > 0) - (x < 0); }
inline int sign_of(const Integer& x) { return x.sign(); }

inline bool less_ratio(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) {
    return static_cast<__int128>(a) * d < static_cast<__int128>(c) * b;
}
inline bool less_ratio(const Integer& a, const Integer& b, const Integer& c, const Integer& d) { return a * d < c * b; }

/// Exact data shared by the certificate passes, in intrinsic coordinates.
template <class T>
struct Prepared {
    int m = 0;
    std::vector<T> x;        // vertex coordinates, stride m
    std::vector<T> h;        // heights scaled by scale
    Integer scale = 1;
    bool has_heights = false;
    std::vector<std::uint32_t> facet_mask;  // bit k: vertex lies on the ambient facet opposite vertex k
    Integer ambient_volume = 0;
    std::string failure;
};

template <class T>
T to_t(const Integer& v);
template <>
inline std::int64_t to_t<std::int64_t>(const Integer& v) {
    return to_int64(v);
}
template <>
inline Integer to_t<Integer>(const Integer& v) {
    return v;
}

template <class T>
Prepared<T> prepare(const Triangulation& t) {
    using namespace arith;
    Prepared<T> p;
    p.m = t.dim;
    const auto m = static_cast<std::size_t>(t.dim);
    const std::size_t nv = t.vertex_count();
    if (t.ambient.size() != m + 1) {
        p.failure = "ambient simplex has the wrong number of vertices";
        return p;
    }
    IntegralFrame frame(t.ambient);
    if (frame.rank() != m) {
        p.failure = "ambient simplex is degenerate";
        return p;
    }
    std::vector<IntVector> amb;
    for (const auto& a : t.ambient) amb.push_back(frame.coordinates(a));
    p.x.resize(nv * m);
    for (std::size_t i = 0; i < nv; ++i) {
        IntVector c;
        try {
            c = frame.coordinates(t.vertex_ptr(i));
        } catch (const DimensionMismatch&) {
            p.failure = "vertex " + std::to_string(i) + " lies outside the ambient affine hull";
            return p;
        }
        for (std::size_t j = 0; j < m; ++j) p.x[i * m + j] = T(c[j]);
    }
    // Barycentric coordinates with respect to the ambient simplex, scaled by its determinant.
    RationalMatrix e(m, m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) e(j, i) = amb[i + 1][j] - amb[0][j];
    Rational da = m == 0 ? Rational(1) : det(e);
    p.ambient_volume = numerator_of(da < 0 ? Rational(-da) : da);
    std::vector<Integer> adj(m * m);
    if (m > 0) {
        RationalMatrix inv = inverse(e);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j) adj[i * m + j] = numerator_of(inv(i, j) * da);
    }
    const Integer dn = numerator_of(da);
    p.facet_mask.assign(nv, 0);
    std::vector<bool> is_corner(m + 1, false);
    for (std::size_t i = 0; i < nv; ++i) {
        std::vector<Integer> beta(m + 1);
        Integer rest = dn;
        for (std::size_t r = 0; r < m; ++r) {
            Integer acc = 0;
            for (std::size_t j = 0; j < m; ++j) acc += adj[r * m + j] * (Integer(p.x[i * m + j]) - amb[0][j]);
            beta[r + 1] = acc;
            rest -= acc;
        }
        beta[0] = rest;
        std::uint32_t mask = 0;
        int zeros = 0;
        for (std::size_t r = 0; r <= m; ++r) {
            if (beta[r] == 0) {
                mask |= 1u << r;
                ++zeros;
            } else if (beta[r].sign() != dn.sign()) {
                p.failure = "vertex " + std::to_string(i) + " lies outside the ambient simplex";
                return p;
            }
        }
        p.facet_mask[i] = mask;
        if (zeros == static_cast<int>(m))
            for (std::size_t r = 0; r <= m; ++r)
                if (!(mask >> r & 1u)) is_corner[r] = true;
    }
    for (std::size_t r = 0; r <= m; ++r)
        if (!is_corner[r]) {
            p.failure = "ambient vertex " + std::to_string(r) + " is not a vertex of the triangulation";
            return p;
        }
    if (!t.height.empty()) {
        if (t.height.size() != nv) throw IncompleteCertificate("height table does not cover every vertex");
        Integer l = 1;
        for (const auto& v : t.height) l = lcm_of(l, denominator_of(v));
        p.scale = l;
        p.h.resize(nv);
        for (std::size_t i = 0; i < nv; ++i)
            p.h[i] = to_t<T>(numerator_of(t.height[i]) * (l / denominator_of(t.height[i])));
        p.has_heights = true;
    }
    return p;
}

template <class T>
T cell_determinant(const Prepared<T>& p, const std::uint32_t* cell) {
    const int m = p.m;
    if (m == 0) return T(1);
    std::array<T, kMaxDim * kMaxDim> a;
    const T* base = &p.x[static_cast<std::size_t>(cell[0]) * m];
    for (int i = 1; i <= m; ++i) {
        const T* v = &p.x[static_cast<std::size_t>(cell[i]) * m];
        for (int j = 0; j < m; ++j) a[static_cast<std::size_t>(j * m + i - 1)] = arith::sub(v[j], base[j]);
    }
    return bareiss_det(a.data(), m);
}

/// Result of expressing the opposite vertex of a neighbouring cell in the affine frame of a cell.
template <class T>
struct WallSolution {
    bool opposite_sides = false;
    T numerator{};   // margin * D * scale
    T numerator2{};  // same for the second height table
    T denominator{}; // D
};

/// Margin at the wall between c1 and c2: the affine interpolation of the heights
/// on c1 evaluated at the vertex of c2 off the wall, minus that vertex's height.
template <class T>
WallSolution<T> solve_wall(const Prepared<T>& p, const std::uint32_t* c1, int p1, std::uint32_t other,
                           const std::vector<T>* heights, const std::vector<T>* heights2 = nullptr) {
    using namespace arith;
    const int m = p.m;
    const int cols = m + 1;
    std::array<T, kMaxDim*(kMaxDim + 1)> a;
    std::array<int, kMaxDim> order;
    const int base_pos = p1 == 0 ? 1 : 0;
    const std::uint32_t base = c1[base_pos];
    int col = 0, opp_col = -1;
    const T* xb = &p.x[static_cast<std::size_t>(base) * m];
    for (int q = 0; q <= m; ++q) {
        if (q == base_pos) continue;
        if (q == p1) opp_col = col;
        order[static_cast<std::size_t>(col)] = q;
        const T* v = &p.x[static_cast<std::size_t>(c1[q]) * m];
        for (int j = 0; j < m; ++j) a[static_cast<std::size_t>(j * cols + col)] = sub(v[j], xb[j]);
        ++col;
    }
    const T* xo = &p.x[static_cast<std::size_t>(other) * m];
    for (int j = 0; j < m; ++j) a[static_cast<std::size_t>(j * cols + m)] = sub(xo[j], xb[j]);
    WallSolution<T> out;
    T D;
    if (!bareiss_solve(a.data(), m, cols, D)) return out;
    out.denominator = D;
    const T& b_opp = a[static_cast<std::size_t>(opp_col * cols + m)];
    out.opposite_sides = sign_of(b_opp) != 0 && sign_of(b_opp) == -sign_of(D);
    auto margin = [&](const std::vector<T>& h) {
        T acc = mul(D, sub(h[base], h[other]));
        for (int c = 0; c < m; ++c) {
            const T& bc = a[static_cast<std::size_t>(c * cols + m)];
            acc = add(acc, mul(bc, sub(h[c1[order[static_cast<std::size_t>(c)]]], h[base])));
        }
        return acc;
    };
    if (heights) out.numerator = margin(*heights);
    if (heights2) out.numerator2 = margin(*heights2);
    return out;
}

template <class T>
Certificate certify_with(const Triangulation& t, bool want_basic, bool want_coherent, bool want_balanced) {
    Certificate cert;
    const std::size_t k = static_cast<std::size_t>(t.dim + 1);
    const std::size_t ncells = t.cell_count();
    if (want_coherent && t.height.size() != t.vertex_count())
        throw IncompleteCertificate("heights are missing for some vertices");
    if (want_balanced && t.colour.size() != t.vertex_count())
        throw IncompleteCertificate("colours are missing for some vertices");

    if (want_balanced) {
        auto& w = cert.balanced;
        w.edges_distinct = true;
        w.all_colours = true;
        for (std::size_t c = 0; c < ncells; ++c) {
            const std::uint32_t* s = t.cell_ptr(c);
            bool distinct = true, complete = true;
            std::uint32_t seen = 0;
            for (std::size_t i = 0; i < k; ++i) {
                for (std::size_t j = i + 1; j < k; ++j)
                    if (t.colour[s[i]] == t.colour[s[j]]) distinct = false;
                if (t.colour[s[i]] < k) seen |= 1u << t.colour[s[i]];
            }
            complete = seen == (k >= 32 ? ~0u : (1u << k) - 1);
            if (!distinct) w.edges_distinct = false;
            if (!complete) w.all_colours = false;
            if (!distinct || !complete) ++w.bad_cells;
        }
        w.ok = w.edges_distinct && w.all_colours;
    }
    if (!want_basic && !want_coherent) {
        cert.overall = false;
        return cert;
    }

    Prepared<T> p = prepare<T>(t);
    auto& bw = cert.basic;
    auto& cw = cert.coherent;
    if (!p.failure.empty()) {
        bw.failure = cw.failure = p.failure;
        return cert;
    }
    bw.ambient_volume = p.ambient_volume;
    const bool keep_dets = ncells <= 4096;
    std::map<T, std::size_t> histogram;
    std::size_t unit_cells = 0;
    bool sides_ok = true, boundary_ok = true;
    bool min_set = false;
    T min_num{}, min_den{};
    const bool heights = want_coherent && p.has_heights;
    std::string structure;

    // Walls are collected first so that every cell is eliminated once for its
    // determinant and for all the walls it owns.
    constexpr std::uint32_t none = ~0u;
    std::vector<std::uint32_t> opposite;
    if (t.dim == 0) {
        if (ncells != 1) structure = "a point triangulation needs exactly one cell";
    } else {
        opposite.assign(ncells * k, none);
        auto on_wall = [&](std::uint32_t c1, std::uint32_t p1, std::uint32_t c2, std::uint32_t p2) {
            ++bw.interior_walls;
            opposite[static_cast<std::size_t>(c1) * k + p1] = t.cell_ptr(c2)[p2];
        };
        auto on_boundary = [&](std::uint32_t c, std::uint32_t pos) {
            ++bw.boundary_facets;
            const std::uint32_t* s = t.cell_ptr(c);
            std::uint32_t mask = ~0u;
            for (std::size_t i = 0; i < k; ++i)
                if (i != pos) mask &= p.facet_mask[s[i]];
            if (mask == 0) boundary_ok = false;
        };
        structure = match_facets(t, on_wall, on_boundary);
    }

    const int m = t.dim;
    std::array<T, kMaxDim*(2 * kMaxDim + 1)> a;
    std::array<std::uint32_t, kMaxDim + 1> wall_pos;
    for (std::size_t c = 0; c < ncells; ++c) {
        const std::uint32_t* s = t.cell_ptr(c);
        if (m == 0) {
            ++unit_cells;
            if (keep_dets) bw.determinants.push_back(Integer(1));
            continue;
        }
        int walls = 0;
        for (std::size_t q = 0; q < k; ++q)
            if (opposite[c * k + q] != none) wall_pos[static_cast<std::size_t>(walls++)] = static_cast<std::uint32_t>(q);
        const int cols = m + walls;
        const T* x0 = &p.x[static_cast<std::size_t>(s[0]) * static_cast<std::size_t>(m)];
        for (int i = 1; i <= m; ++i) {
            const T* v = &p.x[static_cast<std::size_t>(s[i]) * static_cast<std::size_t>(m)];
            for (int j = 0; j < m; ++j) a[static_cast<std::size_t>(j * cols + i - 1)] = arith::sub(v[j], x0[j]);
        }
        for (int w = 0; w < walls; ++w) {
            const std::uint32_t o = opposite[c * k + wall_pos[static_cast<std::size_t>(w)]];
            const T* v = &p.x[static_cast<std::size_t>(o) * static_cast<std::size_t>(m)];
            for (int j = 0; j < m; ++j) a[static_cast<std::size_t>(j * cols + m + w)] = arith::sub(v[j], x0[j]);
        }
        T D{};
        if (!bareiss_solve(a.data(), m, cols, D)) {
            ++histogram[T(0)];
            if (keep_dets) bw.determinants.push_back(Integer(0));
            if (walls) sides_ok = false;
            continue;
        }
        const T dabs = sign_of(D) < 0 ? arith::neg(D) : D;
        if (dabs == 1)
            ++unit_cells;
        else
            ++histogram[dabs];
        if (keep_dets) bw.determinants.push_back(Integer(dabs));
        for (int w = 0; w < walls; ++w) {
            // Column m + w holds D times the coordinates of the opposite vertex in the frame of s.
            auto b = [&](int i) -> const T& { return a[static_cast<std::size_t>((i - 1) * cols + m + w)]; };
            const std::uint32_t pos = wall_pos[static_cast<std::size_t>(w)];
            const std::uint32_t other = opposite[c * k + pos];
            T bary;
            if (pos == 0) {
                bary = D;
                for (int i = 1; i <= m; ++i) bary = arith::sub(bary, b(i));
            } else {
                bary = b(static_cast<int>(pos));
            }
            if (sign_of(bary) == 0 || sign_of(bary) != -sign_of(D)) sides_ok = false;
            if (!heights) continue;
            const T h0 = p.h[s[0]];
            T num = arith::mul(D, arith::sub(h0, p.h[other]));
            for (int i = 1; i <= m; ++i) num = arith::add(num, arith::mul(b(i), arith::sub(p.h[s[i]], h0)));
            T den = D;
            if (sign_of(den) < 0) {
                num = arith::neg(num);
                den = arith::neg(den);
            }
            if (sign_of(num) <= 0) ++cw.failing_walls;
            if (!min_set || less_ratio(num, den, min_num, min_den)) {
                min_num = num;
                min_den = den;
                min_set = true;
            }
        }
    }
    opposite = {};
    if (unit_cells) histogram[T(1)] += unit_cells;
    Integer vol = 0;
    bool all_unit = true;
    for (const auto& [det_abs, count] : histogram) {
        bw.determinant_histogram[Integer(det_abs)] = count;
        vol += Integer(det_abs) * count;
        if (det_abs != 1) all_unit = false;
    }
    bw.volume_sum = vol;

    cw.walls = bw.interior_walls;
    if (structure.empty() && !sides_ok) structure = "two cells on the same side of a wall";
    if (structure.empty() && !boundary_ok) structure = "unmatched facet in the interior of the simplex";
    bw.facets_ok = structure.empty();
    if (structure.empty() && vol != p.ambient_volume) structure = "cell volumes do not add up to the ambient volume";
    bw.failure = structure;
    bw.ok = all_unit && structure.empty();
    if (!all_unit && bw.failure.empty()) bw.failure = "cell with normalized volume other than 1";

    if (want_coherent) {
        if (min_set) cw.min_margin = make_rational(Integer(min_num), Integer(min_den) * p.scale);
        cw.ok = structure.empty() && cw.failing_walls == 0;
        if (!structure.empty())
            cw.failure = structure;
        else if (cw.failing_walls)
            cw.failure = std::to_string(cw.failing_walls) + " walls without strict convexity";
    }
    cert.overall = want_basic && want_coherent && want_balanced && bw.ok && cw.ok && cert.balanced.ok;
    return cert;
}

inline Certificate certify_parts(const Triangulation& t, bool basic, bool coherent, bool balanced) {
    try {
        return certify_with<std::int64_t>(t, basic, coherent, balanced);
    } catch (const OverflowError&) {
        return certify_with<Integer>(t, basic, coherent, balanced);
    }
}

}  // namespace detail

/// Computes basic, coherent and balanced verdicts from scratch.
inline Certificate certify(const Triangulation& t) { return detail::certify_parts(t, true, true, true); }

inline BasicWitness verify_basic(const Triangulation& t) { return detail::certify_parts(t, true, false, false).basic; }

inline CoherentWitness verify_coherent(const Triangulation& t) {
    if (t.height.size() != t.vertex_count()) throw IncompleteCertificate("heights are missing for some vertices");
    return detail::certify_parts(t, false, true, false).coherent;
}

inline BalancedWitness verify_balanced(const Triangulation& t) {
    if (t.colour.size() != t.vertex_count()) throw IncompleteCertificate("colours are missing for some vertices");
    return detail::certify_parts(t, false, false, true).balanced;
}

/// Attaches a freshly computed certificate.
inline Triangulation& attach_certificate(Triangulation& t) {
    t.certificate = certify(t);
    return t;
}

/// Sorts every cell and the cell list itself, giving a canonical cell order.
inline void normalize_cells(Triangulation& t) {
    const std::size_t k = static_cast<std::size_t>(t.dim + 1);
    const std::size_t nc = t.cell_count();
    for (std::size_t c = 0; c < nc; ++c) std::sort(t.cells.begin() + c * k, t.cells.begin() + (c + 1) * k);
    std::vector<std::size_t> idx(nc);
    for (std::size_t i = 0; i < nc; ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        return std::lexicographical_compare(t.cell_ptr(a), t.cell_ptr(a) + k, t.cell_ptr(b), t.cell_ptr(b) + k);
    });
    std::vector<std::uint32_t> out;
    out.reserve(t.cells.size());
    for (auto i : idx) out.insert(out.end(), t.cell_ptr(i), t.cell_ptr(i) + k);
    t.cells.swap(out);
}

}  // namespace crepant
