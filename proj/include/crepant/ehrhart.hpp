#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "crepant/errors.hpp"
#include "crepant/exact/lattice.hpp"
#include "crepant/exact/matrix.hpp"
#include "crepant/simplex_builder.hpp"
#include "crepant/triangulation.hpp"

namespace crepant {

struct EhrhartData {
    int m = 0;
    /// #(kappa P cap N) for kappa = 0..m.
    std::vector<Integer> counts;
    RationalVector a;
    std::vector<Integer> delta;
};

struct TransferMatrix {
    int d = 0;
    RationalMatrix matrix;
    RationalMatrix inverse;
    /// "signed" or "unsigned" Stirling numbers of the first kind.
    std::string convention;
};

namespace detail {

inline Integer binomial(std::int64_t n, std::int64_t k) {
    if (k < 0 || n < 0 || k > n) return 0;
    Integer r = 1;
    for (std::int64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

inline Integer factorial(std::int64_t n) {
    Integer r = 1;
    for (std::int64_t i = 2; i <= n; ++i) r *= i;
    return r;
}

/// Stirling numbers of the first kind s(n, k) for k = 0..n, signed or unsigned.
inline std::vector<Integer> stirling_row(int n, bool is_signed) {
    std::vector<Integer> row = {1};
    for (int i = 0; i < n; ++i) {
        std::vector<Integer> next(row.size() + 1, 0);
        for (std::size_t k = 0; k < row.size(); ++k) {
            next[k + 1] += row[k];
            next[k] += (is_signed ? -1 : 1) * Integer(i) * row[k];
        }
        row = std::move(next);
    }
    return row;
}

/// Coefficients (in kappa) of C(kappa + d, d).
inline RationalVector basic_simplex_a(int d) {
    RationalVector poly = {Rational(1)};
    for (int i = 1; i <= d; ++i) {
        RationalVector next(poly.size() + 1, Rational(0));
        for (std::size_t k = 0; k < poly.size(); ++k) {
            next[k + 1] += poly[k] / i;
            next[k] += poly[k];
        }
        poly = std::move(next);
    }
    return poly;
}

inline RationalMatrix transfer_entries(int d, bool is_signed) {
    const auto s = stirling_row(d, is_signed);
    const Integer f = factorial(d);
    RationalMatrix m(static_cast<std::size_t>(d + 1), static_cast<std::size_t>(d + 1));
    for (int i = 0; i <= d; ++i)
        for (int j = 0; j <= d; ++j) {
            Integer acc = 0;
            for (int p = i; p <= d; ++p) {
                Integer pw = 1;
                for (int e = 0; e < p - i; ++e) pw *= (d - j);
                acc += s[static_cast<std::size_t>(p)] * binomial(p, i) * pw;
            }
            m(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = make_rational(acc, f);
        }
    return m;
}

}  // namespace detail

/// Calibrated transfer matrix: (1, 0, ..., 0) M^T is the a-vector of the basic d-simplex.
inline TransferMatrix transfer_matrix(int d) {
    if (d < 0) throw InvalidParameter("transfer matrix dimension must be non-negative");
    const RationalVector target = detail::basic_simplex_a(d);
    for (bool is_signed : {true, false}) {
        RationalMatrix m = detail::transfer_entries(d, is_signed);
        bool ok = true;
        for (int i = 0; i <= d; ++i)
            if (m(static_cast<std::size_t>(i), 0) != target[static_cast<std::size_t>(i)]) ok = false;
        if (!ok) continue;
        TransferMatrix t{d, m, inverse(m), is_signed ? "signed" : "unsigned"};
        if (!((t.matrix * t.inverse) == RationalMatrix::identity(static_cast<std::size_t>(d + 1))))
            throw ConventionError("transfer matrix inverse check failed");
        return t;
    }
    throw ConventionError("no Stirling convention satisfies the basic-simplex calibration");
}

inline RationalVector a_from_delta(const std::vector<Integer>& delta, const TransferMatrix& t) {
    if (delta.size() != static_cast<std::size_t>(t.d + 1)) throw DimensionMismatch("delta-vector length does not match the matrix");
    RationalVector v;
    for (const auto& x : delta) v.emplace_back(x);
    return t.matrix * v;
}

inline std::vector<Integer> delta_from_a(const RationalVector& a, const TransferMatrix& t) {
    if (a.size() != static_cast<std::size_t>(t.d + 1)) throw DimensionMismatch("a-vector length does not match the matrix");
    std::vector<Integer> out;
    for (const auto& x : t.inverse * a) {
        if (!is_integral(x)) throw CrossCheckFailure("delta-vector entry is not an integer");
        out.push_back(numerator_of(x));
    }
    return out;
}

/// delta-vector from the counts #(kappa P) for kappa = 0..m via the series numerator.
inline std::vector<Integer> delta_from_counts(const std::vector<Integer>& counts) {
    const auto m = static_cast<std::int64_t>(counts.size()) - 1;
    std::vector<Integer> delta(counts.size(), 0);
    for (std::int64_t i = 0; i <= m; ++i)
        for (std::int64_t j = 0; j <= i; ++j)
            delta[static_cast<std::size_t>(i)] += (j % 2 ? -1 : 1) * detail::binomial(m + 1, j) * counts[static_cast<std::size_t>(i - j)];
    return delta;
}

/// Counts lattice points of kappa P for kappa = 0..dim and interpolates the Ehrhart polynomial.
inline EhrhartData ehrhart_bruteforce(const std::vector<RationalVector>& vertices, const LatticeBasis& basis,
                                      int max_dim = 8) {
    if (vertices.empty()) throw ShapeError("empty polytope");
    EhrhartData e;
    e.m = affine_rank(vertices);
    if (e.m + 1 != static_cast<int>(vertices.size())) throw ShapeError("vertices are not affinely independent");
    if (e.m > max_dim) throw BudgetExceeded("Ehrhart brute force is limited to dimension " + std::to_string(max_dim));
    std::vector<RationalVector> coords;
    bool integral = true;
    for (const auto& v : vertices) {
        coords.push_back(basis.coordinates(v));
        for (const auto& c : coords.back())
            if (!is_integral(c)) integral = false;
    }
    e.counts.push_back(1);
    for (int kappa = 1; kappa <= e.m; ++kappa) {
        if (integral && e.m > 0) {
            std::vector<IntVector> pts;
            for (const auto& c : coords) {
                IntVector v;
                for (const auto& x : c) v.push_back(arith::mul(to_int64(x), kappa));
                pts.push_back(std::move(v));
            }
            IntegralFrame frame(pts);
            std::vector<IntVector> local;
            for (const auto& p : pts) local.push_back(frame.coordinates(p));
            e.counts.push_back(SimplexScanner(local).count());
        } else {
            std::vector<RationalVector> scaled = vertices;
            for (auto& v : scaled)
                for (auto& x : v) x *= kappa;
            e.counts.emplace_back(lattice_points_in_simplex(scaled, basis).size());
        }
    }
    // Interpolation through kappa = 0..m.
    const auto n = static_cast<std::size_t>(e.m + 1);
    RationalMatrix van(n, n);
    RationalVector rhs(n);
    for (std::size_t r = 0; r < n; ++r) {
        Rational p = 1;
        for (std::size_t c = 0; c < n; ++c) {
            van(r, c) = p;
            p *= static_cast<std::int64_t>(r);
        }
        rhs[r] = e.counts[r];
    }
    e.a = solve(van, rhs);
    e.delta = delta_from_counts(e.counts);
    return e;
}

inline EhrhartData ehrhart_bruteforce(const LatticeSimplex& s, int max_dim = 8) {
    return ehrhart_bruteforce(s.vertices, s.lattice, max_dim);
}

/// Coefficients of the product of two polynomials given low degree first.
inline std::vector<Integer> convolve(const std::vector<Integer>& x, const std::vector<Integer>& y) {
    std::vector<Integer> out(x.size() + y.size() - 1, 0);
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = 0; j < y.size(); ++j) out[i + j] += x[i] * y[j];
    return out;
}

/// delta-vector of a lambda-dilation from the delta-vector of the simplex.
inline std::vector<Integer> dilate_delta(const std::vector<Integer>& delta, std::int64_t lambda) {
    const int m = static_cast<int>(delta.size()) - 1;
    TransferMatrix t = transfer_matrix(m);
    RationalVector a = a_from_delta(delta, t);
    Integer pw = 1;
    for (auto& x : a) {
        x *= pw;
        pw *= lambda;
    }
    return delta_from_a(a, t);
}

/// delta-vector of the join of two simplices with the given delta-vectors: the
/// convolution, padded with a zero for the extra dimension.
inline std::vector<Integer> join_delta(const std::vector<Integer>& x, const std::vector<Integer>& y) {
    auto out = convolve(x, y);
    out.push_back(0);
    return out;
}

/// Join formula read with both factor a-vectors zero-padded to length d and
/// multiplied by rows of M_{d-1}^{-1}.
inline std::vector<Integer> join_delta_padded(const RationalVector& a1, const RationalVector& a2, int d) {
    TransferMatrix t = transfer_matrix(d - 1);
    auto pad = [&](RationalVector a) {
        a.resize(static_cast<std::size_t>(d), Rational(0));
        return t.inverse * a;
    };
    RationalVector r1 = pad(a1), r2 = pad(a2);
    std::vector<Integer> out(static_cast<std::size_t>(d), 0);
    for (int i = 0; i < d; ++i) {
        Rational acc = 0;
        for (int p = 0; p <= i; ++p) acc += r1[static_cast<std::size_t>(p)] * r2[static_cast<std::size_t>(i - p)];
        if (!is_integral(acc)) throw CrossCheckFailure("padded join formula gives a non-integer entry");
        out[static_cast<std::size_t>(i)] = numerator_of(acc);
    }
    return out;
}

/// delta-vector of a decomposition node by the join and dilation rules.
inline std::vector<Integer> delta_inductive(const DecompositionNode& node) {
    switch (node.kind) {
        case DecompositionNode::Kind::point:
            return {1};
        case DecompositionNode::Kind::dilation:
            return dilate_delta(delta_inductive(node.children.front()), node.lambda);
        case DecompositionNode::Kind::join: {
            auto acc = delta_inductive(node.children.front());
            for (std::size_t i = 1; i < node.children.size(); ++i) acc = join_delta(acc, delta_inductive(node.children[i]));
            return acc;
        }
    }
    throw ConventionError("unknown decomposition node");
}

/// f-vector (f_0, ..., f_m) of the simplicial complex generated by the cells.
inline std::vector<Integer> f_vector(const Triangulation& t) {
    const int k = t.dim + 1;
    if (k > 20) throw BudgetExceeded("face enumeration is limited to dimension 19");
    std::vector<Integer> f(static_cast<std::size_t>(k), 0);
    struct Hash {
        std::size_t operator()(const std::vector<std::uint32_t>& v) const {
            std::uint64_t h = 0x2545f4914f6cdd1dULL;
            for (auto x : v) h = detail::mix64(h ^ x);
            return static_cast<std::size_t>(h);
        }
    };
    std::unordered_set<std::vector<std::uint32_t>, Hash> seen;
    for (std::size_t c = 0; c < t.cell_count(); ++c) {
        const std::uint32_t* s = t.cell_ptr(c);
        for (std::uint32_t mask = 1; mask < (1u << k); ++mask) {
            std::vector<std::uint32_t> face;
            for (int i = 0; i < k; ++i)
                if (mask >> i & 1u) face.push_back(s[i]);
            if (seen.insert(face).second) f[face.size() - 1] += 1;
        }
    }
    return f;
}

/// h-vector (h_0, ..., h_{m+1}) of a triangulated m-ball, from its f-vector.
inline std::vector<Integer> h_vector(const Triangulation& t) {
    auto f = f_vector(t);
    const std::int64_t n = t.dim + 1;
    std::vector<Integer> fm = {1};
    fm.insert(fm.end(), f.begin(), f.end());  // fm[j] = f_{j-1}
    std::vector<Integer> h(static_cast<std::size_t>(n + 1), 0);
    for (std::int64_t i = 0; i <= n; ++i)
        for (std::int64_t j = 0; j <= i; ++j)
            h[static_cast<std::size_t>(i)] += ((i - j) % 2 ? -1 : 1) * detail::binomial(n - j, i - j) * fm[static_cast<std::size_t>(j)];
    return h;
}

struct CohomologyReport {
    int d = 0;
    std::vector<Integer> brute_force;
    std::vector<Integer> inductive;
    std::optional<std::vector<Integer>> triangulation;
    RationalVector a;
    /// dim H^{2i} for i = 0..d-1.
    std::vector<Integer> dims;
    Integer euler = 0;
    std::vector<std::string> routes;
};

/// Three-route delta-vector of the junior simplex; throws CrossCheckFailure on disagreement.
/// Pass a triangulation to include the h-vector route.
inline CohomologyReport cohomology_dims(const SpecialDatum& datum, const Triangulation* t = nullptr) {
    CohomologyReport r;
    r.d = datum.d;
    auto g = build_forest_geometry(datum);
    auto e = ehrhart_bruteforce(g.junior);
    r.brute_force = e.delta;
    r.a = e.a;
    r.routes.push_back("brute-force Ehrhart counts");
    r.inductive = delta_inductive(decompose(datum).root);
    r.routes.push_back("join/dilation induction");
    if (r.inductive != r.brute_force) throw CrossCheckFailure("inductive delta-vector disagrees with brute force");
    if (t) {
        auto h = h_vector(*t);
        if (h.back() != 0) throw CrossCheckFailure("triangulation h-vector has a nonzero top entry");
        h.pop_back();
        r.triangulation = h;
        r.routes.push_back("triangulation h-vector");
        if (h != r.brute_force) throw CrossCheckFailure("triangulation h-vector disagrees with brute force");
    }
    r.dims = r.brute_force;
    Integer sum = 0;
    for (const auto& x : r.dims) sum += x;
    Rational chi = r.a.back() * Rational(detail::factorial(datum.d - 1));
    if (chi != Rational(sum)) throw CrossCheckFailure("Euler characteristic disagrees with the delta-vector sum");
    r.euler = sum;
    return r;
}

inline Integer euler_characteristic(const SpecialDatum& datum) { return cohomology_dims(datum).euler; }

/// Column of dilated a-coefficients for the (d;k) hypersurface: k^j a_j of the basic (d-1)-simplex.
inline RationalVector koh_h_column(int d, std::int64_t k) {
    TransferMatrix t = transfer_matrix(d - 1);
    RationalVector col;
    Integer pw = 1;
    for (int j = 0; j < d; ++j) {
        col.push_back(t.matrix(static_cast<std::size_t>(j), 0) * pw);
        pw *= k;
    }
    return col;
}

inline std::vector<Integer> koh_h_dims(int d, std::int64_t k) {
    return delta_from_a(koh_h_column(d, k), transfer_matrix(d - 1));
}

}  // namespace crepant
