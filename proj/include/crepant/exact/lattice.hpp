#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "crepant/errors.hpp"
#include "crepant/exact/matrix.hpp"
#include "crepant/exact/rational.hpp"

namespace crepant {

/// x -> linear * x + translation.
struct AffineMap {
    RationalMatrix linear;
    RationalVector translation;

    std::size_t dim() const { return translation.size(); }

    RationalVector apply(const RationalVector& x) const {
        RationalVector y = linear * x;
        for (std::size_t i = 0; i < y.size(); ++i) y[i] += translation[i];
        return y;
    }

    AffineMap inverse() const {
        RationalMatrix inv = crepant::inverse(linear);
        RationalVector t = inv * translation;
        for (auto& v : t) v = -v;
        return {inv, t};
    }

    /// (*this) after (first).
    AffineMap after(const AffineMap& first) const {
        RationalVector t = linear * first.translation;
        for (std::size_t i = 0; i < t.size(); ++i) t[i] += translation[i];
        return {linear * first.linear, t};
    }
};

/// A full-rank lattice in Q^d given by a basis.
class LatticeBasis {
public:
    LatticeBasis() = default;
    LatticeBasis(std::vector<RationalVector> vectors, std::string label)
        : vectors_(std::move(vectors)), label_(std::move(label)) {
        if (vectors_.empty()) throw ShapeError("empty lattice basis");
        for (const auto& v : vectors_)
            if (v.size() != vectors_.size()) throw ShapeError("lattice basis must be square");
        matrix_ = RationalMatrix::from_columns(vectors_);
        det_ = crepant::det(matrix_);
        if (det_ == 0) throw SingularMatrixError("lattice basis vectors are linearly dependent");
        inverse_ = crepant::inverse(matrix_);
    }

    static LatticeBasis standard(std::size_t d) {
        std::vector<RationalVector> v;
        for (std::size_t i = 0; i < d; ++i) v.push_back(unit_vector(d, i));
        return LatticeBasis(std::move(v), "Z^" + std::to_string(d));
    }

    /// Lattice generated by Z^d together with extra rational generators.
    static LatticeBasis from_generators(const std::vector<RationalVector>& gens, std::string label);

    std::size_t dim() const { return vectors_.size(); }
    const std::vector<RationalVector>& vectors() const { return vectors_; }
    const std::string& label() const { return label_; }
    /// Basis vectors as columns.
    const RationalMatrix& matrix() const { return matrix_; }
    const RationalMatrix& inverse_matrix() const { return inverse_; }
    const Rational& determinant() const { return det_; }

    RationalVector coordinates(const RationalVector& p) const {
        if (p.size() != dim()) throw DimensionMismatch("point dimension does not match the lattice");
        return inverse_ * p;
    }

    RationalVector point(const RationalVector& coords) const {
        if (coords.size() != dim()) throw DimensionMismatch("coordinate dimension does not match the lattice");
        return matrix_ * coords;
    }

    bool contains(const RationalVector& p) const {
        for (const auto& c : coordinates(p))
            if (!is_integral(c)) return false;
        return true;
    }

private:
    std::vector<RationalVector> vectors_;
    std::string label_;
    RationalMatrix matrix_;
    RationalMatrix inverse_;
    Rational det_;
};

inline RationalVector lattice_coordinates(const LatticeBasis& basis, const RationalVector& p) {
    return basis.coordinates(p);
}

namespace detail {

using IntRow = std::vector<Integer>;

// Row-echelon basis of the integer row lattice spanned by gens (zero rows dropped).
inline std::vector<IntRow> row_lattice_basis(std::vector<IntRow> rows, std::size_t n) {
    std::size_t pivot = 0;
    for (std::size_t c = 0; c < n && pivot < rows.size(); ++c) {
        while (true) {
            std::size_t best = rows.size();
            for (std::size_t r = pivot; r < rows.size(); ++r)
                if (rows[r][c] != 0 && (best == rows.size() || abs(rows[r][c]) < abs(rows[best][c]))) best = r;
            if (best == rows.size()) break;
            std::swap(rows[pivot], rows[best]);
            bool done = true;
            for (std::size_t r = pivot + 1; r < rows.size(); ++r) {
                if (rows[r][c] == 0) continue;
                Integer q = rows[r][c] / rows[pivot][c];
                for (std::size_t j = c; j < n; ++j) rows[r][j] -= q * rows[pivot][j];
                if (rows[r][c] != 0) done = false;
            }
            if (done) {
                ++pivot;
                break;
            }
        }
    }
    rows.resize(pivot);
    return rows;
}

// For a full-row-rank integer matrix H (r x n) finds a unimodular U with
// H U = [T | 0], T lower triangular r x r.
inline void column_reduce(std::vector<IntRow> h, std::size_t n, std::vector<IntRow>& u, std::vector<IntRow>& t) {
    const std::size_t r = h.size();
    u.assign(n, IntRow(n, Integer(0)));
    for (std::size_t i = 0; i < n; ++i) u[i][i] = 1;
    auto col_op = [&](std::size_t dst, std::size_t src, const Integer& q) {  // col dst -= q * col src
        for (auto& row : h) row[dst] -= q * row[src];
        for (auto& row : u) row[dst] -= q * row[src];
    };
    auto col_swap = [&](std::size_t a, std::size_t b) {
        for (auto& row : h) std::swap(row[a], row[b]);
        for (auto& row : u) std::swap(row[a], row[b]);
    };
    for (std::size_t i = 0; i < r; ++i) {
        while (true) {
            std::size_t best = n;
            for (std::size_t j = i; j < n; ++j)
                if (h[i][j] != 0 && (best == n || abs(h[i][j]) < abs(h[i][best]))) best = j;
            if (best == n) throw ShapeError("column_reduce needs full row rank");
            col_swap(i, best);
            bool done = true;
            for (std::size_t j = i + 1; j < n; ++j) {
                if (h[i][j] == 0) continue;
                col_op(j, i, h[i][j] / h[i][i]);
                if (h[i][j] != 0) done = false;
            }
            if (done) break;
        }
    }
    t.assign(r, IntRow(r));
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) t[i][j] = h[i][j];
}

}  // namespace detail

/// Affine frame of the integral affine hull aff(P) ∩ Z^n of a finite point set P.
/// Intrinsic coordinates identify aff(P) ∩ Z^n with Z^rank.
class IntegralFrame {
public:
    IntegralFrame() = default;

    explicit IntegralFrame(const std::vector<IntVector>& points) {
        if (points.empty()) throw ShapeError("frame of an empty point set");
        n_ = points.front().size();
        origin_ = points.front();
        std::vector<detail::IntRow> diffs;
        for (std::size_t p = 1; p < points.size(); ++p) {
            detail::IntRow row(n_);
            for (std::size_t j = 0; j < n_; ++j) row[j] = Integer(points[p][j]) - origin_[j];
            diffs.push_back(std::move(row));
        }
        auto basis = detail::row_lattice_basis(std::move(diffs), n_);
        rank_ = basis.size();
        if (rank_ == 0) {
            index_ = 1;
            u_.assign(n_ * n_, 0);
            for (std::size_t i = 0; i < n_; ++i) u_[i * n_ + i] = 1;
            return;
        }
        std::vector<detail::IntRow> u, t;
        detail::column_reduce(basis, n_, u, t);
        Integer idx = 1;
        for (std::size_t i = 0; i < rank_; ++i) idx *= abs(t[i][i]);
        index_ = idx;
        u_.assign(n_ * n_, 0);
        RationalMatrix um(n_, n_);
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = 0; j < n_; ++j) {
                u_[i * n_ + j] = to_int64(u[i][j]);
                um(i, j) = u[i][j];
            }
        RationalMatrix uinv = crepant::inverse(um);
        basis_.assign(rank_, IntVector(n_));
        for (std::size_t i = 0; i < rank_; ++i)
            for (std::size_t j = 0; j < n_; ++j) basis_[i][j] = to_int64(uinv(i, j));
        identity_ = rank_ == n_;
        if (identity_)
            for (std::size_t i = 0; i < n_ && identity_; ++i)
                for (std::size_t j = 0; j < n_; ++j)
                    if (u_[i * n_ + j] != (i == j ? 1 : 0)) {
                        identity_ = false;
                        break;
                    }
    }

    std::size_t ambient_dim() const { return n_; }
    std::size_t rank() const { return rank_; }
    /// Index of the lattice generated by the point differences inside aff(P) ∩ Z^n.
    const Integer& index() const { return index_; }
    bool saturated() const { return index_ == 1; }
    const IntVector& origin() const { return origin_; }

    /// Intrinsic coordinates; throws if x is not in the affine hull.
    IntVector coordinates(const std::int64_t* x) const {
        IntVector c(rank_);
        if (identity_) {
            for (std::size_t i = 0; i < n_; ++i) c[i] = arith::sub(x[i], origin_[i]);
            return c;
        }
        for (std::size_t j = 0; j < n_; ++j) {
            __int128 acc = 0;
            for (std::size_t i = 0; i < n_; ++i) acc += static_cast<__int128>(x[i] - origin_[i]) * u_[i * n_ + j];
            if (j < rank_)
                c[j] = arith::narrow(acc);
            else if (acc != 0)
                throw DimensionMismatch("point outside the affine hull of the frame");
        }
        return c;
    }

    IntVector coordinates(const IntVector& x) const { return coordinates(x.data()); }

    IntVector embed(const IntVector& c) const {
        IntVector x(origin_);
        for (std::size_t i = 0; i < rank_; ++i)
            for (std::size_t j = 0; j < n_; ++j) x[j] = arith::add(x[j], arith::mul(c[i], basis_[i][j]));
        return x;
    }

private:
    std::size_t n_ = 0;
    std::size_t rank_ = 0;
    IntVector origin_;
    IntVector u_;
    std::vector<IntVector> basis_;
    Integer index_ = 1;
    bool identity_ = false;
};

/// Enumerates the lattice points of a full-dimensional integer simplex in Z^m.
class SimplexScanner {
public:
    explicit SimplexScanner(const std::vector<IntVector>& vertices) {
        if (vertices.empty()) throw ShapeError("empty simplex");
        m_ = vertices.front().size();
        if (vertices.size() != m_ + 1) throw ShapeError("scanner needs a full-dimensional simplex");
        lo_.assign(m_, 0);
        hi_.assign(m_, 0);
        for (std::size_t j = 0; j < m_; ++j) {
            lo_[j] = hi_[j] = vertices[0][j];
            for (const auto& v : vertices) {
                lo_[j] = std::min(lo_[j], v[j]);
                hi_[j] = std::max(hi_[j], v[j]);
            }
        }
        if (m_ == 0) return;
        RationalMatrix edges(m_, m_);
        for (std::size_t i = 1; i <= m_; ++i)
            for (std::size_t j = 0; j < m_; ++j) edges(j, i - 1) = vertices[i][j] - vertices[0][j];
        Rational d = det(edges);
        if (d == 0) throw SingularMatrixError("degenerate simplex");
        RationalMatrix inv = inverse(edges);
        // Barycentric rows scaled by |det| are integral (adjugate).
        Rational scale = d < 0 ? Rational(-d) : d;
        const std::size_t rows = m_ + 1;
        a_.assign(rows * m_, 0);
        b_.assign(rows, 0);
        std::vector<Integer> sum(m_, Integer(0));
        Integer sumb = 0;
        for (std::size_t i = 0; i < m_; ++i) {
            Integer bi = 0;
            for (std::size_t j = 0; j < m_; ++j) {
                Rational v = inv(i, j) * scale;
                Integer vi = numerator_of(v);
                a_[(i + 1) * m_ + j] = to_int64(vi);
                sum[j] += vi;
                bi -= vi * vertices[0][j];
            }
            b_[i + 1] = to_int64(bi);
            sumb += bi;
        }
        for (std::size_t j = 0; j < m_; ++j) a_[j] = to_int64(Integer(-sum[j]));
        b_[0] = to_int64(Integer(numerator_of(scale) - sumb));
        // Bound on the contribution of the coordinates after each level.
        rest_.assign(rows * (m_ + 1), 0);
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t l = m_; l-- > 0;) {
                __int128 a = a_[i * m_ + l];
                __int128 best = std::max(a * lo_[l], a * hi_[l]);
                rest_[i * (m_ + 1) + l] = rest_[i * (m_ + 1) + l + 1] + best;
            }
    }

    std::size_t dim() const { return m_; }

    /// Calls f(const std::int64_t* x) for every lattice point, in lexicographic order.
    template <class F>
    void for_each(F&& f) const {
        IntVector x(m_);
        std::vector<__int128> s(b_.begin(), b_.end());
        if (m_ == 0) {
            f(x.data());
            return;
        }
        recurse(0, x, s, f, nullptr);
    }

    Integer count() const {
        if (m_ == 0) return 1;
        IntVector x(m_);
        std::vector<__int128> s(b_.begin(), b_.end());
        __int128 total = 0;
        auto noop = [](const std::int64_t*) {};
        recurse(0, x, s, noop, &total);
        Integer out = 0;
        // total is non-negative and fits comfortably in 127 bits
        unsigned long long hi = static_cast<unsigned long long>(total >> 64);
        unsigned long long lo = static_cast<unsigned long long>(total);
        out = hi;
        out <<= 64;
        out += lo;
        return out;
    }

private:
    template <class F>
    void recurse(std::size_t level, IntVector& x, std::vector<__int128>& s, F& f, __int128* counter) const {
        const std::size_t rows = m_ + 1;
        if (level + 1 == m_) {
            // Last coordinate: intersect the half-lines a*t + s >= 0.
            __int128 lo = lo_[level], hi = hi_[level];
            for (std::size_t i = 0; i < rows; ++i) {
                __int128 a = a_[i * m_ + level];
                __int128 c = s[i];
                if (a == 0) {
                    if (c < 0) return;
                } else if (a > 0) {
                    __int128 t = ceil_div(-c, a);
                    lo = std::max(lo, t);
                } else {
                    __int128 t = floor_div(c, -a);
                    hi = std::min(hi, t);
                }
            }
            if (lo > hi) return;
            if (counter) {
                *counter += hi - lo + 1;
                return;
            }
            for (__int128 t = lo; t <= hi; ++t) {
                x[level] = static_cast<std::int64_t>(t);
                f(x.data());
            }
            return;
        }
        for (std::int64_t t = lo_[level]; t <= hi_[level]; ++t) {
            bool feasible = true;
            for (std::size_t i = 0; i < rows; ++i) {
                __int128 v = s[i] + static_cast<__int128>(a_[i * m_ + level]) * t;
                if (v + rest_[i * (m_ + 1) + level + 1] < 0) {
                    feasible = false;
                    break;
                }
            }
            if (!feasible) continue;
            for (std::size_t i = 0; i < rows; ++i) s[i] += static_cast<__int128>(a_[i * m_ + level]) * t;
            x[level] = t;
            recurse(level + 1, x, s, f, counter);
            for (std::size_t i = 0; i < rows; ++i) s[i] -= static_cast<__int128>(a_[i * m_ + level]) * t;
        }
    }

    static __int128 floor_div(__int128 a, __int128 b) {  // b > 0
        __int128 q = a / b;
        if ((a % b != 0) && (a < 0)) --q;
        return q;
    }
    static __int128 ceil_div(__int128 a, __int128 b) {  // b > 0
        __int128 q = a / b;
        if ((a % b != 0) && (a > 0)) ++q;
        return q;
    }

    std::size_t m_ = 0;
    IntVector lo_, hi_;
    IntVector a_, b_;
    std::vector<__int128> rest_;
};

namespace detail {

inline bool rational_less(const RationalVector& a, const RationalVector& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

// Barycentric membership of p in the convex hull of pts, by trying every
// affinely independent subset of full affine rank (small inputs only).
inline bool in_hull(const RationalVector& p, const std::vector<RationalVector>& pts, int rank) {
    const std::size_t n = p.size();
    std::vector<std::size_t> pick(static_cast<std::size_t>(rank) + 1);
    std::function<bool(std::size_t, std::size_t)> rec = [&](std::size_t start, std::size_t depth) -> bool {
        if (depth == pick.size()) {
            std::vector<RationalVector> sub;
            for (auto i : pick) sub.push_back(pts[i]);
            if (affine_rank(sub) != rank) return false;
            // Solve p = sum c_i v_i, sum c_i = 1 via least rows that are independent.
            RationalMatrix sys(n + 1, pick.size());
            RationalVector rhs(n + 1);
            for (std::size_t j = 0; j < pick.size(); ++j) {
                for (std::size_t r = 0; r < n; ++r) sys(r, j) = sub[j][r];
                sys(n, j) = 1;
            }
            for (std::size_t r = 0; r < n; ++r) rhs[r] = p[r];
            rhs[n] = 1;
            // pick independent rows
            std::vector<std::size_t> rowsel;
            std::vector<RationalVector> chosen;
            for (std::size_t r = 0; r <= n && rowsel.size() < pick.size(); ++r) {
                auto trial = chosen;
                trial.push_back(sys.row(r));
                RationalVector zero(pick.size(), Rational(0));
                trial.push_back(zero);
                if (affine_rank(trial) == static_cast<int>(trial.size()) - 1) {
                    chosen.push_back(sys.row(r));
                    rowsel.push_back(r);
                }
            }
            RationalMatrix sq(pick.size(), pick.size());
            RationalVector b(pick.size());
            for (std::size_t i = 0; i < rowsel.size(); ++i) {
                for (std::size_t j = 0; j < pick.size(); ++j) sq(i, j) = sys(rowsel[i], j);
                b[i] = rhs[rowsel[i]];
            }
            RationalVector c = solve(sq, b);
            if (sys * c != rhs) return false;
            for (const auto& v : c)
                if (v < 0) return false;
            return true;
        }
        for (std::size_t i = start; i < pts.size(); ++i) {
            pick[depth] = i;
            if (rec(i + 1, depth + 1)) return true;
        }
        return false;
    };
    return rec(0, 0);
}

}  // namespace detail

/// All points of the lattice inside the closed convex hull of the given vertices,
/// sorted lexicographically by their ambient coordinates.
inline std::vector<RationalVector> lattice_points_in_simplex(const std::vector<RationalVector>& vertices,
                                                             const LatticeBasis& basis) {
    if (vertices.empty()) return {};
    const std::size_t n = basis.dim();
    std::vector<RationalVector> coords;
    bool integral = true;
    for (const auto& v : vertices) {
        coords.push_back(basis.coordinates(v));
        for (const auto& c : coords.back())
            if (!is_integral(c)) integral = false;
    }
    const int rank = affine_rank(coords);
    std::vector<RationalVector> out;
    if (integral && static_cast<std::size_t>(rank) + 1 == vertices.size()) {
        std::vector<IntVector> ic;
        for (const auto& c : coords) {
            IntVector v(n);
            for (std::size_t j = 0; j < n; ++j) v[j] = to_int64(c[j]);
            ic.push_back(std::move(v));
        }
        IntegralFrame frame(ic);
        std::vector<IntVector> local;
        for (const auto& v : ic) local.push_back(frame.coordinates(v));
        SimplexScanner scan(local);
        // Ambient point = (q0 + P c) / den for intrinsic coordinates c.
        const std::size_t r = frame.rank();
        Integer den = 1;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) den = lcm_of(den, denominator_of(basis.matrix()(i, j)));
        auto scaled = [&](const IntVector& lat) {
            RationalVector p = basis.point(to_rational(lat));
            std::vector<Integer> v;
            for (auto& x : p) v.push_back(numerator_of(x * Rational(den)));
            return v;
        };
        const auto q0 = scaled(frame.origin());
        std::vector<std::vector<Integer>> cols;
        for (std::size_t k = 0; k < r; ++k) {
            IntVector e(r, 0);
            e[k] = 1;
            auto col = scaled(frame.embed(e));
            for (std::size_t j = 0; j < n; ++j) col[j] -= q0[j];
            cols.push_back(std::move(col));
        }
        std::vector<std::vector<Integer>> nums;
        scan.for_each([&](const std::int64_t* x) {
            std::vector<Integer> num = q0;
            for (std::size_t k = 0; k < r; ++k)
                if (x[k])
                    for (std::size_t j = 0; j < n; ++j) num[j] += cols[k][j] * x[k];
            nums.push_back(std::move(num));
        });
        std::sort(nums.begin(), nums.end());
        out.reserve(nums.size());
        for (const auto& num : nums) {
            RationalVector p(n);
            for (std::size_t j = 0; j < n; ++j) p[j] = make_rational(num[j], den);
            out.push_back(std::move(p));
        }
        return out;
    } else {
        // Bounding-box scan in lattice coordinates with exact membership.
        std::vector<Integer> lo(n), hi(n);
        for (std::size_t j = 0; j < n; ++j) {
            Rational mn = coords[0][j], mx = coords[0][j];
            for (const auto& c : coords) {
                mn = std::min(mn, c[j]);
                mx = std::max(mx, c[j]);
            }
            lo[j] = ceil_of(mn);
            hi[j] = floor_of(mx);
        }
        std::vector<Integer> cur(lo);
        bool empty = false;
        for (std::size_t j = 0; j < n; ++j)
            if (lo[j] > hi[j]) empty = true;
        while (!empty) {
            RationalVector p(n);
            for (std::size_t j = 0; j < n; ++j) p[j] = cur[j];
            auto with = coords;
            with.push_back(p);
            if (affine_rank(with) == rank && detail::in_hull(p, coords, rank)) out.push_back(basis.point(p));
            std::size_t j = n;
            while (j-- > 0) {
                if (cur[j] < hi[j]) {
                    ++cur[j];
                    break;
                }
                cur[j] = lo[j];
            }
            if (j == static_cast<std::size_t>(-1)) break;
        }
    }
    std::sort(out.begin(), out.end(), detail::rational_less);
    return out;
}

inline LatticeBasis LatticeBasis::from_generators(const std::vector<RationalVector>& gens, std::string label) {
    if (gens.empty()) throw ShapeError("no generators");
    const std::size_t d = gens.front().size();
    Integer den = 1;
    for (const auto& g : gens) {
        if (g.size() != d) throw DimensionMismatch("generator dimension mismatch");
        for (const auto& x : g) den = lcm_of(den, denominator_of(x));
    }
    std::vector<detail::IntRow> rows;
    for (std::size_t i = 0; i < d; ++i) {
        detail::IntRow r(d, Integer(0));
        r[i] = den;
        rows.push_back(std::move(r));
    }
    for (const auto& g : gens) {
        detail::IntRow r(d);
        for (std::size_t j = 0; j < d; ++j) r[j] = numerator_of(g[j]) * (den / denominator_of(g[j]));
        rows.push_back(std::move(r));
    }
    auto basis = detail::row_lattice_basis(std::move(rows), d);
    std::vector<RationalVector> vecs;
    for (const auto& r : basis) {
        RationalVector v(d);
        for (std::size_t j = 0; j < d; ++j) v[j] = make_rational(r[j], den);
        vecs.push_back(std::move(v));
    }
    return LatticeBasis(std::move(vecs), std::move(label));
}

}  // namespace crepant
