#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "crepant/errors.hpp"
#include "crepant/exact/rational.hpp"

namespace crepant {

/// Dense row-major matrix of exact rationals.
class RationalMatrix {
public:
    RationalMatrix() = default;
    RationalMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, Rational(0)) {}

    static RationalMatrix identity(std::size_t n) {
        RationalMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    static RationalMatrix from_rows(const std::vector<RationalVector>& rows) {
        if (rows.empty()) return {};
        RationalMatrix m(rows.size(), rows.front().size());
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != m.cols_) throw ShapeError("ragged rows");
            for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = rows[i][j];
        }
        return m;
    }

    static RationalMatrix from_columns(const std::vector<RationalVector>& cols) {
        return from_rows(cols).transpose();
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool square() const noexcept { return rows_ == cols_; }

    Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    RationalVector row(std::size_t i) const {
        return RationalVector(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                              data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
    }

    RationalVector column(std::size_t j) const {
        RationalVector c(rows_);
        for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
        return c;
    }

    RationalMatrix transpose() const {
        RationalMatrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    RationalMatrix operator*(const RationalMatrix& o) const {
        if (cols_ != o.rows_) throw ShapeError("matrix product shape mismatch");
        RationalMatrix r(rows_, o.cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < cols_; ++k) {
                const Rational& a = (*this)(i, k);
                if (a == 0) continue;
                for (std::size_t j = 0; j < o.cols_; ++j) r(i, j) += a * o(k, j);
            }
        return r;
    }

    RationalVector operator*(const RationalVector& v) const {
        if (v.size() != cols_) throw DimensionMismatch("matrix-vector shape mismatch");
        RationalVector r(rows_, Rational(0));
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) r[i] += (*this)(i, j) * v[j];
        return r;
    }

    bool operator==(const RationalMatrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
    }

    bool is_integral() const {
        for (const auto& x : data_)
            if (!crepant::is_integral(x)) return false;
        return true;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rational> data_;
};

namespace detail {

// Fraction-free Gaussian elimination on the leading n columns of a row-major
// n x cols buffer. Returns false when the leading block is singular.
template <class T>
bool bareiss_eliminate(T* a, int n, int cols, bool& negated) {
    using namespace arith;
    T prev = 1;
    negated = false;
    for (int k = 0; k < n; ++k) {
        if (a[k * cols + k] == 0) {
            int p = k + 1;
            while (p < n && a[p * cols + k] == 0) ++p;
            if (p == n) return false;
            for (int j = 0; j < cols; ++j) std::swap(a[k * cols + j], a[p * cols + j]);
            negated = !negated;
        }
        const T piv = a[k * cols + k];
        for (int i = k + 1; i < n; ++i) {
            const T lead = a[i * cols + k];
            for (int j = k + 1; j < cols; ++j)
                a[i * cols + j] = exact_div(sub(mul(a[i * cols + j], piv), mul(lead, a[k * cols + j])), prev);
            a[i * cols + k] = 0;
        }
        prev = piv;
    }
    return true;
}

template <class T>
T bareiss_det(T* a, int n) {
    if (n == 0) return T(1);
    bool negated = false;
    if (!bareiss_eliminate(a, n, n, negated)) return T(0);
    T d = a[(n - 1) * n + (n - 1)];
    return negated ? arith::neg(d) : d;
}

// Solves A x = b for every right-hand column stored after the first n columns.
// On success returns D (equal to +-det A) and overwrites each right-hand column
// with D * x, which is integral by Cramer's rule.
template <class T>
bool bareiss_solve(T* a, int n, int cols, T& denominator) {
    using namespace arith;
    bool negated = false;
    if (!bareiss_eliminate(a, n, cols, negated)) return false;
    const T D = a[(n - 1) * cols + (n - 1)];
    for (int r = n; r < cols; ++r) {
        for (int i = n - 1; i >= 0; --i) {
            T acc = mul(D, a[i * cols + r]);
            for (int j = i + 1; j < n; ++j) acc = sub(acc, mul(a[i * cols + j], a[j * cols + r]));
            a[i * cols + r] = exact_div(acc, a[i * cols + i]);
        }
    }
    denominator = D;
    return true;
}

inline std::vector<Integer> integral_rows(const RationalMatrix& m, std::vector<Integer>& row_scale,
                                          std::size_t extra_cols = 0) {
    const std::size_t cols = m.cols() + extra_cols;
    std::vector<Integer> out(m.rows() * cols);
    row_scale.assign(m.rows(), Integer(1));
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Integer l = 1;
        for (std::size_t j = 0; j < m.cols(); ++j) l = lcm_of(l, denominator_of(m(i, j)));
        row_scale[i] = l;
        for (std::size_t j = 0; j < m.cols(); ++j)
            out[i * cols + j] = numerator_of(m(i, j)) * (l / denominator_of(m(i, j)));
    }
    return out;
}

}  // namespace detail

/// Exact determinant by fraction-free elimination.
inline Rational det(const RationalMatrix& m) {
    if (!m.square()) throw ShapeError("determinant of a non-square matrix");
    std::vector<Integer> scale;
    auto a = detail::integral_rows(m, scale);
    Integer d = detail::bareiss_det(a.data(), static_cast<int>(m.rows()));
    Integer s = 1;
    for (const auto& x : scale) s *= x;
    return make_rational(d, s);
}

/// Exact solution of m x = b.
inline RationalVector solve(const RationalMatrix& m, const RationalVector& b) {
    if (!m.square()) throw ShapeError("solve needs a square matrix");
    if (b.size() != m.rows()) throw DimensionMismatch("right-hand side length mismatch");
    const std::size_t n = m.rows();
    if (n == 0) return {};
    RationalMatrix aug(n, n + 1);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
        aug(i, n) = b[i];
    }
    std::vector<Integer> scale;
    auto a = detail::integral_rows(aug, scale);
    Integer D;
    if (!detail::bareiss_solve(a.data(), static_cast<int>(n), static_cast<int>(n + 1), D))
        throw SingularMatrixError("singular matrix in solve");
    RationalVector x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = make_rational(a[i * (n + 1) + n], D);
    return x;
}

inline RationalMatrix inverse(const RationalMatrix& m) {
    if (!m.square()) throw ShapeError("inverse of a non-square matrix");
    const std::size_t n = m.rows();
    RationalMatrix aug(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
        aug(i, n + i) = 1;
    }
    std::vector<Integer> scale;
    auto a = detail::integral_rows(aug, scale);
    Integer D;
    if (!detail::bareiss_solve(a.data(), static_cast<int>(n), static_cast<int>(2 * n), D))
        throw SingularMatrixError("singular matrix in inverse");
    RationalMatrix inv(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv(i, j) = make_rational(a[i * 2 * n + n + j], D);
    return inv;
}

/// Affine rank of a point set (dimension of its affine hull); -1 for the empty set.
inline int affine_rank(const std::vector<RationalVector>& pts) {
    if (pts.empty()) return -1;
    const std::size_t n = pts.front().size();
    RationalMatrix m(pts.size() - 1, n);
    for (std::size_t i = 1; i < pts.size(); ++i)
        for (std::size_t j = 0; j < n; ++j) m(i - 1, j) = pts[i][j] - pts[0][j];
    // Rational Gaussian elimination; only used on small inputs.
    std::size_t rank = 0;
    for (std::size_t c = 0; c < n && rank < m.rows(); ++c) {
        std::size_t p = rank;
        while (p < m.rows() && m(p, c) == 0) ++p;
        if (p == m.rows()) continue;
        for (std::size_t j = 0; j < n; ++j) std::swap(m(rank, j), m(p, j));
        for (std::size_t i = rank + 1; i < m.rows(); ++i) {
            if (m(i, c) == 0) continue;
            Rational f = m(i, c) / m(rank, c);
            for (std::size_t j = c; j < n; ++j) m(i, j) -= f * m(rank, j);
        }
        ++rank;
    }
    return static_cast<int>(rank);
}

/// Determinant of a small integer matrix (row-major); exact fallback on overflow.
inline Integer int_det(const std::vector<std::int64_t>& a, int n) {
    try {
        std::vector<std::int64_t> w(a);
        return Integer(detail::bareiss_det(w.data(), n));
    } catch (const OverflowError&) {
        std::vector<Integer> w(a.begin(), a.end());
        return detail::bareiss_det(w.data(), n);
    }
}

}  // namespace crepant
