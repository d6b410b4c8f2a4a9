#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <utility>
#include <vector>

#include "crepant/errors.hpp"
#include "crepant/triangulation.hpp"

namespace crepant {

/// Value of the Heaviside support function at a lattice point y (with y_0 = 0).
inline std::int64_t heaviside_height(const std::int64_t* y, int d) {
    std::int64_t total = 0;
    for (int i = 0; i <= d; ++i)
        for (int j = i + 1; j <= d; ++j) {
            std::int64_t a = i == 0 ? 0 : y[i - 1];
            std::int64_t t = y[j - 1] - a;
            if (t < 0) t = -t;
            total = arith::add(total, arith::mul(t, t + 1) / 2);
        }
    return -total;
}

inline std::int64_t heaviside_height(const IntVector& y) { return heaviside_height(y.data(), static_cast<int>(y.size())); }

/// Combinatorial data of the staircase triangulation of lambda * s_d, where
/// s_d = conv{0, e1, e1 + e2, ..., e1 + ... + ed} = {1 >= y1 >= ... >= yd >= 0}.
struct StaircaseComplex {
    int dim = 0;
    std::int64_t lambda = 1;
    std::vector<IntVector> points;
    std::vector<std::uint32_t> cells;  // sorted tuples, stride dim + 1
    std::vector<std::uint16_t> colour;
    std::vector<std::int64_t> psi_bar;
    /// boundary[c]: (cell, position of the vertex off the facet) for every cell facet
    /// lying in the boundary facet opposite lambda * v_c.
    std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> boundary;

    std::size_t cell_count() const { return cells.size() / static_cast<std::size_t>(dim + 1); }
};

namespace detail {

inline bool in_dilated_standard(const IntVector& y, std::int64_t lambda) {
    std::int64_t prev = lambda;
    for (auto v : y) {
        if (v > prev) return false;
        prev = v;
    }
    return prev >= 0;
}

// y_c = y_{c+1} with y_0 = lambda and y_{d+1} = 0.
inline bool on_boundary_facet(const IntVector& y, int c, std::int64_t lambda) {
    const int d = static_cast<int>(y.size());
    std::int64_t a = c == 0 ? lambda : y[static_cast<std::size_t>(c - 1)];
    std::int64_t b = c == d ? 0 : y[static_cast<std::size_t>(c)];
    return a == b;
}

}  // namespace detail

inline StaircaseComplex staircase_complex(int d, std::int64_t lambda) {
    if (d < 0) throw InvalidParameter("staircase dimension must be non-negative");
    if (lambda == 0) throw EmptyDilation("staircase with lambda = 0");
    if (lambda < 0) throw InvalidParameter("staircase lambda must be positive");
    StaircaseComplex s;
    s.dim = d;
    s.lambda = lambda;
    const auto du = static_cast<std::size_t>(d);
    // Lattice points of lambda * s_d in lexicographic order.
    IntVector y(du, 0);
    std::map<IntVector, std::uint32_t> index;
    auto enumerate = [&](auto&& self, std::size_t pos, std::int64_t upper) -> void {
        if (pos == du) {
            index.emplace(y, static_cast<std::uint32_t>(s.points.size()));
            s.points.push_back(y);
            return;
        }
        for (std::int64_t v = 0; v <= upper; ++v) {
            y[pos] = v;
            self(self, pos + 1, v);
        }
    };
    enumerate(enumerate, 0, lambda);
    for (const auto& p : s.points) {
        std::int64_t sum = std::accumulate(p.begin(), p.end(), std::int64_t(0));
        s.colour.push_back(static_cast<std::uint16_t>(sum % (d + 1)));
        s.psi_bar.push_back(heaviside_height(p));
    }
    if (d == 0) {
        s.cells = {0};
        s.boundary.assign(1, {});
        return s;
    }
    // Cells mu + conv{0, e_theta(1), e_theta(1) + e_theta(2), ...} inside lambda * s_d.
    IntVector mu(du, 0);
    std::vector<int> theta(du);
    std::vector<std::uint32_t> cell(du + 1);
    bool more = true;
    while (more) {
        if (detail::in_dilated_standard(mu, lambda)) {
            std::iota(theta.begin(), theta.end(), 0);
            do {
                IntVector v = mu;
                bool inside = true;
                cell[0] = index.at(v);
                for (std::size_t i = 0; i < du && inside; ++i) {
                    ++v[static_cast<std::size_t>(theta[i])];
                    if (!detail::in_dilated_standard(v, lambda)) {
                        inside = false;
                        break;
                    }
                    cell[i + 1] = index.at(v);
                }
                if (!inside) continue;
                std::sort(cell.begin(), cell.end());
                s.cells.insert(s.cells.end(), cell.begin(), cell.end());
            } while (std::next_permutation(theta.begin(), theta.end()));
        }
        std::size_t p = 0;
        while (p < du && ++mu[p] == lambda) mu[p++] = 0;
        more = p < du;
    }
    s.boundary.assign(du + 1, {});
    const std::size_t k = du + 1;
    for (std::size_t c = 0; c < s.cell_count(); ++c)
        for (int f = 0; f <= d; ++f)
            for (std::size_t pos = 0; pos < k; ++pos) {
                bool on = true;
                for (std::size_t i = 0; i < k && on; ++i)
                    if (i != pos && !detail::on_boundary_facet(s.points[s.cells[c * k + i]], f, lambda)) on = false;
                if (on) s.boundary[static_cast<std::size_t>(f)].emplace_back(c, pos);
            }
    return s;
}

/// The staircase triangulation of lambda * s_d with colours and Heaviside heights.
inline Triangulation staircase(int d, std::int64_t lambda, bool with_certificate = true) {
    auto s = staircase_complex(d, lambda);
    Triangulation t;
    t.n = d;
    t.dim = d;
    for (const auto& p : s.points) t.coords.insert(t.coords.end(), p.begin(), p.end());
    t.cells = s.cells;
    t.colour = s.colour;
    for (auto h : s.psi_bar) t.height.emplace_back(h);
    const auto du = static_cast<std::size_t>(d);
    for (std::size_t i = 0; i <= du; ++i) {
        IntVector v(du, 0);
        for (std::size_t j = 0; j < i; ++j) v[j] = lambda;
        t.ambient.push_back(v);
    }
    if (with_certificate) attach_certificate(t);
    return t;
}

}  // namespace crepant
