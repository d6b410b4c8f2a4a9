#include <gtest/gtest.h>

#include "crepant/ehrhart.hpp"
#include "crepant/fan.hpp"
#include "crepant/triangulator.hpp"
#include "fixtures.hpp"

using namespace crepant;

namespace {

std::vector<Integer> iv(std::initializer_list<int> xs) {
    std::vector<Integer> v;
    for (int x : xs) v.emplace_back(x);
    return v;
}

RationalVector binomial_poly(int d) {
    // Oracle: C(kappa + d, d) expanded by repeated multiplication with integer arithmetic.
    std::vector<Integer> num = {1};
    Integer den = 1;
    for (int i = 1; i <= d; ++i) {
        std::vector<Integer> next(num.size() + 1, 0);
        for (std::size_t k = 0; k < num.size(); ++k) {
            next[k + 1] += num[k];
            next[k] += num[k] * i;
        }
        num = next;
        den *= i;
    }
    RationalVector out;
    for (const auto& x : num) out.push_back(make_rational(x, den));
    return out;
}

}  // namespace

TEST(TransferMatrix, CalibrationAndInverseUpToEight) {
    for (int d = 0; d <= 8; ++d) {
        auto t = transfer_matrix(d);
        EXPECT_EQ(t.matrix * t.inverse, RationalMatrix::identity(static_cast<std::size_t>(d + 1)));
        EXPECT_EQ(t.matrix.column(0), binomial_poly(d)) << d;
        EXPECT_EQ(t.convention, "signed");
    }
}

TEST(TransferMatrix, SmallCases) {
    auto t0 = transfer_matrix(0);
    EXPECT_EQ(t0.matrix, RationalMatrix::identity(1));
    auto t1 = transfer_matrix(1);
    EXPECT_EQ(t1.matrix.column(0), (RationalVector{1, 1}));
    EXPECT_EQ(a_from_delta(iv({1, 0}), t1), (RationalVector{1, 1}));
    EXPECT_THROW(transfer_matrix(-1), InvalidParameter);
    EXPECT_THROW(a_from_delta(iv({1, 0, 0}), t1), DimensionMismatch);
}

TEST(TransferMatrix, UnsignedConventionFailsCalibration) {
    for (int d = 2; d <= 6; ++d) {
        auto m = detail::transfer_entries(d, false);
        EXPECT_NE(m.column(0), binomial_poly(d));
    }
}

TEST(Bruteforce, BasicSimplices) {
    for (int m = 0; m <= 5; ++m) {
        std::vector<RationalVector> verts;
        verts.push_back(RationalVector(static_cast<std::size_t>(std::max(m, 1)), Rational(0)));
        for (int i = 0; i < m; ++i) verts.push_back(unit_vector(static_cast<std::size_t>(m), static_cast<std::size_t>(i)));
        if (m == 0) verts.resize(1);
        auto e = ehrhart_bruteforce(verts, LatticeBasis::standard(static_cast<std::size_t>(std::max(m, 1))));
        std::vector<Integer> expected(static_cast<std::size_t>(m + 1), 0);
        expected[0] = 1;
        EXPECT_EQ(e.delta, expected);
        EXPECT_EQ(e.a, binomial_poly(m));
    }
}

TEST(Bruteforce, SegmentOfLengthThree) {
    auto e = ehrhart_bruteforce({{Rational(0)}, {Rational(3)}}, LatticeBasis::standard(1));
    EXPECT_EQ(e.counts, iv({1, 4}));
    EXPECT_EQ(e.a, (RationalVector{1, 3}));
    EXPECT_EQ(e.delta, iv({1, 2}));
}

TEST(Bruteforce, FigureNineJuniorTetrahedron) {
    auto g = build_forest_geometry(fixtures::figure9(3, 5));
    auto e = ehrhart_bruteforce(g.junior);
    EXPECT_EQ(e.delta, iv({1, 6, 8, 0}));
}

TEST(Bruteforce, RationalVerticesUseTheSlowPath) {
    // conv{0, 1/2} has Ehrhart quasi-polynomial data; counts still come out exactly.
    auto e = ehrhart_bruteforce({{Rational(0)}, {make_rational(3, 2)}}, LatticeBasis::standard(1));
    EXPECT_EQ(e.counts, iv({1, 2}));
}

TEST(Bruteforce, BudgetIsEnforced) {
    std::vector<RationalVector> verts = {RationalVector(3, Rational(0)), unit_vector(3, 0), unit_vector(3, 1), unit_vector(3, 2)};
    EXPECT_THROW(ehrhart_bruteforce(verts, LatticeBasis::standard(3), 2), BudgetExceeded);
}

TEST(Inductive, ConvolutionAndDilation) {
    EXPECT_EQ(join_delta(iv({1, 2}), iv({1, 4})), iv({1, 6, 8, 0}));
    EXPECT_EQ(dilate_delta(iv({1}), 7), iv({1}));
    EXPECT_EQ(dilate_delta(iv({1, 0}), 3), iv({1, 2}));
    EXPECT_EQ(dilate_delta(iv({1, 0, 0}), 2), iv({1, 3, 0}));
}

TEST(Inductive, FigureNineMatchesConvolution) {
    auto dec = decompose(fixtures::figure9(3, 5));
    EXPECT_EQ(delta_inductive(dec.root), iv({1, 6, 8, 0}));
}

TEST(Inductive, PaddedJoinReadingDisagreesWithBruteForce) {
    // Factors: segments of lattice length 3 and 5 (a = (1,3) and (1,5)), joined into a 3-simplex.
    auto padded = join_delta_padded({1, 3}, {1, 5}, 4);
    EXPECT_NE(padded, iv({1, 6, 8, 0}));
    auto t1 = transfer_matrix(1);
    auto matrix_form = join_delta(delta_from_a({1, 3}, t1), delta_from_a({1, 5}, t1));
    EXPECT_EQ(matrix_form, iv({1, 6, 8, 0}));
}

TEST(HVector, StaircaseAndTwoCell) {
    EXPECT_EQ(h_vector(staircase(2, 1)), iv({1, 0, 0, 0}));
    auto t = staircase(2, 2);
    auto h = h_vector(t);
    EXPECT_EQ(h, iv({1, 3, 0, 0}));
}

TEST(Cohomology, StarThreeTwo) {
    auto datum = fixtures::star(3, 2);
    auto t = triangulate(decompose(datum));
    auto r = cohomology_dims(datum, &t);
    EXPECT_EQ(r.dims, iv({1, 3, 0}));
    EXPECT_EQ(r.euler, 4);
    EXPECT_EQ(r.routes.size(), 3u);
}

TEST(Cohomology, FigureNineThreeRoutes) {
    auto datum = fixtures::figure9(3, 5);
    auto t = triangulate(decompose(datum));
    auto r = cohomology_dims(datum, &t);
    EXPECT_EQ(r.brute_force, iv({1, 6, 8, 0}));
    EXPECT_EQ(r.inductive, r.brute_force);
    EXPECT_EQ(*r.triangulation, r.brute_force);
    EXPECT_EQ(r.euler, 15);
}

TEST(Cohomology, HypersurfaceColumnFormula) {
    for (auto [d, k] : std::vector<std::pair<int, int>>{{3, 2}, {3, 3}, {4, 2}}) {
        auto r = cohomology_dims(fixtures::star(d, k));
        EXPECT_EQ(koh_h_dims(d, k), r.brute_force) << d << " " << k;
    }
}

TEST(Euler, Values) {
    EXPECT_EQ(euler_characteristic(fixtures::star(4, 3)), 27);
    EXPECT_EQ(euler_characteristic(fixtures::figure9(3, 5)), 15);
    EXPECT_EQ(euler_characteristic(fixtures::datum({fixtures::leaf()})), 1);
    EXPECT_EQ(euler_characteristic(fixtures::datum({fixtures::leaf(), fixtures::leaf(), fixtures::leaf()})), 1);
}

TEST(Properties, CorpusRouteAgreement) {
    for (int d = 1; d <= 5; ++d)
        for (const auto& forest : fixtures::canonical_forests(d, {2, 3})) {
            auto datum = fixtures::datum(forest);
            auto t = triangulate(decompose(datum));
            std::optional<CohomologyReport> r;
            if (t.cell_count() <= 5000)
                ASSERT_NO_THROW(r = cohomology_dims(datum, &t));
            else
                ASSERT_NO_THROW(r = cohomology_dims(datum));
            Integer sum = 0;
            for (const auto& x : r->dims) {
                EXPECT_GE(x, 0);
                sum += x;
            }
            EXPECT_EQ(sum, Integer(t.cell_count()));
            auto g = build_forest_geometry(datum);
            if (d >= 2) {
                EXPECT_EQ(r->dims[1], junior_point_count(g) - d);
            }
        }
}

TEST(Properties, DilationLaw) {
    for (int d = 2; d <= 4; ++d)
        for (const auto& forest : fixtures::canonical_forests(d, {2})) {
            auto g = build_forest_geometry(fixtures::datum(forest));
            auto base = ehrhart_bruteforce(g.junior);
            for (std::int64_t lambda = 2; lambda <= 4; ++lambda) {
                auto verts = g.junior.vertices;
                for (auto& v : verts)
                    for (auto& x : v) x *= lambda;
                auto big = ehrhart_bruteforce(verts, g.junior.lattice);
                Rational pw = 1;
                for (std::size_t j = 0; j < base.a.size(); ++j) {
                    EXPECT_EQ(big.a[j], base.a[j] * pw);
                    pw *= lambda;
                }
            }
        }
}
