#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "crepant/simplex_builder.hpp"
#include "fixtures.hpp"

using namespace crepant;

namespace {

std::set<IntVector> as_set(const std::vector<IntVector>& v) { return {v.begin(), v.end()}; }

std::set<IntVector> formula_set(const SpecialDatum& s) {
    std::set<IntVector> out;
    for (const auto& v : vertex_formulas(s)) {
        IntVector w;
        for (std::size_t i = 1; i < v.size(); ++i) w.push_back(to_int64(v[i]));
        out.insert(w);
    }
    return out;
}

LatticeSimplex z2(std::vector<RationalVector> v) { return {std::move(v), LatticeBasis::standard(2)}; }

void check_dimension_equation(const DecompositionNode& n) {
    if (n.kind == DecompositionNode::Kind::join) {
        int sum = 0;
        for (const auto& c : n.children) sum += c.dim();
        EXPECT_EQ(n.dim(), sum + static_cast<int>(n.children.size()) - 1);
    }
    if (n.kind == DecompositionNode::Kind::dilation) {
        EXPECT_GE(n.lambda, 2);
        EXPECT_EQ(n.dim(), n.children.front().dim());
    }
    for (const auto& c : n.children) check_dimension_equation(c);
}

// Lattice points of the translated children generate the integral affine hull at every join.
void check_join_hypothesis(const DecompositionNode& n) {
    if (n.kind == DecompositionNode::Kind::join) {
        std::vector<IntVector> generators;
        for (std::size_t i = 0; i < n.children.size(); ++i) {
            std::vector<RationalVector> verts;
            for (const auto& v : n.children[i].simplex) {
                IntVector w(v);
                for (std::size_t j = 0; j < w.size(); ++j) w[j] += n.translations[i][j];
                verts.push_back(to_rational(w));
            }
            for (const auto& p : lattice_points_in_simplex(verts, LatticeBasis::standard(verts.front().size()))) {
                IntVector w;
                for (const auto& x : p) w.push_back(to_int64(x));
                generators.push_back(w);
            }
        }
        IntegralFrame hull(generators);
        EXPECT_TRUE(hull.saturated());
        EXPECT_EQ(static_cast<int>(hull.rank()), n.dim());
    }
    for (const auto& c : n.children) check_join_hypothesis(c);
}

}  // namespace

TEST(BuildPhi, StarThreeTwo) {
    auto g = build_phi(fixtures::star(3, 2));
    EXPECT_EQ(as_set(g.transformed), (std::set<IntVector>{{0, 0}, {2, 0}, {0, 2}}));
    EXPECT_EQ(g.group_order(), 4);
}

TEST(BuildPhi, TwoDimensional) {
    for (std::int64_t k = 2; k <= 6; ++k) {
        auto g = build_phi(fixtures::star(2, k));
        EXPECT_EQ(as_set(g.transformed), (std::set<IntVector>{{0}, {k}}));
    }
}

TEST(BuildPhi, Figure8SymbolicShape) {
    const std::int64_t k17 = 2, k12 = 3, k47 = 5, k45 = 7, k67 = 11;
    auto g = build_phi(fixtures::figure8(k17, k12, k47, k45, k67));
    std::set<IntVector> expected = {
        {0, 0, 0, 0, 0, 0},
        {k17 * k12, 0, 0, 0, 0, 0},
        {0, k17, 0, 0, 0, 0},
        {0, 0, k17, 0, 0, 0},
        {0, 0, k17, k17 * k47 * k45, 0, 0},
        {0, 0, k17, 0, k17 * k47, 0},
        {0, 0, k17, 0, k17 * k47, k17 * k47 * k67},
    };
    EXPECT_EQ(as_set(g.transformed), expected);
}

TEST(BuildPhi, PrintedFigure8VectorsDisagreeWithConstruction) {
    // The printed list places k17 k47 k45 in the sixth coordinate and uses k45 in the last vector.
    const std::int64_t k17 = 2, k12 = 3, k47 = 5, k45 = 7, k67 = 11;
    auto g = build_phi(fixtures::figure8(k17, k12, k47, k45, k67));
    auto got = as_set(g.transformed);
    EXPECT_FALSE(got.count({0, 0, 0, k17, k17 * k47 * k45, 0}));
    EXPECT_FALSE(got.count({0, 0, k17, 0, k17 * k47, k17 * k47 * k45}));
}

TEST(BuildPhi, PhiIsUnimodularOnWeightLattice) {
    for (int d = 2; d <= 5; ++d)
        for (const auto& shapes : fixtures::all_forests(d, {2, 3})) {
            auto g = build_forest_geometry(fixtures::datum(shapes));
            auto m = g.phi.linear * g.weights.basis.matrix();
            EXPECT_TRUE(m.is_integral());
            auto dt = det(m);
            EXPECT_TRUE(dt == 1 || dt == -1);
            RationalVector e1 = unit_vector(static_cast<std::size_t>(d), 0);
            for (const auto& x : g.phi.apply(e1)) EXPECT_EQ(x, 0);
            auto round = g.phi_inverse.apply(g.phi.apply(e1));
            EXPECT_EQ(round, e1);
        }
}

TEST(VertexFormulas, Figure6c) {
    const std::int64_t k14 = 2, k12 = 3, k34 = 5;
    std::set<IntVector> expected = {{0, 0, 0}, {k14 * k12, 0, 0}, {0, k14, 0}, {0, k14, k14 * k34}};
    EXPECT_EQ(formula_set(fixtures::figure6c(k14, k12, k34)), expected);
}

TEST(VertexFormulas, Star) {
    auto got = formula_set(fixtures::star(4, 3));
    EXPECT_EQ(got, (std::set<IntVector>{{0, 0, 0}, {3, 0, 0}, {0, 3, 0}, {0, 0, 3}}));
}

TEST(VertexFormulas, Figure8AllTwo) {
    std::set<IntVector> expected = {
        {0, 0, 0, 0, 0, 0}, {4, 0, 0, 0, 0, 0}, {0, 2, 0, 0, 0, 0}, {0, 0, 2, 0, 0, 0},
        {0, 0, 2, 8, 0, 0}, {0, 0, 2, 0, 4, 0}, {0, 0, 2, 0, 4, 8},
    };
    EXPECT_EQ(formula_set(fixtures::figure8(2, 2, 2, 2, 2)), expected);
}

TEST(VertexFormulas, MatchPhiOnCorpus) {
    for (int d = 2; d <= 6; ++d)
        for (const auto& shapes : fixtures::all_forests(d, {2, 3})) {
            auto s = fixtures::datum(shapes);
            ASSERT_EQ(formula_set(s), as_set(build_forest_geometry(s).transformed));
        }
}

TEST(Decompose, StarIsDilatedJoinOfPoints) {
    auto dec = decompose(fixtures::star(4, 3));
    ASSERT_EQ(dec.root.kind, DecompositionNode::Kind::dilation);
    EXPECT_EQ(dec.root.lambda, 3);
    const auto& j = dec.root.children.front();
    ASSERT_EQ(j.kind, DecompositionNode::Kind::join);
    EXPECT_EQ(j.children.size(), 4u);
    for (const auto& c : j.children) EXPECT_EQ(c.kind, DecompositionNode::Kind::point);
}

TEST(Decompose, Figure9IsJoinOfTwoDilatedSegments) {
    auto dec = decompose(fixtures::figure9(3, 5));
    ASSERT_EQ(dec.root.kind, DecompositionNode::Kind::join);
    ASSERT_EQ(dec.root.children.size(), 2u);
    EXPECT_EQ(dec.root.children[0].kind, DecompositionNode::Kind::dilation);
    EXPECT_EQ(dec.root.children[0].lambda, 3);
    EXPECT_EQ(dec.root.children[1].lambda, 5);
    EXPECT_EQ(dec.root.children[0].dim(), 1);
    EXPECT_EQ(dec.root.children[1].dim(), 1);
}

TEST(Decompose, SinglePointIsLeaf) {
    auto dec = decompose(fixtures::datum({fixtures::leaf()}));
    EXPECT_EQ(dec.root.kind, DecompositionNode::Kind::point);
}

TEST(Decompose, EvaluationReproducesTransformedSimplex) {
    for (int d = 2; d <= 6; ++d)
        for (const auto& shapes : fixtures::all_forests(d, {2, 3})) {
            auto s = fixtures::datum(shapes);
            auto dec = decompose(s);
            auto g = build_forest_geometry(s);
            ASSERT_EQ(as_set(evaluate(dec.root)), as_set(g.transformed));
            ASSERT_EQ(as_set(dec.root.simplex), as_set(g.transformed));
            check_dimension_equation(dec.root);
            if (d <= 5) check_join_hypothesis(dec.root);
        }
}

TEST(VerifyWatanabe, Figure5) {
    EXPECT_TRUE(verify_watanabe(z2({{0, 0}, {1, 2}, {2, 2}}), 2));
    EXPECT_TRUE(verify_watanabe(z2({{0, 0}, {2, 0}, {2, 2}}), 2));
    EXPECT_FALSE(verify_watanabe(z2({{0, 0}, {2, 1}, {1, 2}}), 2));
    EXPECT_FALSE(verify_watanabe(z2({{0, 0}, {4, 1}, {2, 2}}), 2));
}

TEST(VerifyWatanabe, BasicConeIsWatanabe) {
    LatticeSimplex s{{{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}}, LatticeBasis::standard(3)};
    EXPECT_TRUE(verify_watanabe(s, 3));
}

TEST(VerifyWatanabe, BudgetExceeded) {
    LatticeSimplex s{{{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}}, LatticeBasis::standard(3)};
    EXPECT_THROW(verify_watanabe(s, 2), BudgetExceeded);
    EXPECT_THROW(verify_watanabe(s, 5), BudgetExceeded);
}

TEST(VerifyWatanabe, TransformedSimplicesOfCorpus) {
    for (int d = 2; d <= 4; ++d)
        for (const auto& shapes : fixtures::all_forests(d, {2, 3})) {
            auto g = build_forest_geometry(fixtures::datum(shapes));
            LatticeSimplex s{{}, LatticeBasis::standard(static_cast<std::size_t>(d - 1))};
            for (const auto& v : g.transformed) s.vertices.push_back(to_rational(v));
            EXPECT_TRUE(verify_watanabe(s, 3));
        }
}

TEST(VerifyWatanabe, JuniorSimplexInWeightLattice) {
    auto g = build_phi(fixtures::figure6b(2, 3));
    EXPECT_TRUE(verify_watanabe(g.junior, 3));
}

TEST(VerifyWatanabe, CyclicQuotientIsNotWatanabe) {
    auto n = LatticeBasis::from_generators({{make_rational(3, 7), make_rational(3, 7), make_rational(1, 7)}}, "N");
    LatticeSimplex s{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}, n};
    EXPECT_FALSE(verify_watanabe(s, 2));
}
