#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <set>

#include "crepant/special_data.hpp"
#include "fixtures.hpp"

using namespace crepant;
using fixtures::leaf;
using fixtures::node;

namespace {

SpecialDatum make(int d, std::vector<std::pair<IndexSet, std::int64_t>> entries) {
    SpecialDatum s;
    s.d = d;
    for (auto& [set, w] : entries) s.add(set, w);
    return s;
}

SpecialDatum relabel(const SpecialDatum& s, const std::vector<int>& perm) {
    SpecialDatum out;
    out.d = s.d;
    for (std::size_t i = 0; i < s.sets.size(); ++i) {
        IndexSet t;
        for (int x : s.sets[i]) t.push_back(perm[static_cast<std::size_t>(x - 1)]);
        out.add(t, s.weights[i]);
    }
    return out;
}

}  // namespace

TEST(Validate, StarDatumIsValid) {
    auto s = make(4, {{{1}, 5}, {{2}, 5}, {{3}, 5}, {{4}, 5}, {{1, 2, 3, 4}, 1}});
    EXPECT_TRUE(validate(s).valid);
}

TEST(Validate, MissingSingletonFailsClauseOne) {
    auto s = make(3, {{{1}, 2}, {{2}, 2}, {{1, 2, 3}, 1}});
    auto r = validate(s);
    EXPECT_FALSE(r.valid);
    EXPECT_EQ(r.clause, "(i)");
}

TEST(Validate, NonDivisibleWeightsFailClauseFour) {
    auto s = make(2, {{{1}, 3}, {{2}, 3}, {{1, 2}, 2}});
    auto r = validate(s);
    EXPECT_FALSE(r.valid);
    // Maximal set with weight 2 is caught first, so test the chain inside a weight-1 root.
    auto t = make(3, {{{1}, 3}, {{2}, 3}, {{1, 2}, 2}, {{3}, 2}, {{1, 2, 3}, 1}});
    auto rt = validate(t);
    EXPECT_FALSE(rt.valid);
    EXPECT_EQ(rt.clause, "(iv)");
}

TEST(Validate, CrossingSetsFailClauseTwo) {
    auto s = make(3, {{{1}, 2}, {{2}, 2}, {{3}, 2}, {{1, 2}, 1}, {{2, 3}, 1}});
    auto r = validate(s);
    EXPECT_FALSE(r.valid);
    EXPECT_EQ(r.clause, "(ii)");
    EXPECT_EQ(r.offending.size(), 2u);
}

TEST(Validate, MaximalWeightFailsClauseThree) {
    auto s = make(2, {{{1}, 4}, {{2}, 4}, {{1, 2}, 2}});
    EXPECT_EQ(validate(s).clause, "(iii)");
}

TEST(Validate, UnequalSiblingsFailClauseFive) {
    auto s = make(2, {{{1}, 2}, {{2}, 4}, {{1, 2}, 1}});
    EXPECT_EQ(validate(s).clause, "(v)");
}

TEST(Canonicalize, RelabelsNonContiguousDatum) {
    auto s = make(3, {{{1}, 4}, {{3}, 4}, {{1, 3}, 1}, {{2}, 1}});
    auto c = canonicalize(s);
    auto expected = make(3, {{{1}, 4}, {{2}, 4}, {{1, 2}, 1}, {{3}, 1}});
    EXPECT_EQ(c.datum, expected);
    EXPECT_EQ(c.theta, (std::vector<int>{1, 3, 2}));
    EXPECT_TRUE(is_contiguous(c.datum));
}

TEST(Canonicalize, ContiguousFixedPoint) {
    auto s = fixtures::figure6c(2, 3, 5);
    auto once = canonicalize(s);
    auto twice = canonicalize(once.datum);
    EXPECT_EQ(twice.datum, once.datum);
    EXPECT_EQ(twice.theta, (std::vector<int>{1, 2, 3, 4}));
}

TEST(Canonicalize, InvalidThrows) {
    auto s = make(2, {{{1}, 2}, {{1, 2}, 1}});
    EXPECT_THROW(canonicalize(s), ValidationError);
}

TEST(Canonicalize, IsomorphismInvariantUpToDimensionFour) {
    for (int d = 2; d <= 4; ++d)
        for (const auto& forest : fixtures::all_forests(d, {2, 3})) {
            auto s = fixtures::datum(forest);
            auto base = canonicalize(s);
            std::vector<int> perm(static_cast<std::size_t>(d));
            for (int i = 0; i < d; ++i) perm[static_cast<std::size_t>(i)] = i + 1;
            do {
                auto c = canonicalize(relabel(s, perm));
                ASSERT_EQ(c.datum, base.datum);
                ASSERT_EQ(canonicalize(c.datum).datum, c.datum);
            } while (std::next_permutation(perm.begin(), perm.end()));
        }
}

TEST(Canonicalize, ThetaIsPermutationMappingSets) {
    auto s = relabel(fixtures::figure6d(2, 3, 5), {4, 2, 1, 3});
    auto c = canonicalize(s);
    auto sorted = c.theta;
    std::sort(sorted.begin(), sorted.end());
    EXPECT_EQ(sorted, (std::vector<int>{1, 2, 3, 4}));
    EXPECT_EQ(relabel(s, c.theta), c.datum);
}

TEST(ToForest, Figure6a) {
    auto f = to_forest(fixtures::figure6a(3, 5));
    ASSERT_TRUE(f.is_tree());
    const auto& root = f.node(f.roots[0]);
    EXPECT_EQ(root.first, 1);
    EXPECT_EQ(root.last, 4);
    EXPECT_EQ(root.parameter, 3);
    ASSERT_EQ(root.children.size(), 2u);
    const auto& inner = f.node(root.children[0]);
    EXPECT_EQ(inner.indices(), (IndexSet{1, 2, 3}));
    EXPECT_EQ(inner.parameter, 5);
    EXPECT_EQ(inner.weight, 3);
    EXPECT_EQ(inner.children.size(), 3u);
    EXPECT_EQ(f.node(inner.children[0]).weight, 15);
    EXPECT_EQ(f.node(root.children[1]).indices(), (IndexSet{4}));
}

TEST(ToForest, StarHasSingleParameter) {
    auto f = to_forest(fixtures::star(5, 4));
    ASSERT_TRUE(f.is_tree());
    EXPECT_EQ(f.node(f.roots[0]).children.size(), 5u);
    EXPECT_EQ(f.node(f.roots[0]).parameter, 4);
}

TEST(ToForest, Figure9HasTwoComponents) {
    auto f = to_forest(fixtures::figure9(3, 5));
    EXPECT_EQ(f.components(), 2u);
}

TEST(ToForest, NonContiguousNeedsCanonicalization) {
    auto s = make(3, {{{1}, 4}, {{3}, 4}, {{1, 3}, 1}, {{2}, 1}});
    EXPECT_THROW(to_forest(s), CanonicalizationRequired);
}

TEST(FromForest, StarWeights) {
    auto s = fixtures::star(3, 3);
    EXPECT_EQ(s, make(3, {{{1}, 3}, {{2}, 3}, {{3}, 3}, {{1, 2, 3}, 1}}));
}

TEST(FromForest, Figure8Weights) {
    const std::int64_t k17 = 2, k12 = 3, k47 = 5, k45 = 7, k67 = 11;
    auto s = fixtures::figure8(k17, k12, k47, k45, k67);
    EXPECT_EQ(s.weight_of({1, 2, 3, 4, 5, 6, 7}), 1);
    EXPECT_EQ(s.weight_of({1, 2}), k17);
    EXPECT_EQ(s.weight_of({1}), k17 * k12);
    EXPECT_EQ(s.weight_of({3}), k17);
    EXPECT_EQ(s.weight_of({4, 5, 6, 7}), k17);
    EXPECT_EQ(s.weight_of({4, 5}), k17 * k47);
    EXPECT_EQ(s.weight_of({4}), k17 * k47 * k45);
    EXPECT_EQ(s.weight_of({7}), k17 * k47 * k67);
    EXPECT_TRUE(validate(s).valid);
}

TEST(FromForest, TrivialTree) {
    auto s = fixtures::datum({leaf()});
    EXPECT_EQ(s, make(1, {{{1}, 1}}));
}

TEST(FromForest, ParameterBelowTwoRejected) {
    EXPECT_THROW(fixtures::datum({node(1, {leaf(), leaf()})}), InvalidParameter);
}

TEST(ForestRoundTrip, AllSmallForests) {
    for (int d = 1; d <= 5; ++d)
        for (const auto& shapes : fixtures::all_forests(d, {2, 3})) {
            auto f = forest_from_shapes(shapes);
            auto s = from_forest(f);
            ASSERT_TRUE(validate(s).valid);
            ASSERT_EQ(to_forest(s), f);
            ASSERT_EQ(forest_shapes(to_forest(s)), shapes);
            ASSERT_EQ(from_forest(to_forest(s)), s);
        }
}

TEST(Validate, AcceptsExactlyForestData) {
    // Every laminar family over {1,2,3} containing the singletons, with weights in {1,2,3,4,6},
    // is valid exactly when it comes from a forest with parameters in {2,3}.
    std::set<std::vector<std::pair<IndexSet, std::int64_t>>> from_forests;
    for (int d = 3; d <= 3; ++d)
        for (const auto& shapes : fixtures::all_forests(d, {2, 3}))
            from_forests.insert(canonicalize(fixtures::datum(shapes)).datum.entries());
    const std::vector<IndexSet> extra = {{1, 2}, {2, 3}, {1, 3}, {1, 2, 3}};
    const std::vector<std::int64_t> ws = {1, 2, 3, 4, 6, 9};
    std::size_t accepted = 0;
    for (unsigned mask = 0; mask < 16; ++mask) {
        std::vector<IndexSet> sets = {{1}, {2}, {3}};
        for (unsigned b = 0; b < 4; ++b)
            if (mask >> b & 1u) sets.push_back(extra[b]);
        std::vector<std::size_t> idx(sets.size(), 0);
        while (true) {
            SpecialDatum s;
            s.d = 3;
            for (std::size_t i = 0; i < sets.size(); ++i) s.add(sets[i], ws[idx[i]]);
            bool valid = validate(s).valid;
            if (valid) {
                ++accepted;
                auto c = canonicalize(s).datum;
                bool params_ok = true;
                for (const auto& n : to_forest(c).nodes)
                    if (!n.leaf() && n.parameter > 3) params_ok = false;
                if (params_ok) {
                    EXPECT_TRUE(from_forests.count(c.entries()));
                }
            }
            std::size_t p = 0;
            while (p < idx.size() && ++idx[p] == ws.size()) idx[p++] = 0;
            if (p == idx.size()) break;
        }
    }
    EXPECT_GT(accepted, 0u);
}

TEST(SplittingCodimension, Examples) {
    EXPECT_EQ(splitting_codimension(to_forest(fixtures::figure9(3, 5))), 4);
    EXPECT_EQ(splitting_codimension(to_forest(fixtures::datum({leaf(), leaf(), leaf()}))), 0);
    EXPECT_EQ(splitting_codimension(to_forest(fixtures::star(5, 2))), 5);
    EXPECT_EQ(splitting_codimension(to_forest(fixtures::datum({node(2, {leaf(), leaf()}), leaf()}))), 2);
}

TEST(GroupGenerators, StarDimensionThree) {
    const std::int64_t k = 5;
    auto g = group_generators(fixtures::star(3, k));
    ASSERT_EQ(g.size(), 2u);
    EXPECT_EQ(g[0].exponents, (RationalVector{make_rational(1, k), make_rational(-1, k), 0}));
    EXPECT_EQ(g[1].exponents, (RationalVector{make_rational(1, k), 0, make_rational(-1, k)}));
    EXPECT_EQ(g[0].reduced(), (RationalVector{make_rational(1, k), make_rational(k - 1, k), 0}));
}

TEST(GroupGenerators, Figure6a) {
    const std::int64_t k14 = 3, k13 = 5;
    auto g = group_generators(fixtures::figure6a(k14, k13));
    ASSERT_EQ(g.size(), 3u);
    std::set<std::tuple<int, int, std::int64_t>> got;
    for (const auto& x : g) got.insert({x.plus, x.minus, x.order});
    std::set<std::tuple<int, int, std::int64_t>> expected = {{1, 4, k14}, {1, 2, k14 * k13}, {1, 3, k14 * k13}};
    EXPECT_EQ(got, expected);
}

TEST(GroupGenerators, TrivialForestIsEmpty) {
    EXPECT_TRUE(group_generators(fixtures::datum({leaf(), leaf()})).empty());
}

TEST(GroupGenerators, CountIsDMinusComponents) {
    for (int d = 1; d <= 5; ++d)
        for (const auto& shapes : fixtures::all_forests(d, {2})) {
            auto s = fixtures::datum(shapes);
            EXPECT_EQ(group_generators(s).size(), static_cast<std::size_t>(d) - shapes.size());
        }
}

TEST(WeightLattice, StarThreeTwo) {
    auto w = weight_lattice(fixtures::star(3, 2));
    std::vector<RationalVector> expected = {
        {1, 0, 0}, {make_rational(1, 2), make_rational(-1, 2), 0}, {make_rational(1, 2), 0, make_rational(-1, 2)}};
    EXPECT_EQ(w.basis.vectors(), expected);
    EXPECT_EQ(w.order, 4);
}

TEST(WeightLattice, StarOrderIsPower) {
    for (int d = 2; d <= 6; ++d)
        for (std::int64_t k = 2; k <= 4; ++k) {
            Integer expected = 1;
            for (int i = 1; i < d; ++i) expected *= k;
            EXPECT_EQ(weight_lattice(fixtures::star(d, k)).order, expected);
        }
}

TEST(WeightLattice, TwoDimensional) {
    auto w = weight_lattice(fixtures::star(2, 5));
    EXPECT_EQ(w.order, 5);
    EXPECT_EQ(w.basis.vectors()[1], (RationalVector{make_rational(1, 5), make_rational(-1, 5)}));
}

TEST(WeightLattice, OrderEqualsEdgeProduct) {
    // Independent formula: product of the weights of all children other than the leftmost one.
    for (int d = 2; d <= 5; ++d)
        for (const auto& shapes : fixtures::all_forests(d, {2, 3})) {
            auto s = fixtures::datum(shapes);
            auto f = to_forest(s);
            Integer expected = 1;
            for (const auto& n : f.nodes) {
                if (n.leaf()) continue;
                for (std::size_t i = 1; i < n.children.size(); ++i) expected *= n.weight * n.parameter;
            }
            auto w = weight_lattice(s);
            EXPECT_EQ(w.order, expected);
            EXPECT_GT(w.order, 0);
        }
}
