#include <gtest/gtest.h>

#include <set>

#include "crepant/fan.hpp"
#include "crepant/triangulator.hpp"
#include "fixtures.hpp"

using namespace crepant;

namespace {

RationalVector rv(std::initializer_list<std::int64_t> num, std::int64_t den) {
    RationalVector v;
    for (auto x : num) v.push_back(make_rational(x, den));
    return v;
}

LatticeBasis seven_lattice() { return LatticeBasis::from_generators({rv({3, 3, 1}, 7)}, "N"); }

std::set<std::vector<RationalVector>> cone_sets(const ResolutionFan& f) {
    std::set<std::vector<RationalVector>> out;
    for (std::size_t c = 0; c < f.cone_count(); ++c) {
        auto cone = f.cone(c);
        std::sort(cone.begin(), cone.end(), [](const auto& a, const auto& b) {
            return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
        });
        out.insert(cone);
    }
    return out;
}

ResolutionFan pipeline_fan(const SpecialDatum& datum) {
    auto g = build_forest_geometry(datum);
    return build_fan(g, triangulate(decompose(datum)));
}

}  // namespace

TEST(BuildFan, StarThreeTwoHasFourSmoothCrepantCones) {
    auto f = pipeline_fan(fixtures::star(3, 2));
    EXPECT_EQ(f.cone_count(), 4u);
    EXPECT_TRUE(check_crepant(f).ok);
    auto s = check_smooth(f);
    EXPECT_TRUE(s.ok);
    EXPECT_EQ(s.multiplicities.size(), 1u);
}

TEST(BuildFan, UnrefinedJuniorSimplexGivesTheOrthant) {
    auto datum = fixtures::star(3, 2);
    auto g = build_forest_geometry(datum);
    Triangulation t;
    t.n = 2;
    t.dim = 2;
    for (const auto& v : g.transformed) t.coords.insert(t.coords.end(), v.begin(), v.end());
    t.colour = {0, 1, 2};
    t.cells = {0, 1, 2};
    t.ambient = g.transformed;
    auto f = build_fan(g, t);
    ASSERT_EQ(f.cone_count(), 1u);
    auto cone = f.cone(0);
    std::set<RationalVector> rays(cone.begin(), cone.end());
    EXPECT_EQ(rays, (std::set<RationalVector>{unit_vector(3, 0), unit_vector(3, 1), unit_vector(3, 2)}));
    auto s = check_smooth(f);
    EXPECT_FALSE(s.ok);
    EXPECT_EQ(s.multiplicities.begin()->first, 4);
    EXPECT_TRUE(check_crepant(f).ok);
}

TEST(BuildFan, TrivialGroupOrthantIsSmooth) {
    auto f = orthant_fan(LatticeBasis::standard(3));
    EXPECT_TRUE(check_smooth(f).ok);
    EXPECT_TRUE(check_crepant(f).ok);
}

TEST(BuildFan, SevenFixtureUniqueTriangulation) {
    auto n = seven_lattice();
    std::vector<RationalVector> pts = {unit_vector(3, 0), unit_vector(3, 1), unit_vector(3, 2),
                                       rv({3, 3, 1}, 7), rv({2, 2, 3}, 7), rv({1, 1, 5}, 7)};
    std::vector<std::uint32_t> cells = {0, 1, 3, 0, 3, 4, 1, 3, 4, 0, 4, 5, 1, 4, 5, 0, 5, 2, 1, 5, 2};
    auto f = fan_from_cells(n, pts, cells);
    EXPECT_EQ(f.cone_count(), 7u);
    EXPECT_TRUE(check_crepant(f).ok);
    EXPECT_TRUE(check_smooth(f).ok);
    auto stellar = stellar_fan(n);
    EXPECT_EQ(cone_sets(stellar), cone_sets(f));
}

TEST(CheckCrepant, AgeTwoRayIsReported) {
    auto n = seven_lattice();
    std::vector<RationalVector> pts = {unit_vector(3, 0), unit_vector(3, 1), rv({6, 6, 2}, 7)};
    auto f = fan_from_cells(n, pts, {0, 1, 2});
    auto w = check_crepant(f);
    EXPECT_FALSE(w.ok);
    ASSERT_EQ(w.violations.size(), 1u);
    EXPECT_EQ(w.violations[0].first, 2u);
    EXPECT_EQ(w.violations[0].second, 2);
}

TEST(BuildFan, NonLatticeRayIsRejected) {
    auto n = seven_lattice();
    EXPECT_THROW(fan_from_cells(n, {rv({1, 1, 5}, 14), unit_vector(3, 1), unit_vector(3, 2)}, {0, 1, 2}),
                 LatticeInconsistency);
}

TEST(CheckGorenstein, DataAndHandBuiltWeights) {
    EXPECT_TRUE(check_gorenstein(fixtures::figure8(2, 3, 2, 3, 2)));
    EXPECT_TRUE(check_gorenstein(fixtures::star(4, 3)));
    EXPECT_FALSE(check_gorenstein(std::vector<RationalVector>{rv({1, 0, 0}, 2)}));
    EXPECT_TRUE(check_gorenstein(std::vector<RationalVector>{}));
}

TEST(EnumerateGroup, StarThreeTwo) {
    auto g = build_forest_geometry(fixtures::star(3, 2));
    auto elems = enumerate_group(g);
    ASSERT_EQ(elems.size(), 4u);
    std::set<RationalVector> reps;
    for (const auto& e : elems) {
        reps.insert(e.representative);
        EXPECT_EQ(e.age, e.representative == RationalVector(3, Rational(0)) ? 0 : 1);
    }
    EXPECT_EQ(reps, (std::set<RationalVector>{rv({0, 0, 0}, 1), rv({1, 1, 0}, 2), rv({1, 0, 1}, 2), rv({0, 1, 1}, 2)}));
}

TEST(EnumerateGroup, SevenFixtureAges) {
    auto elems = enumerate_group(seven_lattice());
    ASSERT_EQ(elems.size(), 7u);
    std::map<RationalVector, int> ages;
    for (const auto& e : elems) ages[e.representative] = e.age;
    for (std::int64_t j = 0; j < 7; ++j) {
        RationalVector g = {make_rational(3 * j % 7, 7), make_rational(3 * j % 7, 7), make_rational(j % 7, 7)};
        ASSERT_TRUE(ages.count(g));
        const int expected[] = {0, 1, 2, 1, 2, 1, 2};
        EXPECT_EQ(ages[g], expected[j]);
    }
}

TEST(EnumerateGroup, TrivialForest) {
    auto g = build_forest_geometry(fixtures::datum({fixtures::leaf(), fixtures::leaf()}));
    auto elems = enumerate_group(g);
    ASSERT_EQ(elems.size(), 1u);
    EXPECT_EQ(elems[0].age, 0);
    EXPECT_TRUE(exceptional_divisors(g).empty());
}

TEST(ExceptionalDivisors, SevenFixture) {
    auto pts = exceptional_divisors(seven_lattice());
    std::set<RationalVector> got(pts.begin(), pts.end());
    EXPECT_EQ(got, (std::set<RationalVector>{rv({3, 3, 1}, 7), rv({2, 2, 3}, 7), rv({1, 1, 5}, 7)}));
}

TEST(ExceptionalDivisors, FigureNineEdgeDistribution) {
    auto g = build_forest_geometry(fixtures::figure9(3, 5));
    auto pts = exceptional_divisors(g);
    ASSERT_EQ(pts.size(), 6u);
    int on12 = 0, on34 = 0;
    for (const auto& p : pts) {
        if (p[2] == 0 && p[3] == 0) ++on12;
        if (p[0] == 0 && p[1] == 0) ++on34;
    }
    EXPECT_EQ(on12, 2);
    EXPECT_EQ(on34, 4);
}

TEST(FanProperties, CorpusAgreement) {
    for (int d = 1; d <= 5; ++d)
        for (const auto& forest : fixtures::canonical_forests(d, {2, 3})) {
            auto datum = fixtures::datum(forest);
            auto g = build_forest_geometry(datum);
            auto t = triangulate(decompose(datum));
            auto f = build_fan(g, t);
            EXPECT_TRUE(check_crepant(f).ok);
            EXPECT_TRUE(check_smooth(f).ok);
            EXPECT_TRUE(check_gorenstein(datum));
            auto elems = enumerate_group(g);
            EXPECT_EQ(Integer(elems.size()), g.group_order());
            EXPECT_EQ(Integer(f.cone_count()), g.group_order());
            std::set<RationalVector> age_one;
            for (const auto& e : elems) {
                EXPECT_GE(e.age, e.representative == RationalVector(static_cast<std::size_t>(d), Rational(0)) ? 0 : 1);
                if (e.age == 1) age_one.insert(e.representative);
            }
            auto ex = exceptional_divisors(g);
            EXPECT_EQ(std::set<RationalVector>(ex.begin(), ex.end()), age_one);
            EXPECT_EQ(junior_point_count(g), Integer(ex.size() + static_cast<std::size_t>(d)));
        }
}
