#include "erbound/cutset.hpp"
#include "erbound/region.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace erb;

namespace {

std::vector<HalfPlane> eq1() {
    return {HalfPlane(4, 0, 1), HalfPlane(3, 1, 1), HalfPlane(15, 10, 6), HalfPlane(5, 10, 3), HalfPlane(0, 10, 1)};
}

std::vector<HalfPlane> cutset(int n, int k) { return cutset_facets(n, k, n - 1).facets; }

std::vector<Point2> points(std::initializer_list<std::pair<Rational, Rational>> ps) {
    std::vector<Point2> out;
    for (const auto& [a, b] : ps) out.push_back({a, b});
    return out;
}

// Brute-force corner oracle: every pairwise intersection of the input lines
// that satisfies all inputs, deduplicated and sorted.
std::vector<Point2> corner_oracle(const std::vector<HalfPlane>& hs) {
    std::vector<Point2> out;
    for (std::size_t i = 0; i < hs.size(); ++i)
        for (std::size_t j = i + 1; j < hs.size(); ++j) {
            const HalfPlane &p = hs[i], &q = hs[j];
            Rational det = p.a() * q.b() - p.b() * q.a();
            if (det == 0) continue;
            Point2 x{(p.c() * q.b() - p.b() * q.c()) / det, (p.a() * q.c() - p.c() * q.a()) / det};
            bool ok = true;
            for (const auto& h : hs) ok = ok && h.satisfied_by(x.alpha, x.beta);
            if (ok && std::find(out.begin(), out.end(), x) == out.end()) out.push_back(x);
        }
    std::sort(out.begin(), out.end(), [](const Point2& x, const Point2& y) { return x.alpha < y.alpha; });
    return out;
}

}  // namespace

TEST(HalfPlane, NormalizesToCoprimeIntegers) {
    HalfPlane h(Rational(3, 2), Rational(1), Rational(3, 5));
    EXPECT_EQ(h.a(), 15);
    EXPECT_EQ(h.b(), 10);
    EXPECT_EQ(h.c(), 6);
    EXPECT_EQ(h, HalfPlane(30, 20, 12));
    EXPECT_EQ(h.to_string(), "15ᾱ+10β̄ ≥ 6");
    EXPECT_THROW(HalfPlane(0, 0, 1), std::invalid_argument);
}

TEST(Region, EqOneVertices) {
    Region2D r = region_from_halfplanes(eq1());
    EXPECT_EQ(r.vertices(), points({{Rational(1, 4), Rational(1, 4)},
                                    {Rational(4, 15), Rational(1, 5)},
                                    {Rational(3, 10), Rational(3, 20)},
                                    {Rational(2, 5), Rational(1, 10)}}));
    EXPECT_EQ(r.halfplanes().size(), 5u);
    EXPECT_EQ(r.vertices(), corner_oracle(eq1()));
}

TEST(Region, CutsetVertices) {
    Region2D r = region_from_halfplanes(cutset(5, 4));
    EXPECT_EQ(r.vertices(), points({{Rational(1, 4), Rational(1, 4)},
                                    {Rational(2, 7), Rational(1, 7)},
                                    {Rational(1, 3), Rational(1, 9)},
                                    {Rational(2, 5), Rational(1, 10)}}));
    EXPECT_EQ(r.halfplanes().size(), 5u);
}

TEST(Region, SingleHalfPlaneHasNoVertices) {
    Region2D r = region_from_halfplanes({HalfPlane(1, 0, 1)});
    EXPECT_TRUE(r.vertices().empty());
    EXPECT_EQ(r.halfplanes().size(), 1u);
    std::string svg = emit_svg(r);
    EXPECT_NE(svg.find("class=\"boundary\""), std::string::npos);
    EXPECT_EQ(boundary_polyline(r, {2, 2}), points({{1, 2}, {1, 0}}));
}

TEST(Region, RedundantFacetIsDropped) {
    auto hs = eq1();
    hs.push_back(HalfPlane(2, 3, 1));
    Region2D r = region_from_halfplanes(hs);
    EXPECT_EQ(r.vertices(), region_from_halfplanes(eq1()).vertices());
    EXPECT_TRUE(regions_equal(r, region_from_halfplanes(eq1())));
}

TEST(Region, EqOneEqualsCutsetPlusProvedLines) {
    auto hs = cutset(5, 4);
    hs.push_back(HalfPlane(15, 10, 6));
    hs.push_back(HalfPlane(5, 10, 3));
    Region2D assembled = region_from_halfplanes(hs);
    Region2D target = region_from_halfplanes(eq1());
    EXPECT_TRUE(regions_equal(assembled, target));
    EXPECT_FALSE(regions_equal(region_from_halfplanes(cutset(5, 4)), target));
    EXPECT_TRUE(regions_equal(target, target));
    // The cut-set corner (2/7, 1/7) violates 15a + 10b >= 6.
    EXPECT_FALSE(target.contains(Rational(2, 7), Rational(1, 7)));
}

TEST(Region, RejectsBadInput) {
    EXPECT_THROW(region_from_halfplanes({}), RegionError);
    EXPECT_THROW(region_from_halfplanes({HalfPlane(-1, 1, 1)}), RegionError);
    EXPECT_THROW(region_from_halfplanes({HalfPlane(1, 1, 0)}), RegionError);
    EXPECT_THROW(parse_emit_format("png"), RegionError);
}

TEST(RegionInvariants, VerticesAreTightOnTwoAndSatisfyAll) {
    std::mt19937_64 rng(51);
    std::uniform_int_distribution<int> coef(0, 12), rhs(1, 5);
    for (int t = 0; t < 200; ++t) {
        std::vector<HalfPlane> hs;
        int m = 1 + static_cast<int>(rng() % 6);
        for (int i = 0; i < m; ++i) {
            int a = coef(rng), b = coef(rng);
            if (a == 0 && b == 0) a = 1;
            hs.emplace_back(a, b, rhs(rng));
        }
        Region2D r = region_from_halfplanes(hs);
        EXPECT_EQ(r.vertices(), corner_oracle(hs));
        for (const auto& v : r.vertices()) {
            int tight = 0;
            for (const auto& h : r.halfplanes()) {
                EXPECT_TRUE(h.satisfied_by(v.alpha, v.beta));
                tight += h.tight_at(v.alpha, v.beta);
            }
            EXPECT_GE(tight, 2);
        }
        // Re-ingesting the non-redundant output is a fixpoint.
        EXPECT_TRUE(regions_equal(region_from_halfplanes(r.halfplanes()), r));
    }
}

TEST(RegionInvariants, EqOneVerticesAreOnTheBoundary) {
    Region2D r = region_from_halfplanes(eq1());
    const Rational eps(1, 1000);
    for (const auto& v : r.vertices()) {
        bool cut = false;
        for (const auto& h : r.halfplanes()) {
            if (!h.tight_at(v.alpha, v.beta)) continue;
            HalfPlane tighter(h.a(), h.b(), h.c() + eps);
            cut = cut || !tighter.satisfied_by(v.alpha, v.beta);
        }
        EXPECT_TRUE(cut);
    }
}

TEST(Emit, CsvListsFractionsDeterministically) {
    Region2D r = region_from_halfplanes(eq1());
    std::string csv = emit_csv(r);
    EXPECT_EQ(csv.rfind("alpha_num,alpha_den,beta_num,beta_den,alpha_dec,beta_dec\n", 0), 0u);
    for (const char* row : {"1,4,1,4,", "4,15,1,5,", "3,10,3,20,", "2,5,1,10,"})
        EXPECT_NE(csv.find(std::string("\n") + row), std::string::npos) << row;
    EXPECT_EQ(emit(r, EmitFormat::csv), csv);
    EXPECT_EQ(emit_csv(region_from_halfplanes(eq1())), csv);
}

TEST(Emit, SvgHasFourLabeledCorners) {
    Region2D r = region_from_halfplanes(eq1());
    std::string svg = emit_svg(r);
    std::size_t markers = 0;
    for (std::size_t p = svg.find("class=\"vertex\""); p != std::string::npos; p = svg.find("class=\"vertex\"", p + 1))
        ++markers;
    EXPECT_EQ(markers, 4u);
    for (const char* label : {"(1/4, 1/4)", "(4/15, 1/5)", "(3/10, 3/20)", "(2/5, 1/10)"})
        EXPECT_NE(svg.find(label), std::string::npos) << label;
    EXPECT_NE(svg.find("width=\"800\" height=\"600\""), std::string::npos);
    EXPECT_NE(svg.find("class=\"feasible\""), std::string::npos);
    EXPECT_EQ(emit_svg(region_from_halfplanes(eq1())), svg);
}
