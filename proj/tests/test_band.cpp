#include <catch2/catch_amalgamated.hpp>
#include <cmath>
#include <set>
#include <vector>

#include "bandfold/band.hpp"
#include "test_util.hpp"

using namespace bandfold;
using Catch::Approx;

namespace {

ConvexPolygon random_polygon(std::mt19937_64& g, int n) {
    while (true) {
        std::vector<Point2> pts;
        for (int i = 0; i < n + 6; ++i) pts.push_back(testutil::random_disk_point(g));
        const ConvexPolygon h = convex_hull_2d(pts);
        if (static_cast<int>(h.size()) == n) return h;
    }
}

ConvexPolygon scaled_about(const ConvexPolygon& poly, double s, double rot) {
    const Point2 c = poly.centroid();
    std::vector<Point2> pts;
    for (const Point2& v : poly.verts) {
        const Vec2 d = (v - c) * s;
        pts.push_back(c + Vec2{d.x * std::cos(rot) - d.y * std::sin(rot),
                               d.x * std::sin(rot) + d.y * std::cos(rot)});
    }
    return ConvexPolygon::make(oriented_ccw(pts));
}

NestedPrismatoid random_prismatoid(std::mt19937_64& g, int nb, int na, double z) {
    while (true) {
        const ConvexPolygon base = random_polygon(g, nb);
        ConvexPolygon top = random_polygon(g, na);
        const Point2 bc = base.centroid();
        const Point2 tc = top.centroid();
        std::vector<Point2> pts;
        for (const Point2& v : top.verts) pts.push_back(bc + (v - tc) * 0.35);
        top = ConvexPolygon::make(pts);
        NestedPrismatoid p{base, top, z};
        try {
            p.validate();
            return p;
        } catch (const GeometryError&) {
        }
    }
}

}  // namespace

TEST_CASE("triangle over shrunken rotated triangle gives an alternating band") {
    const ConvexPolygon b = ConvexPolygon::make({{0, 0}, {1, 0}, {0.5, 0.9}});
    const ConvexPolygon a = scaled_about(b, 0.4, 0.5);
    const NestedPrismatoid p{b, a, 0.5};
    const Band band = build_band(p);
    REQUIRE(band.size() == 6);
    const std::string sig = band_combinatorics(p);
    CHECK(sig == "ABABAB");
    CHECK(band_support_margin(p, band) > -1e-9);
}

TEST_CASE("square prismoid splits into flagged coplanar quads") {
    const ConvexPolygon b = ConvexPolygon::make({{-1, -1}, {1, -1}, {1, 1}, {-1, 1}});
    const ConvexPolygon a = scaled_about(b, 0.5, 0.0);
    for (double z : {0.1, 1.0, 10.0}) {
        const NestedPrismatoid p{b, a, z};
        const Band band = build_band(p);
        REQUIRE(band.size() == 8);
        for (const BandTriangle& t : band.triangles) CHECK(t.coplanar_pair);
        CHECK(band_support_margin(p, band) > -1e-9);
    }
    CHECK(band_combinatorics({b, a, 0.1}) == band_combinatorics({b, a, 10.0}));
}

TEST_CASE("band of a 14/16 instance has 30 triangles") {
    auto g = testutil::rng(1515);
    const NestedPrismatoid p = random_prismatoid(g, 14, 16, 0.2);
    const Band band = build_band(p);
    CHECK(band.size() == 30);
}

TEST_CASE("every polygon edge appears exactly once as a base") {
    auto g = testutil::rng(1616);
    for (int trial = 0; trial < 30; ++trial) {
        const int nb = testutil::uniform_int(g, 3, 12);
        const int na = testutil::uniform_int(g, 3, 12);
        const NestedPrismatoid p = random_prismatoid(g, nb, na, testutil::uniform(g, 0.05, 2.0));
        const Band band = build_band(p);
        std::set<std::size_t> b_bases, a_bases;
        for (const BandTriangle& t : band.triangles) {
            if (t.base_is_b)
                CHECK(b_bases.insert(t.base_index).second);
            else
                CHECK(a_bases.insert(t.base_index).second);
        }
        CHECK(b_bases.size() == static_cast<std::size_t>(nb));
        CHECK(a_bases.size() == static_cast<std::size_t>(na));
        CHECK(band.size() == static_cast<std::size_t>(nb + na));
        CHECK(band_support_margin(p, band) > -1e-9);
    }
}

TEST_CASE("band combinatorics do not depend on z") {
    auto g = testutil::rng(1717);
    for (int trial = 0; trial < 30; ++trial) {
        const int nb = testutil::uniform_int(g, 3, 10);
        const int na = testutil::uniform_int(g, 3, 10);
        const NestedPrismatoid shape = random_prismatoid(g, nb, na, 1.0);
        const std::string ref = band_combinatorics({shape.base, shape.top, 0.01});
        for (double z : {0.1, 1.0, 10.0})
            CHECK(band_combinatorics({shape.base, shape.top, z}) == ref);
    }
}

TEST_CASE("chains visit polygon vertices consecutively ccw") {
    auto g = testutil::rng(1818);
    const NestedPrismatoid p = random_prismatoid(g, 7, 9, 0.4);
    const Band band = build_band(p);
    REQUIRE(band.chain_b.size() == p.base.size() + 1);
    REQUIRE(band.chain_a.size() == p.top.size() + 1);
    for (std::size_t i = 0; i + 1 < band.chain_b.size(); ++i)
        CHECK(band.chain_b[i + 1] == (band.chain_b[i] + 1) % p.base.size());
    for (std::size_t j = 0; j + 1 < band.chain_a.size(); ++j)
        CHECK(band.chain_a[j + 1] == (band.chain_a[j] + 1) % p.top.size());
}

TEST_CASE("flat prismatoid builds with reference combinatorics") {
    auto g = testutil::rng(1919);
    const NestedPrismatoid shape = random_prismatoid(g, 5, 6, 1.0);
    const NestedPrismatoid flat{shape.base, shape.top, 0.0};
    const Band band = build_band(flat);
    CHECK(band.size() == 11);
    CHECK(band.reference_z == 1.0);
    CHECK(band_combinatorics(flat) == band_combinatorics(shape));
}

TEST_CASE("nesting and height violations are rejected") {
    const ConvexPolygon b = ConvexPolygon::make({{0, 0}, {1, 0}, {0.5, 0.9}});
    const ConvexPolygon outside = ConvexPolygon::make({{0.4, 0.3}, {2.0, 0.3}, {0.5, 0.5}});
    CHECK_THROWS_AS(build_band({b, outside, 0.5}), NestingViolation);
    const ConvexPolygon a = scaled_about(b, 0.4, 0.0);
    CHECK_THROWS_AS(build_band({b, a, -1.0}), DegenerateHeight);
}

TEST_CASE("edge lengths respond to z as expected") {
    auto g = testutil::rng(2020);
    const NestedPrismatoid shape = random_prismatoid(g, 6, 7, 1.0);
    const NestedPrismatoid low{shape.base, shape.top, 0.4};
    const NestedPrismatoid high{shape.base, shape.top, 1.7};
    const Band band_low = build_band(low);
    const Band band_high = build_band(high);
    REQUIRE(band_combinatorics(low) == band_combinatorics(high));

    const auto lens_low = edge_lengths_3d(low, band_low);
    const auto lens_high = edge_lengths_3d(high, band_high);
    for (std::size_t t = 0; t < band_low.size(); ++t) {
        // base edges keep their planar lengths; both polygons are rigid
        CHECK(lens_low[t][0] == Approx(lens_high[t][0]).margin(1e-12));
        // lateral edges strictly grow with z
        CHECK(lens_low[t][1] < lens_high[t][1]);
        CHECK(lens_low[t][2] < lens_high[t][2]);
    }
    for (std::size_t gap = 0; gap < band_low.laterals.size(); ++gap)
        CHECK(lateral_edge_length(low, band_low, gap) < lateral_edge_length(high, band_high, gap));

    // lateral length is the 3D hypotenuse of its flat distance and z
    const LateralEdge& e = band_low.laterals.front();
    const double flat = dist(low.base.vertex(e.b_vertex), low.top.vertex(e.a_vertex));
    CHECK(lateral_edge_length(low, band_low, 0) ==
          Approx(std::sqrt(flat * flat + 0.4 * 0.4)).margin(1e-12));
}
