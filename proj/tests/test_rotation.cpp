#include <catch2/catch_amalgamated.hpp>
#include <cmath>
#include <vector>

#include "bandfold/rotation.hpp"
#include "test_util.hpp"

using namespace bandfold;
using Catch::Approx;

TEST_CASE("compose of a single rotation is itself") {
    const PlanarRotation r{{0.4, -0.2}, 1.1};
    const ComposedMotion m = compose({r});
    REQUIRE_FALSE(m.is_translation);
    CHECK(m.total_angle == Approx(1.1));
    CHECK(dist(m.center, r.center) < 1e-12);
}

TEST_CASE("two quarter turns about (0,0) and (1,0)") {
    const ComposedMotion m =
        compose({PlanarRotation{{0, 0}, kPi / 2}, PlanarRotation{{1, 0}, kPi / 2}});
    REQUIRE_FALSE(m.is_translation);
    CHECK(m.total_angle == Approx(kPi));
    // oracle: fixed point recovered from two probe images of the sequential map
    auto seq = [](const Point2& p) {
        return PlanarRotation{{1, 0}, kPi / 2}.apply(PlanarRotation{{0, 0}, kPi / 2}.apply(p));
    };
    // for a half-turn the center is the midpoint of p and its image
    const Point2 probe{0.123,0.456};
    const Point2 image = seq(probe);
    const Point2 oracle_center = (probe + image) * 0.5;
    CHECK(dist(m.center, oracle_center) < 1e-12);
    CHECK(m.center.x == Approx(0.5).margin(1e-12));
    CHECK(m.center.y == Approx(-0.5).margin(1e-12));
}

TEST_CASE("angles summing to 2*pi about distinct centers give a translation") {
    const ComposedMotion m =
        compose({PlanarRotation{{0, 0}, kPi}, PlanarRotation{{1, 0}, kPi}});
    REQUIRE(m.is_translation);
    // two half-turns translate by twice the center difference
    CHECK(m.translation.x == Approx(2.0).margin(1e-12));
    CHECK(m.translation.y == Approx(0.0).margin(1e-12));
}

TEST_CASE("compose agrees with sequential application on random lists") {
    auto g = testutil::rng(606);
    for (int trial = 0; trial < 10000; ++trial) {
        const int k = testutil::uniform_int(g, 1, 6);
        std::vector<PlanarRotation> rots;
        for (int i = 0; i < k; ++i)
            rots.push_back({testutil::random_disk_point(g),
                            testutil::uniform(g, -2 * kPi, 2 * kPi)});
        const ComposedMotion m = compose(rots);
        Point2 p = testutil::random_disk_point(g, 2.0);
        Point2 q = p;
        for (const auto& r : rots) q = r.apply(q);
        REQUIRE(dist(m.apply(p), q) < 1e-10);
    }
}

TEST_CASE("hull membership with all centers equal") {
    const Point2 c{0.3, 0.7};
    std::vector<PlanarRotation> rots{{c, 0.4}, {c, 0.2}, {c, 0.1}};
    const ComposedMotion m = compose(rots);
    CHECK(dist(m.center, c) < 1e-12);
    CHECK(hull_membership_check(rots));
}

TEST_CASE("hull membership with a zero-angle second rotation") {
    // only the first rotation acts, so the composed center is its center,
    // which lies on the segment between the two centers
    std::vector<PlanarRotation> rots{{{0, 0}, 0.8}, {{1, 0}, 0.0}};
    const ComposedMotion m = compose(rots);
    CHECK(dist(m.center, {0, 0}) < 1e-12);
    CHECK(hull_membership_check(rots));
}

TEST_CASE("hull membership hypothesis violations are rejected") {
    CHECK_THROWS_AS(hull_membership_check({{{0, 0}, -0.1}, {{1, 0}, 0.3}}),
                    HypothesisViolation);
    CHECK_THROWS_AS(hull_membership_check({{{0, 0}, 2.0}, {{1, 0}, 2.0}}),
                    HypothesisViolation);
}

TEST_CASE("composed center can leave the hull of the centers") {
    // Documented counterexample to the literal hull claim: two quarter
    // turns about (0,0) and (1,0) compose to a rotation about (0.5, -0.5),
    // half a unit below the segment of centers.
    std::vector<PlanarRotation> rots{{{0, 0}, kPi / 2}, {{1, 0}, kPi / 2}};
    CHECK_FALSE(hull_membership_check(rots));
    const ComposedMotion m = compose(rots);
    CHECK(distance_to_hull(m.center, {{0, 0}, {1, 0}}) == Approx(0.5).margin(1e-12));
}

TEST_CASE("weighted center gap vanishes as angles shrink") {
    std::vector<PlanarRotation> big{{{0, 0}, 0.6}, {{1, 0}, 0.6}};
    std::vector<PlanarRotation> small{{{0, 0}, 1e-4}, {{1, 0}, 1e-4}};
    CHECK(weighted_center_gap(big) > weighted_center_gap(small));
    CHECK(weighted_center_gap(small) < 1e-3);
}

TEST_CASE("composed center stays in the hull of all intermediate center positions") {
    // The corrected finite statement: simulate the sequential opening
    // process (each rotation about the current position of its center) and
    // collect every center position along the way; the composed center of
    // the equivalent fixed-center composition lies in that hull.
    auto g = testutil::rng(707);
    for (int trial = 0; trial < 2000; ++trial) {
        const int k = testutil::uniform_int(g, 2, 7);
        std::vector<Point2> centers;
        std::vector<double> omegas;
        double budget = testutil::uniform(g, 0.05, kPi);
        double used = 0.0;
        for (int i = 0; i < k; ++i) {
            centers.push_back(testutil::random_disk_point(g));
            omegas.push_back(budget / k * testutil::uniform(g, 0.0, 1.0));
            used += omegas.back();
        }
        REQUIRE(used <= kPi);
        // moving-pivot process; equals the fixed-center composition applied
        // deepest-first (last center first)
        std::vector<Point2> cur = centers;
        std::vector<Point2> all_positions = centers;
        for (int i = 0; i < k; ++i) {
            const PlanarRotation r{cur[i], omegas[i]};
            for (int j = i + 1; j < k; ++j) cur[j] = r.apply(cur[j]);
            for (int j = i + 1; j < k; ++j) all_positions.push_back(cur[j]);
        }
        std::vector<PlanarRotation> fixed;
        for (int i = k - 1; i >= 0; --i) fixed.push_back({centers[i], omegas[i]});
        const ComposedMotion m = compose(fixed);
        if (m.is_translation) continue;
        CHECK(distance_to_hull(m.center, all_positions) <= 1e-9);
    }
}
