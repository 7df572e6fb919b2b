#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "bandfold/geom.hpp"

namespace bandfold {

// ---------------------------------------------------------------------------
// Nested prismatoids
// ---------------------------------------------------------------------------

// Base polygon in the z = 0 plane, top polygon at the given height. The top
// must project strictly into the base. height == 0 is the doubly-covered
// flat case.
struct NestedPrismatoid {
    ConvexPolygon base;  // B
    ConvexPolygon top;   // A
    double height = 0.0;

    void validate(double eps = kEps) const {
        base.validate(eps);
        top.validate(eps);
        if (!(height >= 0.0) || !std::isfinite(height))
            throw DegenerateHeight("prismatoid height must be >= 0");
        for (const Point2& v : top.verts)
            if (!point_strictly_inside(base, v, eps))
                throw NestingViolation("top vertex not strictly inside base");
    }

    Point3 base_vertex3(std::size_t i) const {
        const Point2& v = base.vertex(i);
        return {v.x, v.y, 0.0};
    }
    Point3 top_vertex3(std::size_t j) const {
        const Point2& v = top.vertex(j);
        return {v.x, v.y, height};
    }
    double diameter() const { return base.diameter(); }
};

// ---------------------------------------------------------------------------
// The lateral band
// ---------------------------------------------------------------------------

// One lateral face. B-based: base edge (b_i, b_{i+1}) with apex a_j;
// A-based: base edge (a_j, a_{j+1}) with apex b_i. Halves of a coplanar
// lateral quadrilateral are flagged.
struct BandTriangle {
    bool base_is_b = true;
    std::size_t base_index = 0;
    std::size_t apex_index = 0;
    bool coplanar_pair = false;
};

// Lateral edge of the fan: shared by triangles[gap] and triangles[gap+1]
// (cyclically). Quad diagonals are fan edges but not polytope edges.
struct LateralEdge {
    std::size_t gap = 0;
    std::size_t b_vertex = 0;
    std::size_t a_vertex = 0;
    bool quad_diagonal = false;
};

struct Band {
    std::vector<BandTriangle> triangles;  // single cyclic fan, ccw
    std::vector<LateralEdge> laterals;    // laterals[g] follows triangles[g]
    std::vector<std::size_t> chain_b;     // B vertices in fan order
    std::vector<std::size_t> chain_a;     // A vertices in fan order
    double reference_z = 1.0;             // height used to build combinatorics

    std::size_t size() const { return triangles.size(); }
};

// 3D corners of a band triangle, ordered (base0, base1, apex).
inline std::array<Point3, 3> triangle_points_3d(const NestedPrismatoid& p,
                                                const BandTriangle& t) {
    if (t.base_is_b)
        return {p.base_vertex3(t.base_index), p.base_vertex3(t.base_index + 1),
                p.top_vertex3(t.apex_index)};
    return {p.top_vertex3(t.base_index), p.top_vertex3(t.base_index + 1),
            p.base_vertex3(t.apex_index)};
}

namespace detail {

// Signed distance of point s from the plane through (p, q, r).
inline double plane_distance(const Point3& p, const Point3& q, const Point3& r, const Point3& s) {
    const Vec3 n = (q - p).cross(r - p);
    const double nn = n.norm();
    if (nn == 0.0) throw DegenerateTriangle("plane through collinear points");
    return n.dot(s - p) / nn;
}

// A deterministic azimuth bounded away from every edge-normal azimuth.
inline double generic_azimuth(const NestedPrismatoid& p) {
    std::vector<double> normals;
    auto add = [&](const ConvexPolygon& poly) {
        for (std::size_t i = 0; i < poly.size(); ++i) {
            const Vec2 e = poly.vertex(i + 1) - poly.vertex(i);
            normals.push_back(std::atan2(-e.x, e.y));
        }
    };
    add(p.base);
    add(p.top);
    for (int k = 0; k < 64; ++k) {
        const double cand = std::fmod(0.123456789 + 0.618033988749895 * k, 1.0) * 2.0 * kPi - kPi;
        bool ok = true;
        for (double nrm : normals) {
            double d = std::abs(cand - nrm);
            d = std::min(d, 2 * kPi - d);
            if (d < 1e-4) ok = false;
        }
        if (ok) return cand;
    }
    throw GeometryError("no generic azimuth found");
}

}  // namespace detail

// Builds the lateral band of the hull of B x {0} and A x {z} by a pivot
// walk: starting from a lateral hull edge, repeatedly attach the next hull
// triangle across the current lateral edge. Coplanar lateral quadrilaterals
// (parallel edge pairs) are split by the diagonal from their first B-vertex
// and flagged. A flat prismatoid (height 0) is built with the combinatorics
// of the same shape at reference height 1.
inline Band build_band(const NestedPrismatoid& p, double eps = kEps) {
    p.validate(eps);
    NestedPrismatoid ref = p;
    if (p.height == 0.0) ref.height = 1.0;

    const std::size_t nb = ref.base.size();
    const std::size_t na = ref.top.size();
    const double az = detail::generic_azimuth(ref);
    const Vec2 dir{std::cos(az), std::sin(az)};

    auto argmax = [&](const ConvexPolygon& poly) {
        std::size_t best = 0;
        for (std::size_t i = 1; i < poly.size(); ++i)
            if (poly[i].dot(dir) > poly[best].dot(dir)) best = i;
        return best;
    };
    const std::size_t i0 = argmax(ref.base);
    const std::size_t j0 = argmax(ref.top);

    // Reference point for plane orientation: the base centroid at z = 0 is
    // strictly on the interior side of any plane through a base edge.
    const Point3 inner{ref.base.centroid(), 0.0};

    Band band;
    band.reference_z = ref.height;
    std::size_t i = i0, j = j0;
    std::size_t taken_b = 0, taken_a = 0;
    band.chain_b.push_back(i0);
    band.chain_a.push_back(j0);
    while (taken_b < nb || taken_a < na) {
        const Point3 pb = ref.base_vertex3(i);
        const Point3 pa = ref.top_vertex3(j);
        const Point3 nxt_b = ref.base_vertex3(i + 1);
        const Point3 nxt_a = ref.top_vertex3(j + 1);

        // side of the B-candidate plane: does the A-candidate stay inside?
        const double d_inner = detail::plane_distance(pb, nxt_b, pa, inner);
        const double d_na = detail::plane_distance(pb, nxt_b, pa, nxt_a);
        const bool coplanar = std::abs(d_na) <= eps * 10.0;

        if (coplanar) {
            if (taken_b >= nb || taken_a >= na)
                throw GeometryError("band walk overran a polygon");
            // quad (b_i, b_{i+1}, a_{j+1}, a_j): A-based half first, then
            // B-based, split by diagonal (b_i, a_{j+1})
            band.triangles.push_back({false, j, i, true});
            band.laterals.push_back({band.triangles.size() - 1, i, (j + 1) % na, true});
            band.triangles.push_back({true, i, (j + 1) % na, true});
            i = (i + 1) % nb;
            j = (j + 1) % na;
            ++taken_b;
            ++taken_a;
            band.chain_b.push_back(i);
            band.chain_a.push_back(j);
            band.laterals.push_back({band.triangles.size() - 1, i, j, false});
        } else if ((d_na > 0.0) == (d_inner > 0.0)) {
            // B-based triangle is on the hull
            if (taken_b >= nb) throw GeometryError("band walk overran base polygon");
            band.triangles.push_back({true, i, j, false});
            i = (i + 1) % nb;
            ++taken_b;
            band.chain_b.push_back(i);
            band.laterals.push_back({band.triangles.size() - 1, i, j, false});
        } else {
            if (taken_a >= na) throw GeometryError("band walk overran top polygon");
            band.triangles.push_back({false, j, i, false});
            j = (j + 1) % na;
            ++taken_a;
            band.chain_a.push_back(j);
            band.laterals.push_back({band.triangles.size() - 1, i, j, false});
        }
    }
    if (i != i0 || j != j0) throw GeometryError("band walk did not close");
    if (band.triangles.size() != nb + na) throw GeometryError("unexpected band face count");
    return band;
}

// Rotation-normalized cyclic tag sequence: 'B'/'A' per triangle, lowercase
// for halves of coplanar quads.
inline std::string band_combinatorics(const NestedPrismatoid& p, double eps = kEps) {
    const Band band = build_band(p, eps);
    std::string tags;
    for (const BandTriangle& t : band.triangles) {
        char c = t.base_is_b ? 'B' : 'A';
        if (t.coplanar_pair) c = static_cast<char>(c - 'A' + 'a');
        tags.push_back(c);
    }
    std::string best = tags;
    for (std::size_t r = 1; r < tags.size(); ++r) {
        const std::string rot = tags.substr(r) + tags.substr(0, r);
        if (rot < best) best = rot;
    }
    return best;
}

// Edge lengths of each band triangle at the prismatoid's true height,
// ordered (base, base0-apex, base1-apex).
inline std::vector<std::array<double, 3>> edge_lengths_3d(const NestedPrismatoid& p,
                                                          const Band& band) {
    std::vector<std::array<double, 3>> out;
    out.reserve(band.size());
    for (const BandTriangle& t : band.triangles) {
        const auto pts = triangle_points_3d(p, t);
        out.push_back({dist(pts[0], pts[1]), dist(pts[0], pts[2]), dist(pts[1], pts[2])});
    }
    return out;
}

inline double lateral_edge_length(const NestedPrismatoid& p, const Band& band, std::size_t gap) {
    const LateralEdge& e = band.laterals.at(gap);
    return dist(p.base_vertex3(e.b_vertex), p.top_vertex3(e.a_vertex));
}

// Worst violation of the supporting-plane property over all lateral faces:
// most negative signed distance of any prismatoid vertex to a face plane,
// measured toward the interior. Nonnegative (within eps) for a valid band.
inline double band_support_margin(const NestedPrismatoid& p, const Band& band) {
    NestedPrismatoid ref = p;
    if (p.height == 0.0) ref.height = band.reference_z;
    Point3 inner{0, 0, 0};
    const std::size_t nb = ref.base.size(), na = ref.top.size();
    for (std::size_t i = 0; i < nb; ++i) inner = inner + ref.base_vertex3(i);
    for (std::size_t j = 0; j < na; ++j) inner = inner + ref.top_vertex3(j);
    inner = inner * (1.0 / static_cast<double>(nb + na));

    double worst = std::numeric_limits<double>::infinity();
    for (const BandTriangle& t : band.triangles) {
        const auto pts = triangle_points_3d(ref, t);
        const double sign =
            detail::plane_distance(pts[0], pts[1], pts[2], inner) > 0.0 ? 1.0 : -1.0;
        for (std::size_t i = 0; i < nb; ++i)
            worst = std::min(
                worst, sign * detail::plane_distance(pts[0], pts[1], pts[2], ref.base_vertex3(i)));
        for (std::size_t j = 0; j < na; ++j)
            worst = std::min(
                worst, sign * detail::plane_distance(pts[0], pts[1], pts[2], ref.top_vertex3(j)));
    }
    return worst;
}

}  // namespace bandfold
