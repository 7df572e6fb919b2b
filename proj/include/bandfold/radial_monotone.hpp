#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <vector>

#include "bandfold/geom.hpp"
#include "bandfold/rotation.hpp"

namespace bandfold {

// ---------------------------------------------------------------------------
// Radial monotonicity of chains
// ---------------------------------------------------------------------------

// Radial monotonicity of the suffix chain starting at vertex `start`: every
// circle centered at chain[start] meets the suffix in a single point.
// Per segment (p, q) this is dot(q - p, p - v) >= 0; equality (tangency) is
// accepted since the distance still strictly increases past the tangent
// point. The segment leaving v itself always passes.
inline bool is_rm_from(const PolyChain& chain, std::size_t start = 0, double eps = kEps) {
    validate_chain(chain);
    if (start + 1 >= chain.size()) return true;
    const Point2 v = chain[start];
    for (std::size_t i = start; i + 1 < chain.size(); ++i) {
        const Vec2 seg = chain[i + 1] - chain[i];
        const double len = seg.norm();
        if (len <= eps) throw DegenerateSegment("is_rm_from: zero-length segment");
        if (seg.dot(chain[i] - v) / len < -eps) return false;
    }
    return true;
}

// RM without qualification: radially monotone with respect to each vertex.
inline bool is_rm(const PolyChain& chain, double eps = kEps) {
    validate_chain(chain);
    for (std::size_t s = 0; s + 1 < chain.size(); ++s)
        if (!is_rm_from(chain, s, eps)) return false;
    return true;
}

// ---------------------------------------------------------------------------
// RM-property of convex polygons
// ---------------------------------------------------------------------------

// Edge (a, b) = (verts[edge], verts[edge+1]) together with an apex vertex c
// such that the cw boundary path a -> c and the ccw path b -> c are both RM.
struct RmWitness {
    std::size_t edge = 0;
    std::size_t apex = 0;
};

// Directed boundary path of a ccw polygon from vertex `from` to vertex `to`,
// walking ccw (increasing indices) or cw.
inline PolyChain polygon_path(const ConvexPolygon& poly, std::size_t from, std::size_t to,
                              bool ccw) {
    const std::size_t n = poly.size();
    PolyChain path;
    std::size_t i = from % n;
    path.push_back(poly[i]);
    while (i != to % n) {
        i = ccw ? (i + 1) % n : (i + n - 1) % n;
        path.push_back(poly[i]);
    }
    return path;
}

inline bool verify_rm_witness(const ConvexPolygon& poly, const RmWitness& w, double eps = kEps) {
    const std::size_t n = poly.size();
    const std::size_t a = w.edge % n;
    const std::size_t b = (w.edge + 1) % n;
    if (w.apex == a || w.apex == b) return false;
    return is_rm(polygon_path(poly, a, w.apex, /*ccw=*/false), eps) &&
           is_rm(polygon_path(poly, b, w.apex, /*ccw=*/true), eps);
}

// Exhaustive search over edges and apex candidates. Empty result means the
// polygon lacks the RM-property.
inline std::vector<RmWitness> find_rm_property(const ConvexPolygon& poly, double eps = kEps) {
    poly.validate(eps);
    const std::size_t n = poly.size();
    std::vector<RmWitness> out;
    for (std::size_t e = 0; e < n; ++e)
        for (std::size_t c = 0; c < n; ++c) {
            if (c == e || c == (e + 1) % n) continue;
            const RmWitness w{e, c};
            if (verify_rm_witness(poly, w, eps)) out.push_back(w);
        }
    return out;
}

// ---------------------------------------------------------------------------
// Chain openings
// ---------------------------------------------------------------------------

// Opening amounts per internal vertex: omegas[j] opens the angle at
// chain[j + 1]. Size must be chain.size() - 2.
using OpeningVector = std::vector<double>;

inline void validate_opening(const PolyChain& chain, const OpeningVector& omegas,
                             double eps = kEps) {
    validate_chain(chain);
    if (omegas.size() + 2 != chain.size())
        throw InvalidOpening("opening vector size must be #internal vertices");
    for (std::size_t j = 0; j < omegas.size(); ++j) {
        if (omegas[j] < 0.0) throw InvalidOpening("negative opening");
        if (angle_at(chain, j + 1) + omegas[j] > kPi + eps)
            throw InvalidOpening("opened angle exceeds pi");
    }
}

// Curl sign of a convex chain: +1 when it turns left (ccw), -1 right (cw).
inline int chain_curl(const PolyChain& chain, double eps = kEps) {
    for (std::size_t i = 1; i + 1 < chain.size(); ++i) {
        const int s = turn_sign(chain, i, eps);
        if (s != 0) return s;
    }
    return 1;  // straight chain, curl immaterial
}

// Opens each internal angle alpha_j to alpha_j + omegas[j], preserving all
// segment lengths; the first segment keeps its position and direction.
// Implemented by rotating suffixes about their (already final) joints so the
// untouched prefix is shared exactly with the input.
inline PolyChain open_chain(const PolyChain& chain, const OpeningVector& omegas,
                            double eps = kEps) {
    if (!is_convex_chain(chain, eps))
        throw PreconditionViolation("open_chain: chain must be convex");
    validate_opening(chain, omegas, eps);
    const int curl = chain_curl(chain, eps);
    PolyChain out = chain;
    for (std::size_t j = 0; j < omegas.size(); ++j) {
        if (omegas[j] == 0.0) continue;
        int sign = turn_sign(chain, j + 1, eps);
        if (sign == 0) sign = curl;
        // opening reduces the turn magnitude
        const PlanarRotation rot{out[j + 1], -sign * omegas[j]};
        for (std::size_t i = j + 2; i < out.size(); ++i) out[i] = rot.apply(out[i]);
    }
    return out;
}

namespace detail {

// Intersection of two segments that may legitimately meet at a shared chain
// vertex: both are trimmed a little at that end before testing.
inline bool segments_cross_excluding_shared_start(const Point2& a0, const Point2& a1,
                                                  const Point2& b0, const Point2& b1,
                                                  double eps) {
    const double f = 1e-4;
    const Point2 a0t = a0 + (a1 - a0) * f;
    const Point2 b0t = b0 + (b1 - b0) * f;
    return segments_intersect(a0t, a1, b0t, b1, eps);
}

}  // namespace detail

// Lemma check: for RM convex chains, the original chain and its opened
// version meet only at the first vertex with a positive opening. Returns
// true when the intersection is exactly that shared vertex.
inline bool check_noncrossing(const PolyChain& chain, const OpeningVector& omegas,
                              double eps = kEps) {
    const PolyChain opened = open_chain(chain, omegas, eps);
    // reindex: first internal vertex with omega > 0
    std::size_t k = chain.size();
    for (std::size_t j = 0; j < omegas.size(); ++j)
        if (omegas[j] > 0.0) {
            k = j + 1;
            break;
        }
    if (k >= chain.size()) return true;  // zero opening
    // suffix chains share out[k] == chain[k] exactly
    for (std::size_t i = k; i + 1 < chain.size(); ++i) {
        for (std::size_t j = k; j + 1 < opened.size(); ++j) {
            const bool a_at_shared = (i == k);
            const bool b_at_shared = (j == k);
            bool hit;
            if (a_at_shared && b_at_shared) {
                hit = detail::segments_cross_excluding_shared_start(
                    chain[i], chain[i + 1], opened[j], opened[j + 1], eps);
            } else if (a_at_shared) {
                hit = detail::segments_cross_excluding_shared_start(
                    chain[i], chain[i + 1], opened[j + 1], opened[j], eps);
            } else if (b_at_shared) {
                hit = detail::segments_cross_excluding_shared_start(
                    opened[j], opened[j + 1], chain[i], chain[i + 1], eps);
            } else {
                hit = segments_intersect(chain[i], chain[i + 1], opened[j], opened[j + 1], eps);
            }
            if (hit) return false;
        }
    }
    return true;
}

// Search for a single-joint opening whose opened chain crosses the original;
// exists for chains violating radial monotonicity. Scans each internal joint
// with `steps` opening magnitudes up to the straightening limit.
inline std::optional<OpeningVector> find_crossing_opening(const PolyChain& chain, int steps = 100,
                                                          double eps = kEps) {
    if (!is_convex_chain(chain, eps)) throw PreconditionViolation("chain must be convex");
    const std::size_t internal = chain.size() - 2;
    for (std::size_t j = 0; j < internal; ++j) {
        const double limit = kPi - angle_at(chain, j + 1);
        if (limit <= 0.0) continue;
        for (int s = 1; s <= steps; ++s) {
            OpeningVector omegas(internal, 0.0);
            omegas[j] = limit * static_cast<double>(s) / steps;
            if (!check_noncrossing(chain, omegas, eps)) return omegas;
        }
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Involute of a convex chain
// ---------------------------------------------------------------------------

// Circular arc swept ccw (sweep > 0) or cw from start_angle.
struct InvoluteArc {
    Point2 center;
    double radius = 0.0;
    double start_angle = 0.0;
    double sweep = 0.0;

    Point2 point_at(double t) const {  // t in [0, 1]
        const double a = start_angle + t * sweep;
        return center + Vec2{std::cos(a), std::sin(a)} * radius;
    }
};

// Arc k is centered at chain vertex k+1 with radius equal to the chain
// length beyond that vertex; consecutive arcs meet end to start. The arcs
// trace the chain endpoint as joints straighten fully from the far end.
struct Involute {
    std::vector<InvoluteArc> arcs;  // ordered along the chain (k = 1 first)
};

inline Involute involute_of(const PolyChain& chain, double eps = kEps) {
    validate_chain(chain, eps);
    if (chain.size() < 3) throw DegenerateInput("involute needs >= 2 segments");
    if (!is_convex_chain(chain, eps)) throw PreconditionViolation("chain must be convex");
    const int curl = chain_curl(chain, eps);
    const std::size_t n = chain.size();
    // suffix lengths from vertex k to the end
    std::vector<double> suffix(n, 0.0);
    for (std::size_t k = n - 1; k-- > 0;)
        suffix[k] = suffix[k + 1] + dist(chain[k], chain[k + 1]);
    Involute inv;
    // construction order: far joint first; the arc at joint k starts where
    // the endpoint sits once all joints beyond k are straight
    for (std::size_t k = n - 2; k >= 1; --k) {
        InvoluteArc arc;
        arc.center = chain[k];
        arc.radius = suffix[k];
        const Vec2 dir_out = chain[k + 1] - chain[k];
        int sign = turn_sign(chain, k, eps);
        if (sign == 0) sign = curl;
        const double span = kPi - angle_at(chain, k);
        arc.start_angle = std::atan2(dir_out.y, dir_out.x);
        arc.sweep = -sign * span;  // opening direction; ends along the incoming segment
        inv.arcs.push_back(arc);
    }
    std::reverse(inv.arcs.begin(), inv.arcs.end());
    return inv;
}

}  // namespace bandfold
