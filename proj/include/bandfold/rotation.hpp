#pragma once

#include <cmath>
#include <vector>

#include "bandfold/geom.hpp"

namespace bandfold {

// Planar rotation by ccw angle omega about a fixed center.
struct PlanarRotation {
    Point2 center;
    double angle = 0.0;

    Point2 apply(const Point2& p) const {
        const double c = std::cos(angle), s = std::sin(angle);
        const Vec2 d = p - center;
        return center + Vec2{c * d.x - s * d.y, s * d.x + c * d.y};
    }
};

// Exact composition of rotations: either a single rotation about a fixed
// point or, when the total angle is a multiple of 2*pi, a pure translation.
struct ComposedMotion {
    bool is_translation = false;
    Point2 center{0.0, 0.0};   // valid when !is_translation
    double total_angle = 0.0;  // sum of the input angles
    Vec2 translation{0.0, 0.0};

    Point2 apply(const Point2& p) const {
        if (is_translation) return p + translation;
        return PlanarRotation{center, total_angle}.apply(p);
    }
};

// Composes rotations applied in list order (rotations[0] first). Computed
// via homogeneous 2x3 transforms; the fixed point solves (I - R) p = t.
inline ComposedMotion compose(const std::vector<PlanarRotation>& rotations) {
    if (rotations.empty()) throw PreconditionViolation("compose: empty rotation list");
    // accumulated map p -> R p + t
    double m00 = 1.0, m01 = 0.0, m10 = 0.0, m11 = 1.0;
    Vec2 t{0.0, 0.0};
    double total = 0.0;
    for (const PlanarRotation& r : rotations) {
        const double c = std::cos(r.angle), s = std::sin(r.angle);
        // this rotation as q -> A q + b
        const double a00 = c, a01 = -s, a10 = s, a11 = c;
        const Vec2 b{r.center.x - c * r.center.x + s * r.center.y,
                     r.center.y - s * r.center.x - c * r.center.y};
        const double n00 = a00 * m00 + a01 * m10;
        const double n01 = a00 * m01 + a01 * m11;
        const double n10 = a10 * m00 + a11 * m10;
        const double n11 = a10 * m01 + a11 * m11;
        const Vec2 nt{a00 * t.x + a01 * t.y + b.x, a10 * t.x + a11 * t.y + b.y};
        m00 = n00;
        m01 = n01;
        m10 = n10;
        m11 = n11;
        t = nt;
        total += r.angle;
    }
    ComposedMotion out;
    out.total_angle = total;
    const double ca = std::cos(total);
    const double sa = std::sin(total);
    // (I - R) is singular iff total == 0 mod 2*pi
    const double det = (1.0 - ca) * (1.0 - ca) + sa * sa;  // = 2(1 - cos)
    if (det < 1e-24) {
        out.is_translation = true;
        out.translation = t;
        return out;
    }
    // solve (I - R) p = t with R = [[ca,-sa],[sa,ca]]
    const double i00 = 1.0 - ca, i01 = sa, i10 = -sa, i11 = 1.0 - ca;
    out.center = Vec2{(i11 * t.x - i01 * t.y) / det, (i00 * t.y - i10 * t.x) / det};
    return out;
}

// Distance from p to the convex hull of pts (0 when inside).
inline double distance_to_hull(const Point2& p, const std::vector<Point2>& pts) {
    if (pts.empty()) throw PreconditionViolation("distance_to_hull: no points");
    std::vector<Point2> uniq;
    for (const Point2& q : pts) {
        bool dup = false;
        for (const Point2& u : uniq)
            if (dist(u, q) < 1e-15) dup = true;
        if (!dup) uniq.push_back(q);
    }
    if (uniq.size() == 1) return dist(p, uniq[0]);
    ConvexPolygon hull;
    try {
        hull = convex_hull_2d(uniq, 1e-14);
    } catch (const DegenerateInput&) {
        // collinear centers: distance to the extreme segment
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < uniq.size(); ++i)
            for (std::size_t j = i + 1; j < uniq.size(); ++j)
                best = std::min(best, point_segment_distance(p, uniq[i], uniq[j]));
        return best;
    }
    const double margin = hull.inside_margin(p);
    if (margin >= 0.0) return 0.0;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < hull.size(); ++i)
        best = std::min(best, point_segment_distance(p, hull[i], hull.vertex(i + 1)));
    return best;
}

// Checks the composed center against the convex hull of the rotation
// centers. Requires the hypothesis omega_i >= 0, 0 < sum omega_i <= pi.
inline bool hull_membership_check(const std::vector<PlanarRotation>& rotations,
                                  double eps = kEps) {
    if (rotations.empty()) throw HypothesisViolation("hull_membership_check: empty list");
    double total = 0.0;
    for (const PlanarRotation& r : rotations) {
        if (r.angle < 0.0) throw HypothesisViolation("hull_membership_check: negative angle");
        total += r.angle;
    }
    if (total <= 0.0 || total > kPi + 1e-12)
        throw HypothesisViolation("hull_membership_check: total angle outside (0, pi]");
    const ComposedMotion m = compose(rotations);
    if (m.is_translation) throw HypothesisViolation("hull_membership_check: no fixed point");
    std::vector<Point2> centers;
    centers.reserve(rotations.size());
    for (const PlanarRotation& r : rotations) centers.push_back(r.center);
    return distance_to_hull(m.center, centers) <= eps;
}

// Gap between the composed center and the omega-weighted average of the
// centers. The weighted average is the exact center only for the
// instantaneous (vector-field) composition; for finite rotations this gap
// is measured, not asserted.
inline double weighted_center_gap(const std::vector<PlanarRotation>& rotations) {
    const ComposedMotion m = compose(rotations);
    if (m.is_translation) throw HypothesisViolation("weighted_center_gap: no fixed point");
    double total = 0.0;
    Vec2 acc{0.0, 0.0};
    for (const PlanarRotation& r : rotations) {
        total += r.angle;
        acc = acc + r.center * r.angle;
    }
    if (total == 0.0) throw HypothesisViolation("weighted_center_gap: zero total angle");
    return dist(m.center, acc / total);
}

}  // namespace bandfold
