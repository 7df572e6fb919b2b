#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "bandfold/band.hpp"
#include "bandfold/geom.hpp"

namespace bandfold {

namespace detail {

inline double safe_acos(double u, const char* what) {
    if (!std::isfinite(u)) throw DomainError(what);
    if (u > 1.0) {
        if (u > 1.0 + 1e-12) throw DomainError(what);
        u = 1.0;
    } else if (u < -1.0) {
        if (u < -1.0 - 1e-12) throw DomainError(what);
        u = -1.0;
    }
    return std::acos(u);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// The explicit opening angle phi(z)
// ---------------------------------------------------------------------------

// phi for the canonical frame a = (-1,0,0), b = origin,
// c = (cos(pi-theta), sin(pi-theta), 0), v = (x, y, z):
//   phi = arccos(-x / r) + arccos((-x cos theta + y sin theta) / r),
// with r = |v|.
inline double phi_closed_form(double theta, double x, double y, double z) {
    if (!(theta > 0.0 && theta < kPi))
        throw PreconditionViolation("phi_closed_form: theta must be in (0, pi)");
    const double r = std::sqrt(x * x + y * y + z * z);
    if (r == 0.0) throw DomainError("phi_closed_form: v at the origin");
    const double u1 = -x / r;
    const double u2 = (-x * std::cos(theta) + y * std::sin(theta)) / r;
    return detail::safe_acos(u1, "phi_closed_form: first arccos argument") +
           detail::safe_acos(u2, "phi_closed_form: second arccos argument");
}

// The derivative expression exactly as printed alongside the closed form.
// It omits a positive overall factor 1/r^3, so only its sign is meaningful;
// see phi_derivative for the analytic derivative.
inline double phi_derivative_printed(double theta, double x, double y, double z) {
    const double r2 = x * x + y * y + z * z;
    const double q = -x * std::cos(theta) + y * std::sin(theta);
    return z * (-x / std::sqrt(1.0 - x * x / r2) + q / std::sqrt(1.0 - q * q / r2));
}

// Analytic d phi / d z (the printed expression restored with its 1/r^3).
inline double phi_derivative(double theta, double x, double y, double z) {
    const double r2 = x * x + y * y + z * z;
    return phi_derivative_printed(theta, x, y, z) / (r2 * std::sqrt(r2));
}

// ---------------------------------------------------------------------------
// Vertex opening configurations
// ---------------------------------------------------------------------------

// Planar hinge b with neighbors a and c, plus lifted points v_1..v_k at a
// common positive height whose projections lie on the convex side of the
// angle at b and form a convex chain with a and c.
struct VertexOpeningConfig {
    Point2 a, b, c;
    std::vector<Point3> lifted;

    double theta() const { return angle_between(a - b, c - b); }
    double z() const { return lifted.empty() ? 0.0 : lifted.front().z; }

    void validate(double eps = kEps) const {
        if (lifted.empty()) throw PreconditionViolation("config needs k >= 1 lifted points");
        const double zz = lifted.front().z;
        for (const Point3& v : lifted) {
            if (std::abs(v.z - zz) > eps)
                throw PreconditionViolation("lifted points must share one height");
            if (v.z < 0.0) throw PreconditionViolation("lifted height must be >= 0");
        }
        (void)theta();  // throws on degenerate a, b or c, b
    }

    // The canonical configuration used for the closed form.
    static VertexOpeningConfig canonical(double theta, double x, double y, double z) {
        VertexOpeningConfig cfg;
        cfg.a = {-1.0, 0.0};
        cfg.b = {0.0, 0.0};
        cfg.c = {std::cos(kPi - theta), std::sin(kPi - theta)};
        cfg.lifted = {{x, y, z}};
        return cfg;
    }
};

// Sum of consecutive 3D angles at b along the fan a, v_1, ..., v_k, c.
inline double phi_from_geometry(const VertexOpeningConfig& cfg) {
    cfg.validate();
    const Point3 b3{cfg.b, 0.0};
    std::vector<Point3> fan;
    fan.reserve(cfg.lifted.size() + 2);
    fan.push_back({cfg.a, 0.0});
    for (const Point3& v : cfg.lifted) fan.push_back(v);
    fan.push_back({cfg.c, 0.0});
    double phi = 0.0;
    for (std::size_t i = 0; i + 1 < fan.size(); ++i)
        phi += angle_between(fan[i] - b3, fan[i + 1] - b3);
    return phi;
}

// Verifies the fan precondition of the opening lemmas:
//   - every projection lies in the (convex-side) wedge at b spanned by the
//     rays toward a and c, and the fan is angularly ordered from a to c;
//   - for k >= 2 the lifted points lie on their common convex hull with
//     a, b, c: every consecutive fan triangle at b is a supporting plane of
//     all fan points, exactly the situation of hull faces incident to a band
//     vertex. Zigzag fans (which could open beyond pi) fail this.
// A single point projecting onto b is the vertical special case.
inline void require_convex_fan(const VertexOpeningConfig& cfg, double eps = kEps) {
    cfg.validate(eps);
    if (cfg.lifted.size() == 1 && dist(cfg.lifted[0].xy(), cfg.b) <= eps) return;
    const Vec2 ea = cfg.a - cfg.b;
    const Vec2 ec = cfg.c - cfg.b;
    const double det = ea.cross(ec);
    const double scale = ea.norm() * ec.norm();
    std::vector<Vec2> dirs;  // projections relative to b
    for (const Point3& v : cfg.lifted) {
        const Vec2 d = v.xy() - cfg.b;
        if (d.norm() <= eps)
            throw ConvexityViolation("fan projection coincides with the hinge");
        dirs.push_back(d);
    }
    if (std::abs(det) > eps * scale) {
        // wedge membership: positive-cone coordinates in (ea, ec)
        for (const Vec2& d : dirs) {
            const double alpha = d.cross(ec) / det;
            const double beta = ea.cross(d) / det;
            if (alpha * ea.norm() < -eps || beta * ec.norm() < -eps)
                throw ConvexityViolation("projection not on the convex side of the hinge");
        }
    } else {
        // theta == pi: the wedge degenerates to a half-plane; require a
        // common side
        int side = 0;
        for (const Vec2& d : dirs) {
            const int s = ea.cross(d) > 0.0 ? 1 : -1;
            if (side == 0) side = s;
            if (s != side)
                throw ConvexityViolation("projections straddle the straight hinge");
        }
    }
    // angular fan order from a toward c
    const double sweep_sign = (std::abs(det) > eps * scale) ? (det > 0.0 ? 1.0 : -1.0)
                                                            : (ea.cross(dirs.front()) > 0 ? 1.0 : -1.0);
    for (std::size_t i = 0; i + 1 < dirs.size(); ++i)
        if (sweep_sign * dirs[i].cross(dirs[i + 1]) < -eps * dirs[i].norm() * dirs[i + 1].norm())
            throw ConvexityViolation("fan projections out of angular order");
    if (cfg.lifted.size() < 2) return;
    const Point3 b3{cfg.b, 0.0};
    std::vector<Point3> fan;
    fan.push_back({cfg.a, 0.0});
    for (const Point3& v : cfg.lifted) fan.push_back(v);
    fan.push_back({cfg.c, 0.0});
    for (std::size_t i = 0; i + 1 < fan.size(); ++i) {
        const Vec3 nrm = (fan[i] - b3).cross(fan[i + 1] - b3);
        const double nn = nrm.norm();
        if (nn == 0.0) throw DegenerateVector("degenerate fan triangle");
        bool pos = false, neg = false;
        for (std::size_t j = 0; j < fan.size(); ++j) {
            if (j == i || j == i + 1) continue;
            const double d = nrm.dot(fan[j] - b3) / nn;
            if (d > eps) pos = true;
            if (d < -eps) neg = true;
        }
        if (pos && neg)
            throw ConvexityViolation("lifted points are not in convex position with a, b, c");
    }
}

// Lemma check: lifting to z > 0 opens the planar angle, theta < phi <= pi.
// Also verifies the spherical triangle inequality directly from normalized
// vectors. Returns false at z = 0 (no strict opening).
inline bool check_opening(const VertexOpeningConfig& cfg, double eps = kEps) {
    require_convex_fan(cfg, eps);
    const double theta = cfg.theta();
    const double phi = phi_from_geometry(cfg);
    // spherical path length from explicitly normalized vectors
    const Point3 b3{cfg.b, 0.0};
    std::vector<Point3> fan;
    fan.push_back({cfg.a, 0.0});
    for (const Point3& v : cfg.lifted) fan.push_back(v);
    fan.push_back({cfg.c, 0.0});
    double arc_sum = 0.0;
    for (std::size_t i = 0; i + 1 < fan.size(); ++i) {
        Vec3 u = fan[i] - b3;
        Vec3 w = fan[i + 1] - b3;
        const double nu = u.norm(), nw = w.norm();
        if (nu == 0.0 || nw == 0.0) throw DegenerateVector("check_opening: zero fan vector");
        arc_sum += detail::safe_acos(u.dot(w) / (nu * nw), "check_opening: arc");
    }
    if (arc_sum < theta - 1e-9) return false;  // would contradict the triangle inequality
    return phi > theta + 1e-12 && phi <= kPi + 1e-9;
}

// Reflects the lifted points through b (equal heights, straight segments
// v_0 v'_0 through b) and measures the fan from the reflex side, traversed
// a, v'_k, ..., v'_1, c. For k = 1 the pair satisfies phi + phi' = 2 pi
// exactly; for k >= 2 the reflex sum exceeds the complement, so the identity
// is asserted only for single-v configurations.
struct ReflectionPair {
    double phi = 0.0;
    double phi_reflected = 0.0;
};

inline ReflectionPair reflection_identity(const VertexOpeningConfig& cfg) {
    cfg.validate();
    const double phi = phi_from_geometry(cfg);
    const Point3 b3{cfg.b, 0.0};
    std::vector<Point3> fan;
    fan.push_back({cfg.a, 0.0});
    for (auto it = cfg.lifted.rbegin(); it != cfg.lifted.rend(); ++it) {
        const Point2 reflected = cfg.b * 2.0 - it->xy();
        fan.push_back({reflected, it->z});
    }
    fan.push_back({cfg.c, 0.0});
    double phi_r = 0.0;
    for (std::size_t i = 0; i + 1 < fan.size(); ++i)
        phi_r += angle_between(fan[i] - b3, fan[i + 1] - b3);
    return {phi, phi_r};
}

// ---------------------------------------------------------------------------
// Monotonicity in z
// ---------------------------------------------------------------------------

// Finite-difference check that phi(z) is nondecreasing across the samples.
// Slopes are measured with central differences of step fd_step and allowed
// the given slack. The printed derivative is only consulted for sign
// disagreements, reported via sign_mismatches when non-null.
inline bool check_monotonic(double theta, double x, double y, const std::vector<double>& z_samples,
                            double slack = 1e-8, double fd_step = 1e-4,
                            int* sign_mismatches = nullptr) {
    if (z_samples.empty()) throw PreconditionViolation("check_monotonic: no samples");
    for (std::size_t i = 0; i < z_samples.size(); ++i) {
        if (z_samples[i] < 0.0) throw PreconditionViolation("check_monotonic: negative z");
        if (i > 0 && z_samples[i] <= z_samples[i - 1])
            throw PreconditionViolation("check_monotonic: samples must increase");
    }
    if (sign_mismatches) *sign_mismatches = 0;
    bool ok = true;
    double prev = phi_closed_form(theta, x, y, z_samples.front());
    for (std::size_t i = 0; i < z_samples.size(); ++i) {
        const double z = z_samples[i];
        const double value = phi_closed_form(theta, x, y, z);
        if (i > 0) {
            if (value < prev - slack) ok = false;
            prev = value;
        }
        const double lo = std::max(0.0, z - fd_step);
        const double hi = z + fd_step;
        const double slope = (phi_closed_form(theta, x, y, hi) - phi_closed_form(theta, x, y, lo)) /
                             (hi - lo);
        if (slope < -slack) ok = false;
        if (sign_mismatches && z > 0.0) {
            const double printed = phi_derivative_printed(theta, x, y, z);
            if ((printed < -1e-9 && slope > slack) || (printed > 1e-9 && slope < -slack))
                ++(*sign_mismatches);
        }
    }
    return ok;
}

// ---------------------------------------------------------------------------
// Band-level opening report
// ---------------------------------------------------------------------------

enum class BandSide { B, A };

// Per-vertex angles of one band boundary chain: theta is the flat (z = 0)
// chain angle, phi the developed chain angle at the prismatoid's height, and
// omega = phi - theta the opening.
struct OpeningReport {
    struct Entry {
        std::size_t vertex = 0;
        double theta = 0.0;
        double phi = 0.0;
        double omega = 0.0;
    };
    BandSide side = BandSide::B;
    std::vector<Entry> entries;
};

// Sum of the 3D band-face angles at one boundary vertex.
inline double band_face_angle_sum(const NestedPrismatoid& p, const Band& band, BandSide side,
                                  std::size_t vertex) {
    const bool want_b = (side == BandSide::B);
    const std::size_t n = want_b ? p.base.size() : p.top.size();
    double sum = 0.0;
    for (const BandTriangle& t : band.triangles) {
        const auto pts = triangle_points_3d(p, t);
        Point3 at{0, 0, 0};
        Point3 u{0, 0, 0}, w{0, 0, 0};
        bool here = false;
        if (t.base_is_b == want_b) {
            if (t.base_index % n == vertex) {
                at = pts[0];
                u = pts[1];
                w = pts[2];
                here = true;
            } else if ((t.base_index + 1) % n == vertex) {
                at = pts[1];
                u = pts[0];
                w = pts[2];
                here = true;
            }
        } else if (t.apex_index % n == vertex) {
            at = pts[2];
            u = pts[0];
            w = pts[1];
            here = true;
        }
        if (here) sum += angle_between(u - at, w - at);
    }
    return sum;
}

// Opening report for the chosen chain. The B-side chain angle is the direct
// face-angle sum (the chain is opened from its convex side); the A-side
// chain angle is 2 pi minus the face-angle sum, which is the reflection
// identity applied to a chain opened from its reflex side.
inline OpeningReport open_band_report(const NestedPrismatoid& p, const Band& band, BandSide side) {
    p.validate();
    OpeningReport report;
    report.side = side;
    const ConvexPolygon& poly = (side == BandSide::B) ? p.base : p.top;
    for (std::size_t v = 0; v < poly.size(); ++v) {
        OpeningReport::Entry e;
        e.vertex = v;
        e.theta = poly.interior_angle(v);
        const double faces = band_face_angle_sum(p, band, side, v);
        e.phi = (side == BandSide::B) ? faces : 2.0 * kPi - faces;
        e.omega = e.phi - e.theta;
        report.entries.push_back(e);
    }
    return report;
}

}  // namespace bandfold
