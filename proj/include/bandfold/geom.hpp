#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include "bandfold/errors.hpp"

namespace bandfold {

// Default length tolerance. All generated instances are diameter-normalized
// to 1, so this is scale-appropriate; pass an explicit eps otherwise.
inline constexpr double kEps = 1e-9;

inline constexpr double kPi = 3.14159265358979323846;

// ---------------------------------------------------------------------------
// Vectors and points
// ---------------------------------------------------------------------------

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    constexpr Vec2() = default;
    constexpr Vec2(double x_, double y_) : x(x_), y(y_) {}

    constexpr Vec2 operator+(const Vec2& r) const { return {x + r.x, y + r.y}; }
    constexpr Vec2 operator-(const Vec2& r) const { return {x - r.x, y - r.y}; }
    constexpr Vec2 operator*(double s) const { return {x * s, y * s}; }
    constexpr Vec2 operator/(double s) const { return {x / s, y / s}; }
    constexpr Vec2 operator-() const { return {-x, -y}; }
    constexpr bool operator==(const Vec2& r) const { return x == r.x && y == r.y; }

    constexpr double dot(const Vec2& r) const { return x * r.x + y * r.y; }
    constexpr double cross(const Vec2& r) const { return x * r.y - y * r.x; }
    double norm() const { return std::hypot(x, y); }
    constexpr double norm2() const { return x * x + y * y; }
    // ccw quarter turn
    constexpr Vec2 perp() const { return {-y, x}; }
};

using Point2 = Vec2;

inline constexpr Vec2 operator*(double s, const Vec2& v) { return v * s; }

struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    constexpr Vec3() = default;
    constexpr Vec3(double x_, double y_, double z_) : x(x_), y(y_), z(z_) {}
    constexpr Vec3(const Vec2& p, double z_) : x(p.x), y(p.y), z(z_) {}

    constexpr Vec3 operator+(const Vec3& r) const { return {x + r.x, y + r.y, z + r.z}; }
    constexpr Vec3 operator-(const Vec3& r) const { return {x - r.x, y - r.y, z - r.z}; }
    constexpr Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }

    constexpr double dot(const Vec3& r) const { return x * r.x + y * r.y + z * r.z; }
    constexpr Vec3 cross(const Vec3& r) const {
        return {y * r.z - z * r.y, z * r.x - x * r.z, x * r.y - y * r.x};
    }
    double norm() const { return std::sqrt(x * x + y * y + z * z); }
    constexpr Vec2 xy() const { return {x, y}; }
};

using Point3 = Vec3;

inline double dist(const Point2& a, const Point2& b) { return (b - a).norm(); }
inline double dist(const Point3& a, const Point3& b) { return (b - a).norm(); }

inline bool finite(const Vec2& v) { return std::isfinite(v.x) && std::isfinite(v.y); }

// Unsigned angle between two 2D vectors, in [0, pi].
inline double angle_between(const Vec2& u, const Vec2& w) {
    if (u.norm2() == 0.0 || w.norm2() == 0.0)
        throw DegenerateVector("angle_between: zero-length vector");
    return std::atan2(std::abs(u.cross(w)), u.dot(w));
}

// Unsigned angle between two 3D vectors, in [0, pi].
inline double angle_between(const Vec3& u, const Vec3& w) {
    const double nu = u.norm(), nw = w.norm();
    if (nu == 0.0 || nw == 0.0)
        throw DegenerateVector("angle_between: zero-length vector");
    return std::atan2(u.cross(w).norm(), u.dot(w));
}

// ---------------------------------------------------------------------------
// Predicates
// ---------------------------------------------------------------------------

// Sign of the signed area of triangle pqr: +1 ccw, -1 cw, 0 when r lies
// within distance eps of line pq.
inline int orientation(const Point2& p, const Point2& q, const Point2& r, double eps = kEps) {
    const Vec2 pq = q - p;
    const double det = pq.cross(r - p);
    const double len = pq.norm();
    if (std::abs(det) <= eps * len) return 0;
    return det > 0.0 ? 1 : -1;
}

// Distance from point p to segment [a, b].
inline double point_segment_distance(const Point2& p, const Point2& a, const Point2& b) {
    const Vec2 ab = b - a;
    const double l2 = ab.norm2();
    if (l2 == 0.0) return dist(p, a);
    const double t = std::clamp((p - a).dot(ab) / l2, 0.0, 1.0);
    return dist(p, a + ab * t);
}

// True when closed segments [a,b] and [c,d] come within eps of each other.
inline bool segments_intersect(const Point2& a, const Point2& b, const Point2& c,
                               const Point2& d, double eps = kEps) {
    const Vec2 r = b - a, s = d - c;
    const double denom = r.cross(s);
    const double t_num = (c - a).cross(s);
    const double u_num = (c - a).cross(r);
    if (std::abs(denom) > 1e-15 * std::max(r.norm() * s.norm(), 1e-300)) {
        const double t = t_num / denom;
        const double u = u_num / denom;
        if (t >= 0.0 && t <= 1.0 && u >= 0.0 && u <= 1.0) return true;
    }
    // parallel, collinear, or crossing just outside the parameter range
    return point_segment_distance(a, c, d) <= eps || point_segment_distance(b, c, d) <= eps ||
           point_segment_distance(c, a, b) <= eps || point_segment_distance(d, a, b) <= eps;
}

// ---------------------------------------------------------------------------
// Polygonal chains
// ---------------------------------------------------------------------------

// Open directed chain of >= 2 pairwise-distinct consecutive vertices.
using PolyChain = std::vector<Point2>;

inline void validate_chain(const PolyChain& chain, double eps = kEps) {
    if (chain.size() < 2) throw DegenerateInput("chain needs >= 2 vertices");
    for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
        if (!finite(chain[i]) || !finite(chain[i + 1]))
            throw DegenerateInput("chain has non-finite vertex");
        if (dist(chain[i], chain[i + 1]) <= eps)
            throw DegenerateSegment("chain has a zero-length segment");
    }
}

// Interior angle at internal vertex i, measured on the convex side of the
// two incident segments: the unsigned angle between (v[i-1]-v[i]) and
// (v[i+1]-v[i]), in (0, pi]. The reflex value is 2*pi minus this.
inline double angle_at(const PolyChain& chain, std::size_t i) {
    if (i == 0 || i + 1 >= chain.size())
        throw IndexOutOfRange("angle_at: vertex has no two neighbors");
    return angle_between(chain[i - 1] - chain[i], chain[i + 1] - chain[i]);
}

// Signed turn at internal vertex i: +1 left (ccw), -1 right (cw), 0 straight.
inline int turn_sign(const PolyChain& chain, std::size_t i, double eps = kEps) {
    if (i == 0 || i + 1 >= chain.size())
        throw IndexOutOfRange("turn_sign: vertex has no two neighbors");
    return orientation(chain[i - 1], chain[i], chain[i + 1], eps);
}

// Uniform turn direction and every interior angle in (0, pi].
inline bool is_convex_chain(const PolyChain& chain, double eps = kEps) {
    validate_chain(chain, eps);
    int sign = 0;
    for (std::size_t i = 1; i + 1 < chain.size(); ++i) {
        const int s = turn_sign(chain, i, eps);
        if (s == 0) continue;
        if (sign == 0)
            sign = s;
        else if (s != sign)
            return false;
    }
    return true;
}

inline double chain_length(const PolyChain& chain) {
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < chain.size(); ++i) total += dist(chain[i], chain[i + 1]);
    return total;
}

// ---------------------------------------------------------------------------
// Convex polygons
// ---------------------------------------------------------------------------

// Strictly convex polygon with ccw-ordered vertices.
struct ConvexPolygon {
    std::vector<Point2> verts;

    std::size_t size() const { return verts.size(); }
    const Point2& operator[](std::size_t i) const { return verts[i]; }
    const Point2& vertex(std::size_t i) const { return verts[i % verts.size()]; }

    static ConvexPolygon make(std::vector<Point2> pts, double eps = kEps) {
        ConvexPolygon poly{std::move(pts)};
        poly.validate(eps);
        return poly;
    }

    void validate(double eps = kEps) const {
        const std::size_t n = verts.size();
        if (n < 3) throw DegenerateInput("polygon needs >= 3 vertices");
        for (std::size_t i = 0; i < n; ++i) {
            if (!finite(verts[i])) throw DegenerateInput("polygon has non-finite vertex");
            if (orientation(verts[i], verts[(i + 1) % n], verts[(i + 2) % n], eps) != 1)
                throw ConvexityViolation("polygon is not strictly convex ccw");
        }
    }

    double signed_area() const {
        double a = 0.0;
        for (std::size_t i = 0; i < verts.size(); ++i)
            a += verts[i].cross(verts[(i + 1) % verts.size()]);
        return 0.5 * a;
    }

    Point2 centroid() const {
        Point2 c{0.0, 0.0};
        for (const auto& v : verts) c = c + v;
        return c / static_cast<double>(verts.size());
    }

    double diameter() const {
        double d = 0.0;
        for (std::size_t i = 0; i < verts.size(); ++i)
            for (std::size_t j = i + 1; j < verts.size(); ++j)
                d = std::max(d, dist(verts[i], verts[j]));
        return d;
    }

    // Interior angle at vertex i, in (0, pi).
    double interior_angle(std::size_t i) const {
        const std::size_t n = verts.size();
        return angle_between(verts[(i + n - 1) % n] - verts[i], verts[(i + 1) % n] - verts[i]);
    }

    // Signed distance of p from the boundary: positive inside.
    double inside_margin(const Point2& p) const {
        double m = std::numeric_limits<double>::infinity();
        const std::size_t n = verts.size();
        for (std::size_t i = 0; i < n; ++i) {
            const Vec2 e = verts[(i + 1) % n] - verts[i];
            m = std::min(m, e.cross(p - verts[i]) / e.norm());
        }
        return m;
    }
};

inline bool point_strictly_inside(const ConvexPolygon& poly, const Point2& p, double eps = kEps) {
    return poly.inside_margin(p) > eps;
}

// ---------------------------------------------------------------------------
// Convex hull
// ---------------------------------------------------------------------------

// Andrew's monotone chain; drops collinear boundary points so the result is
// strictly convex. Throws DegenerateInput when all points are collinear.
inline ConvexPolygon convex_hull_2d(std::vector<Point2> pts, double eps = kEps) {
    if (pts.size() < 3) throw DegenerateInput("hull needs >= 3 points");
    std::sort(pts.begin(), pts.end(), [](const Point2& a, const Point2& b) {
        return a.x < b.x || (a.x == b.x && a.y < b.y);
    });
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() < 3) throw DegenerateInput("hull needs >= 3 distinct points");

    auto build = [&](auto begin, auto end) {
        std::vector<Point2> h;
        for (auto it = begin; it != end; ++it) {
            while (h.size() >= 2 && orientation(h[h.size() - 2], h.back(), *it, eps) <= 0)
                h.pop_back();
            h.push_back(*it);
        }
        return h;
    };
    std::vector<Point2> lower = build(pts.begin(), pts.end());
    std::vector<Point2> upper = build(pts.rbegin(), pts.rend());

    lower.pop_back();
    upper.pop_back();
    lower.insert(lower.end(), upper.begin(), upper.end());
    if (lower.size() < 3) throw DegenerateInput("all points collinear");
    return ConvexPolygon::make(std::move(lower), eps);
}

// ---------------------------------------------------------------------------
// Convex polygon overlap
// ---------------------------------------------------------------------------

inline double polygon_area(const std::vector<Point2>& poly) {
    double a = 0.0;
    for (std::size_t i = 0; i < poly.size(); ++i)
        a += poly[i].cross(poly[(i + 1) % poly.size()]);
    return 0.5 * std::abs(a);
}

// Sutherland-Hodgman clip of `subject` against convex ccw `clip`, with each
// clip half-plane inset by `inset`. A positive inset makes boundary contact
// produce an exactly empty result, which is what the strict-overlap tests
// need.
inline std::vector<Point2> clip_convex(const std::vector<Point2>& subject,
                                       const std::vector<Point2>& clip, double inset) {
    std::vector<Point2> out = subject;
    const std::size_t m = clip.size();
    for (std::size_t i = 0; i < m && !out.empty(); ++i) {
        const Point2 a = clip[i];
        const Point2 b = clip[(i + 1) % m];
        const Vec2 e = b - a;
        const double len = e.norm();
        std::vector<Point2> kept;
        kept.reserve(out.size() + 2);
        auto side = [&](const Point2& p) { return e.cross(p - a) / len - inset; };
        for (std::size_t j = 0; j < out.size(); ++j) {
            const Point2 cur = out[j];
            const Point2 nxt = out[(j + 1) % out.size()];
            const double dc = side(cur), dn = side(nxt);
            if (dc >= 0.0) kept.push_back(cur);
            if ((dc > 0.0 && dn < 0.0) || (dc < 0.0 && dn > 0.0)) {
                const double t = dc / (dc - dn);
                kept.push_back(cur + (nxt - cur) * t);
            }
        }
        out = std::move(kept);
    }
    return out;
}

// Orient an arbitrary simple convex polygon ccw.
inline std::vector<Point2> oriented_ccw(std::vector<Point2> poly) {
    double a = 0.0;
    for (std::size_t i = 0; i < poly.size(); ++i)
        a += poly[i].cross(poly[(i + 1) % poly.size()]);
    if (a < 0.0) std::reverse(poly.begin(), poly.end());
    return poly;
}

// Strict interior overlap of two convex polygons: intersection area above an
// eps^2-scale threshold after insetting by eps. Shared edges and vertices do
// not count.
inline bool convex_overlap(const std::vector<Point2>& p, const std::vector<Point2>& q,
                           double eps = kEps) {
    const std::vector<Point2> pc = oriented_ccw(p);
    const std::vector<Point2> qc = oriented_ccw(q);
    const double tau = eps * eps;
    if (polygon_area(clip_convex(pc, qc, eps)) > tau) return true;
    return polygon_area(clip_convex(qc, pc, eps)) > tau;
}

// Maximum overlap depth proxy: intersection area with inset clipping.
inline double overlap_area(const std::vector<Point2>& p, const std::vector<Point2>& q,
                           double eps = kEps) {
    const std::vector<Point2> pc = oriented_ccw(p);
    const std::vector<Point2> qc = oriented_ccw(q);
    return std::max(polygon_area(clip_convex(pc, qc, eps)), polygon_area(clip_convex(qc, pc, eps)));
}

struct Triangle {
    Point2 a, b, c;
    std::vector<Point2> to_vector() const { return {a, b, c}; }
    double area() const { return 0.5 * std::abs((b - a).cross(c - a)); }
};

// True iff the triangle interiors share area above tolerance.
inline bool triangles_overlap(const Triangle& t1, const Triangle& t2, double eps = kEps) {
    const double scale1 = std::max({dist(t1.a, t1.b), dist(t1.b, t1.c), dist(t1.c, t1.a)});
    const double scale2 = std::max({dist(t2.a, t2.b), dist(t2.b, t2.c), dist(t2.c, t2.a)});
    if (t1.area() <= eps * scale1 || t2.area() <= eps * scale2)
        throw DegenerateTriangle("triangles_overlap: near-zero-area input");
    return convex_overlap(t1.to_vector(), t2.to_vector(), eps);
}

// ---------------------------------------------------------------------------
// Rigid motions of the plane
// ---------------------------------------------------------------------------

// p -> R * M(p) + t, where M mirrors across the x-axis when reflect is set.
struct RigidMotion2 {
    double angle = 0.0;  // ccw radians
    Vec2 translation{0.0, 0.0};
    bool reflect = false;

    Point2 apply(const Point2& p) const {
        const double py = reflect ? -p.y : p.y;
        const double c = std::cos(angle), s = std::sin(angle);
        return {c * p.x - s * py + translation.x, s * p.x + c * py + translation.y};
    }

    // Motion taking (a0, a1) to (b0, b1); the segments must be congruent.
    // With `mirrored` the source is reflected across the x-axis first.
    static RigidMotion2 from_segment(const Point2& a0, const Point2& a1, const Point2& b0,
                                     const Point2& b1, bool mirrored, double eps = kEps) {
        const double la = dist(a0, a1), lb = dist(b0, b1);
        if (la <= eps || lb <= eps) throw DegenerateSegment("from_segment: zero-length segment");
        if (std::abs(la - lb) > 1e-6 * std::max(la, lb) + eps)
            throw PreconditionViolation("from_segment: segments not congruent");
        Vec2 da = a1 - a0;
        if (mirrored) da.y = -da.y;
        const Vec2 db = b1 - b0;
        RigidMotion2 m;
        m.reflect = mirrored;
        m.angle = std::atan2(da.cross(db), da.dot(db));
        Vec2 src = a0;
        if (mirrored) src.y = -src.y;
        const double c = std::cos(m.angle), s = std::sin(m.angle);
        m.translation = b0 - Vec2{c * src.x - s * src.y, s * src.x + c * src.y};
        return m;
    }
};

}  // namespace bandfold
