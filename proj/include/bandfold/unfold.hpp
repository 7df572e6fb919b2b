#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "bandfold/band.hpp"
#include "bandfold/opening.hpp"
#include "bandfold/radial_monotone.hpp"

namespace bandfold {

// ---------------------------------------------------------------------------
// Cut plans and layouts
// ---------------------------------------------------------------------------

// One lateral cut plus the two uncut attachment edges: a base edge for B and
// a witness edge for A.
struct CutPlan {
    std::size_t cut_gap = 0;        // lateral edge index (band fan gap)
    std::size_t b_attach_edge = 0;  // base edge kept uncut
    RmWitness witness;              // top edge kept uncut, with apex
};

struct FaceCorner {
    bool is_b = true;
    std::size_t index = 0;
};

struct PlacedFace {
    std::string id;                  // "band:<t>", "base", "top"
    std::vector<Point2> poly;        // placed vertices
    std::vector<FaceCorner> corners; // source vertex of each placed vertex
    RigidMotion2 motion;             // intrinsic coordinates -> placed
    int parent = -1;                 // attachment tree parent (face index)
};

struct Layout {
    std::vector<PlacedFace> faces;
    // developed boundary chains, cut vertex duplicated at both ends
    std::vector<Point2> chain_b_pts, chain_a_pts;
    std::vector<std::size_t> chain_b_idx, chain_a_idx;
    std::size_t cut_gap = 0;
    double eps = kEps;
};

namespace detail {

// Third-vertex position from distances to two placed points, on the
// requested side of the segment u -> w (side > 0 means left).
inline Point2 trilaterate(const Point2& u, const Point2& w, double r_u, double r_w, int side) {
    const Vec2 uw = w - u;
    const double d = uw.norm();
    if (d <= 0.0) throw DegenerateSegment("trilaterate: coincident edge endpoints");
    const double x = (d * d + r_u * r_u - r_w * r_w) / (2.0 * d);
    const double h2 = r_u * r_u - x * x;
    const double h = h2 > 0.0 ? std::sqrt(h2) : 0.0;
    const Vec2 along = uw / d;
    return u + along * x + along.perp() * (side > 0 ? h : -h);
}

// Intrinsic development of a 3D triangle: (0,0), (|pq|,0), third at +y.
inline std::vector<Point2> intrinsic_triangle(const Point3& p, const Point3& q, const Point3& r) {
    const double lpq = dist(p, q);
    return {{0.0, 0.0}, {lpq, 0.0}, trilaterate({0, 0}, {lpq, 0}, dist(p, r), dist(q, r), +1)};
}

inline RigidMotion2 motion_for(const std::vector<Point2>& intrinsic,
                               const std::vector<Point2>& placed) {
    for (bool mirrored : {false, true}) {
        const RigidMotion2 m =
            RigidMotion2::from_segment(intrinsic[0], intrinsic[1], placed[0], placed[1], mirrored);
        if (dist(m.apply(intrinsic[2]), placed[2]) < 1e-6) return m;
    }
    throw GeometryError("no rigid motion matches the placed face");
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Band development
// ---------------------------------------------------------------------------

inline void require_cuttable(const Band& band, std::size_t cut_gap) {
    if (cut_gap >= band.laterals.size())
        throw InvalidCutEdge("cut id is not a lateral edge of the band");
    if (band.laterals[cut_gap].quad_diagonal)
        throw InvalidCutEdge("cut id names a quad diagonal, not a polytope edge");
}

// Cuts the fan at the given lateral edge and lays the triangles out
// isometrically: the cut edge runs along +x from the origin (B endpoint at
// the origin), successive faces attach across shared lateral edges without
// reflection.
inline Layout develop_band(const NestedPrismatoid& p, const Band& band, std::size_t cut_gap,
                           double eps = kEps) {
    require_cuttable(band, cut_gap);
    const std::size_t m = band.size();
    Layout layout;
    layout.cut_gap = cut_gap;
    layout.eps = eps;

    const LateralEdge& cut = band.laterals[cut_gap];
    Point2 cur_b{0.0, 0.0};
    Point2 cur_a{dist(p.base_vertex3(cut.b_vertex), p.top_vertex3(cut.a_vertex)), 0.0};
    std::size_t cur_b_idx = cut.b_vertex;
    std::size_t cur_a_idx = cut.a_vertex;
    layout.chain_b_pts.push_back(cur_b);
    layout.chain_a_pts.push_back(cur_a);
    layout.chain_b_idx.push_back(cur_b_idx);
    layout.chain_a_idx.push_back(cur_a_idx);

    Point2 prev_third{0.0, -1.0};  // fictitious previous apex below the +x axis
    for (std::size_t s = 1; s <= m; ++s) {
        const std::size_t t = (cut_gap + s) % m;
        const BandTriangle& tri = band.triangles[t];
        const auto pts3 = triangle_points_3d(p, tri);

        // the triangle's corners: base0, base1, apex
        const FaceCorner base0{tri.base_is_b, tri.base_index};
        const std::size_t n_base = tri.base_is_b ? p.base.size() : p.top.size();
        const FaceCorner base1{tri.base_is_b, (tri.base_index + 1) % n_base};
        const FaceCorner apex{!tri.base_is_b, tri.apex_index};

        // which corner is new? the current lateral edge holds one B and one
        // A vertex; the new corner is base1 for a face based on its own side
        FaceCorner new_corner{};
        Point3 new3{};
        Point2 shared_u = cur_b, shared_w = cur_a;
        Point3 shared_u3 = p.base_vertex3(cur_b_idx), shared_w3 = p.top_vertex3(cur_a_idx);
        if (tri.base_is_b) {
            new_corner = base1;
            new3 = p.base_vertex3(base1.index);
        } else {
            new_corner = base1;
            new3 = p.top_vertex3(base1.index);
        }

        const int side = orientation(shared_u, shared_w, prev_third, eps) >= 0 ? -1 : +1;
        const Point2 placed_new = detail::trilaterate(shared_u, shared_w, dist(shared_u3, new3),
                                                      dist(shared_w3, new3), side);

        PlacedFace face;
        face.id = "band:" + std::to_string(t);
        // store as (base0, base1, apex) in placed coordinates
        auto placed_of = [&](const FaceCorner& c) -> Point2 {
            if (c.is_b == tri.base_is_b && c.index == new_corner.index) return placed_new;
            if (c.is_b)
                return c.index == cur_b_idx ? cur_b : placed_new;
            return c.index == cur_a_idx ? cur_a : placed_new;
        };
        face.poly = {placed_of(base0), placed_of(base1), placed_of(apex)};
        face.corners = {base0, base1, apex};
        face.motion = detail::motion_for(detail::intrinsic_triangle(pts3[0], pts3[1], pts3[2]),
                                         face.poly);
        face.parent = s == 1 ? -1 : static_cast<int>(layout.faces.size()) - 1;
        layout.faces.push_back(face);

        // advance the shared lateral edge
        prev_third = placed_of(tri.base_is_b ? FaceCorner{true, tri.base_index}
                                             : FaceCorner{false, tri.base_index});
        if (tri.base_is_b) {
            cur_b = placed_new;
            cur_b_idx = new_corner.index;
            layout.chain_b_pts.push_back(cur_b);
            layout.chain_b_idx.push_back(cur_b_idx);
        } else {
            cur_a = placed_new;
            cur_a_idx = new_corner.index;
            layout.chain_a_pts.push_back(cur_a);
            layout.chain_a_idx.push_back(cur_a_idx);
        }
    }
    return layout;
}

// ---------------------------------------------------------------------------
// Attaching the base and top faces
// ---------------------------------------------------------------------------

namespace detail {

inline int find_band_face(const Layout& layout, bool base_is_b, std::size_t edge_index) {
    for (std::size_t f = 0; f < layout.faces.size(); ++f) {
        const PlacedFace& face = layout.faces[f];
        if (face.corners.size() != 3) continue;
        if (face.corners[0].is_b == base_is_b && face.corners[0].index == edge_index &&
            face.corners[1].is_b == base_is_b)
            return static_cast<int>(f);
    }
    return -1;
}

// Places `poly` across its edge (edge_index) onto the placed copy of that
// edge, on the side opposite the band triangle's apex.
inline void attach_polygon(Layout& layout, const ConvexPolygon& poly, bool is_b,
                           std::size_t edge_index, const std::string& id) {
    const int f = find_band_face(layout, is_b, edge_index);
    if (f < 0) throw InvalidCutEdge("attachment edge has no band face");
    const PlacedFace& host = layout.faces[f];
    const Point2 p0 = host.poly[0];
    const Point2 p1 = host.poly[1];
    const Point2 apex = host.poly[2];
    const Point2 v0 = poly.vertex(edge_index);
    const Point2 v1 = poly.vertex(edge_index + 1);
    const int apex_side = orientation(p0, p1, apex, layout.eps);
    PlacedFace face;
    face.id = id;
    face.parent = f;
    for (bool mirrored : {false, true}) {
        const RigidMotion2 m = RigidMotion2::from_segment(v0, v1, p0, p1, mirrored);
        const Point2 c = m.apply(poly.centroid());
        if (orientation(p0, p1, c, layout.eps) == -apex_side) {
            face.motion = m;
            for (std::size_t i = 0; i < poly.size(); ++i) {
                face.poly.push_back(m.apply(poly[i]));
                face.corners.push_back({is_b, i});
            }
            layout.faces.push_back(face);
            return;
        }
    }
    throw GeometryError("could not place attachment on the far side");
}

}  // namespace detail

inline void attach_base(Layout& layout, const NestedPrismatoid& p, std::size_t b_edge) {
    detail::attach_polygon(layout, p.base, true, b_edge % p.base.size(), "base");
}

inline void attach_top(Layout& layout, const NestedPrismatoid& p, std::size_t a_edge) {
    detail::attach_polygon(layout, p.top, false, a_edge % p.top.size(), "top");
}

// ---------------------------------------------------------------------------
// Overlap checks
// ---------------------------------------------------------------------------

// First face pair with interior overlap above tolerance, if any.
inline std::optional<std::pair<std::size_t, std::size_t>> layout_overlaps(const Layout& layout) {
    for (std::size_t i = 0; i < layout.faces.size(); ++i)
        for (std::size_t j = i + 1; j < layout.faces.size(); ++j)
            if (convex_overlap(layout.faces[i].poly, layout.faces[j].poly, layout.eps))
                return std::make_pair(i, j);
    return std::nullopt;
}

// Largest pairwise intersection area; used for marginal-verdict reporting.
inline double layout_max_overlap_area(const Layout& layout) {
    double worst = 0.0;
    for (std::size_t i = 0; i < layout.faces.size(); ++i)
        for (std::size_t j = i + 1; j < layout.faces.size(); ++j)
            worst = std::max(worst, overlap_area(layout.faces[i].poly, layout.faces[j].poly,
                                                 layout.eps));
    return worst;
}

// ---------------------------------------------------------------------------
// Safe cuts
// ---------------------------------------------------------------------------

// All lateral edges whose band-only development is nonoverlapping.
inline std::vector<std::size_t> find_safe_cuts(const NestedPrismatoid& p, const Band& band,
                                               double eps = kEps) {
    std::vector<std::size_t> safe;
    for (std::size_t g = 0; g < band.laterals.size(); ++g) {
        if (band.laterals[g].quad_diagonal) continue;
        const Layout layout = develop_band(p, band, g, eps);
        if (!layout_overlaps(layout)) safe.push_back(g);
    }
    return safe;
}

// Safe cuts compatible with the witness: incident to the apex vertex, so the
// top boundary chain splits into exactly the witness's two RM paths.
inline std::vector<std::size_t> compatible_safe_cuts(const NestedPrismatoid& p, const Band& band,
                                                     const RmWitness& witness, double eps = kEps) {
    std::vector<std::size_t> out;
    for (std::size_t g : find_safe_cuts(p, band, eps))
        if (band.laterals[g].a_vertex == witness.apex % p.top.size()) out.push_back(g);
    return out;
}

// ---------------------------------------------------------------------------
// Full unfolding
// ---------------------------------------------------------------------------

// Develops the band and attaches B and A per the plan. The witness is
// re-verified; cut safety at this height is the caller's responsibility
// (see find_safe_cuts), so overlapping layouts can be produced and reported.
inline Layout unfold(const NestedPrismatoid& p, const CutPlan& plan, double eps = kEps) {
    p.validate(eps);
    if (!verify_rm_witness(p.top, plan.witness, eps))
        throw UnverifiedWitness("cut plan witness fails RM re-verification");
    const Band band = build_band(p, eps);
    require_cuttable(band, plan.cut_gap);
    Layout layout = develop_band(p, band, plan.cut_gap, eps);
    attach_base(layout, p, plan.b_attach_edge);
    attach_top(layout, p, plan.witness.edge);
    return layout;
}

// ---------------------------------------------------------------------------
// Plan selection
// ---------------------------------------------------------------------------

namespace detail {

// Minimum clearance between the placed top polygon and the band triangles,
// ignoring contact at the attachment edge itself.
inline double top_clearance(const Layout& layout) {
    int top_face = -1;
    for (std::size_t f = 0; f < layout.faces.size(); ++f)
        if (layout.faces[f].id == "top") top_face = static_cast<int>(f);
    if (top_face < 0) throw PreconditionViolation("layout has no top face");
    const PlacedFace& top = layout.faces[top_face];
    const PlacedFace& host = layout.faces[top.parent];
    const Point2 e0 = host.poly[0];
    const Point2 e1 = host.poly[1];
    auto excluded = [&](const Point2& q) {
        return dist(q, e0) < 1e-7 || dist(q, e1) < 1e-7;
    };
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t f = 0; f < layout.faces.size(); ++f) {
        const PlacedFace& face = layout.faces[f];
        if (face.id == "top" || face.id == "base") continue;
        for (std::size_t i = 0; i < top.poly.size(); ++i) {
            const Point2 a0 = top.poly[i];
            const Point2 a1 = top.poly[(i + 1) % top.poly.size()];
            for (std::size_t j = 0; j < face.poly.size(); ++j) {
                const Point2 b0 = face.poly[j];
                const Point2 b1 = face.poly[(j + 1) % face.poly.size()];
                double d = std::numeric_limits<double>::infinity();
                for (const Point2& q : {a0, a1})
                    d = std::min(d, point_segment_distance(q, b0, b1));
                for (const Point2& q : {b0, b1})
                    d = std::min(d, point_segment_distance(q, a0, a1));
                if (segments_intersect(a0, a1, b0, b1, layout.eps)) d = 0.0;
                if (d < best) {
                    // ignore contact at the attachment edge endpoints
                    bool contact_ok = false;
                    if (d < 1e-7) {
                        for (const Point2& q : {a0, a1, b0, b1})
                            if (excluded(q)) contact_ok = true;
                    }
                    if (!contact_ok) best = d;
                }
            }
        }
    }
    return best;
}

// Strip position of the base edge's band face, measured from the cut.
inline std::size_t strip_position(const Band& band, std::size_t cut_gap, std::size_t b_edge) {
    const std::size_t m = band.size();
    for (std::size_t s = 1; s <= m; ++s) {
        const BandTriangle& t = band.triangles[(cut_gap + s) % m];
        if (t.base_is_b && t.base_index == b_edge) return s - 1;
    }
    throw GeometryError("base edge not found in band");
}

}  // namespace detail

// Base attachment edge furthest (by strip distance) from the cut.
inline std::size_t default_b_attach_edge(const NestedPrismatoid& p, const Band& band,
                                         std::size_t cut_gap) {
    const std::size_t m = band.size();
    std::size_t best_edge = 0;
    long best_score = -1;
    for (std::size_t e = 0; e < p.base.size(); ++e) {
        const std::size_t s = detail::strip_position(band, cut_gap, e);
        const long score = static_cast<long>(std::min(s, (m - 1) - s));
        if (score > best_score) {
            best_score = score;
            best_edge = e;
        }
    }
    return best_edge;
}

// Deterministic plan choice: among witnesses with a compatible safe cut (the
// cut must be safe at every height in `safety_heights`), pick the witness
// maximizing the flat-layout clearance of A to the band, ties to the lowest
// edge index; the lowest-index compatible cut is used.
inline std::optional<CutPlan> choose_cut_plan(const NestedPrismatoid& p,
                                              const std::vector<double>& safety_heights,
                                              double eps = kEps) {
    p.validate(eps);
    const std::vector<RmWitness> witnesses = find_rm_property(p.top, eps);
    if (witnesses.empty()) return std::nullopt;

    std::optional<CutPlan> best;
    double best_clearance = -1.0;
    for (const RmWitness& w : witnesses) {
        // cuts incident to the apex, safe at every requested height
        std::vector<std::size_t> cuts;
        bool first_height = true;
        for (double z : safety_heights) {
            const NestedPrismatoid pz{p.base, p.top, z};
            const Band band = build_band(pz, eps);
            const std::vector<std::size_t> here = compatible_safe_cuts(pz, band, w, eps);
            if (first_height) {
                cuts = here;
                first_height = false;
            } else {
                std::vector<std::size_t> kept;
                for (std::size_t g : cuts)
                    if (std::find(here.begin(), here.end(), g) != here.end()) kept.push_back(g);
                cuts = kept;
            }
            if (cuts.empty()) break;
        }
        if (cuts.empty()) continue;
        const std::size_t cut = cuts.front();

        // clearance scored on the flat layout
        const NestedPrismatoid flat{p.base, p.top, 0.0};
        const Band flat_band = build_band(flat, eps);
        CutPlan plan{cut, default_b_attach_edge(flat, flat_band, cut), w};
        Layout layout = develop_band(flat, flat_band, cut, eps);
        attach_top(layout, flat, w.edge);
        const double clearance = detail::top_clearance(layout);
        if (clearance > best_clearance + 1e-15) {
            best_clearance = clearance;
            best = plan;
        }
    }
    return best;
}

inline std::optional<CutPlan> choose_cut_plan(const NestedPrismatoid& p, double eps = kEps) {
    return choose_cut_plan(p, {p.height}, eps);
}

// ---------------------------------------------------------------------------
// Height sweeps
// ---------------------------------------------------------------------------

struct SweepVerdict {
    double z = 0.0;
    bool nonoverlapping = false;
    bool marginal = false;  // overlap measure within 10 eps of the threshold
    bool combinatorics_match = true;
    std::optional<std::pair<std::size_t, std::size_t>> overlap_pair;
};

// Unfolds the same shape with the same plan at each height and reports the
// per-height verdicts. The band combinatorics are checked against the first
// height; safety is evaluated per height, never assumed transferable.
inline std::vector<SweepVerdict> z_sweep(const ConvexPolygon& base, const ConvexPolygon& top,
                                         const CutPlan& plan, const std::vector<double>& z_values,
                                         double eps = kEps) {
    std::vector<SweepVerdict> out;
    std::string reference_sig;
    for (double z : z_values) {
        const NestedPrismatoid p{base, top, z};
        SweepVerdict v;
        v.z = z;
        const std::string sig = band_combinatorics(p, eps);
        if (reference_sig.empty()) reference_sig = sig;
        v.combinatorics_match = (sig == reference_sig);
        const Layout layout = unfold(p, plan, eps);
        v.overlap_pair = layout_overlaps(layout);
        v.nonoverlapping = !v.overlap_pair.has_value();
        const double worst = layout_max_overlap_area(layout);
        const double tau = eps * eps;
        v.marginal = std::abs(worst - tau) <= 10.0 * eps * p.diameter();
        out.push_back(v);
    }
    return out;
}

}  // namespace bandfold
