#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include "antoine/errors.hpp"
#include "antoine/vec.hpp"

namespace antoine {

constexpr double kUnitTol = 1e-9;      // unit-norm / orthogonality slack
constexpr double kGeoTolRel = 1e-9;    // relative geometric tolerance (of a diameter)

// ---------------------------------------------------------------------------
// Domain types
// ---------------------------------------------------------------------------

/// Affine 2-plane given by a point and a unit normal.
struct Plane {
    Vec3 origin;
    Vec3 unit_normal;

    bool valid() const {
        return origin.finite() && std::abs(unit_normal.norm() - 1.0) < kUnitTol;
    }
};

/// Round circle in 3-space: center, unit plane normal, radius > 0.
struct Circle3 {
    Vec3 center;
    Vec3 unit_normal;
    double radius = 1.0;

    bool valid() const {
        return center.finite() && radius > 0.0 &&
               std::abs(unit_normal.norm() - 1.0) < kUnitTol;
    }

    /// Point at angle t in the circle's deterministic frame.
    Vec3 point(double t) const {
        Vec3 e1, e2;
        orthonormal_frame(unit_normal, e1, e2);
        return center + (e1 * std::cos(t) + e2 * std::sin(t)) * radius;
    }
};

/// Standard solid torus: closed tube_radius-neighborhood of its central circle.
/// Requires tube_radius < circle.radius, so the tube does not reach the axis.
struct SolidTorus {
    Circle3 circle;
    double tube_radius = 0.25;

    bool valid() const {
        return circle.valid() && tube_radius > 0.0 && tube_radius < circle.radius;
    }

    /// Diameter of the solid torus as a point set: 2 (R + r).
    double diameter() const { return 2.0 * (circle.radius + tube_radius); }

    Vec3 center() const { return circle.center; }
};

/// Orientation-preserving similarity x -> scale * R x + t.
struct Similarity {
    double scale = 1.0;
    Mat3 rotation;
    Vec3 translation;

    bool valid() const {
        return scale > 0.0 && rotation.orthogonality_defect() < kUnitTol &&
               rotation.det() > 0.0;
    }

    static Similarity identity() { return {}; }

    Vec3 operator()(const Vec3& p) const { return rotation * p * scale + translation; }

    /// this after other: (a.compose(b))(x) == a(b(x)).
    Similarity compose(const Similarity& o) const {
        Similarity r;
        r.scale = scale * o.scale;
        r.rotation = rotation * o.rotation;
        r.translation = rotation * o.translation * scale + translation;
        return r;
    }

    Similarity inverse() const {
        Similarity r;
        r.scale = 1.0 / scale;
        r.rotation = rotation.transpose();
        r.translation = (r.rotation * translation) * (-r.scale);
        return r;
    }

    /// Pure rotation by `angle` about the line through `p` with unit direction `axis`.
    static Similarity rotation_about_line(const Vec3& p, const Vec3& axis, double angle) {
        Similarity r;
        r.rotation = Mat3::axis_angle(axis, angle);
        r.translation = p - r.rotation * p;
        return r;
    }
};

inline Vec3 apply_similarity(const Similarity& s, const Vec3& p) { return s(p); }

inline Circle3 apply_similarity(const Similarity& s, const Circle3& c) {
    return Circle3{s(c.center), s.rotation * c.unit_normal, s.scale * c.radius};
}

inline SolidTorus apply_similarity(const Similarity& s, const SolidTorus& t) {
    return SolidTorus{apply_similarity(s, t.circle), s.scale * t.tube_radius};
}

// ---------------------------------------------------------------------------
// Projections
// ---------------------------------------------------------------------------

/// Orthogonal projection of p onto the plane (in world coordinates).
inline Vec3 project_point(const Plane& pl, const Vec3& p) {
    return p - pl.unit_normal * (p - pl.origin).dot(pl.unit_normal);
}

/// Projection expressed in the plane's deterministic orthonormal frame.
inline std::pair<double, double> project_point_2d(const Plane& pl, const Vec3& p) {
    Vec3 e1, e2;
    orthonormal_frame(pl.unit_normal, e1, e2);
    const Vec3 d = p - pl.origin;
    return {d.dot(e1), d.dot(e2)};
}

// ---------------------------------------------------------------------------
// Distances
// ---------------------------------------------------------------------------

/// Euclidean distance from a point to a circle (as a point set).
/// Splits p - center into the axial offset h and the in-plane radial
/// distance rho; the closest circle point is at in-plane distance
/// |rho - radius|, so d = hypot(rho - radius, h). Exact for rho = 0 too
/// (every circle point is then equally near).
inline double point_circle_distance(const Vec3& p, const Circle3& c) {
    const Vec3 d = p - c.center;
    const double h = d.dot(c.unit_normal);
    const Vec3 radial = d - c.unit_normal * h;
    const double rho = radial.norm();
    return std::hypot(rho - c.radius, h);
}

/// Nearest circle point to p (used to seed refinements). For points on the
/// axis the frame direction e1 is returned.
inline Vec3 closest_circle_point(const Vec3& p, const Circle3& c) {
    const Vec3 d = p - c.center;
    const double h = d.dot(c.unit_normal);
    Vec3 radial = d - c.unit_normal * h;
    const double rho = radial.norm();
    if (rho < 1e-300) {
        Vec3 e1, e2;
        orthonormal_frame(c.unit_normal, e1, e2);
        radial = e1;
    } else {
        radial = radial / rho;
    }
    return c.center + radial * c.radius;
}

struct MinimizeOpts {
    int grid_n = 256;         // coarse samples of the u-angle
    double tol = 1e-12;       // gradient tolerance, relative to (ra+rb)^2
    int max_iter = 64;
    double certified_gap = 0.0;  // 0 = accept the grid-implied Lipschitz gap
};

struct CircleDistanceResult {
    double distance = 0.0;
    double u = 0.0;  // argmin angle on circle a
    double v = 0.0;  // argmin angle on circle b
    double certified_gap = 0.0;  // true minimum >= distance - certified_gap
};

namespace detail {

/// Squared distance between parametrized circle points and its derivatives.
struct CirclePairEval {
    Vec3 ca, e1a, e2a, cb, e1b, e2b;
    double ra, rb;

    static CirclePairEval make(const Circle3& a, const Circle3& b) {
        CirclePairEval e;
        e.ca = a.center; e.cb = b.center;
        e.ra = a.radius; e.rb = b.radius;
        orthonormal_frame(a.unit_normal, e.e1a, e.e2a);
        orthonormal_frame(b.unit_normal, e.e1b, e.e2b);
        return e;
    }

    Vec3 pa(double u) const { return ca + (e1a * std::cos(u) + e2a * std::sin(u)) * ra; }
    Vec3 pb(double v) const { return cb + (e1b * std::cos(v) + e2b * std::sin(v)) * rb; }

    void gradient_hessian(double u, double v, double g[2], double h[2][2]) const {
        const Vec3 Pa = pa(u), Pb = pb(v);
        const Vec3 dPa = (e2a * std::cos(u) - e1a * std::sin(u)) * ra;
        const Vec3 dPb = (e2b * std::cos(v) - e1b * std::sin(v)) * rb;
        const Vec3 ddPa = (Pa - ca) * -1.0;
        const Vec3 ddPb = (Pb - cb) * -1.0;
        const Vec3 D = Pa - Pb;
        g[0] = 2.0 * D.dot(dPa);
        g[1] = -2.0 * D.dot(dPb);
        h[0][0] = 2.0 * (dPa.dot(dPa) + D.dot(ddPa));
        h[1][1] = 2.0 * (dPb.dot(dPb) - D.dot(ddPb));
        h[0][1] = h[1][0] = -2.0 * dPa.dot(dPb);
    }

    double squared(double u, double v) const { return (pa(u) - pb(v)).norm2(); }
};

inline double wrap_angle(double t) {
    t = std::fmod(t, kTwoPi);
    return t < 0.0 ? t + kTwoPi : t;
}

/// Exact distance between coplanar circles: max(0, D-a-b, |a-b|-D).
inline std::optional<CircleDistanceResult> coplanar_circle_distance(const Circle3& a,
                                                                    const Circle3& b) {
    const double scale = a.radius + b.radius + distance(a.center, b.center);
    if (std::abs(std::abs(a.unit_normal.dot(b.unit_normal)) - 1.0) > 1e-13) return std::nullopt;
    if (std::abs((b.center - a.center).dot(a.unit_normal)) > 1e-13 * scale) return std::nullopt;

    const double D = distance(a.center, b.center);
    CircleDistanceResult r;
    r.distance = std::max({0.0, D - a.radius - b.radius, std::abs(a.radius - b.radius) - D});
    r.certified_gap = 0.0;

    // Recover witness angles from the nearest-point pair.
    Vec3 dir = b.center - a.center;
    if (D < 1e-300) {
        Vec3 e1, e2;
        orthonormal_frame(a.unit_normal, e1, e2);
        dir = e1;
    } else {
        dir = dir / D;
    }
    Vec3 qa, qb;
    if (D >= a.radius + b.radius) {            // facing arcs
        qa = a.center + dir * a.radius;
        qb = b.center - dir * b.radius;
    } else if (std::abs(a.radius - b.radius) - D > 0.0) {  // nested
        const double sign = (a.radius > b.radius) ? 1.0 : -1.0;
        qa = a.center + dir * (sign * a.radius);
        qb = b.center + dir * (sign * b.radius);
    } else {                                   // intersecting: any common point
        qa = a.center + dir * a.radius;
        qb = qa;
    }
    Vec3 e1a, e2a, e1b, e2b;
    orthonormal_frame(a.unit_normal, e1a, e2a);
    orthonormal_frame(b.unit_normal, e1b, e2b);
    r.u = wrap_angle(std::atan2((qa - a.center).dot(e2a), (qa - a.center).dot(e1a)));
    r.v = wrap_angle(std::atan2((qb - b.center).dot(e2b), (qb - b.center).dot(e1b)));
    return r;
}

}  // namespace detail

/// Global minimum distance between two circles.
///
/// The u-angle of circle a is sampled exhaustively (opts.grid_n points); for
/// each sample the v-minimum is the closed-form point-to-circle distance, so
/// the scan dominates the grid_n^2 product grid. Newton iteration on the
/// squared-distance surface then tightens the best sample. The scan value is
/// Lipschitz-certified: the true minimum is above the returned distance minus
/// certified_gap, with gap <= min(ra, rb) * pi / grid_n (the u-circle is
/// chosen as the smaller one). Coplanar pairs short-circuit to the exact
/// radial formula with zero gap.
///
/// Throws NonConvergence when Newton cannot reach the gradient tolerance.
inline CircleDistanceResult circle_circle_distance(const Circle3& a, const Circle3& b,
                                                   const MinimizeOpts& opts = {}) {
    if (auto cop = detail::coplanar_circle_distance(a, b)) return *cop;

    const bool swapped = b.radius < a.radius;
    const Circle3& ua = swapped ? b : a;  // scan circle (smaller radius)
    const Circle3& vb = swapped ? a : b;

    int grid_n = std::max(opts.grid_n, 8);
    const double lipschitz = ua.radius;
    if (opts.certified_gap > 0.0) {
        const int need = static_cast<int>(std::ceil(lipschitz * kPi / opts.certified_gap));
        grid_n = std::max(grid_n, need);
    }

    Vec3 e1, e2;
    orthonormal_frame(ua.unit_normal, e1, e2);

    double best_d = std::numeric_limits<double>::infinity();
    double best_u = 0.0;
    const double step = kTwoPi / grid_n;
    // Incremental rotation avoids grid_n trig pairs.
    const double cs = std::cos(step), sn = std::sin(step);
    double cu = 1.0, su = 0.0;
    for (int i = 0; i < grid_n; ++i) {
        const Vec3 p = ua.center + (e1 * cu + e2 * su) * ua.radius;
        const double d = point_circle_distance(p, vb);
        if (d < best_d) {
            best_d = d;
            best_u = i * step;
        }
        const double cn = cu * cs - su * sn;
        su = cu * sn + su * cs;
        cu = cn;
    }

    // Seed Newton from the best sample and its closed-form partner point.
    auto eval = detail::CirclePairEval::make(ua, vb);
    const Vec3 pa0 = eval.pa(best_u);
    const Vec3 qb = closest_circle_point(pa0, vb);
    Vec3 f1, f2;
    orthonormal_frame(vb.unit_normal, f1, f2);
    double u = best_u;
    double v = std::atan2((qb - vb.center).dot(f2), (qb - vb.center).dot(f1));

    const double scale2 = (ua.radius + vb.radius) * (ua.radius + vb.radius);
    const double gtol = std::max(opts.tol, 1e-16) * scale2;
    double g[2], h[2][2];
    bool converged = false;
    for (int it = 0; it < opts.max_iter; ++it) {
        eval.gradient_hessian(u, v, g, h);
        if (std::hypot(g[0], g[1]) <= gtol) {
            converged = true;
            break;
        }
        double det = h[0][0] * h[1][1] - h[0][1] * h[1][0];
        double du, dv;
        if (std::abs(det) > 1e-300 && h[0][0] > 0.0 && det > 0.0) {
            du = -(h[1][1] * g[0] - h[0][1] * g[1]) / det;
            dv = -(-h[1][0] * g[0] + h[0][0] * g[1]) / det;
        } else {
            // Hessian not PD here: fall back to scaled steepest descent.
            const double gn = std::hypot(g[0], g[1]);
            du = -g[0] / gn * step;
            dv = -g[1] / gn * step;
        }
        // Backtrack so the squared distance never increases.
        double f0 = eval.squared(u, v);
        double lam = 1.0;
        for (int bt = 0; bt < 30; ++bt) {
            if (eval.squared(u + lam * du, v + lam * dv) <= f0) break;
            lam *= 0.5;
        }
        u += lam * du;
        v += lam * dv;
    }
    if (!converged) {
        eval.gradient_hessian(u, v, g, h);
        if (std::hypot(g[0], g[1]) > gtol)
            throw NonConvergence("circle_circle_distance: refinement stalled; raise grid_n");
    }

    CircleDistanceResult r;
    r.distance = std::min(best_d, std::sqrt(eval.squared(u, v)));
    r.u = detail::wrap_angle(u);
    r.v = detail::wrap_angle(v);
    r.certified_gap = lipschitz * kPi / grid_n;
    if (swapped) std::swap(r.u, r.v);
    return r;
}

// ---------------------------------------------------------------------------
// Predicates
// ---------------------------------------------------------------------------

struct DisjointResult {
    bool disjoint = false;
    double margin = 0.0;  // d(C1, C2) - (r1 + r2)
};

/// Solid tori are closed tube neighborhoods of their central circles, so they
/// are disjoint exactly when the circle distance exceeds the tube-radius sum.
inline DisjointResult tori_disjoint(const SolidTorus& t1, const SolidTorus& t2, double tol,
                                    const MinimizeOpts& opts = {}) {
    const auto d = circle_circle_distance(t1.circle, t2.circle, opts);
    DisjointResult r;
    r.margin = d.distance - (t1.tube_radius + t2.tube_radius);
    r.disjoint = r.margin > tol;
    return r;
}

enum class LinkVerdict { Linked, Unlinked, Degenerate };

inline const char* to_string(LinkVerdict v) {
    switch (v) {
        case LinkVerdict::Linked: return "linked";
        case LinkVerdict::Unlinked: return "unlinked";
        default: return "degenerate";
    }
}

struct LinkResult {
    LinkVerdict verdict = LinkVerdict::Degenerate;
    double margin = 0.0;  // distance of crossing points from the boundary circle
};

/// Linking test for round circles via the disk-crossing criterion: circle a
/// meets the plane of b in at most two points; the circles are linked exactly
/// when one of them lies strictly inside the open disk bounded by b.
/// Degenerate demotes boundary cases (crossing near circle b, or a parallel
/// to b's plane while meeting it) — callers must treat those as invalid.
/// Assumes the circles are disjoint point sets. tol < 0 picks
/// kGeoTolRel * (sum of diameters).
inline LinkResult circles_linked(const Circle3& a, const Circle3& b, double tol = -1.0) {
    const double scale = 2.0 * (a.radius + b.radius);
    if (tol < 0.0) tol = kGeoTolRel * scale;

    Vec3 e1, e2;
    orthonormal_frame(a.unit_normal, e1, e2);
    const Vec3 nb = b.unit_normal;
    const double alpha = (a.center - b.center).dot(nb);
    const double beta = a.radius * e1.dot(nb);
    const double gamma = a.radius * e2.dot(nb);
    const double rho = std::hypot(beta, gamma);

    LinkResult res;
    if (rho <= tol) {
        // a is parallel to b's plane
        if (std::abs(alpha) <= std::max(rho, tol)) {
            res.verdict = LinkVerdict::Degenerate;
            res.margin = 0.0;
        } else {
            res.verdict = LinkVerdict::Unlinked;
            res.margin = std::abs(alpha);
        }
        return res;
    }

    const double c = -alpha / rho;
    if (std::abs(c) > 1.0) {  // a stays on one side of the plane
        res.verdict = LinkVerdict::Unlinked;
        res.margin = (std::abs(c) - 1.0) * rho;
        return res;
    }

    const double phi = std::atan2(gamma, beta);
    const double dt = std::acos(std::clamp(c, -1.0, 1.0));
    const std::array<double, 2> ts = {phi + dt, phi - dt};

    int inside = 0;
    double min_boundary_dist = std::numeric_limits<double>::infinity();
    for (double t : ts) {
        const Vec3 p = a.center + (e1 * std::cos(t) + e2 * std::sin(t)) * a.radius;
        const double to_circle = point_circle_distance(p, b);
        min_boundary_dist = std::min(min_boundary_dist, to_circle);
        if (distance(p, b.center) < b.radius) ++inside;
    }
    if (min_boundary_dist <= tol) {
        res.verdict = LinkVerdict::Degenerate;
        res.margin = min_boundary_dist;
        return res;
    }
    res.verdict = (inside == 1) ? LinkVerdict::Linked : LinkVerdict::Unlinked;
    res.margin = min_boundary_dist;
    return res;
}

/// Gauss linking integral over both circles with the periodic trapezoid rule
/// (n_quad^2 nodes). Converges spectrally for disjoint circles; used as an
/// independent oracle for circles_linked, not as the primary predicate.
inline double linking_number_gauss(const Circle3& a, const Circle3& b, int n_quad = 256) {
    Vec3 e1a, e2a, e1b, e2b;
    orthonormal_frame(a.unit_normal, e1a, e2a);
    orthonormal_frame(b.unit_normal, e1b, e2b);

    const double hu = kTwoPi / n_quad;
    std::vector<Vec3> pb(n_quad), db(n_quad);
    for (int j = 0; j < n_quad; ++j) {
        const double v = j * hu;
        pb[j] = b.center + (e1b * std::cos(v) + e2b * std::sin(v)) * b.radius;
        db[j] = (e2b * std::cos(v) - e1b * std::sin(v)) * b.radius;
    }

    double acc = 0.0;
    for (int i = 0; i < n_quad; ++i) {
        const double u = i * hu;
        const Vec3 pa = a.center + (e1a * std::cos(u) + e2a * std::sin(u)) * a.radius;
        const Vec3 da = (e2a * std::cos(u) - e1a * std::sin(u)) * a.radius;
        for (int j = 0; j < n_quad; ++j) {
            const Vec3 d = pa - pb[j];
            const double r2 = d.norm2();
            acc += da.cross(db[j]).dot(d) / (r2 * std::sqrt(r2));
        }
    }
    return acc * hu * hu / (4.0 * kPi);
}

struct ContainResult {
    bool contained = false;
    double margin = 0.0;  // outer tube radius minus worst inner extent
};

/// Containment of one solid torus in another. Exact criterion: inner is inside
/// outer iff every point p of the inner central circle satisfies
/// d(p, outer circle) + inner tube <= outer tube. The circle maximum is
/// sampled at n_samples points and bounded with the 1-Lipschitz arc estimate,
/// so a true verdict certifies containment.
inline ContainResult torus_contains_torus(const SolidTorus& outer, const SolidTorus& inner,
                                          int n_samples = 256, double tol = 0.0) {
    Vec3 e1, e2;
    orthonormal_frame(inner.circle.unit_normal, e1, e2);
    double worst = 0.0;
    const double step = kTwoPi / n_samples;
    const double cs = std::cos(step), sn = std::sin(step);
    double cu = 1.0, su = 0.0;
    for (int i = 0; i < n_samples; ++i) {
        const Vec3 p = inner.circle.center + (e1 * cu + e2 * su) * inner.circle.radius;
        worst = std::max(worst, point_circle_distance(p, outer.circle));
        const double cn = cu * cs - su * sn;
        su = cu * sn + su * cs;
        cu = cn;
    }
    const double arc_slack = inner.circle.radius * kPi / n_samples;
    ContainResult r;
    r.margin = outer.tube_radius - (worst + inner.tube_radius);
    r.contained = (outer.tube_radius - (worst + arc_slack + inner.tube_radius)) > tol;
    return r;
}

/// Point membership in a solid torus (closed).
inline bool torus_contains_point(const SolidTorus& t, const Vec3& p, double slack = 0.0) {
    return point_circle_distance(p, t.circle) <= t.tube_radius + slack;
}

}  // namespace antoine
