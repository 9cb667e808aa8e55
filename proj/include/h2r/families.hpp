#pragma once

// The explicit minimal families: horizontal slices, vertical flats, tall
// rectangles, horizontal catenoids, diagonal ruled surfaces and helicoids,
// together with butterfly boundary curves and the butterfly feasibility
// search.
//
// Tall rectangles are built in a standard frame over the axis (0, inf),
// where the surface is exactly { y = side * F(tau) * x } with
// F = f^{-1} evaluated at tau = distance of t into the height interval,
// then moved by the Moebius map sending (0, inf) to the requested axis.
// That map preserves the sinh-distance coordinate including its sign, so
// `side` selects which of the two boundary arcs the surface hangs over.

#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <utility>

#include "h2r/boundary_curves.hpp"
#include "h2r/errors.hpp"
#include "h2r/geometry.hpp"
#include "h2r/mesh.hpp"
#include "h2r/profiles.hpp"

namespace h2r {

namespace detail {

// Moebius map sending the standard axis (0, inf) to `axis`, preserving the
// sign of the sinh-distance coordinate.
inline Isometry frame_map(const GeodesicH2& axis) {
    if (axis.is_vertical()) return Isometry(1.0, axis.a.value, 0.0, 1.0);
    return Isometry(axis.b.value, axis.a.value, 1.0, 1.0);
}

} // namespace detail

// ---------------------------------------------------------------------------
// Tall rectangles

struct TallRectangle {
    TallRectangleProfile profile;
    GeodesicH2 axis{IdealPoint(0.0), IdealPoint::infinity()};
    int side = +1;  // sign of the sinh-distance coordinate on the surface side
    double a = 0, b = 0;  // height interval; b may be +inf (then profile.C == 1)

    bool semi_infinite() const { return std::isinf(b); }
    double height() const { return b - a; }

    // the boundary arc c of the ideal circle the rectangle hangs over
    BoundaryArc arc() const {
        if (side > 0) return BoundaryArc::between(axis.a, axis.b);
        return BoundaryArc::between(axis.b, axis.a);
    }

    // distance into the height interval, symmetric for finite rectangles
    double tau(double t) const {
        if (!(t > a) || !(t < b)) throw OutOfRange("t outside the open height interval");
        return semi_infinite() ? t - a : std::min(t - a, b - t);
    }

    // surface point in the standard frame mapped to the ambient space;
    // xi parametrizes the equidistant slice curve (x = e^xi)
    AmbientPoint point(double t, double xi) const {
        const double F = profile.f_inverse(tau(t));
        const double x = std::exp(xi);
        return detail::frame_map(axis).apply(AmbientPoint(x, side * F * x, t));
    }
};

inline TallRectangle make_tall_rectangle(const GeodesicH2& axis, int side, double a, double b,
                                         double quad_tol = 1e-10) {
    if (!(b > a)) throw InvalidParams("tall rectangle needs a < b");
    if (side != +1 && side != -1) throw InvalidParams("side must be +1 or -1");
    TallRectangle tr;
    tr.axis = axis;
    tr.side = side;
    tr.a = a;
    tr.b = b;
    if (std::isinf(b)) {
        if (std::isinf(a)) throw InvalidParams("doubly infinite rectangle is the flat itself");
        tr.profile = tall_profile(1.0, quad_tol);
    } else {
        if (!(b - a > kPi))
            throw DomainError("tall rectangles exist only for height greater than pi");
        tr.profile = tall_profile(tall_constant_for_height(b - a, quad_tol), quad_tol);
    }
    return tr;
}

// Distance from the axis geodesic to the slice curve at height t; diverges
// at the ends of the height interval, minimal at the midpoint.
inline double rho_profile(const TallRectangle& tr, double t) {
    return std::asinh(tr.profile.f_inverse(tr.tau(t)));
}

// Product boundary trace of the rectangle.
inline PiecewiseBoundaryCurve tall_rectangle_boundary(const TallRectangle& tr) {
    PiecewiseBoundaryCurve curve;
    const IdealPoint q1 = tr.axis.a, q2 = tr.axis.b;
    if (tr.semi_infinite()) {
        curve.segments = {
            VerticalSegment{q1, tr.a, kInf},
            CapGeodesic{+1, tr.axis},
            VerticalSegment{q2, tr.a, kInf},
            HorizontalArc{tr.arc(), tr.a},
        };
    } else {
        curve.segments = {
            VerticalSegment{q1, tr.a, tr.b},
            HorizontalArc{tr.arc(), tr.b},
            VerticalSegment{q2, tr.a, tr.b},
            HorizontalArc{tr.arc(), tr.a},
        };
    }
    curve.validate();
    return curve;
}

inline SurfaceMesh build_mesh(const TallRectangle& tr, int nu, int nv, double xi_range = 3.0,
                              double t_margin_frac = 1e-3) {
    const double margin =
        tr.semi_infinite() ? 1e-3 : std::max(1e-6, t_margin_frac * tr.height());
    const double t_lo = tr.a + margin;
    const double t_hi = tr.semi_infinite() ? tr.a + 30.0 : tr.b - margin;
    const Isometry map = detail::frame_map(tr.axis);
    std::map<double, double> slice;  // t -> F, one profile inversion per row
    return mesh_from_patch(
        [&, slice](double t, double xi) mutable {
            auto it = slice.find(t);
            if (it == slice.end())
                it = slice.emplace(t, tr.profile.f_inverse(tr.tau(t))).first;
            const double x = std::exp(xi);
            return map.apply(AmbientPoint(x, tr.side * it->second * x, t));
        },
        t_lo, t_hi, -xi_range, xi_range, nu, nv,
        "tall-rectangle C=" + std::to_string(tr.profile.C));
}

// ---------------------------------------------------------------------------
// Horizontal slices and vertical flats

struct HorizontalSlice {
    double t = 0.0;
    HPoint center = HPoint(1, 0);
    double radius = 6.0;  // geodesic polar radius of the mesh
};

inline SurfaceMesh build_mesh(const HorizontalSlice& slice, int nu, int nv) {
    const Isometry recenter(slice.center.x, slice.center.y, 0.0, 1.0);
    return mesh_from_patch(
        [&](double r, double phi) {
            return recenter.apply(AmbientPoint(polar_point(r + 1e-9, phi), slice.t));
        },
        0.0, slice.radius, -kPi, kPi, nu, nv, "horizontal-slice t=" + std::to_string(slice.t));
}

struct VerticalFlat {
    GeodesicH2 axis;
    double arc_half_length = 6.0;  // arclength along the axis
    double t_lo = -6.0, t_hi = 6.0;
};

inline SurfaceMesh build_mesh(const VerticalFlat& flat, int nu, int nv) {
    const Isometry map = detail::frame_map(flat.axis);
    return mesh_from_patch(
        [&](double lambda, double t) { return map.apply(AmbientPoint(std::exp(lambda), 0.0, t)); },
        -flat.arc_half_length, flat.arc_half_length, flat.t_lo, flat.t_hi, nu, nv,
        "vertical-flat");
}

// ---------------------------------------------------------------------------
// Horizontal catenoids

struct CatenoidSurface {
    CatenoidProfile profile;
    HPoint axis_point = HPoint(1, 0);  // rotation axis {p} x R
    double t_center = 0.0;

    // radius fraction in (0,1) controls how far toward the ideal boundary
    // the mesh extends (r from r_neck to r_neck + frac * (1 - r_neck))
    AmbientPoint point(double t, double theta) const {
        const double r = profile.r_of_t(t - t_center);
        const DiskPoint w{r * std::cos(theta), r * std::sin(theta)};
        const HPoint std_frame = halfplane_from_disk(w);
        const Isometry recenter(axis_point.x, axis_point.y, 0.0, 1.0);
        return recenter.apply(AmbientPoint(std_frame, t));
    }
};

inline SurfaceMesh build_mesh(const CatenoidSurface& cat, int nu, int nv,
                              double t_margin_frac = 1e-2) {
    const double b = cat.profile.half_height;
    const double margin = std::max(1e-6, t_margin_frac * b);
    const Isometry recenter(cat.axis_point.x, cat.axis_point.y, 0.0, 1.0);
    std::map<double, double> ring;  // t -> r, one profile inversion per row
    return mesh_from_patch(
        [&, ring](double t, double theta) mutable {
            auto it = ring.find(t);
            if (it == ring.end()) it = ring.emplace(t, cat.profile.r_of_t(t - cat.t_center)).first;
            const DiskPoint w{it->second * std::cos(theta), it->second * std::sin(theta)};
            return recenter.apply(AmbientPoint(halfplane_from_disk(w), t));
        },
        cat.t_center - b + margin, cat.t_center + b - margin, -kPi, kPi, nu, nv,
        "catenoid C=" + std::to_string(cat.profile.C));
}

// ---------------------------------------------------------------------------
// Ruled surfaces: diagonal translation orbits and helicoids

struct RuledSurface {
    enum class Kind { diagonal, helicoid };
    Kind kind = Kind::diagonal;
    // diagonal: orbit of the geodesic orthogonal to `axis` at the frame
    // origin under translation along the axis composed with a vertical
    // shift of `slope` per unit translation length
    GeodesicH2 axis{IdealPoint(0.0), IdealPoint::infinity()};
    double slope = 1.0;
    // helicoid: orbit of a horizontal geodesic through {center} x {0}
    // under rotation composed with `pitch` vertical shift per radian
    HPoint center = HPoint(1, 0);
    double pitch = 1.0;

    AmbientPoint point(double u, double v) const {
        if (kind == Kind::diagonal) {
            // u = translation parameter, v = arclength along the ruling
            const double tau = u, lam = v;
            const double e = std::exp(tau);
            const HPoint base(e / std::cosh(lam), e * std::tanh(lam));
            return detail::frame_map(axis).apply(AmbientPoint(base, slope * tau));
        }
        // u = rotation angle, v = signed arclength along the ruling line
        const double rho = std::tanh(0.5 * v);
        const DiskPoint w{rho * std::cos(u), rho * std::sin(u)};
        const Isometry recenter(center.x, center.y, 0.0, 1.0);
        return recenter.apply(AmbientPoint(halfplane_from_disk(w), pitch * u));
    }
};

inline SurfaceMesh build_mesh(const RuledSurface& rs, int nu, int nv, double u_range,
                              double v_range) {
    const char* name = rs.kind == RuledSurface::Kind::diagonal ? "ruled-diagonal" : "helicoid";
    return mesh_from_patch([&](double u, double v) { return rs.point(u, v); }, -u_range,
                           u_range, -v_range, v_range, nu, nv, name);
}

// ---------------------------------------------------------------------------
// Butterfly curves

struct ButterflyParams {
    double ell;  // in (0, pi)
    double L;    // > pi
    double a, b;
    IdealPoint q1, q2, q3, q4;  // cyclically ordered

    void validate() const {
        if (!(ell > 0) || !(ell < kPi)) throw InvalidParams("butterfly needs ell in (0, pi)");
        if (!(L > kPi)) throw InvalidParams("butterfly needs L > pi");
        if (!(a < b)) throw InvalidParams("butterfly needs a < b");
        if (!(b + ell < a + L)) throw InvalidParams("butterfly needs b + ell < a + L");
        const double base = ideal_angle(q1);
        auto rel = [&](const IdealPoint& q) {
            double d = std::fmod(ideal_angle(q) - base, 2.0 * kPi);
            if (d < 0) d += 2.0 * kPi;
            return d;
        };
        const double d2 = rel(q2), d3 = rel(q3), d4 = rel(q4);
        if (!(d2 > 0 && d2 < d3 && d3 < d4))
            throw InvalidParams("butterfly q1..q4 must be cyclically ordered");
    }
};

// The 12-segment closed butterfly curve: full-height verticals at q1, q4,
// four arcs at heights a and a+L, the four short verticals at q2, q3, and
// the two arcs at heights b and b+ell.
inline PiecewiseBoundaryCurve butterfly_curve(const ButterflyParams& p) {
    p.validate();
    PiecewiseBoundaryCurve curve;
    curve.segments = {
        VerticalSegment{p.q1, p.a, p.a + p.L},
        HorizontalArc{BoundaryArc::between(p.q1, p.q2), p.a + p.L},
        VerticalSegment{p.q2, p.b + p.ell, p.a + p.L},
        HorizontalArc{BoundaryArc::between(p.q2, p.q3), p.b + p.ell},
        VerticalSegment{p.q3, p.b + p.ell, p.a + p.L},
        HorizontalArc{BoundaryArc::between(p.q3, p.q4), p.a + p.L},
        VerticalSegment{p.q4, p.a, p.a + p.L},
        HorizontalArc{BoundaryArc::between(p.q3, p.q4), p.a},
        VerticalSegment{p.q3, p.a, p.b},
        HorizontalArc{BoundaryArc::between(p.q2, p.q3), p.b},
        VerticalSegment{p.q2, p.a, p.b},
        HorizontalArc{BoundaryArc::between(p.q1, p.q2), p.a},
    };
    curve.validate();
    return curve;
}

// ---------------------------------------------------------------------------
// Butterfly feasibility

struct ButterflyFeasibility {
    double L;            // minimal feasible L estimate
    double disk_diameter;  // d(ell): diameter of the catenoid's complement disk
    double geodesic_distance;  // dist between the geodesics q1q2 and q3q4
    double margin;             // d(ell) - dist
    double waist_distance;     // r(L) = distance of the height-L rectangle to its flat
    double catenoid_C;
    double tall_C;
};

// Search for an L > pi such that a height-L tall-rectangle pair hugging the
// flats of q1q2 and q3q4 fits inside the complement disk of the height-ell
// catenoid: the criterion is 2 r(L) < safety * (d(ell) - dist), with a
// safety factor below 1 because the comparison is a numerical witness, not
// a certified bound.
inline std::optional<ButterflyFeasibility> butterfly_feasibility(
    double ell, const IdealPoint& q1, const IdealPoint& q2, const IdealPoint& q3,
    const IdealPoint& q4, double safety = 0.9, double quad_tol = 1e-9) {
    if (!(ell > 0) || !(ell < kPi)) throw DomainError("butterfly needs ell in (0, pi)");
    const double cat_C = catenoid_constant_for_height(ell, quad_tol);
    const double r_neck = catenoid_profile(cat_C, quad_tol).r_neck;
    const double d_ell = 4.0 * std::atanh(r_neck);
    const double dist = dist_geodesics(GeodesicH2(q1, q2), GeodesicH2(q3, q4));
    const double margin = d_ell - dist;
    if (!(margin > 0)) return std::nullopt;

    const double target = 0.5 * safety * margin;
    auto waist = [&](double L) {
        const double C = tall_constant_for_height(L, quad_tol);
        return std::asinh(std::sqrt((1.0 - C) / C));
    };
    double lo = kPi, hi = kPi + 0.5;
    while (waist(hi) >= target) {
        lo = hi;
        hi = kPi + 2.0 * (hi - kPi);
        if (hi > 1e4) throw NumericalError("butterfly feasibility search did not close");
    }
    for (int it = 0; it < 40; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (waist(mid) < target)
            hi = mid;
        else
            lo = mid;
    }
    ButterflyFeasibility out;
    out.L = hi;
    out.disk_diameter = d_ell;
    out.geodesic_distance = dist;
    out.margin = margin;
    out.waist_distance = waist(hi);
    out.catenoid_C = cat_C;
    out.tall_C = tall_constant_for_height(hi, quad_tol);
    return out;
}

} // namespace h2r
