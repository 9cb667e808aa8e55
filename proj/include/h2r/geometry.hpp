#pragma once

// Hyperbolic half-plane and H^2 x R geometry kernel.
//
// The half-plane model lives in coordinates (x, y) with x > 0 and metric
// (dx^2 + dy^2)/x^2; the ideal boundary is the line {x = 0} plus the point
// at infinity. Ambient points carry an extra Euclidean coordinate t, so the
// product metric is (dx^2 + dy^2)/x^2 + dt^2.
//
// For boundary bookkeeping we identify the ideal circle with angles through
// the Cayley map w = (z - i)/(z + i), z = y + i x, which sends the base
// point (1, 0) to the disk origin. A finite ideal point y maps to angle
// atan2(-2y, y^2 - 1) and the point at infinity to angle 0.

#include <cmath>
#include <limits>
#include <utility>

#include "h2r/errors.hpp"

namespace h2r {

inline constexpr double kGeomTol = 1e-10;
inline constexpr double kPi = 3.14159265358979323846;

inline double sq(double v) { return v * v; }

// acosh(1 + q) without cancellation for small q and without forming 1 + q
// for huge q.
inline double acosh1p(double q) {
    if (q <= 0) return 0.0;
    return std::log1p(q + std::sqrt(q * (q + 2.0)));
}

// ---------------------------------------------------------------------------
// Points

struct HPoint {
    double x;
    double y;

    HPoint(double x_, double y_) : x(x_), y(y_) {
        if (!(x > 0) || !std::isfinite(x) || !std::isfinite(y))
            throw ValidationError("HPoint requires finite coordinates with x > 0");
    }
};

struct AmbientPoint {
    HPoint base;
    double t;

    AmbientPoint(HPoint base_, double t_) : base(base_), t(t_) {
        if (!std::isfinite(t))
            throw ValidationError("AmbientPoint requires finite t");
    }
    AmbientPoint(double x_, double y_, double t_) : AmbientPoint(HPoint(x_, y_), t_) {}
};

inline double dist_h2(const HPoint& p, const HPoint& q) {
    const double d2 = sq(p.x - q.x) + sq(p.y - q.y);
    return acosh1p(d2 / (2.0 * p.x * q.x));
}

inline double dist_ambient(const AmbientPoint& p, const AmbientPoint& q) {
    return std::hypot(dist_h2(p.base, q.base), p.t - q.t);
}

// Signed equidistant coordinate for the unit half-circle geodesic joining
// the ideal points y = -1 and y = +1. Level sets are the equidistant
// curves; the value equals sinh of the signed distance to the geodesic
// (positive on the side of the arc |y| < 1).
inline double equidistant_coordinate(const HPoint& p) {
    return (1.0 - (sq(p.x) + sq(p.y))) / (2.0 * p.x);
}

// ---------------------------------------------------------------------------
// Ideal boundary

struct IdealPoint {
    double value = 0.0;
    bool at_infinity = false;

    IdealPoint() = default;
    explicit IdealPoint(double v) : value(v) {
        if (!std::isfinite(v)) throw ValidationError("finite IdealPoint requires finite value");
    }
    static IdealPoint infinity() {
        IdealPoint q;
        q.at_infinity = true;
        return q;
    }

    friend bool operator==(const IdealPoint& a, const IdealPoint& b) {
        if (a.at_infinity || b.at_infinity) return a.at_infinity == b.at_infinity;
        return a.value == b.value;
    }
};

inline bool ideal_close(const IdealPoint& a, const IdealPoint& b, double tol = kGeomTol) {
    if (a.at_infinity || b.at_infinity) return a.at_infinity == b.at_infinity;
    return std::abs(a.value - b.value) <= tol * std::max({1.0, std::abs(a.value), std::abs(b.value)});
}

// Circle angle of an ideal point under the Cayley identification; range
// (-pi, pi], with infinity at angle 0. Monotone increasing in y.
inline double ideal_angle(const IdealPoint& q) {
    if (q.at_infinity) return 0.0;
    // +0.0 normalizes the signed zero so that y = 0 lands on +pi
    return std::atan2(-2.0 * q.value + 0.0, sq(q.value) - 1.0);
}

inline IdealPoint ideal_from_angle(double angle) {
    const double s = std::sin(angle / 2.0);
    if (std::abs(s) < 1e-15) return IdealPoint::infinity();
    return IdealPoint(-std::cos(angle / 2.0) / s);
}

// Arc of the ideal circle: start angle plus a counterclockwise extent.
// Counterclockwise corresponds to increasing y (with infinity at angle 0).
struct BoundaryArc {
    double start;   // radians, (-pi, pi]
    double extent;  // radians, (0, 2*pi]

    static BoundaryArc full_circle() { return BoundaryArc{-kPi, 2.0 * kPi}; }

    static BoundaryArc between(const IdealPoint& from, const IdealPoint& to) {
        const double a = ideal_angle(from);
        double e = std::fmod(ideal_angle(to) - a, 2.0 * kPi);
        if (e <= 0) e += 2.0 * kPi;
        return BoundaryArc{a, e};
    }

    bool contains_angle(double angle, double tol = 1e-12) const {
        double d = std::fmod(angle - start, 2.0 * kPi);
        if (d < 0) d += 2.0 * kPi;
        return d <= extent + tol || d >= 2.0 * kPi - tol;
    }
    bool contains(const IdealPoint& q, double tol = 1e-12) const {
        return contains_angle(ideal_angle(q), tol);
    }
    IdealPoint first() const { return ideal_from_angle(start); }
    IdealPoint second() const { return ideal_from_angle(start + extent); }
    bool is_full_circle(double tol = 1e-12) const { return extent >= 2.0 * kPi - tol; }
};

// ---------------------------------------------------------------------------
// Geodesics

struct GeodesicH2 {
    // Endpoints in canonical order: finite values ascending, infinity last.
    IdealPoint a;
    IdealPoint b;

    GeodesicH2(IdealPoint p, IdealPoint q) : a(p), b(q) {
        if (p == q) throw CoincidentPoints("geodesic endpoints coincide");
        if (a.at_infinity || (!b.at_infinity && b.value < a.value)) std::swap(a, b);
    }

    friend bool operator==(const GeodesicH2& g, const GeodesicH2& h) {
        return g.a == h.a && g.b == h.b;
    }

    bool is_vertical() const { return b.at_infinity; }
};

inline GeodesicH2 geodesic_through(const HPoint& p, const HPoint& q) {
    const double scale = std::max({1.0, std::abs(p.y), std::abs(q.y), p.x, q.x});
    if (std::abs(p.x - q.x) < 1e-14 * scale && std::abs(p.y - q.y) < 1e-14 * scale)
        throw CoincidentPoints("geodesic_through needs distinct points");
    if (std::abs(p.y - q.y) < 1e-14 * scale)
        return GeodesicH2(IdealPoint(p.y), IdealPoint::infinity());
    // Half-circle centered on the boundary: equate Euclidean distances to
    // the center (y_c, 0).
    const double yc = (sq(p.x) + sq(p.y) - sq(q.x) - sq(q.y)) / (2.0 * (p.y - q.y));
    const double r = std::hypot(p.x, p.y - yc);
    return GeodesicH2(IdealPoint(yc - r), IdealPoint(yc + r));
}

// sinh of the signed distance from p to g. For a vertical geodesic {y = y0}
// the value is (y - y0)/x; for a half-circle of center m and radius r it is
// (r^2 - |p - m|^2)/(2 r x), positive on the inside of the circle.
inline double signed_sinh_distance(const GeodesicH2& g, const HPoint& p) {
    if (g.is_vertical()) return (p.y - g.a.value) / p.x;
    const double m = 0.5 * (g.a.value + g.b.value);
    const double r = 0.5 * (g.b.value - g.a.value);
    return (sq(r) - (sq(p.y - m) + sq(p.x))) / (2.0 * r * p.x);
}

inline double dist_to_geodesic(const GeodesicH2& g, const HPoint& p) {
    return std::asinh(std::abs(signed_sinh_distance(g, p)));
}

// Distance between two geodesics; zero if they cross or share an endpoint.
inline double dist_geodesics(const GeodesicH2& g, const GeodesicH2& h) {
    if (g.a == h.a || g.a == h.b || g.b == h.a || g.b == h.b) return 0.0;
    // Send g to (0, infinity) by a Moebius map and read off the images of
    // h's endpoints.
    double c, d;
    if (g.b.at_infinity) {
        const double a0 = g.a.value;
        c = h.a.at_infinity ? std::numeric_limits<double>::infinity() : h.a.value - a0;
        d = h.b.at_infinity ? std::numeric_limits<double>::infinity() : h.b.value - a0;
    } else {
        auto map = [&](const IdealPoint& q) {
            if (q.at_infinity) return 1.0;
            return (q.value - g.a.value) / (q.value - g.b.value);
        };
        c = map(h.a);
        d = map(h.b);
    }
    if ((c < 0) != (d < 0)) return 0.0;  // interlaced endpoints: crossing
    const double cosh_d = std::abs(c + d) / std::abs(c - d);
    return acosh1p(std::max(0.0, cosh_d - 1.0));
}

// ---------------------------------------------------------------------------
// Disk model conversion (Cayley map based at (1, 0))

struct DiskPoint {
    double u;
    double v;
};

inline DiskPoint disk_from_halfplane(const HPoint& p) {
    const double den = sq(p.y) + sq(p.x + 1.0);
    return DiskPoint{(sq(p.x) + sq(p.y) - 1.0) / den, -2.0 * p.y / den};
}

inline HPoint halfplane_from_disk(const DiskPoint& w) {
    const double den = sq(1.0 - w.u) + sq(w.v);
    const double x = (1.0 - sq(w.u) - sq(w.v)) / den;
    const double y = -2.0 * w.v / den;
    return HPoint(x, y);
}

inline double dist_disk(const DiskPoint& a, const DiskPoint& b) {
    const double nu = sq(a.u - b.u) + sq(a.v - b.v);
    const double dd = sq(1.0 - (a.u * b.u + a.v * b.v)) + sq(a.u * b.v - a.v * b.u);
    return 2.0 * std::atanh(std::sqrt(nu / dd));
}

// Point at geodesic polar coordinates (r, phi) about the base point (1, 0).
// phi = 0 heads toward the ideal point at infinity, phi = pi toward y ... 0,
// and phi = -pi/2 toward y = +1. Written to stay accurate for large r,
// where tanh(r/2) rounds to 1.
inline HPoint polar_point(double r, double phi) {
    const double e = std::exp(-r);
    const double u = 2.0 * e / (1.0 + e);          // 1 - tanh(r/2)
    const double rho = 1.0 - u;
    const double s = std::sin(0.5 * phi);
    const double den = sq(u) + 4.0 * rho * sq(s);
    const double x = u * (2.0 - u) / den;
    const double y = -2.0 * rho * std::sin(phi) / den;
    return HPoint(x, y);
}

// Direction angle (the disk-model angle of the ideal endpoint of the ray
// from (1,0) through p). For far points this is the boundary angle of the
// limiting ideal point.
inline double direction_angle(const HPoint& p) {
    const DiskPoint w = disk_from_halfplane(p);
    return std::atan2(w.v, w.u);
}

// ---------------------------------------------------------------------------
// Isometries

// Orientation-preserving isometry of H^2 x R: a Moebius transformation of
// the half-plane (real 2x2 matrix, det +1) together with an optional flip
// t -> -t followed by a vertical shift.
struct Isometry {
    double m[2][2] = {{1.0, 0.0}, {0.0, 1.0}};
    double vertical_shift = 0.0;
    bool vertical_flip = false;

    Isometry() = default;
    Isometry(double a, double b, double c, double d, double shift = 0.0, bool flip = false)
        : vertical_shift(shift), vertical_flip(flip) {
        const double det = a * d - b * c;
        if (!(det > 0) || !std::isfinite(det))
            throw ValidationError("Moebius part must have positive determinant");
        const double s = std::sqrt(det);
        m[0][0] = a / s;
        m[0][1] = b / s;
        m[1][0] = c / s;
        m[1][1] = d / s;
    }

    static Isometry identity() { return Isometry(); }

    static Isometry vertical_translation(double c) { return Isometry(1, 0, 0, 1, c, false); }

    static Isometry flip_t() { return Isometry(1, 0, 0, 1, 0.0, true); }

    // Translation of length `len` along the axis, toward the canonically
    // second endpoint (the larger finite value, or infinity).
    static Isometry hyperbolic_translation(const GeodesicH2& axis, double len) {
        const double el = std::exp(0.5 * len);
        if (axis.is_vertical()) {
            const double p = axis.a.value;
            // z -> p + e^len (z - p)
            return Isometry(el, p * (1.0 / el - el), 0.0, 1.0 / el);
        }
        const double p = axis.a.value, q = axis.b.value;
        // S = [[q, p], [1, 1]] sends (0, inf) to (p, q); conjugate the
        // standard dilation by S.
        const double a = q * el - p / el;
        const double b = p * q * (1.0 / el - el);
        const double c = el - 1.0 / el;
        const double d = q / el - p * el;
        return Isometry(a, b, c, d);
    }

    static Isometry rotation(const HPoint& center, double angle) {
        const double co = std::cos(0.5 * angle), si = std::sin(0.5 * angle);
        const double x0 = center.x, y0 = center.y;
        // Conjugate the elliptic rotation fixing i by the map z -> x0 z + y0.
        const double a = co - y0 * si / x0;
        const double b = si * (x0 + sq(y0) / x0);
        const double c = -si / x0;
        const double d = co + y0 * si / x0;
        return Isometry(a, b, c, d);
    }

    static Isometry screw(const GeodesicH2& axis, double len, double shift) {
        Isometry iso = hyperbolic_translation(axis, len);
        iso.vertical_shift = shift;
        return iso;
    }

    HPoint apply(const HPoint& p) const {
        const double a = m[0][0], b = m[0][1], c = m[1][0], d = m[1][1];
        const double den = sq(c * p.y + d) + sq(c * p.x);
        const double x = p.x / den;
        const double y = (a * c * (sq(p.x) + sq(p.y)) + (a * d + b * c) * p.y + b * d) / den;
        return HPoint(x, y);
    }

    AmbientPoint apply(const AmbientPoint& p) const {
        const double t = (vertical_flip ? -p.t : p.t) + vertical_shift;
        return AmbientPoint(apply(p.base), t);
    }

    IdealPoint apply(const IdealPoint& q) const {
        const double a = m[0][0], b = m[0][1], c = m[1][0], d = m[1][1];
        if (q.at_infinity) {
            if (std::abs(c) < 1e-300) return IdealPoint::infinity();
            return IdealPoint(a / c);
        }
        const double den = c * q.value + d;
        if (std::abs(den) < 1e-12 * std::max(1.0, std::abs(c * q.value)))
            return IdealPoint::infinity();
        return IdealPoint((a * q.value + b) / den);
    }

    GeodesicH2 apply(const GeodesicH2& g) const { return GeodesicH2(apply(g.a), apply(g.b)); }

    // this o other (apply `other` first).
    Isometry compose(const Isometry& other) const {
        Isometry r;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                r.m[i][j] = m[i][0] * other.m[0][j] + m[i][1] * other.m[1][j];
        const double s2 = vertical_flip ? -1.0 : 1.0;
        r.vertical_flip = vertical_flip != other.vertical_flip;
        r.vertical_shift = s2 * other.vertical_shift + vertical_shift;
        return r;
    }
};

inline AmbientPoint apply_isometry(const Isometry& iso, const AmbientPoint& p) {
    return iso.apply(p);
}

} // namespace h2r
