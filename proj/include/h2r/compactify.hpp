#pragma once

// The two asymptotic boundaries of H^2 x R and the correspondence between
// them.
//
// Product boundary: vertical cylinder (ideal point, height), two caps
// (interior point at t = +/-inf), and two corner circles. Geodesic
// boundary: equator (horizontal directions), two poles (vertical
// directions), and for each (ideal point, sign) a Weyl chamber of diagonal
// directions parametrized by the slope rho = vertical speed / horizontal
// speed in (0, inf).
//
// Discrete samples are classified by the slope statistics of their tail:
// the reported slope is the least-squares slope of t against the
// horizontal distance from the basepoint, which is insensitive to the
// basepoint choice (ratios (t_k - t_0)/d_k drift by O(1/d) under a
// basepoint change; the fitted slope does not).

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <variant>
#include <vector>

#include <json.hpp>

#include "h2r/errors.hpp"
#include "h2r/geometry.hpp"

namespace h2r {

// ---------------------------------------------------------------------------
// Boundary points

struct VerticalCylinderPoint {
    IdealPoint theta;
    double t;
};
struct CapPoint {
    int sign;  // +1 upper cap, -1 lower cap
    HPoint p;
};
struct CornerPoint {
    IdealPoint theta;
    int sign;
};
using ProductBoundaryPoint = std::variant<VerticalCylinderPoint, CapPoint, CornerPoint>;

struct EquatorPoint {
    IdealPoint theta;
};
struct PolePoint {
    int sign;
};
struct ChamberPoint {
    IdealPoint theta;
    int sign;
    double slope;  // in (0, inf)
};
using GeodesicBoundaryPoint = std::variant<EquatorPoint, PolePoint, ChamberPoint>;

// ---------------------------------------------------------------------------
// Boundary regions (images of single points under the correspondence)

// Closed subset of the Weyl chamber closure over (theta, sign): slopes in
// [slope_lo, slope_hi] with slope_lo = 0 meaning the equator point is
// included and slope_hi = inf meaning the pole is included.
struct ChamberClosure {
    IdealPoint theta;
    int sign;
    double slope_lo = 0.0;
    double slope_hi = std::numeric_limits<double>::infinity();

    bool contains(const GeodesicBoundaryPoint& q, double tol = kGeomTol) const {
        if (const auto* e = std::get_if<EquatorPoint>(&q))
            return slope_lo <= tol && ideal_close(e->theta, theta, tol);
        if (const auto* p = std::get_if<PolePoint>(&q))
            return std::isinf(slope_hi) && p->sign == sign;
        const auto& c = std::get<ChamberPoint>(q);
        return c.sign == sign && ideal_close(c.theta, theta, tol) &&
               c.slope >= slope_lo - tol && c.slope <= slope_hi + tol;
    }
};
using GeodesicBoundaryRegion = std::variant<GeodesicBoundaryPoint, ChamberClosure>;

// Regions are closed: the blown-up vertical line contains its two corner
// endpoints, and the blown-up cap contains the corner circle of its sign.
struct CylinderLine {
    IdealPoint theta;  // closure of {theta} x R
};
struct CapRegion {
    int sign;  // closure of the cap
};
using ProductBoundaryRegion = std::variant<ProductBoundaryPoint, CylinderLine, CapRegion>;

inline bool region_contains(const GeodesicBoundaryRegion& r, const GeodesicBoundaryPoint& q,
                            double tol = kGeomTol) {
    if (const auto* cc = std::get_if<ChamberClosure>(&r)) return cc->contains(q, tol);
    const auto& pt = std::get<GeodesicBoundaryPoint>(r);
    if (pt.index() != q.index()) return false;
    if (const auto* e = std::get_if<EquatorPoint>(&pt))
        return ideal_close(e->theta, std::get<EquatorPoint>(q).theta, tol);
    if (const auto* p = std::get_if<PolePoint>(&pt)) return p->sign == std::get<PolePoint>(q).sign;
    const auto& a = std::get<ChamberPoint>(pt);
    const auto& b = std::get<ChamberPoint>(q);
    return a.sign == b.sign && ideal_close(a.theta, b.theta, tol) &&
           std::abs(a.slope - b.slope) <= tol;
}

inline bool region_contains(const ProductBoundaryRegion& r, const ProductBoundaryPoint& q,
                            double tol = kGeomTol) {
    if (const auto* line = std::get_if<CylinderLine>(&r)) {
        if (const auto* v = std::get_if<VerticalCylinderPoint>(&q))
            return ideal_close(line->theta, v->theta, tol);
        if (const auto* k = std::get_if<CornerPoint>(&q))
            return ideal_close(line->theta, k->theta, tol);
        return false;
    }
    if (const auto* capr = std::get_if<CapRegion>(&r)) {
        if (const auto* c = std::get_if<CapPoint>(&q)) return c->sign == capr->sign;
        if (const auto* k = std::get_if<CornerPoint>(&q)) return k->sign == capr->sign;
        return false;
    }
    const auto& pt = std::get<ProductBoundaryPoint>(r);
    if (pt.index() != q.index()) return false;
    if (const auto* v = std::get_if<VerticalCylinderPoint>(&pt)) {
        const auto& w = std::get<VerticalCylinderPoint>(q);
        return ideal_close(v->theta, w.theta, tol) && std::abs(v->t - w.t) <= tol;
    }
    if (const auto* c = std::get_if<CapPoint>(&pt)) {
        const auto& d = std::get<CapPoint>(q);
        return c->sign == d.sign && dist_h2(c->p, d.p) <= tol;
    }
    const auto& a = std::get<CornerPoint>(pt);
    const auto& b = std::get<CornerPoint>(q);
    return a.sign == b.sign && ideal_close(a.theta, b.theta, tol);
}

// ---------------------------------------------------------------------------
// Correspondence

// Blow down the cylinder to the equator and the caps to the poles; blow up
// each corner point into the full closed Weyl chamber.
inline GeodesicBoundaryRegion product_to_geodesic(const ProductBoundaryPoint& b) {
    if (const auto* v = std::get_if<VerticalCylinderPoint>(&b))
        return GeodesicBoundaryPoint(EquatorPoint{v->theta});
    if (const auto* c = std::get_if<CapPoint>(&b))
        return GeodesicBoundaryPoint(PolePoint{c->sign});
    const auto& corner = std::get<CornerPoint>(b);
    return ChamberClosure{corner.theta, corner.sign, 0.0,
                          std::numeric_limits<double>::infinity()};
}

// Blow up the equator into vertical lines and the poles into the caps;
// blow down chamber interiors to the corner points.
inline ProductBoundaryRegion geodesic_to_product(const GeodesicBoundaryPoint& b) {
    if (const auto* e = std::get_if<EquatorPoint>(&b)) return CylinderLine{e->theta};
    if (const auto* p = std::get_if<PolePoint>(&b)) return CapRegion{p->sign};
    const auto& c = std::get<ChamberPoint>(b);
    return ProductBoundaryPoint(CornerPoint{c.theta, c.sign});
}

// ---------------------------------------------------------------------------
// Diverging samples and their limits

struct DivergingSample {
    std::vector<AmbientPoint> points;
    AmbientPoint basepoint;
};

struct ClassifyConfig {
    double escape_radius = 20.0;
    int min_tail = 8;
    double slope_fluct_tol = 1e-3;   // fit residual per unit distance
    double theta_fluct_tol = 1e-3;   // radians across the tail
    double equator_slope_tol = 1e-3;
    double pole_horizontal_bound = 2.0;  // d_H bounded while escaping => pole
    double pole_slope_threshold = 1e3;
    double t_conv_tol = 1e-3;
    double base_conv_tol = 1e-3;
};

struct NoLimit {
    double slope_fluctuation = 0.0;  // sup - inf of tail slope ratios
    double theta_fluctuation = 0.0;
};

using GeodesicLimit = std::variant<GeodesicBoundaryPoint, NoLimit>;
using ProductLimit = std::variant<ProductBoundaryPoint, NoLimit>;

// Angle of p in the disk chart centered at `base` (used for fluctuation
// diagnostics and binning; consistent across one basepoint only).
inline double direction_angle_from(const HPoint& base, const HPoint& p) {
    return direction_angle(HPoint(p.x / base.x, (p.y - base.y) / base.x));
}

// Ideal endpoint of the ray from `base` through `p`: the endpoint of the
// connecting geodesic on p's side. Chart-free.
inline IdealPoint forward_ideal_endpoint(const HPoint& base, const HPoint& p) {
    const GeodesicH2 g = geodesic_through(base, p);
    const double ap = direction_angle_from(base, p);
    auto chart_angle = [&](const IdealPoint& q) {
        IdealPoint qn = q;
        if (!q.at_infinity) qn = IdealPoint((q.value - base.y) / base.x);
        return ideal_angle(qn);
    };
    const double da = std::abs(std::remainder(chart_angle(g.a) - ap, 2.0 * kPi));
    const double db = std::abs(std::remainder(chart_angle(g.b) - ap, 2.0 * kPi));
    return da <= db ? g.a : g.b;
}

namespace detail {

struct TailStats {
    std::vector<double> d, dt, angle;
    double d_max = 0, d_min = 0;
    double fit_slope = 0, fit_residual_sup = 0;
    double ratio_fluct = 0, angle_fluct = 0;
    double t_fluct = 0, base_fluct = 0;
    double t_last = 0;
    std::optional<IdealPoint> theta;  // forward ideal endpoint at the last tail point
};

inline TailStats tail_stats(const DivergingSample& s, const ClassifyConfig& cfg) {
    std::vector<int> escaped;
    for (int k = 0; k < (int)s.points.size(); ++k)
        if (dist_ambient(s.basepoint, s.points[k]) > cfg.escape_radius) escaped.push_back(k);
    if ((int)escaped.size() < cfg.min_tail)
        throw SampleTooShort("fewer than min_tail points beyond the escape radius");
    std::vector<int> tail(escaped.end() - cfg.min_tail, escaped.end());

    TailStats st;
    for (int k : tail) {
        st.d.push_back(dist_h2(s.basepoint.base, s.points[k].base));
        st.dt.push_back(s.points[k].t - s.basepoint.t);
        st.angle.push_back(direction_angle_from(s.basepoint.base, s.points[k].base));
    }
    st.d_max = *std::max_element(st.d.begin(), st.d.end());
    st.d_min = *std::min_element(st.d.begin(), st.d.end());
    st.t_last = s.points[tail.back()].t;

    // least-squares line dt = slope * d + c
    const int n = (int)st.d.size();
    double sd = 0, st_ = 0, sdd = 0, sdt = 0;
    for (int i = 0; i < n; ++i) {
        sd += st.d[i];
        st_ += st.dt[i];
        sdd += st.d[i] * st.d[i];
        sdt += st.d[i] * st.dt[i];
    }
    const double denom = n * sdd - sd * sd;
    if (std::abs(denom) > 1e-14 * std::max(1.0, n * sdd)) {
        st.fit_slope = (n * sdt - sd * st_) / denom;
        const double icept = (st_ - st.fit_slope * sd) / n;
        for (int i = 0; i < n; ++i)
            st.fit_residual_sup = std::max(
                st.fit_residual_sup, std::abs(st.dt[i] - st.fit_slope * st.d[i] - icept));
    } else {
        // horizontal distances numerically identical: vertical escape
        st.fit_slope = std::numeric_limits<double>::infinity();
    }

    double rmin = std::numeric_limits<double>::infinity(), rmax = -rmin;
    for (int i = 0; i < n; ++i) {
        if (st.d[i] > 1e-12) {
            const double r = st.dt[i] / st.d[i];
            rmin = std::min(rmin, r);
            rmax = std::max(rmax, r);
        }
    }
    st.ratio_fluct = (rmax >= rmin) ? rmax - rmin : 0.0;

    for (int i = 0; i + 1 < n; ++i) {
        double da = std::remainder(st.angle[i + 1] - st.angle[i], 2.0 * kPi);
        st.angle_fluct = std::max(st.angle_fluct, std::abs(da));
    }
    double tmin = st.dt[0], tmax = st.dt[0];
    for (double v : st.dt) {
        tmin = std::min(tmin, v);
        tmax = std::max(tmax, v);
    }
    st.t_fluct = tmax - tmin;
    const HPoint& last = s.points[tail.back()].base;
    for (int k : tail) st.base_fluct = std::max(st.base_fluct, dist_h2(s.points[k].base, last));
    if (st.d.back() > 1e-9) st.theta = forward_ideal_endpoint(s.basepoint.base, last);
    return st;
}

} // namespace detail

inline GeodesicLimit geodesic_limit(const DivergingSample& s, const ClassifyConfig& cfg = {}) {
    auto st = detail::tail_stats(s, cfg);
    if (st.d_max < cfg.pole_horizontal_bound)
        return GeodesicBoundaryPoint(PolePoint{st.t_last >= s.basepoint.t ? +1 : -1});
    if (std::abs(st.fit_slope) > cfg.pole_slope_threshold)
        return GeodesicBoundaryPoint(PolePoint{st.fit_slope > 0 ? +1 : -1});
    if (st.fit_residual_sup > cfg.slope_fluct_tol * std::max(1.0, st.d_max))
        return NoLimit{st.ratio_fluct, st.angle_fluct};
    if (st.angle_fluct > cfg.theta_fluct_tol) return NoLimit{st.ratio_fluct, st.angle_fluct};
    const IdealPoint theta = *st.theta;
    if (std::abs(st.fit_slope) <= cfg.equator_slope_tol)
        return GeodesicBoundaryPoint(EquatorPoint{theta});
    return GeodesicBoundaryPoint(
        ChamberPoint{theta, st.fit_slope > 0 ? +1 : -1, std::abs(st.fit_slope)});
}

inline ProductLimit product_limit(const DivergingSample& s, const ClassifyConfig& cfg = {}) {
    auto st = detail::tail_stats(s, cfg);
    if (st.base_fluct <= cfg.base_conv_tol) {
        // base converges; the ambient escape must come from t
        const HPoint p = s.points.back().base;
        return ProductBoundaryPoint(CapPoint{st.t_last >= s.basepoint.t ? +1 : -1, p});
    }
    if (st.angle_fluct > cfg.theta_fluct_tol) return NoLimit{st.ratio_fluct, st.angle_fluct};
    const IdealPoint theta = *st.theta;
    if (st.t_fluct <= cfg.t_conv_tol)
        return ProductBoundaryPoint(VerticalCylinderPoint{theta, st.t_last});
    // both factors diverge: t must be monotone toward an end
    bool inc = true, dec = true;
    for (size_t i = 0; i + 1 < st.dt.size(); ++i) {
        inc = inc && st.dt[i + 1] >= st.dt[i] - 1e-12;
        dec = dec && st.dt[i + 1] <= st.dt[i] + 1e-12;
    }
    if (!inc && !dec) return NoLimit{st.ratio_fluct, st.angle_fluct};
    return ProductBoundaryPoint(CornerPoint{theta, inc ? +1 : -1});
}

// ---------------------------------------------------------------------------
// JSON serialization

inline nlohmann::json theta_to_json(const IdealPoint& q) {
    if (q.at_infinity) return "inf";
    return q.value;
}
inline IdealPoint theta_from_json(const nlohmann::json& j) {
    if (j.is_string()) {
        if (j.get<std::string>() == "inf") return IdealPoint::infinity();
        throw ValidationError("theta string must be \"inf\"");
    }
    return IdealPoint(j.get<double>());
}
inline nlohmann::json sign_to_json(int sign) { return sign > 0 ? "+" : "-"; }
inline int sign_from_json(const nlohmann::json& j) {
    const auto s = j.get<std::string>();
    if (s == "+") return +1;
    if (s == "-") return -1;
    throw ValidationError("sign must be \"+\" or \"-\"");
}
inline nlohmann::json slope_bound_to_json(double v) {
    if (std::isinf(v)) return "inf";
    return v;
}
inline double slope_bound_from_json(const nlohmann::json& j) {
    if (j.is_string()) return std::numeric_limits<double>::infinity();
    return j.get<double>();
}

inline nlohmann::json to_json(const ProductBoundaryPoint& b) {
    nlohmann::json j;
    if (const auto* v = std::get_if<VerticalCylinderPoint>(&b)) {
        j["kind"] = "cylinder";
        j["theta"] = theta_to_json(v->theta);
        j["t"] = v->t;
    } else if (const auto* c = std::get_if<CapPoint>(&b)) {
        j["kind"] = "cap";
        j["sign"] = sign_to_json(c->sign);
        j["p"] = {c->p.x, c->p.y};
    } else {
        const auto& corner = std::get<CornerPoint>(b);
        j["kind"] = "corner";
        j["theta"] = theta_to_json(corner.theta);
        j["sign"] = sign_to_json(corner.sign);
    }
    return j;
}

inline nlohmann::json to_json(const GeodesicBoundaryPoint& b) {
    nlohmann::json j;
    if (const auto* e = std::get_if<EquatorPoint>(&b)) {
        j["kind"] = "equator";
        j["theta"] = theta_to_json(e->theta);
    } else if (const auto* p = std::get_if<PolePoint>(&b)) {
        j["kind"] = "pole";
        j["sign"] = sign_to_json(p->sign);
    } else {
        const auto& c = std::get<ChamberPoint>(b);
        j["kind"] = "chamber";
        j["theta"] = theta_to_json(c.theta);
        j["sign"] = sign_to_json(c.sign);
        j["slope"] = c.slope;
    }
    return j;
}

inline ProductBoundaryPoint product_point_from_json(const nlohmann::json& j) {
    const auto kind = j.at("kind").get<std::string>();
    if (kind == "cylinder")
        return VerticalCylinderPoint{theta_from_json(j.at("theta")), j.at("t").get<double>()};
    if (kind == "cap")
        return CapPoint{sign_from_json(j.at("sign")),
                        HPoint(j.at("p")[0].get<double>(), j.at("p")[1].get<double>())};
    if (kind == "corner")
        return CornerPoint{theta_from_json(j.at("theta")), sign_from_json(j.at("sign"))};
    throw ValidationError("unknown product boundary point kind: " + kind);
}

inline GeodesicBoundaryPoint geodesic_point_from_json(const nlohmann::json& j) {
    const auto kind = j.at("kind").get<std::string>();
    if (kind == "equator") return EquatorPoint{theta_from_json(j.at("theta"))};
    if (kind == "pole") return PolePoint{sign_from_json(j.at("sign"))};
    if (kind == "chamber") {
        const double slope = j.at("slope").get<double>();
        if (!(slope > 0) || std::isinf(slope))
            throw ValidationError("chamber slope must be finite and positive");
        return ChamberPoint{theta_from_json(j.at("theta")), sign_from_json(j.at("sign")), slope};
    }
    throw ValidationError("unknown geodesic boundary point kind: " + kind);
}

} // namespace h2r
