#pragma once

// Geodesic-boundary sets of surfaces: per-(theta, sign) Weyl chamber slope
// data, the classification of fillable curves in the geodesic boundary,
// the oscillation invariant, and the numerical tracing of discrete
// surfaces.
//
// A chamber entry stores a closed slope interval [lo, hi] in the chamber
// over (theta, sign): hi = inf means the set reaches the pole, and
// lo = hi = inf encodes the pole alone. The full chamber closure is
// [0, inf].

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "h2r/boundary_curves.hpp"
#include "h2r/compactify.hpp"
#include "h2r/errors.hpp"
#include "h2r/geometry.hpp"
#include "h2r/mesh.hpp"

namespace h2r {

struct ChamberTrace {
    IdealPoint theta;
    int sign = +1;
    double slope_lo = 0.0;
    double slope_hi = std::numeric_limits<double>::infinity();

    bool pole_only() const { return std::isinf(slope_lo); }
    bool full_chamber(double tol = 1e-9) const {
        return slope_lo <= tol && std::isinf(slope_hi);
    }
};

struct GeodesicBoundarySet {
    std::vector<BoundaryArc> equator_arcs;
    bool pole_plus = false, pole_minus = false;
    std::vector<ChamberTrace> chambers;
};

// ---------------------------------------------------------------------------
// Named boundary sets of the basic families

inline GeodesicBoundarySet slice_boundary_set() {
    GeodesicBoundarySet s;
    s.equator_arcs.push_back(BoundaryArc::full_circle());
    return s;
}

// Boundary set of H(c, a, +inf) (sign = +1) or H(c, -inf, b) (sign = -1):
// the arc plus the two full chambers joining its endpoints to the pole.
inline GeodesicBoundarySet semi_infinite_rectangle_boundary_set(const IdealPoint& q1,
                                                                const IdealPoint& q2, int sign) {
    GeodesicBoundarySet s;
    s.equator_arcs.push_back(BoundaryArc::between(q1, q2));
    (sign > 0 ? s.pole_plus : s.pole_minus) = true;
    s.chambers.push_back(ChamberTrace{q1, sign, 0.0, kInf});
    s.chambers.push_back(ChamberTrace{q2, sign, 0.0, kInf});
    return s;
}

// Boundary pattern of the twisted fillable curves: four chambers (two up
// at q1, q2; two down at q3, q4) and the two arcs q2q3 and q4q1.
inline GeodesicBoundarySet four_chamber_boundary_set(const IdealPoint& q1, const IdealPoint& q2,
                                                     const IdealPoint& q3,
                                                     const IdealPoint& q4) {
    GeodesicBoundarySet s;
    s.pole_plus = s.pole_minus = true;
    s.chambers = {ChamberTrace{q1, +1, 0.0, kInf}, ChamberTrace{q2, +1, 0.0, kInf},
                  ChamberTrace{q3, -1, 0.0, kInf}, ChamberTrace{q4, -1, 0.0, kInf}};
    s.equator_arcs.push_back(BoundaryArc::between(q2, q3));
    s.equator_arcs.push_back(BoundaryArc::between(q4, q1));
    return s;
}

inline GeodesicBoundarySet union_boundary_sets(const GeodesicBoundarySet& a,
                                               const GeodesicBoundarySet& b) {
    GeodesicBoundarySet s = a;
    s.pole_plus = a.pole_plus || b.pole_plus;
    s.pole_minus = a.pole_minus || b.pole_minus;
    s.equator_arcs.insert(s.equator_arcs.end(), b.equator_arcs.begin(), b.equator_arcs.end());
    s.chambers.insert(s.chambers.end(), b.chambers.begin(), b.chambers.end());
    return s;
}

// ---------------------------------------------------------------------------
// Oscillation invariant

struct OscillationViolation {
    IdealPoint theta;
    int sign;
    double slope_lo, slope_hi;
    double gap;  // distance from the interval to the equator point
};

// A chamber trace of a minimal surface is empty, the pole alone, or a
// closed interval [0, r] attached to the equator. Measured hulls may sit a
// hair above zero, hence the attachment tolerance.
inline std::optional<OscillationViolation> oscillation_check(const GeodesicBoundarySet& set,
                                                             double attach_tol = 0.05) {
    for (const auto& c : set.chambers) {
        if (c.pole_only()) continue;
        if (c.slope_lo > attach_tol)
            return OscillationViolation{c.theta, c.sign, c.slope_lo, c.slope_hi, c.slope_lo};
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Classification of fillable curves in the geodesic boundary

enum class GeodesicCurveType {
    equator = 1,
    arc_with_two_chambers = 2,
    four_chambers_two_arcs = 3,
    two_opposite_arc_chambers = 4,
};

struct NotFillableCurve {
    std::string violated_rule;
};

using GeodesicCurveClassification = std::variant<GeodesicCurveType, NotFillableCurve>;

namespace detail {

inline bool arc_matches_feet(const BoundaryArc& arc, const IdealPoint& p, const IdealPoint& q,
                             double tol = 1e-9) {
    return (ideal_close(arc.first(), p, tol) && ideal_close(arc.second(), q, tol)) ||
           (ideal_close(arc.first(), q, tol) && ideal_close(arc.second(), p, tol));
}

} // namespace detail

inline GeodesicCurveClassification classify_geodesic_curve(const GeodesicBoundarySet& set) {
    for (const auto& c : set.chambers) {
        if (!c.full_chamber())
            return NotFillableCurve{
                "a curve through a chamber interior must contain the entire Weyl chamber"};
    }
    const size_t n_plus = std::count_if(set.chambers.begin(), set.chambers.end(),
                                        [](const ChamberTrace& c) { return c.sign > 0; });
    const size_t n_minus = set.chambers.size() - n_plus;

    if (set.chambers.empty()) {
        if (set.pole_plus || set.pole_minus)
            return NotFillableCurve{"isolated poles cannot lie on a fillable curve"};
        double total = 0;
        for (const auto& a : set.equator_arcs) total += a.extent;
        if (total >= 2 * kPi - 1e-9) return GeodesicCurveType::equator;
        return NotFillableCurve{"an equatorial curve must be the whole equator"};
    }

    if ((n_plus == 2 && n_minus == 0) || (n_plus == 0 && n_minus == 2)) {
        if (set.equator_arcs.size() != 1)
            return NotFillableCurve{"two same-sign chambers close through exactly one arc"};
        if (!detail::arc_matches_feet(set.equator_arcs[0], set.chambers[0].theta,
                                      set.chambers[1].theta))
            return NotFillableCurve{"the arc endpoints must be the chamber feet"};
        return GeodesicCurveType::arc_with_two_chambers;
    }

    if (n_plus == 2 && n_minus == 2) {
        std::vector<IdealPoint> up, down;
        for (const auto& c : set.chambers) (c.sign > 0 ? up : down).push_back(c.theta);
        int same_joins = 0, cross_joins = 0;
        for (const auto& arc : set.equator_arcs) {
            const bool same = detail::arc_matches_feet(arc, up[0], up[1]) ||
                              detail::arc_matches_feet(arc, down[0], down[1]);
            bool cross = false;
            for (const auto& u : up)
                for (const auto& d : down)
                    if (detail::arc_matches_feet(arc, u, d)) cross = true;
            if (same)
                ++same_joins;
            else if (cross)
                ++cross_joins;
            else
                return NotFillableCurve{"an arc does not join chamber feet"};
        }
        if (same_joins == 0) {
            // type 3; arcs degenerate to points where an up foot meets a
            // down foot, so those joins may be omitted
            int coincident = 0;
            for (const auto& u : up)
                for (const auto& d : down)
                    if (ideal_close(u, d, 1e-9)) ++coincident;
            if (cross_joins + coincident >= 2)
                return GeodesicCurveType::four_chambers_two_arcs;
            return NotFillableCurve{"four chambers need two joining arcs"};
        }
        if (same_joins == 2 && cross_joins == 0 && set.equator_arcs.size() == 2) {
            // two disjoint type-2 components with opposite signs
            if (detail::arcs_overlap(set.equator_arcs[0], set.equator_arcs[1]))
                return NotFillableCurve{"the two component arcs must be disjoint"};
            return GeodesicCurveType::two_opposite_arc_chambers;
        }
        return NotFillableCurve{"mixed arc pattern over four chambers"};
    }

    return NotFillableCurve{"chamber count/sign pattern matches no fillable curve type"};
}

// ---------------------------------------------------------------------------
// Tracing discrete surfaces

struct TraceConfig {
    double escape_radius = 30.0;
    int angle_bins = 360;
    double equator_slope_tol = 0.01;   // |slope| below this counts as equatorial
    double chamber_threshold = 0.04;   // hull max above this reports a chamber
    double pole_horizontal_bound = 2.0;
};

struct BinHull {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    long count = 0;
    bool any() const { return count > 0; }
};

struct ProductTraceSummary {
    long escaped = 0;
    long pole_votes_plus = 0, pole_votes_minus = 0;
    int equator_bins = 0;
    int chamber_entries = 0;
};

struct TraceResult {
    GeodesicBoundarySet set;
    int bins = 0;
    std::vector<BinHull> hull_plus, hull_minus;  // per bin, by slope sign
    std::vector<bool> equator_bin;
    ProductTraceSummary summary;

    int bin_of_angle(double angle) const {
        double a = std::remainder(angle, 2.0 * kPi);
        int b = int(std::floor((a + kPi) / (2.0 * kPi) * bins));
        return std::min(std::max(b, 0), bins - 1);
    }
};

// Bin far mesh vertices by ideal direction from the basepoint and record
// the closed hull of observed slopes t/d_H per (bin, sign). Vertices whose
// horizontal distance stays bounded while the ambient distance escapes
// vote for a pole.
inline TraceResult trace_surface_boundary(const SurfaceMesh& mesh, const AmbientPoint& basepoint,
                                          const TraceConfig& cfg = {}) {
    TraceResult res;
    res.bins = cfg.angle_bins;
    res.hull_plus.assign(cfg.angle_bins, {});
    res.hull_minus.assign(cfg.angle_bins, {});
    res.equator_bin.assign(cfg.angle_bins, false);

    for (const auto& v : mesh.vertices) {
        const double dh = dist_h2(basepoint.base, v.base);
        const double dt = v.t - basepoint.t;
        if (std::hypot(dh, dt) <= cfg.escape_radius) continue;
        ++res.summary.escaped;
        if (dh < cfg.pole_horizontal_bound) {
            (dt >= 0 ? res.summary.pole_votes_plus : res.summary.pole_votes_minus)++;
            (dt >= 0 ? res.set.pole_plus : res.set.pole_minus) = true;
            continue;
        }
        const double angle = direction_angle_from(basepoint.base, v.base);
        const int bin = res.bin_of_angle(angle);
        const double r = dt / dh;
        BinHull& h = (r >= 0 ? res.hull_plus : res.hull_minus)[bin];
        h.lo = std::min(h.lo, std::abs(r));
        h.hi = std::max(h.hi, std::abs(r));
        ++h.count;
        if (std::abs(r) <= cfg.equator_slope_tol) res.equator_bin[bin] = true;
    }
    if (res.summary.escaped == 0)
        throw MeshTooSmall("no mesh vertex escapes the trace radius");

    // assemble the boundary set: equator arcs from contiguous equatorial
    // bins, chamber entries where the slope hull rises above the threshold
    auto bin_theta = [&](int bin) {
        const double center = -kPi + (bin + 0.5) * 2.0 * kPi / cfg.angle_bins;
        IdealPoint q = ideal_from_angle(center);
        if (q.at_infinity) return q;
        return IdealPoint(basepoint.base.x * q.value + basepoint.base.y);
    };
    const double bin_width = 2.0 * kPi / cfg.angle_bins;
    int run_start = -1;
    auto flush_run = [&](int end_bin) {
        if (run_start < 0) return;
        res.set.equator_arcs.push_back(
            BoundaryArc{-kPi + run_start * bin_width, (end_bin - run_start) * bin_width});
        run_start = -1;
    };
    for (int b = 0; b < cfg.angle_bins; ++b) {
        if (res.equator_bin[b]) {
            if (run_start < 0) run_start = b;
            ++res.summary.equator_bins;
        } else
            flush_run(b);
    }
    flush_run(cfg.angle_bins);

    for (int b = 0; b < cfg.angle_bins; ++b) {
        for (int sign : {+1, -1}) {
            const BinHull& h = (sign > 0 ? res.hull_plus : res.hull_minus)[b];
            if (!h.any() || h.hi < cfg.chamber_threshold) continue;
            ChamberTrace c;
            c.theta = bin_theta(b);
            c.sign = sign;
            c.slope_lo = h.lo <= cfg.equator_slope_tol ? 0.0 : h.lo;
            c.slope_hi = h.hi;
            res.set.chambers.push_back(c);
            ++res.summary.chamber_entries;
        }
    }
    return res;
}

// ---------------------------------------------------------------------------
// Orbit sampling along a screw generator

struct OrbitSample {
    DivergingSample sample;
    GeodesicLimit limit;
    double translation_length;
    double shift;
};

// Iterate a (hyperbolic translation, vertical shift) generator and read
// off the chamber point it accumulates at: slope |shift| / translation
// length.
inline OrbitSample orbit_slope_sample(const Isometry& generator, int steps,
                                      const AmbientPoint& basepoint,
                                      const ClassifyConfig& cfg = {}) {
    if (generator.vertical_flip)
        throw DegenerateGenerator("orbit generator must not flip the vertical factor");
    const double tr = generator.m[0][0] + generator.m[1][1];
    if (!(std::abs(tr) > 2.0 + 1e-12))
        throw DegenerateGenerator("orbit generator must be hyperbolic (|trace| > 2)");
    const double tau = 2.0 * std::acosh(std::abs(tr) / 2.0);
    OrbitSample out{DivergingSample{{}, basepoint}, NoLimit{}, tau, generator.vertical_shift};
    AmbientPoint p = basepoint;
    for (int k = 0; k < steps; ++k) {
        p = generator.apply(p);
        out.sample.points.push_back(p);
    }
    out.limit = geodesic_limit(out.sample, cfg);
    return out;
}

// ---------------------------------------------------------------------------
// JSON

inline nlohmann::json to_json(const GeodesicBoundarySet& s) {
    nlohmann::json arcs = nlohmann::json::array();
    for (const auto& a : s.equator_arcs)
        arcs.push_back({{"start_angle", a.start}, {"extent", a.extent}});
    nlohmann::json chambers = nlohmann::json::array();
    for (const auto& c : s.chambers)
        chambers.push_back({{"theta", theta_to_json(c.theta)},
                            {"sign", c.sign > 0 ? "+" : "-"},
                            {"slope", {slope_bound_to_json(c.slope_lo),
                                       slope_bound_to_json(c.slope_hi)}}});
    nlohmann::json poles = nlohmann::json::array();
    if (s.pole_plus) poles.push_back("+");
    if (s.pole_minus) poles.push_back("-");
    return nlohmann::json{
        {"equator_arcs", arcs}, {"poles", poles}, {"chamber_intervals", chambers}};
}

inline GeodesicBoundarySet boundary_set_from_json(const nlohmann::json& j) {
    GeodesicBoundarySet s;
    for (const auto& a : j.value("equator_arcs", nlohmann::json::array()))
        s.equator_arcs.push_back(
            BoundaryArc{a.at("start_angle").get<double>(), a.at("extent").get<double>()});
    for (const auto& p : j.value("poles", nlohmann::json::array())) {
        if (p.get<std::string>() == "+") s.pole_plus = true;
        if (p.get<std::string>() == "-") s.pole_minus = true;
    }
    for (const auto& c : j.value("chamber_intervals", nlohmann::json::array())) {
        ChamberTrace t;
        t.theta = theta_from_json(c.at("theta"));
        t.sign = c.at("sign").get<std::string>() == "+" ? +1 : -1;
        t.slope_lo = slope_bound_from_json(c.at("slope")[0]);
        t.slope_hi = slope_bound_from_json(c.at("slope")[1]);
        s.chambers.push_back(t);
    }
    return s;
}

} // namespace h2r
