#pragma once

// Piecewise curves on the product boundary and the fillability decision
// procedures on them.
//
// A curve is an ordered list of segments on the boundary surface: vertical
// segments {theta} x [t_lo, t_hi] on the cylinder (t endpoints may be
// +/-inf, reaching the corner circles), horizontal arcs (an ideal-circle
// arc at one height, or at a cap level +/-inf), and cap traces (complete
// geodesics, plus metric circles as a non-geodesic negative case). The
// ordered list may concatenate several closed components; consecutive
// segments of a component share endpoints.
//
// The decision procedures are exact interval arithmetic on the segment
// list: component structure of a vertical line minus the curve only
// changes at segment breakpoints, so sampling those (plus a dense guard
// grid) is exact.

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "h2r/errors.hpp"
#include "h2r/geometry.hpp"

namespace h2r {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

struct VerticalSegment {
    IdealPoint theta;
    double t_lo, t_hi;  // t_lo < t_hi; may be -inf / +inf
};
struct HorizontalArc {
    BoundaryArc arc;
    double t;  // height; +/-inf places the arc on a corner circle
};
struct CapGeodesic {
    int sign;  // which cap
    GeodesicH2 geo;
};
// A cap trace that is a metric circle rather than a geodesic; it always
// violates the cap condition of the fillability criterion.
struct CapCircle {
    int sign;
    HPoint center;
    double radius;
};
using CurveSegment = std::variant<VerticalSegment, HorizontalArc, CapGeodesic, CapCircle>;

// Endpoint of a segment in the closed cylinder: (theta, t) with t in
// [-inf, inf]. Cap geodesics end at the corner points over their ideal
// endpoints.
struct CurveNode {
    IdealPoint theta;
    double t;
};

inline bool nodes_match(const CurveNode& a, const CurveNode& b, double tol = 1e-9) {
    if (!ideal_close(a.theta, b.theta, tol)) return false;
    if (std::isinf(a.t) || std::isinf(b.t)) return a.t == b.t;
    return std::abs(a.t - b.t) <= tol;
}

// Segment endpoints in list order; empty for self-closed segments (cap
// circles and full-circle arcs).
inline std::vector<CurveNode> segment_nodes(const CurveSegment& seg) {
    if (const auto* v = std::get_if<VerticalSegment>(&seg))
        return {{v->theta, v->t_lo}, {v->theta, v->t_hi}};
    if (const auto* a = std::get_if<HorizontalArc>(&seg)) {
        if (a->arc.is_full_circle()) return {};
        return {{a->arc.first(), a->t}, {a->arc.second(), a->t}};
    }
    if (const auto* g = std::get_if<CapGeodesic>(&seg)) {
        const double cap = g->sign > 0 ? kInf : -kInf;
        return {{g->geo.a, cap}, {g->geo.b, cap}};
    }
    return {};
}

struct PiecewiseBoundaryCurve {
    std::vector<CurveSegment> segments;
    bool closed = true;

    // Indices of the first segment of each closed component.
    std::vector<size_t> component_starts() const;
    void validate() const;
    bool lies_in_cylinder() const {
        for (const auto& s : segments) {
            if (std::holds_alternative<CapGeodesic>(s) || std::holds_alternative<CapCircle>(s))
                return false;
            if (const auto* v = std::get_if<VerticalSegment>(&s))
                if (std::isinf(v->t_lo) || std::isinf(v->t_hi)) return false;
            if (const auto* a = std::get_if<HorizontalArc>(&s))
                if (std::isinf(a->t)) return false;
        }
        return true;
    }
};

inline std::vector<size_t> PiecewiseBoundaryCurve::component_starts() const {
    std::vector<size_t> starts;
    size_t i = 0;
    while (i < segments.size()) {
        starts.push_back(i);
        auto nodes = segment_nodes(segments[i]);
        if (nodes.empty()) {  // self-closed
            ++i;
            continue;
        }
        // walk the chain: orient the first segment both ways if needed
        CurveNode start = nodes[0], cur = nodes[1];
        size_t j = i + 1;
        for (; j < segments.size(); ++j) {
            auto nn = segment_nodes(segments[j]);
            if (nn.empty()) break;
            if (nodes_match(cur, nn[0]))
                cur = nn[1];
            else if (nodes_match(cur, nn[1]))
                cur = nn[0];
            else if (j == i + 1 && (nodes_match(start, nn[0]) || nodes_match(start, nn[1]))) {
                // first segment was stored against the walk direction
                std::swap(start, cur);
                if (nodes_match(cur, nn[0]))
                    cur = nn[1];
                else
                    cur = nn[0];
            } else
                break;
            if (nodes_match(cur, start)) {
                ++j;
                break;
            }
        }
        if (closed && !nodes_match(cur, start))
            throw MalformedCurve("component does not close (segment endpoints do not chain)");
        i = j;
    }
    return starts;
}

namespace detail {

inline bool arcs_overlap(const BoundaryArc& a, const BoundaryArc& b, double tol = 1e-9) {
    // strict interior overlap (shared endpoints allowed)
    auto inside = [&](const BoundaryArc& arc, double angle) {
        double d = std::fmod(angle - arc.start, 2.0 * kPi);
        if (d < 0) d += 2.0 * kPi;
        return d > tol && d < arc.extent - tol;
    };
    if (inside(a, b.start) || inside(a, b.start + b.extent)) return true;
    if (inside(b, a.start) || inside(b, a.start + a.extent)) return true;
    // identical spans
    return std::abs(std::remainder(a.start - b.start, 2.0 * kPi)) <= tol &&
           std::abs(a.extent - b.extent) <= tol;
}

inline bool geodesics_cross(const GeodesicH2& g, const GeodesicH2& h) {
    if (g.a == h.a || g.a == h.b || g.b == h.a || g.b == h.b) return false;
    auto angle_in = [&](const IdealPoint& q) {
        double d = std::fmod(ideal_angle(q) - ideal_angle(g.a), 2.0 * kPi);
        if (d < 0) d += 2.0 * kPi;
        return d;
    };
    const double span = angle_in(g.b);
    const bool a_in = angle_in(h.a) < span, b_in = angle_in(h.b) < span;
    return a_in != b_in;
}

} // namespace detail

inline void PiecewiseBoundaryCurve::validate() const {
    if (segments.empty()) throw MalformedCurve("curve has no segments");
    for (const auto& s : segments) {
        if (const auto* v = std::get_if<VerticalSegment>(&s)) {
            if (!(v->t_lo < v->t_hi)) throw MalformedCurve("vertical segment needs t_lo < t_hi");
        } else if (const auto* c = std::get_if<CapCircle>(&s)) {
            if (!(c->radius > 0)) throw MalformedCurve("cap circle needs positive radius");
        }
    }
    component_starts();  // throws if chaining fails

    // simplicity: pairwise interior intersections are forbidden
    const double tol = 1e-9;
    for (size_t i = 0; i < segments.size(); ++i) {
        for (size_t j = i + 1; j < segments.size(); ++j) {
            const auto *vi = std::get_if<VerticalSegment>(&segments[i]),
                       *vj = std::get_if<VerticalSegment>(&segments[j]);
            const auto *ai = std::get_if<HorizontalArc>(&segments[i]),
                       *aj = std::get_if<HorizontalArc>(&segments[j]);
            const auto *gi = std::get_if<CapGeodesic>(&segments[i]),
                       *gj = std::get_if<CapGeodesic>(&segments[j]);
            if (vi && vj && ideal_close(vi->theta, vj->theta, tol)) {
                const double lo = std::max(vi->t_lo, vj->t_lo);
                const double hi = std::min(vi->t_hi, vj->t_hi);
                if (hi - lo > tol) throw MalformedCurve("overlapping vertical segments");
            } else if (ai && aj && ((std::isinf(ai->t) && ai->t == aj->t) ||
                                    std::abs(ai->t - aj->t) <= tol)) {
                if (detail::arcs_overlap(ai->arc, aj->arc, tol))
                    throw MalformedCurve("overlapping horizontal arcs");
            } else if (vi && aj) {
                if (!std::isinf(aj->t) && aj->t > vi->t_lo + tol && aj->t < vi->t_hi - tol &&
                    aj->arc.contains(vi->theta, -tol))
                    throw MalformedCurve("arc crosses a vertical segment");
            } else if (ai && vj) {
                if (!std::isinf(ai->t) && ai->t > vj->t_lo + tol && ai->t < vj->t_hi - tol &&
                    ai->arc.contains(vj->theta, -tol))
                    throw MalformedCurve("arc crosses a vertical segment");
            } else if (gi && gj && gi->sign == gj->sign) {
                if (detail::geodesics_cross(gi->geo, gj->geo))
                    throw MalformedCurve("cap geodesics cross");
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Vertical line components

struct TInterval {
    double lo, hi;  // open interval (lo, hi), possibly infinite ends
    double length() const { return hi - lo; }
    bool bounded() const { return std::isfinite(lo) && std::isfinite(hi); }
};

// Connected components of ({theta} x R) minus the curve, with lengths.
inline std::vector<TInterval> vertical_line_components(const PiecewiseBoundaryCurve& curve,
                                                       const IdealPoint& theta,
                                                       double tol = 1e-9) {
    std::vector<std::pair<double, double>> covered;
    for (const auto& s : curve.segments) {
        if (const auto* v = std::get_if<VerticalSegment>(&s)) {
            if (ideal_close(v->theta, theta, tol)) covered.push_back({v->t_lo, v->t_hi});
        } else if (const auto* a = std::get_if<HorizontalArc>(&s)) {
            if (!std::isinf(a->t) && a->arc.contains(theta, tol))
                covered.push_back({a->t, a->t});
        }
    }
    std::sort(covered.begin(), covered.end());
    std::vector<std::pair<double, double>> merged;
    for (const auto& c : covered) {
        if (!merged.empty() && c.first <= merged.back().second + tol)
            merged.back().second = std::max(merged.back().second, c.second);
        else
            merged.push_back(c);
    }
    std::vector<TInterval> out;
    double cursor = -kInf;
    for (const auto& m : merged) {
        if (m.first > cursor) out.push_back({cursor, m.first});
        cursor = std::max(cursor, m.second);
    }
    if (cursor < kInf) out.push_back({cursor, kInf});
    return out;
}

// ---------------------------------------------------------------------------
// Fillability criterion

enum class FillabilityStatus {
    fillable_by_criterion,
    tall_minimizing,
    thin_tail_obstruction,
    cap_not_geodesic,
    short_not_tall,
    unknown,
};

inline const char* to_string(FillabilityStatus s) {
    switch (s) {
        case FillabilityStatus::fillable_by_criterion: return "FillableByCriterion";
        case FillabilityStatus::tall_minimizing: return "TallMinimizing";
        case FillabilityStatus::thin_tail_obstruction: return "ThinTailObstruction";
        case FillabilityStatus::cap_not_geodesic: return "CapNotGeodesic";
        case FillabilityStatus::short_not_tall: return "ShortNotTall";
        case FillabilityStatus::unknown: return "Unknown";
    }
    return "?";
}

struct ShortComponentWitness {
    IdealPoint theta;
    double t_lo, t_hi;
    double length;
};

struct FillabilityVerdict {
    FillabilityStatus status = FillabilityStatus::unknown;
    std::vector<ShortComponentWitness> short_components;
    std::optional<int> offending_cap;  // sign of a cap violating the geodesic condition
    std::string detail;
};

namespace detail {

// Breakpoint ideal points: component structure only changes here.
inline std::vector<IdealPoint> breakpoints(const PiecewiseBoundaryCurve& curve) {
    std::vector<IdealPoint> pts;
    for (const auto& s : curve.segments) {
        if (const auto* v = std::get_if<VerticalSegment>(&s)) pts.push_back(v->theta);
        if (const auto* a = std::get_if<HorizontalArc>(&s)) {
            if (!a->arc.is_full_circle()) {
                pts.push_back(a->arc.first());
                pts.push_back(a->arc.second());
            }
        }
        if (const auto* g = std::get_if<CapGeodesic>(&s)) {
            pts.push_back(g->geo.a);
            pts.push_back(g->geo.b);
        }
    }
    return pts;
}

inline std::vector<IdealPoint> sample_thetas(const PiecewiseBoundaryCurve& curve,
                                             int dense_samples) {
    std::vector<IdealPoint> thetas = breakpoints(curve);
    for (int k = 0; k < dense_samples; ++k)
        thetas.push_back(ideal_from_angle(-kPi + 2.0 * kPi * (k + 0.5) / dense_samples));
    return thetas;
}

} // namespace detail

// Criterion: every component of every vertical line minus the curve has
// length > pi, and each cap trace is empty or one complete geodesic.
inline FillabilityVerdict check_proposition_fillability(const PiecewiseBoundaryCurve& curve,
                                                        int theta_samples = 720) {
    curve.validate();
    FillabilityVerdict verdict;
    int caps_plus = 0, caps_minus = 0;
    for (const auto& s : curve.segments) {
        if (const auto* c = std::get_if<CapCircle>(&s)) {
            verdict.status = FillabilityStatus::cap_not_geodesic;
            verdict.offending_cap = c->sign;
            verdict.detail = "cap trace is a metric circle, not a geodesic";
            return verdict;
        }
        if (const auto* g = std::get_if<CapGeodesic>(&s)) (g->sign > 0 ? caps_plus : caps_minus)++;
    }
    if (caps_plus > 1 || caps_minus > 1) {
        verdict.status = FillabilityStatus::cap_not_geodesic;
        verdict.offending_cap = caps_plus > 1 ? +1 : -1;
        verdict.detail = "cap trace is more than a single complete geodesic";
        return verdict;
    }
    for (const auto& theta : detail::sample_thetas(curve, theta_samples)) {
        for (const auto& comp : vertical_line_components(curve, theta)) {
            if (!(comp.length() > kPi))
                verdict.short_components.push_back({theta, comp.lo, comp.hi, comp.length()});
        }
    }
    if (!verdict.short_components.empty()) {
        verdict.status = FillabilityStatus::short_not_tall;
        verdict.detail = "a vertical line component of length <= pi obstructs the criterion";
        return verdict;
    }
    verdict.status = FillabilityStatus::fillable_by_criterion;
    return verdict;
}

// ---------------------------------------------------------------------------
// Tallness (minimizing fillability criterion for cylinder curves)

enum class Tallness { tall, short_curve, boundary_case };

struct TallnessReport {
    Tallness verdict = Tallness::tall;
    double height = kInf;  // h = inf over lines of bounded complement lengths
    std::optional<ShortComponentWitness> witness;
    std::string remark;
};

// h is measured on the bounded components of the complement of the curve
// (the rectangles that must be tall); h = pi is reported as a boundary
// case, never silently classified.
inline TallnessReport check_tall(const PiecewiseBoundaryCurve& curve, int theta_samples = 720,
                                 double pi_tol = 1e-9) {
    curve.validate();
    if (!curve.lies_in_cylinder())
        throw CurveTouchesCaps("tallness is defined for curves in the vertical cylinder");
    TallnessReport rep;
    for (const auto& theta : detail::sample_thetas(curve, theta_samples)) {
        for (const auto& comp : vertical_line_components(curve, theta)) {
            if (!comp.bounded()) continue;
            if (comp.length() < rep.height) {
                rep.height = comp.length();
                rep.witness = ShortComponentWitness{theta, comp.lo, comp.hi, comp.length()};
            }
        }
    }
    if (std::abs(rep.height - kPi) <= pi_tol) {
        rep.verdict = Tallness::boundary_case;
        rep.remark = "height equals pi: the minimizing criterion does not apply";
    } else if (rep.height > kPi) {
        rep.verdict = Tallness::tall;
    } else {
        rep.verdict = Tallness::short_curve;
        rep.remark =
            "short curves admit no minimizing filling, but minimal fillings may still "
            "exist (minimal != minimizing)";
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Thin tails

struct ThinTailWitness {
    IdealPoint theta;          // the vertical line of the one-sided contact
    double contact_lo, contact_hi;  // t-range of the contact (point or segment)
    double slab_lo, slab_hi;   // horizontal slab containing the excursion
};

namespace detail {

// Angular side (+1 ccw / -1 cw / 0 on the line) of an arc germ attached at
// theta0.
inline int arc_side_at(const HorizontalArc& a, const IdealPoint& theta0, double tol = 1e-9) {
    const double th = ideal_angle(theta0);
    double from_start = std::fmod(th - a.arc.start, 2.0 * kPi);
    if (from_start < 0) from_start += 2.0 * kPi;
    if (from_start <= tol || from_start >= 2.0 * kPi - tol) return +1;  // leaves ccw
    if (std::abs(from_start - a.arc.extent) <= tol) return -1;          // leaves cw
    return 0;
}

inline bool arc_strictly_crosses(const HorizontalArc& a, const IdealPoint& theta0,
                                 double tol = 1e-9) {
    const double th = ideal_angle(theta0);
    double d = std::fmod(th - a.arc.start, 2.0 * kPi);
    if (d < 0) d += 2.0 * kPi;
    return d > tol && d < a.arc.extent - tol;
}

} // namespace detail

// Search for an open subarc lying on one side of a vertical line except at
// an interior contact, confined to a slab of height < pi. With axis-aligned
// segments a one-sided contact is always a vertical segment whose two
// neighbor arcs leave to the same side (two arcs meeting at a point on the
// same side would overlap and fail the simplicity check).
inline std::optional<ThinTailWitness> detect_thin_tail(const PiecewiseBoundaryCurve& curve) {
    curve.validate();
    auto starts = curve.component_starts();
    starts.push_back(curve.segments.size());

    for (size_t ci = 0; ci + 1 < starts.size(); ++ci) {
        const size_t begin = starts[ci], len = starts[ci + 1] - begin;
        if (len < 3) continue;
        auto seg_at = [&](size_t k) -> const CurveSegment& {
            return curve.segments[begin + (k % len)];
        };
        for (size_t i = 0; i < len; ++i) {
            const auto* vs = std::get_if<VerticalSegment>(&seg_at(i));
            if (!vs || std::isinf(vs->t_lo) || std::isinf(vs->t_hi)) continue;
            const IdealPoint theta0 = vs->theta;
            const auto* prev = std::get_if<HorizontalArc>(&seg_at(i + len - 1));
            const auto* next = std::get_if<HorizontalArc>(&seg_at(i + 1));
            if (!prev || !next) continue;
            const int side_prev = detail::arc_side_at(*prev, theta0);
            const int side_next = detail::arc_side_at(*next, theta0);
            if (side_prev == 0 || side_prev != side_next) continue;  // crossing

            // walk both ways until the excursion returns to the line
            double slab_lo = vs->t_lo, slab_hi = vs->t_hi;
            bool unbounded = false;
            auto absorb = [&](const CurveSegment& s, bool attached) -> bool {
                if (const auto* a = std::get_if<HorizontalArc>(&s)) {
                    if (std::isinf(a->t)) {
                        unbounded = true;
                        return false;
                    }
                    if (!attached && detail::arc_strictly_crosses(*a, theta0)) return false;
                    slab_lo = std::min(slab_lo, a->t);
                    slab_hi = std::max(slab_hi, a->t);
                    if (attached) return true;  // only touches the line at the contact
                    // a far arc landing on the line ends the excursion
                    return !(ideal_close(a->arc.first(), theta0, 1e-9) ||
                             ideal_close(a->arc.second(), theta0, 1e-9));
                }
                if (const auto* v = std::get_if<VerticalSegment>(&s)) {
                    if (ideal_close(v->theta, theta0, 1e-9)) return false;
                    if (std::isinf(v->t_lo) || std::isinf(v->t_hi)) {
                        unbounded = true;
                        return false;
                    }
                    slab_lo = std::min(slab_lo, v->t_lo);
                    slab_hi = std::max(slab_hi, v->t_hi);
                    return true;
                }
                unbounded = true;  // cap segment: the excursion escapes
                return false;
            };
            for (size_t step = 1; step < len; ++step)
                if (!absorb(seg_at(i + step), step == 1)) break;
            for (size_t step = 1; step < len; ++step)
                if (!absorb(seg_at(i + len * 2 - step), step == 1)) break;

            if (!unbounded && slab_hi - slab_lo < kPi)
                return ThinTailWitness{theta0, vs->t_lo, vs->t_hi, slab_lo, slab_hi};
        }
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// JSON schema

inline nlohmann::json theta_json(const IdealPoint& q) {
    if (q.at_infinity) return "inf";
    return q.value;
}
inline IdealPoint theta_unjson(const nlohmann::json& j) {
    if (j.is_string()) {
        if (j.get<std::string>() == "inf") return IdealPoint::infinity();
        throw ValidationError("theta string must be \"inf\"");
    }
    return IdealPoint(j.get<double>());
}
inline nlohmann::json t_json(double t) {
    if (t == kInf) return "inf";
    if (t == -kInf) return "-inf";
    return t;
}
inline double t_unjson(const nlohmann::json& j) {
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        if (s == "inf") return kInf;
        if (s == "-inf") return -kInf;
        throw ValidationError("t string must be \"inf\" or \"-inf\"");
    }
    return j.get<double>();
}

inline nlohmann::json to_json(const PiecewiseBoundaryCurve& curve) {
    nlohmann::json segs = nlohmann::json::array();
    for (const auto& s : curve.segments) {
        nlohmann::json j;
        if (const auto* v = std::get_if<VerticalSegment>(&s)) {
            j["kind"] = "vertical";
            j["theta"] = theta_json(v->theta);
            j["t"] = {t_json(v->t_lo), t_json(v->t_hi)};
        } else if (const auto* a = std::get_if<HorizontalArc>(&s)) {
            j["kind"] = "arc";
            j["start_angle"] = a->arc.start;
            j["extent"] = a->arc.extent;
            j["t"] = t_json(a->t);
        } else if (const auto* g = std::get_if<CapGeodesic>(&s)) {
            j["kind"] = "cap_geodesic";
            j["sign"] = g->sign > 0 ? "+" : "-";
            j["endpoints"] = {theta_json(g->geo.a), theta_json(g->geo.b)};
        } else {
            const auto& c = std::get<CapCircle>(s);
            j["kind"] = "cap_circle";
            j["sign"] = c.sign > 0 ? "+" : "-";
            j["center"] = {c.center.x, c.center.y};
            j["radius"] = c.radius;
        }
        segs.push_back(j);
    }
    return nlohmann::json{{"closed", curve.closed}, {"segments", segs}};
}

inline PiecewiseBoundaryCurve curve_from_json(const nlohmann::json& j) {
    PiecewiseBoundaryCurve curve;
    curve.closed = j.value("closed", true);
    for (const auto& s : j.at("segments")) {
        const auto kind = s.at("kind").get<std::string>();
        if (kind == "vertical") {
            curve.segments.push_back(VerticalSegment{theta_unjson(s.at("theta")),
                                                     t_unjson(s.at("t")[0]),
                                                     t_unjson(s.at("t")[1])});
        } else if (kind == "arc") {
            curve.segments.push_back(HorizontalArc{
                BoundaryArc{s.at("start_angle").get<double>(), s.at("extent").get<double>()},
                t_unjson(s.at("t"))});
        } else if (kind == "cap_geodesic") {
            curve.segments.push_back(
                CapGeodesic{s.at("sign").get<std::string>() == "+" ? +1 : -1,
                            GeodesicH2(theta_unjson(s.at("endpoints")[0]),
                                       theta_unjson(s.at("endpoints")[1]))});
        } else if (kind == "cap_circle") {
            curve.segments.push_back(
                CapCircle{s.at("sign").get<std::string>() == "+" ? +1 : -1,
                          HPoint(s.at("center")[0].get<double>(), s.at("center")[1].get<double>()),
                          s.at("radius").get<double>()});
        } else {
            throw ValidationError("unknown curve segment kind: " + kind);
        }
    }
    curve.validate();
    return curve;
}

inline nlohmann::json to_json(const FillabilityVerdict& v) {
    nlohmann::json j;
    j["status"] = to_string(v.status);
    if (!v.detail.empty()) j["detail"] = v.detail;
    if (v.offending_cap) j["offending_cap"] = *v.offending_cap > 0 ? "+" : "-";
    nlohmann::json ws = nlohmann::json::array();
    for (const auto& w : v.short_components)
        ws.push_back({{"theta", theta_json(w.theta)},
                      {"t", {t_json(w.t_lo), t_json(w.t_hi)}},
                      {"length", w.length}});
    if (!ws.empty()) j["short_components"] = ws;
    return j;
}

} // namespace h2r
