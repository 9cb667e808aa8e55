#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "h2r/geometry.hpp"

using namespace h2r;

namespace {

// Independent oracle: hyperbolic arc length along the geodesic circle (or
// vertical line) through p and q, integrated numerically.
double shoot_distance(const HPoint& p, const HPoint& q) {
    const int n = 20000;
    if (std::abs(p.y - q.y) < 1e-13) {
        // vertical geodesic: ds = dx/x
        return std::abs(std::log(q.x / p.x));
    }
    const double yc = (sq(p.x) + sq(p.y) - sq(q.x) - sq(q.y)) / (2.0 * (p.y - q.y));
    const double r = std::hypot(p.x, p.y - yc);
    const double a0 = std::atan2(p.x, p.y - yc);
    const double a1 = std::atan2(q.x, q.y - yc);
    double len = 0.0;
    for (int i = 0; i < n; ++i) {
        const double a = a0 + (a1 - a0) * (i + 0.5) / n;
        const double x = r * std::sin(a);
        len += std::abs(a1 - a0) / n * r / x;
    }
    return len;
}

// Independent oracle: distance from p to the unit half-circle geodesic by
// dense minimization over the geodesic.
double min_dist_to_unit_circle(const HPoint& p) {
    double best = std::numeric_limits<double>::infinity();
    double best_a = 0.0;
    for (int i = 1; i < 4000; ++i) {
        const double a = -kPi / 2 + kPi * i / 4000.0;
        const double d = dist_h2(p, HPoint(std::cos(a), std::sin(a)));
        if (d < best) {
            best = d;
            best_a = a;
        }
    }
    double lo = best_a - kPi / 4000.0, hi = best_a + kPi / 4000.0;
    for (int it = 0; it < 200; ++it) {  // golden-section refine
        const double m1 = lo + 0.382 * (hi - lo), m2 = lo + 0.618 * (hi - lo);
        if (dist_h2(p, HPoint(std::cos(m1), std::sin(m1))) <
            dist_h2(p, HPoint(std::cos(m2), std::sin(m2))))
            hi = m2;
        else
            lo = m1;
    }
    const double a = 0.5 * (lo + hi);
    return dist_h2(p, HPoint(std::cos(a), std::sin(a)));
}

std::mt19937& rng() {
    static std::mt19937 gen(20240817);
    return gen;
}

HPoint random_point() {
    std::uniform_real_distribution<double> ux(0.05, 8.0), uy(-8.0, 8.0);
    return HPoint(ux(rng()), uy(rng()));
}

Isometry random_isometry() {
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    const Isometry a = Isometry::hyperbolic_translation(
        GeodesicH2(IdealPoint(u(rng())), IdealPoint::infinity()), u(rng()));
    const Isometry b = Isometry::rotation(HPoint(1.0 + std::abs(u(rng())), u(rng())), u(rng()));
    Isometry c = a.compose(b);
    c.vertical_shift = u(rng());
    return c;
}

} // namespace

TEST_CASE("dist_h2 basic values") {
    REQUIRE(dist_h2(HPoint(1, 0), HPoint(1, 0)) == 0.0);
    REQUIRE_THAT(dist_h2(HPoint(1, 0), HPoint(std::exp(1.0), 0)),
                 Catch::Matchers::WithinAbs(1.0, 1e-12));
    REQUIRE_THAT(dist_h2(HPoint(1, 0), HPoint(1, 1)),
                 Catch::Matchers::WithinAbs(0.96242365011920689, 1e-12));
}

TEST_CASE("dist_h2 agrees with numeric geodesic shooting") {
    for (int i = 0; i < 12; ++i) {
        const HPoint p = random_point(), q = random_point();
        REQUIRE_THAT(dist_h2(p, q), Catch::Matchers::WithinAbs(shoot_distance(p, q), 1e-6));
    }
}

TEST_CASE("dist_h2 metric axioms on random triples") {
    for (int i = 0; i < 200; ++i) {
        const HPoint p = random_point(), q = random_point(), r = random_point();
        const double dpq = dist_h2(p, q);
        REQUIRE(dpq >= 0.0);
        REQUIRE_THAT(dpq, Catch::Matchers::WithinAbs(dist_h2(q, p), 1e-10));
        REQUIRE(dpq <= dist_h2(p, r) + dist_h2(r, q) + 1e-10);
    }
}

TEST_CASE("dist_ambient is the product metric") {
    const AmbientPoint p(1, 0, 2);
    REQUIRE(dist_ambient(p, p) == 0.0);
    REQUIRE_THAT(dist_ambient(AmbientPoint(1, 0, 1), AmbientPoint(1, 0, 4)),
                 Catch::Matchers::WithinAbs(3.0, 1e-14));
    // bases at hyperbolic distance 3, vertical offset 4 -> 5
    const HPoint a(1, 0), b(std::exp(3.0), 0);
    REQUIRE_THAT(dist_ambient(AmbientPoint(a, 0), AmbientPoint(b, 4)),
                 Catch::Matchers::WithinAbs(5.0, 1e-12));
}

TEST_CASE("equidistant coordinate values and level sets") {
    REQUIRE(equidistant_coordinate(HPoint(1, 0)) == 0.0);
    REQUIRE_THAT(equidistant_coordinate(HPoint(0.5, 0)), Catch::Matchers::WithinAbs(0.75, 1e-14));

    std::uniform_real_distribution<double> us(-5.0, 5.0), uy(-0.95, 0.95);
    for (int trial = 0; trial < 6; ++trial) {
        const double s0 = us(rng());
        const double expected = std::asinh(std::abs(s0));
        for (int i = 0; i < 10; ++i) {
            const double y = uy(rng());
            const double x = -s0 + std::sqrt(sq(s0) + 1.0 - sq(y));
            const HPoint p(x, y);
            REQUIRE_THAT(equidistant_coordinate(p), Catch::Matchers::WithinAbs(s0, 1e-10));
            REQUIRE_THAT(min_dist_to_unit_circle(p), Catch::Matchers::WithinAbs(expected, 1e-8));
        }
    }
}

TEST_CASE("geodesic_through cases") {
    const GeodesicH2 v = geodesic_through(HPoint(1, 0), HPoint(2, 0));
    REQUIRE(v.is_vertical());
    REQUIRE(v.a == IdealPoint(0.0));

    const GeodesicH2 g = geodesic_through(HPoint(1, -1), HPoint(1, 1));
    REQUIRE_THAT(g.a.value, Catch::Matchers::WithinAbs(-std::sqrt(2.0), 1e-12));
    REQUIRE_THAT(g.b.value, Catch::Matchers::WithinAbs(std::sqrt(2.0), 1e-12));

    for (int i = 0; i < 30; ++i) {
        const HPoint p = random_point(), q = random_point();
        const GeodesicH2 gg = geodesic_through(p, q);
        const GeodesicH2 hh = geodesic_through(q, p);
        REQUIRE(ideal_close(gg.a, hh.a, 1e-9));
        REQUIRE(ideal_close(gg.b, hh.b, 1e-9));
        REQUIRE(std::abs(std::sinh(dist_to_geodesic(gg, p))) < 1e-9);
        REQUIRE(std::abs(std::sinh(dist_to_geodesic(gg, q))) < 1e-9);
    }
    REQUIRE_THROWS_AS(geodesic_through(HPoint(1, 1), HPoint(1, 1)), CoincidentPoints);
}

TEST_CASE("distance between geodesics") {
    // normalized configuration: (0, inf) vs (p, q) has cosh d = (p+q)/(q-p)
    const GeodesicH2 axis(IdealPoint(0.0), IdealPoint::infinity());
    const GeodesicH2 far(IdealPoint(2.0), IdealPoint(4.0));
    REQUIRE_THAT(dist_geodesics(axis, far), Catch::Matchers::WithinAbs(std::acosh(3.0), 1e-12));
    // crossing pair
    const GeodesicH2 circ(IdealPoint(-1.0), IdealPoint(1.0));
    REQUIRE(dist_geodesics(axis, circ) == 0.0);
    // shared endpoint
    REQUIRE(dist_geodesics(axis, GeodesicH2(IdealPoint(0.0), IdealPoint(5.0))) == 0.0);
    // cross-check against pointwise minimization
    const GeodesicH2 g1(IdealPoint(-3.0), IdealPoint(-1.0)), g2(IdealPoint(1.0), IdealPoint(3.0));
    double best = 1e300;
    for (int i = 1; i < 2000; ++i) {
        const double a = -kPi / 2 + kPi * i / 2000.0;
        const HPoint p(std::cos(a), -2.0 + std::sin(a) * 1.0);
        best = std::min(best, dist_to_geodesic(g2, p));
    }
    REQUIRE_THAT(dist_geodesics(g1, g2), Catch::Matchers::WithinAbs(best, 1e-5));
}

TEST_CASE("isometries preserve distance and geodesics") {
    for (int i = 0; i < 40; ++i) {
        const Isometry iso = random_isometry();
        const AmbientPoint p(random_point(), 0.3), q(random_point(), -1.1);
        REQUIRE_THAT(dist_ambient(iso.apply(p), iso.apply(q)),
                     Catch::Matchers::WithinAbs(dist_ambient(p, q), 1e-10));
        const GeodesicH2 g = geodesic_through(p.base, q.base);
        const GeodesicH2 gi = iso.apply(g);
        REQUIRE(std::abs(signed_sinh_distance(gi, iso.apply(p.base))) < 1e-8);
        REQUIRE(std::abs(signed_sinh_distance(gi, iso.apply(q.base))) < 1e-8);
    }
}

TEST_CASE("isometry examples") {
    const AmbientPoint p(1.2, 0.4, -2.0);
    const Isometry id = Isometry::identity();
    REQUIRE(dist_ambient(id.apply(p), p) < 1e-14);

    const GeodesicH2 axis(IdealPoint(0.0), IdealPoint::infinity());
    const double tau = 0.8;
    const Isometry tr = Isometry::hyperbolic_translation(axis, tau);
    const AmbientPoint moved = tr.apply(AmbientPoint(1, 0, 3));
    REQUIRE_THAT(moved.base.x, Catch::Matchers::WithinAbs(std::exp(tau), 1e-12));
    REQUIRE_THAT(moved.base.y, Catch::Matchers::WithinAbs(0.0, 1e-12));
    REQUIRE(moved.t == 3.0);

    // screw motion applied n times shifts t by n c and moves n tau along the axis
    const Isometry screw = Isometry::screw(axis, tau, 0.25);
    Isometry power = Isometry::identity();
    for (int n = 0; n < 5; ++n) power = screw.compose(power);
    const AmbientPoint s5 = power.apply(AmbientPoint(1, 0, 0));
    REQUIRE_THAT(s5.base.x, Catch::Matchers::WithinAbs(std::exp(5 * tau), 1e-9));
    REQUIRE_THAT(s5.t, Catch::Matchers::WithinAbs(5 * 0.25, 1e-12));

    // rotations fix their center
    const HPoint c(2.0, -1.0);
    const Isometry rot = Isometry::rotation(c, 1.3);
    REQUIRE(dist_h2(rot.apply(c), c) < 1e-12);
}

TEST_CASE("disk model conversion is a bijective isometry") {
    const DiskPoint o = disk_from_halfplane(HPoint(1, 0));
    REQUIRE(std::hypot(o.u, o.v) < 1e-14);
    // boundary behavior: x -> 0 approaches the unit circle
    REQUIRE(std::abs(1.0 - std::hypot(disk_from_halfplane(HPoint(1e-8, 2)).u,
                                      disk_from_halfplane(HPoint(1e-8, 2)).v)) < 1e-7);
    for (int i = 0; i < 100; ++i) {
        const HPoint p = random_point(), q = random_point();
        const HPoint back = halfplane_from_disk(disk_from_halfplane(p));
        REQUIRE_THAT(back.x, Catch::Matchers::WithinRel(p.x, 1e-12));
        REQUIRE_THAT(back.y, Catch::Matchers::WithinAbs(p.y, 1e-10));
        REQUIRE_THAT(dist_disk(disk_from_halfplane(p), disk_from_halfplane(q)),
                     Catch::Matchers::WithinAbs(dist_h2(p, q), 1e-10));
    }
}

TEST_CASE("polar points and direction angles") {
    for (double r : {0.5, 3.0, 25.0, 80.0}) {
        for (double phi : {0.0, 0.7, -2.2, 3.0}) {
            const HPoint p = polar_point(r, phi);
            REQUIRE_THAT(dist_h2(HPoint(1, 0), p), Catch::Matchers::WithinRel(r, 1e-9));
            REQUIRE_THAT(std::remainder(direction_angle(p) - phi, 2 * kPi),
                         Catch::Matchers::WithinAbs(0.0, 1e-9));
        }
    }
    // ideal angle conventions: infinity at 0, y increasing counterclockwise
    REQUIRE(ideal_angle(IdealPoint::infinity()) == 0.0);
    REQUIRE_THAT(ideal_angle(IdealPoint(0.0)), Catch::Matchers::WithinAbs(kPi, 1e-15));
    REQUIRE_THAT(ideal_angle(IdealPoint(1.0)), Catch::Matchers::WithinAbs(-kPi / 2, 1e-15));
    for (double y : {-4.2, -0.3, 0.0, 0.8, 17.0}) {
        const IdealPoint q = ideal_from_angle(ideal_angle(IdealPoint(y)));
        REQUIRE(!q.at_infinity);
        REQUIRE_THAT(q.value, Catch::Matchers::WithinAbs(y, 1e-9));
    }
}
