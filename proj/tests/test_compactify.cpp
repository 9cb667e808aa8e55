#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "h2r/compactify.hpp"

using namespace h2r;

namespace {

std::mt19937& rng() {
    static std::mt19937 gen(911);
    return gen;
}

DivergingSample vertical_ray(int n = 30) {
    DivergingSample s{{}, AmbientPoint(1, 0, 0)};
    for (int k = 1; k <= n; ++k) s.points.push_back(AmbientPoint(1, 0, k));
    return s;
}

DivergingSample horizontal_ray(int n = 35) {
    DivergingSample s{{}, AmbientPoint(1, 0, 0)};
    for (int k = 1; k <= n; ++k) s.points.push_back(AmbientPoint(std::exp(double(k)), 0, 0));
    return s;
}

DivergingSample diagonal_ray(double r0, int n = 40) {
    DivergingSample s{{}, AmbientPoint(1, 0, 0)};
    for (int k = 1; k <= n; ++k) s.points.push_back(AmbientPoint(std::exp(double(k)), 0, r0 * k));
    return s;
}

} // namespace

TEST_CASE("geodesic_limit classifies synthetic rays") {
    const auto pole = geodesic_limit(vertical_ray());
    REQUIRE(std::holds_alternative<GeodesicBoundaryPoint>(pole));
    const auto pole_pt = std::get<GeodesicBoundaryPoint>(pole);
    REQUIRE(std::get<PolePoint>(pole_pt).sign == +1);

    const auto eq = geodesic_limit(horizontal_ray());
    const auto eq_pt = std::get<GeodesicBoundaryPoint>(eq);
    REQUIRE(std::get<EquatorPoint>(eq_pt).theta.at_infinity);

    const auto ch = geodesic_limit(diagonal_ray(0.7));
    const auto ch_pt = std::get<GeodesicBoundaryPoint>(ch);
    const auto& c = std::get<ChamberPoint>(ch_pt);
    REQUIRE(c.theta.at_infinity);
    REQUIRE(c.sign == +1);
    REQUIRE_THAT(c.slope, Catch::Matchers::WithinAbs(0.7, 1e-9));
}

TEST_CASE("geodesic_limit requires a long enough escaped tail") {
    DivergingSample s{{}, AmbientPoint(1, 0, 0)};
    for (int k = 1; k <= 24; ++k) s.points.push_back(AmbientPoint(1, 0, k));
    ClassifyConfig cfg;
    cfg.escape_radius = 21.0;  // only 3 points escape
    REQUIRE_THROWS_AS(geodesic_limit(s, cfg), SampleTooShort);
}

TEST_CASE("geodesic_limit returns NoLimit on oscillating slopes") {
    DivergingSample s{{}, AmbientPoint(1, 0, 0)};
    for (int k = 1; k <= 40; ++k) {
        const double slope = (k % 2 == 0) ? 0.3 : 0.7;
        s.points.push_back(AmbientPoint(std::exp(double(k)), 0, slope * k));
    }
    const auto out = geodesic_limit(s);
    REQUIRE(std::holds_alternative<NoLimit>(out));
    REQUIRE(std::get<NoLimit>(out).slope_fluctuation > 0.1);
}

TEST_CASE("geodesic_limit slope is basepoint independent") {
    ClassifyConfig cfg;
    cfg.escape_radius = 50.0;
    DivergingSample s = diagonal_ray(0.37, 70);
    const auto a = std::get<GeodesicBoundaryPoint>(geodesic_limit(s, cfg));
    s.basepoint = AmbientPoint(2.0, 1.0, 5.0);
    const auto b = std::get<GeodesicBoundaryPoint>(geodesic_limit(s, cfg));
    REQUIRE_THAT(std::get<ChamberPoint>(a).slope,
                 Catch::Matchers::WithinAbs(std::get<ChamberPoint>(b).slope, 1e-6));
    REQUIRE(std::get<ChamberPoint>(a).theta == std::get<ChamberPoint>(b).theta);
}

TEST_CASE("geodesic_limit is invariant under vertical translation") {
    DivergingSample s = horizontal_ray(60);
    ClassifyConfig cfg;
    cfg.escape_radius = 40.0;
    const auto base = std::get<GeodesicBoundaryPoint>(geodesic_limit(s, cfg));
    DivergingSample shifted = s;
    for (auto& p : shifted.points) p = AmbientPoint(p.base, p.t + 10.0);
    shifted.basepoint = AmbientPoint(shifted.basepoint.base, shifted.basepoint.t);
    const auto moved = std::get<GeodesicBoundaryPoint>(geodesic_limit(shifted, cfg));
    REQUIRE(std::get<EquatorPoint>(base).theta == std::get<EquatorPoint>(moved).theta);

    DivergingSample d = diagonal_ray(0.4, 70);
    cfg.escape_radius = 50.0;
    const auto s1 = std::get<ChamberPoint>(std::get<GeodesicBoundaryPoint>(geodesic_limit(d, cfg)));
    for (auto& p : d.points) p = AmbientPoint(p.base, p.t + 7.5);
    const auto s2 = std::get<ChamberPoint>(std::get<GeodesicBoundaryPoint>(geodesic_limit(d, cfg)));
    REQUIRE_THAT(s1.slope, Catch::Matchers::WithinAbs(s2.slope, 1e-9));
}

TEST_CASE("limits transform covariantly under isometries") {
    std::uniform_real_distribution<double> u(-1.5, 1.5);
    for (int trial = 0; trial < 8; ++trial) {
        Isometry iso = Isometry::hyperbolic_translation(
            GeodesicH2(IdealPoint(u(rng())), IdealPoint::infinity()), u(rng()));
        iso = iso.compose(Isometry::rotation(HPoint(1.5, -0.5), u(rng())));
        iso.vertical_shift = u(rng());

        DivergingSample s = diagonal_ray(0.55, 60);
        ClassifyConfig cfg;
        cfg.escape_radius = 45.0;
        const auto before =
            std::get<ChamberPoint>(std::get<GeodesicBoundaryPoint>(geodesic_limit(s, cfg)));
        DivergingSample mapped{{}, iso.apply(s.basepoint)};
        for (const auto& p : s.points) mapped.points.push_back(iso.apply(p));
        const auto after =
            std::get<ChamberPoint>(std::get<GeodesicBoundaryPoint>(geodesic_limit(mapped, cfg)));
        REQUIRE_THAT(after.slope, Catch::Matchers::WithinAbs(before.slope, 1e-6));
        REQUIRE(after.sign == before.sign);
        const IdealPoint expect_theta = iso.apply(before.theta);
        REQUIRE_THAT(ideal_angle(after.theta),
                     Catch::Matchers::WithinAbs(ideal_angle(expect_theta), 1e-6));
    }
}

TEST_CASE("product_limit classifies synthetic rays") {
    DivergingSample s{{}, AmbientPoint(1, 0, 0)};
    for (int k = 1; k <= 35; ++k)
        s.points.push_back(AmbientPoint(std::exp(double(k)), 0, 5.0 - std::pow(2.0, -k)));
    const auto vc = std::get<ProductBoundaryPoint>(product_limit(s));
    const auto& v = std::get<VerticalCylinderPoint>(vc);
    REQUIRE(v.theta.at_infinity);
    REQUIRE_THAT(v.t, Catch::Matchers::WithinAbs(5.0, 1e-6));

    const auto cap = std::get<ProductBoundaryPoint>(product_limit(vertical_ray()));
    const auto& c = std::get<CapPoint>(cap);
    REQUIRE(c.sign == +1);
    REQUIRE(dist_h2(c.p, HPoint(1, 0)) < 1e-12);

    const auto corner = std::get<ProductBoundaryPoint>(product_limit(diagonal_ray(1.0)));
    const auto& k = std::get<CornerPoint>(corner);
    REQUIRE(k.theta.at_infinity);
    REQUIRE(k.sign == +1);
}

TEST_CASE("product and geodesic limits are compatible with the correspondence") {
    for (double r0 : {0.3, 1.0, 2.5}) {
        DivergingSample s = diagonal_ray(r0, 45);
        const auto g = std::get<GeodesicBoundaryPoint>(geodesic_limit(s));
        const auto p = std::get<ProductBoundaryPoint>(product_limit(s));
        REQUIRE(region_contains(product_to_geodesic(p), g, 1e-6));
    }
}

TEST_CASE("correspondence on the three boundary pieces") {
    const IdealPoint th(2.0);
    const auto cyl = product_to_geodesic(VerticalCylinderPoint{th, 7.0});
    REQUIRE(region_contains(cyl, GeodesicBoundaryPoint(EquatorPoint{th})));
    REQUIRE(!region_contains(cyl, GeodesicBoundaryPoint(PolePoint{+1})));

    const auto cap = product_to_geodesic(CapPoint{+1, HPoint(3, 1)});
    REQUIRE(region_contains(cap, GeodesicBoundaryPoint(PolePoint{+1})));

    const auto chamber = product_to_geodesic(CornerPoint{th, -1});
    REQUIRE(region_contains(chamber, GeodesicBoundaryPoint(EquatorPoint{th})));
    REQUIRE(region_contains(chamber, GeodesicBoundaryPoint(PolePoint{-1})));
    REQUIRE(region_contains(chamber, GeodesicBoundaryPoint(ChamberPoint{th, -1, 2.5})));
    REQUIRE(!region_contains(chamber, GeodesicBoundaryPoint(ChamberPoint{th, +1, 2.5})));

    const auto back = geodesic_to_product(ChamberPoint{th, +1, 2.5});
    REQUIRE(region_contains(back, ProductBoundaryPoint(CornerPoint{th, +1})));
    REQUIRE(std::holds_alternative<CapRegion>(geodesic_to_product(PolePoint{+1})));
    REQUIRE(std::holds_alternative<CylinderLine>(geodesic_to_product(EquatorPoint{th})));
}

TEST_CASE("round-trip containment on random boundary points") {
    std::uniform_real_distribution<double> uy(-5, 5), ut(-4, 4), us(0.1, 6.0);
    std::bernoulli_distribution flip(0.5);
    for (int i = 0; i < 300; ++i) {
        const IdealPoint th = flip(rng()) ? IdealPoint(uy(rng())) : IdealPoint::infinity();
        const int sign = flip(rng()) ? +1 : -1;
        ProductBoundaryPoint p;
        switch (i % 3) {
            case 0: p = VerticalCylinderPoint{th, ut(rng())}; break;
            case 1: p = CapPoint{sign, HPoint(1.0 + us(rng()), uy(rng()))}; break;
            default: p = CornerPoint{th, sign}; break;
        }
        // every geodesic point of the image region must map back to a
        // product region containing p
        const auto region = product_to_geodesic(p);
        std::vector<GeodesicBoundaryPoint> samples;
        if (const auto* cc = std::get_if<ChamberClosure>(&region)) {
            samples.push_back(EquatorPoint{cc->theta});
            samples.push_back(PolePoint{cc->sign});
            samples.push_back(ChamberPoint{cc->theta, cc->sign, us(rng())});
        } else {
            samples.push_back(std::get<GeodesicBoundaryPoint>(region));
        }
        for (const auto& g : samples) REQUIRE(region_contains(geodesic_to_product(g), p));
    }
}

TEST_CASE("boundary point JSON round trip") {
    const ProductBoundaryPoint pts[] = {
        ProductBoundaryPoint(VerticalCylinderPoint{IdealPoint(1.5), -2.0}),
        ProductBoundaryPoint(CapPoint{-1, HPoint(2, 3)}),
        ProductBoundaryPoint(CornerPoint{IdealPoint::infinity(), +1})};
    for (const auto& p : pts) {
        const auto j = to_json(p);
        REQUIRE(region_contains(ProductBoundaryRegion(product_point_from_json(j)), p));
    }
    const GeodesicBoundaryPoint gs[] = {
        GeodesicBoundaryPoint(EquatorPoint{IdealPoint::infinity()}),
        GeodesicBoundaryPoint(PolePoint{-1}),
        GeodesicBoundaryPoint(ChamberPoint{IdealPoint(0.25), +1, 1.75})};
    for (const auto& g : gs) {
        const auto j = to_json(g);
        REQUIRE(region_contains(GeodesicBoundaryRegion(geodesic_point_from_json(j)), g));
    }
    REQUIRE(to_json(gs[2])["kind"] == "chamber");
    REQUIRE_THROWS_AS(geodesic_point_from_json(nlohmann::json{{"kind", "nope"}}),
                      ValidationError);
}
