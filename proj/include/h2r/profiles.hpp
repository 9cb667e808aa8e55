#pragma once

// Profile curves of the explicit minimal families.
//
// Tall rectangles: the slice of the surface at height t is an equidistant
// curve of the axis geodesic, and the graph is t = f(s) where s is the
// sinh-distance coordinate and
//
//     f'(s) = -1 / sqrt(C s^4 + (2C - 1) s^2 + C - 1),   C in (0, 1].
//
// The radicand factors as C (s^2 + 1)(s^2 - s_min^2) with
// s_min = sqrt((1 - C)/C), so f lives on [s_min, inf) and decreases from
// f(s_min) to 0. The full surface is a bigraph over the concave region
// {s >= s_min}, hence its height is ell(C) = 2 f(s_min). For C = 1 the
// integral has the closed form f(s) = asinh(1/s) and the rectangle is
// semi-infinite.
//
// Horizontal catenoids: r(t) is the Euclidean disk-model radius and solves
//
//     r' = +/- sqrt(C r^2 - (1 + r^4)/4),   C > 1/2,
//
// whose radicand is (1/4)(r^2 - r_neck^2)(r_out^2 - r^2) with
// r_neck^2 = 2C - sqrt(4C^2 - 1) and r_out = 1/r_neck. The half-height is
// b = t(1) and always satisfies 2b < pi.

#include <cmath>
#include <limits>
#include <utility>
#include <vector>

#include "h2r/errors.hpp"
#include "h2r/geometry.hpp"
#include "h2r/quadrature.hpp"

namespace h2r {

struct TallRectangleProfile {
    double C = 1.0;
    double s_min = 0.0;
    double height = 0.0;  // ell(C) = 2 f(s_min); +inf when C == 1
    double quad_tol = 1e-10;
    std::vector<std::pair<double, double>> f_samples;  // (s, f(s)), f decreasing

    bool semi_infinite() const { return C == 1.0; }

    // f(s) = integral_s^inf dsigma / sqrt(C sigma^4 + (2C-1) sigma^2 + C-1).
    double f(double s) const {
        if (s < s_min - 1e-12) throw OutOfRange("tall profile: s below s_min");
        s = std::max(s, s_min);
        if (semi_infinite()) return std::asinh(1.0 / s);
        if (s <= 2.0 * s_min) {
            // near the waist, integrate away from the sqrt singularity
            const double part = integrate_sqrt_left(
                [&](double u) { return 1.0 / std::sqrt(C * (u * u + 1.0) * (u + s_min)); },
                s_min, s, quad_tol);
            return 0.5 * height - part;
        }
        // tail via w = 1/sigma: integral_0^{1/s} dw/sqrt((1+w^2)(C-(1-C)w^2))
        return integrate(
            [&](double w) {
                return 1.0 / std::sqrt((1.0 + w * w) * (C - (1.0 - C) * w * w));
            },
            0.0, 1.0 / s, quad_tol);
    }

    double f_prime(double s) const {
        const double q = C * sq(sq(s)) + (2.0 * C - 1.0) * sq(s) + (C - 1.0);
        if (q <= 0) return -std::numeric_limits<double>::infinity();
        return -1.0 / std::sqrt(q);
    }

    // Inverse of f on (0, f(s_min)]; values above the waist value clamp to
    // s_min.
    double f_inverse(double t) const {
        if (t <= 0) throw OutOfRange("tall profile: f_inverse needs t > 0");
        if (semi_infinite()) return 1.0 / std::sinh(t);
        if (t >= 0.5 * height) return s_min;
        double lo = s_min, hi = std::max(2.0 * s_min, 1.0);
        while (f(hi) > t) hi *= 2.0;
        for (int it = 0; it < 200; ++it) {
            const double mid = 0.5 * (lo + hi);
            if (f(mid) > t)
                lo = mid;
            else
                hi = mid;
            if (hi - lo <= 1e-13 * std::max(1.0, hi)) break;
        }
        return 0.5 * (lo + hi);
    }
};

// ell(C) = 2 f(s_min) without building the sample table.
inline double tall_height(double C, double quad_tol = 1e-10) {
    if (!(C > 0.0) || C > 1.0) throw DomainError("tall height requires C in (0, 1]");
    if (C == 1.0) return std::numeric_limits<double>::infinity();
    // ell(C) = 2 integral_0^{w_max} dw / sqrt((1+w^2)(1-C)(w_max^2-w^2)),
    // w_max = 1/s_min; sqrt singularity at the right endpoint.
    const double w_max = std::sqrt(C / (1.0 - C));
    return 2.0 * integrate_sqrt_right(
                     [&](double w) {
                         return 1.0 / std::sqrt((1.0 + w * w) * (1.0 - C) * (w_max + w));
                     },
                     0.0, w_max, quad_tol);
}

inline TallRectangleProfile tall_profile(double C, double quad_tol = 1e-10) {
    if (!(C > 0.0) || C > 1.0) throw DomainError("tall_profile requires C in (0, 1]");
    TallRectangleProfile p;
    p.C = C;
    p.quad_tol = quad_tol;
    p.height = tall_height(C, quad_tol);
    if (C == 1.0) {
        p.s_min = 0.0;
    } else {
        p.s_min = std::sqrt((1.0 - C) / C);
    }
    const int n_samples = 48;
    const double s0 = (C == 1.0) ? 1e-3 : p.s_min;
    for (int i = 0; i < n_samples; ++i) {
        const double s = s0 + (std::exp(0.18 * i) - 1.0);
        p.f_samples.emplace_back(s, p.f(s));
    }
    return p;
}

struct CatenoidProfile {
    double C = 1.0;
    double r_neck = 0.0;
    double half_height = 0.0;  // b; the catenoid spans |t| < b, 2b < pi
    double quad_tol = 1e-10;
    std::vector<std::pair<double, double>> r_samples;  // (t, r(t)) on [-b, b]

    double radicand(double r) const { return C * sq(r) - (1.0 + sq(sq(r))) / 4.0; }

    // t(r) = time from the neck: integral_{r_neck}^r of 1/sqrt(radicand).
    double t_of_r(double r) const {
        if (r < r_neck - 1e-12 || r > 1.0 + 1e-12)
            throw OutOfRange("catenoid profile: r outside [r_neck, 1]");
        r = std::min(std::max(r, r_neck), 1.0);
        const double r_out2 = 2.0 * C + std::sqrt(4.0 * sq(C) - 1.0);
        return integrate_sqrt_left(
            [&](double u) { return 2.0 / std::sqrt((u + r_neck) * (r_out2 - sq(u))); },
            r_neck, r, quad_tol);
    }

    // radius at height t in [-b, b]
    double r_of_t(double t) const {
        t = std::abs(t);
        if (t > half_height + 1e-12) throw OutOfRange("catenoid profile: |t| > b");
        t = std::min(t, half_height);
        double lo = r_neck, hi = 1.0;
        for (int it = 0; it < 200; ++it) {
            const double mid = 0.5 * (lo + hi);
            if (t_of_r(mid) < t)
                lo = mid;
            else
                hi = mid;
            if (hi - lo <= 1e-14) break;
        }
        return 0.5 * (lo + hi);
    }
};

// b(C) without building the sample table.
inline double catenoid_half_height(double C, double quad_tol = 1e-10) {
    if (!(C > 0.5))
        throw DomainError("catenoid height requires C > 1/2 (no profile otherwise)");
    const double r_neck = std::sqrt(2.0 * C - std::sqrt(4.0 * sq(C) - 1.0));
    const double r_out2 = 2.0 * C + std::sqrt(4.0 * sq(C) - 1.0);
    return integrate_sqrt_left(
        [&](double u) { return 2.0 / std::sqrt((u + r_neck) * (r_out2 - sq(u))); }, r_neck,
        1.0, quad_tol);
}

inline CatenoidProfile catenoid_profile(double C, double quad_tol = 1e-10) {
    if (!(C > 0.5))
        throw DomainError("catenoid_profile requires C > 1/2 (no profile otherwise)");
    CatenoidProfile p;
    p.C = C;
    p.quad_tol = quad_tol;
    p.r_neck = std::sqrt(2.0 * C - std::sqrt(4.0 * sq(C) - 1.0));
    p.half_height = p.t_of_r(1.0);
    const int n = 33;
    for (int i = -n; i <= n; ++i) {
        const double r = p.r_neck + (1.0 - p.r_neck) * sq(double(std::abs(i)) / n);
        const double t = (i < 0 ? -1.0 : 1.0) * p.t_of_r(r);
        p.r_samples.emplace_back(t, r);
    }
    return p;
}

// Invert the height relation 2b(C) = ell for ell in (0, pi).
inline double catenoid_constant_for_height(double ell, double quad_tol = 1e-10) {
    if (!(ell > 0.0) || !(ell < kPi))
        throw DomainError("catenoid height must lie in (0, pi)");
    auto height = [&](double C) { return 2.0 * catenoid_half_height(C, quad_tol); };
    double lo = 0.5 + 1e-9, hi = 1.0;
    while (height(hi) > ell) hi *= 2.0;
    for (int it = 0; it < 120; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (height(mid) > ell)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

// Invert ell(C) = L for L > pi (tall rectangles of prescribed height).
inline double tall_constant_for_height(double L, double quad_tol = 1e-10) {
    if (!(L > kPi)) throw DomainError("tall rectangle height must exceed pi");
    auto height = [&](double C) { return tall_height(C, quad_tol); };
    double lo = 1e-9, hi = 0.5;
    while (height(hi) < L) hi = 0.5 * (1.0 + hi);
    for (int it = 0; it < 120; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (height(mid) < L)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

} // namespace h2r
