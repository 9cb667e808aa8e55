#pragma once

// Adaptive Simpson quadrature plus the square-root endpoint substitution
// used by the profile integrals. Integrands with an inverse-square-root
// singularity at the left endpoint a are regularized by s = a + sigma^2,
// which turns ds/sqrt(s - a) into a smooth 2*sigma*dsigma/sigma factor.

#include <cmath>
#include <functional>

#include "h2r/errors.hpp"

namespace h2r {

namespace detail {

struct SimpsonState {
    int max_depth;
    double tol;
};

inline double simpson_step(const std::function<double(double)>& f, double a, double fa,
                           double b, double fb, double m, double fm, double whole,
                           const SimpsonState& st, int depth) {
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth >= st.max_depth) {
        if (std::abs(delta) > 15.0 * st.tol)
            throw QuadratureFailure("adaptive Simpson: max depth reached before tolerance");
        return left + right + delta / 15.0;
    }
    if (std::abs(delta) <= 15.0 * st.tol) return left + right + delta / 15.0;
    SimpsonState half{st.max_depth, 0.5 * st.tol};
    return simpson_step(f, a, fa, m, fm, lm, flm, left, half, depth + 1) +
           simpson_step(f, m, fm, b, fb, rm, frm, right, half, depth + 1);
}

} // namespace detail

// Integral of a smooth f over [a, b].
inline double integrate(const std::function<double(double)>& f, double a, double b,
                        double tol = 1e-10, int max_depth = 48) {
    if (a == b) return 0.0;
    const double m = 0.5 * (a + b);
    const double fa = f(a), fb = f(b), fm = f(m);
    if (!std::isfinite(fa) || !std::isfinite(fb) || !std::isfinite(fm))
        throw QuadratureFailure("integrate: integrand not finite on [a, b]");
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return detail::simpson_step(f, a, fa, b, fb, m, fm, whole, {max_depth, tol}, 0);
}

// Integral over [a, b] of g(s)/sqrt(s - a), g smooth, via s = a + sigma^2.
inline double integrate_sqrt_left(const std::function<double(double)>& g, double a, double b,
                                  double tol = 1e-10) {
    const double w = std::sqrt(b - a);
    return integrate([&](double sigma) { return 2.0 * g(a + sigma * sigma); }, 0.0, w, tol);
}

// Integral over [a, b] of g(s)/sqrt(b - s), g smooth, via s = b - sigma^2.
inline double integrate_sqrt_right(const std::function<double(double)>& g, double a, double b,
                                   double tol = 1e-10) {
    const double w = std::sqrt(b - a);
    return integrate([&](double sigma) { return 2.0 * g(b - sigma * sigma); }, 0.0, w, tol);
}

} // namespace h2r
