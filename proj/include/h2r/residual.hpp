#pragma once

// Finite-difference residuals of the two minimal-graph equations.
//
// Vertical graphs t = u(x, y) over the half-plane satisfy
//
//   u_xx (1 + x^2 u_y^2) + u_yy (1 + x^2 u_x^2)
//     - 2 x^2 u_xy u_x u_y - x u_x (u_x^2 + u_y^2) = 0,
//
// which is uniformly elliptic up to x = 0; the x = 0 column is evaluated
// with one-sided second-order stencils. Horizontal graphs y = v(x, t) over
// a vertical flat satisfy
//
//   v_xx (x^2 + v_t^2) + v_tt (1 + v_x^2)
//     - 2 v_xt v_x v_t - x v_x (1 + v_x^2) = 0,
//
// which degenerates at x = 0, so that column is excluded from reports.
//
// The module also measures the boundary decay of horizontal graphs near
// the ideal edge: the Lipschitz quotient |v|/x and the conormal tables
// sup |(x d/dx)^p (d/dt)^q v| / x, estimated on a log-spaced resampling
// s = -log x so that x d/dx becomes -d/ds.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <vector>

#include "h2r/errors.hpp"

namespace h2r {

enum class GraphOrientation { vertical, horizontal };

// Sampled graph on a rectangle [x0, x1] x [c0, c1]; the second coordinate
// is y for vertical graphs and t for horizontal ones.
struct GraphFunction {
    GraphOrientation orientation = GraphOrientation::vertical;
    double x0 = 0, x1 = 1;
    double c0 = 0, c1 = 1;
    int nx = 1, nc = 1;          // cell counts
    std::vector<double> values;  // (nx+1) * (nc+1), index i*(nc+1)+j

    double hx() const { return (x1 - x0) / nx; }
    double hc() const { return (c1 - c0) / nc; }
    double x_at(int i) const { return x0 + i * hx(); }
    double c_at(int j) const { return c0 + j * hc(); }
    double at(int i, int j) const { return values[size_t(i) * (nc + 1) + j]; }
    double& at(int i, int j) { return values[size_t(i) * (nc + 1) + j]; }

    void validate() const {
        if (x0 < 0) throw ShapeError("GraphFunction requires x0 >= 0");
        if (!(x1 > x0) || !(c1 > c0)) throw ShapeError("GraphFunction domain is empty");
        if (values.size() != size_t(nx + 1) * (nc + 1))
            throw ShapeError("GraphFunction value array does not match the grid");
        for (double v : values)
            if (!std::isfinite(v)) throw ShapeError("GraphFunction values must be finite");
    }

    static GraphFunction sample(GraphOrientation orient, double x0, double x1, double c0,
                                double c1, int nx, int nc,
                                const std::function<double(double, double)>& fn) {
        GraphFunction g;
        g.orientation = orient;
        g.x0 = x0;
        g.x1 = x1;
        g.c0 = c0;
        g.c1 = c1;
        g.nx = nx;
        g.nc = nc;
        g.values.resize(size_t(nx + 1) * (nc + 1));
        for (int i = 0; i <= nx; ++i)
            for (int j = 0; j <= nc; ++j) g.at(i, j) = fn(g.x_at(i), g.c_at(j));
        g.validate();
        return g;
    }
};

struct ResidualReport {
    double sup_norm = 0;
    double l2_norm = 0;
    double hx = 0, hc = 0;
    int nx = 0, nc = 0;
    std::vector<double> cells;       // grid-shaped; NaN where not evaluated
    std::vector<std::uint8_t> mask;  // 1 where evaluated

    double cell(int i, int j) const { return cells[size_t(i) * (nc + 1) + j]; }
};

namespace detail {

struct Derivs {
    double dx, dc, dxx, dcc, dxc;
};

// Central stencils at interior nodes; one-sided second-order x-stencils at
// i == 0 (used only for the uniformly elliptic vertical equation).
inline Derivs derivatives_at(const GraphFunction& g, int i, int j) {
    const double hx = g.hx(), hc = g.hc();
    Derivs d;
    d.dc = (g.at(i, j + 1) - g.at(i, j - 1)) / (2 * hc);
    d.dcc = (g.at(i, j + 1) - 2 * g.at(i, j) + g.at(i, j - 1)) / (hc * hc);
    if (i == 0) {
        d.dx = (-3 * g.at(0, j) + 4 * g.at(1, j) - g.at(2, j)) / (2 * hx);
        d.dxx = (2 * g.at(0, j) - 5 * g.at(1, j) + 4 * g.at(2, j) - g.at(3, j)) / (hx * hx);
        auto dyc = [&](int ii) { return (g.at(ii, j + 1) - g.at(ii, j - 1)) / (2 * hc); };
        d.dxc = (-3 * dyc(0) + 4 * dyc(1) - dyc(2)) / (2 * hx);
    } else {
        d.dx = (g.at(i + 1, j) - g.at(i - 1, j)) / (2 * hx);
        d.dxx = (g.at(i + 1, j) - 2 * g.at(i, j) + g.at(i - 1, j)) / (hx * hx);
        d.dxc = (g.at(i + 1, j + 1) - g.at(i + 1, j - 1) - g.at(i - 1, j + 1) +
                 g.at(i - 1, j - 1)) /
                (4 * hx * hc);
    }
    return d;
}

inline ResidualReport assemble(const GraphFunction& g,
                               const std::function<double(double, const Derivs&)>& op,
                               bool include_x0_column) {
    if (g.nx < 4 || g.nc < 4) throw ShapeError("residual needs an interior grid of at least 3x3");
    ResidualReport rep;
    rep.hx = g.hx();
    rep.hc = g.hc();
    rep.nx = g.nx;
    rep.nc = g.nc;
    rep.cells.assign(size_t(g.nx + 1) * (g.nc + 1), std::numeric_limits<double>::quiet_NaN());
    rep.mask.assign(rep.cells.size(), 0);
    double sum2 = 0;
    const int i_first = (include_x0_column && g.x0 == 0.0) ? 0 : 1;
    for (int i = i_first; i <= g.nx - 1; ++i) {
        const double x = g.x_at(i);
        if (!include_x0_column && x <= 0.0) continue;
        for (int j = 1; j <= g.nc - 1; ++j) {
            const double r = op(x, derivatives_at(g, i, j));
            rep.cells[size_t(i) * (g.nc + 1) + j] = r;
            rep.mask[size_t(i) * (g.nc + 1) + j] = 1;
            rep.sup_norm = std::max(rep.sup_norm, std::abs(r));
            sum2 += r * r;
        }
    }
    rep.l2_norm = std::sqrt(sum2 * rep.hx * rep.hc);
    return rep;
}

} // namespace detail

inline ResidualReport vertical_residual(const GraphFunction& u) {
    u.validate();
    if (u.orientation != GraphOrientation::vertical)
        throw ShapeError("vertical_residual needs a vertical graph");
    return detail::assemble(
        u,
        [](double x, const detail::Derivs& d) {
            const double x2 = x * x;
            return d.dxx * (1 + x2 * d.dc * d.dc) + d.dcc * (1 + x2 * d.dx * d.dx) -
                   2 * x2 * d.dxc * d.dx * d.dc - x * d.dx * (d.dx * d.dx + d.dc * d.dc);
        },
        /*include_x0_column=*/true);
}

inline ResidualReport horizontal_residual(const GraphFunction& v) {
    v.validate();
    if (v.orientation != GraphOrientation::horizontal)
        throw ShapeError("horizontal_residual needs a horizontal graph");
    return detail::assemble(
        v,
        [](double x, const detail::Derivs& d) {
            return d.dxx * (x * x + d.dc * d.dc) + d.dcc * (1 + d.dx * d.dx) -
                   2 * d.dxc * d.dx * d.dc - x * d.dx * (1 + d.dx * d.dx);
        },
        /*include_x0_column=*/false);
}

// Empirical Lipschitz quotient max |v(x,t)| / x over the window, taken on
// the three smallest positive-x grid columns.
inline double lipschitz_constant(const GraphFunction& v, double t_lo, double t_hi) {
    v.validate();
    if (v.orientation != GraphOrientation::horizontal)
        throw ShapeError("lipschitz_constant needs a horizontal graph");
    if (v.x0 > 0.01)
        throw WindowOutOfRange("grid must reach the ideal edge (x0 = 0 or x0 < 0.01)");
    if (t_hi < v.c0 || t_lo > v.c1) throw WindowOutOfRange("t window misses the grid");
    double best = 0;
    int taken = 0;
    for (int i = 0; i <= v.nx && taken < 3; ++i) {
        const double x = v.x_at(i);
        if (x <= 0) continue;
        ++taken;
        for (int j = 0; j <= v.nc; ++j) {
            const double t = v.c_at(j);
            if (t < t_lo || t > t_hi) continue;
            best = std::max(best, std::abs(v.at(i, j)) / x);
        }
    }
    return best;
}

struct ConormalTable {
    int p_max = 2, q_max = 2;
    std::vector<double> sup;  // (p_max+1) x (q_max+1), row-major in p

    double at(int p, int q) const { return sup[size_t(p) * (q_max + 1) + q]; }
    double& at(int p, int q) { return sup[size_t(p) * (q_max + 1) + q]; }
};

// Tables sup |(x d/dx)^p (d/dt)^q v| / x for p <= p_max, q <= q_max,
// measured on the log-spaced columns s = -log x in (0, x_window].
inline ConormalTable conormal_diagnostic(const GraphFunction& v, int p_max = 2, int q_max = 2,
                                         double x_window = 0.25) {
    v.validate();
    if (v.orientation != GraphOrientation::horizontal)
        throw ShapeError("conormal_diagnostic needs a horizontal graph");
    if (p_max < 0 || p_max > 2 || q_max < 0 || q_max > 2)
        throw ValidationError("conormal orders must lie in 0..2");
    if (v.x0 > 0.01)
        throw WindowOutOfRange("grid must reach the ideal edge (x0 = 0 or x0 < 0.01)");
    const double hx = v.hx();
    const double x_lo = std::max(v.x0, 0.0) + 2.0 * hx;
    const double x_hi = std::min(x_window, v.x1 - 2.0 * hx);
    if (!(x_hi > x_lo)) throw WindowOutOfRange("x window too narrow for the grid");

    const int ns = 41;
    const double s_lo = -std::log(x_hi), s_hi = -std::log(x_lo);
    const double ds = (s_hi - s_lo) / (ns - 1);

    // cubic Lagrange interpolation of the column values at x = exp(-s)
    auto interp = [&](double x, int j) {
        int i1 = int((x - v.x0) / hx);
        i1 = std::max(1, std::min(v.nx - 2, i1));
        const double xm1 = v.x_at(i1 - 1);
        const double r = (x - xm1) / hx;  // in [0,3] around nodes i1-1..i1+2
        double w[4];
        w[0] = -(r - 1) * (r - 2) * (r - 3) / 6.0;
        w[1] = r * (r - 2) * (r - 3) / 2.0;
        w[2] = -r * (r - 1) * (r - 3) / 2.0;
        w[3] = r * (r - 1) * (r - 2) / 6.0;
        double acc = 0;
        for (int k = 0; k < 4; ++k) acc += w[k] * v.at(i1 - 1 + k, j);
        return acc;
    };

    std::vector<double> grid(size_t(ns) * (v.nc + 1));
    for (int k = 0; k < ns; ++k)
        for (int j = 0; j <= v.nc; ++j)
            grid[size_t(k) * (v.nc + 1) + j] = interp(std::exp(-(s_lo + k * ds)), j);

    const double ht = v.hc();
    auto value = [&](int k, int j) { return grid[size_t(k) * (v.nc + 1) + j]; };
    // central difference powers in s and t
    auto d_st = [&](int p, int q, int k, int j) {
        auto dt_q = [&](int kk, int jj) {
            if (q == 0) return value(kk, jj);
            if (q == 1) return (value(kk, jj + 1) - value(kk, jj - 1)) / (2 * ht);
            return (value(kk, jj + 1) - 2 * value(kk, jj) + value(kk, jj - 1)) / (ht * ht);
        };
        if (p == 0) return dt_q(k, j);
        if (p == 1) return (dt_q(k + 1, j) - dt_q(k - 1, j)) / (2 * ds);
        return (dt_q(k + 1, j) - 2 * dt_q(k, j) + dt_q(k - 1, j)) / (ds * ds);
    };

    ConormalTable table;
    table.p_max = p_max;
    table.q_max = q_max;
    table.sup.assign(size_t(p_max + 1) * (q_max + 1), 0.0);
    for (int p = 0; p <= p_max; ++p)
        for (int q = 0; q <= q_max; ++q) {
            double sup = 0;
            for (int k = p > 0 ? 1 : 0; k < (p > 0 ? ns - 1 : ns); ++k) {
                const double x = std::exp(-(s_lo + k * ds));
                for (int j = q > 0 ? 1 : 0; j <= (q > 0 ? v.nc - 1 : v.nc); ++j)
                    sup = std::max(sup, std::abs(d_st(p, q, k, j)) / x);
            }
            table.at(p, q) = sup;
        }
    return table;
}

} // namespace h2r
