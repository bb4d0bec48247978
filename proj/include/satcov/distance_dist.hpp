#pragma once

#include <cmath>
#include <stdexcept>

#include "satcov/common.hpp"
#include "satcov/geometry.hpp"

namespace satcov {

// Density of the squared satellite-to-CH distance,
//   f(x) = pi/(2 V L) [tau2(x)^2 - tau1(x)^2] on [d_min^2, d_max^2],
// zero outside.
inline double pdf_dk2(double x, const SystemGeometry& g) {
    if (x < g.d_min * g.d_min || x > g.d_max * g.d_max) return 0.0;
    const double t2 = g.tau2(x);
    const double t1 = g.tau1(x);
    const double v = kPi / (2.0 * g.V * g.L) * (t2 * t2 - t1 * t1);
    return std::max(v, 0.0);
}

// Marginal CDF of the CH radius l_k, uniform in the shell cone.
inline double cdf_lk(double x, const SystemGeometry& g) {
    if (x <= g.R) return 0.0;
    if (x >= g.R + g.H_U) return 1.0;
    const double r3 = g.R * g.R * g.R;
    const double o3 = (g.R + g.H_U) * (g.R + g.H_U) * (g.R + g.H_U);
    return (x * x * x - r3) / (o3 - r3);
}

namespace detail {

// Antiderivative pieces of tau^2 on each branch.
// Integral of (L - sqrt(x))^2 dx:
inline double anti_lmsqrt(double L, double x) {
    return L * L * x - 4.0 / 3.0 * L * std::pow(x, 1.5) + 0.5 * x * x;
}
// Integral of (L cos(xi0) - sqrt(x - L^2 sin(xi0)^2))^2 dx:
inline double anti_cone(double Lc, double c, double x) {
    const double y = x - c;
    return Lc * Lc * x - 4.0 / 3.0 * Lc * std::pow(y, 1.5) + 0.5 * y * y;
}

inline double cdf_dk2_segment(const SystemGeometry& g, double lo, double hi) {
    // Branches are constant within a segment; sample the midpoint to pick them.
    const double mid = 0.5 * (lo + hi);
    const double Lc = g.L * std::cos(g.xi0);
    const double c = g.L * g.L * square(std::sin(g.xi0));
    double upper;
    if (Lc - std::sqrt(std::max(mid - c, 0.0)) < g.R + g.H_U)
        upper = anti_cone(Lc, c, hi) - anti_cone(Lc, c, lo);
    else
        upper = square(g.R + g.H_U) * (hi - lo);
    double lower;
    if (g.L - std::sqrt(mid) > g.R)
        lower = anti_lmsqrt(g.L, hi) - anti_lmsqrt(g.L, lo);
    else
        lower = g.R * g.R * (hi - lo);
    return kPi / (2.0 * g.V * g.L) * (upper - lower);
}

} // namespace detail

// CDF of d_k^2, integrating pdf_dk2 from the support start. Piecewise closed
// form (each tau branch integrates elementarily).
inline double cdf_dk2(double y, const SystemGeometry& g) {
    const double lo = g.d_min * g.d_min;
    const double hi = g.d_max * g.d_max;
    if (y <= lo) return 0.0;
    if (y >= hi) return 1.0;
    double acc = 0.0;
    double prev = lo;
    for (double edge : g.dk2_breakpoints()) {
        if (edge <= lo) continue;
        const double stop = std::min(edge, y);
        if (stop > prev) acc += detail::cdf_dk2_segment(g, prev, stop);
        prev = stop;
        if (prev >= y) break;
    }
    if (prev < y) acc += detail::cdf_dk2_segment(g, prev, y);
    return clamp01(acc);
}

// CH-to-UAV link distance density 3x^2/D^3 on [0, D].
inline double pdf_dkj(double x, double D) {
    if (!(D > 0.0)) throw std::domain_error("pdf_dkj: D must be positive");
    if (x < 0.0 || x > D) return 0.0;
    return 3.0 * x * x / (D * D * D);
}

// Conditional density of the squared interferer-to-UAV distance given the
// serving distance d_kj, for an interferer uniform in the [D_min, D_max]
// shell around the serving CH:
//   f(x | d_kj) = pi [tau4^2 - tau3^2] / (2 d_kj V1),
//   tau4 = min{D_max, sqrt(x)+d_kj}, tau3 = max{D_min, sqrt(x)-d_kj},
// supported on [(D_min-d_kj)^2, (D_max+d_kj)^2].
inline double pdf_djI1_given_dkj(double x, double d_kj, const DeploymentParams& dep) {
    if (!(d_kj > 0.0) || d_kj > dep.D)
        throw std::domain_error("pdf_djI1_given_dkj: require 0 < d_kj <= D");
    const double lo = square(dep.D_min - d_kj);
    const double hi = square(dep.D_max + d_kj);
    if (x < lo || x > hi) return 0.0;
    const double r = std::sqrt(x);
    const double tau4 = std::min(dep.D_max, r + d_kj);
    const double tau3 = std::max(dep.D_min, r - d_kj);
    return std::max(kPi * (tau4 * tau4 - tau3 * tau3) / (2.0 * d_kj * dep.V1), 0.0);
}

} // namespace satcov
