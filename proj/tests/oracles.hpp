#pragma once

// Test-side numerical oracles, independent of the library's evaluation paths:
// adaptive Simpson quadrature and brute-force combinatorics. Kept separate
// from the implementation so series/closed-form code is always checked
// against a different route.

#include <cmath>
#include <functional>
#include <numeric>
#include <vector>

namespace oracles {

namespace detail {

inline double simpson(const std::function<double(double)>& f, double a, double b, double fa,
                      double fm, double fb, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    if (depth > 48 || std::fabs(left + right - whole) < 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return simpson(f, a, m, fa, flm, fm, 0.5 * tol, depth + 1) +
           simpson(f, m, b, fm, frm, fb, 0.5 * tol, depth + 1);
}

} // namespace detail

// Adaptive Simpson with a relative accuracy target: a coarse composite pass
// sets the scale, then the recursion refines against an absolute tolerance
// derived from it.
inline double integrate(const std::function<double(double)>& f, double a, double b,
                        double rel_tol = 1e-12) {
    if (a == b) return 0.0;
    double rough = 0.0;
    const int panels = 64;
    const double h = (b - a) / panels;
    for (int i = 0; i < panels; ++i) {
        const double lo = a + i * h;
        rough += h / 6.0 * (f(lo) + 4.0 * f(lo + 0.5 * h) + f(lo + h));
    }
    const double tol = std::max(std::fabs(rough) * rel_tol, 1e-305);
    return detail::simpson(f, a, b, f(a), f(0.5 * (a + b)), f(b), tol, 0);
}

inline double integrate_segmented(const std::function<double(double)>& f,
                                  const std::vector<double>& edges, double tol = 1e-12) {
    double total = 0.0;
    for (size_t i = 0; i + 1 < edges.size(); ++i)
        total += integrate(f, edges[i], edges[i + 1], tol);
    return total;
}

// gamma(s, x) = int_0^x t^{s-1} e^{-t} dt. For s < 1 the substitution
// t = v^{1/s} removes the endpoint singularity; for s >= 1 the integrand is
// already smooth on [0, x].
inline double lower_inc_gamma(double s, double x) {
    if (s >= 1.0)
        return integrate([s](double t) { return std::pow(t, s - 1.0) * std::exp(-t); }, 0.0, x,
                         1e-14);
    return integrate([s](double v) { return std::exp(-std::pow(v, 1.0 / s)) / s; }, 0.0,
                     std::pow(x, s), 1e-14);
}

// Euler integral of 2F1 for c > b > 0, z <= 0. For very negative z the mass
// concentrates on t = O(1/|z|); the integral is split there.
inline double hyp2f1_euler(double a, double b, double c, double z) {
    const double pref = std::exp(std::lgamma(c) - std::lgamma(b) - std::lgamma(c - b));
    auto f = [&](double t) {
        double v = std::pow(1.0 - z * t, -a);
        if (b != 1.0) v *= std::pow(t, b - 1.0);
        if (c - b != 1.0) v *= std::pow(1.0 - t, c - b - 1.0);
        return v;
    };
    const double split = std::min(0.5, 20.0 / (1.0 - z));
    return pref * (integrate(f, 0.0, split, 1e-13) + integrate(f, split, 1.0, 1e-13));
}

// Partial Bell polynomial by explicit enumeration of set partitions of
// {1..n} into k blocks (restricted growth strings).
inline double bell_bruteforce(int n, int k, const std::vector<double>& x) {
    std::vector<int> assign(static_cast<size_t>(n), 0);
    double total = 0.0;
    const auto eval = [&]() {
        int blocks = 0;
        for (int v : assign) blocks = std::max(blocks, v + 1);
        if (blocks != k) return;
        std::vector<int> size(static_cast<size_t>(blocks), 0);
        for (int v : assign) size[static_cast<size_t>(v)]++;
        double prod = 1.0;
        for (int s : size) prod *= x[static_cast<size_t>(s - 1)];
        total += prod;
    };
    // enumerate restricted growth strings
    std::function<void(int, int)> rec = [&](int i, int maxv) {
        if (i == n) {
            eval();
            return;
        }
        for (int v = 0; v <= std::min(maxv + 1, k - 1); ++v) {
            assign[static_cast<size_t>(i)] = v;
            rec(i + 1, std::max(maxv, v));
        }
    };
    rec(0, -1);
    return total;
}

// Central finite differences with 5-point stencils.
inline double fd_derivative(const std::function<double(double)>& f, double s, int order,
                            double h) {
    const double f2m = f(s - 2 * h), f1m = f(s - h), f0 = f(s), f1p = f(s + h), f2p = f(s + 2 * h);
    switch (order) {
    case 1: return (f2m - 8 * f1m + 8 * f1p - f2p) / (12 * h);
    case 2: return (-f2m + 16 * f1m - 30 * f0 + 16 * f1p - f2p) / (12 * h * h);
    case 3: return (-f2m + 2 * f1m - 2 * f1p + f2p) / (2 * h * h * h);
    case 4: return (f2m - 4 * f1m + 6 * f0 - 4 * f1p + f2p) / (h * h * h * h);
    default: return 0.0;
    }
}

} // namespace oracles
