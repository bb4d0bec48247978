#pragma once

#include <cmath>
#include <stdexcept>

#include "satcov/common.hpp"
#include "satcov/quadrature.hpp"
#include "satcov/specfun/gamma.hpp"

namespace satcov {

namespace detail {

// Defining series at |w| < 1. Terms via multiplicative recurrence, Kahan
// accumulation, stop on term ratio 1e-15.
inline double hyp2f1_series(double a, double b, double c, double w) {
    KahanSum sum;
    sum.add(1.0);
    double term = 1.0;
    for (int k = 0; k < 2000000; ++k) {
        term *= (a + k) * (b + k) / ((c + k) * (k + 1.0)) * w;
        sum.add(term);
        if (std::fabs(term) <= 1e-15 * std::fabs(sum.value())) return sum.value();
    }
    throw numeric_error("hyp2f1_series: no convergence");
}

// Euler integral, valid for c > b > 0, z <= 0:
//   2F1(a,b;c;z) = G(c)/(G(b)G(c-b)) * int_0^1 t^{b-1}(1-t)^{c-b-1}(1-z t)^{-a} dt.
// Only used with b >= 1 and c-b >= 1 so the integrand stays bounded. For very
// negative z the mass sits on t = O(1/|z|); splitting there keeps the
// adaptive rule honest.
inline double hyp2f1_euler(double a, double b, double c, double z) {
    const double pref = std::exp(std::lgamma(c) - std::lgamma(b) - std::lgamma(c - b));
    auto integrand = [&](double t) {
        double v = (b > 1.0) ? std::pow(t, b - 1.0) : 1.0;
        if (c - b > 1.0) v *= std::pow(1.0 - t, c - b - 1.0);
        return v * std::pow(1.0 - z * t, -a);
    };
    const double split = std::min(0.5, 1.0 / (1.0 - z));
    const double left = integrate_adaptive(integrand, 0.0, split, 1e-12);
    const double right = integrate_adaptive(integrand, split, 1.0, 1e-12);
    return pref * (left + right);
}

} // namespace detail

// Gauss hypergeometric 2F1(a,b;c;z) for z <= 0.
//
// Pfaff maps z into w = z/(z-1) in [0,1) and the series is summed there. Near
// w = 1 (huge |z|) that series stalls, so when the Euler representation
// applies it takes over.
inline double gauss_2f1(double a, double b, double c, double z) {
    if (z > 0.0) throw std::domain_error("gauss_2f1: only z <= 0 is supported");
    if (c <= 0.0 && c == std::floor(c))
        throw std::domain_error("gauss_2f1: c is a non-positive integer");
    if (z == 0.0 || a == 0.0 || b == 0.0) return 1.0;

    const double w = z / (z - 1.0); // in [0, 1)
    if (w < 0.98)
        return std::pow(1.0 - z, -a) * detail::hyp2f1_series(a, c - b, c, w);
    if (b >= 1.0 && c - b >= 1.0)
        return detail::hyp2f1_euler(a, b, c, z);
    if (a >= 1.0 && c - a >= 1.0)
        return detail::hyp2f1_euler(b, a, c, z); // symmetric in a,b
    return std::pow(1.0 - z, -a) * detail::hyp2f1_series(a, c - b, c, w);
}

} // namespace satcov
