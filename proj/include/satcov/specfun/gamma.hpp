#pragma once

#include <cmath>
#include <stdexcept>

#include "satcov/common.hpp"

namespace satcov {

// log Gamma(x), x > 0.
inline double ln_gamma(double x) {
    if (!(x > 0.0)) throw std::domain_error("ln_gamma: argument must be positive");
    return std::lgamma(x);
}

// Gamma(x) for any non-pole real x (negative non-integers included).
inline double gamma_fn(double x) {
    if (x <= 0.0 && x == std::floor(x))
        throw std::domain_error("gamma_fn: argument is a non-positive integer");
    return std::tgamma(x);
}

namespace detail {

// Regularized P(s,x) by power series, for x < s + 1.
inline double gamma_p_series(double s, double x) {
    double term = 1.0 / s;
    double sum = term;
    for (int n = 1; n < 600; ++n) {
        term *= x / (s + n);
        sum += term;
        if (std::fabs(term) < std::fabs(sum) * 1e-17) break;
    }
    return sum * std::exp(-x + s * std::log(x) - std::lgamma(s));
}

// Regularized Q(s,x) by continued fraction (modified Lentz), for x >= s + 1.
inline double gamma_q_cf(double s, double x) {
    const double tiny = 1e-300;
    double b = x + 1.0 - s;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 600; ++i) {
        const double an = -i * (i - s);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < 1e-16) break;
    }
    return std::exp(-x + s * std::log(x) - std::lgamma(s)) * h;
}

} // namespace detail

// Regularized lower incomplete gamma P(s,x) = gamma(s,x)/Gamma(s).
inline double gamma_p(double s, double x) {
    if (!(s > 0.0) || x < 0.0) throw std::domain_error("gamma_p: require s > 0, x >= 0");
    if (x == 0.0) return 0.0;
    if (x < s + 1.0) return detail::gamma_p_series(s, x);
    return 1.0 - detail::gamma_q_cf(s, x);
}

// Unregularized lower incomplete gamma(s,x) = int_0^x t^{s-1} e^{-t} dt.
inline double lower_incomplete_gamma(double s, double x) {
    if (!(s > 0.0) || x < 0.0)
        throw std::domain_error("lower_incomplete_gamma: require s > 0, x >= 0");
    if (x == 0.0) return 0.0;
    return gamma_p(s, x) * std::exp(std::lgamma(s));
}

} // namespace satcov
