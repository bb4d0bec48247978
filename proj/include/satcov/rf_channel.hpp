#pragma once

#include <cmath>
#include <stdexcept>

#include "satcov/common.hpp"
#include "satcov/rng.hpp"

namespace satcov {

// Nakagami-m RF link with free-space path loss rho * d^{alpha_r}.
// Integer m only; the coverage derivatives rely on the finite Erlang sum.
struct RfLinkParams {
    int m = 1;
    double Omega = 0.0;   // mean channel power
    double rho = 0.0;     // path loss at 1 m
    double alpha_r = 0.0; // path-loss exponent
    double P_R = 0.0;     // relay transmit power, W
    double N_R = 0.0;     // UAV noise power, W

    void validate() const {
        if (m < 1) throw std::domain_error("RfLinkParams: m must be a positive integer");
        if (!(Omega > 0.0) || !(rho > 0.0) || !(alpha_r > 0.0) || !(P_R > 0.0) || !(N_R > 0.0))
            throw std::domain_error("RfLinkParams: fields must be positive");
    }
};

// Power gain ~ Gamma(shape m, scale Omega/m).
inline double sample_nakagami_gain(const RfLinkParams& p, Rng& rng) {
    return rng.gamma(static_cast<double>(p.m), p.Omega / p.m);
}

// F_g(x) = 1 - e^{-mx/Omega} sum_{j=0}^{m-1} (mx/Omega)^j / j!.
inline double cdf_nakagami(double x, const RfLinkParams& p) {
    if (p.m < 1) throw std::domain_error("cdf_nakagami: m must be a positive integer");
    if (x < 0.0) throw std::domain_error("cdf_nakagami: x must be >= 0");
    const double t = p.m * x / p.Omega;
    if (t > 708.0) return 1.0;
    double term = 1.0;
    KahanSum sum;
    sum.add(term);
    for (int j = 1; j < p.m; ++j) {
        term *= t / j;
        sum.add(term);
    }
    return clamp01(1.0 - std::exp(-t) * sum.value());
}

inline double rf_pathloss(double d, const RfLinkParams& p) {
    if (!(d > 0.0)) throw std::domain_error("rf_pathloss: distance must be positive");
    return p.rho * std::pow(d, p.alpha_r);
}

} // namespace satcov
