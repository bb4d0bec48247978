#pragma once

#include <cmath>
#include <stdexcept>

#include "satcov/common.hpp"
#include "satcov/quadrature.hpp"
#include "satcov/specfun/gamma.hpp"

namespace satcov {

// Parameters of the channel-gain CDF
//   F_h(x) = w2/(G(a)G(b)) * G^{3,1}_{2,4}[ z | 1, w2+1 ; w2, a, b, 0 ],
// with z = a*b/(A0*h_l) * x. The Mellin-Barnes integrand collapses to
//   Gamma(a-s) Gamma(b-s) z^s / (s (w2-s)),
// so the ascending expansion has one pole family per member of {w2, a, b}.
// Residues require those exponents pairwise non-congruent mod 1; parameters
// closer than eps_pole to congruence are nudged upward and flagged.
struct MeijerFsoParams {
    double alpha = 0.0;
    double beta = 0.0;
    double omega_sq = 0.0;
    bool perturbed = false;
    double alpha_raw = 0.0;
    double beta_raw = 0.0;
    double omega_sq_raw = 0.0;

    static constexpr double eps_pole = 1e-6;

    static MeijerFsoParams make(double alpha, double beta, double omega_sq) {
        if (!(alpha > 0.0) || !(beta > 0.0) || !(omega_sq > 0.0))
            throw std::domain_error("MeijerFsoParams: alpha, beta, omega^2 must be positive");
        MeijerFsoParams p;
        p.alpha_raw = alpha;
        p.beta_raw = beta;
        p.omega_sq_raw = omega_sq;
        p.alpha = alpha;
        p.beta = beta;
        p.omega_sq = omega_sq;

        auto congruent = [](double u, double v) {
            const double d = u - v;
            return std::fabs(d - std::round(d)) < eps_pole;
        };
        for (int pass = 0; pass < 64; ++pass) {
            double* lo = nullptr;
            if (congruent(p.alpha, p.beta)) lo = (p.alpha < p.beta) ? &p.alpha : &p.beta;
            else if (congruent(p.alpha, p.omega_sq)) lo = (p.alpha < p.omega_sq) ? &p.alpha : &p.omega_sq;
            else if (congruent(p.beta, p.omega_sq)) lo = (p.beta < p.omega_sq) ? &p.beta : &p.omega_sq;
            else return p;
            *lo += eps_pole;
            p.perturbed = true;
        }
        throw numeric_error("MeijerFsoParams: pole separation failed");
    }
};

namespace detail {

// Ascending residue series; converges for every finite z but cancels like
// exp(2 sqrt(z)), so callers keep z below ~40.
inline double meijer_fso_series(const MeijerFsoParams& p, double z) {
    const double a = p.alpha, b = p.beta, w2 = p.omega_sq;
    KahanSum sum;
    sum.add(gamma_fn(a - w2) * gamma_fn(b - w2) / w2 * std::pow(z, w2));
    for (int swap = 0; swap < 2; ++swap) {
        const double u = swap ? b : a; // exponent family z^{u+k}
        const double v = swap ? a : b;
        double term = gamma_fn(v - u) * std::pow(z, u) / (u * (w2 - u));
        sum.add(term);
        int tiny_streak = 0;
        for (int k = 0; k < 500; ++k) {
            term *= -z / ((k + 1.0) * (v - u - k - 1.0)) *
                    ((u + k) * (w2 - u - k)) / ((u + k + 1.0) * (w2 - u - k - 1.0));
            sum.add(term);
            tiny_streak = (std::fabs(term) <= 1e-18 * std::fabs(sum.value())) ? tiny_streak + 1 : 0;
            if (tiny_streak >= 3) break;
        }
    }
    return sum.value() * w2 / (gamma_fn(a) * gamma_fn(b));
}

// Complement 1 - F_h for large z, from the product-of-Gammas form of the
// turbulence gain: with w = z/(ab),
//   1 - F_h = int_w^inf (1 - (w/t)^{w2}) f_ha(t) dt,
//   f_ha(t) = 2(ab)^{(a+b)/2}/(G(a)G(b)) t^{(a+b)/2-1} K_{a-b}(2 sqrt(ab t)).
// Substituting u = 2 sqrt(ab t) makes the integrand decay like e^{-u}.
inline double meijer_fso_complement(const MeijerFsoParams& p, double z) {
    const double a = p.alpha, b = p.beta, w2 = p.omega_sq;
    const double ab = a * b;
    const double u0 = 2.0 * std::sqrt(z);
    if (u0 > 690.0) return 0.0; // K underflows; the tail is < 1e-290
    const double nu = std::fabs(a - b);
    const double log_c = std::log(2.0) + 0.5 * (a + b) * std::log(ab) - std::lgamma(a) - std::lgamma(b);
    auto integrand = [&](double u) {
        const double t = u * u / (4.0 * ab);
        const double bessel = std::cyl_bessel_k(nu, u);
        if (bessel <= 0.0) return 0.0;
        const double dens = std::exp(log_c + (0.5 * (a + b) - 1.0) * std::log(t)) * bessel * u / (2.0 * ab);
        return (1.0 - std::pow(u0 / u, 2.0 * w2)) * dens;
    };
    const double u1 = u0 + 75.0 + 2.0 * std::log1p(u0);
    return integrate_adaptive(integrand, u0, u1, 1e-12);
}

} // namespace detail

// Full right-hand side of the channel-gain CDF at Meijer argument z >= 0.
inline double meijer_g_fso_cdf(const MeijerFsoParams& p, double z) {
    if (z < 0.0) throw std::domain_error("meijer_g_fso_cdf: argument must be >= 0");
    if (z == 0.0) return 0.0;
    if (z <= 40.0) return clamp01(detail::meijer_fso_series(p, z));
    return clamp01(1.0 - detail::meijer_fso_complement(p, z));
}

// Leading residue of each pole family (the high-SNR truncation). Valid as an
// approximation only for small z; returned unclipped.
inline double meijer_g_fso_series_tail(const MeijerFsoParams& p, double z) {
    if (z < 0.0) throw std::domain_error("meijer_g_fso_series_tail: argument must be >= 0");
    if (z == 0.0) return 0.0;
    const double a = p.alpha, b = p.beta, w2 = p.omega_sq;
    const double t1 = std::pow(z, w2) * gamma_fn(a - w2) * gamma_fn(b - w2) / w2;
    const double t2 = std::pow(z, a) * gamma_fn(w2 - a) * gamma_fn(b - a) / (a * gamma_fn(w2 + 1.0 - a));
    const double t3 = std::pow(z, b) * gamma_fn(w2 - b) * gamma_fn(a - b) / (b * gamma_fn(w2 + 1.0 - b));
    return (t1 + t2 + t3) * w2 / (gamma_fn(a) * gamma_fn(b));
}

} // namespace satcov
