#pragma once

#include <cmath>
#include <stdexcept>

#include "satcov/common.hpp"
#include "satcov/rng.hpp"
#include "satcov/specfun/meijer_fso.hpp"

namespace satcov {

// Optical link budget. All fields linear SI (conversions from dB/dBm happen
// at the configuration boundary).
struct FsoLinkParams {
    double alpha = 0.0;     // large-scale eddies
    double beta = 0.0;      // small-scale eddies
    double omega = 0.0;     // beam radius / pointing displacement sigma
    double A0 = 0.0;        // max collected-power fraction
    double h_l = 0.0;       // atmospheric loss, linear
    double eta = 0.0;       // photoelectric conversion ratio
    double lambda_wl = 0.0; // wavelength, m
    double G_S = 0.0;       // transmit telescope gain, linear
    double G_R = 0.0;       // receive telescope gain, linear
    double P_S = 0.0;       // transmit optical power, W
    double N_F = 0.0;       // receiver noise power, W
    double xi_scale = 1.0;  // validation hook: multiplies Xi (fault injection)

    double omega_sq() const { return omega * omega; }

    // Xi = alpha*beta*(4pi)^2*sqrt(N_F) / (A0 h_l eta lambda^2 P_S G_S G_R);
    // the conditional SNR CDF is F_h evaluated at Xi * d^2 * sqrt(snr).
    double Xi() const {
        return xi_scale * alpha * beta * square(4.0 * kPi) * std::sqrt(N_F) /
               (A0 * h_l * eta * lambda_wl * lambda_wl * P_S * G_S * G_R);
    }

    MeijerFsoParams meijer() const { return MeijerFsoParams::make(alpha, beta, omega_sq()); }

    void validate() const {
        if (!(alpha > 0.0) || !(beta > 0.0) || !(omega > 0.0))
            throw std::domain_error("FsoLinkParams: fading parameters must be positive");
        if (!(A0 > 0.0) || A0 > 1.0) throw std::domain_error("FsoLinkParams: A0 must be in (0,1]");
        if (!(h_l > 0.0) || !(eta > 0.0) || !(lambda_wl > 0.0) || !(G_S > 0.0) || !(G_R > 0.0) ||
            !(P_S > 0.0) || !(N_F > 0.0))
            throw std::domain_error("FsoLinkParams: link-budget fields must be positive");
    }
};

// Channel power gain h = h_l * h_a * h_p: turbulence h_a as a product of two
// unit-mean Gamma variates (shapes alpha, beta), pointing loss h_p with CDF
// (x/A0)^{omega^2} on [0, A0].
inline double sample_fso_gain(const FsoLinkParams& p, Rng& rng) {
    const double ha = rng.gamma(p.alpha, 1.0 / p.alpha) * rng.gamma(p.beta, 1.0 / p.beta);
    const double hp = p.A0 * std::pow(rng.uniform(), 1.0 / p.omega_sq());
    return p.h_l * ha * hp;
}

// Received electrical SNR at distance d_k for channel gain h.
inline double fso_snr(double h, double d_k, const FsoLinkParams& p) {
    if (!(d_k > 0.0)) throw std::domain_error("fso_snr: distance must be positive");
    const double amp = p.eta * p.P_S * p.G_S * p.G_R * p.lambda_wl * p.lambda_wl * h /
                       (square(4.0 * kPi) * d_k * d_k);
    return amp * amp / p.N_F;
}

// F_{gamma|d^2}(x) = F_h(Xi * d^2 * sqrt(x)).
inline double cdf_fso_snr_given_d(double x, double d_k_sq, const FsoLinkParams& p) {
    if (x < 0.0) throw std::domain_error("cdf_fso_snr_given_d: SNR must be >= 0");
    if (!(d_k_sq > 0.0)) throw std::domain_error("cdf_fso_snr_given_d: d^2 must be positive");
    if (x == 0.0) return 0.0;
    return meijer_g_fso_cdf(p.meijer(), p.Xi() * d_k_sq * std::sqrt(x));
}

} // namespace satcov
