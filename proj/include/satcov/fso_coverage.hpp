#pragma once

#include <algorithm>
#include <cmath>

#include "satcov/common.hpp"
#include "satcov/distance_dist.hpp"
#include "satcov/fso_channel.hpp"
#include "satcov/geometry.hpp"
#include "satcov/quadrature.hpp"

namespace satcov {

inline constexpr int kDefaultMf = 30;
inline constexpr int kDefaultMr = 30;

namespace detail {

// Collapse E_{d^2}[ F_h(Xi d^2 sqrt(x)) ] onto Chebyshev abscissas,
//   sum_i w_i [tau2^2(b_i) - tau1^2(b_i)] * F_h(Xi b_i sqrt(x)),
// applied per branch segment of the distance density so each piece is smooth.
template <typename MeijerEval>
double fso_distance_average(const SystemGeometry& g, double xi_sqrt_x, int order,
                            MeijerEval&& f_h) {
    const auto edges = g.dk2_breakpoints();
    const QuadratureRule rule = cheb_gauss_nodes(order);
    const std::vector<double> w = fejer1_weights(order);
    KahanSum total;
    for (size_t seg = 0; seg + 1 < edges.size(); ++seg) {
        const double b1 = 0.5 * (edges[seg + 1] - edges[seg]);
        const double b2 = 0.5 * (edges[seg + 1] + edges[seg]);
        KahanSum part;
        for (size_t i = 0; i < rule.nodes.size(); ++i) {
            const double bi = b1 * rule.nodes[i] + b2;
            const double weight = square(g.tau2(bi)) - square(g.tau1(bi));
            part.add(w[i] * std::max(weight, 0.0) * f_h(xi_sqrt_x * bi));
        }
        total.add(b1 * part.value());
    }
    return kPi / (2.0 * g.V * g.L) * total.value();
}

} // namespace detail

// CDF of the satellite-to-CH SNR (distance-averaged conditional CDF).
inline double cdf_snr_sch(double x, const SystemGeometry& g, const FsoLinkParams& p,
                          int M_f = kDefaultMf) {
    if (x < 0.0) throw std::domain_error("cdf_snr_sch: SNR must be >= 0");
    if (x == 0.0) return 0.0;
    const MeijerFsoParams mp = p.meijer();
    const double v = detail::fso_distance_average(
        g, p.Xi() * std::sqrt(x), M_f, [&](double z) { return meijer_g_fso_cdf(mp, z); });
    return clamp01(v);
}

// Coverage probability of the FSO hop at linear threshold gamma_th.
inline double cp_sch(double gamma_th, const SystemGeometry& g, const FsoLinkParams& p,
                     int M_f = kDefaultMf) {
    if (!(gamma_th > 0.0)) throw std::domain_error("cp_sch: threshold must be positive");
    return 1.0 - cdf_snr_sch(gamma_th, g, p, M_f);
}

// High transmit SNR approximation: the conditional CDF is replaced by its
// three leading residue terms. Unclipped; meaningful only where small.
inline double cp_sch_asymptotic(double gamma_th, const SystemGeometry& g,
                                const FsoLinkParams& p, int M_f = kDefaultMf) {
    if (!(gamma_th > 0.0)) throw std::domain_error("cp_sch_asymptotic: threshold must be positive");
    const MeijerFsoParams mp = p.meijer();
    const double v = detail::fso_distance_average(
        g, p.Xi() * std::sqrt(gamma_th), M_f,
        [&](double z) { return meijer_g_fso_series_tail(mp, z); });
    return 1.0 - v;
}

// min{omega^2, alpha, beta}: the dominant residue exponent, i.e. the decay
// order of 1-CP in transmit power.
inline double diversity_order_sch(const FsoLinkParams& p) {
    return std::min({p.omega_sq(), p.alpha, p.beta});
}

} // namespace satcov
