#pragma once

#include <array>
#include <cmath>
#include <vector>

#include "satcov/common.hpp"
#include "satcov/geometry.hpp"
#include "satcov/quadrature.hpp"
#include "satcov/rf_channel.hpp"
#include "satcov/specfun/bell.hpp"
#include "satcov/specfun/gamma.hpp"
#include "satcov/specfun/hyp2f1.hpp"

namespace satcov {

// The alternating structures below are exercised only for small integer m;
// beyond this the factorial growth erodes double precision.
inline constexpr int kMaxNakagamiM = 8;

// Interference-free CP at linear threshold x:
//   (3/(alpha_r D^3)) (Omega P_R/(m rho N_R x))^{3/alpha_r}
//     * sum_i gamma(m_i + 3/alpha_r, m rho N_R D^{alpha_r} x/(Omega P_R)) / m_i!.
inline double cp_rf_nointerference(double x, const RfLinkParams& p, double D) {
    if (!(x > 0.0)) throw std::domain_error("cp_rf_nointerference: threshold must be positive");
    if (!(D > 0.0)) throw std::domain_error("cp_rf_nointerference: D must be positive");
    const double c = p.m * p.rho * p.N_R * x / (p.Omega * p.P_R);
    const double head = c * std::pow(D, p.alpha_r);
    const double e = 3.0 / p.alpha_r;
    KahanSum sum;
    for (int i = 0; i < p.m; ++i) {
        const int mi = p.m - i - 1;
        double mi_fact = 1.0;
        for (int j = 2; j <= mi; ++j) mi_fact *= j;
        sum.add(lower_incomplete_gamma(mi + e, head) / mi_fact);
    }
    return clamp01(3.0 / (p.alpha_r * D * D * D) * std::pow(1.0 / c, e) * sum.value());
}

// Interference-free outage 1 - CP computed without cancellation, for deep
// high-SNR sweeps: F = (3/D^3) int_0^D P(m, c y^{alpha_r}) y^2 dy with the
// regularized lower gamma P.
inline double outage_rf_nointerference(double x, const RfLinkParams& p, double D) {
    if (!(x > 0.0)) throw std::domain_error("outage_rf_nointerference: threshold must be positive");
    const double c = p.m * p.rho * p.N_R * x / (p.Omega * p.P_R);
    auto f = [&](double y) {
        return gamma_p(static_cast<double>(p.m), c * std::pow(y, p.alpha_r)) * y * y;
    };
    return 3.0 / (D * D * D) * integrate_adaptive(f, 0.0, D, 1e-12);
}

// High-SNR truncation of the interference-free CP. Unclipped.
inline double cp_rf_nointerference_asymptotic(double x, const RfLinkParams& p, double D) {
    if (!(x > 0.0))
        throw std::domain_error("cp_rf_nointerference_asymptotic: threshold must be positive");
    const double ratio = p.rho * p.N_R * x / (p.Omega * p.P_R);
    double mfact = 1.0;
    for (int j = 2; j <= p.m - 1; ++j) mfact *= j;
    const double lead = 3.0 * std::pow(static_cast<double>(p.m), p.m - 1) / mfact *
                        std::pow(ratio, p.m) * std::pow(D, p.alpha_r * p.m) /
                        (p.alpha_r * p.m + 3.0);
    return 1.0 - lead;
}

namespace detail {

// Interference Laplace-transform engine for one (s, d_kj) evaluation point.
//
// A(s) = lambda_CH V1 (I3 - 1) with
//   I3 = (m/(Omega s))^m pi/(2 d V1) f2(s, d),
// f2 a fixed combination of blocks
//   Fcal(a,b,c) = [H(0,a,b) b^{(m+a)alpha_r/2} - H(0,a,c) c^{(m+a)alpha_r/2}]
//                 * 2/((m+a)alpha_r),
//   H(q,a,u) = 2F1(m+q, m+a+q; m+a+q+1; -(m/(Omega s)) u^{alpha_r/2}).
// s-derivatives come from Leibniz over s^{-m} * f2 with Faa di Bruno applied
// to the hypergeometric blocks through the inner map -(m u^{alpha_r/2}/Omega)/s.
class InterferenceLt {
public:
    InterferenceLt(double s, double d_kj, const RfLinkParams& rf, const DeploymentParams& dep)
        : s_(s), d_(d_kj), rf_(rf), dep_(dep) {
        rf.validate();
        if (rf.m > kMaxNakagamiM)
            throw numeric_error("interference coverage: m > 8 exceeds the stable range of the "
                                "alternating derivative sums");
        if (!(s > 0.0)) throw std::domain_error("InterferenceLt: s must be positive");
        if (!(d_kj > 0.0) || d_kj > dep.D)
            throw std::domain_error("InterferenceLt: require 0 < d_kj <= D");
        bp_ = {square(dep.D_min - d_kj), square(dep.D_min + d_kj), square(dep.D_max - d_kj),
               square(dep.D_max + d_kj)};
        a_ = {4.0 / rf.alpha_r, 3.0 / rf.alpha_r, 2.0 / rf.alpha_r};
        lam_ = rf.m / (rf.Omega * s);
        // Derivatives of order n <= m-1 reach hypergeometric shifts q <= m-1.
        for (int ia = 0; ia < 3; ++ia)
            for (int ib = 0; ib < 4; ++ib)
                for (int q = 0; q < rf.m; ++q) hyp_[ia][ib][q] = hyp(q, a_[ia], bp_[ib]);
    }

    double script_A() const { return dep_.lambda_CH * dep_.V1 * (I3() - 1.0); }

    // n-th s-derivative of A, n in [0, m-1].
    double script_A_deriv(int n) const {
        if (n < 0 || n >= rf_.m)
            throw std::domain_error("script_A_deriv: require 0 <= n <= m-1");
        if (n == 0) return script_A();
        KahanSum sum;
        for (int l = 0; l <= n; ++l) {
            const double sign = ((n - l) % 2 == 0) ? 1.0 : -1.0;
            const double klein = binomial(n, l) * sign * rising_product(rf_.m, n - l) *
                                 std::pow(s_, -rf_.m - n + l);
            sum.add(klein * f2_deriv(l));
        }
        return kPi * dep_.lambda_CH / (2.0 * d_) * std::pow(rf_.m / rf_.Omega, rf_.m) *
               sum.value();
    }

    // n-th s-derivative of E[e^{-sI}] = e^{A(s)}; complete Bell polynomial of
    // the A-derivatives for n > 0.
    double lt_deriv(int n) const {
        const double base = std::exp(script_A());
        if (n == 0) return base;
        std::vector<double> derivs(static_cast<size_t>(n));
        for (int j = 1; j <= n; ++j) derivs[static_cast<size_t>(j - 1)] = script_A_deriv(j);
        return base * BellTable(derivs, n).complete(n);
    }

    // All derivatives 1..nmax at once (shared by the coverage quadratures).
    std::vector<double> a_derivs(int nmax) const {
        std::vector<double> d(static_cast<size_t>(nmax));
        for (int j = 1; j <= nmax; ++j) d[static_cast<size_t>(j - 1)] = script_A_deriv(j);
        return d;
    }

private:
    double hyp(int q, double a, double bpt) const {
        const double z = -lam_ * std::pow(bpt, rf_.alpha_r / 2.0);
        return gauss_2f1(rf_.m + q, rf_.m + a + q, rf_.m + a + q + 1.0, z);
    }

    // l-th derivative of the hypergeometric block at breakpoint index ib.
    double delta_l(int l, int ia, int ib) const {
        if (l == 0) return hyp_[ia][ib][0];
        const double a = a_[ia];
        const double u_pow = rf_.m * std::pow(bp_[ib], rf_.alpha_r / 2.0) / rf_.Omega;
        std::vector<double> f3(static_cast<size_t>(l));
        double fact = 1.0;
        for (int q = 1; q <= l; ++q) {
            fact *= q;
            const double sign = (q % 2 == 0) ? -1.0 : 1.0;
            f3[static_cast<size_t>(q - 1)] = sign * fact * u_pow * std::pow(s_, -1.0 - q);
        }
        BellTable bt(f3, l);
        KahanSum sum;
        for (int q = 1; q <= l; ++q) {
            sum.add((rf_.m + a) * rising_product(rf_.m, q) / (rf_.m + a + q) * hyp_[ia][ib][q] *
                    bt.partial(l, q));
        }
        return sum.value();
    }

    // Fcal^{(l)}(a, b, c) with b = bp_[ib_hi], c = bp_[ib_lo].
    double fcal_l(int l, int ia, int ib_hi, int ib_lo) const {
        const double a = a_[ia];
        const double p = (rf_.m + a) * rf_.alpha_r / 2.0;
        return 2.0 / ((rf_.m + a) * rf_.alpha_r) *
               (std::pow(bp_[ib_hi], p) * delta_l(l, ia, ib_hi) -
                std::pow(bp_[ib_lo], p) * delta_l(l, ia, ib_lo));
    }

    // f2^{(l)}: seven-block combination over the three integration cases.
    double f2_deriv(int l) const {
        const double d = d_;
        KahanSum sum;
        sum.add(fcal_l(l, 0, 1, 0));                                      // a=4/ar on [min,g1]
        sum.add(2.0 * d * fcal_l(l, 1, 1, 0));                            // a=3/ar on [min,g1]
        sum.add((d * d - square(dep_.D_min)) * fcal_l(l, 2, 1, 0));       // a=2/ar on [min,g1]
        sum.add(4.0 * d * fcal_l(l, 1, 2, 1));                            // a=3/ar on [g1,g2]
        sum.add(-fcal_l(l, 0, 3, 2));                                     // a=4/ar on [g2,max]
        sum.add(2.0 * d * fcal_l(l, 1, 3, 2));                            // a=3/ar on [g2,max]
        sum.add((square(dep_.D_max) - d * d) * fcal_l(l, 2, 3, 2));       // a=2/ar on [g2,max]
        return sum.value();
    }

    double I3() const {
        return std::pow(lam_, rf_.m) * kPi / (2.0 * d_ * dep_.V1) * f2_deriv(0);
    }

    double s_ = 0.0;
    double d_ = 0.0;
    RfLinkParams rf_;
    DeploymentParams dep_;
    std::array<double, 4> bp_{};       // (Dmin-d)^2, (Dmin+d)^2, (Dmax-d)^2, (Dmax+d)^2
    std::array<double, 3> a_{};        // 4/ar, 3/ar, 2/ar
    double lam_ = 0.0;
    double hyp_[3][4][kMaxNakagamiM + 1] = {};
};

} // namespace detail

// E[e^{-sI}] over the hard-core interference field seen at distance d_kj.
inline double laplace_interference(double s, double d_kj, const RfLinkParams& rf,
                                   const DeploymentParams& dep) {
    return std::exp(detail::InterferenceLt(s, d_kj, rf, dep).script_A());
}

// n-th derivative of A(s, d_kj) = lambda_CH V1 (I3 - 1); n = 0 gives A.
inline double script_A_derivatives(int n, double s, double d_kj, const RfLinkParams& rf,
                                   const DeploymentParams& dep) {
    return detail::InterferenceLt(s, d_kj, rf, dep).script_A_deriv(n);
}

// n-th s-derivative of the interference Laplace transform.
inline double lt_derivative(int n, double s, double d_kj, const RfLinkParams& rf,
                            const DeploymentParams& dep) {
    if (n < 0 || n >= rf.m) throw std::domain_error("lt_derivative: require 0 <= n <= m-1");
    return detail::InterferenceLt(s, d_kj, rf, dep).lt_deriv(n);
}

namespace detail {

struct CpTermGuard {
    double max_term = 0.0;
    void observe(double t) { max_term = std::max(max_term, std::fabs(t)); }
    void check(double total, const char* what) const {
        if (total != 0.0 && max_term / std::fabs(total) > 1e12)
            throw numeric_error(std::string(what) +
                                ": alternating sum lost precision (|term|/|sum| > 1e12)");
        if (!std::isfinite(total)) throw numeric_error(std::string(what) + ": non-finite sum");
    }
};

template <typename NodeTerm>
double rf_distance_average(double D, int M_r, NodeTerm&& term) {
    const QuadratureRule rule = cheb_gauss_nodes(M_r);
    const std::vector<double> w = fejer1_weights(M_r);
    KahanSum sum;
    for (size_t i = 0; i < rule.nodes.size(); ++i) {
        const double b = 0.5 * D * (rule.nodes[i] + 1.0);
        sum.add(w[i] * term(b));
    }
    // prefactor: E over f_{d_kj} = (3/D^3) int_0^D ... with the affine map
    // absorbed: (3/D^3) * (D/2) * quadrature over [-1,1].
    return 3.0 / (2.0 * D * D) * sum.value();
}

} // namespace detail

// Interference-dominated (SIR) coverage probability.
inline double cp_rf_sir(double gamma_th, const RfLinkParams& rf, const DeploymentParams& dep,
                        int M_r = 30) {
    if (!(gamma_th > 0.0)) throw std::domain_error("cp_rf_sir: threshold must be positive");
    rf.validate();
    detail::CpTermGuard guard;
    const double v = detail::rf_distance_average(dep.D, M_r, [&](double b) {
        const double s = rf.m * gamma_th * std::pow(b, rf.alpha_r) / rf.Omega;
        const detail::InterferenceLt lt(s, b, rf, dep);
        const double expA = std::exp(lt.script_A());
        const std::vector<double> ader = lt.a_derivs(rf.m - 1);
        const BellTable bell(ader, rf.m - 1);
        KahanSum inner;
        double inv_fact = 1.0;
        for (int i = 0; i < rf.m; ++i) {
            const int mi = rf.m - i - 1;
            inv_fact = 1.0;
            for (int j = 2; j <= mi; ++j) inv_fact *= j;
            const double t = std::pow(-rf.m * gamma_th / rf.Omega, mi) *
                             std::pow(b, rf.alpha_r * mi + 2.0) / inv_fact * expA *
                             bell.complete(mi);
            guard.observe(t);
            inner.add(t);
        }
        return inner.value();
    });
    guard.check(v, "cp_rf_sir");
    return clamp01(v);
}

// Interference-and-noise (SINR) coverage probability.
inline double cp_rf_sinr(double gamma_th, const RfLinkParams& rf, const DeploymentParams& dep,
                         int M_r = 30) {
    if (!(gamma_th > 0.0)) throw std::domain_error("cp_rf_sinr: threshold must be positive");
    rf.validate();
    const double noise = rf.rho * rf.N_R / rf.P_R; // rescaled noise floor
    detail::CpTermGuard guard;
    const double v = detail::rf_distance_average(dep.D, M_r, [&](double b) {
        const double s = rf.m * gamma_th * std::pow(b, rf.alpha_r) / rf.Omega;
        const detail::InterferenceLt lt(s, b, rf, dep);
        const double expA = std::exp(-s * noise + lt.script_A());
        const std::vector<double> ader = lt.a_derivs(rf.m - 1);
        const BellTable bell(ader, rf.m - 1);
        KahanSum inner;
        for (int i = 0; i < rf.m; ++i) {
            const int mi = rf.m - i - 1;
            double inv_fact = 1.0;
            for (int j = 2; j <= mi; ++j) inv_fact *= j;
            KahanSum usum;
            for (int u = 0; u <= mi; ++u) {
                const double sign = (u % 2 == 0) ? 1.0 : -1.0;
                usum.add(binomial(mi, u) * std::pow(noise, mi - u) * sign * bell.complete(u));
            }
            const double t = std::pow(rf.m * gamma_th / rf.Omega, mi) *
                             std::pow(b, rf.alpha_r * mi + 2.0) / inv_fact * expA * usum.value();
            guard.observe(t);
            inner.add(t);
        }
        return inner.value();
    });
    guard.check(v, "cp_rf_sinr");
    return clamp01(v);
}

} // namespace satcov
