#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "satcov/common.hpp"

namespace satcov {

// Chebyshev-Gauss abscissas t_p = cos((2p-1)pi/(2M)), p = 1..M, strictly
// decreasing. The classic rule pairs them with the constant weight pi/M
// against the 1/sqrt(1-t^2) measure; callers integrating plain dt carry the
// sqrt(1-t_p^2) factor themselves.
struct QuadratureRule {
    std::vector<double> nodes;
    int order = 0;
};

inline QuadratureRule cheb_gauss_nodes(int order) {
    if (order < 1) throw std::domain_error("cheb_gauss_nodes: order must be >= 1");
    QuadratureRule rule;
    rule.order = order;
    rule.nodes.resize(static_cast<size_t>(order));
    for (int p = 1; p <= order; ++p)
        rule.nodes[static_cast<size_t>(p - 1)] = std::cos((2.0 * p - 1.0) / (2.0 * order) * kPi);
    return rule;
}

// Interpolatory weights for the same Chebyshev abscissas against plain dt
// (Fejer's first rule). The naive (pi/M)*sqrt(1-t^2) factor is the M->inf
// limit of these weights but converges only at O(M^-2); the exact weights
// restore spectral accuracy for smooth integrands at identical nodes.
inline std::vector<double> fejer1_weights(int order) {
    if (order < 1) throw std::domain_error("fejer1_weights: order must be >= 1");
    std::vector<double> w(static_cast<size_t>(order));
    for (int p = 1; p <= order; ++p) {
        const double theta = (2.0 * p - 1.0) / (2.0 * order) * kPi;
        double sum = 0.0;
        for (int j = 1; j <= order / 2; ++j)
            sum += std::cos(2.0 * j * theta) / (4.0 * j * j - 1.0);
        w[static_cast<size_t>(p - 1)] = 2.0 / order * (1.0 - 2.0 * sum);
    }
    return w;
}

// Integrate f over [a,b] with the M-node Chebyshev-abscissa rule.
template <typename F>
double integrate_chebyshev(F&& f, double a, double b, int order) {
    const QuadratureRule rule = cheb_gauss_nodes(order);
    const std::vector<double> w = fejer1_weights(order);
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (b + a);
    KahanSum sum;
    for (size_t i = 0; i < rule.nodes.size(); ++i)
        sum.add(w[i] * f(mid + half * rule.nodes[i]));
    return half * sum.value();
}

namespace detail {

// Gauss-Kronrod 7-15 pair.
inline constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.0};
inline constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
inline constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469};

template <typename F>
void gk15(F&& f, double a, double b, double& result, double& err) {
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    double resk = 0.0, resg = 0.0;
    for (size_t i = 0; i < kKronrodNodes.size(); ++i) {
        const double dx = half * kKronrodNodes[i];
        const double fv = (i == 7) ? f(mid) : f(mid - dx) + f(mid + dx);
        resk += kKronrodWeights[i] * fv;
        if (i % 2 == 1) resg += kGaussWeights[i / 2] * fv;
        else if (i == 7) resg += kGaussWeights[3] * fv;
    }
    result = resk * half;
    err = std::fabs((resk - resg) * half);
}

template <typename F>
double adaptive_gk(F&& f, double a, double b, double abs_tol, double rel_tol, int depth) {
    double v, e;
    gk15(f, a, b, v, e);
    if (e <= abs_tol || e <= rel_tol * std::fabs(v) || depth >= 60 || b - a < 1e-300)
        return v;
    const double mid = 0.5 * (a + b);
    return adaptive_gk(f, a, mid, 0.5 * abs_tol, rel_tol, depth + 1) +
           adaptive_gk(f, mid, b, 0.5 * abs_tol, rel_tol, depth + 1);
}

} // namespace detail

// Adaptive Gauss-Kronrod on a finite interval.
template <typename F>
double integrate_adaptive(F&& f, double a, double b, double rel_tol = 1e-11,
                          double abs_tol = 1e-300) {
    if (!(a <= b)) throw std::domain_error("integrate_adaptive: a must be <= b");
    if (a == b) return 0.0;
    return detail::adaptive_gk(f, a, b, abs_tol, rel_tol, 0);
}

// Same, with interior breakpoints the integrand is non-smooth at.
template <typename F>
double integrate_adaptive_segmented(F&& f, const std::vector<double>& edges,
                                    double rel_tol = 1e-11) {
    double total = 0.0;
    for (size_t i = 0; i + 1 < edges.size(); ++i)
        total += integrate_adaptive(f, edges[i], edges[i + 1], rel_tol);
    return total;
}

} // namespace satcov
