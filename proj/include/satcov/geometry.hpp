#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "satcov/common.hpp"

namespace satcov {

// Spherical-cone shell of cluster heads: radii [R, R+H_U] within half-angle
// xi0 of the axis, satellite on the axis at distance L = R + H_U + H_S from
// the center O. All lengths in meters.
//
// The link distance d to a point (r, xi) is d^2 = r^2 + L^2 - 2 r L cos(xi).
// With the satellite far above the shell (L cos(xi0) > R + H_U) the distance
// decreases in r, so the support of d runs from H_S (top of shell, on axis)
// to the inner bottom rim at r = R, xi = xi0.
struct SystemGeometry {
    double R = 0.0;
    double H_U = 0.0;
    double H_S = 0.0;
    double xi0 = 0.0;

    double L = 0.0;
    double V = 0.0;
    double d_min = 0.0;
    double d_max = 0.0;
    // Breakpoints of the piecewise d^2 density: distance to the outer rim
    // (where tau2 leaves R+H_U) and to the on-axis bottom (where tau1 leaves
    // L - sqrt(x)).
    double d_break_rim = 0.0;
    double d_break_nadir = 0.0;

    static SystemGeometry make(double R, double H_U, double H_S, double xi0) {
        if (!(R > 0.0) || !(H_U > 0.0) || !(H_S > 0.0))
            throw std::domain_error("SystemGeometry: lengths must be positive");
        if (!(xi0 > 0.0) || !(xi0 < kPi / 2.0))
            throw std::domain_error("SystemGeometry: require 0 < xi0 < pi/2");
        SystemGeometry g;
        g.R = R;
        g.H_U = H_U;
        g.H_S = H_S;
        g.xi0 = xi0;
        g.L = R + H_U + H_S;
        g.V = 2.0 * kPi / 3.0 * (1.0 - std::cos(xi0)) * (cube(R + H_U) - cube(R));
        g.d_min = H_S;
        g.d_max = std::sqrt(R * R + g.L * g.L - 2.0 * R * g.L * std::cos(xi0));
        g.d_break_rim = std::sqrt(square(R + H_U) + g.L * g.L - 2.0 * (R + H_U) * g.L * std::cos(xi0));
        g.d_break_nadir = g.L - R;
        if (!(g.L * std::cos(xi0) > R + H_U))
            throw std::domain_error("SystemGeometry: satellite must sit above the shell cone");
        if (!(g.d_min >= g.L * std::sin(xi0)))
            throw std::domain_error("SystemGeometry: H_S must exceed L*sin(xi0)");
        if (!(g.d_min < g.d_max)) throw std::domain_error("SystemGeometry: empty distance support");
        return g;
    }

    // Integration limits in r for fixed d^2 = x.
    double tau1(double x) const { return std::max(R, L - std::sqrt(x)); }
    double tau2(double x) const {
        const double disc = x - L * L * square(std::sin(xi0));
        if (disc < 0.0) return R; // below the support; density is zero there
        return std::min(R + H_U, L * std::cos(xi0) - std::sqrt(disc));
    }

    // d^2 values where the density changes branch, ascending, deduplicated.
    std::vector<double> dk2_breakpoints() const {
        std::vector<double> edges = {d_min * d_min, square(d_break_rim), square(d_break_nadir),
                                     d_max * d_max};
        std::sort(edges.begin(), edges.end());
        edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
        return edges;
    }

private:
    static double cube(double v) { return v * v * v; }
};

// Hard-core deployment of cluster heads plus the per-CH UAV cloud.
// lambda_* are intensities per m^3, distances in meters.
struct DeploymentParams {
    double lambda_P = 0.0;
    double D_min = 0.0;
    double D = 0.0;
    double D_max = 0.0;
    double lambda_U = 0.0;

    double lambda_CH = 0.0;
    double V1 = 0.0;

    static DeploymentParams make(double lambda_P, double D_min, double D, double D_max,
                                 double lambda_U) {
        if (lambda_P < 0.0 || lambda_U < 0.0)
            throw std::domain_error("DeploymentParams: intensities must be >= 0");
        if (!(D_min > 0.0) || !(D > 0.0) || !(D_max > D_min))
            throw std::domain_error("DeploymentParams: require D_min > 0, D > 0, D_max > D_min");
        if (2.0 * D > D_min)
            throw std::domain_error("DeploymentParams: serving spheres must not overlap (2D <= D_min)");
        DeploymentParams p;
        p.lambda_P = lambda_P;
        p.D_min = D_min;
        p.D = D;
        p.D_max = D_max;
        p.lambda_U = lambda_U;
        p.lambda_CH = mhcpp_intensity(lambda_P, D_min);
        p.V1 = 4.0 * kPi / 3.0 * (D_max * D_max * D_max - D_min * D_min * D_min);
        return p;
    }

    std::vector<std::string> warnings() const {
        std::vector<std::string> w;
        if (D_max < 5.0 * D_min)
            w.push_back("D_max < 5*D_min: the sensitivity shell is not much larger than the "
                        "hard core; the interference model assumes D_max >> D_min");
        return w;
    }

    // Retained intensity of type-II hard-core thinning with exclusion radius
    // D_min applied to a Poisson process of intensity lambda_P.
    static double mhcpp_intensity(double lambda_P, double D_min) {
        if (lambda_P < 0.0 || !(D_min > 0.0))
            throw std::domain_error("mhcpp_intensity: require lambda_P >= 0, D_min > 0");
        const double ball = 4.0 * kPi / 3.0 * D_min * D_min * D_min;
        const double mu = ball * lambda_P;
        if (mu == 0.0) return lambda_P;
        if (mu < 1e-8) return lambda_P * (1.0 - 0.5 * mu); // expm1 of tiny exponent
        return -std::expm1(-mu) / ball;
    }
};

inline double mhcpp_intensity(double lambda_P, double D_min) {
    return DeploymentParams::mhcpp_intensity(lambda_P, D_min);
}

} // namespace satcov
