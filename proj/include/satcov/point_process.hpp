#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "satcov/common.hpp"
#include "satcov/geometry.hpp"
#include "satcov/rng.hpp"

namespace satcov {

struct Vec3 {
    double x = 0.0, y = 0.0, z = 0.0;
};

inline double dist2(const Vec3& a, const Vec3& b) {
    return square(a.x - b.x) + square(a.y - b.y) + square(a.z - b.z);
}

enum class ProcessTag { HPPP, MHCPP };

struct PointSample {
    std::vector<Vec3> positions;
    std::vector<double> marks; // empty for plain HPPP
    ProcessTag tag = ProcessTag::HPPP;
};

// Poisson count with the given mean measure.
inline int64_t sample_count_hppp(double mean_measure, Rng& rng) {
    if (mean_measure < 0.0) throw std::domain_error("sample_count_hppp: negative mean measure");
    return rng.poisson(mean_measure);
}

// Uniform point in the shell cone: inverse transform on r^3, cos(xi) uniform
// on [cos(xi0), 1], azimuth uniform. Axis = +z (towards the satellite).
inline Vec3 sample_uniform_shell_cone(const SystemGeometry& g, Rng& rng) {
    const double r3 = rng.uniform(g.R * g.R * g.R, (g.R + g.H_U) * square(g.R + g.H_U));
    const double r = std::cbrt(r3);
    const double cxi = rng.uniform(std::cos(g.xi0), 1.0);
    const double sxi = std::sqrt(std::max(0.0, 1.0 - cxi * cxi));
    const double phi = rng.uniform(0.0, 2.0 * kPi);
    return {r * sxi * std::cos(phi), r * sxi * std::sin(phi), r * cxi};
}

// Uniform point in the ball of radius D around center.
inline Vec3 sample_uniform_ball(const Vec3& center, double D, Rng& rng) {
    if (!(D > 0.0)) throw std::domain_error("sample_uniform_ball: D must be positive");
    const double r = D * std::cbrt(rng.uniform());
    const double c = rng.uniform(-1.0, 1.0);
    const double s = std::sqrt(std::max(0.0, 1.0 - c * c));
    const double phi = rng.uniform(0.0, 2.0 * kPi);
    return {center.x + r * s * std::cos(phi), center.y + r * s * std::sin(phi), center.z + r * c};
}

// Type-II hard-core retention for given marks: a point survives iff its mark
// is strictly smallest among all points within D_min. Marks belong to points,
// so the retained set does not depend on input order.
inline PointSample thin_mhcpp_marked(const std::vector<Vec3>& positions,
                                     const std::vector<double>& marks, double D_min) {
    if (positions.size() != marks.size())
        throw std::domain_error("thin_mhcpp_marked: positions/marks size mismatch");
    if (!(D_min > 0.0)) throw std::domain_error("thin_mhcpp_marked: D_min must be positive");
    PointSample out;
    out.tag = ProcessTag::MHCPP;
    const double d2 = D_min * D_min;
    const size_t n = positions.size();
    for (size_t i = 0; i < n; ++i) {
        bool keep = true;
        for (size_t j = 0; j < n && keep; ++j) {
            if (j == i) continue;
            if (dist2(positions[i], positions[j]) < d2 && marks[j] <= marks[i]) keep = false;
        }
        if (keep) {
            out.positions.push_back(positions[i]);
            out.marks.push_back(marks[i]);
        }
    }
    return out;
}

// Same, drawing i.i.d. uniform marks first.
inline PointSample thin_mhcpp(const PointSample& candidates, double D_min, Rng& rng) {
    if (candidates.tag != ProcessTag::HPPP || !candidates.marks.empty())
        throw std::domain_error("thin_mhcpp: input must be an unmarked HPPP sample");
    std::vector<double> marks(candidates.positions.size());
    for (auto& m : marks) m = rng.uniform();
    return thin_mhcpp_marked(candidates.positions, marks, D_min);
}

inline PointSample sample_hppp_shell_cone(const SystemGeometry& g, double lambda, Rng& rng) {
    PointSample s;
    s.tag = ProcessTag::HPPP;
    const int64_t n = sample_count_hppp(lambda * g.V, rng);
    s.positions.reserve(static_cast<size_t>(n));
    for (int64_t i = 0; i < n; ++i) s.positions.push_back(sample_uniform_shell_cone(g, rng));
    return s;
}

// Hard-core cluster heads inside the shell cone, free of boundary bias:
// candidates are generated in the D_min-dilated region, thinning competes
// every point against its full neighbourhood, and only survivors inside the
// original region are kept (minus sampling). Type-II retention of a point
// depends only on marks within D_min of it, so this is exact.
inline PointSample sample_mhcpp_shell_cone(const SystemGeometry& g, double lambda_P,
                                           double D_min, Rng& rng) {
    if (!(D_min > 0.0)) throw std::domain_error("sample_mhcpp_shell_cone: D_min must be positive");
    const double r_lo = std::max(g.R - D_min, 0.0);
    const double r_hi = g.R + g.H_U + D_min;
    const double ang = (r_lo > D_min) ? std::asin(std::min(1.0, D_min / r_lo)) : kPi;
    const double xi_dil = std::min(kPi, g.xi0 + ang);

    const double v_dil = 2.0 * kPi / 3.0 * (1.0 - std::cos(xi_dil)) *
                         (r_hi * r_hi * r_hi - r_lo * r_lo * r_lo);
    const int64_t n = sample_count_hppp(lambda_P * v_dil, rng);

    PointSample candidates;
    candidates.tag = ProcessTag::HPPP;
    candidates.positions.reserve(static_cast<size_t>(n));
    for (int64_t i = 0; i < n; ++i) {
        const double r = std::cbrt(rng.uniform(r_lo * r_lo * r_lo, r_hi * r_hi * r_hi));
        const double cxi = rng.uniform(std::cos(xi_dil), 1.0);
        const double sxi = std::sqrt(std::max(0.0, 1.0 - cxi * cxi));
        const double phi = rng.uniform(0.0, 2.0 * kPi);
        candidates.positions.push_back(
            {r * sxi * std::cos(phi), r * sxi * std::sin(phi), r * cxi});
    }

    const PointSample retained = thin_mhcpp(candidates, D_min, rng);
    PointSample out;
    out.tag = ProcessTag::MHCPP;
    const double cos_xi0 = std::cos(g.xi0);
    for (size_t i = 0; i < retained.positions.size(); ++i) {
        const Vec3& p = retained.positions[i];
        const double r = std::sqrt(p.x * p.x + p.y * p.y + p.z * p.z);
        if (r < g.R || r > g.R + g.H_U) continue;
        if (p.z < r * cos_xi0) continue;
        out.positions.push_back(p);
        out.marks.push_back(retained.marks[i]);
    }
    return out;
}

} // namespace satcov
