#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

#include "satcov/common.hpp"

namespace satcov {

struct WilsonEstimate {
    double p = 0.0;
    double lo = 0.0;
    double hi = 0.0;
};

// Wilson score interval at 95%.
inline WilsonEstimate estimate_cp(int64_t successes, int64_t trials) {
    if (trials < 1 || successes < 0 || successes > trials)
        throw std::domain_error("estimate_cp: require 0 <= successes <= trials, trials >= 1");
    constexpr double z = 1.959963984540054;
    const double n = static_cast<double>(trials);
    const double p = static_cast<double>(successes) / n;
    const double z2n = z * z / n;
    const double center = (p + 0.5 * z2n) / (1.0 + z2n);
    const double half = z * std::sqrt(p * (1.0 - p) / n + 0.25 * z2n / n) / (1.0 + z2n);
    return {p, std::max(0.0, center - half), std::min(1.0, center + half)};
}

// Kolmogorov-Smirnov sup distance of samples against a reference CDF.
inline double ks_distance(std::vector<double> samples, const std::function<double(double)>& cdf) {
    if (samples.empty()) throw std::domain_error("ks_distance: no samples");
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    double d = 0.0;
    for (size_t i = 0; i < samples.size(); ++i) {
        const double f = cdf(samples[i]);
        d = std::max(d, std::fabs(f - static_cast<double>(i) / n));
        d = std::max(d, std::fabs(static_cast<double>(i + 1) / n - f));
    }
    return d;
}

// Asymptotic KS critical value; 1.628 is the 1% coefficient.
inline double ks_critical_1pct(size_t n) { return 1.628 / std::sqrt(static_cast<double>(n)); }

// Chi-square upper quantile via Wilson-Hilferty.
inline double chi2_quantile(int dof, double upper_tail_prob) {
    double zp;
    if (upper_tail_prob == 0.01) zp = 2.3263478740408408;
    else if (upper_tail_prob == 0.05) zp = 1.6448536269514722;
    else throw std::domain_error("chi2_quantile: only 1% and 5% tabulated");
    const double k = static_cast<double>(dof);
    const double t = 1.0 - 2.0 / (9.0 * k) + zp * std::sqrt(2.0 / (9.0 * k));
    return k * t * t * t;
}

// Pearson chi-square statistic for samples mapped through a reference CDF
// into `bins` equal-probability cells.
inline double chi2_uniform_cells(const std::vector<double>& samples,
                                 const std::function<double(double)>& cdf, int bins) {
    if (bins < 2 || samples.empty()) throw std::domain_error("chi2_uniform_cells: bad input");
    std::vector<int64_t> count(static_cast<size_t>(bins), 0);
    for (double s : samples) {
        const double u = clamp01(cdf(s));
        int idx = std::min(bins - 1, static_cast<int>(u * bins));
        count[static_cast<size_t>(idx)]++;
    }
    const double expect = static_cast<double>(samples.size()) / bins;
    double stat = 0.0;
    for (int64_t c : count) stat += square(static_cast<double>(c) - expect) / expect;
    return stat;
}

} // namespace satcov
