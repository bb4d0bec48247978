#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "satcov/common.hpp"

namespace satcov {

enum class LinkCase {
    FsoSch,
    RfNoInterference,
    RfSir,
    RfSinr,
    E2eNoInterference,
    E2eSir,
    E2eSinr,
};

struct CoverageQuery {
    double gamma_th = 1.0; // linear
    LinkCase link = LinkCase::FsoSch;
};

inline std::vector<double> db_grid(double start_db, double stop_db, double step_db) {
    if (!(step_db > 0.0) || stop_db < start_db)
        throw std::domain_error("db_grid: require step > 0 and stop >= start");
    std::vector<double> g;
    for (double v = start_db; v <= stop_db + 1e-9; v += step_db) g.push_back(v);
    return g;
}

// One analytic curve over a dB grid. `analytic` is clipped to [0,1] for
// plotting; the unclipped values (asymptotics can leave the unit interval
// outside their regime) ride along.
struct CoverageCurve {
    std::vector<double> x_db;
    std::vector<double> analytic;
    std::vector<double> analytic_raw;
    std::vector<double> asymptotic;     // empty when not defined
    std::vector<double> asymptotic_raw; // empty when not defined
    std::map<std::string, std::string> metadata;

    bool has_asymptotic() const { return !asymptotic.empty(); }
};

inline CoverageCurve sweep_curve(const std::vector<double>& x_db,
                                 const std::function<double(double)>& raw_value,
                                 const std::function<double(double)>& raw_asymptotic = {}) {
    CoverageCurve c;
    c.x_db = x_db;
    for (double xdb : x_db) {
        const double v = raw_value(db_to_linear(xdb));
        c.analytic_raw.push_back(v);
        c.analytic.push_back(clamp01(v));
        if (raw_asymptotic) {
            const double a = raw_asymptotic(db_to_linear(xdb));
            c.asymptotic_raw.push_back(a);
            c.asymptotic.push_back(clamp01(a));
        }
    }
    return c;
}

// Least-squares slope of log10(y) against log10(x); used for diversity-order
// fits on the top decade of a transmit-SNR sweep.
inline double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2)
        throw std::domain_error("loglog_slope: need >= 2 points");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    size_t n = 0;
    for (size_t i = 0; i < x.size(); ++i) {
        if (!(x[i] > 0.0) || !(y[i] > 0.0))
            throw numeric_error("loglog_slope: non-positive sample in log fit");
        const double lx = std::log10(x[i]);
        const double ly = std::log10(y[i]);
        sx += lx; sy += ly; sxx += lx * lx; sxy += lx * ly;
        ++n;
    }
    const double det = n * sxx - sx * sx;
    if (det == 0.0) throw numeric_error("loglog_slope: degenerate abscissas");
    return (n * sxy - sx * sy) / det;
}

} // namespace satcov
