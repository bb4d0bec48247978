#pragma once

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include "satcov/common.hpp"
#include "satcov/config.hpp"
#include "satcov/curve.hpp"
#include "satcov/mc.hpp"

namespace satcov {

namespace detail {

inline std::string fmt(double v) {
    std::ostringstream os;
    os << std::setprecision(12) << v;
    return os.str();
}

inline std::ofstream open_out(const std::string& path) {
    std::filesystem::path p(path);
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
    std::ofstream f(path);
    if (!f) throw config_error("cannot open output file: " + path);
    return f;
}

} // namespace detail

// Column order is part of the file contract; see README.
inline void write_curve_csv(const std::string& path, const std::string& x_name,
                            const CoverageCurve& c) {
    std::ofstream f = detail::open_out(path);
    f << x_name << ",cp_analytic,cp_analytic_raw,analytic_clipped";
    if (c.has_asymptotic()) f << ",cp_asymptotic,cp_asymptotic_raw,asymptotic_clipped";
    f << "\n";
    for (size_t i = 0; i < c.x_db.size(); ++i) {
        f << detail::fmt(c.x_db[i]) << "," << detail::fmt(c.analytic[i]) << ","
          << detail::fmt(c.analytic_raw[i]) << ","
          << (c.analytic[i] != c.analytic_raw[i] ? 1 : 0);
        if (c.has_asymptotic())
            f << "," << detail::fmt(c.asymptotic[i]) << "," << detail::fmt(c.asymptotic_raw[i])
              << "," << (c.asymptotic[i] != c.asymptotic_raw[i] ? 1 : 0);
        f << "\n";
    }
}

inline void write_mc_csv(const std::string& path, const McReport& rep) {
    std::ofstream f = detail::open_out(path);
    f << "threshold_dB,cp_emp,ci_lo,ci_hi,trials\n";
    for (const ThresholdRow& r : rep.rows)
        f << detail::fmt(r.threshold_db) << "," << detail::fmt(r.value) << ","
          << detail::fmt(r.ci_lo) << "," << detail::fmt(r.ci_hi) << "," << r.trials << "\n";
}

inline void write_pointprocess_csv(const std::string& path, const McReport& rep) {
    std::ofstream f = detail::open_out(path);
    f << "label,n_samples,ks_lk,ks_dk2,ks_critical_1pct,mean_retained,expected_retained,"
         "count_sigma\n";
    for (const PointProcessRow& r : rep.pointprocess)
        f << r.label << "," << r.n_samples << "," << detail::fmt(r.ks_lk) << ","
          << detail::fmt(r.ks_dk2) << "," << detail::fmt(r.ks_critical) << ","
          << detail::fmt(r.mean_retained) << "," << detail::fmt(r.expected_retained) << ","
          << detail::fmt(r.count_sigma) << "\n";
}

inline void write_lt_csv(const std::string& path, const McReport& rep,
                         const std::vector<double>& analytic) {
    std::ofstream f = detail::open_out(path);
    f << "s,d_kj_m,lt_empirical,std_error,lt_analytic\n";
    for (size_t i = 0; i < rep.lt_rows.size(); ++i) {
        const LtRow& r = rep.lt_rows[i];
        f << detail::fmt(r.s) << "," << detail::fmt(r.d_kj) << "," << detail::fmt(r.empirical)
          << "," << detail::fmt(r.std_error) << ","
          << (i < analytic.size() ? detail::fmt(analytic[i]) : "") << "\n";
    }
}

inline void write_metadata_json(const std::string& path, const RunConfig& cfg,
                                const McReport* rep) {
    json j;
    j["config"] = cfg.to_json();
    j["warnings"] = cfg.mc.deployment.warnings();
    const MeijerFsoParams mp = cfg.mc.fso.meijer();
    j["meijer_perturbed"] = mp.perturbed;
    if (mp.perturbed)
        j["meijer_params_effective"] = {
            {"alpha", mp.alpha}, {"beta", mp.beta}, {"omega_sq", mp.omega_sq}};
    if (rep) {
        j["seed"] = rep->seed;
        j["trials"] = rep->trials;
        j["wall_time_s"] = rep->wall_time_s;
        j["degenerate"] = rep->degenerate;
        for (const auto& kv : rep->metadata) j[kv.first] = kv.second;
    }
    std::ofstream f = detail::open_out(path);
    f << j.dump(2) << "\n";
}

// Minimal line chart, enough to eyeball a curve without external tooling.
inline void write_svg(const std::string& path, const std::string& title,
                      const std::vector<double>& x,
                      const std::vector<std::pair<std::string, std::vector<double>>>& series,
                      bool log_y = false) {
    if (x.empty() || series.empty()) return;
    const double W = 640, H = 420, ml = 60, mr = 20, mt = 30, mb = 40;
    double xmin = x.front(), xmax = x.back();
    double ymin = 1e300, ymax = -1e300;
    for (const auto& s : series)
        for (double v : s.second) {
            const double t = log_y ? (v > 0 ? std::log10(v) : 0.0) : v;
            if (v > 0 || !log_y) {
                ymin = std::min(ymin, t);
                ymax = std::max(ymax, t);
            }
        }
    if (!(ymax > ymin)) { ymax = ymin + 1.0; }
    auto X = [&](double v) { return ml + (v - xmin) / (xmax - xmin) * (W - ml - mr); };
    auto Y = [&](double v) {
        const double t = log_y ? (v > 0 ? std::log10(v) : ymin) : v;
        return H - mb - (t - ymin) / (ymax - ymin) * (H - mt - mb);
    };
    static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};
    std::ofstream f = detail::open_out(path);
    f << "<svg xmlns='http://www.w3.org/2000/svg' width='" << W << "' height='" << H << "'>\n";
    f << "<rect width='100%' height='100%' fill='white'/>\n";
    f << "<text x='" << W / 2 << "' y='18' text-anchor='middle' font-size='14'>" << title
      << "</text>\n";
    f << "<line x1='" << ml << "' y1='" << H - mb << "' x2='" << W - mr << "' y2='" << H - mb
      << "' stroke='black'/>\n";
    f << "<line x1='" << ml << "' y1='" << mt << "' x2='" << ml << "' y2='" << H - mb
      << "' stroke='black'/>\n";
    int ci = 0;
    for (const auto& s : series) {
        f << "<polyline fill='none' stroke='" << colors[ci % 5] << "' stroke-width='1.5' points='";
        for (size_t i = 0; i < x.size() && i < s.second.size(); ++i)
            f << X(x[i]) << "," << Y(s.second[i]) << " ";
        f << "'/>\n";
        f << "<text x='" << W - mr - 150 << "' y='" << mt + 16 * (ci + 1) << "' fill='"
          << colors[ci % 5] << "' font-size='12'>" << s.first << "</text>\n";
        ++ci;
    }
    f << "</svg>\n";
}

} // namespace satcov
