#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <string>
#include <thread>
#include <vector>

#include "satcov/common.hpp"
#include "satcov/curve.hpp"
#include "satcov/distance_dist.hpp"
#include "satcov/e2e.hpp"
#include "satcov/fso_channel.hpp"
#include "satcov/geometry.hpp"
#include "satcov/point_process.hpp"
#include "satcov/rf_channel.hpp"
#include "satcov/rng.hpp"
#include "satcov/stats.hpp"

namespace satcov {

enum class McScenario {
    FsoSch,
    RfNoInterference,
    RfSir,
    RfSinr,
    E2eNoInterference,
    E2eSir,
    E2eSinr,
    PointProcessCheck,
    LtCheck,
};

enum class InterferenceGeometry {
    // Interferers Poisson in the [D_min, D_max] shell around the serving CH;
    // this is the geometry the closed forms integrate.
    Approximate,
    // Full hard-core field conditioned on a CH at the origin, sensitivity
    // radius applied around the UAV.
    Exact,
};

struct McConfig {
    McScenario scenario = McScenario::FsoSch;
    int64_t trials = 100000;
    uint64_t seed = 1;
    int threads = 1;
    std::vector<double> thresholds_db = db_grid(0.0, 40.0, 1.0);

    SystemGeometry geometry;
    FsoLinkParams fso;
    RfLinkParams rf;
    DeploymentParams deployment;

    bool fso_full_thinning = false;
    InterferenceGeometry interference_geometry = InterferenceGeometry::Approximate;

    // PointProcessCheck: hard-core radii to sweep and sample budget per curve.
    std::vector<double> pointprocess_dmin = {};
    int64_t pointprocess_samples = 10000;

    // LtCheck: transform abscissas and serving distances.
    std::vector<double> lt_s_values = {1e6, 1e7, 1e8};
    std::vector<double> lt_d_fractions = {0.25, 0.5, 1.0};

    void validate() const {
        if (trials < 1) throw config_error("McConfig: trials must be >= 1");
        if (threads < 1) throw config_error("McConfig: threads must be >= 1");
        if (thresholds_db.empty()) throw config_error("McConfig: empty threshold grid");
        for (size_t i = 1; i < thresholds_db.size(); ++i)
            if (!(thresholds_db[i] > thresholds_db[i - 1]))
                throw config_error("McConfig: thresholds must increase strictly");
    }
};

struct ThresholdRow {
    double threshold_db = 0.0;
    double value = 0.0; // CP for coverage scenarios, OP for e2e
    double ci_lo = 0.0;
    double ci_hi = 0.0;
    int64_t trials = 0;
};

struct PointProcessRow {
    std::string label;
    int64_t n_samples = 0;
    double ks_lk = 0.0;
    double ks_dk2 = 0.0;
    double ks_critical = 0.0;
    double mean_retained = 0.0;
    double expected_retained = 0.0;
    double count_sigma = 0.0; // std of retained count / sqrt(realizations)
};

struct LtRow {
    double s = 0.0;
    double d_kj = 0.0;
    double empirical = 0.0;
    double std_error = 0.0;
};

struct McReport {
    McScenario scenario = McScenario::FsoSch;
    uint64_t seed = 0;
    int64_t trials = 0;
    std::vector<ThresholdRow> rows;
    std::vector<PointProcessRow> pointprocess;
    std::vector<LtRow> lt_rows;
    bool degenerate = false;
    double wall_time_s = 0.0;
    std::map<std::string, std::string> metadata;
};

namespace detail {

inline double cube(double v) { return v * v * v; }

// Shard [0, trials) across threads; each trial gets substream(seed, index),
// so the result is independent of the shard layout.
template <typename PerTrial>
void run_trials(int64_t trials, uint64_t seed, int threads, PerTrial&& per_trial,
                std::vector<std::vector<int64_t>>& thread_hists, size_t hist_size) {
    threads = std::max(1, threads);
    thread_hists.assign(static_cast<size_t>(threads), std::vector<int64_t>(hist_size, 0));
    if (threads == 1) {
        for (int64_t t = 0; t < trials; ++t) {
            Rng rng = Rng::substream(seed, static_cast<uint64_t>(t));
            per_trial(t, rng, thread_hists[0]);
        }
        return;
    }
    std::vector<std::thread> pool;
    const int64_t chunk = (trials + threads - 1) / threads;
    for (int w = 0; w < threads; ++w) {
        const int64_t lo = w * chunk;
        const int64_t hi = std::min(trials, lo + chunk);
        pool.emplace_back([&, w, lo, hi]() {
            for (int64_t t = lo; t < hi; ++t) {
                Rng rng = Rng::substream(seed, static_cast<uint64_t>(t));
                per_trial(t, rng, thread_hists[static_cast<size_t>(w)]);
            }
        });
    }
    for (auto& th : pool) th.join();
}

// Merge per-thread histograms of "first uncovered threshold index" into
// coverage counts: covered(j) = #{trials with value >= threshold_j}.
inline std::vector<int64_t> coverage_counts(const std::vector<std::vector<int64_t>>& hists,
                                            size_t n_thresholds) {
    std::vector<int64_t> hist(n_thresholds + 1, 0);
    for (const auto& h : hists)
        for (size_t i = 0; i < h.size(); ++i) hist[i] += h[i];
    std::vector<int64_t> covered(n_thresholds, 0);
    int64_t suffix = 0;
    for (size_t j = n_thresholds; j-- > 0;) {
        suffix += hist[j + 1];
        covered[j] = suffix;
    }
    return covered;
}

inline size_t threshold_bucket(const std::vector<double>& thr_linear, double value) {
    // number of thresholds <= value
    return static_cast<size_t>(std::upper_bound(thr_linear.begin(), thr_linear.end(), value) -
                               thr_linear.begin());
}

inline std::vector<double> linear_thresholds(const std::vector<double>& db) {
    std::vector<double> v;
    v.reserve(db.size());
    for (double x : db) v.push_back(db_to_linear(x));
    return v;
}

inline McReport assemble(const McConfig& cfg, const std::vector<int64_t>& covered,
                         bool complement) {
    McReport rep;
    rep.scenario = cfg.scenario;
    rep.seed = cfg.seed;
    rep.trials = cfg.trials;
    for (size_t j = 0; j < cfg.thresholds_db.size(); ++j) {
        const int64_t k = complement ? cfg.trials - covered[j] : covered[j];
        const WilsonEstimate w = estimate_cp(k, cfg.trials);
        rep.rows.push_back({cfg.thresholds_db[j], w.p, w.lo, w.hi, cfg.trials});
    }
    return rep;
}

// d^2 to the satellite for a CH drawn uniformly in the shell cone.
inline double draw_dk2(const SystemGeometry& g, Rng& rng) {
    const double r = std::cbrt(rng.uniform(g.R * g.R * g.R, cube(g.R + g.H_U)));
    const double cxi = rng.uniform(std::cos(g.xi0), 1.0);
    return r * r + g.L * g.L - 2.0 * r * g.L * cxi;
}

// Same, via a full hard-core realization (uniform pick among survivors).
inline double draw_dk2_full_thinning(const SystemGeometry& g, const DeploymentParams& dep,
                                     Rng& rng) {
    for (int attempt = 0; attempt < 1000; ++attempt) {
        const PointSample s = sample_mhcpp_shell_cone(g, dep.lambda_P, dep.D_min, rng);
        if (s.positions.empty()) continue;
        const size_t pick = std::min(s.positions.size() - 1,
                                     static_cast<size_t>(rng.uniform() * s.positions.size()));
        const Vec3& p = s.positions[pick];
        const double r2 = p.x * p.x + p.y * p.y + p.z * p.z;
        return r2 + g.L * g.L - 2.0 * g.L * p.z;
    }
    throw numeric_error("draw_dk2_full_thinning: region produced no retained points");
}

struct RfDraw {
    double snr = 0.0;  // P_R g / (rho d^a N_R)
    double sir = 0.0;  // (g d^-a) / I, inf when I = 0
    double sinr = 0.0; // (g d^-a) / (I + rho N_R / P_R)
};

inline double interference_sum_approx(double d_kj, const RfLinkParams& rf,
                                      const DeploymentParams& dep, Rng& rng) {
    const int64_t n = rng.poisson(dep.lambda_CH * dep.V1);
    double I = 0.0;
    for (int64_t i = 0; i < n; ++i) {
        const double r = std::cbrt(rng.uniform(cube(dep.D_min), cube(dep.D_max)));
        const double c = rng.uniform(-1.0, 1.0);
        const double dji2 = r * r + d_kj * d_kj - 2.0 * r * d_kj * c;
        const double g = rng.gamma(static_cast<double>(rf.m), rf.Omega / rf.m);
        I += g * std::pow(dji2, -rf.alpha_r / 2.0);
    }
    return I;
}

inline double interference_sum_exact(const Vec3& uav, const RfLinkParams& rf,
                                     const DeploymentParams& dep, Rng& rng) {
    const double radius = dep.D_max + dep.D + dep.D_min;
    const double vol = 4.0 * kPi / 3.0 * cube(radius);
    for (int attempt = 0; attempt < 200; ++attempt) {
        const int64_t n = rng.poisson(dep.lambda_P * vol);
        std::vector<Vec3> pts(static_cast<size_t>(n));
        for (auto& p : pts) p = sample_uniform_ball({0, 0, 0}, radius, rng);
        std::vector<double> marks(pts.size() + 1);
        for (auto& m : marks) m = rng.uniform();
        const double mark_ch = marks.back();
        // the serving CH at the origin must survive its own neighbourhood
        bool ch_ok = true;
        const double dmin2 = dep.D_min * dep.D_min;
        for (size_t i = 0; i < pts.size() && ch_ok; ++i)
            if (dist2(pts[i], {0, 0, 0}) < dmin2 && marks[i] <= mark_ch) ch_ok = false;
        if (!ch_ok) continue;
        double I = 0.0;
        for (size_t i = 0; i < pts.size(); ++i) {
            if (dist2(pts[i], {0, 0, 0}) < dmin2) continue; // eliminated by the CH
            bool keep = true;
            for (size_t j = 0; j < pts.size() && keep; ++j) {
                if (j == i) continue;
                if (dist2(pts[i], pts[j]) < dmin2 && marks[j] <= marks[i]) keep = false;
            }
            if (!keep) continue;
            const double dji2 = dist2(pts[i], uav);
            if (dji2 > dep.D_max * dep.D_max) continue; // outside sensitivity
            const double g = rng.gamma(static_cast<double>(rf.m), rf.Omega / rf.m);
            I += g * std::pow(dji2, -rf.alpha_r / 2.0);
        }
        return I;
    }
    throw numeric_error("interference_sum_exact: conditioning failed repeatedly");
}

inline RfDraw draw_rf(const McConfig& cfg, Rng& rng, bool with_interference) {
    const RfLinkParams& rf = cfg.rf;
    const DeploymentParams& dep = cfg.deployment;
    RfDraw out;
    const double d_kj = dep.D * std::cbrt(rng.uniform());
    const double g = rng.gamma(static_cast<double>(rf.m), rf.Omega / rf.m);
    const double d_pow = std::pow(d_kj, rf.alpha_r);
    out.snr = rf.P_R * g / (rf.rho * d_pow * rf.N_R);
    if (!with_interference) return out;
    double I;
    if (cfg.interference_geometry == InterferenceGeometry::Approximate) {
        I = interference_sum_approx(d_kj, rf, dep, rng);
    } else {
        const Vec3 uav{0, 0, d_kj};
        I = interference_sum_exact(uav, rf, dep, rng);
    }
    const double signal = g / d_pow;
    out.sir = (I > 0.0) ? signal / I : std::numeric_limits<double>::infinity();
    out.sinr = signal / (I + rf.rho * rf.N_R / rf.P_R);
    return out;
}

inline double draw_fso_snr(const McConfig& cfg, Rng& rng) {
    const double dk2 = cfg.fso_full_thinning
                           ? draw_dk2_full_thinning(cfg.geometry, cfg.deployment, rng)
                           : draw_dk2(cfg.geometry, rng);
    const double h = sample_fso_gain(cfg.fso, rng);
    return fso_snr(h, std::sqrt(dk2), cfg.fso);
}

} // namespace detail

inline McReport run_fso_trials(const McConfig& cfg) {
    cfg.validate();
    cfg.fso.validate();
    const auto t0 = std::chrono::steady_clock::now();
    const std::vector<double> thr = detail::linear_thresholds(cfg.thresholds_db);
    std::vector<std::vector<int64_t>> hists;
    detail::run_trials(
        cfg.trials, cfg.seed, cfg.threads,
        [&](int64_t, Rng& rng, std::vector<int64_t>& hist) {
            hist[detail::threshold_bucket(thr, detail::draw_fso_snr(cfg, rng))]++;
        },
        hists, thr.size() + 1);
    McReport rep = detail::assemble(cfg, detail::coverage_counts(hists, thr.size()), false);
    rep.metadata["mode"] = cfg.fso_full_thinning ? "full-thinning" : "uniform";
    rep.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

inline McReport run_rf_trials(const McConfig& cfg) {
    cfg.validate();
    cfg.rf.validate();
    const auto t0 = std::chrono::steady_clock::now();
    const std::vector<double> thr = detail::linear_thresholds(cfg.thresholds_db);
    const bool interf = cfg.scenario == McScenario::RfSir || cfg.scenario == McScenario::RfSinr;
    std::vector<std::vector<int64_t>> hists;
    detail::run_trials(
        cfg.trials, cfg.seed, cfg.threads,
        [&](int64_t, Rng& rng, std::vector<int64_t>& hist) {
            const detail::RfDraw d = detail::draw_rf(cfg, rng, interf);
            double v = d.snr;
            if (cfg.scenario == McScenario::RfSir) v = d.sir;
            else if (cfg.scenario == McScenario::RfSinr) v = d.sinr;
            hist[detail::threshold_bucket(thr, v)]++;
        },
        hists, thr.size() + 1);
    McReport rep = detail::assemble(cfg, detail::coverage_counts(hists, thr.size()), false);
    rep.metadata["geometry"] =
        cfg.interference_geometry == InterferenceGeometry::Approximate ? "approximate" : "exact";
    rep.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

// Dual-hop outage: per trial, gamma_eq = min of independent hop draws; rows
// report outage (1 - coverage of the minimum).
inline McReport run_e2e_trials(const McConfig& cfg) {
    cfg.validate();
    cfg.fso.validate();
    cfg.rf.validate();
    const auto t0 = std::chrono::steady_clock::now();
    const std::vector<double> thr = detail::linear_thresholds(cfg.thresholds_db);
    const bool interf =
        cfg.scenario == McScenario::E2eSir || cfg.scenario == McScenario::E2eSinr;
    std::vector<std::vector<int64_t>> hists;
    detail::run_trials(
        cfg.trials, cfg.seed, cfg.threads,
        [&](int64_t, Rng& rng, std::vector<int64_t>& hist) {
            const double g1 = detail::draw_fso_snr(cfg, rng);
            const detail::RfDraw d = detail::draw_rf(cfg, rng, interf);
            double g2 = d.snr;
            if (cfg.scenario == McScenario::E2eSir) g2 = d.sir;
            else if (cfg.scenario == McScenario::E2eSinr) g2 = d.sinr;
            hist[detail::threshold_bucket(thr, std::min(g1, g2))]++;
        },
        hists, thr.size() + 1);
    McReport rep = detail::assemble(cfg, detail::coverage_counts(hists, thr.size()), true);
    rep.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

// Empirical CDF checks of l_k and d_k^2 for the candidate process and for the
// hard-core process at each configured D_min, plus retained-count statistics.
inline McReport run_pointprocess_check(const McConfig& cfg) {
    cfg.validate();
    const auto t0 = std::chrono::steady_clock::now();
    const SystemGeometry& g = cfg.geometry;
    McReport rep;
    rep.scenario = cfg.scenario;
    rep.seed = cfg.seed;
    rep.trials = cfg.trials;
    if (cfg.deployment.lambda_P * g.V < 1e-3) {
        rep.degenerate = true;
        rep.metadata["degenerate"] = "expected candidate count below 1e-3";
        return rep;
    }

    auto cdf_l = [&](double x) { return cdf_lk(x, g); };
    auto cdf_d2 = [&](double y) { return cdf_dk2(y, g); };

    uint64_t stream = 0;
    auto collect = [&](double dmin, bool thin, const std::string& label) {
        std::vector<double> lk, dk2;
        double count_sum = 0.0, count_sq = 0.0;
        int64_t realizations = 0;
        Rng rng = Rng::substream(cfg.seed, stream++);
        while (static_cast<int64_t>(lk.size()) < cfg.pointprocess_samples) {
            std::vector<Vec3> pts;
            if (thin) {
                pts = sample_mhcpp_shell_cone(g, cfg.deployment.lambda_P, dmin, rng).positions;
            } else {
                pts = sample_hppp_shell_cone(g, cfg.deployment.lambda_P, rng).positions;
            }
            ++realizations;
            count_sum += static_cast<double>(pts.size());
            count_sq += square(static_cast<double>(pts.size()));
            for (const Vec3& p : pts) {
                const double r2 = p.x * p.x + p.y * p.y + p.z * p.z;
                lk.push_back(std::sqrt(r2));
                dk2.push_back(r2 + g.L * g.L - 2.0 * g.L * p.z);
            }
            if (realizations > 2000000) throw numeric_error("pointprocess check: region too sparse");
        }
        PointProcessRow row;
        row.label = label;
        row.n_samples = static_cast<int64_t>(lk.size());
        row.ks_lk = ks_distance(lk, cdf_l);
        row.ks_dk2 = ks_distance(dk2, cdf_d2);
        row.ks_critical = ks_critical_1pct(lk.size());
        row.mean_retained = count_sum / static_cast<double>(realizations);
        row.expected_retained =
            (thin ? mhcpp_intensity(cfg.deployment.lambda_P, dmin) : cfg.deployment.lambda_P) * g.V;
        const double var =
            count_sq / static_cast<double>(realizations) - square(row.mean_retained);
        row.count_sigma = std::sqrt(std::max(var, 0.0) / static_cast<double>(realizations));
        rep.pointprocess.push_back(row);
    };

    collect(0.0, false, "HPPP");
    for (double dmin : cfg.pointprocess_dmin)
        collect(dmin, true, "MHCPP D_min=" + std::to_string(dmin / 1000.0) + " km");
    rep.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

// Empirical interference Laplace transform at the configured (s, d) points.
inline McReport run_lt_check(const McConfig& cfg) {
    cfg.validate();
    cfg.rf.validate();
    const auto t0 = std::chrono::steady_clock::now();
    McReport rep;
    rep.scenario = cfg.scenario;
    rep.seed = cfg.seed;
    rep.trials = cfg.trials;
    uint64_t stream_base = 0;
    for (double frac : cfg.lt_d_fractions) {
        const double d_kj = frac * cfg.deployment.D;
        std::vector<KahanSum> sums(cfg.lt_s_values.size());
        std::vector<KahanSum> sq(cfg.lt_s_values.size());
        for (int64_t t = 0; t < cfg.trials; ++t) {
            Rng rng = Rng::substream(cfg.seed, stream_base + static_cast<uint64_t>(t));
            const double I = detail::interference_sum_approx(d_kj, cfg.rf, cfg.deployment, rng);
            for (size_t k = 0; k < cfg.lt_s_values.size(); ++k) {
                const double v = std::exp(-cfg.lt_s_values[k] * I);
                sums[k].add(v);
                sq[k].add(v * v);
            }
        }
        stream_base += static_cast<uint64_t>(cfg.trials);
        for (size_t k = 0; k < cfg.lt_s_values.size(); ++k) {
            const double n = static_cast<double>(cfg.trials);
            const double mean = sums[k].value() / n;
            const double var = std::max(0.0, sq[k].value() / n - mean * mean);
            rep.lt_rows.push_back({cfg.lt_s_values[k], d_kj, mean, std::sqrt(var / n)});
        }
    }
    rep.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

inline McReport run_scenario(const McConfig& cfg) {
    switch (cfg.scenario) {
    case McScenario::FsoSch: return run_fso_trials(cfg);
    case McScenario::RfNoInterference:
    case McScenario::RfSir:
    case McScenario::RfSinr: return run_rf_trials(cfg);
    case McScenario::E2eNoInterference:
    case McScenario::E2eSir:
    case McScenario::E2eSinr: return run_e2e_trials(cfg);
    case McScenario::PointProcessCheck: return run_pointprocess_check(cfg);
    case McScenario::LtCheck: return run_lt_check(cfg);
    }
    throw config_error("run_scenario: unknown scenario");
}

} // namespace satcov
