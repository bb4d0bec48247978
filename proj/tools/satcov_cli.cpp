// Command-line front end: analytic sweeps, Monte-Carlo runs, analytic-vs-MC
// validation, and diversity-order fits. Outputs CSV plus a JSON metadata
// sidecar per run; optional SVG line plots.
//
// Exit codes: 0 ok, 1 configuration error, 2 numeric diagnostic,
// 3 validation failure.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "satcov/satcov.hpp"

namespace {

using namespace satcov;

struct CliOptions {
    std::string config_path;
    std::string preset;
    std::string out_dir = "out";
    std::optional<uint64_t> seed;
    std::optional<int64_t> trials;
    bool svg = false;
};

std::vector<std::pair<std::string, RunConfig>> load_runs(const CliOptions& opt) {
    std::vector<std::pair<std::string, RunConfig>> runs;
    if (!opt.preset.empty()) {
        runs = expand_preset(opt.preset);
    } else if (!opt.config_path.empty()) {
        std::ifstream f(opt.config_path);
        if (!f) throw config_error("cannot open config file: " + opt.config_path);
        json j;
        try {
            j = json::parse(f);
        } catch (const json::exception& e) {
            throw config_error(std::string("config parse: ") + e.what());
        }
        runs.emplace_back("run", RunConfig::from_json(j));
    } else {
        runs.emplace_back("run", RunConfig::table1_defaults());
    }
    for (auto& [name, cfg] : runs) {
        if (opt.seed) cfg.mc.seed = *opt.seed;
        if (opt.trials) cfg.mc.trials = *opt.trials;
        cfg.out_dir = opt.out_dir;
        cfg.svg = cfg.svg || opt.svg;
        for (const std::string& w : cfg.mc.deployment.warnings())
            std::fprintf(stderr, "warning: %s\n", w.c_str());
    }
    return runs;
}

std::string out_path(const RunConfig& cfg, const std::string& stem, const std::string& ext) {
    return (std::filesystem::path(cfg.out_dir) / (stem + ext)).string();
}

// Analytic curve (and asymptote where defined) for one config.
CoverageCurve analytic_curve(const RunConfig& cfg) {
    const McConfig& m = cfg.mc;
    const bool sweep_power = !cfg.sweep.variable.empty();
    const std::vector<double> grid = sweep_power ? cfg.sweep.grid() : m.thresholds_db;

    auto value_at = [&](double x_db, bool asym) -> double {
        McConfig c = m; // copy so power sweeps can rebind the swept field
        double gamma_th;
        if (sweep_power) {
            gamma_th = db_to_linear(cfg.sweep.gamma_th_db);
            if (cfg.sweep.variable == "P_S_dBm") c.fso.P_S = dbm_to_watt(x_db);
            else c.rf.P_R = c.rf.N_R * db_to_linear(x_db);
        } else {
            gamma_th = db_to_linear(x_db);
        }
        switch (c.scenario) {
        case McScenario::FsoSch:
            return asym ? cp_sch_asymptotic(gamma_th, c.geometry, c.fso, cfg.M_f)
                        : cp_sch(gamma_th, c.geometry, c.fso, cfg.M_f);
        case McScenario::RfNoInterference:
            return asym ? cp_rf_nointerference_asymptotic(gamma_th, c.rf, c.deployment.D)
                        : cp_rf_nointerference(gamma_th, c.rf, c.deployment.D);
        case McScenario::RfSir: return cp_rf_sir(gamma_th, c.rf, c.deployment, cfg.M_r);
        case McScenario::RfSinr: return cp_rf_sinr(gamma_th, c.rf, c.deployment, cfg.M_r);
        case McScenario::E2eNoInterference:
            return op_e2e(gamma_th, c.geometry, c.fso, c.rf, c.deployment,
                          RfCase::InterferenceFree, cfg.M_f, cfg.M_r);
        case McScenario::E2eSir:
            return op_e2e(gamma_th, c.geometry, c.fso, c.rf, c.deployment,
                          RfCase::InterferenceDominated, cfg.M_f, cfg.M_r);
        case McScenario::E2eSinr:
            return op_e2e(gamma_th, c.geometry, c.fso, c.rf, c.deployment,
                          RfCase::InterferenceAndNoise, cfg.M_f, cfg.M_r);
        default:
            throw config_error("scenario has no analytic curve (use 'simulate')");
        }
    };

    const bool has_asym =
        m.scenario == McScenario::FsoSch || m.scenario == McScenario::RfNoInterference;
    CoverageCurve curve;
    curve.x_db = grid;
    for (double x : grid) {
        const double v = value_at(x, false);
        curve.analytic_raw.push_back(v);
        curve.analytic.push_back(clamp01(v));
        if (has_asym) {
            const double a = value_at(x, true);
            curve.asymptotic_raw.push_back(a);
            curve.asymptotic.push_back(clamp01(a));
        }
    }
    curve.metadata["scenario"] = detail::scenario_to_string(m.scenario);
    return curve;
}

int cmd_analytic(const CliOptions& opt) {
    for (const auto& [name, cfg] : load_runs(opt)) {
        const std::string x_name = cfg.sweep.variable.empty()
                                       ? std::string("threshold_dB")
                                       : cfg.sweep.variable;
        const CoverageCurve curve = analytic_curve(cfg);
        const std::string stem = "analytic_" + detail::scenario_to_string(cfg.mc.scenario) +
                                 (name == "run" ? "" : "_" + name);
        write_curve_csv(out_path(cfg, stem, ".csv"), x_name, curve);
        write_metadata_json(out_path(cfg, stem + "_meta", ".json"), cfg, nullptr);
        if (cfg.svg) {
            std::vector<std::pair<std::string, std::vector<double>>> series = {
                {"analytic", curve.analytic}};
            if (curve.has_asymptotic()) series.push_back({"asymptotic", curve.asymptotic});
            write_svg(out_path(cfg, stem, ".svg"), stem, curve.x_db, series);
        }
        std::printf("wrote %s\n", out_path(cfg, stem, ".csv").c_str());
    }
    return 0;
}

int cmd_simulate(const CliOptions& opt) {
    for (const auto& [name, cfg] : load_runs(opt)) {
        const std::string stem = "simulate_" + detail::scenario_to_string(cfg.mc.scenario) +
                                 (name == "run" ? "" : "_" + name);
        if (cfg.mc.scenario == McScenario::PointProcessCheck) {
            const McReport rep = run_pointprocess_check(cfg.mc);
            write_pointprocess_csv(out_path(cfg, stem, ".csv"), rep);
            write_metadata_json(out_path(cfg, stem + "_meta", ".json"), cfg, &rep);
        } else if (cfg.mc.scenario == McScenario::LtCheck) {
            const McReport rep = run_lt_check(cfg.mc);
            std::vector<double> ana;
            for (const LtRow& r : rep.lt_rows)
                ana.push_back(laplace_interference(r.s, r.d_kj, cfg.mc.rf, cfg.mc.deployment));
            write_lt_csv(out_path(cfg, stem, ".csv"), rep, ana);
            write_metadata_json(out_path(cfg, stem + "_meta", ".json"), cfg, &rep);
        } else if (!cfg.sweep.variable.empty()) {
            // power sweep: one MC batch per abscissa at the fixed threshold
            std::ofstream f;
            const std::string path = out_path(cfg, stem, ".csv");
            std::filesystem::create_directories(cfg.out_dir);
            f.open(path);
            f << cfg.sweep.variable << ",cp_emp,ci_lo,ci_hi,trials\n";
            McReport last;
            for (double x : cfg.sweep.grid()) {
                McConfig c = cfg.mc;
                c.thresholds_db = {cfg.sweep.gamma_th_db};
                if (cfg.sweep.variable == "P_S_dBm") c.fso.P_S = dbm_to_watt(x);
                else c.rf.P_R = c.rf.N_R * db_to_linear(x);
                last = run_scenario(c);
                const ThresholdRow& r = last.rows.at(0);
                f << x << "," << r.value << "," << r.ci_lo << "," << r.ci_hi << "," << r.trials
                  << "\n";
            }
            write_metadata_json(out_path(cfg, stem + "_meta", ".json"), cfg, &last);
        } else {
            const McReport rep = run_scenario(cfg.mc);
            write_mc_csv(out_path(cfg, stem, ".csv"), rep);
            write_metadata_json(out_path(cfg, stem + "_meta", ".json"), cfg, &rep);
            if (cfg.svg) {
                std::vector<std::pair<std::string, std::vector<double>>> series(1);
                series[0].first = "empirical";
                for (const ThresholdRow& r : rep.rows) series[0].second.push_back(r.value);
                write_svg(out_path(cfg, stem, ".svg"), stem, cfg.mc.thresholds_db, series);
            }
        }
        std::printf("wrote %s\n", out_path(cfg, stem, ".csv").c_str());
    }
    return 0;
}

struct ValidationResult {
    std::string scenario;
    double max_abs_delta = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

// Paired analytic + MC comparison for the five curve families, plus the
// quadrature-doubling stability deltas.
int cmd_validate(const CliOptions& opt) {
    const auto runs = load_runs(opt);
    const RunConfig& base = runs.front().second;
    std::vector<ValidationResult> results;

    auto compare = [&](McScenario sc, double floor_tol) {
        RunConfig cfg = base;
        cfg.mc.scenario = sc;
        cfg.sweep.variable.clear();
        const CoverageCurve curve = analytic_curve(cfg);
        const McReport rep = run_scenario(cfg.mc);
        ValidationResult res;
        res.scenario = detail::scenario_to_string(sc);
        res.pass = true;
        for (size_t i = 0; i < rep.rows.size(); ++i) {
            const double p = curve.analytic[i];
            const double sigma =
                std::sqrt(std::max(p * (1.0 - p), 1e-12) / static_cast<double>(cfg.mc.trials));
            const double tol = std::max(3.0 * sigma, floor_tol);
            const double delta = std::fabs(rep.rows[i].value - p);
            res.max_abs_delta = std::max(res.max_abs_delta, delta);
            res.tolerance = std::max(res.tolerance, tol);
            std::printf("  %-18s th=%5.1f dB analytic=%.5f mc=%.5f |delta|=%.5f tol=%.5f\n",
                        res.scenario.c_str(), rep.rows[i].threshold_db, p, rep.rows[i].value,
                        delta, tol);
            if (delta > tol) res.pass = false;
        }
        results.push_back(res);
    };

    compare(McScenario::FsoSch, 1e-2);
    compare(McScenario::RfNoInterference, 1e-2);
    compare(McScenario::RfSir, 1e-2);
    compare(McScenario::RfSinr, 1e-2);
    compare(McScenario::E2eSinr, 1.5e-2);

    // quadrature stability: doubling M_f / M_r
    double worst_fso = 0.0, worst_rf = 0.0;
    for (double th_db : {0.0, 10.0, 20.0, 30.0, 40.0}) {
        const double g = db_to_linear(th_db);
        worst_fso = std::max(worst_fso,
                             std::fabs(cp_sch(g, base.mc.geometry, base.mc.fso, base.M_f) -
                                       cp_sch(g, base.mc.geometry, base.mc.fso, 2 * base.M_f)));
        worst_rf = std::max(worst_rf,
                            std::fabs(cp_rf_sir(g, base.mc.rf, base.mc.deployment, base.M_r) -
                                      cp_rf_sir(g, base.mc.rf, base.mc.deployment, 2 * base.M_r)));
    }
    std::printf("quadrature doubling: max |dCP| fso=%.3e rf=%.3e\n", worst_fso, worst_rf);

    bool all_pass = worst_fso <= 1e-4 && worst_rf <= 1e-4;
    for (const ValidationResult& r : results) {
        std::printf("%-20s max|delta|=%.5f  %s\n", r.scenario.c_str(), r.max_abs_delta,
                    r.pass ? "PASS" : "FAIL");
        all_pass = all_pass && r.pass;
    }
    std::printf("validation: %s\n", all_pass ? "PASS" : "FAIL");
    return all_pass ? 0 : 3;
}

int cmd_diversity(const CliOptions& opt) {
    for (const auto& [name, cfg] : load_runs(opt)) {
        const McConfig& m = cfg.mc;
        SweepSpec sweep = cfg.sweep;
        double expected;
        std::string var;
        if (m.scenario == McScenario::FsoSch) {
            var = "P_S_dBm";
            if (sweep.variable.empty()) { sweep.start = 60; sweep.stop = 110; sweep.step = 2.5; }
            expected = diversity_order_sch(m.fso);
        } else if (m.scenario == McScenario::RfNoInterference) {
            var = "P_R_over_N_R_dB";
            if (sweep.variable.empty()) { sweep.start = 130; sweep.stop = 180; sweep.step = 2.5; }
            expected = static_cast<double>(m.rf.m);
        } else {
            throw config_error("diversity: scenario must be fso_sch or rf_nointerference");
        }
        const double gamma_th = db_to_linear(sweep.gamma_th_db);
        std::vector<double> xs, outage;
        for (double x : db_grid(sweep.start, sweep.stop, sweep.step)) {
            double out;
            if (m.scenario == McScenario::FsoSch) {
                FsoLinkParams f = m.fso;
                f.P_S = dbm_to_watt(x);
                out = cdf_snr_sch(gamma_th, m.geometry, f, cfg.M_f);
            } else {
                RfLinkParams r = m.rf;
                r.P_R = r.N_R * db_to_linear(x);
                out = outage_rf_nointerference(gamma_th, r, m.deployment.D);
            }
            xs.push_back(db_to_linear(x));
            outage.push_back(out);
        }
        // fit over the top decade of the sweep
        std::vector<double> fx, fy;
        for (size_t i = 0; i < xs.size(); ++i) {
            if (linear_to_db(xs[i]) >= sweep.stop - 10.0 && outage[i] > 0.0) {
                fx.push_back(xs[i]);
                fy.push_back(outage[i]);
            }
        }
        if (fx.size() < 3)
            throw numeric_error("diversity: fewer than 3 usable points in the top decade");
        const double slope = -loglog_slope(fx, fy);
        const double rel = std::fabs(slope - expected) / expected;
        std::printf("%s diversity: fitted=%.4f expected=%.4f rel_err=%.2f%%\n",
                    detail::scenario_to_string(m.scenario).c_str(), slope, expected, 100 * rel);

        std::filesystem::create_directories(cfg.out_dir);
        const std::string stem = "diversity_" + detail::scenario_to_string(m.scenario) +
                                 (name == "run" ? "" : "_" + name);
        std::ofstream f(out_path(cfg, stem, ".csv"));
        f << var << ",outage\n";
        for (size_t i = 0; i < xs.size(); ++i)
            f << linear_to_db(xs[i]) << "," << outage[i] << "\n";
        json rpt = {{"fitted_slope", slope}, {"expected", expected}, {"rel_err", rel}};
        std::ofstream rf(out_path(cfg, stem + "_report", ".json"));
        rf << rpt.dump(2) << "\n";
    }
    return 0;
}

int cmd_dump_defaults(const CliOptions& opt) {
    const json j = RunConfig::table1_defaults().to_json();
    if (opt.out_dir == "-") {
        std::cout << j.dump(2) << "\n";
    } else {
        std::filesystem::create_directories(opt.out_dir);
        const std::string path =
            (std::filesystem::path(opt.out_dir) / "defaults.json").string();
        std::ofstream f(path);
        f << j.dump(2) << "\n";
        std::printf("wrote %s\n", path.c_str());
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"coverage/outage analysis for satellite-CH(FSO)-UAV(RF) networks"};
    app.require_subcommand(1);

    CliOptions opt;
    app.add_option("--config", opt.config_path, "JSON config file");
    app.add_option("--preset", opt.preset, "named figure preset (fig3a, fig7, fig15, ...)");
    app.add_option("--out", opt.out_dir, "output directory");
    app.add_option("--seed", opt.seed, "override RNG seed");
    app.add_option("--trials", opt.trials, "override trial count");
    app.add_flag("--svg", opt.svg, "also write SVG line plots");

    auto* analytic = app.add_subcommand("analytic", "closed-form coverage curves");
    auto* simulate = app.add_subcommand("simulate", "Monte-Carlo estimates");
    auto* validate = app.add_subcommand("validate", "paired analytic vs MC check");
    auto* diversity = app.add_subcommand("diversity", "high-SNR slope fit");
    auto* dump = app.add_subcommand("dump-defaults", "write the default config JSON");

    try {
        app.parse(argc, argv);
        if (analytic->parsed()) return cmd_analytic(opt);
        if (simulate->parsed()) return cmd_simulate(opt);
        if (validate->parsed()) return cmd_validate(opt);
        if (diversity->parsed()) return cmd_diversity(opt);
        if (dump->parsed()) return cmd_dump_defaults(opt);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const satcov::config_error& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 1;
    } catch (const std::domain_error& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 1;
    } catch (const satcov::numeric_error& e) {
        std::fprintf(stderr, "numeric diagnostic: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 0;
}
