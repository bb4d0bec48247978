#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "satcov/common.hpp"
#include "satcov/mc.hpp"

namespace satcov {

using nlohmann::json;

struct SweepSpec {
    std::string variable; // "P_S_dBm" or "P_R_over_N_R_dB"; empty = threshold sweep
    double start = 0.0;
    double stop = 0.0;
    double step = 1.0;
    double gamma_th_db = 30.0; // fixed threshold while sweeping power

    std::vector<double> grid() const { return db_grid(start, stop, step); }
};

// Full run description: parameter bundles in SI plus run controls. JSON keys
// carry units (P_S_dBm, D_min_km, ...) and are converted on parse; unknown
// keys are rejected.
struct RunConfig {
    McConfig mc;
    int M_f = kDefaultMf;
    int M_r = kDefaultMr;
    SweepSpec sweep;
    bool svg = false;
    std::string out_dir = "out";

    static RunConfig table1_defaults();
    static RunConfig from_json(const json& j);
    json to_json() const;
};

namespace detail {

inline void check_keys(const json& j, const std::vector<std::string>& allowed,
                       const std::string& ctx) {
    if (!j.is_object()) throw config_error(ctx + ": expected a JSON object");
    for (const auto& item : j.items()) {
        bool ok = false;
        for (const auto& k : allowed)
            if (item.key() == k) { ok = true; break; }
        if (!ok) throw config_error(ctx + ": unknown key '" + item.key() + "'");
    }
}

template <typename T>
T get_or(const json& j, const std::string& key, T fallback) {
    if (!j.contains(key)) return fallback;
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw config_error("key '" + key + "': " + e.what());
    }
}

inline McScenario scenario_from_string(const std::string& s) {
    static const std::map<std::string, McScenario> table = {
        {"fso_sch", McScenario::FsoSch},
        {"rf_nointerference", McScenario::RfNoInterference},
        {"rf_sir", McScenario::RfSir},
        {"rf_sinr", McScenario::RfSinr},
        {"e2e_nointerference", McScenario::E2eNoInterference},
        {"e2e_sir", McScenario::E2eSir},
        {"e2e_sinr", McScenario::E2eSinr},
        {"pointprocess_check", McScenario::PointProcessCheck},
        {"lt_check", McScenario::LtCheck},
    };
    const auto it = table.find(s);
    if (it == table.end()) throw config_error("unknown scenario '" + s + "'");
    return it->second;
}

inline std::string scenario_to_string(McScenario s) {
    switch (s) {
    case McScenario::FsoSch: return "fso_sch";
    case McScenario::RfNoInterference: return "rf_nointerference";
    case McScenario::RfSir: return "rf_sir";
    case McScenario::RfSinr: return "rf_sinr";
    case McScenario::E2eNoInterference: return "e2e_nointerference";
    case McScenario::E2eSir: return "e2e_sir";
    case McScenario::E2eSinr: return "e2e_sinr";
    case McScenario::PointProcessCheck: return "pointprocess_check";
    case McScenario::LtCheck: return "lt_check";
    }
    return "unknown";
}

} // namespace detail

inline RunConfig RunConfig::table1_defaults() {
    RunConfig c;
    c.mc.geometry = SystemGeometry::make(6376e3, 50e3, 35761e3, kPi / 800.0);

    FsoLinkParams f;
    f.alpha = 4.0;
    f.beta = 1.9;
    f.omega = 1.1;
    f.A0 = 0.5;
    f.h_l = db_to_linear(-0.35);
    f.eta = 0.5;
    f.lambda_wl = 1550e-9;
    f.G_S = db_to_linear(107.85);
    f.G_R = db_to_linear(107.85);
    f.P_S = dbm_to_watt(40.0);
    f.N_F = dbm_to_watt(-100.0); // 1e-10 mW
    c.mc.fso = f;

    RfLinkParams r;
    r.m = 5;
    r.Omega = 1.0;
    r.rho = 7018.0;
    r.alpha_r = 2.0;
    r.P_R = dbm_to_watt(30.0);
    r.N_R = dbm_to_watt(-100.0);
    c.mc.rf = r;

    c.mc.deployment = DeploymentParams::make(0.001 * 1e-9, 2000.0, 1000.0, 20000.0, 1.0 * 1e-9);
    c.mc.thresholds_db = db_grid(0.0, 40.0, 1.0);
    c.mc.pointprocess_dmin = {100.0, 1000.0, 10000.0};
    c.sweep.variable = "";
    c.sweep.start = 40.0;
    c.sweep.stop = 80.0;
    c.sweep.step = 2.5;
    return c;
}

inline RunConfig RunConfig::from_json(const json& j) {
    detail::check_keys(j,
                       {"scenario", "trials", "seed", "threads", "thresholds", "geometry", "fso",
                        "rf", "deployment", "quadrature", "mc", "sweep", "output",
                        "fault_injection"},
                       "config");
    RunConfig c = table1_defaults();
    c.mc.scenario = detail::scenario_from_string(
        detail::get_or<std::string>(j, "scenario", "fso_sch"));
    c.mc.trials = detail::get_or<int64_t>(j, "trials", c.mc.trials);
    c.mc.seed = detail::get_or<uint64_t>(j, "seed", c.mc.seed);
    c.mc.threads = detail::get_or<int>(j, "threads", c.mc.threads);

    if (j.contains("thresholds")) {
        const json& t = j.at("thresholds");
        detail::check_keys(t, {"start_dB", "stop_dB", "step_dB"}, "thresholds");
        c.mc.thresholds_db = db_grid(detail::get_or<double>(t, "start_dB", 0.0),
                                     detail::get_or<double>(t, "stop_dB", 40.0),
                                     detail::get_or<double>(t, "step_dB", 1.0));
    }
    if (j.contains("geometry")) {
        const json& g = j.at("geometry");
        detail::check_keys(g, {"R_km", "H_U_km", "H_S_km", "xi0_rad"}, "geometry");
        c.mc.geometry = SystemGeometry::make(detail::get_or<double>(g, "R_km", 6376.0) * 1e3,
                                             detail::get_or<double>(g, "H_U_km", 50.0) * 1e3,
                                             detail::get_or<double>(g, "H_S_km", 35761.0) * 1e3,
                                             detail::get_or<double>(g, "xi0_rad", kPi / 800.0));
    }
    if (j.contains("fso")) {
        const json& f = j.at("fso");
        detail::check_keys(f,
                           {"alpha", "beta", "omega", "A0", "h_l_dB", "eta", "wavelength_nm",
                            "G_S_dB", "G_R_dB", "P_S_dBm", "N_F_dBm"},
                           "fso");
        FsoLinkParams& p = c.mc.fso;
        p.alpha = detail::get_or<double>(f, "alpha", p.alpha);
        p.beta = detail::get_or<double>(f, "beta", p.beta);
        p.omega = detail::get_or<double>(f, "omega", p.omega);
        p.A0 = detail::get_or<double>(f, "A0", p.A0);
        if (f.contains("h_l_dB")) p.h_l = db_to_linear(f.at("h_l_dB").get<double>());
        p.eta = detail::get_or<double>(f, "eta", p.eta);
        if (f.contains("wavelength_nm")) p.lambda_wl = f.at("wavelength_nm").get<double>() * 1e-9;
        if (f.contains("G_S_dB")) p.G_S = db_to_linear(f.at("G_S_dB").get<double>());
        if (f.contains("G_R_dB")) p.G_R = db_to_linear(f.at("G_R_dB").get<double>());
        if (f.contains("P_S_dBm")) p.P_S = dbm_to_watt(f.at("P_S_dBm").get<double>());
        if (f.contains("N_F_dBm")) p.N_F = dbm_to_watt(f.at("N_F_dBm").get<double>());
        p.validate();
    }
    if (j.contains("rf")) {
        const json& r = j.at("rf");
        detail::check_keys(r, {"m", "Omega", "rho", "alpha_r", "P_R_dBm", "N_R_dBm"}, "rf");
        RfLinkParams& p = c.mc.rf;
        if (r.contains("m") && !r.at("m").is_number_integer())
            throw config_error("rf.m: only integer fading parameters are supported");
        p.m = detail::get_or<int>(r, "m", p.m);
        p.Omega = detail::get_or<double>(r, "Omega", p.Omega);
        p.rho = detail::get_or<double>(r, "rho", p.rho);
        p.alpha_r = detail::get_or<double>(r, "alpha_r", p.alpha_r);
        if (r.contains("P_R_dBm")) p.P_R = dbm_to_watt(r.at("P_R_dBm").get<double>());
        if (r.contains("N_R_dBm")) p.N_R = dbm_to_watt(r.at("N_R_dBm").get<double>());
        p.validate();
    }
    if (j.contains("deployment")) {
        const json& d = j.at("deployment");
        detail::check_keys(
            d, {"lambda_P_per_km3", "D_min_km", "D_km", "D_max_km", "lambda_U_per_km3"},
            "deployment");
        c.mc.deployment = DeploymentParams::make(
            detail::get_or<double>(d, "lambda_P_per_km3", 0.001) * 1e-9,
            detail::get_or<double>(d, "D_min_km", 2.0) * 1e3,
            detail::get_or<double>(d, "D_km", 1.0) * 1e3,
            detail::get_or<double>(d, "D_max_km", 20.0) * 1e3,
            detail::get_or<double>(d, "lambda_U_per_km3", 1.0) * 1e-9);
    }
    if (j.contains("quadrature")) {
        const json& q = j.at("quadrature");
        detail::check_keys(q, {"M_f", "M_r"}, "quadrature");
        c.M_f = detail::get_or<int>(q, "M_f", c.M_f);
        c.M_r = detail::get_or<int>(q, "M_r", c.M_r);
        if (c.M_f < 1 || c.M_r < 1) throw config_error("quadrature orders must be >= 1");
    }
    if (j.contains("mc")) {
        const json& m = j.at("mc");
        detail::check_keys(m,
                           {"fso_full_thinning", "interference_geometry", "pointprocess_dmin_km",
                            "pointprocess_samples", "lt_s_values", "lt_d_fractions"},
                           "mc");
        c.mc.fso_full_thinning = detail::get_or<bool>(m, "fso_full_thinning", false);
        const std::string geo =
            detail::get_or<std::string>(m, "interference_geometry", "approximate");
        if (geo == "approximate") c.mc.interference_geometry = InterferenceGeometry::Approximate;
        else if (geo == "exact") c.mc.interference_geometry = InterferenceGeometry::Exact;
        else throw config_error("mc.interference_geometry must be 'approximate' or 'exact'");
        if (m.contains("pointprocess_dmin_km")) {
            c.mc.pointprocess_dmin.clear();
            for (double v : m.at("pointprocess_dmin_km").get<std::vector<double>>())
                c.mc.pointprocess_dmin.push_back(v * 1e3);
        }
        c.mc.pointprocess_samples =
            detail::get_or<int64_t>(m, "pointprocess_samples", c.mc.pointprocess_samples);
        c.mc.lt_s_values = detail::get_or<std::vector<double>>(m, "lt_s_values", c.mc.lt_s_values);
        c.mc.lt_d_fractions =
            detail::get_or<std::vector<double>>(m, "lt_d_fractions", c.mc.lt_d_fractions);
    }
    if (j.contains("sweep")) {
        const json& s = j.at("sweep");
        detail::check_keys(s, {"variable", "start", "stop", "step", "gamma_th_dB"}, "sweep");
        c.sweep.variable = detail::get_or<std::string>(s, "variable", "");
        c.sweep.start = detail::get_or<double>(s, "start", c.sweep.start);
        c.sweep.stop = detail::get_or<double>(s, "stop", c.sweep.stop);
        c.sweep.step = detail::get_or<double>(s, "step", c.sweep.step);
        c.sweep.gamma_th_db = detail::get_or<double>(s, "gamma_th_dB", c.sweep.gamma_th_db);
        if (!c.sweep.variable.empty() && c.sweep.variable != "P_S_dBm" &&
            c.sweep.variable != "P_R_over_N_R_dB")
            throw config_error("sweep.variable must be 'P_S_dBm' or 'P_R_over_N_R_dB'");
    }
    if (j.contains("output")) {
        const json& o = j.at("output");
        detail::check_keys(o, {"dir", "svg"}, "output");
        c.out_dir = detail::get_or<std::string>(o, "dir", c.out_dir);
        c.svg = detail::get_or<bool>(o, "svg", c.svg);
    }
    if (j.contains("fault_injection")) {
        const json& fi = j.at("fault_injection");
        detail::check_keys(fi, {"xi_scale"}, "fault_injection");
        c.mc.fso.xi_scale = detail::get_or<double>(fi, "xi_scale", 1.0);
    }
    c.mc.validate();
    return c;
}

inline json RunConfig::to_json() const {
    json j;
    j["scenario"] = detail::scenario_to_string(mc.scenario);
    j["trials"] = mc.trials;
    j["seed"] = mc.seed;
    j["threads"] = mc.threads;
    j["thresholds"] = {{"start_dB", mc.thresholds_db.front()},
                       {"stop_dB", mc.thresholds_db.back()},
                       {"step_dB", mc.thresholds_db.size() > 1
                                       ? mc.thresholds_db[1] - mc.thresholds_db[0]
                                       : 1.0}};
    j["geometry"] = {{"R_km", mc.geometry.R / 1e3},
                     {"H_U_km", mc.geometry.H_U / 1e3},
                     {"H_S_km", mc.geometry.H_S / 1e3},
                     {"xi0_rad", mc.geometry.xi0}};
    j["fso"] = {{"alpha", mc.fso.alpha},
                {"beta", mc.fso.beta},
                {"omega", mc.fso.omega},
                {"A0", mc.fso.A0},
                {"h_l_dB", linear_to_db(mc.fso.h_l)},
                {"eta", mc.fso.eta},
                {"wavelength_nm", mc.fso.lambda_wl * 1e9},
                {"G_S_dB", linear_to_db(mc.fso.G_S)},
                {"G_R_dB", linear_to_db(mc.fso.G_R)},
                {"P_S_dBm", watt_to_dbm(mc.fso.P_S)},
                {"N_F_dBm", watt_to_dbm(mc.fso.N_F)}};
    j["rf"] = {{"m", mc.rf.m},           {"Omega", mc.rf.Omega},
               {"rho", mc.rf.rho},       {"alpha_r", mc.rf.alpha_r},
               {"P_R_dBm", watt_to_dbm(mc.rf.P_R)}, {"N_R_dBm", watt_to_dbm(mc.rf.N_R)}};
    j["deployment"] = {{"lambda_P_per_km3", mc.deployment.lambda_P * 1e9},
                       {"D_min_km", mc.deployment.D_min / 1e3},
                       {"D_km", mc.deployment.D / 1e3},
                       {"D_max_km", mc.deployment.D_max / 1e3},
                       {"lambda_U_per_km3", mc.deployment.lambda_U * 1e9}};
    j["quadrature"] = {{"M_f", M_f}, {"M_r", M_r}};
    json dmin_km = json::array();
    for (double v : mc.pointprocess_dmin) dmin_km.push_back(v / 1e3);
    j["mc"] = {{"fso_full_thinning", mc.fso_full_thinning},
               {"interference_geometry",
                mc.interference_geometry == InterferenceGeometry::Approximate ? "approximate"
                                                                              : "exact"},
               {"pointprocess_dmin_km", dmin_km},
               {"pointprocess_samples", mc.pointprocess_samples},
               {"lt_s_values", mc.lt_s_values},
               {"lt_d_fractions", mc.lt_d_fractions}};
    j["sweep"] = {{"variable", sweep.variable},
                  {"start", sweep.start},
                  {"stop", sweep.stop},
                  {"step", sweep.step},
                  {"gamma_th_dB", sweep.gamma_th_db}};
    j["output"] = {{"dir", out_dir}, {"svg", svg}};
    return j;
}

// Named figure recipes. A preset expands to one or more (variant name,
// config) pairs; multi-curve figures become one file per variant.
inline std::vector<std::pair<std::string, RunConfig>> expand_preset(const std::string& name) {
    using Pair = std::pair<std::string, RunConfig>;
    std::vector<Pair> out;
    RunConfig base = RunConfig::table1_defaults();

    auto turb = [&](RunConfig c, double a, double b) {
        c.mc.fso.alpha = a;
        c.mc.fso.beta = b;
        return c;
    };
    auto with_scenario = [&](RunConfig c, McScenario s) {
        c.mc.scenario = s;
        return c;
    };
    auto with_sweep = [&](RunConfig c, const std::string& var, double lo, double hi, double step,
                          double gth) {
        c.sweep.variable = var;
        c.sweep.start = lo;
        c.sweep.stop = hi;
        c.sweep.step = step;
        c.sweep.gamma_th_db = gth;
        return c;
    };

    if (name == "fig3a" || name == "fig3b" || name == "fig3c") {
        RunConfig c = with_scenario(base, McScenario::FsoSch);
        if (name == "fig3b") c = with_sweep(c, "P_S_dBm", 20, 60, 2.0, 30.0);
        if (name == "fig3c") c = with_sweep(c, "P_S_dBm", 20, 60, 2.0, 5.0);
        out.emplace_back("weak", turb(c, 4.76, 3.03));
        out.emplace_back("moderate", turb(c, 4.0, 1.9));
        out.emplace_back("strong", turb(c, 4.2, 1.4));
    } else if (name == "fig4a" || name == "fig4b") {
        RunConfig c = with_scenario(base, McScenario::FsoSch);
        if (name == "fig4b") c = with_sweep(c, "P_S_dBm", 20, 60, 2.0, 30.0);
        for (double hs_km : {35761.0, 30000.0, 25000.0}) {
            RunConfig v = c;
            v.mc.geometry = SystemGeometry::make(v.mc.geometry.R, v.mc.geometry.H_U, hs_km * 1e3,
                                                 v.mc.geometry.xi0);
            out.emplace_back("HS_" + std::to_string(static_cast<int>(hs_km)) + "km", v);
        }
    } else if (name == "fig5a" || name == "fig5b") {
        RunConfig c = with_scenario(base, McScenario::FsoSch);
        if (name == "fig5b") c = with_sweep(c, "P_S_dBm", 20, 60, 2.0, 20.0);
        for (double w : {1.1, 1.5, 1.9}) {
            RunConfig v = c;
            v.mc.fso.omega = w;
            out.emplace_back("omega_" + std::to_string(w).substr(0, 3), v);
        }
    } else if (name == "fig7" || name == "fig10") {
        RunConfig c = with_scenario(
            base, name == "fig7" ? McScenario::RfNoInterference : McScenario::RfSir);
        for (int m : {1, 2, 5}) {
            RunConfig v = c;
            v.mc.rf.m = m;
            out.emplace_back("m_" + std::to_string(m), v);
        }
    } else if (name == "fig8") {
        RunConfig c = with_scenario(base, McScenario::RfNoInterference);
        for (double dkm : {1.0, 1.5, 2.0}) {
            RunConfig v = c;
            // no-interference case: the serving radius is free of the
            // hard-core constraint, so widen D_min accordingly
            v.mc.deployment = DeploymentParams::make(v.mc.deployment.lambda_P, 2.0 * dkm * 1e3,
                                                     dkm * 1e3, v.mc.deployment.D_max,
                                                     v.mc.deployment.lambda_U);
            out.emplace_back("D_" + std::to_string(dkm).substr(0, 3) + "km", v);
        }
    } else if (name == "fig9" || name == "fig14") {
        RunConfig c = with_scenario(
            base, name == "fig9" ? McScenario::RfNoInterference : McScenario::RfSinr);
        for (double gth : {10.0, 20.0, 30.0}) {
            RunConfig v = with_sweep(c, "P_R_over_N_R_dB", 90, 140, 2.5, gth);
            out.emplace_back("gth_" + std::to_string(static_cast<int>(gth)) + "dB", v);
        }
    } else if (name == "fig11") {
        RunConfig c = with_scenario(base, McScenario::RfSir);
        for (double dkm : {0.5, 0.75, 1.0}) {
            RunConfig v = c;
            v.mc.deployment = DeploymentParams::make(v.mc.deployment.lambda_P,
                                                     v.mc.deployment.D_min, dkm * 1e3,
                                                     v.mc.deployment.D_max,
                                                     v.mc.deployment.lambda_U);
            out.emplace_back("D_" + std::to_string(dkm).substr(0, 4) + "km", v);
        }
    } else if (name == "fig12") {
        RunConfig c = with_scenario(base, McScenario::RfSir);
        for (double dkm : {10.0, 20.0, 40.0}) {
            RunConfig v = c;
            v.mc.deployment = DeploymentParams::make(v.mc.deployment.lambda_P,
                                                     v.mc.deployment.D_min, v.mc.deployment.D,
                                                     dkm * 1e3, v.mc.deployment.lambda_U);
            out.emplace_back("Dmax_" + std::to_string(static_cast<int>(dkm)) + "km", v);
        }
    } else if (name == "fig13") {
        RunConfig c = with_scenario(base, McScenario::RfSir);
        for (double dkm : {2.0, 3.0, 4.0}) {
            RunConfig v = c;
            v.mc.deployment = DeploymentParams::make(v.mc.deployment.lambda_P, dkm * 1e3,
                                                     v.mc.deployment.D, v.mc.deployment.D_max,
                                                     v.mc.deployment.lambda_U);
            out.emplace_back("Dmin_" + std::to_string(static_cast<int>(dkm)) + "km", v);
        }
    } else if (name == "fig15") {
        out.emplace_back("nointerference", with_scenario(base, McScenario::E2eNoInterference));
        out.emplace_back("sir", with_scenario(base, McScenario::E2eSir));
        out.emplace_back("sinr", with_scenario(base, McScenario::E2eSinr));
    } else if (name == "fig16" || name == "fig17") {
        out.emplace_back("cdf_check", with_scenario(base, McScenario::PointProcessCheck));
    } else {
        throw config_error("unknown preset '" + name + "'");
    }
    return out;
}

} // namespace satcov
