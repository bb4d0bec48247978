// End-to-end checks of the command-line tool: spawns the built binary and
// inspects exit codes and output files.

#include "catch_amalgamated.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "satcov/config.hpp"

using namespace satcov;
namespace fs = std::filesystem;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string stdout_text;
};

RunResult run_cli(const std::string& args, const std::string& tag) {
    const fs::path out = fs::temp_directory_path() / ("satcov_cli_" + tag + ".out");
    const std::string cmd = std::string(SATCOV_CLI_PATH) + " " + args + " > " + out.string() +
                            " 2>&1";
    const int rc = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    std::ifstream f(out);
    std::stringstream ss;
    ss << f.rdbuf();
    r.stdout_text = ss.str();
    return r;
}

fs::path fresh_dir(const std::string& tag) {
    const fs::path d = fs::temp_directory_path() / ("satcov_test_" + tag);
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
}

std::vector<std::string> read_lines(const fs::path& p) {
    std::ifstream f(p);
    REQUIRE(f.good());
    std::vector<std::string> lines;
    std::string l;
    while (std::getline(f, l)) lines.push_back(l);
    return lines;
}

std::string read_all(const fs::path& p) {
    std::ifstream f(p);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

} // namespace

TEST_CASE("dump-defaults round-trips") {
    const fs::path dir = fresh_dir("dump");
    const RunResult r = run_cli("--out " + dir.string() + " dump-defaults", "dump");
    REQUIRE(r.exit_code == 0);
    std::ifstream f(dir / "defaults.json");
    REQUIRE(f.good());
    json j = json::parse(f);
    const RunConfig parsed = RunConfig::from_json(j);
    CHECK(parsed.to_json() == RunConfig::table1_defaults().to_json());
}

TEST_CASE("analytic default run emits the documented CSV") {
    const fs::path dir = fresh_dir("analytic");
    const RunResult r = run_cli("--out " + dir.string() + " analytic", "analytic");
    REQUIRE(r.exit_code == 0);
    const auto lines = read_lines(dir / "analytic_fso_sch.csv");
    REQUIRE(lines.size() == 42); // header + 41 thresholds
    CHECK(lines[0] ==
          "threshold_dB,cp_analytic,cp_analytic_raw,analytic_clipped,cp_asymptotic,"
          "cp_asymptotic_raw,asymptotic_clipped");
    // coverage at 0 dB exceeds coverage at 40 dB
    auto cp_of = [&](const std::string& line) {
        const auto c1 = line.find(',');
        const auto c2 = line.find(',', c1 + 1);
        return std::stod(line.substr(c1 + 1, c2 - c1 - 1));
    };
    CHECK(cp_of(lines[1]) > cp_of(lines[41]));
}

TEST_CASE("simulate is reproducible for a fixed seed") {
    const fs::path d1 = fresh_dir("sim1");
    const fs::path d2 = fresh_dir("sim2");
    const std::string args = "--seed 77 --trials 3000 ";
    REQUIRE(run_cli("--out " + d1.string() + " " + args + "simulate", "sim1").exit_code == 0);
    REQUIRE(run_cli("--out " + d2.string() + " " + args + "simulate", "sim2").exit_code == 0);
    CHECK(read_all(d1 / "simulate_fso_sch.csv") == read_all(d2 / "simulate_fso_sch.csv"));
    CHECK_FALSE(read_all(d1 / "simulate_fso_sch.csv").empty());
}

TEST_CASE("validate passes on defaults and fails on an injected fault") {
    const fs::path dir = fresh_dir("validate");
    json base = RunConfig::table1_defaults().to_json();
    base["thresholds"] = {{"start_dB", 0.0}, {"stop_dB", 40.0}, {"step_dB", 4.0}};
    const fs::path okcfg = dir / "ok.json";
    std::ofstream(okcfg) << base.dump();
    const RunResult ok = run_cli(
        "--out " + dir.string() + " --trials 4000 --config " + okcfg.string() + " validate",
        "val_ok");
    INFO(ok.stdout_text);
    REQUIRE(ok.exit_code == 0);
    CHECK(ok.stdout_text.find("quadrature doubling") != std::string::npos);
    CHECK(ok.stdout_text.find("validation: PASS") != std::string::npos);

    // corrupt the FSO constant: validation must fail and localize the error
    json j = base;
    j["fault_injection"] = {{"xi_scale", 2.0}};
    const fs::path cfg = dir / "bad.json";
    std::ofstream(cfg) << j.dump();
    const RunResult bad = run_cli(
        "--out " + dir.string() + " --trials 4000 --config " + cfg.string() + " validate",
        "val_bad");
    INFO(bad.stdout_text);
    REQUIRE(bad.exit_code == 3);
    // summary lines: the FSO family fails, the RF families are untouched
    CHECK(bad.stdout_text.find("fso_sch") != std::string::npos);
    std::istringstream is(bad.stdout_text);
    std::string line;
    bool fso_fail = false, rf_pass = false;
    while (std::getline(is, line)) {
        if (line.find("max|delta|") == std::string::npos) continue;
        if (line.find("fso_sch") == 0 && line.find("FAIL") != std::string::npos) fso_fail = true;
        if (line.find("rf_sir") == 0 && line.find("PASS") != std::string::npos) rf_pass = true;
    }
    CHECK(fso_fail);
    CHECK(rf_pass);
}

TEST_CASE("numeric diagnostics exit with code 2") {
    const fs::path dir = fresh_dir("numeric");
    json j = RunConfig::table1_defaults().to_json();
    j["scenario"] = "rf_sir";
    j["rf"]["m"] = 9; // beyond the stable alternating-sum range
    const fs::path cfg = dir / "m9.json";
    std::ofstream(cfg) << j.dump();
    const RunResult r =
        run_cli("--out " + dir.string() + " --config " + cfg.string() + " analytic", "m9");
    CHECK(r.exit_code == 2);
}

TEST_CASE("configuration errors exit with code 1") {
    const fs::path dir = fresh_dir("cfgerr");
    const fs::path cfg = dir / "broken.json";
    std::ofstream(cfg) << "{ not json";
    CHECK(run_cli("--config " + cfg.string() + " analytic", "badjson").exit_code == 1);
    const fs::path cfg2 = dir / "unknown.json";
    std::ofstream(cfg2) << R"({"unknown_top": 1})";
    CHECK(run_cli("--config " + cfg2.string() + " analytic", "badkey").exit_code == 1);
}

TEST_CASE("diversity fits the documented orders") {
    const fs::path dir = fresh_dir("div");
    const RunResult fso = run_cli("--out " + dir.string() + " diversity", "div_fso");
    INFO(fso.stdout_text);
    REQUIRE(fso.exit_code == 0);
    {
        std::ifstream f(dir / "diversity_fso_sch_report.json");
        REQUIRE(f.good());
        const json rpt = json::parse(f);
        CHECK(rpt.at("expected").get<double>() == Catch::Approx(1.21));
        CHECK(rpt.at("rel_err").get<double>() < 0.05);
    }
    json j = RunConfig::table1_defaults().to_json();
    j["scenario"] = "rf_nointerference";
    const fs::path cfg = dir / "rf.json";
    std::ofstream(cfg) << j.dump();
    const RunResult rf = run_cli(
        "--out " + dir.string() + " --config " + cfg.string() + " diversity", "div_rf");
    INFO(rf.stdout_text);
    REQUIRE(rf.exit_code == 0);
    std::ifstream f(dir / "diversity_rf_nointerference_report.json");
    const json rpt = json::parse(f);
    CHECK(rpt.at("expected").get<double>() == Catch::Approx(5.0));
    CHECK(rpt.at("rel_err").get<double>() < 0.05);
}

TEST_CASE("svg output on request") {
    const fs::path dir = fresh_dir("svg");
    REQUIRE(run_cli("--out " + dir.string() + " --svg analytic", "svg").exit_code == 0);
    CHECK(fs::exists(dir / "analytic_fso_sch.svg"));
    const std::string body = read_all(dir / "analytic_fso_sch.svg");
    CHECK(body.find("<svg") != std::string::npos);
    CHECK(body.find("polyline") != std::string::npos);
}

TEST_CASE("preset runs write one file per variant") {
    const fs::path dir = fresh_dir("preset");
    REQUIRE(run_cli("--out " + dir.string() + " --preset fig3a analytic", "fig3a").exit_code == 0);
    CHECK(fs::exists(dir / "analytic_fso_sch_weak.csv"));
    CHECK(fs::exists(dir / "analytic_fso_sch_moderate.csv"));
    CHECK(fs::exists(dir / "analytic_fso_sch_strong.csv"));
}
