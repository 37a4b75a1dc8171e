#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

const char* kCli = MEMOPT_CLI_PATH;

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::path("cli_test_out") / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

int run_cli(const std::string& args, const fs::path& stderr_file = {}) {
  std::string cmd = std::string(kCli) + " " + args + " > /dev/null";
  cmd += stderr_file.empty() ? " 2> /dev/null"
                             : " 2> \"" + stderr_file.string() + "\"";
  const int status = std::system(cmd.c_str());
  REQUIRE(status != -1);
  REQUIRE(WIFEXITED(status));
  return WEXITSTATUS(status);
}

json read_json(const fs::path& p) {
  std::ifstream f(p);
  REQUIRE(f.good());
  return json::parse(f);
}

std::string read_text(const fs::path& p) {
  std::ifstream f(p);
  REQUIRE(f.good());
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

std::string last_nonempty_line(const std::string& text) {
  std::size_t end = text.find_last_not_of('\n');
  REQUIRE(end != std::string::npos);
  const std::size_t start = text.find_last_of('\n', end);
  return text.substr(start == std::string::npos ? 0 : start + 1,
                     end - (start == std::string::npos ? 0 : start + 1) + 1);
}

void write_config(const fs::path& p, const std::string& body) {
  std::ofstream f(p);
  REQUIRE(f.good());
  f << body;
}

}  // namespace

TEST_CASE("scenario fig4 reports the compliance release point") {
  const fs::path dir = fresh_dir("fig4");
  REQUIRE(run_cli("scenario fig4 --out \"" + dir.string() + "\" --no-oracle") == 0);
  const json s = read_json(dir / "summary.json");
  CHECK(s.at("scenario") == "fig4");
  CHECK(s.at("solution").at("mode") == "clamped-then-interior");
  CHECK(std::fabs(s.at("solution").at("R_c_over_R_f").get<double>() - 0.34) <= 0.005);
  CHECK(std::fabs(s.at("solution").at("t_c_over_t_f").get<double>() - 0.26) <= 0.005);
  CHECK(fs::exists(dir / "trajectories.csv"));
  CHECK(!fs::exists(dir / "ratios.csv"));
  CHECK(s.at("config_digest").get<std::string>().size() == 16);
}

TEST_CASE("scenario fig2 emits the heat-ratio sweep with its asymptote") {
  const fs::path dir = fresh_dir("fig2");
  REQUIRE(run_cli("scenario fig2 --out \"" + dir.string() + "\"") == 0);
  const std::string ratios = read_text(dir / "ratios.csv");
  const std::string last = last_nonempty_line(ratios);
  const std::size_t comma = last.find(',');
  REQUIRE(comma != std::string::npos);
  CHECK(std::stod(last.substr(0, comma)) == doctest::Approx(1e6));
  CHECK(std::fabs(std::stod(last.substr(comma + 1)) - 0.888889) <= 1e-3);

  const json s = read_json(dir / "summary.json");
  const json& rep = s.at("energy_report");
  CHECK(rep.at("oracle_residual").is_number());
  CHECK(rep.at("oracle_residual").get<double>() <= 2e-3);
  CHECK(rep.at("quadrature_residual").get<double>() <= 1e-9);

  const std::string csv = read_text(dir / "trajectories.csv");
  CHECK(csv.substr(0, csv.find('\n')) ==
        "t_us,q_nC_or_x,R_kOhm,V_V,I_mA,P_mW,protocol,regime_valid");
}

TEST_CASE("scenario fig3 records ordering and the regime flag") {
  const fs::path dir = fresh_dir("fig3");
  REQUIRE(run_cli("scenario fig3 --out \"" + dir.string() + "\" --no-oracle") == 0);
  const json s = read_json(dir / "summary.json");
  CHECK(s.at("solution").at("ordering_ok") == true);
  CHECK(s.at("solution").at("regime_valid") == false);
  CHECK(std::fabs(s.at("solution").at("V_crossing_us").get<double>() - 4.18) <= 0.01);
  const std::string csv = read_text(dir / "trajectories.csv");
  CHECK(csv.find(",optimal,0\n") != std::string::npos);       // flagged tail
  CHECK(csv.find(",constant-voltage,0\n") == std::string::npos);
}

TEST_CASE("scenario sweep-threshold writes 99 sweep rows") {
  const fs::path dir = fresh_dir("sweep");
  REQUIRE(run_cli("scenario sweep-threshold --out \"" + dir.string() +
                  "\" --grid 201 --no-oracle") == 0);
  const std::string ratios = read_text(dir / "ratios.csv");
  int lines = 0;
  for (char c : ratios) lines += c == '\n';
  CHECK(lines == 100);  // header + 99 points
  const json s = read_json(dir / "summary.json");
  CHECK(std::fabs(s.at("sweep").at("full_swing_saving_vs_cv").get<double>() -
                  0.128245) <= 1e-3);
  CHECK(s.at("sweep").at("points") == 99);
}

TEST_CASE("config run solves a constrained ideal task") {
  const fs::path dir = fresh_dir("cfg_constrained");
  const fs::path cfg = dir / "config.json";
  write_config(cfg, R"({
    "device": {"kind": "ideal-linear", "R0_kOhm": 1.0, "slope_kOhm_per_nC": 100.0},
    "task": {"t_i_us": 0, "t_f_us": 5, "R_i_kOhm": 1, "R_f_kOhm": 100, "I_c_mA": 0.25},
    "solver": {"grid_n": 501, "oracle": false}
  })");
  const fs::path out = dir / "out";
  REQUIRE(run_cli("run \"" + cfg.string() + "\" --out \"" + out.string() + "\"") == 0);
  const json s = read_json(out / "summary.json");
  CHECK(s.at("scenario") == "config");
  CHECK(s.at("solution").at("mode") == "clamped-then-interior");
  CHECK(s.at("grid_n") == 501);
  CHECK(s.at("effective_config").at("solver").at("oracle") == false);
}

TEST_CASE("config run honors output.dir from the config file") {
  const fs::path dir = fresh_dir("cfg_outdir");
  const fs::path cfg = dir / "config.json";
  const fs::path out = dir / "from_config";
  write_config(cfg, R"({
    "device": {"kind": "ideal-linear", "R0_kOhm": 1.0, "slope_kOhm_per_nC": 1.0},
    "task": {"t_i_us": 0, "t_f_us": 1, "R_i_kOhm": 1, "R_f_kOhm": 100},
    "solver": {"oracle": false},
    "output": {"dir": ")" + out.generic_string() + R"("}
  })");
  REQUIRE(run_cli("run \"" + cfg.string() + "\"") == 0);
  CHECK(fs::exists(out / "summary.json"));
}

TEST_CASE("config run reports compliance for threshold devices") {
  const fs::path dir = fresh_dir("cfg_threshold");
  const fs::path cfg = dir / "config.json";
  write_config(cfg, R"({
    "device": {"kind": "threshold", "R_on_kOhm": 1, "R_off_kOhm": 100,
               "k_per_V_us": 0.5, "V_on_V": 1},
    "task": {"t_i_us": 0, "t_f_us": 5, "x_i": 0, "x_f": 1, "I_c_mA": 1.0},
    "solver": {"oracle": false}
  })");
  const fs::path out = dir / "out";
  REQUIRE(run_cli("run \"" + cfg.string() + "\" --out \"" + out.string() + "\"") == 0);
  const json s = read_json(out / "summary.json");
  CHECK(std::fabs(s.at("solution").at("C_per_us2").get<double>() + 0.0595179) <= 1e-6);
  CHECK(s.at("compliance").at("satisfied") == false);
  CHECK(s.at("compliance").at("peak_current_mA").get<double>() > 1.0);
}

TEST_CASE("config run solves a time-energy tradeoff") {
  const fs::path dir = fresh_dir("cfg_tradeoff");
  const fs::path cfg = dir / "config.json";
  write_config(cfg, R"({
    "device": {"kind": "ideal-linear", "R0_kOhm": 1.0, "slope_kOhm_per_nC": 1.0},
    "task": {"R_i_kOhm": 1, "R_f_kOhm": 100, "w1": 1, "w2": 1},
    "solver": {"grid_n": 101, "oracle": false}
  })");
  const fs::path out = dir / "out";
  REQUIRE(run_cli("run \"" + cfg.string() + "\" --out \"" + out.string() + "\"") == 0);
  const json s = read_json(out / "summary.json");
  CHECK(s.at("solution").at("T_opt_us").get<double>() == doctest::Approx(666.0));
  CHECK(s.at("solution").at("Q_opt_nJ").get<double>() == doctest::Approx(666.0));
}

TEST_CASE("malformed config exits 2 and writes nothing") {
  const fs::path dir = fresh_dir("cfg_bad");
  const fs::path cfg = dir / "config.json";
  write_config(cfg, R"({
    "device": {"kind": "threshold", "R_on_kOhm": -1, "R_off_kOhm": 100,
               "k_per_V_us": 0.5, "V_on_V": 1},
    "task": {"t_i_us": 0, "t_f_us": 5, "R_i_kOhm": 1, "R_f_kOhm": 100}
  })");
  const fs::path out = dir / "out";
  const fs::path err = dir / "stderr.txt";
  CHECK(run_cli("run \"" + cfg.string() + "\" --out \"" + out.string() + "\"", err) == 2);
  CHECK(!fs::exists(out / "summary.json"));
  CHECK(!fs::exists(out / "trajectories.csv"));
  const json e = read_json(err);
  CHECK(e.at("error").at("code") == 2);
  CHECK(e.at("error").at("kind") == "config");
}

TEST_CASE("unknown config keys are rejected") {
  const fs::path dir = fresh_dir("cfg_unknown");
  const fs::path cfg = dir / "config.json";
  write_config(cfg, R"({
    "device": {"kind": "ideal-linear", "R0_kOhm": 1.0, "slope_kOhm_per_nC": 1.0},
    "task": {"t_i_us": 0, "t_f_us": 1, "R_i_kOhm": 1, "R_f_kOhm": 100},
    "extra_knob": true
  })");
  CHECK(run_cli("run \"" + cfg.string() + "\" --out \"" + (dir / "out").string() + "\"") ==
        2);
}

TEST_CASE("infeasible compliance exits 3") {
  const fs::path dir = fresh_dir("cfg_infeasible");
  const fs::path cfg = dir / "config.json";
  write_config(cfg, R"({
    "device": {"kind": "ideal-linear", "R0_kOhm": 1.0, "slope_kOhm_per_nC": 100.0},
    "task": {"t_i_us": 0, "t_f_us": 5, "R_i_kOhm": 1, "R_f_kOhm": 100, "I_c_mA": 0.1},
    "solver": {"oracle": false}
  })");
  const fs::path err = dir / "stderr.txt";
  CHECK(run_cli("run \"" + cfg.string() + "\" --out \"" + (dir / "out").string() + "\"",
                err) == 3);
  const json e = read_json(err);
  CHECK(e.at("error").at("kind") == "infeasible");
}

TEST_CASE("unknown scenario name exits 2") {
  const fs::path dir = fresh_dir("bad_scenario");
  CHECK(run_cli("scenario fig9 --out \"" + dir.string() + "\"") == 2);
}
