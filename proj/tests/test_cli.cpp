#include <doctest.h>

#include <charconv>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "gyropoisson/cli.hpp"
#include "support.hpp"

using namespace gyropoisson;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / ("gyropoisson_cli_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string write_file(const std::string& name, const std::string& text) {
  const fs::path p = scratch() / name;
  std::ofstream(p) << text;
  return p.string();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string shipped(const std::string& name) { return std::string(GP_CONFIG_DIR) + "/" + name; }

std::string first_line(const std::string& text) { return text.substr(0, text.find('\n')); }

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

nlohmann::json default_json(const std::string& name) { return to_json(default_config(name)); }

}  // namespace

TEST_CASE("config round trip for every catalog case and shipped file") {
  std::vector<ScenarioConfig> configs;
  for (const auto& name : case_names()) configs.push_back(default_config(name));
  for (const char* f : {"yehia_a_verify.json", "affine_negative_control.json", "yehia_b_original.json",
                        "gyrostatic_convergence.json"}) {
    configs.push_back(load_config(shipped(f)));
  }
  for (const auto& c : configs) {
    CAPTURE(c.case_name);
    const std::string text = serialize(c);
    const ScenarioConfig again = parse_config_text(text);
    CHECK(again == c);
    CHECK(serialize(again) == text);
  }
}

TEST_CASE("shipped configs are already canonical") {
  for (const char* f : {"yehia_a_verify.json", "affine_negative_control.json", "yehia_b_original.json",
                        "gyrostatic_convergence.json"}) {
    CAPTURE(f);
    CHECK(serialize(load_config(shipped(f))) == read_file(shipped(f)));
  }
}

TEST_CASE("parsing fills defaults") {
  const ScenarioConfig c = parse_config_text(R"({"case": "yehia_a", "params": {"k": 2.5}})");
  CHECK(c.params["k"] == 2.5);
  CHECK(c.params["n"] == 0.3);
  CHECK(c.kovalevskaya_i3 == 1.0);
  CHECK(c.run.dt == 1e-3);
  CHECK(c.run.t_end == 10.0);
  CHECK(c.run.record_every == 10);
  CHECK(c.verify.samples == 100);
  CHECK(c.verify.tolerance == 1e-8);
  const ScenarioConfig g = default_config("gyrostatic");
  REQUIRE(g.inertia.has_value());
  CHECK(*g.inertia == std::array<double, 3>{1, 2, 3});
}

TEST_CASE("unknown keys are rejected with their path") {
  struct Bad {
    nlohmann::json j;
    std::string key;
  };
  std::vector<Bad> cases;
  auto add = [&cases](const std::string& name, const std::function<void(nlohmann::json&)>& edit, std::string key) {
    nlohmann::json j = default_json(name);
    edit(j);
    cases.push_back({j, std::move(key)});
  };
  add("gyrostatic", [](auto& j) { j["parms"] = nlohmann::json::object(); }, "parms");
  add("gyrostatic", [](auto& j) { j["run"]["d_t"] = 1e-3; }, "run.d_t");
  add("gyrostatic", [](auto& j) { j["verify"]["sample"] = 3; }, "verify.sample");
  add("gyrostatic", [](auto& j) { j["params"]["mu"] = {1, 2, 3}; }, "params.mu");
  add("gyrostatic", [](auto& j) { j["potential"]["mass"] = 1.0; }, "potential.mass");
  add("psi_phi", [](auto& j) { j["params"]["psi"]["coefs"] = nlohmann::json::object(); }, "params.psi.coefs");
  add("separable", [](auto& j) { j["params"]["a"]["coeff"] = 1; }, "params.a.coeff");
  add("yehia_b", [](auto& j) { j["convergence"]["dts"] = {1, 2, 3}; }, "convergence.dts");
  for (const auto& b : cases) {
    CAPTURE(b.key);
    try {
      parse_config(b.j);
      FAIL("accepted an unknown key");
    } catch (const ConfigError& e) {
      CHECK(std::string(e.what()).find("'" + b.key + "'") != std::string::npos);
    }
    const Run r = cli({"verify", "--config", write_file("bad.json", b.j.dump())});
    CHECK(r.code == kExitConfigError);
    CHECK(r.err.find(b.key) != std::string::npos);
  }
}

TEST_CASE("malformed values are config errors") {
  const std::vector<std::string> texts{
      R"({"case": "nope"})",
      R"({"params": {}})",
      R"({"case": "gyrostatic", "run": {"dt": -1}})",
      R"({"case": "gyrostatic", "run": {"record_every": 1.5}})",
      R"({"case": "gyrostatic", "initial_state": [1, 2, 3]})",
      R"({"case": "gyrostatic", "params": {"mu0": [1, "x", 3]}})",
      R"({"case": "gyrostatic", "variant": "original"})",
      R"({"case": "yehia_b", "variant": "fixed"})",
      R"({"case": "yehia_a", "inertia": [1, 2, 3]})",
      R"({"case": "yehia_a", "potential": {"type": "zero"}})",
      R"({"case": "gyrostatic", "inertia": "kovalevskaya:x"})",
      R"({"case": "psi_phi", "params": {"psi": {"type": "poly3", "coefficients": {"g5": 1}}}})",
      R"({"case": "gyrostatic", "verify": {"casimirs": ["I2"]}})",
      R"({"case": "affine", "params": {"A": [1, 0, 0, 1, 0, 1], "A_raw": [1, 0, 0, 0, 1, 0, 0, 0, 1]}})",
      R"({"case": "gyrostatic", "convergence": {"dt_list": [1e-3, 2e-3, 5e-4]}})",
      R"({"case": "gyrostatic",)"};
  for (const auto& t : texts) {
    CAPTURE(t);
    CHECK_THROWS_AS(parse_config_text(t), ConfigError);
    const Run r = cli({"verify", "--config", write_file("bad.json", t)});
    CHECK(r.code == kExitConfigError);
    CHECK_FALSE(r.err.empty());
  }
}

TEST_CASE("verify exit codes") {
  const Run ok = cli({"verify", "--config", shipped("yehia_a_verify.json")});
  CHECK(ok.code == kExitOk);
  CHECK(first_line(ok.out) == "# gyropoisson verify");
  CHECK(ok.out.find("# seed 42 samples 100") != std::string::npos);
  CHECK(ok.out.find("# result PASS") != std::string::npos);

  const Run neg = cli({"verify", "--config", shipped("affine_negative_control.json"), "--negative-control"});
  CHECK(neg.code == kExitVerificationFailed);
  CHECK(neg.out.find("jacobi_condition ") != std::string::npos);
  for (const auto& l : lines(neg.out)) {
    if (l.rfind("jacobi_", 0) == 0) CHECK(l.substr(l.size() - 4) == "FAIL");
  }
  const Run locked = cli({"verify", "--config", shipped("affine_negative_control.json")});
  CHECK(locked.code == kExitConfigError);
  CHECK(locked.err.find("--negative-control") != std::string::npos);

  const Run b = cli({"verify", "--config", shipped("yehia_b_original.json")});
  CHECK(b.code == kExitVerificationFailed);
  bool uncorrected_fails = false, corrected_passes = false;
  for (const auto& l : lines(b.out)) {
    if (l.rfind("casimir_condition[I2_uncorrected] ", 0) == 0) {
      const std::string v = l.substr(l.find(' ') + 1);
      uncorrected_fails = std::stod(v) > 1e-6 && l.substr(l.size() - 4) == "FAIL";
    }
    if (l.rfind("casimir_condition[C_corrected] ", 0) == 0) corrected_passes = l.substr(l.size() - 4) == "PASS";
  }
  CHECK(uncorrected_fails);
  CHECK(corrected_passes);
}

TEST_CASE("verify overrides and report structure") {
  const Run r = cli({"verify", "--config", shipped("gyrostatic_convergence.json"), "--samples", "10", "--seed", "7",
                     "--tolerance", "1e-6"});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("# seed 7 samples 10") != std::string::npos);
  CHECK(r.out.find("casimir_condition[C_gyrostatic] 0 1e-06 PASS") != std::string::npos);
  int checks = 0, argmax = 0;
  for (const auto& l : lines(r.out)) {
    if (l.rfind("# argmax", 0) == 0) ++argmax;
    else if (l[0] != '#') ++checks;
  }
  CHECK(checks == 7);
  CHECK(argmax == checks);
  CHECK(cli({"verify", "--config", shipped("gyrostatic_convergence.json"), "--samples", "0"}).code ==
        kExitConfigError);
}

TEST_CASE("simulate writes the documented CSV") {
  const std::string csv = (scratch() / "gyro.csv").string();
  const Run r = cli({"simulate", "--config", shipped("gyrostatic_convergence.json"), "--output", csv, "--t-end", "1"});
  CHECK(r.code == kExitOk);
  const auto rows = lines(read_file(csv));
  REQUIRE(rows.size() == 102);
  CHECK(rows[0] == "t,M1,M2,M3,g1,g2,g3,H,C1,C2,C_gyrostatic,drift_H,drift_C1,drift_C2,drift_C_gyrostatic");
  CHECK(rows[1].rfind("0,4.5,-3,6,0.9,1.5,2.43,", 0) == 0);
  for (const auto& row : rows) CHECK(std::count(row.begin(), row.end(), ',') == 14);
  CHECK(r.out.find("rows 101") != std::string::npos);
  CHECK(r.out.find("status completed") != std::string::npos);
}

TEST_CASE("free rigid body simulation") {
  nlohmann::json j = default_json("gyrostatic");
  j["params"]["mu0"] = {0, 0, 0};
  j["potential"] = {{"type", "zero"}};
  j["initial_state"] = {1.0, 0.5, -0.7, 0.3, 0.4, 0.85};
  const std::string cfg = write_file("free.json", j.dump());
  const std::string csv = (scratch() / "free.csv").string();
  const Run r = cli({"simulate", "--config", cfg, "--output", csv});
  CHECK(r.code == kExitOk);
  const auto rows = lines(read_file(csv));
  REQUIRE(rows.size() > 2);
  CHECK(rows[0] == "t,M1,M2,M3,g1,g2,g3,H,C1,C2,C_gyrostatic,drift_H,drift_C1,drift_C2,drift_C_gyrostatic");
  double max_h = 0.0;
  for (size_t i = 1; i < rows.size(); ++i) {
    std::vector<double> v;
    std::istringstream in(rows[i]);
    for (std::string cell; std::getline(in, cell, ',');) v.push_back(std::stod(cell));
    REQUIRE(v.size() == 15);
    max_h = std::fmax(max_h, std::fabs(v[11]));
    CHECK(v[10] == v[9]);  // the Casimir is C2 itself
  }
  CHECK(max_h < 1e-8);
}

TEST_CASE("simulate terminates on a singular start") {
  nlohmann::json j = default_json("borisov_mamaev");
  j["initial_state"] = {0.5, 0.2, 0.1, 0.0, 0.9, 0.0};
  const std::string cfg = write_file("bm0.json", j.dump());
  const std::string csv = (scratch() / "bm0.csv").string();
  const Run r = cli({"simulate", "--config", cfg, "--output", csv});
  CHECK(r.code == kExitSingularity);
  const auto rows = lines(read_file(csv));
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].rfind("t,M1,", 0) == 0);
  CHECK(r.out.find("status terminated-at-singularity") != std::string::npos);
  CHECK(r.out.find("rows 0") != std::string::npos);

  const Run c = cli({"convergence", "--config", cfg});
  CHECK(c.code == kExitSingularity);
}

TEST_CASE("simulate reproduces the case b correction") {
  const std::string csv = (scratch() / "b.csv").string();
  const Run r = cli({"simulate", "--config", shipped("yehia_b_original.json"), "--output", csv});
  CHECK(r.code == kExitOk);
  double uncorrected = -1, corrected = -1;
  for (const auto& l : lines(r.out)) {
    if (l.rfind("max_drift I2_uncorrected ", 0) == 0) uncorrected = std::stod(l.substr(25));
    if (l.rfind("max_drift C_corrected ", 0) == 0) corrected = std::stod(l.substr(22));
  }
  CHECK(uncorrected > 1e-3);
  CHECK(corrected >= 0.0);
  CHECK(corrected < 1e-7);
  CHECK(first_line(read_file(csv)) ==
        "t,M1,M2,M3,g1,g2,g3,H,C1,C2,I2_uncorrected,C_corrected,drift_H,drift_C1,drift_C2,drift_I2_uncorrected,"
        "drift_C_corrected");
}

TEST_CASE("simulate needs an output path and a writable file") {
  CHECK(cli({"simulate", "--config", shipped("gyrostatic_convergence.json")}).code == kExitConfigError);
  CHECK(cli({"simulate", "--config", shipped("gyrostatic_convergence.json"), "--output", "/nonexistent/dir/x.csv"})
            .code == kExitConfigError);
  CHECK(cli({"simulate", "--config", "/nonexistent/config.json", "--output", "x.csv"}).code == kExitConfigError);
  CHECK(cli({"simulate", "--config", shipped("gyrostatic_convergence.json"), "--output",
             (scratch() / "n.csv").string(), "--dt", "-1"})
            .code == kExitConfigError);
}

TEST_CASE("convergence table") {
  const std::string csv = (scratch() / "conv.csv").string();
  const Run r = cli({"convergence", "--config", shipped("gyrostatic_convergence.json"), "--output", csv});
  CHECK(r.code == kExitOk);
  bool seen_h = false;
  for (const auto& l : lines(r.out)) {
    if (l.rfind("H ", 0) == 0) {
      seen_h = true;
      const double order = std::stod(l.substr(2));
      CHECK(order >= 3.5);
      CHECK(order <= 4.5);
      CHECK(l.substr(l.size() - 3) == " ok");
    }
    if (l.rfind("C2 ", 0) == 0) CHECK(l.find("not conserved") != std::string::npos);
  }
  CHECK(seen_h);
  const auto rows = lines(read_file(csv));
  REQUIRE(rows.size() == 5);
  CHECK(rows[0] == "observable,order,status,drift_0.002,drift_0.001,drift_5e-04");

  const Run b = cli({"convergence", "--config", shipped("yehia_b_original.json")});
  CHECK(b.code == kExitOk);
  for (const auto& l : lines(b.out)) {
    if (l.rfind("I2_uncorrected ", 0) == 0) {
      CHECK(std::fabs(std::stod(l.substr(15))) < 0.1);
      CHECK(l.find("not conserved") != std::string::npos);
    }
  }
  CHECK(cli({"convergence", "--config", shipped("gyrostatic_convergence.json"), "--dt-list", "1e-3,5e-4"}).code ==
        kExitConfigError);
  CHECK(cli({"convergence", "--config", shipped("gyrostatic_convergence.json"), "--dt-list", "1e-3,2e-3,5e-4"})
            .code == kExitConfigError);
  CHECK(cli({"convergence", "--config", shipped("gyrostatic_convergence.json"), "--dt-list", "4e-3,2e-3,1e-3",
             "--t-end", "2"})
            .code == kExitOk);
}

TEST_CASE("outputs are byte-identical across runs") {
  for (const char* f : {"yehia_a_verify.json", "yehia_b_original.json"}) {
    const Run a = cli({"verify", "--config", shipped(f)});
    const Run b = cli({"verify", "--config", shipped(f)});
    CHECK(a.out == b.out);
  }
  const std::string c1 = (scratch() / "d1.csv").string(), c2 = (scratch() / "d2.csv").string();
  const Run a = cli({"simulate", "--config", shipped("yehia_b_original.json"), "--output", c1});
  const Run b = cli({"simulate", "--config", shipped("yehia_b_original.json"), "--output", c2});
  CHECK(a.out == b.out);
  CHECK(read_file(c1) == read_file(c2));
  CHECK_FALSE(read_file(c1).empty());
}

TEST_CASE("list-cases") {
  const Run r = cli({"list-cases"});
  CHECK(r.code == kExitOk);
  CHECK(first_line(r.out) == "9 cases");
  int names = 0;
  for (const auto& l : lines(r.out)) {
    if (l.rfind("case ", 0) == 0) ++names;
  }
  CHECK(names == 9);
  for (const auto& n : case_names()) CHECK(r.out.find("case " + n + "\n") != std::string::npos);
  CHECK(r.out.find("variants: original corrected_casimir corrected_torque") != std::string::npos);
  for (const auto& e : catalog()) {
    CAPTURE(e.name);
    CHECK_FALSE(e.casimirs.empty());
    for (const auto& [name, provenance] : e.casimirs) CHECK(r.out.find("casimir " + name + ": ") != std::string::npos);
  }
}

TEST_CASE("argument errors and help") {
  CHECK(cli({}).code == kExitConfigError);
  CHECK(cli({"frobnicate"}).code == kExitConfigError);
  CHECK(cli({"verify"}).code == kExitConfigError);
  CHECK(cli({"verify", "--config", shipped("yehia_a_verify.json"), "--bogus"}).code == kExitConfigError);
  CHECK(cli({"verify", "--config", shipped("yehia_a_verify.json"), "--samples", "abc"}).code == kExitConfigError);
  const Run h = cli({"--help"});
  CHECK(h.code == kExitOk);
  CHECK(h.out.find("verify") != std::string::npos);
}

TEST_CASE("format_double is the shortest round trip") {
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(1e-8) == "1e-08");
  CHECK(format_double(-3.0) == "-3");
  testing::Gen gen(81);
  for (int i = 0; i < 1000; ++i) {
    const double v = gen.uniform(-1, 1) * std::pow(10.0, gen.uniform(-20, 20));
    const std::string s = format_double(v);
    double back = 0.0;
    std::from_chars(s.data(), s.data() + s.size(), back);
    CHECK(back == v);
    CHECK(s.find(',') == std::string::npos);
  }
}
