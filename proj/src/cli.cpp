#include "gyropoisson/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>

#include <CLI11.hpp>

#include "gyropoisson/dynamics.hpp"
#include "gyropoisson/poisson.hpp"
#include "gyropoisson/sampling.hpp"

namespace gyropoisson {

namespace {

constexpr double kJacobiIdentityThreshold = 1e-7;
constexpr double kJacobiConditionThreshold = 1e-9;
constexpr double kMDependenceThreshold = 1e-8;

ScalarField c1_chart() {
  return ScalarField::of_gamma([](const Vec3& g) { return 0.5 * dot(g, g); }, [](const Vec3& g) { return g; },
                               "|gamma|^2/2");
}

std::string state_text(const State& x) {
  return "M=(" + format_double(x.M.x) + "," + format_double(x.M.y) + "," + format_double(x.M.z) + ") gamma=(" +
         format_double(x.gamma.x) + "," + format_double(x.gamma.y) + "," + format_double(x.gamma.z) + ")";
}

/// Casimirs selected for checking: C1 always, then the requested ones.
std::vector<Casimir> selected_casimirs(const ScenarioConfig& cfg, const Scenario& sc) {
  std::vector<Casimir> out;
  out.push_back({"C1", c1_chart(), true, "|gamma|^2/2"});
  const auto& want = cfg.verify.casimirs;
  const bool all = want == std::vector<std::string>{"all"};
  for (const auto& c : sc.casimirs) {
    const bool named = std::find(want.begin(), want.end(), c.name) != want.end();
    if (all || named || (want.empty() && c.expected_conserved)) out.push_back(c);
  }
  return out;
}

struct Options {
  std::string config;
  std::string output;
  int samples = 0;
  std::uint64_t seed = 0;
  double tolerance = 0.0;
  double dt = 0.0;
  double t_end = 0.0;
  std::vector<double> dt_list;
  bool negative_control = false;
};

void apply_overrides(ScenarioConfig& cfg, const CLI::App& app, const Options& o) {
  struct Given {
    const CLI::App& app;
    std::size_t count(const std::string& name) const {
      const CLI::Option* opt = app.get_option_no_throw(name);
      return opt ? opt->count() : 0;
    }
  } cmd{app};
  if (cmd.count("--samples")) {
    if (o.samples < 1) throw ConfigError("--samples must be positive");
    cfg.verify.samples = o.samples;
  }
  if (cmd.count("--seed")) cfg.verify.seed = o.seed;
  if (cmd.count("--tolerance")) {
    if (!(o.tolerance > 0.0)) throw ConfigError("--tolerance must be positive");
    cfg.verify.tolerance = o.tolerance;
  }
  if (cmd.count("--dt")) {
    if (!(o.dt > 0.0)) throw ConfigError("--dt must be positive");
    cfg.run.dt = o.dt;
  }
  if (cmd.count("--t-end")) {
    if (!(o.t_end > 0.0)) throw ConfigError("--t-end must be positive");
    cfg.run.t_end = o.t_end;
  }
  if (cmd.count("--dt-list")) cfg.dt_list = o.dt_list;
}

int cmd_verify(const ScenarioConfig& cfg, const Options& o, std::ostream& out) {
  const Scenario sc = build_scenario(cfg, o.negative_control);
  const VerifyReport report = run_verify(cfg, sc);
  write_verify_report(cfg, report, out);
  return report.pass() ? kExitOk : kExitVerificationFailed;
}

int cmd_simulate(const ScenarioConfig& cfg, const Options& o, std::ostream& out) {
  if (o.output.empty()) throw ConfigError("simulate requires --output PATH");
  const Scenario sc = build_scenario(cfg, o.negative_control);
  const Trajectory traj = integrate(sc, initial_state(cfg), cfg.run);

  std::ofstream csv(o.output, std::ios::binary);
  if (!csv) throw ConfigError("cannot open output '" + o.output + "' for writing");
  write_trajectory_csv(traj, csv);
  csv.close();
  if (!csv) throw ConfigError("failed writing '" + o.output + "'");

  out << "# gyropoisson simulate\n";
  out << "case " << cfg.case_name << "\n";
  if (!cfg.variant.empty()) out << "variant " << cfg.variant << "\n";
  out << "dt " << format_double(cfg.run.dt) << " t_end " << format_double(cfg.run.t_end) << " record_every "
      << cfg.run.record_every << "\n";
  out << "rows " << traj.times.size() << "\n";
  for (const auto& name : traj.names) {
    out << "max_drift " << name << " " << (traj.times.empty() ? "nan" : format_double(traj.max_drift(name)))
        << "\n";
  }
  out << "status " << to_string(traj.status) << "\n";
  if (!traj.message.empty()) out << "message " << traj.message << "\n";
  return traj.status == RunStatus::completed ? kExitOk : kExitSingularity;
}

int cmd_convergence(const ScenarioConfig& cfg, const Options& o, std::ostream& out) {
  if (cfg.dt_list.size() < 3) throw ConfigError("convergence needs at least three step sizes");
  for (size_t i = 0; i < cfg.dt_list.size(); ++i) {
    if (!(cfg.dt_list[i] > 0.0)) throw ConfigError("step sizes must be positive");
    if (i > 0 && !(cfg.dt_list[i] < cfg.dt_list[i - 1])) throw ConfigError("step sizes must be strictly decreasing");
  }
  const Scenario sc = build_scenario(cfg, o.negative_control);
  const ConvergenceResult res = convergence_study(sc, initial_state(cfg), cfg.run.t_end, cfg.dt_list);

  out << "# gyropoisson convergence\n";
  out << "# case " << cfg.case_name << (cfg.variant.empty() ? "" : " variant " + cfg.variant) << "\n";
  out << "# t_end " << format_double(cfg.run.t_end) << "\n";
  out << "observable order";
  for (double dt : res.dts) out << " drift@" << format_double(dt);
  out << " status\n";
  for (const auto& row : res.rows) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3f", row.order);
    out << row.name << " " << buf;
    for (double d : row.drifts) out << " " << format_double(d);
    out << " " << to_string(row.status) << "\n";
  }
  out << "status " << to_string(res.status) << "\n";
  if (!res.message.empty()) out << "message " << res.message << "\n";

  if (!o.output.empty()) {
    std::ofstream csv(o.output, std::ios::binary);
    if (!csv) throw ConfigError("cannot open output '" + o.output + "' for writing");
    csv << "observable,order,status";
    for (double dt : res.dts) csv << ",drift_" << format_double(dt);
    csv << "\n";
    for (const auto& row : res.rows) {
      csv << row.name << "," << format_double(row.order) << "," << to_string(row.status);
      for (double d : row.drifts) csv << "," << format_double(d);
      csv << "\n";
    }
    if (!csv) throw ConfigError("failed writing '" + o.output + "'");
  }
  return res.status == RunStatus::completed ? kExitOk : kExitSingularity;
}

void cmd_list_cases(std::ostream& out) {
  const auto& entries = catalog();
  out << entries.size() << " cases\n";
  for (const auto& e : entries) {
    out << "\ncase " << e.name << "\n";
    out << "  summary: " << e.summary << "\n";
    for (const auto& [k, v] : e.parameters) out << "  param " << k << " = " << v << "\n";
    out << "  singular set: " << e.singular_set << "\n";
    if (!e.variants.empty()) {
      out << "  variants:";
      for (const auto& v : e.variants) out << " " << v;
      out << "\n";
    }
    for (const auto& [k, v] : e.casimirs) out << "  casimir " << k << ": " << v << "\n";
  }
}

}  // namespace

std::string format_double(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

bool VerifyReport::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const VerifyCheck& c) { return c.pass; });
}

VerifyReport run_verify(const ScenarioConfig& cfg, const Scenario& sc) {
  const auto states =
      sample_states(cfg.verify.samples, cfg.verify.seed, [&sc](const State& x) { return sc.singular_distance(x); });
  const PoissonStructure P(sc.torque);
  const FullTorque full = lift(sc.torque);

  VerifyReport report;
  auto track = [](VerifyCheck& c, double r, const State& x) {
    if (std::isnan(c.max_residual)) return;
    const double a = std::fabs(r);
    if (std::isnan(a) || a > c.max_residual) {
      c.max_residual = a;
      c.argmax = x;
    }
  };
  auto finish = [&report](VerifyCheck c) {
    c.pass = c.max_residual < c.threshold;
    report.checks.push_back(std::move(c));
  };

  VerifyCheck ji{"jacobi_identity", 0.0, kJacobiIdentityThreshold, true, {}};
  VerifyCheck jc{"jacobi_condition", 0.0, kJacobiConditionThreshold, true, {}};
  VerifyCheck md{"m_dependence", 0.0, kMDependenceThreshold, true, {}};
  for (const auto& x : states) {
    track(ji, jacobi_identity_residual(P, x).value, x);
    track(jc, jacobi_condition_residual(sc.torque, x.gamma, x.s()), x);
    track(md, m_dependence_residual(full, x).value, x);
  }
  finish(ji);
  finish(jc);
  finish(md);

  for (const auto& cas : selected_casimirs(cfg, sc)) {
    VerifyCheck cc{"casimir_condition[" + cas.name + "]", 0.0, cfg.verify.tolerance, true, {}};
    VerifyCheck cp{"casimir_pde[" + cas.name + "]", 0.0, cfg.verify.tolerance, true, {}};
    const ScalarField6 C6 = ScalarField6::lift(cas.field);
    for (const auto& x : states) {
      track(cc, casimir_condition_residual(cas.field, sc.torque, x.gamma, x.s()), x);
      track(cp, casimir_pde_residual(C6, P, x).value, x);
    }
    finish(cc);
    finish(cp);
  }
  return report;
}

void write_verify_report(const ScenarioConfig& cfg, const VerifyReport& report, std::ostream& out) {
  out << "# gyropoisson verify\n";
  out << "# case " << cfg.case_name << (cfg.variant.empty() ? "" : " variant " + cfg.variant) << "\n";
  out << "# seed " << cfg.verify.seed << " samples " << cfg.verify.samples << "\n";
  for (const auto& c : report.checks) {
    out << c.name << " " << format_double(c.max_residual) << " " << format_double(c.threshold) << " "
        << (c.pass ? "PASS" : "FAIL") << "\n";
  }
  for (const auto& c : report.checks) out << "# argmax " << c.name << " " << state_text(c.argmax) << "\n";
  out << "# result " << (report.pass() ? "PASS" : "FAIL") << "\n";
}

void write_trajectory_csv(const Trajectory& traj, std::ostream& out) {
  out << "t,M1,M2,M3,g1,g2,g3";
  for (const auto& n : traj.names) out << "," << n;
  for (const auto& n : traj.names) out << ",drift_" << n;
  out << "\n";
  for (size_t i = 0; i < traj.times.size(); ++i) {
    const State& x = traj.states[i];
    out << format_double(traj.times[i]);
    for (double v : x.coords()) out << "," << format_double(v);
    for (const auto& col : traj.values) out << "," << format_double(col[i]);
    for (const auto& col : traj.drift) out << "," << format_double(col[i]);
    out << "\n";
  }
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Gyroscopic Poisson structures: verification and simulation", "gyropoisson"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&o](CLI::App* cmd, bool verify, bool run, bool convergence) {
    cmd->add_option("--config", o.config, "scenario config (JSON)")->required();
    cmd->add_flag("--negative-control", o.negative_control, "allow the unverified raw-matrix affine torque");
    if (verify) {
      cmd->add_option("--samples", o.samples, "number of random states");
      cmd->add_option("--seed", o.seed, "sampling seed");
      cmd->add_option("--tolerance", o.tolerance, "Casimir check threshold");
    }
    if (run) {
      cmd->add_option("--output", o.output, convergence ? "optional CSV of the order table" : "CSV output path");
      cmd->add_option("--t-end", o.t_end, "integration horizon");
      if (!convergence) cmd->add_option("--dt", o.dt, "step size");
    }
    if (convergence) cmd->add_option("--dt-list", o.dt_list, "step sizes X,Y,Z")->delimiter(',');
  };

  CLI::App* verify = app.add_subcommand("verify", "run the Poisson-structure verification suite");
  add_common(verify, true, false, false);
  CLI::App* simulate = app.add_subcommand("simulate", "integrate a trajectory and write CSV");
  add_common(simulate, false, true, false);
  CLI::App* convergence = app.add_subcommand("convergence", "fit conservation orders across step sizes");
  add_common(convergence, false, true, true);
  app.add_subcommand("list-cases", "print the case catalog");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfigError;
  }

  try {
    CLI::App* cmd = app.get_subcommands().front();
    if (cmd->get_name() == "list-cases") {
      cmd_list_cases(out);
      return kExitOk;
    }
    ScenarioConfig cfg = load_config(o.config);
    apply_overrides(cfg, *cmd, o);
    if (cmd == verify) return cmd_verify(cfg, o, out);
    if (cmd == simulate) return cmd_simulate(cfg, o, out);
    return cmd_convergence(cfg, o, out);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << "\n";
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
  }
  return kExitConfigError;
}

}  // namespace gyropoisson
