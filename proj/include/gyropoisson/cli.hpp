#pragma once

// Command-line front end: verify, simulate, convergence, list-cases.

#include <ostream>
#include <string>
#include <vector>

#include "gyropoisson/config.hpp"

namespace gyropoisson {

enum ExitCode : int {
  kExitOk = 0,
  kExitVerificationFailed = 1,
  kExitConfigError = 2,
  kExitSingularity = 3,
};

/// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

struct VerifyCheck {
  std::string name;
  double max_residual = 0.0;
  double threshold = 0.0;
  bool pass = true;
  State argmax;
};

struct VerifyReport {
  std::vector<VerifyCheck> checks;
  bool pass() const;
};

/// Runs the verification suite of a configured scenario.
VerifyReport run_verify(const ScenarioConfig& config, const Scenario& scenario);
void write_verify_report(const ScenarioConfig& config, const VerifyReport& report, std::ostream& out);

/// CSV of a trajectory: t, M, gamma, observables, then drift_<name> for each.
void write_trajectory_csv(const Trajectory& traj, std::ostream& out);

/// Shortest round-trip representation.
std::string format_double(double v);

}  // namespace gyropoisson
