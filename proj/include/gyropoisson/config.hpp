#pragma once

// Scenario configuration files: a strict JSON schema, canonical
// serialization, and construction of catalog scenarios from it.

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "gyropoisson/dynamics.hpp"
#include "gyropoisson/models.hpp"

namespace gyropoisson {

/// Malformed configuration: unknown key, wrong type, out-of-range value.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct VerifyOptions {
  int samples = 100;
  std::uint64_t seed = 42;
  double tolerance = 1e-8;
  /// Casimirs to check; empty means every expected-conserved one.
  std::vector<std::string> casimirs;
};

struct ScenarioConfig {
  std::string case_name;
  std::string variant;  // yehia_b only
  /// Case parameters, normalized: every parameter present with its default.
  nlohmann::json params = nlohmann::json::object();
  /// Potential for the generic cases; null for cases that fix their own.
  nlohmann::json potential;
  /// Either three principal moments or a Kovalevskaya I3.
  std::optional<std::array<double, 3>> inertia;
  std::optional<double> kovalevskaya_i3;
  std::array<double, 6> initial_state{};
  RunOptions run;
  VerifyOptions verify;
  std::vector<double> dt_list{2e-3, 1e-3, 5e-4};

  bool operator==(const ScenarioConfig& other) const;
};

/// The nine catalog case names, in listing order.
const std::vector<std::string>& case_names();

ScenarioConfig parse_config(const nlohmann::json& j);
ScenarioConfig parse_config_text(const std::string& text);
ScenarioConfig load_config(const std::string& path);
nlohmann::json to_json(const ScenarioConfig& config);
std::string serialize(const ScenarioConfig& config);

/// Default configuration of a catalog case.
ScenarioConfig default_config(const std::string& case_name);

/// Builds the scenario. Raw (non-symmetric) affine matrices require
/// allow_negative_control.
Scenario build_scenario(const ScenarioConfig& config, bool allow_negative_control = false);

State initial_state(const ScenarioConfig& config);

struct CaseInfo {
  std::string name;
  std::string summary;
  std::vector<std::pair<std::string, std::string>> parameters;  // name, default
  std::string singular_set;
  std::vector<std::string> variants;
  std::vector<std::pair<std::string, std::string>> casimirs;  // name, provenance
};

const std::vector<CaseInfo>& catalog();

}  // namespace gyropoisson
