#pragma once

// Equations of motion, fixed-step RK4 integration and conservation monitoring.

#include <functional>
#include <string>
#include <vector>

#include "gyropoisson/models.hpp"

namespace gyropoisson {

/// Mdot = -omega x (M + mu) + gamma x grad U,  gammadot = gamma x omega.
Vec6 rhs_general(const State& x, const InertiaTensor& I, const TorqueModel& mu, const ScalarField& U);

/// d(M . gamma)/dt = gamma . (mu x omega).
double c2_drift_rate(const State& x, const InertiaTensor& I, const TorqueModel& mu);

using Rhs = std::function<Vec6(const State&)>;

/// Classical fourth-order Runge-Kutta. DomainError from any stage propagates.
State rk4_step(const State& x, double dt, const Rhs& rhs);

struct Observable {
  std::string name;
  std::function<double(const State&)> value;
};

enum class RunStatus { completed, terminated_at_singularity };
std::string to_string(RunStatus s);

struct Trajectory {
  std::vector<double> times;
  std::vector<State> states;
  std::vector<std::string> names;
  /// values[k][t] for observable k at recorded time t.
  std::vector<std::vector<double>> values;
  /// drift[k][t]: obs(t) - obs(0), divided by |obs(0)| unless |obs(0)| < 1e-12.
  std::vector<std::vector<double>> drift;
  RunStatus status = RunStatus::completed;
  std::string message;

  int index_of(const std::string& name) const;
  const std::vector<double>& column(const std::string& name) const;
  /// max_t |obs(t) - obs(0)|
  double max_abs_drift(const std::string& name) const;
  /// max_t |drift column|
  double max_drift(const std::string& name) const;
};

inline constexpr double kDriftAbsoluteThreshold = 1e-12;
/// Per-sqrt(step) relative rounding level below which drifts count as floor.
inline constexpr double kRoundingFloor = 1e-15;

struct RunOptions {
  double t_end = 10.0;
  double dt = 1e-3;
  int record_every = 10;
};

/// Fixed-step RK4 run. `distance` and `clearance` describe the singular set:
/// a state closer than `clearance` ends the run with terminated status.
Trajectory integrate(const Rhs& rhs, const std::vector<Observable>& observables, const State& x0,
                     const RunOptions& options, const std::function<double(const State&)>& distance = nullptr,
                     double clearance = 0.0);

/// Observables of a scenario: H, C1, C2, then each listed Casimir.
std::vector<Observable> scenario_observables(const Scenario& scenario);
Rhs scenario_rhs(const Scenario& scenario);
Trajectory integrate(const Scenario& scenario, const State& x0, const RunOptions& options = {});

enum class OrderStatus { ok, floor, not_conserved };
std::string to_string(OrderStatus s);

struct OrderEstimate {
  std::string name;
  std::vector<double> drifts;  // max_t |obs(t) - obs(0)| per step size
  double order = 0.0;          // log-log least-squares slope
  OrderStatus status = OrderStatus::ok;
};

/// Classifies drift magnitudes measured at decreasing step sizes.
OrderEstimate fit_order(std::string name, const std::vector<double>& dts, const std::vector<double>& drifts,
                        double initial_value, long max_steps);

struct ConvergenceResult {
  std::vector<double> dts;
  std::vector<OrderEstimate> rows;
  RunStatus status = RunStatus::completed;
  std::string message;

  const OrderEstimate& row(const std::string& name) const;
};

ConvergenceResult convergence_study(const Rhs& rhs, const std::vector<Observable>& observables, const State& x0,
                                    double t_end, const std::vector<double>& dts,
                                    const std::function<double(const State&)>& distance = nullptr,
                                    double clearance = 0.0);
ConvergenceResult convergence_study(const Scenario& scenario, const State& x0, double t_end,
                                    const std::vector<double>& dts);

}  // namespace gyropoisson
