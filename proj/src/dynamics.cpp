#include "gyropoisson/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace gyropoisson {

Vec6 rhs_general(const State& x, const InertiaTensor& I, const TorqueModel& mu, const ScalarField& U) {
  const Vec3 w = I.omega(x.M);
  const Vec3 m = mu.at(x);
  const Vec3 Mdot = cross(x.M + m, w) + cross(x.gamma, U.grad_gamma(x.gamma));
  const Vec3 gdot = cross(x.gamma, w);
  return {Mdot.x, Mdot.y, Mdot.z, gdot.x, gdot.y, gdot.z};
}

double c2_drift_rate(const State& x, const InertiaTensor& I, const TorqueModel& mu) {
  return dot(x.gamma, cross(mu.at(x), I.omega(x.M)));
}

namespace {

State axpy(const State& x, double a, const Vec6& k) {
  Vec6 c = x.coords();
  for (size_t i = 0; i < 6; ++i) c[i] += a * k[i];
  return State::from_coords(c);
}

}  // namespace

State rk4_step(const State& x, double dt, const Rhs& rhs) {
  const Vec6 k1 = rhs(x);
  const Vec6 k2 = rhs(axpy(x, 0.5 * dt, k1));
  const Vec6 k3 = rhs(axpy(x, 0.5 * dt, k2));
  const Vec6 k4 = rhs(axpy(x, dt, k3));
  Vec6 c = x.coords();
  for (size_t i = 0; i < 6; ++i) c[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  return State::from_coords(c);
}

std::string to_string(RunStatus s) {
  return s == RunStatus::completed ? "completed" : "terminated-at-singularity";
}

int Trajectory::index_of(const std::string& name) const {
  for (size_t k = 0; k < names.size(); ++k) {
    if (names[k] == name) return static_cast<int>(k);
  }
  return -1;
}

const std::vector<double>& Trajectory::column(const std::string& name) const {
  const int k = index_of(name);
  if (k < 0) throw std::out_of_range("trajectory has no observable '" + name + "'");
  return values[static_cast<size_t>(k)];
}

double Trajectory::max_abs_drift(const std::string& name) const {
  const auto& col = column(name);
  double m = 0.0;
  for (double v : col) m = std::fmax(m, std::fabs(v - col.front()));
  return m;
}

double Trajectory::max_drift(const std::string& name) const {
  const int k = index_of(name);
  if (k < 0) throw std::out_of_range("trajectory has no observable '" + name + "'");
  double m = 0.0;
  for (double v : drift[static_cast<size_t>(k)]) m = std::fmax(m, std::fabs(v));
  return m;
}

Trajectory integrate(const Rhs& rhs, const std::vector<Observable>& observables, const State& x0,
                     const RunOptions& options, const std::function<double(const State&)>& distance,
                     double clearance) {
  if (!(options.dt > 0.0)) throw std::invalid_argument("dt must be positive");
  if (!(options.t_end > 0.0)) throw std::invalid_argument("t_end must be positive");
  if (options.record_every < 1) throw std::invalid_argument("record_every must be at least 1");

  Trajectory traj;
  for (const auto& o : observables) traj.names.push_back(o.name);
  traj.values.resize(observables.size());
  traj.drift.resize(observables.size());

  auto terminate = [&traj](const std::string& why) {
    traj.status = RunStatus::terminated_at_singularity;
    traj.message = why;
  };

  auto record = [&](double t, const State& x) {
    std::vector<double> row;
    row.reserve(observables.size());
    for (const auto& o : observables) row.push_back(o.value(x));
    traj.times.push_back(t);
    traj.states.push_back(x);
    for (size_t k = 0; k < row.size(); ++k) traj.values[k].push_back(row[k]);
  };

  auto near_singular = [&](const State& x) { return distance && !(distance(x) >= clearance); };

  const long steps = std::lround(options.t_end / options.dt);
  State x = x0;
  try {
    if (near_singular(x0)) {
      terminate("initial state lies within the singular clearance: " + to_string(x0));
    } else {
      record(0.0, x0);
      for (long i = 1; i <= steps; ++i) {
        x = rk4_step(x, options.dt, rhs);
        if (!x.finite()) {
          terminate("non-finite state at t=" + std::to_string(static_cast<double>(i) * options.dt));
          break;
        }
        if (near_singular(x)) {
          terminate("entered singular clearance at t=" + std::to_string(static_cast<double>(i) * options.dt) +
                    ": " + to_string(x));
          break;
        }
        if (i % options.record_every == 0) record(static_cast<double>(i) * options.dt, x);
      }
    }
  } catch (const DomainError& e) {
    terminate(e.what());
  }

  for (size_t k = 0; k < traj.values.size(); ++k) {
    const auto& col = traj.values[k];
    auto& d = traj.drift[k];
    d.reserve(col.size());
    if (col.empty()) continue;
    const double v0 = col.front();
    const bool absolute = std::fabs(v0) < kDriftAbsoluteThreshold;
    for (double v : col) d.push_back(absolute ? v - v0 : (v - v0) / std::fabs(v0));
  }
  return traj;
}

std::vector<Observable> scenario_observables(const Scenario& scenario) {
  std::vector<Observable> obs;
  const ScalarField6 H = scenario.hamiltonian;
  obs.push_back({"H", [H](const State& x) { return H(x); }});
  obs.push_back({"C1", [](const State& x) { return 0.5 * dot(x.gamma, x.gamma); }});
  obs.push_back({"C2", [](const State& x) { return dot(x.M, x.gamma); }});
  for (const auto& c : scenario.casimirs) {
    const ScalarField f = c.field;
    obs.push_back({c.name, [f](const State& x) { return f.at(x); }});
  }
  return obs;
}

Rhs scenario_rhs(const Scenario& scenario) {
  const InertiaTensor I = scenario.inertia;
  const TorqueModel mu = scenario.torque;
  const ScalarField U = scenario.potential;
  return [I, mu, U](const State& x) { return rhs_general(x, I, mu, U); };
}

Trajectory integrate(const Scenario& scenario, const State& x0, const RunOptions& options) {
  return integrate(
      scenario_rhs(scenario), scenario_observables(scenario), x0, options,
      [&scenario](const State& x) { return scenario.singular_distance(x); }, scenario.clearance());
}

std::string to_string(OrderStatus s) {
  switch (s) {
    case OrderStatus::ok:
      return "ok";
    case OrderStatus::floor:
      return "floor";
    case OrderStatus::not_conserved:
      return "not conserved";
  }
  return "ok";
}

OrderEstimate fit_order(std::string name, const std::vector<double>& dts, const std::vector<double>& drifts,
                        double initial_value, long max_steps) {
  if (dts.size() != drifts.size() || dts.size() < 2) throw std::invalid_argument("fit_order needs matching lists");
  OrderEstimate est;
  est.name = std::move(name);
  est.drifts = drifts;

  const double magnitude = std::fmax(1.0, std::fabs(initial_value));
  // Accumulated rounding of a random walk over max_steps steps.
  const double floor = kRoundingFloor * magnitude * std::sqrt(static_cast<double>(std::max(max_steps, 1L)));

  bool any_floor = false;
  for (double d : drifts) any_floor = any_floor || !(d > floor);

  // Least squares on the points that are above the floor.
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int m = 0;
  for (size_t i = 0; i < dts.size(); ++i) {
    if (!(drifts[i] > 0.0)) continue;
    const double lx = std::log(dts[i]);
    const double ly = std::log(drifts[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++m;
  }
  if (m >= 2) {
    const double denom = m * sxx - sx * sx;
    est.order = denom != 0.0 ? (m * sxy - sx * sy) / denom : 0.0;
  }

  bool monotone = true;
  for (size_t i = 1; i < drifts.size(); ++i) monotone = monotone && drifts[i] < drifts[i - 1];

  const double smallest = *std::min_element(drifts.begin(), drifts.end());
  if (est.order < 1.0 && smallest > 1e-8 * magnitude) {
    est.status = OrderStatus::not_conserved;
  } else if (any_floor || !monotone) {
    est.status = OrderStatus::floor;
  } else {
    est.status = OrderStatus::ok;
  }
  return est;
}

const OrderEstimate& ConvergenceResult::row(const std::string& name) const {
  for (const auto& r : rows) {
    if (r.name == name) return r;
  }
  throw std::out_of_range("convergence table has no row '" + name + "'");
}

ConvergenceResult convergence_study(const Rhs& rhs, const std::vector<Observable>& observables, const State& x0,
                                    double t_end, const std::vector<double>& dts,
                                    const std::function<double(const State&)>& distance, double clearance) {
  if (dts.size() < 3) throw std::invalid_argument("convergence study needs at least three step sizes");
  for (size_t i = 1; i < dts.size(); ++i) {
    if (!(dts[i] < dts[i - 1])) throw std::invalid_argument("step sizes must be strictly decreasing");
  }
  ConvergenceResult out;
  out.dts = dts;
  std::vector<std::vector<double>> drifts(observables.size());
  std::vector<double> initial(observables.size(), 0.0);
  long max_steps = 0;
  for (double dt : dts) {
    RunOptions opt;
    opt.t_end = t_end;
    opt.dt = dt;
    opt.record_every = 1;
    const Trajectory traj = integrate(rhs, observables, x0, opt, distance, clearance);
    if (traj.status != RunStatus::completed) {
      out.status = traj.status;
      out.message = traj.message;
      return out;
    }
    max_steps = std::max(max_steps, std::lround(t_end / dt));
    for (size_t k = 0; k < observables.size(); ++k) {
      drifts[k].push_back(traj.max_abs_drift(observables[k].name));
      initial[k] = traj.values[k].front();
    }
  }
  for (size_t k = 0; k < observables.size(); ++k) {
    out.rows.push_back(fit_order(observables[k].name, dts, drifts[k], initial[k], max_steps));
  }
  return out;
}

ConvergenceResult convergence_study(const Scenario& scenario, const State& x0, double t_end,
                                    const std::vector<double>& dts) {
  return convergence_study(
      scenario_rhs(scenario), scenario_observables(scenario), x0, t_end, dts,
      [&scenario](const State& x) { return scenario.singular_distance(x); }, scenario.clearance());
}

}  // namespace gyropoisson
