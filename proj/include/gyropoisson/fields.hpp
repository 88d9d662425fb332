#pragma once

// Scalar and vector fields in the chart (gamma1, gamma2, gamma3, s = M . gamma),
// their full phase-space lifts, and the gyroscopic torque generator mu.

#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <string>

#include "gyropoisson/algebra.hpp"

namespace gyropoisson {

inline constexpr double kNoSingularity = std::numeric_limits<double>::infinity();
inline constexpr double kDefaultClearance = 1e-3;

using ChartScalar = std::function<double(const Vec3&, double)>;
using ChartVector = std::function<Vec3(const Vec3&, double)>;

/// A smooth function C(gamma, s). Derivatives with subscript gamma hold s
/// fixed; d4 is d/ds at fixed gamma. Missing analytic derivatives fall back to
/// central differences.
class ScalarField {
 public:
  struct Parts {
    ChartScalar value;
    ChartVector grad_gamma;  // optional
    ChartScalar d4;          // optional
    ChartScalar singular_distance;  // optional; distance to where value is undefined
    double clearance = kDefaultClearance;
    std::string label;
  };

  ScalarField() = default;
  explicit ScalarField(Parts parts);

  /// Field of gamma only (d4 == 0).
  static ScalarField of_gamma(std::function<double(const Vec3&)> value, std::function<Vec3(const Vec3&)> grad,
                              std::string label);
  static ScalarField constant(double c);

  double operator()(const Vec3& gamma, double s) const;
  double operator()(const Vec3& gamma) const { return (*this)(gamma, 0.0); }
  double at(const State& x) const { return (*this)(x.gamma, x.s()); }

  Vec3 grad_gamma(const Vec3& gamma, double s = 0.0) const;
  double d4(const Vec3& gamma, double s = 0.0) const;

  bool has_analytic_grad() const { return static_cast<bool>(parts_->grad_gamma); }
  bool has_analytic_d4() const { return static_cast<bool>(parts_->d4); }

  double singular_distance(const Vec3& gamma, double s) const;
  double clearance() const { return parts_->clearance; }
  bool in_domain(const Vec3& gamma, double s) const { return singular_distance(gamma, s) >= clearance(); }
  const std::string& label() const { return parts_->label; }
  bool valid() const { return static_cast<bool>(parts_); }

  /// Same value function with the analytic derivatives stripped.
  ScalarField finite_difference_only() const;

 private:
  void check_domain(const Vec3& gamma, double s) const;
  std::shared_ptr<const Parts> parts_;
};

/// A function on the full six-dimensional phase space.
class ScalarField6 {
 public:
  using Value = std::function<double(const State&)>;
  using Grad = std::function<Vec6(const State&)>;

  ScalarField6() = default;
  ScalarField6(Value value, Grad grad, std::string label);

  /// C(M, gamma) := C(gamma, M . gamma), with the chain-rule gradient.
  static ScalarField6 lift(const ScalarField& chart);
  /// Value only; gradient by central differences.
  static ScalarField6 numeric(Value value, std::string label);

  double operator()(const State& x) const { return value_(x); }
  Vec6 grad(const State& x) const;
  bool has_analytic_grad() const { return static_cast<bool>(grad_); }
  const std::string& label() const { return label_; }

  ScalarField6 finite_difference_only() const { return numeric(value_, label_); }

 private:
  Value value_;
  Grad grad_;
  std::string label_;
};

/// Central-difference 6-gradient of a phase-space function.
Vec6 fd_gradient6(const ScalarField6::Value& f, const State& x, double h = 0.0);

/// Kirillov-Kostant-Souriau Casimirs and the Hamiltonian of the generalized
/// Euler-Poisson system.
ScalarField6 casimir_c1();
ScalarField6 casimir_c2();
ScalarField6 assemble_hamiltonian(const InertiaTensor& inertia, const ScalarField& potential);

/// The gyroscopic torque generator mu(gamma, s); the torque itself is
/// -omega x mu.
class TorqueModel {
 public:
  struct Parts {
    ChartVector value;
    ChartVector d4;          // optional
    ChartVector curl_gamma;  // optional
    ChartScalar singular_distance;  // optional
    double clearance = kDefaultClearance;
    std::string label;
    bool verified = true;  // false for negative-control constructors
  };

  TorqueModel() = default;
  explicit TorqueModel(Parts parts);

  static TorqueModel zero();

  Vec3 operator()(const Vec3& gamma, double s) const;
  Vec3 at(const State& x) const { return (*this)(x.gamma, x.s()); }
  Vec3 d4(const Vec3& gamma, double s) const;
  Vec3 curl_gamma(const Vec3& gamma, double s) const;

  bool has_analytic_d4() const { return static_cast<bool>(parts_->d4); }
  bool has_analytic_curl() const { return static_cast<bool>(parts_->curl_gamma); }

  double singular_distance(const Vec3& gamma, double s) const;
  double clearance() const { return parts_->clearance; }
  bool in_domain(const Vec3& gamma, double s) const { return singular_distance(gamma, s) >= clearance(); }
  bool in_domain(const State& x) const { return in_domain(x.gamma, x.s()); }
  const std::string& label() const { return parts_->label; }
  bool verified() const { return parts_->verified; }

  TorqueModel finite_difference_only() const;

 private:
  void check_domain(const Vec3& gamma, double s) const;
  std::shared_ptr<const Parts> parts_;
};

/// Central-difference curl of mu(., s) in gamma, s held fixed.
Vec3 fd_curl_gamma(const TorqueModel& mu, const Vec3& gamma, double s, double h = 0.0);
/// Central-difference d mu / ds at fixed gamma.
Vec3 fd_d4(const TorqueModel& mu, const Vec3& gamma, double s, double h = 0.0);

/// A vector field l(gamma) with the derivatives needed for the
/// "-(div l) gamma + grad(l . gamma)" torque family.
struct VectorField {
  std::function<Vec3(const Vec3&)> value;
  std::function<Matrix3(const Vec3&)> jacobian;  // J(r, c) = d l_r / d gamma_c
  std::function<Vec3(const Vec3&)> grad_div;
  std::string label;

  /// l = L gamma + c + |gamma|^2 d
  static VectorField quadratic(const Matrix3& L, const Vec3& c, const Vec3& d);
};

}  // namespace gyropoisson
