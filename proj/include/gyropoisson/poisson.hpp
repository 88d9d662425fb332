#pragma once

// The modified Lie-Poisson structure Pi_mu on R^6 = e(3)* and its
// verification residuals.

#include <array>
#include <functional>
#include <string>

#include "gyropoisson/fields.hpp"

namespace gyropoisson {

/// 6x6 skew matrix stored as its 15 strict upper-triangle entries.
class Matrix6Skew {
 public:
  double operator()(int i, int j) const;
  void set(int i, int j, double v);  // requires i < j
  Vec6 apply(const Vec6& v) const;
  /// Entries of the upper triangle, row-major, i < j.
  const std::array<double, 15>& upper() const { return upper_; }

 private:
  static int index(int i, int j);
  std::array<double, 15> upper_{};
};

/// Pi_mu for a torque generator mu. mu == 0 gives the KKS structure.
class PoissonStructure {
 public:
  PoissonStructure() : mu_(TorqueModel::zero()) {}
  explicit PoissonStructure(TorqueModel mu) : mu_(std::move(mu)) {}

  const TorqueModel& torque() const { return mu_; }

  Matrix6Skew matrix(const State& x) const;
  /// grad F . Pi grad G
  double bracket(const ScalarField6& F, const ScalarField6& G, const State& x) const;
  /// Pi grad H, ordered (Mdot, gammadot).
  Vec6 hamiltonian_vector_field(const ScalarField6& H, const State& x) const;

 private:
  TorqueModel mu_;
};

inline Matrix6Skew build_pi(const PoissonStructure& P, const State& x) { return P.matrix(x); }

/// A max-norm residual together with where it was attained.
struct Residual {
  double value = 0.0;
  /// Index triple (Jacobi identity), component, or -1 when not meaningful.
  std::array<int, 3> where{-1, -1, -1};
  /// Unnormalized magnitude, for residuals that are reported relative to a
  /// scale (the Jacobi identity).
  double absolute = 0.0;
};

/// Cyclic sum Pi^{li} d_l Pi^{jk} + Pi^{lj} d_l Pi^{ki} + Pi^{lk} d_l Pi^{ij}
/// over i < j < k, entry derivatives by central differences of Pi. Each cyclic
/// sum is divided by 1 + (sum of the absolute values of its 18 terms), so the
/// residual is a relative cancellation measure that stays meaningful near
/// singular sets; Residual::absolute holds the raw maximum.
Residual jacobi_identity_residual(const PoissonStructure& P, const State& x, double h = 0.0);

/// gamma . curl_gamma mu + mu . (gamma x d4 mu), analytic derivatives when the
/// model provides them.
double jacobi_condition_residual(const TorqueModel& mu, const Vec3& gamma, double s);

using FullTorque = std::function<Vec3(const State&)>;

inline constexpr double kMStencilStep = 1e-3;

/// max_k |gamma x grad_M mu_k|, five-point differences in M (step h, default
/// kMStencilStep). Zero certifies that mu factors through (gamma, M . gamma)
/// locally.
Residual m_dependence_residual(const FullTorque& mu_full, const State& x, double h = 0.0);

/// Lifts a chart model to a function of the full state through s = M . gamma.
FullTorque lift(const TorqueModel& mu);

/// |gamma x ((d4 C) mu - grad_gamma C)|
double casimir_condition_residual(const ScalarField& C, const TorqueModel& mu, const Vec3& gamma, double s);

/// max(|gamma x grad_M C|, |(M + mu) x grad_M C + gamma x grad_gamma C|)
Residual casimir_pde_residual(const ScalarField6& C, const PoissonStructure& P, const State& x);

}  // namespace gyropoisson
