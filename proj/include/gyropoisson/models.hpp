#pragma once

// Catalog of gyroscopic torques, potentials and their Casimirs.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gyropoisson/fields.hpp"
#include "gyropoisson/functions.hpp"

namespace gyropoisson {

/// mu = psi gamma + grad phi.
struct PsiPhi {
  ScalarField psi;
  ScalarField phi;
};

struct Casimir {
  std::string name;
  ScalarField field;
  /// False for quantities shipped as known counterexamples.
  bool expected_conserved = true;
  std::string provenance;
};

/// A torque generator together with the Casimir recovered for it.
struct TorqueFamily {
  TorqueModel torque;
  ScalarField casimir;
  std::optional<PsiPhi> decomposition;
  /// Quadrature reference point of the Casimir, when quadrature is used.
  std::optional<double> reference_point;
};

TorqueFamily make_gyrostatic(const Vec3& mu0);
TorqueFamily make_affine(const SymMatrix3& A, const Vec3& mu0);
/// Negative control: an arbitrary matrix, flagged unverified. The shipped
/// Casimir uses the symmetric part of A and is only a Casimir when A is
/// symmetric.
TorqueFamily make_affine_raw(const Matrix3& A, const Vec3& mu0);
TorqueFamily make_psi_phi(const ScalarField& psi, const ScalarField& phi);
TorqueFamily make_yehia_l(const VectorField& l);

/// mu = a(s) grad phi + b(gamma, s) gamma, Casimir int 1/a ds + phi.
/// inverse_a_antiderivative overrides the built-in closed form / quadrature.
TorqueFamily make_separable(const Univariate& a, const ScalarField& b, const ScalarField& phi,
                            Interval s_working = {},
                            std::function<double(double)> inverse_a_antiderivative = nullptr);

/// mu = (0, 0, beta(gamma3) delta(s)), Casimir int 1/delta ds + int beta dgamma3.
TorqueFamily make_axis_torque(const Univariate& beta, const Univariate& delta, Interval s_working = {},
                              Interval gamma3_working = {});

/// gamma1 d mu3/d gamma2 - gamma2 d mu3/d gamma1 for a torque along e3.
double axis_jacobi_residual(const TorqueModel& mu, const Vec3& gamma, double s);
/// mu3 dC/ds - dC/dgamma3 + gamma3 dC/dr with r = (gamma1^2 + gamma2^2)/2.
double axis_casimir_residual(const ScalarField& C, const TorqueModel& mu, const Vec3& gamma, double s);

/// U = m g xi . gamma
ScalarField make_classical_potential(double m, double g, const Vec3& xi);
ScalarField zero_potential();

struct Scenario {
  std::string name;
  std::map<std::string, std::string> parameters;
  InertiaTensor inertia = InertiaTensor::identity();
  TorqueModel torque = TorqueModel::zero();
  ScalarField potential;
  std::vector<Casimir> casimirs;
  ScalarField6 hamiltonian;
  std::optional<PsiPhi> decomposition;
  std::optional<double> reference_point;

  const Casimir& casimir(const std::string& name) const;
  /// Smallest distance of x to any declared singular set (torque, potential,
  /// Casimirs).
  double singular_distance(const State& x) const;
  /// The clearance radius the dynamics and FD stencils must respect.
  double clearance() const;
};

Scenario make_scenario(std::string name, const InertiaTensor& inertia, const TorqueFamily& family,
                       const ScalarField& potential, std::string casimir_name, std::string provenance);

struct YehiaAParams {
  double a1 = 1.0;
  double a2 = 0.5;
  double k = 1.0;
  double n = 0.3;
  double n1 = 0.2;
  double n2 = 0.1;
  double I3 = 1.0;
};

struct YehiaBParams {
  double a1 = 1.0;
  double a2 = 0.5;
  double eps = 0.1;
  double N = 1.0;
  double n = 0.3;
  double n1 = 0.2;
  double n2 = 0.1;
  double I3 = 1.0;
};

enum class YehiaBVariant { original, corrected_casimir, corrected_torque };
std::string to_string(YehiaBVariant v);
YehiaBVariant parse_yehia_b_variant(const std::string& s);

/// Kovalevskaya configuration with the cubic gyroscopic torque. The ψ-φ
/// decomposition is recorded alongside the printed component formulas.
Scenario make_yehia_case_a(const YehiaAParams& p = {});

/// Case with the N/sqrt(gamma1^2 + gamma2^2) terms. `original` carries both
/// the uncorrected I2 (known non-conserved) and the corrected Casimir;
/// `corrected_torque` replaces mu3 by mu3' for which I2 is a Casimir.
Scenario make_yehia_case_b(const YehiaBParams& p = {}, YehiaBVariant variant = YehiaBVariant::original);

/// The raw pieces of the case-b formulas, for cross-checks.
struct YehiaBFormulas {
  TorqueModel mu_original;
  TorqueModel mu_corrected;
  ScalarField I2;
  ScalarField corrected_casimir;
  ScalarField psi;
  ScalarField phi;
  ScalarField potential;
};
YehiaBFormulas yehia_case_b_formulas(const YehiaBParams& p);

/// mu = (0, 0, s / gamma3), U = alpha (gamma1^2 - gamma2^2), Casimir gamma3 s.
Scenario make_borisov_mamaev(double alpha = 1.0, double I3 = 1.0);

/// Throws std::runtime_error if any expected-conserved Casimir of the
/// scenario fails the Casimir condition at the sampled states.
void assert_casimirs(const Scenario& scenario, int samples = 100, std::uint64_t seed = 1, double tol = 1e-8);

}  // namespace gyropoisson
