#include <doctest.h>

#include "catalog_fixture.hpp"
#include "gyropoisson/dynamics.hpp"
#include "gyropoisson/poisson.hpp"
#include "gyropoisson/sampling.hpp"
#include "support.hpp"

using namespace gyropoisson;
using testing::Gen;

namespace {

TorqueModel constant_torque(const Vec3& mu0) { return make_gyrostatic(mu0).torque; }

/// mu = (gamma2, 0, 0): violates the Jacobi condition.
TorqueModel shear_torque() {
  Matrix3 A{};
  A(0, 1) = 1.0;
  return make_affine_raw(A, {}).torque;
}

double vec6_dist(const Vec6& a, const Vec6& b) {
  double m = 0.0;
  for (size_t i = 0; i < 6; ++i) m = std::fmax(m, std::fabs(a[i] - b[i]));
  return m;
}

double vec6_norm(const Vec6& a) {
  double m = 0.0;
  for (double v : a) m = std::fmax(m, std::fabs(v));
  return m;
}

ScalarField6 random_poly6(Gen& g) {
  std::array<double, 6> lin{};
  std::array<double, 6> quad{};
  for (auto& v : lin) v = g.uniform(-1, 1);
  for (auto& v : quad) v = g.uniform(-1, 1);
  return ScalarField6::numeric(
      [lin, quad](const State& x) {
        const Vec6 c = x.coords();
        double v = 0.0;
        for (size_t i = 0; i < 6; ++i) v += lin[i] * c[i] + quad[i] * c[i] * c[(i + 1) % 6];
        return v;
      },
      "random quadratic");
}

}  // namespace

TEST_CASE("build_pi entries read off the printed matrix") {
  const State x{{1, 2, 3}, {4, 5, 6}};
  const Matrix6Skew P0 = build_pi(PoissonStructure(), x);
  CHECK(P0(0, 1) == -3.0);
  CHECK(P0(0, 4) == -6.0);
  CHECK(P0(3, 4) == 0.0);

  const Matrix6Skew P1 = build_pi(PoissonStructure(constant_torque({0, 0, 5})), x);
  CHECK(P1(0, 1) == -8.0);
  for (int i = 0; i < 3; ++i) {
    for (int j = 3; j < 6; ++j) CHECK(P1(i, j) == P0(i, j));
  }
  for (int i = 3; i < 6; ++i) {
    for (int j = 3; j < 6; ++j) CHECK(P1(i, j) == 0.0);
  }
}

TEST_CASE("build_pi is skew for every catalog torque") {
  Gen g(5);
  for (const auto& sc : fixture::catalog_scenarios()) {
    const PoissonStructure P(sc.torque);
    for (int n = 0; n < 20; ++n) {
      const State x = g.generic_state();
      const Matrix6Skew m = P.matrix(x);
      for (int i = 0; i < 6; ++i) {
        CHECK(m(i, i) == 0.0);
        for (int j = 0; j < 6; ++j) CHECK(m(i, j) + m(j, i) == 0.0);
      }
    }
  }
}

TEST_CASE("bracket basics") {
  Gen g(21);
  const PoissonStructure kks;
  const ScalarField6 C2 = casimir_c2();
  for (int n = 0; n < 50; ++n) {
    const State x = g.state();
    const ScalarField6 F = random_poly6(g);
    const ScalarField6 G = random_poly6(g);
    CHECK(std::fabs(kks.bracket(F, F, x)) < 1e-12);
    CHECK(std::fabs(kks.bracket(C2, G, x)) < 1e-9);
    const double fg = kks.bracket(F, G, x);
    const double gf = kks.bracket(G, F, x);
    CHECK(std::fabs(fg + gf) <= 1e-12 * std::fmax(1.0, std::fabs(fg)));
  }
}

TEST_CASE("bracket Leibniz rule") {
  Gen g(22);
  for (const auto& sc : fixture::catalog_scenarios()) {
    if (sc.name != "yehia_l" && sc.name != "psi_phi" && sc.name != "yehia_b") continue;
    const PoissonStructure P(sc.torque);
    for (int n = 0; n < 20; ++n) {
      const State x = g.generic_state();
      const ScalarField6 F = random_poly6(g);
      const ScalarField6 G = random_poly6(g);
      const ScalarField6 H = random_poly6(g);
      const ScalarField6 FG = ScalarField6::numeric([F, G](const State& y) { return F(y) * G(y); }, "FG");
      const double lhs = P.bracket(FG, H, x);
      const double rhs = F(x) * P.bracket(G, H, x) + G(x) * P.bracket(F, H, x);
      CHECK(std::fabs(lhs - rhs) <= 1e-8 * std::fmax(1.0, std::fabs(lhs)));
    }
  }
}

TEST_CASE("free rigid body bracket is the directional derivative along the flow") {
  Gen g(23);
  const InertiaTensor I(1, 2, 3);
  const ScalarField U = zero_potential();
  const ScalarField6 H = assemble_hamiltonian(I, U);
  const PoissonStructure kks;
  for (int n = 0; n < 50; ++n) {
    const State x = g.state();
    const ScalarField6 G = random_poly6(g);
    const Vec6 f = rhs_general(x, I, TorqueModel::zero(), U);
    const Vec6 dG = G.grad(x);
    double directional = 0.0;
    for (size_t i = 0; i < 6; ++i) directional += dG[i] * f[i];
    // {G, H} = dG . Pi grad H = dG . xdot
    CHECK(std::fabs(kks.bracket(G, H, x) - directional) <= 1e-7 * std::fmax(1.0, std::fabs(directional)));
  }
}

TEST_CASE("hamiltonian vector field examples") {
  const InertiaTensor I = InertiaTensor::identity();
  const ScalarField6 H = assemble_hamiltonian(I, zero_potential());
  const Vec6 v = PoissonStructure().hamiltonian_vector_field(H, {{0, 0, 1}, {1, 0, 0}});
  CHECK(vec6_dist(v, {0, 0, 0, 0, -1, 0}) < 1e-14);

  Gen g(24);
  const ScalarField6 C1 = casimir_c1();
  for (const auto& sc : fixture::catalog_scenarios()) {
    const PoissonStructure P(sc.torque);
    const auto states = sample_states(20, 24, [&sc](const State& x) { return sc.singular_distance(x); });
    for (const auto& x : states) CHECK(vec6_norm(P.hamiltonian_vector_field(C1, x)) == 0.0);
  }
}

TEST_CASE("Pi grad H matches the mechanical right-hand side") {
  for (const auto& sc : fixture::catalog_scenarios()) {
    const PoissonStructure P(sc.torque);
    const auto states = sample_states(100, 31, [&sc](const State& x) { return sc.singular_distance(x); });
    double worst = 0.0;
    for (const auto& x : states) {
      const Vec6 a = P.hamiltonian_vector_field(sc.hamiltonian, x);
      const Vec6 b = rhs_general(x, sc.inertia, sc.torque, sc.potential);
      worst = std::fmax(worst, vec6_dist(a, b) / std::fmax(1.0, vec6_norm(b)));
    }
    INFO(sc.name);
    CHECK(worst < 1e-9);
  }
}

TEST_CASE("jacobi identity residual examples") {
  Gen g(41);
  const PoissonStructure kks;
  const PoissonStructure shear(shear_torque());
  const PoissonStructure sym(make_affine(SymMatrix3(1, 0.2, -0.1, 0.5, 0.3, -0.4), {}).torque);
  Matrix3 A = SymMatrix3(1, 0.2, -0.1, 0.5, 0.3, -0.4).full();
  A(0, 1) += 1.0 / std::sqrt(2.0);
  A(1, 0) -= 1.0 / std::sqrt(2.0);
  CHECK(A.antisymmetric_norm() == doctest::Approx(1.0));
  const PoissonStructure skew(make_affine_raw(A, {}).torque);
  int shear_fail = 0, skew_fail = 0;
  for (int n = 0; n < 50; ++n) {
    const State x = g.generic_state();
    CHECK(jacobi_identity_residual(kks, x).value < 1e-10);
    CHECK(jacobi_identity_residual(sym, x).value < 1e-8);
    shear_fail += jacobi_identity_residual(shear, x).value > 1e-3;
    skew_fail += jacobi_identity_residual(skew, x).value > 1e-3;
  }
  CHECK(shear_fail >= 48);
  CHECK(skew_fail >= 48);
}

TEST_CASE("jacobi identity residual reports the triple and the raw magnitude") {
  const State x{{0.3, -0.2, 1.1}, {0.5, 0.4, -0.7}};
  const Residual r = jacobi_identity_residual(PoissonStructure(shear_torque()), x);
  CHECK(r.where[0] >= 0);
  CHECK(r.where[0] < r.where[1]);
  CHECK(r.where[1] < r.where[2]);
  CHECK(r.absolute >= r.value);
}

TEST_CASE("jacobi condition residual examples") {
  Gen g(42);
  // (gamma2, 0, 0): gamma . curl = -gamma3
  const TorqueModel shear = shear_torque();
  for (int n = 0; n < 50; ++n) {
    const State x = g.generic_state();
    CHECK(jacobi_condition_residual(shear, x.gamma, x.s()) == doctest::Approx(-x.gamma.z).epsilon(1e-12));
  }

  const Scenario bm = make_borisov_mamaev();
  for (int n = 0; n < 50; ++n) {
    const State x = g.generic_state();
    CHECK(std::fabs(jacobi_condition_residual(bm.torque, x.gamma, x.s())) < 1e-10);
    CHECK(std::fabs(jacobi_condition_residual(bm.torque.finite_difference_only(), x.gamma, x.s())) < 1e-6);
  }
}

TEST_CASE("jacobi condition holds for random psi-phi pairs") {
  Gen g(43);
  for (int n = 0; n < 30; ++n) {
    std::map<std::string, double> cpsi, cphi;
    for (const char* k : {"1", "g1", "g2", "g3", "g1g2", "g2g3", "g3g3", "g1g1g3", "g2g2g2"}) {
      cpsi[k] = g.uniform(-1, 1);
      cphi[k] = g.uniform(-1, 1);
    }
    const Poly3 ppsi = Poly3::from_coefficients(cpsi);
    const Poly3 pphi = Poly3::from_coefficients(cphi);
    const ScalarField psi = ScalarField::of_gamma([ppsi](const Vec3& q) { return ppsi(q); },
                                                  [ppsi](const Vec3& q) { return ppsi.grad(q); }, "psi");
    const ScalarField phi = ScalarField::of_gamma([pphi](const Vec3& q) { return pphi(q); },
                                                  [pphi](const Vec3& q) { return pphi.grad(q); }, "phi");
    const TorqueModel mu = make_psi_phi(psi, phi).torque;
    const State x = g.state();
    CHECK(std::fabs(jacobi_condition_residual(mu, x.gamma, x.s())) < 1e-9);
  }
}

TEST_CASE("m-dependence residual examples") {
  Gen g(44);
  const FullTorque along = [](const State& x) { return x.gamma * std::sin(x.s()); };
  const FullTorque bad = [](const State& x) { return Vec3{x.M.x, 0.0, 0.0}; };
  int bad_fail = 0;
  for (int n = 0; n < 50; ++n) {
    const State x = g.generic_state();
    CHECK(m_dependence_residual(along, x).value < 1e-8);
    bad_fail += m_dependence_residual(bad, x).value > 1e-3;
  }
  CHECK(bad_fail >= 48);
  for (const auto& sc : fixture::catalog_scenarios()) {
    const auto states = sample_states(30, 45, [&sc](const State& x) { return sc.singular_distance(x); });
    const FullTorque full = lift(sc.torque);
    for (const auto& x : states) CHECK(m_dependence_residual(full, x).value < 1e-8);
  }
}

TEST_CASE("casimir condition residual examples") {
  Gen g(46);
  const ScalarField C1 = ScalarField::of_gamma([](const Vec3& q) { return 0.5 * dot(q, q); },
                                               [](const Vec3& q) { return q; }, "C1");
  const Vec3 mu0{0.5, -0.3, 0.8};
  const TorqueFamily gyro = make_gyrostatic(mu0);
  for (int n = 0; n < 50; ++n) {
    const State x = g.generic_state();
    CHECK(casimir_condition_residual(C1, shear_torque(), x.gamma, x.s()) == 0.0);
    CHECK(casimir_condition_residual(gyro.casimir, gyro.torque, x.gamma, x.s()) < 1e-12);
  }
}

TEST_CASE("casimir pde residual examples") {
  Gen g(47);
  const ScalarField6 C2 = casimir_c2();
  const PoissonStructure gyro(constant_torque({0.5, -0.3, 0.8}));
  int positive = 0;
  for (int n = 0; n < 50; ++n) {
    const State x = g.generic_state();
    CHECK(casimir_pde_residual(C2, PoissonStructure(), x).value < 1e-12);
    positive += casimir_pde_residual(C2, gyro, x).value > 1e-6;
  }
  CHECK(positive == 50);
}

TEST_CASE("chart reduction agrees with the six-dimensional Casimir check") {
  for (const auto& sc : fixture::catalog_scenarios()) {
    const PoissonStructure P(sc.torque);
    const auto states = sample_states(200, 48, [&sc](const State& x) { return sc.singular_distance(x); });
    for (const auto& cas : sc.casimirs) {
      const ScalarField6 C6 = ScalarField6::lift(cas.field);
      int disagree = 0;
      for (const auto& x : states) {
        const bool chart = casimir_condition_residual(cas.field, sc.torque, x.gamma, x.s()) < 1e-8;
        const bool full = casimir_pde_residual(C6, P, x).value < 1e-8;
        disagree += chart != full;
      }
      INFO(sc.name << " " << cas.name);
      CHECK(disagree == 0);
    }
  }
}

TEST_CASE("residuals raise domain errors on singular sets") {
  const Scenario bm = make_borisov_mamaev();
  CHECK_THROWS_AS(jacobi_condition_residual(bm.torque, {1, 0, 0}, 1.0), DomainError);
  CHECK_THROWS_AS(build_pi(PoissonStructure(bm.torque), {{1, 0, 0}, {1, 0, 0}}), DomainError);
  CHECK_THROWS_AS(jacobi_identity_residual(PoissonStructure(bm.torque), {{1, 0, 0}, {0.6, 0.8, 1e-4}}),
                  DomainError);
}
