// Torque families on the Kovalevskaya configuration diag(2 I3, 2 I3, I3).
// The component formulas are written out as printed in the literature; the
// psi-phi decompositions are kept separately so that the tests can check one
// against the other.

#include <charconv>
#include <cmath>
#include <stdexcept>

#include "gyropoisson/models.hpp"

namespace gyropoisson {

namespace {

std::string num(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

// rho = sqrt(gamma1^2 + gamma2^2), the distance to the gamma3 axis.
double rho_of(const Vec3& g) { return std::hypot(g.x, g.y); }

// 2 gamma1^2 + 2 gamma2^2 + gamma3^2
double quad_q(const Vec3& g) { return 2.0 * g.x * g.x + 2.0 * g.y * g.y + g.z * g.z; }
Vec3 grad_q(const Vec3& g) { return {4.0 * g.x, 4.0 * g.y, 2.0 * g.z}; }

// Polynomial part shared by cases a and b (case b has no k term).
Vec3 cubic_mu(const Vec3& g, double C, double k, double n, double n1, double n2) {
  return {C * (-n * g.x - n1 * g.x * g.x + 2.0 * n1 * g.y * g.y + n1 * g.z * g.z - 3.0 * n2 * g.x * g.y),
          C * (-n * g.y + 2.0 * n2 * g.x * g.x - n2 * g.y * g.y + n2 * g.z * g.z - 3.0 * n1 * g.x * g.y),
          C * (k - 3.0 * n * g.z - 5.0 * n1 * g.x * g.z - 5.0 * n2 * g.y * g.z)};
}

Vec3 cubic_curl(const Vec3& g, double C, double n1, double n2) {
  return {-7.0 * C * n2 * g.z, 7.0 * C * n1 * g.z, 7.0 * C * (n2 * g.x - n1 * g.y)};
}

std::map<std::string, std::string> params_a(const YehiaAParams& p) {
  return {{"a1", num(p.a1)}, {"a2", num(p.a2)}, {"k", num(p.k)},   {"n", num(p.n)},
          {"n1", num(p.n1)}, {"n2", num(p.n2)}, {"I3", num(p.I3)}};
}

std::map<std::string, std::string> params_b(const YehiaBParams& p) {
  return {{"a1", num(p.a1)}, {"a2", num(p.a2)}, {"eps", num(p.eps)}, {"N", num(p.N)},
          {"n", num(p.n)},   {"n1", num(p.n1)}, {"n2", num(p.n2)},   {"I3", num(p.I3)}};
}

}  // namespace

std::string to_string(YehiaBVariant v) {
  switch (v) {
    case YehiaBVariant::original:
      return "original";
    case YehiaBVariant::corrected_casimir:
      return "corrected_casimir";
    case YehiaBVariant::corrected_torque:
      return "corrected_torque";
  }
  return "original";
}

YehiaBVariant parse_yehia_b_variant(const std::string& s) {
  if (s == "original") return YehiaBVariant::original;
  if (s == "corrected_casimir") return YehiaBVariant::corrected_casimir;
  if (s == "corrected_torque") return YehiaBVariant::corrected_torque;
  throw std::invalid_argument("unknown yehia_b variant '" + s + "' (original | corrected_casimir | corrected_torque)");
}

// ---------------------------------------------------------------------------
// Case a

Scenario make_yehia_case_a(const YehiaAParams& p) {
  if (!(p.I3 > 0.0)) throw std::invalid_argument("I3 must be positive");
  const double C = p.I3;
  const double k = p.k, n = p.n, n1 = p.n1, n2 = p.n2, a1 = p.a1, a2 = p.a2;

  TorqueModel::Parts t;
  t.value = [=](const Vec3& g, double) { return cubic_mu(g, C, k, n, n1, n2); };
  t.d4 = [](const Vec3&, double) { return Vec3{}; };
  t.curl_gamma = [=](const Vec3& g, double) { return cubic_curl(g, C, n1, n2); };
  t.label = "yehia_a";

  auto L = [=](const Vec3& g) { return n + n1 * g.x + n2 * g.y; };
  ScalarField phi = ScalarField::of_gamma([=](const Vec3& g) { return C * (k * g.z + L(g) * quad_q(g)); },
                                          [=](const Vec3& g) {
                                            const double l = L(g);
                                            const double q = quad_q(g);
                                            return Vec3{C * (n1 * q + 4.0 * g.x * l), C * (n2 * q + 4.0 * g.y * l),
                                                        C * (k + 2.0 * g.z * l)};
                                          },
                                          "phi_a");
  ScalarField psi = ScalarField::of_gamma([=](const Vec3& g) { return -C * (5.0 * n + 7.0 * n1 * g.x + 7.0 * n2 * g.y); },
                                          [=](const Vec3&) { return Vec3{-7.0 * C * n1, -7.0 * C * n2, 0.0}; },
                                          "psi_a");
  ScalarField U = ScalarField::of_gamma(
      [=](const Vec3& g) {
        const double l = L(g);
        return C * (a1 * g.x + a2 * g.y) - C * k * g.z * l - 0.5 * C * l * l * quad_q(g);
      },
      [=](const Vec3& g) {
        const double l = L(g);
        const double q = quad_q(g);
        const Vec3 dq = grad_q(g);
        return Vec3{C * a1, C * a2, 0.0} - Vec3{g.z * n1, g.z * n2, l} * (C * k) - Vec3{n1, n2, 0.0} * (C * l * q) -
               dq * (0.5 * C * l * l);
      },
      "U_a");

  ScalarField::Parts c;
  c.value = [phi](const Vec3& g, double s) { return s + phi(g); };
  c.grad_gamma = [phi](const Vec3& g, double) { return phi.grad_gamma(g); };
  c.d4 = [](const Vec3&, double) { return 1.0; };
  c.label = "I2";

  Scenario sc;
  sc.name = "yehia_a";
  sc.parameters = params_a(p);
  sc.inertia = InertiaTensor::kovalevskaya(C);
  sc.torque = TorqueModel(std::move(t));
  sc.potential = U;
  sc.casimirs.push_back({"I2", ScalarField(std::move(c)), true, "cyclic integral s + phi_a"});
  sc.hamiltonian = assemble_hamiltonian(sc.inertia, U);
  sc.decomposition = PsiPhi{psi, phi};
  return sc;
}

// ---------------------------------------------------------------------------
// Case b

YehiaBFormulas yehia_case_b_formulas(const YehiaBParams& p) {
  if (!(p.I3 > 0.0)) throw std::invalid_argument("I3 must be positive");
  const double C = p.I3;
  const double N = p.N, n = p.n, n1 = p.n1, n2 = p.n2, a1 = p.a1, a2 = p.a2, eps = p.eps;
  const ChartScalar axis_distance = [](const Vec3& g, double) { return rho_of(g); };

  auto base_mu = [=](const Vec3& g) {
    Vec3 m = cubic_mu(g, C, 0.0, n, n1, n2);
    const double r = rho_of(g);
    const double r3 = r * r * r;
    m.x += C * N * g.x / r3;
    m.y += C * N * g.y / r3;
    return m;
  };

  TorqueModel::Parts orig;
  orig.value = [=](const Vec3& g, double) {
    Vec3 m = base_mu(g);
    m.z -= C * N * g.z * g.z / rho_of(g);
    return m;
  };
  orig.d4 = [](const Vec3&, double) { return Vec3{}; };
  orig.curl_gamma = [=](const Vec3& g, double) {
    const double r = rho_of(g);
    const double r3 = r * r * r;
    const double z2 = g.z * g.z;
    return cubic_curl(g, C, n1, n2) + Vec3{z2 * g.y / r3, -z2 * g.x / r3, 0.0} * (C * N);
  };
  orig.singular_distance = axis_distance;
  orig.label = "yehia_b original";

  TorqueModel::Parts corr;
  corr.value = [=](const Vec3& g, double) {
    Vec3 m = base_mu(g);
    const double r = rho_of(g);
    m.z += C * N * g.z * (g.z * g.z + 1.0) / (r * r * r);
    return m;
  };
  corr.d4 = [](const Vec3&, double) { return Vec3{}; };
  corr.curl_gamma = [=](const Vec3& g, double) {
    const double r = rho_of(g);
    const double r5 = r * r * r * r * r;
    const double f = 3.0 * g.z * (g.z * g.z + 1.0) / r5;
    return cubic_curl(g, C, n1, n2) + Vec3{-g.y * f, g.x * f, 0.0} * (C * N);
  };
  corr.singular_distance = axis_distance;
  corr.label = "yehia_b corrected torque";

  // L = n + n1 gamma1 + n2 gamma2 (+ N / rho)
  auto Lb = [=](const Vec3& g) { return n + n1 * g.x + n2 * g.y; };
  auto LN = [=](const Vec3& g) { return Lb(g) + N / rho_of(g); };
  auto grad_LN = [=](const Vec3& g) {
    const double r = rho_of(g);
    const double r3 = r * r * r;
    return Vec3{n1 - N * g.x / r3, n2 - N * g.y / r3, 0.0};
  };

  ScalarField::Parts phi;
  phi.value = [=](const Vec3& g, double) { return C * LN(g) * quad_q(g); };
  phi.grad_gamma = [=](const Vec3& g, double) { return (grad_LN(g) * quad_q(g) + grad_q(g) * LN(g)) * C; };
  phi.d4 = [](const Vec3&, double) { return 0.0; };
  phi.singular_distance = axis_distance;
  phi.label = "phi_b";
  ScalarField phi_field(phi);

  ScalarField::Parts I2 = phi;
  I2.value = [phi_field](const Vec3& g, double s) { return s + phi_field(g, s); };
  I2.grad_gamma = [phi_field](const Vec3& g, double s) { return phi_field.grad_gamma(g, s); };
  I2.d4 = [](const Vec3&, double) { return 1.0; };
  I2.label = "I2";

  ScalarField::Parts cc;
  cc.value = [=](const Vec3& g, double s) {
    const double r = rho_of(g);
    const double theta = std::atan(g.z / r);
    const double ring = (g.z * r * r - 2.0) / r - dot(g, g) * theta;
    return s + C * Lb(g) * quad_q(g) + 0.5 * C * N * ring;
  };
  cc.grad_gamma = [=](const Vec3& g, double) {
    const double r = rho_of(g);
    const double r3 = r * r * r;
    const double theta = std::atan(g.z / r);
    const Vec3 poly = (Vec3{n1, n2, 0.0} * quad_q(g) + grad_q(g) * Lb(g)) * C;
    const Vec3 ring{g.z * g.x / r + g.x / r3 - g.x * theta, g.z * g.y / r + g.y / r3 - g.y * theta, -g.z * theta};
    return poly + ring * (C * N);
  };
  cc.d4 = [](const Vec3&, double) { return 1.0; };
  cc.singular_distance = axis_distance;
  cc.label = "C_corrected";

  ScalarField::Parts psi;
  psi.value = [=](const Vec3& g, double) {
    const double r = rho_of(g);
    return -C * (5.0 * n + 7.0 * n1 * g.x + 7.0 * n2 * g.y + N * (2.0 * r * r - g.z * g.z - 1.0) / (r * r * r));
  };
  psi.grad_gamma = [=](const Vec3& g, double) {
    const double r = rho_of(g);
    const double r3 = r * r * r;
    const double r5 = r3 * r * r;
    const double w = g.z * g.z + 1.0;
    const Vec3 dg{-2.0 * g.x / r3 + 3.0 * w * g.x / r5, -2.0 * g.y / r3 + 3.0 * w * g.y / r5, -2.0 * g.z / r3};
    return (Vec3{7.0 * n1, 7.0 * n2, 0.0} + dg * N) * (-C);
  };
  psi.d4 = [](const Vec3&, double) { return 0.0; };
  psi.singular_distance = axis_distance;
  psi.label = "psi_b";

  ScalarField::Parts U;
  U.value = [=](const Vec3& g, double) {
    const double l = LN(g);
    return C * (a1 * g.x + a2 * g.y) + eps / rho_of(g) - 0.5 * C * l * l * quad_q(g);
  };
  U.grad_gamma = [=](const Vec3& g, double) {
    const double r = rho_of(g);
    const double r3 = r * r * r;
    const double l = LN(g);
    return Vec3{C * a1, C * a2, 0.0} + Vec3{-g.x / r3, -g.y / r3, 0.0} * eps - grad_LN(g) * (C * l * quad_q(g)) -
           grad_q(g) * (0.5 * C * l * l);
  };
  U.d4 = [](const Vec3&, double) { return 0.0; };
  U.singular_distance = axis_distance;
  U.label = "U_b";

  return {TorqueModel(std::move(orig)), TorqueModel(std::move(corr)), ScalarField(std::move(I2)),
          ScalarField(std::move(cc)),   ScalarField(std::move(psi)),  phi_field,
          ScalarField(std::move(U))};
}

Scenario make_yehia_case_b(const YehiaBParams& p, YehiaBVariant variant) {
  YehiaBFormulas f = yehia_case_b_formulas(p);
  Scenario sc;
  sc.name = "yehia_b";
  sc.parameters = params_b(p);
  sc.parameters["variant"] = to_string(variant);
  sc.inertia = InertiaTensor::kovalevskaya(p.I3);
  sc.potential = f.potential;
  sc.hamiltonian = assemble_hamiltonian(sc.inertia, f.potential);
  switch (variant) {
    case YehiaBVariant::original:
      sc.torque = f.mu_original;
      sc.casimirs.push_back({"I2_uncorrected", f.I2, false, "cyclic integral as published; not conserved for N != 0"});
      sc.casimirs.push_back({"C_corrected", f.corrected_casimir, true, "Casimir recovered for the published torque"});
      break;
    case YehiaBVariant::corrected_casimir:
      sc.torque = f.mu_original;
      sc.casimirs.push_back({"C_corrected", f.corrected_casimir, true, "Casimir recovered for the published torque"});
      break;
    case YehiaBVariant::corrected_torque:
      sc.torque = f.mu_corrected;
      sc.casimirs.push_back({"I2", f.I2, true, "published integral, conserved under the corrected mu3'"});
      sc.decomposition = PsiPhi{f.psi, f.phi};
      break;
  }
  return sc;
}

// ---------------------------------------------------------------------------
// Borisov-Mamaev

Scenario make_borisov_mamaev(double alpha, double I3) {
  if (!(I3 > 0.0)) throw std::invalid_argument("I3 must be positive");
  const ChartScalar plane_distance = [](const Vec3& g, double) { return std::fabs(g.z); };

  TorqueModel::Parts t;
  t.value = [](const Vec3& g, double s) { return Vec3{0.0, 0.0, s / g.z}; };
  t.d4 = [](const Vec3& g, double) { return Vec3{0.0, 0.0, 1.0 / g.z}; };
  t.curl_gamma = [](const Vec3&, double) { return Vec3{}; };
  t.singular_distance = plane_distance;
  t.label = "borisov_mamaev";

  ScalarField::Parts c;
  c.value = [](const Vec3& g, double s) { return g.z * s; };
  c.grad_gamma = [](const Vec3&, double s) { return Vec3{0.0, 0.0, s}; };
  c.d4 = [](const Vec3& g, double) { return g.z; };
  c.label = "gamma3 s";

  ScalarField U = ScalarField::of_gamma([alpha](const Vec3& g) { return alpha * (g.x * g.x - g.y * g.y); },
                                        [alpha](const Vec3& g) { return Vec3{2.0 * alpha * g.x, -2.0 * alpha * g.y, 0.0}; },
                                        "alpha (g1^2 - g2^2)");

  Scenario sc;
  sc.name = "borisov_mamaev";
  sc.parameters = {{"alpha", num(alpha)}, {"I3", num(I3)}};
  sc.inertia = InertiaTensor::kovalevskaya(I3);
  sc.torque = TorqueModel(std::move(t));
  sc.potential = U;
  sc.casimirs.push_back({"C_gamma3_s", ScalarField(std::move(c)), true, "gamma3 (M.gamma) for mu3 = s/gamma3"});
  sc.hamiltonian = assemble_hamiltonian(sc.inertia, U);
  return sc;
}

}  // namespace gyropoisson
