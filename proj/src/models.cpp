#include "gyropoisson/models.hpp"

#include <algorithm>
#include <charconv>
#include <stdexcept>

#include "gyropoisson/poisson.hpp"
#include "gyropoisson/sampling.hpp"

namespace gyropoisson {

namespace {

std::string num(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

ChartScalar min_distance(std::vector<ChartScalar> parts) {
  parts.erase(std::remove_if(parts.begin(), parts.end(), [](const ChartScalar& f) { return !f; }), parts.end());
  if (parts.empty()) return nullptr;
  return [parts](const Vec3& g, double s) {
    double d = kNoSingularity;
    for (const auto& f : parts) d = std::fmin(d, f(g, s));
    return d;
  };
}

ChartScalar distance_of(const ScalarField& f) {
  return [f](const Vec3& g, double s) { return f.singular_distance(g, s); };
}

ChartScalar distance_in_s(const Univariate& f) {
  if (!f.singular_distance) return nullptr;
  auto sd = f.singular_distance;
  return [sd](const Vec3&, double s) { return sd(s); };
}

ChartScalar distance_in_gamma3(const Univariate& f) {
  if (!f.singular_distance) return nullptr;
  auto sd = f.singular_distance;
  return [sd](const Vec3& g, double) { return sd(g.z); };
}

/// C = s + phi(gamma)
ScalarField shifted_casimir(const ScalarField& phi, std::string label) {
  ScalarField::Parts p;
  p.value = [phi](const Vec3& g, double s) { return s + phi(g); };
  p.grad_gamma = [phi](const Vec3& g, double) { return phi.grad_gamma(g); };
  p.d4 = [](const Vec3&, double) { return 1.0; };
  p.singular_distance = distance_of(phi);
  p.clearance = phi.clearance();
  p.label = std::move(label);
  return ScalarField(std::move(p));
}

}  // namespace

TorqueFamily make_gyrostatic(const Vec3& mu0) {
  TorqueModel::Parts t;
  t.value = [mu0](const Vec3&, double) { return mu0; };
  t.d4 = [](const Vec3&, double) { return Vec3{}; };
  t.curl_gamma = [](const Vec3&, double) { return Vec3{}; };
  t.label = "gyrostatic mu0=" + to_string(mu0);

  ScalarField phi = ScalarField::of_gamma([mu0](const Vec3& g) { return dot(mu0, g); },
                                          [mu0](const Vec3&) { return mu0; }, "mu0.gamma");
  TorqueFamily out;
  out.torque = TorqueModel(std::move(t));
  out.casimir = shifted_casimir(phi, "(M+mu0).gamma");
  out.decomposition = PsiPhi{ScalarField::constant(0.0), phi};
  return out;
}

TorqueFamily make_affine(const SymMatrix3& A, const Vec3& mu0) {
  TorqueModel::Parts t;
  t.value = [A, mu0](const Vec3& g, double) { return A.apply(g) + mu0; };
  t.d4 = [](const Vec3&, double) { return Vec3{}; };
  // The curl of a linear field is the axial vector of its antisymmetric part.
  t.curl_gamma = [](const Vec3&, double) { return Vec3{}; };
  t.label = "affine";

  ScalarField phi = ScalarField::of_gamma([A, mu0](const Vec3& g) { return 0.5 * A.quadratic_form(g) + dot(mu0, g); },
                                          [A, mu0](const Vec3& g) { return A.apply(g) + mu0; },
                                          "gamma.A.gamma/2 + mu0.gamma");
  TorqueFamily out;
  out.torque = TorqueModel(std::move(t));
  out.casimir = shifted_casimir(phi, "gamma.A.gamma/2 + (M+mu0).gamma");
  out.decomposition = PsiPhi{ScalarField::constant(0.0), phi};
  return out;
}

TorqueFamily make_affine_raw(const Matrix3& A, const Vec3& mu0) {
  TorqueModel::Parts t;
  t.value = [A, mu0](const Vec3& g, double) { return A.apply(g) + mu0; };
  t.d4 = [](const Vec3&, double) { return Vec3{}; };
  const Vec3 curl = A.linear_curl();
  t.curl_gamma = [curl](const Vec3&, double) { return curl; };
  t.label = "affine-raw (unverified)";
  t.verified = false;

  const Matrix3 At = A.transpose();
  SymMatrix3 sym(0.5 * (A(0, 0) + At(0, 0)), 0.5 * (A(0, 1) + At(0, 1)), 0.5 * (A(0, 2) + At(0, 2)),
                 0.5 * (A(1, 1) + At(1, 1)), 0.5 * (A(1, 2) + At(1, 2)), 0.5 * (A(2, 2) + At(2, 2)));
  ScalarField phi = ScalarField::of_gamma(
      [sym, mu0](const Vec3& g) { return 0.5 * sym.quadratic_form(g) + dot(mu0, g); },
      [sym, mu0](const Vec3& g) { return sym.apply(g) + mu0; }, "gamma.sym(A).gamma/2 + mu0.gamma");
  TorqueFamily out;
  out.torque = TorqueModel(std::move(t));
  out.casimir = shifted_casimir(phi, "gamma.sym(A).gamma/2 + (M+mu0).gamma (unverified)");
  return out;
}

TorqueFamily make_psi_phi(const ScalarField& psi, const ScalarField& phi) {
  TorqueModel::Parts t;
  t.value = [psi, phi](const Vec3& g, double) { return g * psi(g) + phi.grad_gamma(g); };
  t.d4 = [](const Vec3&, double) { return Vec3{}; };
  // curl(psi gamma + grad phi) = grad psi x gamma
  t.curl_gamma = [psi](const Vec3& g, double) { return cross(psi.grad_gamma(g), g); };
  t.singular_distance = min_distance({distance_of(psi), distance_of(phi)});
  t.clearance = std::max(psi.clearance(), phi.clearance());
  t.label = "psi-phi psi=" + psi.label() + " phi=" + phi.label();

  TorqueFamily out;
  out.torque = TorqueModel(std::move(t));
  out.casimir = shifted_casimir(phi, "M.gamma + " + phi.label());
  out.decomposition = PsiPhi{psi, phi};
  return out;
}

TorqueFamily make_yehia_l(const VectorField& l) {
  if (!l.value || !l.jacobian || !l.grad_div) {
    throw std::invalid_argument("the l-form torque needs l, its Jacobian and grad(div l)");
  }
  ScalarField psi = ScalarField::of_gamma([l](const Vec3& g) { return -l.jacobian(g).trace(); },
                                          [l](const Vec3& g) { return -l.grad_div(g); }, "-div l");
  ScalarField phi = ScalarField::of_gamma([l](const Vec3& g) { return dot(l.value(g), g); },
                                          [l](const Vec3& g) { return l.jacobian(g).apply_transpose(g) + l.value(g); },
                                          "l.gamma");
  TorqueFamily out = make_psi_phi(psi, phi);
  out.casimir = shifted_casimir(phi, "(M+l).gamma");
  return out;
}

TorqueFamily make_separable(const Univariate& a, const ScalarField& b, const ScalarField& phi, Interval s_working,
                            std::function<double(double)> inverse_a_antiderivative) {
  TorqueModel::Parts t;
  t.value = [a, b, phi](const Vec3& g, double s) { return phi.grad_gamma(g) * a(s) + g * b(g, s); };
  t.d4 = [a, b, phi](const Vec3& g, double s) {
    return phi.grad_gamma(g) * a.derivative(s) + g * b.d4(g, s);
  };
  // a(s) curl(grad phi) vanishes; only grad_gamma b x gamma remains.
  t.curl_gamma = [b](const Vec3& g, double s) { return cross(b.grad_gamma(g, s), g); };
  t.singular_distance = min_distance({distance_of(b), distance_of(phi), distance_in_s(a)});
  t.clearance = std::max(b.clearance(), phi.clearance());
  t.label = "separable a=" + a.label + " b=" + b.label() + " phi=" + phi.label();

  TorqueFamily out;
  std::function<double(double)> F;
  if (inverse_a_antiderivative) {
    F = std::move(inverse_a_antiderivative);
  } else {
    Antiderivative anti = Antiderivative::of_reciprocal(a, s_working);
    if (!anti.closed_form()) out.reference_point = anti.reference_point();
    F = [anti](double s) { return anti(s); };
  }

  ScalarField::Parts c;
  c.value = [F, phi](const Vec3& g, double s) { return F(s) + phi(g); };
  c.grad_gamma = [phi](const Vec3& g, double) { return phi.grad_gamma(g); };
  c.d4 = [a](const Vec3&, double s) {
    const double v = a(s);
    if (v == 0.0) throw DomainError("a(s) vanishes at s=" + num(s));
    return 1.0 / v;
  };
  c.singular_distance = min_distance({distance_of(phi), distance_in_s(a)});
  c.clearance = phi.clearance();
  c.label = "int 1/a ds + phi";

  out.torque = TorqueModel(std::move(t));
  out.casimir = ScalarField(std::move(c));
  return out;
}

TorqueFamily make_axis_torque(const Univariate& beta, const Univariate& delta, Interval s_working,
                              Interval gamma3_working) {
  TorqueModel::Parts t;
  t.value = [beta, delta](const Vec3& g, double s) { return Vec3{0.0, 0.0, beta(g.z) * delta(s)}; };
  t.d4 = [beta, delta](const Vec3& g, double s) { return Vec3{0.0, 0.0, beta(g.z) * delta.derivative(s)}; };
  // mu3 does not depend on gamma1, gamma2.
  t.curl_gamma = [](const Vec3&, double) { return Vec3{}; };
  t.singular_distance = min_distance({distance_in_gamma3(beta), distance_in_s(delta)});
  t.label = "axis beta=" + beta.label + " delta=" + delta.label;

  TorqueFamily out;
  Antiderivative inv_delta = Antiderivative::of_reciprocal(delta, s_working);
  Antiderivative int_beta = Antiderivative::of(beta, gamma3_working);
  if (!inv_delta.closed_form()) out.reference_point = inv_delta.reference_point();

  ScalarField::Parts c;
  c.value = [inv_delta, int_beta](const Vec3& g, double s) { return inv_delta(s) + int_beta(g.z); };
  c.grad_gamma = [beta](const Vec3& g, double) { return Vec3{0.0, 0.0, beta(g.z)}; };
  c.d4 = [delta](const Vec3&, double s) {
    const double v = delta(s);
    if (v == 0.0) throw DomainError("delta(s) vanishes at s=" + num(s));
    return 1.0 / v;
  };
  c.singular_distance = t.singular_distance;
  c.label = "int 1/delta ds + int beta dgamma3";

  out.torque = TorqueModel(std::move(t));
  out.casimir = ScalarField(std::move(c));
  return out;
}

double axis_jacobi_residual(const TorqueModel& mu, const Vec3& gamma, double s) {
  // For mu = (0, 0, mu3): curl = (d2 mu3, -d1 mu3, 0).
  const Vec3 c = mu.curl_gamma(gamma, s);
  return gamma.x * c.x + gamma.y * c.y;
}

double axis_casimir_residual(const ScalarField& C, const TorqueModel& mu, const Vec3& gamma, double s) {
  const Vec3 g = C.grad_gamma(gamma, s);
  const double rho2 = gamma.x * gamma.x + gamma.y * gamma.y;
  // dC/dgamma_i = gamma_i dC/dr for i = 1, 2.
  const double dCdr = rho2 > 0.0 ? (gamma.x * g.x + gamma.y * g.y) / rho2 : 0.0;
  return mu(gamma, s).z * C.d4(gamma, s) - g.z + gamma.z * dCdr;
}

ScalarField make_classical_potential(double m, double g, const Vec3& xi) {
  const Vec3 grad = xi * (m * g);
  return ScalarField::of_gamma([grad](const Vec3& gamma) { return dot(grad, gamma); },
                               [grad](const Vec3&) { return grad; }, "m g xi.gamma");
}

ScalarField zero_potential() {
  return ScalarField::of_gamma([](const Vec3&) { return 0.0; }, [](const Vec3&) { return Vec3{}; }, "0");
}

const Casimir& Scenario::casimir(const std::string& cname) const {
  for (const auto& c : casimirs) {
    if (c.name == cname) return c;
  }
  throw std::out_of_range("scenario '" + name + "' has no Casimir named '" + cname + "'");
}

double Scenario::singular_distance(const State& x) const {
  const double s = x.s();
  double d = torque.singular_distance(x.gamma, s);
  if (potential.valid()) d = std::fmin(d, potential.singular_distance(x.gamma, s));
  for (const auto& c : casimirs) d = std::fmin(d, c.field.singular_distance(x.gamma, s));
  return d;
}

double Scenario::clearance() const {
  double c = torque.clearance();
  if (potential.valid()) c = std::fmax(c, potential.clearance());
  for (const auto& cas : casimirs) c = std::fmax(c, cas.field.clearance());
  return c;
}

Scenario make_scenario(std::string name, const InertiaTensor& inertia, const TorqueFamily& family,
                       const ScalarField& potential, std::string casimir_name, std::string provenance) {
  Scenario sc;
  sc.name = std::move(name);
  sc.inertia = inertia;
  sc.torque = family.torque;
  sc.potential = potential;
  sc.casimirs.push_back({std::move(casimir_name), family.casimir, family.torque.verified(), std::move(provenance)});
  sc.hamiltonian = assemble_hamiltonian(inertia, potential);
  sc.decomposition = family.decomposition;
  sc.reference_point = family.reference_point;
  if (family.reference_point) sc.parameters["quadrature_reference"] = num(*family.reference_point);
  return sc;
}

void assert_casimirs(const Scenario& scenario, int samples, std::uint64_t seed, double tol) {
  const auto states =
      sample_states(samples, seed, [&scenario](const State& x) { return scenario.singular_distance(x); });
  for (const auto& c : scenario.casimirs) {
    if (!c.expected_conserved) continue;
    for (const auto& x : states) {
      const double r = casimir_condition_residual(c.field, scenario.torque, x.gamma, x.s());
      if (!(r < tol)) {
        throw std::runtime_error("Casimir '" + c.name + "' of scenario '" + scenario.name +
                                 "' fails the Casimir condition (residual " + num(r) + ") at " + to_string(x));
      }
    }
  }
}

}  // namespace gyropoisson
