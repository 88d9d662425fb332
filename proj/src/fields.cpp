#include "gyropoisson/fields.hpp"

#include <utility>

namespace gyropoisson {

// ---------------------------------------------------------------------------
// ScalarField

ScalarField::ScalarField(Parts parts) : parts_(std::make_shared<const Parts>(std::move(parts))) {
  if (!parts_->value) throw std::invalid_argument("ScalarField requires a value function");
}

ScalarField ScalarField::of_gamma(std::function<double(const Vec3&)> value, std::function<Vec3(const Vec3&)> grad,
                                  std::string label) {
  Parts p;
  p.value = [value](const Vec3& g, double) { return value(g); };
  if (grad) p.grad_gamma = [grad](const Vec3& g, double) { return grad(g); };
  p.d4 = [](const Vec3&, double) { return 0.0; };
  p.label = std::move(label);
  return ScalarField(std::move(p));
}

ScalarField ScalarField::constant(double c) {
  return of_gamma([c](const Vec3&) { return c; }, [](const Vec3&) { return Vec3{}; }, "constant");
}

double ScalarField::singular_distance(const Vec3& gamma, double s) const {
  return parts_->singular_distance ? parts_->singular_distance(gamma, s) : kNoSingularity;
}

void ScalarField::check_domain(const Vec3& gamma, double s) const {
  if (!parts_->singular_distance) return;
  if (parts_->singular_distance(gamma, s) < parts_->clearance) {
    throw DomainError("field '" + parts_->label + "' evaluated within singular clearance at gamma=" +
                      to_string(gamma) + " s=" + std::to_string(s));
  }
}

double ScalarField::operator()(const Vec3& gamma, double s) const {
  check_domain(gamma, s);
  return parts_->value(gamma, s);
}

Vec3 ScalarField::grad_gamma(const Vec3& gamma, double s) const {
  check_domain(gamma, s);
  if (parts_->grad_gamma) return parts_->grad_gamma(gamma, s);
  return fd_gradient([this, s](const Vec3& g) { return (*this)(g, s); }, gamma);
}

double ScalarField::d4(const Vec3& gamma, double s) const {
  check_domain(gamma, s);
  if (parts_->d4) return parts_->d4(gamma, s);
  return fd_derivative([this, &gamma](double t) { return (*this)(gamma, t); }, s);
}

ScalarField ScalarField::finite_difference_only() const {
  Parts p = *parts_;
  p.grad_gamma = nullptr;
  p.d4 = nullptr;
  return ScalarField(std::move(p));
}

// ---------------------------------------------------------------------------
// ScalarField6

ScalarField6::ScalarField6(Value value, Grad grad, std::string label)
    : value_(std::move(value)), grad_(std::move(grad)), label_(std::move(label)) {}

ScalarField6 ScalarField6::lift(const ScalarField& chart) {
  return ScalarField6(
      [chart](const State& x) { return chart.at(x); },
      [chart](const State& x) {
        const double s = x.s();
        const double c4 = chart.d4(x.gamma, s);
        const Vec3 gM = x.gamma * c4;
        const Vec3 gG = chart.grad_gamma(x.gamma, s) + x.M * c4;
        return Vec6{gM.x, gM.y, gM.z, gG.x, gG.y, gG.z};
      },
      chart.label());
}

ScalarField6 ScalarField6::numeric(Value value, std::string label) { return {std::move(value), nullptr, std::move(label)}; }

Vec6 ScalarField6::grad(const State& x) const {
  if (grad_) return grad_(x);
  return fd_gradient6(value_, x);
}

Vec6 fd_gradient6(const ScalarField6::Value& f, const State& x, double h) {
  if (!(h > 0.0)) {
    const double n = std::sqrt(dot(x.M, x.M) + dot(x.gamma, x.gamma));
    h = std::fmax(1e-6, 1e-6 * n);
  }
  Vec6 g{};
  for (int i = 0; i < 6; ++i) {
    const State plus = perturbed(x, i, h);
    const State minus = perturbed(x, i, -h);
    double fp = 0.0;
    double fm = 0.0;
    try {
      fp = f(plus);
    } catch (const DomainError& e) {
      throw DomainError(std::string(e.what()) + " (finite-difference stencil point " + to_string(plus) + ")");
    }
    try {
      fm = f(minus);
    } catch (const DomainError& e) {
      throw DomainError(std::string(e.what()) + " (finite-difference stencil point " + to_string(minus) + ")");
    }
    g[static_cast<size_t>(i)] = (fp - fm) / (2.0 * h);
  }
  return g;
}

ScalarField6 casimir_c1() {
  return ScalarField6([](const State& x) { return 0.5 * dot(x.gamma, x.gamma); },
                      [](const State& x) { return Vec6{0, 0, 0, x.gamma.x, x.gamma.y, x.gamma.z}; }, "C1");
}

ScalarField6 casimir_c2() {
  return ScalarField6([](const State& x) { return dot(x.M, x.gamma); },
                      [](const State& x) {
                        return Vec6{x.gamma.x, x.gamma.y, x.gamma.z, x.M.x, x.M.y, x.M.z};
                      },
                      "C2");
}

ScalarField6 assemble_hamiltonian(const InertiaTensor& inertia, const ScalarField& potential) {
  return ScalarField6(
      [inertia, potential](const State& x) { return 0.5 * dot(x.M, inertia.omega(x.M)) + potential(x.gamma); },
      [inertia, potential](const State& x) {
        const Vec3 w = inertia.omega(x.M);
        const Vec3 gU = potential.grad_gamma(x.gamma);
        return Vec6{w.x, w.y, w.z, gU.x, gU.y, gU.z};
      },
      "H");
}

// ---------------------------------------------------------------------------
// TorqueModel

TorqueModel::TorqueModel(Parts parts) : parts_(std::make_shared<const Parts>(std::move(parts))) {
  if (!parts_->value) throw std::invalid_argument("TorqueModel requires a value function");
}

TorqueModel TorqueModel::zero() {
  Parts p;
  p.value = [](const Vec3&, double) { return Vec3{}; };
  p.d4 = [](const Vec3&, double) { return Vec3{}; };
  p.curl_gamma = [](const Vec3&, double) { return Vec3{}; };
  p.label = "zero";
  return TorqueModel(std::move(p));
}

double TorqueModel::singular_distance(const Vec3& gamma, double s) const {
  return parts_->singular_distance ? parts_->singular_distance(gamma, s) : kNoSingularity;
}

void TorqueModel::check_domain(const Vec3& gamma, double s) const {
  if (!parts_->singular_distance) return;
  if (parts_->singular_distance(gamma, s) < parts_->clearance) {
    throw DomainError("torque '" + parts_->label + "' evaluated within singular clearance at gamma=" +
                      to_string(gamma) + " s=" + std::to_string(s));
  }
}

Vec3 TorqueModel::operator()(const Vec3& gamma, double s) const {
  check_domain(gamma, s);
  return parts_->value(gamma, s);
}

Vec3 TorqueModel::d4(const Vec3& gamma, double s) const {
  check_domain(gamma, s);
  if (parts_->d4) return parts_->d4(gamma, s);
  return fd_d4(*this, gamma, s);
}

Vec3 TorqueModel::curl_gamma(const Vec3& gamma, double s) const {
  check_domain(gamma, s);
  if (parts_->curl_gamma) return parts_->curl_gamma(gamma, s);
  return fd_curl_gamma(*this, gamma, s);
}

TorqueModel TorqueModel::finite_difference_only() const {
  Parts p = *parts_;
  p.d4 = nullptr;
  p.curl_gamma = nullptr;
  return TorqueModel(std::move(p));
}

Vec3 fd_curl_gamma(const TorqueModel& mu, const Vec3& gamma, double s, double h) {
  return fd_curl([&mu, s](const Vec3& g) { return mu(g, s); }, gamma, h);
}

Vec3 fd_d4(const TorqueModel& mu, const Vec3& gamma, double s, double h) {
  if (!(h > 0.0)) h = default_step(s);
  try {
    return (mu(gamma, s + h) - mu(gamma, s - h)) / (2.0 * h);
  } catch (const DomainError& e) {
    throw DomainError(std::string(e.what()) + " (finite-difference stencil in s around " + std::to_string(s) + ")");
  }
}

// ---------------------------------------------------------------------------
// VectorField

VectorField VectorField::quadratic(const Matrix3& L, const Vec3& c, const Vec3& d) {
  VectorField f;
  f.value = [L, c, d](const Vec3& g) { return L.apply(g) + c + d * dot(g, g); };
  f.jacobian = [L, d](const Vec3& g) {
    Matrix3 J = L;
    for (int r = 0; r < 3; ++r)
      for (int col = 0; col < 3; ++col) J(r, col) += 2.0 * d[r] * g[col];
    return J;
  };
  f.grad_div = [d](const Vec3&) { return d * 2.0; };
  f.label = "quadratic";
  return f;
}

}  // namespace gyropoisson
