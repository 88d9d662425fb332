#include "gyropoisson/algebra.hpp"

#include <charconv>
#include <sstream>

namespace gyropoisson {

namespace {

std::string shortest(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string stencil_message(const DomainError& e, const Vec3& point) {
  return std::string(e.what()) + " (finite-difference stencil point " + to_string(point) + ")";
}

}  // namespace

std::string to_string(const Vec3& v) {
  return "(" + shortest(v.x) + ", " + shortest(v.y) + ", " + shortest(v.z) + ")";
}

std::string to_string(const State& x) {
  return "M=" + to_string(x.M) + " gamma=" + to_string(x.gamma);
}

State perturbed(const State& x, int index, double h) {
  Vec6 c = x.coords();
  c[static_cast<size_t>(index)] += h;
  return State::from_coords(c);
}

InertiaTensor::InertiaTensor(double i1, double i2, double i3) : moments_{i1, i2, i3} {
  for (double m : moments_) {
    if (!(m > 0.0) || !std::isfinite(m)) {
      throw std::invalid_argument("principal moments of inertia must be finite and positive, got " +
                                  to_string(Vec3{i1, i2, i3}));
    }
  }
}

std::vector<std::string> InertiaTensor::triangle_warnings() const {
  std::vector<std::string> out;
  static constexpr const char* names[3] = {"I1", "I2", "I3"};
  for (int k = 0; k < 3; ++k) {
    const double lhs = moments_[static_cast<size_t>(k)];
    const double rhs = moments_[static_cast<size_t>((k + 1) % 3)] + moments_[static_cast<size_t>((k + 2) % 3)];
    if (lhs > rhs) {
      out.push_back(std::string("triangle inequality violated: ") + names[k] + " = " + shortest(lhs) +
                    " > " + shortest(rhs));
    }
  }
  return out;
}

Vec3 Matrix3::apply(const Vec3& v) const {
  return {a[0] * v.x + a[1] * v.y + a[2] * v.z, a[3] * v.x + a[4] * v.y + a[5] * v.z,
          a[6] * v.x + a[7] * v.y + a[8] * v.z};
}

Vec3 Matrix3::apply_transpose(const Vec3& v) const { return transpose().apply(v); }

Matrix3 Matrix3::transpose() const {
  Matrix3 t;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) t(r, c) = (*this)(c, r);
  return t;
}

double Matrix3::antisymmetric_norm() const {
  double sum = 0.0;
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) {
      const double k = 0.5 * ((*this)(r, c) - (*this)(c, r));
      sum += k * k;
    }
  }
  return std::sqrt(sum);
}

Vec3 Matrix3::linear_curl() const {
  const Matrix3& A = *this;
  return {A(2, 1) - A(1, 2), A(0, 2) - A(2, 0), A(1, 0) - A(0, 1)};
}

double SymMatrix3::operator()(int r, int c) const {
  if (r > c) std::swap(r, c);
  // Row offsets into the packed upper triangle.
  static constexpr int offset[3] = {0, 3, 5};
  return e_[static_cast<size_t>(offset[r] + (c - r))];
}

Vec3 SymMatrix3::apply(const Vec3& v) const {
  const auto& e = e_;
  return {e[0] * v.x + e[1] * v.y + e[2] * v.z, e[1] * v.x + e[3] * v.y + e[4] * v.z,
          e[2] * v.x + e[4] * v.y + e[5] * v.z};
}

Matrix3 SymMatrix3::full() const {
  Matrix3 m;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) m(r, c) = (*this)(r, c);
  return m;
}

double default_step(const Vec3& p) { return std::fmax(1e-6, 1e-6 * norm(p)); }
double default_step(double p) { return std::fmax(1e-6, 1e-6 * std::fabs(p)); }

Vec3 fd_gradient(const ScalarFn3& f, const Vec3& p, double h) {
  if (!(h > 0.0)) h = default_step(p);
  Vec3 g;
  for (int i = 0; i < 3; ++i) {
    Vec3 plus = p;
    Vec3 minus = p;
    plus[i] += h;
    minus[i] -= h;
    double fp = 0.0;
    double fm = 0.0;
    try {
      fp = f(plus);
    } catch (const DomainError& e) {
      throw DomainError(stencil_message(e, plus));
    }
    try {
      fm = f(minus);
    } catch (const DomainError& e) {
      throw DomainError(stencil_message(e, minus));
    }
    g[i] = (fp - fm) / (2.0 * h);
  }
  return g;
}

double fd_derivative(const std::function<double(double)>& f, double x, double h) {
  if (!(h > 0.0)) h = default_step(x);
  double fp = 0.0;
  double fm = 0.0;
  try {
    fp = f(x + h);
    fm = f(x - h);
  } catch (const DomainError& e) {
    throw DomainError(std::string(e.what()) + " (finite-difference stencil around " + shortest(x) + ")");
  }
  return (fp - fm) / (2.0 * h);
}

Matrix3 fd_jacobian(const VectorFn3& field, const Vec3& p, double h) {
  if (!(h > 0.0)) h = default_step(p);
  Matrix3 J;
  for (int c = 0; c < 3; ++c) {
    Vec3 plus = p;
    Vec3 minus = p;
    plus[c] += h;
    minus[c] -= h;
    Vec3 fp;
    Vec3 fm;
    try {
      fp = field(plus);
    } catch (const DomainError& e) {
      throw DomainError(stencil_message(e, plus));
    }
    try {
      fm = field(minus);
    } catch (const DomainError& e) {
      throw DomainError(stencil_message(e, minus));
    }
    const Vec3 d = (fp - fm) / (2.0 * h);
    for (int r = 0; r < 3; ++r) J(r, c) = d[r];
  }
  return J;
}

Vec3 fd_curl(const VectorFn3& field, const Vec3& p, double h) {
  return fd_jacobian(field, p, h).linear_curl();
}

}  // namespace gyropoisson
