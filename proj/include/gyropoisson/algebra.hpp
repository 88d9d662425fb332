#pragma once

// Small fixed-dimension algebra for the (M, gamma) phase space and the
// finite-difference operators used to audit analytic derivatives.

#include <array>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace gyropoisson {

/// Raised whenever a formula is evaluated on (or too close to) a set where it
/// is undefined, or a finite-difference stencil reaches such a set.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  constexpr Vec3() = default;
  constexpr Vec3(double xx, double yy, double zz) : x(xx), y(yy), z(zz) {}

  constexpr double operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }
  constexpr double& operator[](int i) { return i == 0 ? x : (i == 1 ? y : z); }

  constexpr Vec3 operator-() const { return {-x, -y, -z}; }
  constexpr Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  constexpr Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  constexpr Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
  constexpr Vec3 operator/(double s) const { return {x / s, y / s, z / s}; }
  constexpr Vec3& operator+=(const Vec3& o) {
    x += o.x;
    y += o.y;
    z += o.z;
    return *this;
  }
  constexpr Vec3& operator-=(const Vec3& o) {
    x -= o.x;
    y -= o.y;
    z -= o.z;
    return *this;
  }

  constexpr bool operator==(const Vec3&) const = default;

  bool finite() const { return std::isfinite(x) && std::isfinite(y) && std::isfinite(z); }
};

constexpr Vec3 operator*(double s, const Vec3& v) { return v * s; }

constexpr double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

/// Right-handed cross product.
constexpr Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

inline double norm(const Vec3& v) { return std::sqrt(dot(v, v)); }
inline double max_abs(const Vec3& v) {
  return std::fmax(std::fabs(v.x), std::fmax(std::fabs(v.y), std::fabs(v.z)));
}

std::string to_string(const Vec3& v);

/// Phase-space coordinates ordered (M1, M2, M3, gamma1, gamma2, gamma3).
using Vec6 = std::array<double, 6>;

/// A phase point: angular momentum and symmetry-axis direction, both in the
/// body frame.
struct State {
  Vec3 M;
  Vec3 gamma;

  /// Chart coordinate s = M . gamma.
  constexpr double s() const { return dot(M, gamma); }

  constexpr Vec6 coords() const { return {M.x, M.y, M.z, gamma.x, gamma.y, gamma.z}; }
  static constexpr State from_coords(const Vec6& c) {
    return {{c[0], c[1], c[2]}, {c[3], c[4], c[5]}};
  }

  bool finite() const { return M.finite() && gamma.finite(); }
  constexpr bool operator==(const State&) const = default;
};

std::string to_string(const State& x);

/// Axpy on phase coordinates: x + h * e_index.
State perturbed(const State& x, int index, double h);

/// Principal moments of inertia, strictly positive.
class InertiaTensor {
 public:
  InertiaTensor(double i1, double i2, double i3);

  static InertiaTensor identity() { return {1.0, 1.0, 1.0}; }
  /// diag(2 I3, 2 I3, I3).
  static InertiaTensor kovalevskaya(double i3) { return {2.0 * i3, 2.0 * i3, i3}; }

  double i1() const { return moments_[0]; }
  double i2() const { return moments_[1]; }
  double i3() const { return moments_[2]; }
  const std::array<double, 3>& moments() const { return moments_; }

  /// Componentwise inverse application: omega = I^-1 M.
  Vec3 omega(const Vec3& M) const { return {M.x / moments_[0], M.y / moments_[1], M.z / moments_[2]}; }
  Vec3 apply(const Vec3& omega) const {
    return {omega.x * moments_[0], omega.y * moments_[1], omega.z * moments_[2]};
  }

  /// Violated triangle inequalities, one message each. Never affects results.
  std::vector<std::string> triangle_warnings() const;

 private:
  std::array<double, 3> moments_;
};

inline Vec3 omega(const InertiaTensor& I, const Vec3& M) { return I.omega(M); }

/// General 3x3 matrix, row-major. Used for raw (possibly non-symmetric)
/// affine-torque matrices in negative controls and for vector-field Jacobians.
struct Matrix3 {
  std::array<double, 9> a{};

  constexpr double operator()(int r, int c) const { return a[static_cast<size_t>(3 * r + c)]; }
  constexpr double& operator()(int r, int c) { return a[static_cast<size_t>(3 * r + c)]; }

  Vec3 apply(const Vec3& v) const;
  Vec3 apply_transpose(const Vec3& v) const;
  Matrix3 transpose() const;
  double trace() const { return a[0] + a[4] + a[8]; }
  /// Frobenius norm of (A - A^T)/2.
  double antisymmetric_norm() const;
  /// curl of the linear field gamma -> A gamma.
  Vec3 linear_curl() const;
};

/// Symmetric 3x3 matrix stored as its six independent entries
/// (a11, a12, a13, a22, a23, a33), so symmetry cannot be violated.
class SymMatrix3 {
 public:
  SymMatrix3() = default;
  SymMatrix3(double a11, double a12, double a13, double a22, double a23, double a33)
      : e_{a11, a12, a13, a22, a23, a33} {}
  explicit SymMatrix3(const std::array<double, 6>& e) : e_(e) {}

  static SymMatrix3 diagonal(double d1, double d2, double d3) { return {d1, 0, 0, d2, 0, d3}; }

  double operator()(int r, int c) const;
  Vec3 apply(const Vec3& v) const;
  /// v . A v
  double quadratic_form(const Vec3& v) const { return dot(v, apply(v)); }
  Matrix3 full() const;
  const std::array<double, 6>& entries() const { return e_; }

 private:
  std::array<double, 6> e_{};
};

// ---------------------------------------------------------------------------
// Finite differences
// ---------------------------------------------------------------------------

/// max(1e-6, 1e-6 |p|), the default central-difference step.
double default_step(const Vec3& p);
double default_step(double p);

using ScalarFn3 = std::function<double(const Vec3&)>;

/// Central-difference gradient, O(h^2). A non-positive h selects
/// default_step(p). A DomainError thrown at a stencil point is rethrown with
/// that point named.
Vec3 fd_gradient(const ScalarFn3& f, const Vec3& p, double h = 0.0);

/// Central-difference derivative of a function of one variable.
double fd_derivative(const std::function<double(double)>& f, double x, double h = 0.0);

using VectorFn3 = std::function<Vec3(const Vec3&)>;

/// Central-difference curl of a vector field of gamma.
Vec3 fd_curl(const VectorFn3& field, const Vec3& p, double h = 0.0);

/// Central-difference Jacobian, J(r, c) = d field_r / d p_c.
Matrix3 fd_jacobian(const VectorFn3& field, const Vec3& p, double h = 0.0);

}  // namespace gyropoisson
