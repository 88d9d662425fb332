#pragma once

// Built-in parameterized functions used to assemble user-tunable torques and
// Casimirs: polynomials in gamma up to degree 3, and one-variable families in
// s or gamma3 with closed-form antiderivatives where one exists.

#include <array>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "gyropoisson/algebra.hpp"

namespace gyropoisson {

/// Polynomial in (gamma1, gamma2, gamma3) of total degree at most 3.
class Poly3 {
 public:
  struct Term {
    double coef = 0.0;
    std::array<int, 3> exponents{};
  };

  Poly3() = default;
  explicit Poly3(std::vector<Term> terms);

  /// Keys are "1" or products of g1/g2/g3 tokens such as "g1g1g3".
  static Poly3 from_coefficients(const std::map<std::string, double>& coefficients);
  /// Canonical key for an exponent triple ("1", "g1g2", ...).
  static std::string monomial_key(const std::array<int, 3>& exponents);

  double operator()(const Vec3& g) const;
  Vec3 grad(const Vec3& g) const;
  std::map<std::string, double> coefficients() const;
  int degree() const;
  std::string describe() const;

 private:
  std::vector<Term> terms_;
};

/// A function of one real variable with its derivative and optional closed
/// forms for the antiderivatives of f and 1/f.
struct Univariate {
  std::function<double(double)> value;
  std::function<double(double)> derivative;
  std::function<double(double)> antiderivative;             // optional: F' = f
  std::function<double(double)> reciprocal_antiderivative;  // optional: F' = 1/f
  std::function<double(double)> singular_distance;          // optional: where f is undefined
  std::string label;

  double operator()(double x) const;

  static Univariate constant(double c);
  /// c0 + c1 x + c2 x^2 + c3 x^3
  static Univariate polynomial(const std::array<double, 4>& c);
  /// scale / (c + x^2), c > 0
  static Univariate rational(double c, double scale = 1.0);
  /// k x^p
  static Univariate power(double k, double p);
  /// k exp(r x)
  static Univariate exponential(double k, double r);
  /// c0 + c1 sin(w x)
  static Univariate sine(double c0, double c1, double w);
  /// c0 + c1 cos(w x)
  static Univariate cosine(double c0, double c1, double w);
};

/// Adaptive Simpson quadrature of f over [a, b] to absolute tolerance tol.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol = 1e-12);

struct Interval {
  double lo = -10.0;
  double hi = 10.0;
  bool contains(double x) const { return x >= lo && x <= hi; }
};

/// x -> integral of g from a reference point, closed form when available and
/// adaptive quadrature otherwise. The reference point is 0, or the interval
/// midpoint when 0 lies outside the working interval.
class Antiderivative {
 public:
  /// Antiderivative of f itself.
  static Antiderivative of(const Univariate& f, Interval working = {});
  /// Antiderivative of 1/f; f must not vanish.
  static Antiderivative of_reciprocal(const Univariate& f, Interval working = {});

  double operator()(double x) const;
  bool closed_form() const { return static_cast<bool>(closed_); }
  double reference_point() const { return reference_; }
  const Interval& working_interval() const { return working_; }

 private:
  Antiderivative() = default;
  std::function<double(double)> closed_;
  std::function<double(double)> integrand_;
  std::function<void(double)> guard_;
  double reference_ = 0.0;
  Interval working_;
};

}  // namespace gyropoisson
