#include "gyropoisson/functions.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>
#include <utility>

namespace gyropoisson {

namespace {

std::string num(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

double ipow(double x, int e) {
  double r = 1.0;
  for (int i = 0; i < e; ++i) r *= x;
  return r;
}

bool is_integer(double p) { return std::floor(p) == p; }

}  // namespace

// ---------------------------------------------------------------------------
// Poly3

Poly3::Poly3(std::vector<Term> terms) : terms_(std::move(terms)) {
  for (const auto& t : terms_) {
    for (int e : t.exponents) {
      if (e < 0) throw std::invalid_argument("negative exponent in polynomial term");
    }
    if (t.exponents[0] + t.exponents[1] + t.exponents[2] > 3) {
      throw std::invalid_argument("polynomial term " + monomial_key(t.exponents) + " exceeds degree 3");
    }
  }
}

std::string Poly3::monomial_key(const std::array<int, 3>& exponents) {
  std::string key;
  for (int axis = 0; axis < 3; ++axis) {
    for (int k = 0; k < exponents[static_cast<size_t>(axis)]; ++k) key += "g" + std::to_string(axis + 1);
  }
  return key.empty() ? "1" : key;
}

Poly3 Poly3::from_coefficients(const std::map<std::string, double>& coefficients) {
  std::vector<Term> terms;
  for (const auto& [key, coef] : coefficients) {
    Term t;
    t.coef = coef;
    if (key != "1") {
      if (key.empty() || key.size() % 2 != 0) throw std::invalid_argument("malformed monomial '" + key + "'");
      for (size_t i = 0; i < key.size(); i += 2) {
        if (key[i] != 'g' || key[i + 1] < '1' || key[i + 1] > '3') {
          throw std::invalid_argument("malformed monomial '" + key + "'");
        }
        ++t.exponents[static_cast<size_t>(key[i + 1] - '1')];
      }
    }
    terms.push_back(t);
  }
  return Poly3(std::move(terms));
}

double Poly3::operator()(const Vec3& g) const {
  double v = 0.0;
  for (const auto& t : terms_) {
    v += t.coef * ipow(g.x, t.exponents[0]) * ipow(g.y, t.exponents[1]) * ipow(g.z, t.exponents[2]);
  }
  return v;
}

Vec3 Poly3::grad(const Vec3& g) const {
  Vec3 out;
  for (const auto& t : terms_) {
    for (int axis = 0; axis < 3; ++axis) {
      const int e = t.exponents[static_cast<size_t>(axis)];
      if (e == 0) continue;
      double term = t.coef * e;
      for (int other = 0; other < 3; ++other) {
        const int eo = t.exponents[static_cast<size_t>(other)] - (other == axis ? 1 : 0);
        term *= ipow(g[other], eo);
      }
      out[axis] += term;
    }
  }
  return out;
}

std::map<std::string, double> Poly3::coefficients() const {
  std::map<std::string, double> out;
  for (const auto& t : terms_) out[monomial_key(t.exponents)] += t.coef;
  return out;
}

int Poly3::degree() const {
  int d = 0;
  for (const auto& t : terms_) d = std::max(d, t.exponents[0] + t.exponents[1] + t.exponents[2]);
  return d;
}

std::string Poly3::describe() const {
  std::ostringstream os;
  bool first = true;
  for (const auto& [key, coef] : coefficients()) {
    if (!first) os << " + ";
    os << num(coef) << "*" << key;
    first = false;
  }
  return first ? "0" : os.str();
}

// ---------------------------------------------------------------------------
// Univariate

double Univariate::operator()(double x) const { return value(x); }

Univariate Univariate::constant(double c) {
  Univariate f;
  f.value = [c](double) { return c; };
  f.derivative = [](double) { return 0.0; };
  f.antiderivative = [c](double x) { return c * x; };
  if (c != 0.0) f.reciprocal_antiderivative = [c](double x) { return x / c; };
  f.label = "const(" + num(c) + ")";
  return f;
}

Univariate Univariate::polynomial(const std::array<double, 4>& c) {
  Univariate f;
  f.value = [c](double x) { return c[0] + x * (c[1] + x * (c[2] + x * c[3])); };
  f.derivative = [c](double x) { return c[1] + x * (2.0 * c[2] + x * 3.0 * c[3]); };
  f.antiderivative = [c](double x) {
    return x * (c[0] + x * (c[1] / 2.0 + x * (c[2] / 3.0 + x * c[3] / 4.0)));
  };
  if (c[1] == 0.0 && c[3] == 0.0) {
    if (c[2] == 0.0 && c[0] != 0.0) {
      const double c0 = c[0];
      f.reciprocal_antiderivative = [c0](double x) { return x / c0; };
    } else if (c[0] * c[2] > 0.0) {
      const double c0 = c[0];
      const double c2 = c[2];
      const double root = std::sqrt(c0 * c2);
      const double sign = c0 > 0.0 ? 1.0 : -1.0;
      f.reciprocal_antiderivative = [c0, c2, root, sign](double x) {
        return sign * std::atan(x * std::sqrt(c2 / c0)) / root;
      };
    }
  }
  f.label = "poly(" + num(c[0]) + ", " + num(c[1]) + ", " + num(c[2]) + ", " + num(c[3]) + ")";
  return f;
}

Univariate Univariate::rational(double c, double scale) {
  if (!(c > 0.0)) throw std::invalid_argument("rational family requires c > 0");
  if (scale == 0.0) throw std::invalid_argument("rational family requires a nonzero scale");
  Univariate f;
  f.value = [c, scale](double x) { return scale / (c + x * x); };
  f.derivative = [c, scale](double x) {
    const double d = c + x * x;
    return -2.0 * scale * x / (d * d);
  };
  f.antiderivative = [c, scale](double x) { return scale / std::sqrt(c) * std::atan(x / std::sqrt(c)); };
  f.reciprocal_antiderivative = [c, scale](double x) { return (c * x + x * x * x / 3.0) / scale; };
  f.label = "rational(" + num(c) + ", " + num(scale) + ")";
  return f;
}

Univariate Univariate::power(double k, double p) {
  if (k == 0.0) throw std::invalid_argument("power family requires k != 0");
  Univariate f;
  f.value = [k, p](double x) { return k * std::pow(x, p); };
  f.derivative = [k, p](double x) { return p == 0.0 ? 0.0 : k * p * std::pow(x, p - 1.0); };
  if (p == -1.0) {
    f.antiderivative = [k](double x) { return k * std::log(std::fabs(x)); };
  } else {
    f.antiderivative = [k, p](double x) { return k * std::pow(x, p + 1.0) / (p + 1.0); };
  }
  if (p == 1.0) {
    f.reciprocal_antiderivative = [k](double x) { return std::log(std::fabs(x)) / k; };
  } else {
    f.reciprocal_antiderivative = [k, p](double x) { return std::pow(x, 1.0 - p) / ((1.0 - p) * k); };
  }
  if (!is_integer(p)) {
    f.singular_distance = [](double x) { return x; };
  } else if (p < 0.0) {
    f.singular_distance = [](double x) { return std::fabs(x); };
  }
  f.label = "power(" + num(k) + ", " + num(p) + ")";
  return f;
}

Univariate Univariate::exponential(double k, double r) {
  if (k == 0.0) throw std::invalid_argument("exponential family requires k != 0");
  Univariate f;
  f.value = [k, r](double x) { return k * std::exp(r * x); };
  f.derivative = [k, r](double x) { return k * r * std::exp(r * x); };
  if (r == 0.0) {
    f.antiderivative = [k](double x) { return k * x; };
    f.reciprocal_antiderivative = [k](double x) { return x / k; };
  } else {
    f.antiderivative = [k, r](double x) { return k / r * std::exp(r * x); };
    f.reciprocal_antiderivative = [k, r](double x) { return -std::exp(-r * x) / (r * k); };
  }
  f.label = "exp(" + num(k) + ", " + num(r) + ")";
  return f;
}

Univariate Univariate::sine(double c0, double c1, double w) {
  Univariate f;
  f.value = [c0, c1, w](double x) { return c0 + c1 * std::sin(w * x); };
  f.derivative = [c1, w](double x) { return c1 * w * std::cos(w * x); };
  if (w != 0.0) {
    f.antiderivative = [c0, c1, w](double x) { return c0 * x - c1 / w * std::cos(w * x); };
  }
  if (c1 == 0.0 && c0 != 0.0) f.reciprocal_antiderivative = [c0](double x) { return x / c0; };
  f.label = "sin(" + num(c0) + ", " + num(c1) + ", " + num(w) + ")";
  return f;
}

Univariate Univariate::cosine(double c0, double c1, double w) {
  Univariate f;
  f.value = [c0, c1, w](double x) { return c0 + c1 * std::cos(w * x); };
  f.derivative = [c1, w](double x) { return -c1 * w * std::sin(w * x); };
  if (w != 0.0) {
    f.antiderivative = [c0, c1, w](double x) { return c0 * x + c1 / w * std::sin(w * x); };
  }
  if (c1 == 0.0 && c0 != 0.0) f.reciprocal_antiderivative = [c0](double x) { return x / c0; };
  f.label = "cos(" + num(c0) + ", " + num(c1) + ", " + num(w) + ")";
  return f;
}

// ---------------------------------------------------------------------------
// Quadrature

namespace {

double simpson_recurse(const std::function<double(double)>& f, double a, double b, double fa, double fm, double fb,
                       double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (std::fabs(delta) <= 15.0 * tol || std::fabs(b - a) < 1e-14 * (1.0 + std::fabs(a))) {
    return left + right + delta / 15.0;
  }
  if (depth <= 0) {
    throw DomainError("adaptive quadrature failed to converge on [" + num(a) + ", " + num(b) +
                      "]; integrand likely singular");
  }
  return simpson_recurse(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         simpson_recurse(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol) {
  if (a == b) return 0.0;
  const double fa = f(a);
  const double fb = f(b);
  const double fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson_recurse(f, a, b, fa, fm, fb, whole, tol, 48);
}

Antiderivative Antiderivative::of(const Univariate& f, Interval working) {
  Antiderivative out;
  out.working_ = working;
  out.reference_ = working.contains(0.0) ? 0.0 : 0.5 * (working.lo + working.hi);
  out.closed_ = f.antiderivative;
  out.integrand_ = f.value;
  const auto sd = f.singular_distance;
  const std::string label = f.label;
  out.guard_ = [sd, label](double x) {
    if (sd && !(sd(x) > 0.0)) throw DomainError("integrand '" + label + "' undefined at " + num(x));
  };
  return out;
}

Antiderivative Antiderivative::of_reciprocal(const Univariate& f, Interval working) {
  Antiderivative out;
  out.working_ = working;
  out.reference_ = working.contains(0.0) ? 0.0 : 0.5 * (working.lo + working.hi);
  out.closed_ = f.reciprocal_antiderivative;
  const auto value = f.value;
  const std::string label = f.label;
  const double ref_value = value(out.reference_);
  const bool closed = static_cast<bool>(f.reciprocal_antiderivative);
  if (!closed && (ref_value == 0.0 || !std::isfinite(ref_value))) {
    throw DomainError("function '" + label + "' vanishes at the quadrature reference point " + num(out.reference_));
  }
  const double sign = ref_value > 0.0 ? 1.0 : -1.0;
  out.integrand_ = [value, label, sign, closed](double x) {
    const double v = value(x);
    // Quadrature needs a sign-definite integrand between the reference and x.
    if (v == 0.0 || (!closed && v * sign < 0.0) || !std::isfinite(v)) {
      throw DomainError("function '" + label + "' vanishes or changes sign at " + num(x));
    }
    return 1.0 / v;
  };
  out.guard_ = [value, label](double x) {
    const double v = value(x);
    if (v == 0.0 || !std::isfinite(v)) throw DomainError("function '" + label + "' vanishes at " + num(x));
  };
  return out;
}

double Antiderivative::operator()(double x) const {
  guard_(x);
  if (closed_) return closed_(x);
  return adaptive_simpson(integrand_, reference_, x, 1e-12);
}

}  // namespace gyropoisson
