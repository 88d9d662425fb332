#include "gyropoisson/poisson.hpp"

#include <cmath>

namespace gyropoisson {

int Matrix6Skew::index(int i, int j) { return 5 * i - i * (i - 1) / 2 + (j - i - 1); }

double Matrix6Skew::operator()(int i, int j) const {
  if (i == j) return 0.0;
  if (i < j) return upper_[static_cast<size_t>(index(i, j))];
  return -upper_[static_cast<size_t>(index(j, i))];
}

void Matrix6Skew::set(int i, int j, double v) {
  if (!(i < j)) throw std::invalid_argument("Matrix6Skew::set requires i < j");
  upper_[static_cast<size_t>(index(i, j))] = v;
}

Vec6 Matrix6Skew::apply(const Vec6& v) const {
  Vec6 out{};
  for (int i = 0; i < 6; ++i) {
    double acc = 0.0;
    for (int j = 0; j < 6; ++j) acc += (*this)(i, j) * v[static_cast<size_t>(j)];
    out[static_cast<size_t>(i)] = acc;
  }
  return out;
}

Matrix6Skew PoissonStructure::matrix(const State& x) const {
  const Vec3 w = x.M + mu_.at(x);
  const Vec3& g = x.gamma;
  Matrix6Skew P;
  // MM block: hat(M + mu)
  P.set(0, 1, -w.z);
  P.set(0, 2, w.y);
  P.set(1, 2, -w.x);
  // M-gamma block: hat(gamma)
  P.set(0, 4, -g.z);
  P.set(0, 5, g.y);
  P.set(1, 3, g.z);
  P.set(1, 5, -g.x);
  P.set(2, 3, -g.y);
  P.set(2, 4, g.x);
  return P;
}

namespace {
double dot6(const Vec6& a, const Vec6& b) {
  double acc = 0.0;
  for (size_t i = 0; i < 6; ++i) acc += a[i] * b[i];
  return acc;
}
}  // namespace

double PoissonStructure::bracket(const ScalarField6& F, const ScalarField6& G, const State& x) const {
  return dot6(F.grad(x), matrix(x).apply(G.grad(x)));
}

Vec6 PoissonStructure::hamiltonian_vector_field(const ScalarField6& H, const State& x) const {
  return matrix(x).apply(H.grad(x));
}

Residual jacobi_identity_residual(const PoissonStructure& P, const State& x, double h) {
  if (!(h > 0.0)) {
    const double n = std::sqrt(dot(x.M, x.M) + dot(x.gamma, x.gamma));
    h = std::fmax(1e-6, 1e-6 * n);
  }
  const Matrix6Skew Pi = P.matrix(x);
  std::array<Matrix6Skew, 6> dPi;
  for (int l = 0; l < 6; ++l) {
    Matrix6Skew plus;
    Matrix6Skew minus;
    const State xp = perturbed(x, l, h);
    const State xm = perturbed(x, l, -h);
    try {
      plus = P.matrix(xp);
    } catch (const DomainError& e) {
      throw DomainError(std::string(e.what()) + " (Jacobi stencil point " + to_string(xp) + ")");
    }
    try {
      minus = P.matrix(xm);
    } catch (const DomainError& e) {
      throw DomainError(std::string(e.what()) + " (Jacobi stencil point " + to_string(xm) + ")");
    }
    Matrix6Skew d;
    for (int i = 0; i < 6; ++i)
      for (int j = i + 1; j < 6; ++j) d.set(i, j, (plus(i, j) - minus(i, j)) / (2.0 * h));
    dPi[static_cast<size_t>(l)] = d;
  }

  Residual out;
  for (int i = 0; i < 6; ++i) {
    for (int j = i + 1; j < 6; ++j) {
      for (int k = j + 1; k < 6; ++k) {
        double sum = 0.0;
        double scale = 0.0;
        for (int l = 0; l < 6; ++l) {
          const Matrix6Skew& d = dPi[static_cast<size_t>(l)];
          const double t1 = Pi(l, i) * d(j, k);
          const double t2 = Pi(l, j) * d(k, i);
          const double t3 = Pi(l, k) * d(i, j);
          sum += t1 + t2 + t3;
          scale += std::fabs(t1) + std::fabs(t2) + std::fabs(t3);
        }
        const double rel = std::fabs(sum) / (1.0 + scale);
        out.absolute = std::fmax(out.absolute, std::fabs(sum));
        if (rel > out.value || out.where[0] < 0) {
          out.value = rel;
          out.where = {i, j, k};
        }
      }
    }
  }
  return out;
}

double jacobi_condition_residual(const TorqueModel& mu, const Vec3& gamma, double s) {
  const Vec3 m = mu(gamma, s);
  return dot(gamma, mu.curl_gamma(gamma, s)) + dot(m, cross(gamma, mu.d4(gamma, s)));
}

FullTorque lift(const TorqueModel& mu) {
  return [mu](const State& x) { return mu.at(x); };
}

Residual m_dependence_residual(const FullTorque& mu_full, const State& x, double h) {
  if (!(h > 0.0)) h = kMStencilStep;
  // columns[c] = d mu / d M_c, fourth-order five-point stencil
  std::array<Vec3, 3> columns;
  for (int c = 0; c < 3; ++c) {
    auto at = [&](double t) {
      State y = x;
      y.M[c] += t;
      return mu_full(y);
    };
    try {
      columns[static_cast<size_t>(c)] = (at(-2.0 * h) - at(2.0 * h) + 8.0 * (at(h) - at(-h))) / (12.0 * h);
    } catch (const DomainError& e) {
      throw DomainError(std::string(e.what()) + " (M-stencil around " + to_string(x) + ")");
    }
  }
  Residual out;
  for (int k = 0; k < 3; ++k) {
    const Vec3 grad_k{columns[0][k], columns[1][k], columns[2][k]};
    const double r = norm(cross(x.gamma, grad_k));
    if (r > out.value || out.where[0] < 0) {
      out.value = r;
      out.where = {k, -1, -1};
    }
  }
  out.absolute = out.value;
  return out;
}

double casimir_condition_residual(const ScalarField& C, const TorqueModel& mu, const Vec3& gamma, double s) {
  const Vec3 inner = mu(gamma, s) * C.d4(gamma, s) - C.grad_gamma(gamma, s);
  return norm(cross(gamma, inner));
}

Residual casimir_pde_residual(const ScalarField6& C, const PoissonStructure& P, const State& x) {
  const Vec6 g = C.grad(x);
  const Vec3 gM{g[0], g[1], g[2]};
  const Vec3 gG{g[3], g[4], g[5]};
  const double first = norm(cross(x.gamma, gM));
  const double second = norm(cross(x.M + P.torque().at(x), gM) + cross(x.gamma, gG));
  Residual out;
  if (first >= second) {
    out.value = first;
    out.where = {0, -1, -1};
  } else {
    out.value = second;
    out.where = {1, -1, -1};
  }
  out.absolute = out.value;
  return out;
}

}  // namespace gyropoisson
