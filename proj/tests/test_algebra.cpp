#include <doctest.h>

#include "gyropoisson/algebra.hpp"
#include "support.hpp"

using namespace gyropoisson;
using testing::Gen;

TEST_CASE("cross product examples") {
  CHECK(cross({1, 0, 0}, {0, 1, 0}) == Vec3{0, 0, 1});
  const Vec3 a{0.3, -1.7, 2.2};
  CHECK(cross(a, a) == Vec3{0, 0, 0});
  CHECK(cross({1, 2, 3}, {4, 5, 6}) == Vec3{-3, 6, -3});
}

TEST_CASE("cross product properties on random triples") {
  Gen g(101);
  for (int i = 0; i < 500; ++i) {
    const Vec3 a = g.vec(), b = g.vec(), c = g.vec();
    const double scale = 1.0 + norm(a) * norm(b) * norm(c);
    CHECK(norm(cross(a, b) + cross(b, a)) <= 1e-15 * (1.0 + norm(a) * norm(b)));
    const Vec3 jac = cross(a, cross(b, c)) + cross(b, cross(c, a)) + cross(c, cross(a, b));
    CHECK(norm(jac) / scale < 1e-12);
    CHECK(std::fabs(dot(a, cross(a, b))) / (1.0 + norm(a) * norm(a) * norm(b)) < 1e-12);
  }
}

TEST_CASE("omega examples") {
  CHECK(omega(InertiaTensor(2, 2, 1), {2, 2, 1}) == Vec3{1, 1, 1});
  const Vec3 M{0.4, -2.5, 7.0};
  CHECK(omega(InertiaTensor::identity(), M) == M);
  CHECK(omega(InertiaTensor(2, 3, 4), {2, 3, 4}) == Vec3{1, 1, 1});
}

TEST_CASE("omega inverts the inertia map") {
  Gen g(7);
  for (int i = 0; i < 200; ++i) {
    const InertiaTensor I(g.uniform(0.1, 5), g.uniform(0.1, 5), g.uniform(0.1, 5));
    const Vec3 M = g.vec(10.0);
    CHECK(testing::dist(I.apply(I.omega(M)), M) <= 1e-14 * (1.0 + norm(M)));
  }
}

TEST_CASE("inertia tensor validation and warnings") {
  CHECK_THROWS_AS(InertiaTensor(0.0, 1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(InertiaTensor(1.0, -1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(InertiaTensor(1.0, 1.0, std::nan("")), std::invalid_argument);
  CHECK(InertiaTensor(1, 2, 3).triangle_warnings().empty());
  const auto w = InertiaTensor(1, 1, 5).triangle_warnings();
  CHECK(w.size() == 1);
  const InertiaTensor k = InertiaTensor::kovalevskaya(1.5);
  CHECK(k.i1() == 3.0);
  CHECK(k.i2() == 3.0);
  CHECK(k.i3() == 1.5);
}

TEST_CASE("state helpers") {
  const State x{{1, 2, 3}, {4, 5, 6}};
  CHECK(x.s() == 32.0);
  CHECK(State::from_coords(x.coords()) == x);
  const State y = perturbed(x, 4, 0.5);
  CHECK(y.gamma.y == 5.5);
  CHECK(y.M == x.M);
  CHECK(x.finite());
  const State bad{{1, std::nan(""), 0}, {0, 0, 1}};
  CHECK_FALSE(bad.finite());
}

TEST_CASE("symmetric matrix storage and products") {
  const SymMatrix3 A(1, 2, 3, 4, 5, 6);
  CHECK(A(0, 1) == A(1, 0));
  CHECK(A(1, 2) == 5.0);
  CHECK(A(2, 0) == 3.0);
  const Vec3 v{1, -1, 2};
  CHECK(A.apply(v) == Vec3{1 - 2 + 6, 2 - 4 + 10, 3 - 5 + 12});
  CHECK(A.quadratic_form(v) == doctest::Approx(dot(v, A.apply(v))));
  const Matrix3 F = A.full();
  CHECK(F.antisymmetric_norm() == 0.0);
  CHECK(F.apply(v) == A.apply(v));
}

TEST_CASE("general matrix curl and antisymmetric norm") {
  Matrix3 A{};
  A(0, 1) = 1.0;  // gamma -> (gamma2, 0, 0)
  CHECK(A.linear_curl() == Vec3{0, 0, -1});
  Gen g(3);
  for (int i = 0; i < 50; ++i) {
    Matrix3 B{};
    for (double& e : B.a) e = g.uniform(-1, 1);
    const Vec3 p = g.vec();
    const Vec3 fd = fd_curl([&B](const Vec3& q) { return B.apply(q); }, p);
    CHECK(testing::dist(fd, B.linear_curl()) < 1e-9);
    CHECK(B.transpose().transpose().a == B.a);
    CHECK(testing::dist(B.apply_transpose(p), B.transpose().apply(p)) < 1e-15);
  }
}

TEST_CASE("default step") {
  CHECK(default_step(Vec3{0, 0, 0}) == 1e-6);
  CHECK(default_step(Vec3{3, 4, 0}) == doctest::Approx(5e-6));
  CHECK(default_step(-20.0) == doctest::Approx(2e-5));
}

TEST_CASE("fd_gradient examples") {
  const Vec3 g1 = fd_gradient([](const Vec3& g) { return 0.5 * dot(g, g); }, {1, 2, 3});
  CHECK(testing::dist(g1, {1, 2, 3}) < 1e-9);
  const Vec3 g2 = fd_gradient([](const Vec3&) { return 4.2; }, {1, 2, 3});
  CHECK(g2 == Vec3{0, 0, 0});
  const Vec3 g3 = fd_gradient([](const Vec3& g) { return g.x * g.y * g.z; }, {1, 1, 1});
  CHECK(testing::dist(g3, {1, 1, 1}) < 1e-8);
}

TEST_CASE("fd_gradient is exact on quadratics and second order on cubics") {
  Gen g(11);
  for (int i = 0; i < 50; ++i) {
    const Vec3 c = g.vec(1.0);
    const Vec3 p = g.vec(1.0);
    auto quad = [c](const Vec3& q) { return c.x * q.x * q.y + c.y * q.z * q.z + c.z * q.x; };
    const Vec3 exact_q{c.x * p.y + c.z, c.x * p.x, 2 * c.y * p.z};
    CHECK(testing::dist(fd_gradient(quad, p, 1e-3), exact_q) < 1e-11);

    auto cubic = [c](const Vec3& q) { return c.x * q.x * q.x * q.x + c.y * q.x * q.y * q.z + c.z * q.z * q.z * q.y; };
    const Vec3 exact_c{3 * c.x * p.x * p.x + c.y * p.y * p.z, c.y * p.x * p.z + c.z * p.z * p.z,
                       c.y * p.x * p.y + 2 * c.z * p.z * p.y};
    const double e1 = testing::dist(fd_gradient(cubic, p, 1e-2), exact_c);
    const double e2 = testing::dist(fd_gradient(cubic, p, 5e-3), exact_c);
    // Only the x^3 term has a nonzero third derivative along a coordinate axis.
    if (std::fabs(c.x) < 1e-2) continue;
    CHECK(e1 / e2 >= 3.5);
    CHECK(e1 / e2 <= 4.5);
  }
}

TEST_CASE("fd_derivative and jacobian") {
  CHECK(fd_derivative([](double x) { return x * x; }, 3.0) == doctest::Approx(6.0).epsilon(1e-9));
  const Matrix3 J = fd_jacobian([](const Vec3& p) { return Vec3{p.x * p.y, p.z, p.x + 2 * p.y}; }, {1, 2, 3});
  const Matrix3 exact{{2, 1, 0, 0, 0, 1, 1, 2, 0}};
  for (int k = 0; k < 9; ++k) CHECK(J.a[static_cast<size_t>(k)] == doctest::Approx(exact.a[static_cast<size_t>(k)]).epsilon(1e-8));
}

TEST_CASE("fd stencil domain errors name the point") {
  auto f = [](const Vec3& g) {
    if (g.z <= 0.0) throw DomainError("undefined for gamma3 <= 0");
    return std::log(g.z);
  };
  CHECK_NOTHROW(fd_gradient(f, {0, 0, 1}));
  try {
    fd_gradient(f, {0, 0, 5e-7}, 1e-6);
    FAIL("expected a domain error");
  } catch (const DomainError& e) {
    CHECK(std::string(e.what()).find("stencil") != std::string::npos);
  }
}
