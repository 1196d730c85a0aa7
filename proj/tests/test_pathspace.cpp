#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "cotpath/pathspace.hpp"

using namespace cotpath;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

ScalarArray sample(const Grid& grid, double (*fn)(double)) {
  ScalarArray v(grid.node_count());
  for (int i = 0; i < grid.node_count(); ++i) v[i] = fn(grid.node(i));
  return v;
}

double max_abs_diff(const ScalarArray& a, const ScalarArray& b) {
  double m = 0.0;
  for (size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

TEST_CASE("grid construction rules") {
  CHECK(Grid(8, GridKind::SemiFree).node_count() == 9);
  CHECK(Grid(8, GridKind::Periodic).node_count() == 8);
  CHECK(Grid(128, GridKind::Periodic).half_node() == 64);
  CHECK(Grid(10, GridKind::SemiFree).node(5) == 0.5);
  CHECK_THROWS_AS(Grid(7, GridKind::Periodic), std::invalid_argument);
  CHECK_THROWS_AS(Grid(6, GridKind::Periodic), std::invalid_argument);
  CHECK_THROWS_AS(Grid(0, GridKind::SemiFree), std::invalid_argument);
}

TEST_CASE("periodic spectral differentiation of sin(2 pi t)") {
  const Grid grid(64, GridKind::Periodic);
  const ScalarArray u = sample(grid, [](double t) { return std::sin(kTwoPi * t); });
  const ScalarArray du = differentiate(u, grid);
  const ScalarArray expected =
      sample(grid, [](double t) { return kTwoPi * std::cos(kTwoPi * t); });
  CHECK(max_abs_diff(du, expected) <= 1e-9);
}

TEST_CASE("differentiation of constants is zero") {
  for (GridKind kind : {GridKind::Periodic, GridKind::SemiFree}) {
    const Grid grid(32, kind);
    const ScalarArray u(grid.node_count(), 3.7);
    const ScalarArray du = differentiate(u, grid);
    for (double v : du) CHECK(v == doctest::Approx(0.0).epsilon(1e-12));
  }
}

TEST_CASE("semi-free differentiation of t^2 (1-t)^2") {
  const Grid grid(64, GridKind::SemiFree);
  const ScalarArray u =
      sample(grid, [](double t) { return t * t * (1 - t) * (1 - t); });
  const ScalarArray du = differentiate(u, grid);
  const ScalarArray expected = sample(grid, [](double t) {
    return 2 * t * (1 - t) * (1 - t) - 2 * t * t * (1 - t);
  });
  CHECK(max_abs_diff(du, expected) <= 1e-8);
}

TEST_CASE("periodic quadrature of sin^2") {
  const Grid grid(64, GridKind::Periodic);
  const ScalarArray u = sample(grid, [](double t) {
    const double s = std::sin(kTwoPi * t);
    return s * s;
  });
  CHECK(integrate(u, grid) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("quadrature of constants is exact") {
  for (GridKind kind : {GridKind::Periodic, GridKind::SemiFree}) {
    const Grid grid(16, kind);
    CHECK(integrate(ScalarArray(grid.node_count(), 1.0), grid) == 1.0);
  }
}

TEST_CASE("semi-free Simpson integrates t^2") {
  const Grid grid(64, GridKind::SemiFree);
  const ScalarArray u = sample(grid, [](double t) { return t * t; });
  CHECK(integrate(u, grid) == doctest::Approx(1.0 / 3.0).epsilon(1e-10));
}

TEST_CASE("periodic integral of a derivative vanishes") {
  const Grid grid(64, GridKind::Periodic);
  const ScalarArray u = sample(grid, [](double t) {
    return std::exp(std::sin(kTwoPi * t));
  });
  CHECK(std::abs(integrate(differentiate(u, grid), grid)) <= 1e-10);
}

TEST_CASE("integration by parts") {
  SUBCASE("periodic: boundary-free") {
    const Grid grid(64, GridKind::Periodic);
    const ScalarArray u = sample(grid, [](double t) {
      return std::sin(kTwoPi * t) + 0.3 * std::cos(2 * kTwoPi * t);
    });
    const ScalarArray v = sample(grid, [](double t) {
      return std::cos(kTwoPi * t) - 0.1 * std::sin(3 * kTwoPi * t);
    });
    ScalarArray uv1(u.size()), uv2(u.size());
    const ScalarArray du = differentiate(u, grid);
    const ScalarArray dv = differentiate(v, grid);
    for (size_t i = 0; i < u.size(); ++i) {
      uv1[i] = du[i] * v[i];
      uv2[i] = u[i] * dv[i];
    }
    CHECK(std::abs(integrate(uv1, grid) + integrate(uv2, grid)) <= 1e-8);
  }
  SUBCASE("semi-free: boundary term") {
    const Grid grid(128, GridKind::SemiFree);
    const ScalarArray u = sample(grid, [](double t) { return t * t * t; });
    const ScalarArray v = sample(grid, [](double t) { return 1.0 - t * t; });
    ScalarArray uv1(u.size()), uv2(u.size());
    const ScalarArray du = differentiate(u, grid);
    const ScalarArray dv = differentiate(v, grid);
    for (size_t i = 0; i < u.size(); ++i) {
      uv1[i] = du[i] * v[i];
      uv2[i] = u[i] * dv[i];
    }
    const double boundary = u.back() * v.back() - u.front() * v.front();
    CHECK(integrate(uv1, grid) + integrate(uv2, grid) ==
          doctest::Approx(boundary).epsilon(1e-6));
  }
}

TEST_CASE("cotangent defect examples") {
  SUBCASE("constant path with p = 0") {
    const BivectorField pi = so3_bivector();
    const Grid grid(16, GridKind::SemiFree);
    PathSample a(grid, 3);
    a.q.assign(grid.node_count(), Eigen::Vector3d(0.2, 0.4, -0.1));
    a.p.assign(grid.node_count(), Eigen::Vector3d::Zero());
    CHECK(cotangent_defect_max(pi, a) == doctest::Approx(0.0).epsilon(1e-13));
    CHECK(is_cotangent(pi, a, 1e-6));
  }
  SUBCASE("symplectic circle loop") {
    // q = (cos, sin), p = -2 pi (cos, sin): q' = pi# p exactly.
    const BivectorField pi = symplectic_r2();
    const Grid grid(128, GridKind::Periodic);
    PathSample a(grid, 2);
    a.q.resize(grid.node_count());
    a.p.resize(grid.node_count());
    for (int i = 0; i < grid.node_count(); ++i) {
      const double t = grid.node(i);
      a.q[i] = Eigen::Vector2d(std::cos(kTwoPi * t), std::sin(kTwoPi * t));
      a.p[i] =
          Eigen::Vector2d(-kTwoPi * std::cos(kTwoPi * t), -kTwoPi * std::sin(kTwoPi * t));
    }
    CHECK(cotangent_defect_max(pi, a) <= 1e-8);
    CHECK(is_cotangent(pi, a, 1e-6));
  }
  SUBCASE("constant q with nonzero p is not cotangent") {
    const BivectorField pi = symplectic_r2();
    const Grid grid(16, GridKind::Periodic);
    PathSample a(grid, 2);
    a.q.assign(grid.node_count(), Eigen::Vector2d(0.0, 0.0));
    a.p.assign(grid.node_count(), Eigen::Vector2d(1.0, 0.0));
    const NodeArray defect = cotangent_defect(pi, a);
    // defect = -pi# p = -(p2, -p1) = (0, 1) at every node.
    CHECK(defect[0][0] == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(defect[0][1] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK_FALSE(is_cotangent(pi, a, 1e-6));
  }
}

TEST_CASE("omega pairing") {
  const Grid grid(32, GridKind::SemiFree);
  TangentVector d1(grid, 2), d2(grid, 2);
  const Eigen::Vector2d c(1.0, -2.0), d(0.5, 3.0);
  d1.dq.assign(grid.node_count(), Eigen::Vector2d::Zero());
  d1.dp.assign(grid.node_count(), c);
  d2.dq.assign(grid.node_count(), d);
  d2.dp.assign(grid.node_count(), Eigen::Vector2d::Zero());
  // omega(d1,d2) = integral <c, d> = -5.5.
  CHECK(omega(d1, d2) == doctest::Approx(c.dot(d)).epsilon(1e-12));
  CHECK(omega(d2, d1) == doctest::Approx(-c.dot(d)).epsilon(1e-12));
  CHECK(omega(d1, d1) == 0.0);
}

TEST_CASE("flat bump vanishes flatly at the ends") {
  CHECK(flat_bump(0.0) == 0.0);
  CHECK(flat_bump(1.0) == 0.0);
  CHECK(flat_bump(-0.3) == 0.0);
  CHECK(flat_bump(0.5) == doctest::Approx(std::exp(-4.0)).epsilon(1e-15));
  CHECK(flat_bump(1e-3) <= 1e-300);
  // Derivative is odd about t = 1/2 and zero there.
  CHECK(flat_bump_derivative(0.5) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(flat_bump_derivative(0.3) ==
        doctest::Approx(-flat_bump_derivative(0.7)).epsilon(1e-12));
}

TEST_CASE("bump_reparam contract") {
  const Grid grid(128, GridKind::SemiFree);
  for (double eps : {0.25, 0.2, 0.1, 0.05}) {
    const Reparametrization rep = bump_reparam(eps, grid);
    const int m = grid.node_count();
    REQUIRE(static_cast<int>(rep.psi.size()) == m);
    CHECK(rep.psi[grid.half_node()] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(rep.psi_dot[grid.half_node()] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(rep.psi_dot[0]) <= 1e-14);
    CHECK(std::abs(rep.psi_dot[m - 1]) <= 1e-14);
    for (int i = 0; i < m; ++i) {
      CHECK(rep.psi[i] > 0.5 - eps);
      CHECK(rep.psi[i] < 0.5 + eps);
      CHECK(rep.psi_dot[i] >= 0.0);  // monotone
    }
    // Monotone in the sampled values as well.
    for (int i = 1; i < m; ++i) CHECK(rep.psi[i] >= rep.psi[i - 1]);
  }
  CHECK_THROWS_AS(bump_reparam(0.0, grid), std::invalid_argument);
  CHECK_THROWS_AS(bump_reparam(0.5, grid), std::invalid_argument);
}

TEST_CASE("periodic bump_reparam contract") {
  const Grid grid(128, GridKind::Periodic);
  for (double eps : {0.2, 0.1}) {
    const Reparametrization rep = bump_reparam_periodic(eps, grid);
    CHECK(rep.psi[grid.half_node()] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(rep.psi_dot[grid.half_node()] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(rep.psi[0] - 0.5) <= eps);  // flat value at the seam
    CHECK(std::abs(rep.psi_dot[0]) <= 1e-14);
    for (size_t i = 0; i < rep.psi.size(); ++i) {
      CHECK(rep.psi[i] > 0.5 - eps);
      CHECK(rep.psi[i] < 0.5 + eps);
    }
  }
}

TEST_CASE("path validation") {
  const Grid grid(16, GridKind::SemiFree);
  PathSample a(grid, 2);
  a.q.assign(grid.node_count(), Eigen::Vector2d::Zero());
  a.p.assign(grid.node_count(), Eigen::Vector2d::Zero());
  CHECK_NOTHROW(a.validate());
  a.p[0] = Eigen::Vector2d(1.0, 0.0);  // violates p(0) = 0
  CHECK_THROWS_AS(a.validate(), std::invalid_argument);
  a.p[0].setZero();
  a.q.pop_back();  // length mismatch
  CHECK_THROWS_AS(a.validate(), std::invalid_argument);
}

TEST_CASE("path_scale floors at one and tracks p") {
  const BivectorField pi = symplectic_r2();
  const Grid grid(16, GridKind::Periodic);
  PathSample a(grid, 2);
  a.q.assign(grid.node_count(), Eigen::Vector2d(0.1, 0.1));
  a.p.assign(grid.node_count(), Eigen::Vector2d(0.2, 0.0));
  CHECK(path_scale(pi, a) == doctest::Approx(1.0));
  a.p.assign(grid.node_count(), Eigen::Vector2d(7.0, 0.0));
  CHECK(path_scale(pi, a) == doctest::Approx(7.0));
}

TEST_CASE("csv emission") {
  const Grid grid(8, GridKind::SemiFree);
  PathSample a(grid, 2);
  a.q.assign(grid.node_count(), Eigen::Vector2d(1.0, 2.0));
  a.p.assign(grid.node_count(), Eigen::Vector2d(3.0, 4.0));
  const std::string csv = path_to_csv(a);
  CHECK(csv.rfind("t,q1,q2,p1,p2\n", 0) == 0);
  CHECK(csv.find("0.125,1,2,3,4") != std::string::npos);
}
