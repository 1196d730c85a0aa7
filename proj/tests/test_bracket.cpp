#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "cotpath/bracket.hpp"
#include "cotpath/cotangent.hpp"
#include "cotpath/verification.hpp"

using namespace cotpath;

namespace {

Eigen::VectorXd vec3(double a, double b, double c) {
  Eigen::VectorXd v(3);
  v << a, b, c;
  return v;
}

}  // namespace

TEST_CASE("lie bracket antisymmetry and bilinearity") {
  std::mt19937_64 rng(2);
  const Grid grid(64, GridKind::SemiFree);
  const PathSample a = random_semifree_path(2, grid, rng);
  const LocalFunctional F = random_functional(2, rng);
  const LocalFunctional G = random_functional(2, rng);
  const LocalFunctional H = random_functional(2, rng);
  const double fg = lie_bracket(F, G, a);
  CHECK(lie_bracket(G, F, a) == -fg);  // exact antisymmetry
  CHECK(lie_bracket(F, F, a) == 0.0);
  CHECK(lie_bracket(F + H, G, a) ==
        doctest::Approx(fg + lie_bracket(H, G, a)).epsilon(1e-10));
  CHECK(lie_bracket(F.scaled(3.0), G, a) ==
        doctest::Approx(3.0 * fg).epsilon(1e-12));
}

TEST_CASE("casimir functionals bracket to zero with everything") {
  std::mt19937_64 rng(8);
  const Polynomial h =
      Polynomial::variable(2, 1) * Polynomial::variable(2, 2);
  const LocalFunctional cas = casimir_functional(h);
  for (GridKind kind : {GridKind::SemiFree, GridKind::Periodic}) {
    const Grid grid(64, kind);
    const PathSample a = kind == GridKind::SemiFree
                             ? random_semifree_path(2, grid, rng)
                             : random_periodic_path(2, grid, rng);
    const LocalFunctional G = random_functional(2, rng);
    const double scale = path_scale(symplectic_r2(), a);
    CHECK(std::abs(lie_bracket(cas, G, a)) <= 1e-6 * scale);
  }
}

TEST_CASE("constraint pair brackets vanish on so(3) cotangent paths") {
  const BivectorField pi = so3_bivector();
  const Grid grid(128, GridKind::SemiFree);
  const ShootResult sr =
      shoot_through(pi, vec3(0.3, -0.2, 0.5), vec3(0.4, 0.1, -0.6), 0.2, grid);
  std::mt19937_64 rng(4);
  const double scale = path_scale(pi, sr.path);
  for (int pair = 0; pair < 3; ++pair) {
    const NodeProfile fp(random_profile(grid, rng), grid);
    const NodeProfile gp(random_profile(grid, rng), grid);
    for (int r = 1; r <= 3; ++r)
      for (int s = r + 1; s <= 3; ++s) {
        const LocalFunctional F = constraint_functional(pi, r, fp);
        const LocalFunctional G = constraint_functional(pi, s, gp);
        CHECK(std::abs(lie_bracket(F, G, sr.path)) <= 1e-5 * scale);
      }
  }
}

TEST_CASE("closed form equals the quadrature bracket on random instances") {
  std::mt19937_64 rng(7);
  for (int inst = 0; inst < 25; ++inst) {
    const int n = 2 + (inst % 2);
    const GridKind kind = inst % 2 ? GridKind::Periodic : GridKind::SemiFree;
    const Grid grid(256, kind);
    const BivectorField pi = random_bivector(n, 2, rng);
    const PathSample a = kind == GridKind::SemiFree
                             ? random_semifree_path(n, grid, rng, 0.25)
                             : random_periodic_path(n, grid, rng, 0.25);
    const NodeProfile fp(random_profile(grid, rng), grid);
    const NodeProfile gp(random_profile(grid, rng), grid);
    const int r = 1, s = n;
    const LocalFunctional F = constraint_functional(pi, r, fp);
    const LocalFunctional G = constraint_functional(pi, s, gp);
    const double b = lie_bracket(F, G, a);
    const double cf = constraint_bracket_closed_form(pi, fp, r, gp, s, a);
    CHECK(std::abs(b - cf) <= 1e-6 * std::max(1.0, std::abs(b)));
  }
}

TEST_CASE("closed form is exactly zero for constant bivectors") {
  BivectorField pi(2);
  pi.set_entry(1, 2, Polynomial::constant(2, 1.5));
  const Grid grid(64, GridKind::Periodic);
  std::mt19937_64 rng(10);
  const PathSample a = random_periodic_path(2, grid, rng);
  const NodeProfile fp(random_profile(grid, rng), grid);
  const NodeProfile gp(random_profile(grid, rng), grid);
  CHECK(constraint_bracket_closed_form(pi, fp, 1, gp, 2, a) == 0.0);
}

TEST_CASE("dirac family") {
  const Grid grid(256, GridKind::SemiFree);
  for (int d : {4, 8, 16, 32}) {
    const ScalarArray f = dirac_family(d, 0.5, grid);
    CHECK(integrate(f, grid) == doctest::Approx(1.0).epsilon(1e-12));
    for (int i = 0; i < grid.node_count(); ++i) {
      if (std::abs(grid.node(i) - 0.5) >= 1.0 / d) CHECK(f[i] == 0.0);
      CHECK(f[i] >= 0.0);
    }
  }
  SUBCASE("approximates point evaluation at O(1/d^2)") {
    ScalarArray u(grid.node_count());
    for (int i = 0; i < grid.node_count(); ++i) {
      const double t = grid.node(i);
      u[i] = std::sin(3.0 * t) + t * t;
    }
    const double target = std::sin(1.5) + 0.25;
    double prev_err = 1e9;
    for (int d : {4, 8, 16, 32}) {
      ScalarArray fu(grid.node_count());
      const ScalarArray f = dirac_family(d, 0.5, grid);
      for (int i = 0; i < grid.node_count(); ++i) fu[i] = f[i] * u[i];
      const double err = std::abs(integrate(fu, grid) - target);
      CHECK(err < prev_err);  // monotone improvement over the dyadic family
      prev_err = err;
    }
    CHECK(prev_err <= 1e-3);
  }
  SUBCASE("width must fit the domain") {
    CHECK_THROWS_AS(dirac_family(1, 0.5, grid), std::invalid_argument);
    CHECK_THROWS_AS(dirac_family(8, 0.01, grid), std::invalid_argument);
    CHECK_THROWS_AS(dirac_family(0, 0.5, grid), std::invalid_argument);
  }
}

TEST_CASE("plateau profile") {
  const Grid grid(256, GridKind::SemiFree);
  const ScalarArray g = plateau_profile(grid);
  for (int i = 0; i < grid.node_count(); ++i) {
    const double t = grid.node(i);
    if (t >= 0.375 && t <= 0.625) CHECK(g[i] == doctest::Approx(1.0).epsilon(1e-12));
    if (t <= 0.25 || t >= 0.75) CHECK(g[i] == 0.0);
    CHECK(g[i] >= 0.0);
    CHECK(g[i] <= 1.0 + 1e-12);
  }
}

TEST_CASE("dirac limit extracts the jacobiator pairing") {
  const Grid grid(256, GridKind::SemiFree);
  const Eigen::VectorXd q = vec3(0.0, 0.0, 2.0);
  const Eigen::VectorXd p = vec3(0.0, 0.0, 1.0);

  SUBCASE("non-Poisson example converges to |J_123 p_3| = 2") {
    const std::vector<double> seq =
        dirac_limit_bracket(nonpoisson_bivector(), 1, 2, q, p, {4, 8, 16, 32},
                            grid);
    REQUIRE(seq.size() == 4);
    CHECK(std::abs(std::abs(seq.back()) - 2.0) <= 0.05 * 2.0);
    // The sequence approaches the limit monotonically in error.
    CHECK(std::abs(std::abs(seq[3]) - 2.0) < std::abs(std::abs(seq[0]) - 2.0));
  }

  SUBCASE("so(3) keeps the sequence at noise level") {
    const std::vector<double> seq =
        dirac_limit_bracket(so3_bivector(), 1, 2, q, p, {4, 8, 16, 32}, grid);
    for (double v : seq) CHECK(std::abs(v) <= 1e-4);
  }

  SUBCASE("p = 0 kills the J-term") {
    const std::vector<double> seq = dirac_limit_bracket(
        nonpoisson_bivector(), 1, 2, q, Eigen::VectorXd::Zero(3), {4, 8}, grid);
    for (double v : seq) CHECK(std::abs(v) <= 1e-6);
  }
}
