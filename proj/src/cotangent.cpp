#include "cotpath/cotangent.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include <Eigen/Dense>

namespace cotpath {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// RK4 integration of y' = pi#_y(p) (p fixed) from t = 1/2 to target,
// with the given number of uniform steps.
Eigen::VectorXd integrate_anchor(const BivectorField& pi, const Eigen::VectorXd& q,
                                 const Eigen::VectorXd& p, double target, int steps) {
  Eigen::VectorXd y = q;
  const double h = (target - 0.5) / steps;
  for (int k = 0; k < steps; ++k) {
    const Eigen::VectorXd k1 = pi.sharp(y, p);
    const Eigen::VectorXd k2 = pi.sharp(y + 0.5 * h * k1, p);
    const Eigen::VectorXd k3 = pi.sharp(y + 0.5 * h * k2, p);
    const Eigen::VectorXd k4 = pi.sharp(y + h * k3, p);
    y += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (!y.allFinite() || y.lpNorm<Eigen::Infinity>() > 1e8)
      throw std::runtime_error("shoot_through: ODE blow-up inside the window");
  }
  return y;
}

// 4-point Lagrange interpolation of node samples at the midpoint of
// interval [i, i+1].
Eigen::VectorXd half_point(const NodeArray& v, int i, const Grid& grid) {
  const int m = grid.node_count();
  auto at = [&](int j) -> const Eigen::VectorXd& {
    if (grid.kind() == GridKind::Periodic) return v[((j % m) + m) % m];
    return v[j];
  };
  if (grid.kind() == GridKind::Periodic)
    return (-at(i - 1) + 9.0 * at(i) + 9.0 * at(i + 1) - at(i + 2)) / 16.0;
  if (i == 0)
    return 0.3125 * at(0) + 0.9375 * at(1) - 0.3125 * at(2) + 0.0625 * at(3);
  if (i == m - 2)
    return 0.0625 * at(m - 4) - 0.3125 * at(m - 3) + 0.9375 * at(m - 2) +
           0.3125 * at(m - 1);
  return (-at(i - 1) + 9.0 * at(i) + 9.0 * at(i + 1) - at(i + 2)) / 16.0;
}

}  // namespace

ShootResult shoot_through(const BivectorField& pi, const Eigen::VectorXd& q,
                          const Eigen::VectorXd& p, double eps, const Grid& grid) {
  const int n = pi.n();
  if (q.size() != n || p.size() != n)
    throw std::invalid_argument("shoot_through: dimension mismatch");
  if (!(eps > 0.0 && eps < 0.5))
    throw std::invalid_argument("shoot_through: eps out of range");
  const Reparametrization rep = (grid.kind() == GridKind::SemiFree)
                                    ? bump_reparam(eps, grid)
                                    : bump_reparam_periodic(eps, grid);
  const double hstep = 2.0 * eps / (8.0 * grid.intervals());
  ShootResult result(grid, n);
  const int m = grid.node_count();
  result.path.q.resize(m);
  result.path.p.resize(m);
  for (int i = 0; i < m; ++i) {
    const double target = rep.psi[i];
    const int steps =
        std::max(1, static_cast<int>(std::ceil(std::abs(target - 0.5) / hstep)));
    const Eigen::VectorXd y = integrate_anchor(pi, q, p, target, steps);
    const Eigen::VectorXd y2 = integrate_anchor(pi, q, p, target, 2 * steps);
    // One Richardson halving: keep the finer solution, track the estimate.
    result.through_point_error =
        std::max(result.through_point_error, (y2 - y).lpNorm<Eigen::Infinity>() / 15.0);
    result.path.q[i] = y2;
    result.path.p[i] = rep.psi_dot[i] * p;
  }
  const int half = grid.half_node();
  result.through_point_error = std::max(
      {result.through_point_error, (result.path.q[half] - q).lpNorm<Eigen::Infinity>(),
       (result.path.p[half] - p).lpNorm<Eigen::Infinity>()});
  result.defect_max = cotangent_defect_max(pi, result.path);
  return result;
}

TangentVector linearized_tangent(const BivectorField& pi, const PathSample& a,
                                 const NodeArray& dp, const Eigen::VectorXd& dq0,
                                 double cotangent_tol) {
  const int n = pi.n();
  if (a.n != n || dq0.size() != n || dp.size() != a.q.size())
    throw std::invalid_argument("linearized_tangent: dimension mismatch");
  const double scale = path_scale(pi, a);
  if (!is_cotangent(pi, a, cotangent_tol * scale))
    throw std::invalid_argument("linearized_tangent: base path is not cotangent");
  const Grid& grid = a.grid;
  const int m = grid.node_count();
  const double h = grid.spacing();
  auto rhs = [&](const Eigen::VectorXd& qv, const Eigen::VectorXd& pv,
                 const Eigen::VectorXd& dpv, const Eigen::VectorXd& dq) {
    return (pi.sharp_derivative(qv, dq, pv) + pi.sharp(qv, dpv)).eval();
  };
  TangentVector out(grid, n);
  out.dq.resize(m);
  out.dp = dp;
  out.dq[0] = dq0;
  const int steps = (grid.kind() == GridKind::Periodic) ? m : m - 1;
  Eigen::VectorXd dq = dq0;
  for (int i = 0; i < steps; ++i) {
    const int ip1 = (i + 1) % m;
    const Eigen::VectorXd qh = half_point(a.q, i, grid);
    const Eigen::VectorXd ph = half_point(a.p, i, grid);
    const Eigen::VectorXd dph = half_point(dp, i, grid);
    const Eigen::VectorXd k1 = rhs(a.q[i], a.p[i], dp[i], dq);
    const Eigen::VectorXd k2 = rhs(qh, ph, dph, dq + 0.5 * h * k1);
    const Eigen::VectorXd k3 = rhs(qh, ph, dph, dq + 0.5 * h * k2);
    const Eigen::VectorXd k4 = rhs(a.q[ip1], a.p[ip1], dp[ip1], dq + h * k3);
    dq += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (i + 1 < m) out.dq[i + 1] = dq;
  }
  if (grid.kind() == GridKind::Periodic) {
    // Stash the wrap-around value in dq[0]'s closure error via caller checks;
    // the marched value after N steps should coincide with dq0.
    out.closure_error = (dq - dq0).lpNorm<Eigen::Infinity>();
  }
  return out;
}

double linearized_residual(const BivectorField& pi, const PathSample& a,
                           const TangentVector& d) {
  NodeArray dqdot = differentiate(d.dq, a.grid);
  double worst = 0.0;
  for (size_t i = 0; i < d.dq.size(); ++i) {
    const Eigen::VectorXd r = dqdot[i] - pi.sharp_derivative(a.q[i], d.dq[i], a.p[i]) -
                              pi.sharp(a.q[i], d.dp[i]);
    worst = std::max(worst, r.lpNorm<Eigen::Infinity>());
  }
  return worst;
}

OmegaTestResult lagrangian_omega_test(const BivectorField& pi, const PathSample& a,
                                      int trials, std::uint64_t seed) {
  if (a.grid.kind() != GridKind::Periodic)
    throw std::invalid_argument("lagrangian_omega_test: needs a periodic path");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const int m = a.grid.node_count();
  const int n = a.n;
  const double scale = path_scale(pi, a);
  auto random_tangent = [&]() -> TangentVector {
    // Zero-mean trigonometric dp (modes 1..3) keeps the closure condition
    // reachable; runs that still fail to close are rejected and counted.
    NodeArray dp(m, Eigen::VectorXd::Zero(n));
    for (int c = 0; c < n; ++c)
      for (int k = 1; k <= 3; ++k) {
        const double ac = gauss(rng) / (k * k), bc = gauss(rng) / (k * k);
        for (int i = 0; i < m; ++i) {
          const double th = kTwoPi * k * a.grid.node(i);
          dp[i][c] += ac * std::cos(th) + bc * std::sin(th);
        }
      }
    Eigen::VectorXd dq0 = Eigen::VectorXd::NullaryExpr(n, [&](int) { return gauss(rng); });
    return linearized_tangent(pi, a, dp, dq0);
  };
  OmegaTestResult result;
  std::vector<TangentVector> accepted;
  int attempts = 0;
  while (static_cast<int>(accepted.size()) < 2 * trials && attempts < 10 * trials + 20) {
    ++attempts;
    TangentVector d = random_tangent();
    if (d.closure_error <= 1e-6 * scale)
      accepted.push_back(std::move(d));
    else
      ++result.pairs_rejected;
  }
  for (size_t i = 0; i + 1 < accepted.size(); i += 2) {
    result.max_abs_omega =
        std::max(result.max_abs_omega, std::abs(omega(accepted[i], accepted[i + 1])));
    ++result.pairs_used;
  }
  return result;
}

TangentConeProbeResult tangent_cone_probe(double eps, int modes, const Grid& grid) {
  if (!(eps > 0.0 && eps <= 0.1))
    throw std::invalid_argument("tangent_cone_probe: need 0 < eps <= 0.1");
  if (modes < 4) throw std::invalid_argument("tangent_cone_probe: modes >= 4");
  if (grid.kind() != GridKind::Periodic)
    throw std::invalid_argument("tangent_cone_probe: periodic grid required");
  const BivectorField pi = x_dx_dy();
  const int m = grid.node_count();
  const int ncoef = 2 * modes;        // per field
  const int nfields = 4;              // x, y, a, b corrections
  const int nparams = nfields * ncoef;

  // Trig basis and its exact derivative at the nodes.
  Eigen::MatrixXd basis(m, ncoef), dbasis(m, ncoef);
  for (int k = 1; k <= modes; ++k)
    for (int i = 0; i < m; ++i) {
      const double th = kTwoPi * k * grid.node(i);
      basis(i, 2 * (k - 1)) = std::cos(th);
      basis(i, 2 * (k - 1) + 1) = std::sin(th);
      dbasis(i, 2 * (k - 1)) = -kTwoPi * k * std::sin(th);
      dbasis(i, 2 * (k - 1) + 1) = kTwoPi * k * std::cos(th);
    }

  struct Fields {
    Eigen::VectorXd x, xd, y, yd, a, b;
  };
  auto assemble = [&](const Eigen::VectorXd& c, double base_x,
                      double base_b) -> Fields {
    Fields f;
    f.x = Eigen::VectorXd::Constant(m, base_x) + basis * c.segment(0, ncoef);
    f.xd = dbasis * c.segment(0, ncoef);
    f.y = basis * c.segment(ncoef, ncoef);
    f.yd = dbasis * c.segment(ncoef, ncoef);
    f.a = basis * c.segment(2 * ncoef, ncoef);
    f.b = Eigen::VectorXd::Constant(m, base_b) + basis * c.segment(3 * ncoef, ncoef);
    return f;
  };
  auto residual = [&](const Fields& f) -> Eigen::VectorXd {
    Eigen::VectorXd r(2 * m);
    for (int i = 0; i < m; ++i) {
      r[2 * i] = f.xd[i] - f.x[i] * f.b[i];
      r[2 * i + 1] = f.yd[i] + f.x[i] * f.a[i];
    }
    return r;
  };

  TangentConeProbeResult probe;
  auto minimize = [&](double base_x, double base_b, Eigen::VectorXd* coef_out) {
    Eigen::VectorXd c = Eigen::VectorXd::Zero(nparams);
    const double box = eps * eps;
    for (int iter = 0; iter < 50; ++iter) {
      Fields f = assemble(c, base_x, base_b);
      Eigen::VectorXd r = residual(f);
      Eigen::MatrixXd J = Eigen::MatrixXd::Zero(2 * m, nparams);
      for (int i = 0; i < m; ++i) {
        // r1 = x' - x b, r2 = y' + x a
        J.row(2 * i).segment(0, ncoef) = dbasis.row(i) - f.b[i] * basis.row(i);
        J.row(2 * i).segment(3 * ncoef, ncoef) = -f.x[i] * basis.row(i);
        J.row(2 * i + 1).segment(ncoef, ncoef) = dbasis.row(i);
        J.row(2 * i + 1).segment(0, ncoef) = f.a[i] * basis.row(i);
        J.row(2 * i + 1).segment(2 * ncoef, ncoef) = f.x[i] * basis.row(i);
      }
      // Damped Gauss-Newton step, projected onto the amplitude box with a
      // backtracking line search so the residual never increases.
      Eigen::MatrixXd JtJ = J.transpose() * J;
      JtJ.diagonal().array() += 1e-12;
      Eigen::VectorXd step = JtJ.ldlt().solve(-J.transpose() * r);
      if (!step.allFinite()) {
        probe.converged = false;
        break;
      }
      const double r_norm = r.norm();
      double t = 1.0;
      bool accepted = false;
      for (int bt = 0; bt < 30; ++bt) {
        Eigen::VectorXd trial =
            (c + t * step).cwiseMax(-box).cwiseMin(box).eval();
        if (residual(assemble(trial, base_x, base_b)).norm() < r_norm) {
          c = trial;
          accepted = true;
          break;
        }
        t *= 0.5;
      }
      if (!accepted) break;  // projected stationary point of the box problem
    }
    *coef_out = c;
    // Report the residual the defect map sees on the grid.
    PathSample path(grid, 2);
    Fields f = assemble(c, base_x, base_b);
    path.q.resize(m);
    path.p.resize(m);
    for (int i = 0; i < m; ++i) {
      path.q[i] = Eigen::Vector2d(f.x[i], f.y[i]);
      path.p[i] = Eigen::Vector2d(f.a[i], f.b[i]);
    }
    return cotangent_defect_max(pi, path);
  };

  Eigen::VectorXd c_u, c_v, c_uv;
  probe.res_u = minimize(eps, 0.0, &c_u);
  probe.res_v = minimize(0.0, eps, &c_v);
  probe.res_uv = minimize(eps, eps, &c_uv);
  // Holonomy of the u+v candidate: loop integral of b.
  Fields f_uv = assemble(c_uv, eps, eps);
  ScalarArray b_vals(m);
  for (int i = 0; i < m; ++i) b_vals[i] = f_uv.b[i];
  probe.holonomy_uv = integrate(b_vals, grid);
  return probe;
}

}  // namespace cotpath
