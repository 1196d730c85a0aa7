#include "cotpath/bracket.hpp"

#include <cmath>
#include <stdexcept>

#include "cotpath/cotangent.hpp"

namespace cotpath {

double lie_bracket(const LocalFunctional& F, const LocalFunctional& G,
                   const PathSample& a) {
  if (F.n() != G.n() || F.n() != a.n)
    throw std::invalid_argument("lie_bracket: dimension mismatch");
  GradientResult gF = gradient(F, a);
  GradientResult gG = gradient(G, a);
  const int m = a.grid.node_count();
  ScalarArray integrand(m);
  for (int i = 0; i < m; ++i)
    integrand[i] = gF.A[i].dot(gG.B[i]) - gG.A[i].dot(gF.B[i]);
  return integrate(integrand, a.grid);
}

double constraint_bracket_closed_form(const BivectorField& pi,
                                      const NodeProfile& f_profile, int r,
                                      const NodeProfile& g_profile, int s,
                                      const PathSample& a) {
  const int n = pi.n();
  if (r < 1 || r > n || s < 1 || s > n)
    throw std::out_of_range("constraint_bracket_closed_form: index out of range");
  if (a.n != n)
    throw std::invalid_argument("constraint_bracket_closed_form: dimension mismatch");
  NodeArray qdot = differentiate(a.q, a.grid);
  const int m = a.grid.node_count();
  ScalarArray integrand(m);
  for (int i = 0; i < m; ++i) {
    const double fg = f_profile.values()[i] * g_profile.values()[i];
    const Eigen::VectorXd defect = qdot[i] - pi.sharp(a.q[i], a.p[i]);
    double defect_term = 0.0;
    for (int k = 1; k <= n; ++k)
      defect_term += pi.entry_partial_eval(r, s, k, a.q[i]) * defect[k - 1];
    Jacobiator3Tensor jac = pi.jacobiator(a.q[i]);
    double jac_term = 0.0;
    for (int j = 1; j <= n; ++j) jac_term += jac(r, s, j) * a.p[i][j - 1];
    // The Jacobiator term enters with a plus sign; this is the sign that makes
    // the closed form agree with the quadrature bracket on arbitrary paths.
    integrand[i] = fg * (defect_term + jac_term);
  }
  return integrate(integrand, a.grid);
}

ScalarArray dirac_family(int d, double center, const Grid& grid) {
  if (d < 1) throw std::invalid_argument("dirac_family: d must be >= 1");
  const double w = 1.0 / d;
  if (center - w <= 0.0 || center + w >= 1.0)
    throw std::invalid_argument("dirac_family: width exceeds domain");
  const int m = grid.node_count();
  ScalarArray f(m, 0.0);
  for (int i = 0; i < m; ++i) {
    const double u = (grid.node(i) - center) / w;  // support |u| < 1
    if (std::abs(u) < 1.0) f[i] = std::exp(-1.0 / (1.0 - u * u));
  }
  const double total = integrate(f, grid);
  if (total <= 0.0) throw std::invalid_argument("dirac_family: grid too coarse");
  for (double& v : f) v /= total;
  return f;
}

ScalarArray plateau_profile(const Grid& grid) {
  // Smooth steps built from the flat-bump CDF on the transition bands
  // [1/4, 3/8] and [5/8, 3/4].
  auto cdf = [](double x) {  // flat CDF on [0,1], crude quadrature is enough
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const int steps = 512;
    double num = 0.0, den = 0.0;
    for (int k = 0; k < steps; ++k) {
      const double t = (k + 0.5) / steps;
      const double b = flat_bump(t);
      den += b;
      if (t < x) num += b;
    }
    return num / den;
  };
  const int m = grid.node_count();
  ScalarArray g(m, 0.0);
  for (int i = 0; i < m; ++i) {
    const double t = grid.node(i);
    if (t <= 0.25 || t >= 0.75) continue;
    if (t < 0.375)
      g[i] = cdf((t - 0.25) / 0.125);
    else if (t <= 0.625)
      g[i] = 1.0;
    else
      g[i] = cdf((0.75 - t) / 0.125);
  }
  return g;
}

std::vector<double> dirac_limit_bracket(const BivectorField& pi, int r, int s,
                                        const Eigen::VectorXd& q,
                                        const Eigen::VectorXd& p,
                                        const std::vector<int>& d_list,
                                        const Grid& grid, double eps) {
  ShootResult shot = shoot_through(pi, q, p, eps, grid);
  NodeProfile g(plateau_profile(grid), grid);
  LocalFunctional G = constraint_functional(pi, s, g);
  std::vector<double> out;
  out.reserve(d_list.size());
  for (int d : d_list) {
    NodeProfile f(dirac_family(d, 0.5, grid), grid);
    LocalFunctional F = constraint_functional(pi, r, f);
    out.push_back(lie_bracket(F, G, shot.path));
  }
  return out;
}

}  // namespace cotpath
