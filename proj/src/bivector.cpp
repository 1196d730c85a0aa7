#include "cotpath/bivector.hpp"

#include <cmath>
#include <stdexcept>

namespace cotpath {

double Jacobiator3Tensor::max_abs() const {
  double m = 0.0;
  for (double v : entries_) m = std::max(m, std::abs(v));
  return m;
}

BivectorField::BivectorField(int n) : n_(n) {
  if (n < 1) throw std::invalid_argument("BivectorField: n must be >= 1");
}

void BivectorField::set_entry(int i, int j, Polynomial poly) {
  if (i < 1 || j < 1 || i > n_ || j > n_ || i >= j)
    throw std::invalid_argument("BivectorField::set_entry: need 1 <= i < j <= n");
  if (poly.nvars() != n_)
    throw std::invalid_argument("BivectorField::set_entry: polynomial nvars != n");
  upper_.insert_or_assign({i, j}, std::move(poly));
}

Polynomial BivectorField::entry(int i, int j) const {
  if (i < 1 || j < 1 || i > n_ || j > n_)
    throw std::out_of_range("BivectorField::entry: index out of range");
  if (i == j) return Polynomial::zero(n_);
  const bool flip = i > j;
  auto it = upper_.find(flip ? std::make_pair(j, i) : std::make_pair(i, j));
  if (it == upper_.end()) return Polynomial::zero(n_);
  return flip ? -it->second : it->second;
}

Polynomial BivectorField::entry_partial(int i, int j, int k) const {
  return entry(i, j).partial(k);
}

double BivectorField::entry_eval(int i, int j, const Eigen::VectorXd& q) const {
  return entry(i, j).eval(q);
}

double BivectorField::entry_partial_eval(int i, int j, int k,
                                         const Eigen::VectorXd& q) const {
  return entry(i, j).partial(k).eval(q);
}

void BivectorField::check_point(const Eigen::VectorXd& v, const char* what) const {
  if (v.size() != n_)
    throw std::invalid_argument(std::string("BivectorField: dimension mismatch in ") + what);
}

Eigen::MatrixXd BivectorField::sharp_matrix(const Eigen::VectorXd& q) const {
  check_point(q, "sharp_matrix");
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n_, n_);
  for (const auto& [ij, poly] : upper_) {
    const double v = poly.eval(q);
    m(ij.first - 1, ij.second - 1) = v;
    m(ij.second - 1, ij.first - 1) = -v;
  }
  return m;
}

Eigen::VectorXd BivectorField::sharp(const Eigen::VectorXd& q,
                                     const Eigen::VectorXd& p) const {
  check_point(q, "sharp");
  check_point(p, "sharp");
  Eigen::VectorXd out = Eigen::VectorXd::Zero(n_);
  for (const auto& [ij, poly] : upper_) {
    const double v = poly.eval(q);
    out[ij.first - 1] += v * p[ij.second - 1];
    out[ij.second - 1] -= v * p[ij.first - 1];
  }
  return out;
}

Eigen::VectorXd BivectorField::sharp_derivative(const Eigen::VectorXd& q,
                                                const Eigen::VectorXd& u,
                                                const Eigen::VectorXd& p) const {
  check_point(q, "sharp_derivative");
  check_point(u, "sharp_derivative");
  check_point(p, "sharp_derivative");
  Eigen::VectorXd out = Eigen::VectorXd::Zero(n_);
  for (const auto& [ij, poly] : upper_) {
    double dv = 0.0;
    for (int k = 1; k <= n_; ++k) {
      if (u[k - 1] == 0.0) continue;
      dv += u[k - 1] * poly.partial(k).eval(q);
    }
    out[ij.first - 1] += dv * p[ij.second - 1];
    out[ij.second - 1] -= dv * p[ij.first - 1];
  }
  return out;
}

Jacobiator3Tensor BivectorField::jacobiator(const Eigen::VectorXd& q) const {
  check_point(q, "jacobiator");
  // Cache evaluated entries and partials once per point.
  Eigen::MatrixXd pi = sharp_matrix(q);
  std::vector<Eigen::MatrixXd> dpi(n_);  // dpi[k](i,j) = dpi_ij/dq_{k+1} at q
  for (int k = 0; k < n_; ++k) {
    dpi[k] = Eigen::MatrixXd::Zero(n_, n_);
    for (const auto& [ij, poly] : upper_) {
      const double v = poly.partial(k + 1).eval(q);
      dpi[k](ij.first - 1, ij.second - 1) = v;
      dpi[k](ij.second - 1, ij.first - 1) = -v;
    }
  }
  Jacobiator3Tensor jac(n_);
  for (int r = 1; r <= n_; ++r)
    for (int s = 1; s <= n_; ++s)
      for (int j = 1; j <= n_; ++j) {
        double sum = 0.0;
        for (int k = 0; k < n_; ++k)
          sum += dpi[k](r - 1, s - 1) * pi(k, j - 1) +
                 dpi[k](s - 1, j - 1) * pi(k, r - 1) +
                 dpi[k](j - 1, r - 1) * pi(k, s - 1);
        jac.set(r, s, j, sum);
      }
  return jac;
}

Eigen::VectorXd BivectorField::dpi_star(const Eigen::VectorXd& q,
                                        const Eigen::VectorXd& alpha,
                                        const Eigen::VectorXd& beta) const {
  check_point(q, "dpi_star");
  check_point(alpha, "dpi_star");
  check_point(beta, "dpi_star");
  Eigen::VectorXd out(n_);
  for (int u = 0; u < n_; ++u) {
    Eigen::VectorXd dir = Eigen::VectorXd::Zero(n_);
    dir[u] = 1.0;
    out[u] = -sharp_derivative(q, dir, beta).dot(alpha);
  }
  return out;
}

PoissonVerdict BivectorField::is_poisson(
    const std::vector<Eigen::VectorXd>& sample_points, double tol) const {
  if (sample_points.empty())
    throw std::invalid_argument("BivectorField::is_poisson: empty sample list");
  PoissonVerdict verdict;
  for (const auto& q : sample_points) {
    const double m = jacobiator(q).max_abs();
    if (m > verdict.max_abs_jacobiator) {
      verdict.max_abs_jacobiator = m;
      verdict.witness = q;
    }
  }
  verdict.poisson = verdict.max_abs_jacobiator <= tol;
  if (verdict.poisson) verdict.witness.reset();
  return verdict;
}

double BivectorField::coefficient_sup(const std::vector<Eigen::VectorXd>& points) const {
  double sup = 0.0;
  for (const auto& q : points)
    for (const auto& [ij, poly] : upper_)
      sup = std::max(sup, std::abs(poly.eval(q)));
  return sup;
}

BivectorField so3_bivector() {
  BivectorField pi(3);
  pi.set_entry(1, 2, Polynomial::variable(3, 3));
  pi.set_entry(2, 3, Polynomial::variable(3, 1));
  pi.set_entry(1, 3, -Polynomial::variable(3, 2));  // pi_31 = q2
  return pi;
}

BivectorField nonpoisson_bivector() {
  BivectorField pi(3);
  pi.set_entry(1, 2, Polynomial::variable(3, 3));
  pi.set_entry(2, 3, Polynomial::variable(3, 2));
  return pi;
}

BivectorField symplectic_r2() {
  BivectorField pi(2);
  pi.set_entry(1, 2, Polynomial::constant(2, 1.0));
  return pi;
}

BivectorField x_dx_dy() {
  BivectorField pi(2);
  pi.set_entry(1, 2, Polynomial::variable(2, 1));
  return pi;
}

}  // namespace cotpath
