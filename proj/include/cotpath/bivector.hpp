// Bivector fields on open subsets of R^n stored as skew matrices of
// polynomials (only entries with i < j are kept). Provides the anchor map
// pi#, its q-derivative, the Jacobiator 3-tensor and a sampling-based
// Poisson test.
#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "cotpath/polynomial.hpp"

namespace cotpath {

// Fully antisymmetric 3-tensor J_rsj evaluated at a point.
class Jacobiator3Tensor {
public:
  explicit Jacobiator3Tensor(int n)
      : n_(n), entries_(static_cast<size_t>(n) * n * n, 0.0) {}

  int n() const { return n_; }
  double operator()(int r, int s, int j) const {  // 1-based indices
    return entries_[idx(r, s, j)];
  }
  void set(int r, int s, int j, double v) { entries_[idx(r, s, j)] = v; }
  double max_abs() const;

private:
  size_t idx(int r, int s, int j) const {
    return (static_cast<size_t>(r - 1) * n_ + (s - 1)) * n_ + (j - 1);
  }
  int n_;
  std::vector<double> entries_;
};

struct PoissonVerdict {
  bool poisson = false;
  double max_abs_jacobiator = 0.0;
  std::optional<Eigen::VectorXd> witness;  // maximizing point when not Poisson
};

class BivectorField {
public:
  explicit BivectorField(int n);

  int n() const { return n_; }

  // Sets pi_ij for i < j (pi_ji = -pi_ij is implied).
  void set_entry(int i, int j, Polynomial poly);
  // Signed entry pi_ij for any i, j; zero polynomial on the diagonal.
  Polynomial entry(int i, int j) const;
  // Signed partial d(pi_ij)/dq_k.
  Polynomial entry_partial(int i, int j, int k) const;

  double entry_eval(int i, int j, const Eigen::VectorXd& q) const;
  double entry_partial_eval(int i, int j, int k, const Eigen::VectorXd& q) const;

  // Dense matrix of pi# at q: (pi# p)_s = sum_j pi_sj(q) p_j.
  Eigen::MatrixXd sharp_matrix(const Eigen::VectorXd& q) const;

  // Anchor map pi#_q(p).
  Eigen::VectorXd sharp(const Eigen::VectorXd& q, const Eigen::VectorXd& p) const;

  // Derivative of q -> pi#_q(p) in the direction u.
  Eigen::VectorXd sharp_derivative(const Eigen::VectorXd& q,
                                   const Eigen::VectorXd& u,
                                   const Eigen::VectorXd& p) const;

  // J_rsj(q) = sum_k (dpi_rs/dq_k pi_kj + dpi_sj/dq_k pi_kr + dpi_jr/dq_k pi_ks).
  Jacobiator3Tensor jacobiator(const Eigen::VectorXd& q) const;

  // The bilinear map defined by <dpi_star(alpha,beta), u> =
  // -<dpi#/dq(u)(beta), alpha>.
  Eigen::VectorXd dpi_star(const Eigen::VectorXd& q, const Eigen::VectorXd& alpha,
                           const Eigen::VectorXd& beta) const;

  PoissonVerdict is_poisson(const std::vector<Eigen::VectorXd>& sample_points,
                            double tol = 1e-9) const;

  // Sup of |pi_ij| over a set of points, used to build tolerance scales.
  double coefficient_sup(const std::vector<Eigen::VectorXd>& points) const;

private:
  void check_point(const Eigen::VectorXd& v, const char* what) const;

  int n_;
  std::map<std::pair<int, int>, Polynomial> upper_;  // keys i < j
};

// Built-in example structures used throughout the tests and fixtures.
BivectorField so3_bivector();          // pi_12=q3, pi_23=q1, pi_31=q2 on R^3
BivectorField nonpoisson_bivector();   // pi_12=q3, pi_23=q2 on R^3
BivectorField symplectic_r2();         // pi_12=1 on R^2
BivectorField x_dx_dy();               // pi_12=q1 on R^2

}  // namespace cotpath
