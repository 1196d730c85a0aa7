// Discretized paths and loops in T*M = M x R^n on uniform grids.
// Periodic grids differentiate spectrally (Fourier differentiation matrix)
// and integrate with the rectangle rule; semi-free grids use 4th-order
// finite differences and composite Simpson.
#pragma once

#include <vector>

#include <Eigen/Core>

#include "cotpath/bivector.hpp"

namespace cotpath {

enum class GridKind { SemiFree, Periodic };

class Grid {
public:
  Grid(int intervals, GridKind kind);

  int intervals() const { return intervals_; }
  GridKind kind() const { return kind_; }
  // SemiFree: N+1 nodes t_i = i/N, i = 0..N. Periodic: N nodes, i = 0..N-1.
  int node_count() const {
    return kind_ == GridKind::SemiFree ? intervals_ + 1 : intervals_;
  }
  double node(int i) const { return static_cast<double>(i) / intervals_; }
  double spacing() const { return 1.0 / intervals_; }
  // Index of the node at t = 1/2 (exists since N is even).
  int half_node() const { return intervals_ / 2; }

  bool operator==(const Grid& o) const {
    return intervals_ == o.intervals_ && kind_ == o.kind_;
  }

private:
  int intervals_;
  GridKind kind_;
};

using NodeArray = std::vector<Eigen::VectorXd>;   // one vector in R^n per node
using ScalarArray = std::vector<double>;

// d/dt of per-node scalar samples.
ScalarArray differentiate(const ScalarArray& values, const Grid& grid);
// Componentwise d/dt of per-node vector samples.
NodeArray differentiate(const NodeArray& values, const Grid& grid);

double integrate(const ScalarArray& values, const Grid& grid);

struct PathSample {
  PathSample(const Grid& g, int dim) : grid(g), n(dim) {}
  Grid grid;
  int n;
  NodeArray q;  // points in M
  NodeArray p;  // covectors

  void validate() const;  // array lengths and semi-free endpoint conditions
};

struct TangentVector {
  TangentVector(const Grid& g, int dim) : grid(g), n(dim) {}
  Grid grid;
  int n;
  NodeArray dq;
  NodeArray dp;
  // For tangents built by marching the linearized equation on a loop:
  // mismatch between the marched delta_q after a full period and dq(0).
  double closure_error = 0.0;
};

// Node-wise q' - pi#_q(p); zero exactly on cotangent paths.
NodeArray cotangent_defect(const BivectorField& pi, const PathSample& a);
double cotangent_defect_max(const BivectorField& pi, const PathSample& a);
bool is_cotangent(const BivectorField& pi, const PathSample& a, double tol);

// omega(d1, d2) = integral of <dp1, dq2> - <dp2, dq1>.
double omega(const TangentVector& d1, const TangentVector& d2);

// The flat bump b(t) = exp(-m / (t (1-t))) on (0,1), zero outside; vanishes
// with all derivatives at the endpoints.
double flat_bump(double t, double sharpness = 1.0);
double flat_bump_derivative(double t, double sharpness = 1.0);

struct Reparametrization {
  ScalarArray psi;       // per-node values of psi
  ScalarArray psi_dot;   // per-node values of psi'
  double sharpness;      // bump exponent chosen to fit the range constraint
};

// Monotone psi : [0,1] -> (1/2 - eps, 1/2 + eps) with psi(1/2) = 1/2,
// psi'(1/2) = 1 and all derivatives vanishing at the endpoints.
Reparametrization bump_reparam(double eps, const Grid& grid);

// Periodic variant (not monotone): psi(t) = 1/2 + b(t)(t - 1/2)/b(1/2),
// smooth on S^1 because it is flat at t = 0, 1.
Reparametrization bump_reparam_periodic(double eps, const Grid& grid);

// max(1, ||p||_inf, sup of |pi_ij| over the path's base points); tolerance
// scale used throughout the verification suites.
double path_scale(const BivectorField& pi, const PathSample& a);

// CSV emission: columns t, q1..qn, p1..pn.
std::string path_to_csv(const PathSample& a);

}  // namespace cotpath
