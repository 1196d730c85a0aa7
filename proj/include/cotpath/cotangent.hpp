// Constructions of cotangent paths and loops: shooting through a prescribed
// point, linearized tangent flows, the omega vanishing test on cotangent
// loops, and the tangent-cone probe for pi = x d/dx ^ d/dy.
#pragma once

#include <cstdint>
#include <vector>

#include "cotpath/pathspace.hpp"

namespace cotpath {

struct ShootResult {
  ShootResult(const Grid& g, int n) : path(g, n) {}
  PathSample path;
  double defect_max = 0.0;
  double through_point_error = 0.0;
};

// Integrates y' = pi#_y(p) (p fixed) on a window around t = 1/2 and
// reparametrizes so the result is a semi-free path or a loop with
// a(1/2) = (q, p). RK4 with fixed step window/(8N) plus one Richardson
// halving for the error estimate; throws on blow-up.
ShootResult shoot_through(const BivectorField& pi, const Eigen::VectorXd& q,
                          const Eigen::VectorXd& p, double eps, const Grid& grid);

// Solves delta_q' = dpi#/dq(delta_q)(p) + pi#_q(delta_p) along a cotangent
// path with delta_q(0) = dq0; returns (delta_q, dp).
TangentVector linearized_tangent(const BivectorField& pi, const PathSample& a,
                                 const NodeArray& dp, const Eigen::VectorXd& dq0,
                                 double cotangent_tol = 1e-5);

// Max-norm residual of the linearized cotangent equation for a candidate
// tangent vector along a.
double linearized_residual(const BivectorField& pi, const PathSample& a,
                           const TangentVector& d);

struct OmegaTestResult {
  double max_abs_omega = 0.0;
  int pairs_used = 0;
  int pairs_rejected = 0;  // runs whose delta_q failed to close up
};

// Generates tangent pairs to a cotangent loop via linearized_tangent with
// random periodic dp (zero-mean Fourier modes) and returns max |omega|.
OmegaTestResult lagrangian_omega_test(const BivectorField& pi,
                                      const PathSample& a, int trials,
                                      std::uint64_t seed);

struct TangentConeProbeResult {
  double res_u = 0.0;
  double res_v = 0.0;
  double res_uv = 0.0;
  double holonomy_uv = 0.0;  // loop integral of b for the u+v candidate
  bool converged = true;
};

// For pi = x d/dx ^ d/dy and the constant zero loop c: tries to correct
// c + eps*w into a cotangent loop for w in {u, v, u+v} using periodic
// Fourier corrections of amplitude <= eps^2 (projected Gauss-Newton);
// reports minimal defect residuals.
TangentConeProbeResult tangent_cone_probe(double eps, int modes, const Grid& grid);

}  // namespace cotpath
