// Local functionals of first-order jets F(a) = integral of f(t,q,q',p,p'),
// their variational gradients with boundary covectors, and the named
// families used by the verification suites (constraint, Casimir and
// total-derivative functionals).
#pragma once

#include <functional>
#include <string>

#include <Eigen/Core>

#include "cotpath/bivector.hpp"
#include "cotpath/pathspace.hpp"

namespace cotpath {

struct Jet {
  double t = 0.0;
  Eigen::VectorXd q, qdot, p, pdot;
};

class LocalFunctional {
public:
  using Integrand = std::function<double(const Jet&)>;
  using SlotGradient = std::function<Eigen::VectorXd(const Jet&)>;

  // validate=true checks the slot gradients against central finite
  // differences at a handful of seeded random jets.
  LocalFunctional(int n, Integrand f, SlotGradient df_q, SlotGradient df_qdot,
                  SlotGradient df_p, SlotGradient df_pdot, std::string label,
                  bool validate = true);

  static LocalFunctional zero(int n);

  int n() const { return n_; }
  const std::string& label() const { return label_; }

  double integrand(const Jet& jet) const { return f_(jet); }
  Eigen::VectorXd slot_q(const Jet& jet) const { return df_q_(jet); }
  Eigen::VectorXd slot_qdot(const Jet& jet) const { return df_qdot_(jet); }
  Eigen::VectorXd slot_p(const Jet& jet) const { return df_p_(jet); }
  Eigen::VectorXd slot_pdot(const Jet& jet) const { return df_pdot_(jet); }

  // F + G and scalar multiples, for linearity checks.
  LocalFunctional operator+(const LocalFunctional& other) const;
  LocalFunctional scaled(double lambda) const;

private:
  int n_;
  Integrand f_;
  SlotGradient df_q_, df_qdot_, df_p_, df_pdot_;
  std::string label_;
};

struct GradientResult {
  NodeArray A;              // pairs with delta_q
  NodeArray B;              // pairs with delta_p
  Eigen::VectorXd alpha0;   // boundary covector at t=0 (zero for loops)
  Eigen::VectorXd alpha1;   // boundary covector at t=1 (zero for loops)
};

// Per-node jets of a sampled path (q', p' via grid differentiation).
std::vector<Jet> path_jets(const PathSample& a);

double evaluate(const LocalFunctional& F, const PathSample& a);

// A = df/dq - d/dt df/dq', B = df/dp - d/dt df/dp'; alpha = df/dq' at the
// endpoint jets for semi-free grids, zero for periodic grids.
GradientResult gradient(const LocalFunctional& F, const PathSample& a);

// <grad F, d> including boundary terms on semi-free grids.
double gradient_pairing(const GradientResult& g, const TangentVector& d,
                        const Grid& grid);

// Central-difference directional derivative with two Richardson steps over
// eps = 1e-3, 5e-4, 2.5e-4.
double directional_derivative(const LocalFunctional& F, const PathSample& a,
                              const TangentVector& d);

// A scalar profile known at the grid nodes; jets carry only t, so integrands
// built from profiles look their value up by node index.
class NodeProfile {
public:
  NodeProfile(ScalarArray values, const Grid& grid);
  double at_time(double t) const;  // t must be (numerically) a node time
  const ScalarArray& values() const { return values_; }
  const Grid& grid() const { return grid_; }

private:
  ScalarArray values_;
  Grid grid_;
};

// F_{f,s}(a) = integral of f(t) (sum_j pi_sj(q) p_j - q_s').
// Semi-free profiles must vanish at the endpoints.
LocalFunctional constraint_functional(const BivectorField& pi, int s,
                                      const NodeProfile& profile);

// F(a) = integral of <grad h(q), q'> = h(q(1)) - h(q(0)).
LocalFunctional casimir_functional(const Polynomial& h);

// f = d/dt [phi(t) h(q)] with phi(0) = phi(1) = 0; F_f vanishes on every
// semi-free path although f is not zero.
LocalFunctional total_derivative_functional(std::function<double(double)> phi,
                                            std::function<double(double)> dphi,
                                            const Polynomial& h);

}  // namespace cotpath
