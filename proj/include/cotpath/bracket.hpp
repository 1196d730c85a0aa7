// The canonical Lie bracket on local functionals, the closed-form bracket
// of two constraint functionals, and the Dirac-family limit experiment that
// extracts the Jacobiator pairing from brackets on shot cotangent paths.
#pragma once

#include <vector>

#include "cotpath/functionals.hpp"

namespace cotpath {

// {F,G}(a) = integral of <A_F, B_G> - <A_G, B_F>.
double lie_bracket(const LocalFunctional& F, const LocalFunctional& G,
                   const PathSample& a);

// Direct evaluation (no gradients) of
//   integral f g sum_k dpi_rs/dq_k (q_k' - (pi# p)_k)
// - integral f g sum_j J_rsj p_j.
double constraint_bracket_closed_form(const BivectorField& pi,
                                      const NodeProfile& f_profile, int r,
                                      const NodeProfile& g_profile, int s,
                                      const PathSample& a);

// Normalized flat bump supported in [center - 1/d, center + 1/d] with unit
// integral under the grid quadrature.
ScalarArray dirac_family(int d, double center, const Grid& grid);

// Smooth plateau equal to 1 on [3/8, 5/8], vanishing outside [1/4, 3/4].
ScalarArray plateau_profile(const Grid& grid);

// Shoots a cotangent path through (q, p) at t = 1/2 and returns
// {F_{f_d, r}, G_{g, s}}(a) for each d in d_list, g the plateau profile.
std::vector<double> dirac_limit_bracket(const BivectorField& pi, int r, int s,
                                        const Eigen::VectorXd& q,
                                        const Eigen::VectorXd& p,
                                        const std::vector<int>& d_list,
                                        const Grid& grid, double eps = 0.2);

}  // namespace cotpath
