#include "cotpath/pathspace.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace cotpath {

namespace {
constexpr double kPi = std::numbers::pi;
}

Grid::Grid(int intervals, GridKind kind) : intervals_(intervals), kind_(kind) {
  if (intervals < 8 || intervals % 2 != 0)
    throw std::invalid_argument("Grid: N must be even and >= 8");
}

ScalarArray differentiate(const ScalarArray& values, const Grid& grid) {
  const int m = grid.node_count();
  if (static_cast<int>(values.size()) != m)
    throw std::invalid_argument("differentiate: length mismatch");
  ScalarArray out(m, 0.0);
  if (grid.kind() == GridKind::Periodic) {
    // Fourier differentiation matrix row: d_k = pi (-1)^k cot(pi k / N).
    const int N = grid.intervals();
    ScalarArray row(N, 0.0);
    for (int k = 1; k < N; ++k)
      row[k] = kPi * ((k % 2 == 0) ? 1.0 : -1.0) / std::tan(kPi * k / N);
    for (int i = 0; i < N; ++i) {
      // Circulant antisymmetric matrix with D_{i,i+k} = -row[k].
      double acc = 0.0;
      for (int k = 1; k < N; ++k) acc += row[k] * values[(i + k) % N];
      out[i] = -acc;
    }
    return out;
  }
  const double h = grid.spacing();
  const int N = grid.intervals();
  auto v = [&](int i) { return values[i]; };
  out[0] = (-25 * v(0) + 48 * v(1) - 36 * v(2) + 16 * v(3) - 3 * v(4)) / (12 * h);
  out[1] = (-3 * v(0) - 10 * v(1) + 18 * v(2) - 6 * v(3) + v(4)) / (12 * h);
  for (int i = 2; i <= N - 2; ++i)
    out[i] = (v(i - 2) - 8 * v(i - 1) + 8 * v(i + 1) - v(i + 2)) / (12 * h);
  out[N - 1] =
      (3 * v(N) + 10 * v(N - 1) - 18 * v(N - 2) + 6 * v(N - 3) - v(N - 4)) / (12 * h);
  out[N] = (25 * v(N) - 48 * v(N - 1) + 36 * v(N - 2) - 16 * v(N - 3) + 3 * v(N - 4)) /
           (12 * h);
  return out;
}

NodeArray differentiate(const NodeArray& values, const Grid& grid) {
  const int m = grid.node_count();
  if (static_cast<int>(values.size()) != m)
    throw std::invalid_argument("differentiate: length mismatch");
  const int n = static_cast<int>(values.front().size());
  NodeArray out(m, Eigen::VectorXd::Zero(n));
  ScalarArray comp(m);
  for (int c = 0; c < n; ++c) {
    for (int i = 0; i < m; ++i) comp[i] = values[i][c];
    ScalarArray d = differentiate(comp, grid);
    for (int i = 0; i < m; ++i) out[i][c] = d[i];
  }
  return out;
}

double integrate(const ScalarArray& values, const Grid& grid) {
  const int m = grid.node_count();
  if (static_cast<int>(values.size()) != m)
    throw std::invalid_argument("integrate: length mismatch");
  if (grid.kind() == GridKind::Periodic) {
    double acc = 0.0;
    for (double v : values) acc += v;
    return acc / grid.intervals();
  }
  const int N = grid.intervals();
  const double h = grid.spacing();
  double acc = values[0] + values[N];
  for (int i = 1; i < N; ++i) acc += (i % 2 == 1 ? 4.0 : 2.0) * values[i];
  return acc * h / 3.0;
}

void PathSample::validate() const {
  const int m = grid.node_count();
  if (static_cast<int>(q.size()) != m || static_cast<int>(p.size()) != m)
    throw std::invalid_argument("PathSample: array length mismatch");
  for (const auto& v : q)
    if (v.size() != n) throw std::invalid_argument("PathSample: q dimension mismatch");
  for (const auto& v : p)
    if (v.size() != n) throw std::invalid_argument("PathSample: p dimension mismatch");
  if (grid.kind() == GridKind::SemiFree) {
    if (p.front().norm() != 0.0 || p.back().norm() != 0.0)
      throw std::invalid_argument("PathSample: semi-free paths need p(0) = p(1) = 0");
  }
}

NodeArray cotangent_defect(const BivectorField& pi, const PathSample& a) {
  if (pi.n() != a.n)
    throw std::invalid_argument("cotangent_defect: dimension mismatch");
  NodeArray qdot = differentiate(a.q, a.grid);
  NodeArray out(a.q.size());
  for (size_t i = 0; i < a.q.size(); ++i)
    out[i] = qdot[i] - pi.sharp(a.q[i], a.p[i]);
  return out;
}

double cotangent_defect_max(const BivectorField& pi, const PathSample& a) {
  double m = 0.0;
  for (const auto& v : cotangent_defect(pi, a))
    m = std::max(m, v.lpNorm<Eigen::Infinity>());
  return m;
}

bool is_cotangent(const BivectorField& pi, const PathSample& a, double tol) {
  return cotangent_defect_max(pi, a) <= tol;
}

double omega(const TangentVector& d1, const TangentVector& d2) {
  if (!(d1.grid == d2.grid) || d1.n != d2.n)
    throw std::invalid_argument("omega: grid or dimension mismatch");
  const int m = d1.grid.node_count();
  ScalarArray integrand(m);
  for (int i = 0; i < m; ++i)
    integrand[i] = d1.dp[i].dot(d2.dq[i]) - d2.dp[i].dot(d1.dq[i]);
  return integrate(integrand, d1.grid);
}

double flat_bump(double t, double sharpness) {
  if (t <= 0.0 || t >= 1.0) return 0.0;
  return std::exp(-sharpness / (t * (1.0 - t)));
}

double flat_bump_derivative(double t, double sharpness) {
  if (t <= 0.0 || t >= 1.0) return 0.0;
  const double s = t * (1.0 - t);
  return flat_bump(t, sharpness) * sharpness * (1.0 - 2.0 * t) / (s * s);
}

namespace {

// Cumulative integral of the flat bump at the grid nodes, by composite
// Simpson on a refined subgrid.
ScalarArray bump_cumulative(const Grid& grid, double sharpness, double* total) {
  const int nsub = 32;  // sub-intervals per grid interval, even
  const int m = grid.node_count();
  ScalarArray cum(m, 0.0);
  double acc = 0.0;
  const double h = grid.spacing() / nsub;
  const int last_node = (grid.kind() == GridKind::SemiFree) ? m - 1 : m;
  for (int i = 0; i < last_node; ++i) {
    const double t0 = grid.node(i);
    double piece = 0.0;
    for (int k = 0; k < nsub; k += 2) {
      const double a = t0 + k * h;
      piece += h / 3.0 *
               (flat_bump(a, sharpness) + 4.0 * flat_bump(a + h, sharpness) +
                flat_bump(a + 2 * h, sharpness));
    }
    acc += piece;
    if (i + 1 < m) cum[i + 1] = acc;
  }
  *total = acc;
  return cum;
}

}  // namespace

Reparametrization bump_reparam(double eps, const Grid& grid) {
  if (!(eps > 0.0 && eps < 0.5))
    throw std::invalid_argument("bump_reparam: need 0 < eps < 1/2");
  // Sharpen the bump until the range of psi fits strictly inside
  // (1/2 - eps, 1/2 + eps). Range half-width is (B/2) / b(1/2).
  double m = 1.0;
  double total = 0.0;
  ScalarArray cum;
  for (;;) {
    cum = bump_cumulative(grid, m, &total);
    const double halfwidth = 0.5 * total / flat_bump(0.5, m);
    if (halfwidth < 0.999 * eps) break;
    m *= 2.0;
    if (m > 1e6) throw std::runtime_error("bump_reparam: sharpening failed");
  }
  const double b_half = flat_bump(0.5, m);
  Reparametrization r;
  r.sharpness = m;
  const int nodes = grid.node_count();
  r.psi.resize(nodes);
  r.psi_dot.resize(nodes);
  for (int i = 0; i < nodes; ++i) {
    const double t = grid.node(i);
    r.psi[i] = 0.5 + (cum[i] - 0.5 * total) / b_half;
    r.psi_dot[i] = flat_bump(t, m) / b_half;
  }
  return r;
}

Reparametrization bump_reparam_periodic(double eps, const Grid& grid) {
  if (!(eps > 0.0 && eps < 0.5))
    throw std::invalid_argument("bump_reparam_periodic: need 0 < eps < 1/2");
  // psi(t) = 1/2 + b(t)(t - 1/2)/b(1/2); sharpen until max |psi - 1/2| < eps.
  double m = 1.0;
  for (;;) {
    double peak = 0.0;
    for (int k = 1; k < 4096; ++k) {
      const double t = k / 4096.0;
      peak = std::max(peak, std::abs(flat_bump(t, m) * (t - 0.5)));
    }
    if (peak / flat_bump(0.5, m) < 0.999 * eps) break;
    m *= 2.0;
    if (m > 1e8) throw std::runtime_error("bump_reparam_periodic: sharpening failed");
  }
  const double b_half = flat_bump(0.5, m);
  Reparametrization r;
  r.sharpness = m;
  const int nodes = grid.node_count();
  r.psi.resize(nodes);
  r.psi_dot.resize(nodes);
  for (int i = 0; i < nodes; ++i) {
    const double t = grid.node(i);
    r.psi[i] = 0.5 + flat_bump(t, m) * (t - 0.5) / b_half;
    r.psi_dot[i] =
        (flat_bump_derivative(t, m) * (t - 0.5) + flat_bump(t, m)) / b_half;
  }
  return r;
}

double path_scale(const BivectorField& pi, const PathSample& a) {
  double scale = 1.0;
  for (const auto& v : a.p) scale = std::max(scale, v.lpNorm<Eigen::Infinity>());
  scale = std::max(scale, pi.coefficient_sup(a.q));
  return scale;
}

std::string path_to_csv(const PathSample& a) {
  std::ostringstream os;
  os.precision(17);
  os << "t";
  for (int c = 1; c <= a.n; ++c) os << ",q" << c;
  for (int c = 1; c <= a.n; ++c) os << ",p" << c;
  os << "\n";
  for (int i = 0; i < a.grid.node_count(); ++i) {
    os << a.grid.node(i);
    for (int c = 0; c < a.n; ++c) os << "," << a.q[i][c];
    for (int c = 0; c < a.n; ++c) os << "," << a.p[i][c];
    os << "\n";
  }
  return os.str();
}

}  // namespace cotpath
