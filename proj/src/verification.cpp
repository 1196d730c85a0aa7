#include "cotpath/verification.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

namespace cotpath {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}
}  // namespace

Check check_le(std::string name, double value, double threshold) {
  return Check{std::move(name), value, threshold, "<=", value <= threshold};
}

Check check_ge(std::string name, double value, double threshold) {
  return Check{std::move(name), value, threshold, ">=", value >= threshold};
}

bool VerificationReport::overall() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

nlohmann::json VerificationReport::to_json() const {
  nlohmann::json doc;
  doc["schema"] = 1;
  doc["command"] = command;
  doc["config"] = config;
  doc["seed"] = seed;
  doc["checks"] = nlohmann::json::array();
  for (const auto& c : checks)
    doc["checks"].push_back({{"name", c.name},
                             {"value", c.value},
                             {"tolerance", c.threshold},
                             {"relation", c.relation},
                             {"pass", c.pass}});
  doc["warnings"] = warnings;
  doc["overall"] = overall();
  return doc;
}

std::string VerificationReport::to_text() const {
  std::ostringstream os;
  os << "== " << command << " (seed " << seed << ")\n";
  for (const auto& c : checks)
    os << (c.pass ? "[PASS] " : "[FAIL] ") << c.name << ": value "
       << fmt_double(c.value) << " " << c.relation << " " << fmt_double(c.threshold)
       << "\n";
  for (const auto& w : warnings) os << "[WARN] " << w << "\n";
  os << (overall() ? "OVERALL PASS" : "OVERALL FAIL") << "\n";
  return os.str();
}

// --- generators -------------------------------------------------------------

ScalarArray flat_bump_cdf(const Grid& grid) {
  const int nsub = 32;
  const int m = grid.node_count();
  const int last = (grid.kind() == GridKind::SemiFree) ? m - 1 : m;
  ScalarArray cum(m, 0.0);
  double acc = 0.0;
  const double h = grid.spacing() / nsub;
  for (int i = 0; i < last; ++i) {
    const double t0 = grid.node(i);
    for (int k = 0; k < nsub; k += 2)
      acc += h / 3.0 *
             (flat_bump(t0 + k * h) + 4.0 * flat_bump(t0 + (k + 1) * h) +
              flat_bump(t0 + (k + 2) * h));
    if (i + 1 < m) cum[i + 1] = acc;
  }
  for (double& v : cum) v /= acc;
  return cum;
}

PathSample random_periodic_path(int n, const Grid& grid, std::mt19937_64& rng,
                                double amplitude) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  const int m = grid.node_count();
  PathSample a(grid, n);
  a.q.assign(m, Eigen::VectorXd::Zero(n));
  a.p.assign(m, Eigen::VectorXd::Zero(n));
  for (int c = 0; c < n; ++c) {
    const double q0 = unif(rng), p0 = unif(rng);
    for (int i = 0; i < m; ++i) {
      a.q[i][c] = q0;
      a.p[i][c] = p0;
    }
    for (int k = 1; k <= 3; ++k) {
      const double qa = amplitude * gauss(rng) / (k * k);
      const double qb = amplitude * gauss(rng) / (k * k);
      const double pa = amplitude * gauss(rng) / (k * k);
      const double pb = amplitude * gauss(rng) / (k * k);
      for (int i = 0; i < m; ++i) {
        const double th = kTwoPi * k * grid.node(i);
        a.q[i][c] += qa * std::cos(th) + qb * std::sin(th);
        a.p[i][c] += pa * std::cos(th) + pb * std::sin(th);
      }
    }
  }
  return a;
}

PathSample random_semifree_path(int n, const Grid& grid, std::mt19937_64& rng,
                                double amplitude) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  const int m = grid.node_count();
  const ScalarArray cdf = flat_bump_cdf(grid);
  const double b_half = flat_bump(0.5);
  PathSample a(grid, n);
  a.q.assign(m, Eigen::VectorXd::Zero(n));
  a.p.assign(m, Eigen::VectorXd::Zero(n));
  for (int c = 0; c < n; ++c) {
    const double q0 = unif(rng);
    for (int i = 0; i < m; ++i) a.q[i][c] = q0;
    for (int k = 1; k <= 3; ++k) {
      const double qa = amplitude * gauss(rng) / (k * k);
      const double pa = amplitude * gauss(rng) / (k * k);
      const double pb = amplitude * gauss(rng) / (k * k);
      for (int i = 0; i < m; ++i) {
        const double th = kTwoPi * k * cdf[i];
        const double env = flat_bump(grid.node(i)) / b_half;
        a.q[i][c] += qa * std::sin(th);
        a.p[i][c] += env * (pa * std::cos(th) + pb * std::sin(th));
      }
    }
    a.p[0][c] = 0.0;       // the envelope already vanishes there; make it exact
    a.p[m - 1][c] = 0.0;
  }
  return a;
}

TangentVector random_path_tangent(int n, const Grid& grid, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  const int m = grid.node_count();
  TangentVector d(grid, n);
  d.dq.assign(m, Eigen::VectorXd::Zero(n));
  d.dp.assign(m, Eigen::VectorXd::Zero(n));
  if (grid.kind() == GridKind::Periodic) {
    for (int c = 0; c < n; ++c) {
      const double c0 = gauss(rng);
      for (int i = 0; i < m; ++i) d.dq[i][c] = c0;
      for (int k = 1; k <= 3; ++k) {
        const double qa = gauss(rng) / (k * k), qb = gauss(rng) / (k * k);
        const double pa = gauss(rng) / (k * k), pb = gauss(rng) / (k * k);
        for (int i = 0; i < m; ++i) {
          const double th = kTwoPi * k * grid.node(i);
          d.dq[i][c] += qa * std::cos(th) + qb * std::sin(th);
          d.dp[i][c] += pa * std::cos(th) + pb * std::sin(th);
        }
      }
    }
    return d;
  }
  // Semi-free: delta_q' and delta_p flat at the endpoints.
  const ScalarArray cdf = flat_bump_cdf(grid);
  const double b_half = flat_bump(0.5);
  for (int c = 0; c < n; ++c) {
    const double c0 = gauss(rng);
    for (int i = 0; i < m; ++i) d.dq[i][c] = c0;
    for (int k = 1; k <= 3; ++k) {
      const double qa = gauss(rng) / (k * k);
      const double pa = gauss(rng) / (k * k), pb = gauss(rng) / (k * k);
      for (int i = 0; i < m; ++i) {
        const double th = kTwoPi * k * cdf[i];
        const double env = flat_bump(grid.node(i)) / b_half;
        d.dq[i][c] += qa * std::sin(th);
        d.dp[i][c] += env * (pa * std::cos(th) + pb * std::sin(th));
      }
    }
    d.dp[0][c] = 0.0;
    d.dp[m - 1][c] = 0.0;
  }
  return d;
}

ScalarArray random_profile(const Grid& grid, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  const int m = grid.node_count();
  ScalarArray f(m, 0.0);
  if (grid.kind() == GridKind::Periodic) {
    const double c0 = gauss(rng);
    for (int i = 0; i < m; ++i) f[i] = c0;
    for (int k = 1; k <= 3; ++k) {
      const double a = gauss(rng) / (k * k), b = gauss(rng) / (k * k);
      for (int i = 0; i < m; ++i) {
        const double th = kTwoPi * k * grid.node(i);
        f[i] += a * std::cos(th) + b * std::sin(th);
      }
    }
  } else {
    // Low-degree polynomial vanishing at both endpoints: the 4th-order
    // difference stencils applied to it inside gradients are exact, so the
    // profile contributes no differentiation error of its own. The quadratic
    // factor is kept away from zero on [0,1] so the sup normalization below
    // cannot inflate the coefficients (and with them the quadrature error).
    std::uniform_real_distribution<double> unif(-0.45, 0.45);
    const double sign = (rng() & 1u) ? 1.0 : -1.0;
    const double alpha = unif(rng), beta = unif(rng);
    for (int i = 0; i < m; ++i) {
      const double t = grid.node(i);
      f[i] = sign * t * (1.0 - t) * (1.0 + alpha * t + beta * t * t);
    }
  }
  // Normalize to unit sup norm so tolerances stated in units of scale apply.
  double sup = 0.0;
  for (double v : f) sup = std::max(sup, std::abs(v));
  if (sup > 0.0)
    for (double& v : f) v /= sup;
  return f;
}

BivectorField random_bivector(int n, int degree, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  std::uniform_int_distribution<int> pick(0, n - 1);
  BivectorField pi(n);
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) {
      Polynomial poly = Polynomial::constant(n, unif(rng));
      for (int d = 0; d < degree; ++d) {
        Polynomial::Exponents exp(n, 0);
        int total = 0;
        for (int k = 0; k < d + 1 && total < degree; ++k) {
          exp[pick(rng)] += 1;
          ++total;
        }
        poly = poly + Polynomial::monomial(n, unif(rng), exp);
      }
      pi.set_entry(i, j, poly);
    }
  return pi;
}

LocalFunctional random_functional(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  auto rand_vec = [&]() {
    return Eigen::VectorXd::NullaryExpr(n, [&](int) { return gauss(rng); }).eval();
  };
  Eigen::MatrixXd M(n, n), S(n, n), R(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      M(i, j) = gauss(rng);
      S(i, j) = gauss(rng);
      R(i, j) = gauss(rng);
    }
  M = ((M + M.transpose()) / 2).eval();
  S = ((S + S.transpose()) / 2).eval();
  const Eigen::VectorXd c1 = rand_vec(), c2 = rand_vec(), c3 = rand_vec(),
                        c4 = rand_vec();
  auto f = [=](const Jet& j) {
    return 0.5 * j.q.dot(M * j.q) + 0.5 * j.p.dot(S * j.p) + c1.dot(j.qdot) +
           c2.dot(j.pdot) + j.p.dot(R * j.qdot) + c3.dot(j.q) * c4.dot(j.pdot);
  };
  auto df_q = [=](const Jet& j) { return (M * j.q + c3 * c4.dot(j.pdot)).eval(); };
  auto df_qdot = [=](const Jet& j) { return (c1 + R.transpose() * j.p).eval(); };
  auto df_p = [=](const Jet& j) { return (S * j.p + R * j.qdot).eval(); };
  auto df_pdot = [=](const Jet& j) { return (c2 + c4 * c3.dot(j.q)).eval(); };
  return LocalFunctional(n, f, df_q, df_qdot, df_p, df_pdot, "random", true);
}

// --- suites -----------------------------------------------------------------

VerificationReport run_jacobi(const BivectorField& pi, int samples, double tol,
                              std::uint64_t seed) {
  VerificationReport report;
  report.command = "jacobi";
  report.seed = seed;
  report.config = {{"n", pi.n()}, {"samples", samples}, {"tol", tol}};
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  std::vector<Eigen::VectorXd> points;
  points.reserve(samples);
  for (int k = 0; k < samples; ++k)
    points.push_back(
        Eigen::VectorXd::NullaryExpr(pi.n(), [&](int) { return unif(rng); }));
  const PoissonVerdict verdict = pi.is_poisson(points, tol);
  report.checks.push_back(
      check_le("max_abs_jacobiator", verdict.max_abs_jacobiator, tol));
  report.config["poisson"] = verdict.poisson;
  if (verdict.witness) {
    std::vector<double> w(verdict.witness->data(),
                          verdict.witness->data() + verdict.witness->size());
    report.config["witness"] = w;
  }
  return report;
}

VerificationReport run_coisotropy(const BivectorField& pi,
                                  const CoisotropyOptions& opt, std::uint64_t seed,
                                  std::vector<BracketRecord>* records) {
  VerificationReport report;
  report.command = "coisotropy";
  report.seed = seed;
  report.config = {{"n", pi.n()},
                   {"paths", opt.paths},
                   {"grid_n", opt.grid_n},
                   {"kind", opt.kind == GridKind::SemiFree ? "semifree" : "periodic"},
                   {"tol", opt.tol},
                   {"shoot_eps", opt.shoot_eps},
                   {"profile_pairs", opt.profile_pairs}};
  const Grid grid(opt.grid_n, opt.kind);
  const int n = pi.n();
  std::mt19937_64 rng(seed);
  // Through-point draws live in a moderate box: the reparametrized shot path
  // is resolved to the stated per-node tolerances at the default N.
  std::uniform_real_distribution<double> unif(-0.75, 0.75);

  double worst_defect = 0.0;
  double worst_through = 0.0;
  double worst_bracket = 0.0;       // |{F,G}| / scale over all pairs
  double worst_closed_form = 0.0;   // |quadrature - closed form| / max(1, |v|)
  double worst_casimir = 0.0;       // |{casimir, F}| / scale
  int shot = 0;
  for (int path_id = 0; path_id < opt.paths; ++path_id) {
    const Eigen::VectorXd q0 =
        Eigen::VectorXd::NullaryExpr(n, [&](int) { return unif(rng); });
    const Eigen::VectorXd p0 =
        Eigen::VectorXd::NullaryExpr(n, [&](int) { return unif(rng); });
    ShootResult sr(grid, n);
    try {
      sr = shoot_through(pi, q0, p0, opt.shoot_eps, grid);
    } catch (const std::exception& e) {
      report.warnings.push_back("path " + std::to_string(path_id) +
                                " excluded: " + e.what());
      continue;
    }
    ++shot;
    const double scale = path_scale(pi, sr.path);
    worst_defect = std::max(worst_defect, sr.defect_max / scale);
    worst_through = std::max(worst_through, sr.through_point_error);

    const Polynomial casimir_h =
        Polynomial::variable(n, 1) * Polynomial::variable(n, 1);
    const LocalFunctional cas = casimir_functional(casimir_h);
    for (int pp = 0; pp < opt.profile_pairs; ++pp) {
      NodeProfile fp(random_profile(grid, rng), grid);
      NodeProfile gp(random_profile(grid, rng), grid);
      for (int r = 1; r <= n; ++r)
        for (int s = r + 1; s <= n; ++s) {
          const LocalFunctional F = constraint_functional(pi, r, fp);
          const LocalFunctional G = constraint_functional(pi, s, gp);
          const double b = lie_bracket(F, G, sr.path);
          const double cf =
              constraint_bracket_closed_form(pi, fp, r, gp, s, sr.path);
          worst_bracket = std::max(worst_bracket, std::abs(b) / scale);
          worst_closed_form = std::max(
              worst_closed_form, std::abs(b - cf) / std::max(1.0, std::abs(b)));
          if (records)
            records->push_back(BracketRecord{path_id, r, s, b, cf});
          if (pp == 0 && r == 1)
            worst_casimir = std::max(
                worst_casimir, std::abs(lie_bracket(cas, G, sr.path)) / scale);
        }
    }
  }
  report.config["paths_shot"] = shot;
  report.checks.push_back(check_le("cotangent_defect/scale", worst_defect, 1e-6));
  report.checks.push_back(check_le("through_point_error", worst_through, 1e-6));
  report.checks.push_back(
      check_le("max_constraint_bracket/scale", worst_bracket, opt.tol));
  report.checks.push_back(
      check_le("closed_form_mismatch", worst_closed_form, opt.tol));
  report.checks.push_back(check_le("casimir_bracket/scale", worst_casimir, 1e-6));
  return report;
}

VerificationReport run_counterexample(double eps, int modes, int grid_n) {
  VerificationReport report;
  report.command = "counterexample";
  report.config = {{"eps", eps}, {"modes", modes}, {"grid_n", grid_n}};
  const Grid grid(grid_n, GridKind::Periodic);
  const TangentConeProbeResult probe = tangent_cone_probe(eps, modes, grid);
  report.config["converged"] = probe.converged;
  report.checks.push_back(check_le("res_u", probe.res_u, 1e-9));
  report.checks.push_back(check_le("res_v", probe.res_v, 1e-9));
  report.checks.push_back(check_ge("res_uv", probe.res_uv, 0.4 * eps * eps));
  report.checks.push_back(
      check_le("holonomy_uv_error", std::abs(probe.holonomy_uv - eps), eps * eps));
  return report;
}

VerificationReport run_gradient_check(const BivectorField& pi, int trials,
                                      GridKind kind, int grid_n,
                                      std::uint64_t seed) {
  VerificationReport report;
  report.command = "gradient-check";
  report.seed = seed;
  report.config = {{"n", pi.n()},
                   {"trials", trials},
                   {"grid_n", grid_n},
                   {"kind", kind == GridKind::SemiFree ? "semifree" : "periodic"}};
  if (trials == 0) {
    report.warnings.push_back("trials = 0: vacuous pass");
    report.checks.push_back(check_le("worst_relative_error", 0.0, 1e-6));
    return report;
  }
  const Grid grid(grid_n, kind);
  const int n = pi.n();
  std::mt19937_64 rng(seed);
  double worst = 0.0;
  double worst_alpha = 0.0;  // periodic boundary covectors must vanish
  for (int trial = 0; trial < trials; ++trial) {
    PathSample a = (kind == GridKind::SemiFree)
                       ? random_semifree_path(n, grid, rng)
                       : random_periodic_path(n, grid, rng);
    TangentVector d = random_path_tangent(n, grid, rng);
    LocalFunctional F = (trial % 3 == 2)
                            ? constraint_functional(
                                  pi, 1 + trial % n,
                                  NodeProfile(random_profile(grid, rng), grid))
                            : random_functional(n, rng);
    const GradientResult g = gradient(F, a);
    const double oracle = directional_derivative(F, a, d);
    const double paired = gradient_pairing(g, d, grid);
    worst = std::max(worst,
                     std::abs(oracle - paired) / std::max(1.0, std::abs(oracle)));
    if (kind == GridKind::Periodic)
      worst_alpha = std::max({worst_alpha, g.alpha0.lpNorm<Eigen::Infinity>(),
                              g.alpha1.lpNorm<Eigen::Infinity>()});
  }
  report.checks.push_back(check_le("worst_relative_error", worst, 1e-6));
  if (kind == GridKind::Periodic)
    report.checks.push_back(check_le("periodic_boundary_covectors", worst_alpha, 0.0));
  return report;
}

}  // namespace cotpath
