// Seeded random generators for paths, profiles and functionals, and the
// verification suites behind the CLI subcommands. Every suite is a pure
// function of (inputs, seed) and produces a deterministic report.
#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "cotpath/bracket.hpp"
#include "cotpath/cotangent.hpp"
#include "cotpath/functionals.hpp"

namespace cotpath {

struct Check {
  std::string name;
  double value = 0.0;
  double threshold = 0.0;
  std::string relation;  // "<=" or ">="
  bool pass = false;
};

Check check_le(std::string name, double value, double threshold);
Check check_ge(std::string name, double value, double threshold);

struct VerificationReport {
  std::string command;
  nlohmann::json config;
  std::vector<Check> checks;
  std::vector<std::string> warnings;
  std::uint64_t seed = 0;

  bool overall() const;
  nlohmann::json to_json() const;  // versioned with "schema": 1
  std::string to_text() const;
};

// --- seeded generators -----------------------------------------------------

// Normalized cumulative integral of the flat bump at the grid nodes.
ScalarArray flat_bump_cdf(const Grid& grid);

// Smooth loop: q, p trigonometric polynomials of low degree.
PathSample random_periodic_path(int n, const Grid& grid, std::mt19937_64& rng,
                                double amplitude = 1.0);
// Semi-free path: q composed with the bump CDF, p modulated by the bump, so
// all endpoint derivative conditions hold to round-off.
PathSample random_semifree_path(int n, const Grid& grid, std::mt19937_64& rng,
                                double amplitude = 1.0);
// Admissible tangent vector for the grid kind.
TangentVector random_path_tangent(int n, const Grid& grid, std::mt19937_64& rng);
// Scalar profile, vanishing at the endpoints on semi-free grids.
ScalarArray random_profile(const Grid& grid, std::mt19937_64& rng);
// Random bivector with polynomial entries of the given total degree.
BivectorField random_bivector(int n, int degree, std::mt19937_64& rng);
// Random smooth functional with analytic slot gradients (quadratic +
// first-order-jet couplings).
LocalFunctional random_functional(int n, std::mt19937_64& rng);

// --- verification suites ---------------------------------------------------

VerificationReport run_jacobi(const BivectorField& pi, int samples, double tol,
                              std::uint64_t seed);

struct CoisotropyOptions {
  int paths = 10;
  int grid_n = 128;
  GridKind kind = GridKind::SemiFree;
  double tol = 1e-5;  // bracket tolerance, relative to the path scale
  double shoot_eps = 0.2;
  int profile_pairs = 3;
};
struct BracketRecord {
  int path_id;
  int r, s;
  double bracket;
  double closed_form;
};
VerificationReport run_coisotropy(const BivectorField& pi,
                                  const CoisotropyOptions& opt, std::uint64_t seed,
                                  std::vector<BracketRecord>* records = nullptr);

VerificationReport run_counterexample(double eps, int modes, int grid_n);

VerificationReport run_gradient_check(const BivectorField& pi, int trials,
                                      GridKind kind, int grid_n, std::uint64_t seed);

}  // namespace cotpath
