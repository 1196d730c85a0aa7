// Command-line verification surface: ingest bivector JSON, run the
// verification suites, emit human-readable reports plus optional JSON/CSV
// artifacts. Exit codes: 0 pass, 1 verification failure, 2 input error,
// 3 numerical failure.
#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "cotpath/json_io.hpp"
#include "cotpath/verification.hpp"

namespace {

using namespace cotpath;

int emit(const VerificationReport& report, const std::string& json_path) {
  std::cout << report.to_text();
  if (!json_path.empty()) {
    std::ofstream out(json_path);
    if (!out) {
      std::cerr << "cannot write JSON report to " << json_path << "\n";
      return 2;
    }
    out << report.to_json().dump(2) << "\n";
  }
  return report.overall() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cotpath: numerical verification of cotangent-path coisotropy"};
  app.require_subcommand(1);

  std::string pi_file, json_path, csv_path, kind_name = "semifree";
  int samples = 100, paths = 10, grid_n = 128, trials = 25, modes = 8;
  double tol = 1e-9, co_tol = 1e-5, eps = 1e-2;
  std::uint64_t seed = 0;

  auto* jacobi = app.add_subcommand("jacobi", "sampling-based Poisson test");
  jacobi->add_option("pi_file", pi_file, "bivector JSON file")->required();
  jacobi->add_option("--samples", samples, "sample points in [-1,1]^n");
  jacobi->add_option("--tol", tol, "Jacobiator tolerance");
  jacobi->add_option("--seed", seed, "RNG seed");
  jacobi->add_option("--json", json_path, "write JSON report");

  auto* coiso = app.add_subcommand(
      "coisotropy", "constraint-bracket vanishing on shot cotangent paths");
  coiso->add_option("pi_file", pi_file, "bivector JSON file")->required();
  coiso->add_option("--paths", paths, "number of shot cotangent paths");
  coiso->add_option("--grid-n", grid_n, "grid intervals (even)");
  coiso->add_option("--kind", kind_name, "semifree | periodic");
  coiso->add_option("--tol", co_tol, "bracket tolerance relative to scale");
  coiso->add_option("--seed", seed, "RNG seed");
  coiso->add_option("--json", json_path, "write JSON report");
  coiso->add_option("--csv", csv_path, "write (path id, r, s, bracket) CSV");

  auto* cex = app.add_subcommand("counterexample",
                                 "tangent-cone probe for pi = x dx ^ dy");
  cex->add_option("--eps", eps, "family parameter");
  cex->add_option("--modes", modes, "Fourier correction modes");
  cex->add_option("--grid-n", grid_n, "grid intervals (even)");
  cex->add_option("--json", json_path, "write JSON report");

  auto* gc = app.add_subcommand("gradient-check",
                                "variational gradient vs finite-difference oracle");
  gc->add_option("pi_file", pi_file, "bivector JSON file")->required();
  gc->add_option("--trials", trials, "random (functional, path, tangent) triples");
  gc->add_option("--grid-n", grid_n, "grid intervals (even)");
  gc->add_option("--kind", kind_name, "semifree | periodic");
  gc->add_option("--seed", seed, "RNG seed");
  gc->add_option("--json", json_path, "write JSON report");

  CLI11_PARSE(app, argc, argv);

  GridKind kind;
  if (kind_name == "semifree") {
    kind = GridKind::SemiFree;
  } else if (kind_name == "periodic") {
    kind = GridKind::Periodic;
  } else {
    std::cerr << "unknown --kind '" << kind_name << "' (semifree | periodic)\n";
    return 2;
  }

  try {
    if (jacobi->parsed()) {
      const BivectorField pi = bivector_from_file(pi_file);
      return emit(run_jacobi(pi, samples, tol, seed), json_path);
    }
    if (coiso->parsed()) {
      const BivectorField pi = bivector_from_file(pi_file);
      CoisotropyOptions opt;
      opt.paths = paths;
      opt.grid_n = grid_n;
      opt.kind = kind;
      opt.tol = co_tol;
      std::vector<BracketRecord> records;
      const VerificationReport report = run_coisotropy(pi, opt, seed, &records);
      if (!csv_path.empty()) {
        std::ofstream out(csv_path);
        if (!out) {
          std::cerr << "cannot write CSV to " << csv_path << "\n";
          return 2;
        }
        out << "path_id,r,s,bracket,closed_form\n";
        out.precision(17);
        for (const auto& rec : records)
          out << rec.path_id << "," << rec.r << "," << rec.s << "," << rec.bracket
              << "," << rec.closed_form << "\n";
      }
      return emit(report, json_path);
    }
    if (cex->parsed()) {
      const VerificationReport report = run_counterexample(eps, modes, grid_n);
      if (!report.config.value("converged", true)) {
        std::cout << report.to_text();
        std::cerr << "optimizer divergence\n";
        return 3;
      }
      return emit(report, json_path);
    }
    if (gc->parsed()) {
      const BivectorField pi = bivector_from_file(pi_file);
      return emit(run_gradient_check(pi, trials, kind, grid_n, seed), json_path);
    }
  } catch (const ParseError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  }
  return 2;
}
