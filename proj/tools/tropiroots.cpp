// tropiroots: command-line front end.
//
//   tropiroots roots poly.json [--backerr] [--assumption1] [--mu-opt]
//   tropiroots polyeig matpoly.json
//   tropiroots tropical poly.json [--csv newton.csv]
//   tropiroots backerr poly.json roots.json [--csv coeffs.csv] [--mu-opt]
//   tropiroots pencil poly.json [--stage unscaled|scaled|deflated]
//   tropiroots experiment --id 1 --samples 20 --seed 1 --out exp1.csv
//
// Exit status: 0 on success, 1 on invalid input, 2 when QZ does not converge.
// TROPIROOTS_MAXIT_FACTOR overrides the QZ iteration cap (iterations per row).

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tropiroots/backerr.hpp"
#include "tropiroots/errors.hpp"
#include "tropiroots/experiment.hpp"
#include "tropiroots/io.hpp"
#include "tropiroots/pencil.hpp"
#include "tropiroots/solver.hpp"
#include "tropiroots/tropical.hpp"

namespace tr = tropiroots;
using tr::io::json;

namespace {

tr::linalg::QzOptions qz_from_env() {
  tr::linalg::QzOptions qz;
  if (const char* env = std::getenv("TROPIROOTS_MAXIT_FACTOR")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end == env || *end != '\0' || v == 0)
      throw tr::InvalidInput(std::string("TROPIROOTS_MAXIT_FACTOR must be a positive integer, got \"") + env + "\"");
    qz.maxit_factor = static_cast<std::size_t>(v);
  }
  return qz;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw tr::InvalidInput("cannot write " + path);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Polynomial roots via tropically scaled companion pencils"};
  app.require_subcommand(1);

  std::string poly_path, roots_path, csv_path, stage = "deflated";
  bool backerr = false, assumption1 = false, mu_opt = false;

  auto* roots_cmd = app.add_subcommand("roots", "Compute all roots of a polynomial");
  roots_cmd->add_option("input", poly_path, "Polynomial JSON")->required();
  roots_cmd->add_flag("--backerr", backerr, "Attach backward errors");
  roots_cmd->add_flag("--assumption1", assumption1, "Attach the graded residual check");
  roots_cmd->add_flag("--mu-opt", mu_opt, "Also minimize the min-max error over real scalings");

  auto* eig_cmd = app.add_subcommand("polyeig", "Eigenvalues of a matrix polynomial");
  eig_cmd->add_option("input", poly_path, "Matrix polynomial JSON")->required();

  auto* trop_cmd = app.add_subcommand("tropical", "Newton polygon, tropical roots and gamma weights");
  trop_cmd->add_option("input", poly_path, "Polynomial JSON")->required();
  trop_cmd->add_option("--csv", csv_path, "Write i, log10|p_i|, log10 hull, log10 gamma_i");

  auto* be_cmd = app.add_subcommand("backerr", "Backward errors of given roots");
  be_cmd->add_option("input", poly_path, "Polynomial JSON")->required();
  be_cmd->add_option("roots", roots_path, "Roots JSON")->required();
  be_cmd->add_option("--csv", csv_path, "Write i, |p_i|, |pt_i|, |p_i - pt_i|, gamma~_i");
  be_cmd->add_flag("--mu-opt", mu_opt, "Also minimize over real scalings");

  auto* pencil_cmd = app.add_subcommand("pencil", "Dump the companion pencil as 'row col re im'");
  pencil_cmd->add_option("input", poly_path, "Polynomial JSON")->required();
  pencil_cmd->add_option("--stage", stage, "unscaled, scaled or deflated")
      ->check(CLI::IsMember({"unscaled", "scaled", "deflated"}));

  tr::ExperimentSpec spec;
  int exp_id = 1;
  std::optional<std::size_t> samples;
  std::optional<long long> degree, mult_max, size;
  std::vector<double> exp_range;
  std::uint64_t seed = 1;
  std::string out_path;
  unsigned threads = 1;
  bool timing = false;
  auto* exp_cmd = app.add_subcommand("experiment", "Run a seeded randomized study and write CSV");
  exp_cmd->add_option("--id", exp_id, "Experiment id (1-4 scalar, 5-6 matrix)")->check(CLI::Range(1, 6));
  exp_cmd->add_option("--samples", samples, "Number of samples");
  exp_cmd->add_option("--degree", degree, "Polynomial degree")->check(CLI::NonNegativeNumber);
  exp_cmd->add_option("--exp-range", exp_range, "Decimal exponent range lo hi")->expected(2);
  exp_cmd->add_option("--multiplicity-max", mult_max, "Largest root multiplicity")->check(CLI::PositiveNumber);
  exp_cmd->add_option("--size", size, "Block size for matrix experiments")->check(CLI::PositiveNumber);
  exp_cmd->add_option("--seed", seed, "Seed");
  exp_cmd->add_option("--out", out_path, "CSV output (default stdout)");
  exp_cmd->add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);
  exp_cmd->add_flag("--timing", timing, "Add a wall-time column");
  exp_cmd->add_flag("--backerr", backerr, "Accepted for symmetry; backward errors are always reported");
  exp_cmd->add_flag("--assumption1", assumption1, "Add graded residual columns");
  exp_cmd->add_flag("--mu-opt", mu_opt, "Add the real-scaling optimized error");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    const tr::linalg::QzOptions qz = qz_from_env();

    if (*roots_cmd) {
      const tr::Polynomial p = tr::io::polynomial_from_json(tr::io::read_json_file(poly_path));
      tr::SolveOptions opts;
      opts.backward_error = backerr || mu_opt;
      opts.optimize_mu = mu_opt;
      opts.qz = qz;
      const tr::SolveResult res = tr::solve(p, opts);
      json out = tr::io::roots_to_json(res.roots);
      out["diagnostics"] = tr::io::to_json(res.diagnostics);
      if (res.report) out["backward_error"] = tr::io::to_json(*res.report);
      if (assumption1) out["assumption1"] = tr::io::to_json(tr::check_assumption1(p, 100.0, qz));
      std::cout << out.dump(2) << '\n';
    } else if (*eig_cmd) {
      const tr::MatrixPolynomial p = tr::io::matrix_polynomial_from_json(tr::io::read_json_file(poly_path));
      std::cout << tr::io::to_json(tr::solve_pevp(p, qz)).dump(2) << '\n';
    } else if (*trop_cmd) {
      const tr::Polynomial p = tr::io::polynomial_from_json(tr::io::read_json_file(poly_path));
      const tr::TropicalData t = tr::tropical_roots(p);
      const json out = tr::io::to_json(t, tr::gammas(p, t));
      if (!csv_path.empty()) {
        auto f = open_out(csv_path);
        tr::io::write_newton_csv(f, p);
      }
      std::cout << out.dump(2) << '\n';
    } else if (*be_cmd) {
      const tr::Polynomial p = tr::io::polynomial_from_json(tr::io::read_json_file(poly_path));
      const tr::RootSet roots = tr::io::roots_from_json(tr::io::read_json_file(roots_path));
      const tr::TropicalData t = tr::tropical_roots(p);
      const tr::GammaWeights g = tr::gammas(p, t);
      tr::BackwardErrorReport rep = tr::eta_minmax_upper(p, roots, g);
      if (mu_opt) {
        double mu = 1.0;
        rep.eta_minmax_opt = tr::eta_minmax_opt_real(p, roots, g, &mu);
        rep.mu_used = {mu, 0.0};
      }
      if (!csv_path.empty()) {
        auto f = open_out(csv_path);
        tr::io::write_backerr_csv(f, rep);
      }
      std::cout << tr::io::to_json(rep).dump(2) << '\n';
    } else if (*pencil_cmd) {
      const tr::Polynomial p = tr::io::polynomial_from_json(tr::io::read_json_file(poly_path));
      const tr::ZeroDeflation zd = tr::deflate_zero_roots(p);
      const tr::CompanionPencil c = tr::build_companion(zd.reduced);
      if (stage == "unscaled") {
        tr::io::write_pencil_dump(std::cout, c.a, c.b);
      } else {
        const tr::TropicalData t = tr::tropical_roots(zd.reduced);
        const tr::CompanionPencil s = tr::tropical_scale(c, t, tr::gammas(zd.reduced, t));
        if (stage == "scaled") {
          tr::io::write_pencil_dump(std::cout, s.a, s.b);
        } else {
          const tr::DeflatedPencil d = tr::deflate_infinity(s);
          tr::io::write_pencil_dump(std::cout, d.a, d.b);
        }
      }
    } else if (*exp_cmd) {
      spec = tr::default_experiment(exp_id);
      if (samples) spec.samples = *samples;
      if (degree) spec.degree = static_cast<Eigen::Index>(*degree);
      if (mult_max) spec.multiplicity_max = static_cast<Eigen::Index>(*mult_max);
      if (size) spec.size = static_cast<Eigen::Index>(*size);
      if (!exp_range.empty()) {
        if (!(exp_range[0] <= exp_range[1])) throw tr::InvalidInput("--exp-range: lo must not exceed hi");
        spec.range = {exp_range[0], exp_range[1]};
      }
      if (!tr::is_matrix_experiment(spec.id) && spec.degree < 1) throw tr::InvalidInput("--degree must be at least 1");
      spec.seed = seed;
      spec.threads = threads;
      spec.timing = timing;
      spec.mu_opt = mu_opt;
      spec.assumption1 = assumption1;
      spec.qz = qz;
      if (out_path.empty()) {
        tr::run_experiment(spec, std::cout);
      } else {
        auto f = open_out(out_path);
        tr::run_experiment(spec, f);
      }
    }
  } catch (const tr::NoConvergence& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
