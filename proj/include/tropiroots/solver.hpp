#pragma once

// End-to-end root finding: companion pencil, tropical scaling, deflation of
// the infinite eigenvalue and strict QZ. Also the block variant for matrix
// polynomials and an empirical check of the graded-residual assumption.

#include <optional>
#include <vector>

#include <Eigen/Core>

#include "tropiroots/backerr.hpp"
#include "tropiroots/linalg.hpp"
#include "tropiroots/poly.hpp"
#include "tropiroots/tropical.hpp"

namespace tropiroots {

struct SolveOptions {
  /// Attach a BackwardErrorReport.
  bool backward_error = false;
  /// Also minimize the min-max measure over real μ (real data only; skipped otherwise).
  bool optimize_mu = false;
  linalg::QzOptions qz;
};

struct SolveDiagnostics {
  std::size_t qz_iterations = 0;
  std::size_t infinite_deflations = 0;
  Eigen::Index zero_roots = 0;
  TropicalData tropical;
};

struct SolveResult {
  /// Roots of the reduced polynomial followed by the exact zeros.
  RootSet roots;
  std::optional<BackwardErrorReport> report;
  SolveDiagnostics diagnostics;
};

SolveResult solve(const Polynomial& p, const SolveOptions& options = {});

struct PevpResult {
  Eigen::VectorXcd eigenvalues;
  /// |λ| > 1/eps: most likely an infinite eigenvalue of P.
  std::vector<bool> huge;
  PevpBackwardError backward_error;
  std::size_t qz_iterations = 0;
};

PevpResult solve_pevp(const MatrixPolynomial& p, const linalg::QzOptions& qz = {});

struct Assumption1Report {
  /// max |ΔÂ_ij| for ΔÂ = Q·S·Z^H − Â.
  double delta_a_max = 0.0;
  /// max_i |ΔB̂_ij| / (eps / τ̃) for each column j of the deflated pencil.
  Eigen::VectorXd delta_b_col_ratios;
  double delta_b_ratio_max = 0.0;
  /// Pass when delta_a_max <= constant·n·eps and every ratio <= constant·n, n = d+1.
  double constant = 100.0;
  bool pass = false;
};

Assumption1Report check_assumption1(const Polynomial& p, double constant = 100.0,
                                    const linalg::QzOptions& qz = {});

}  // namespace tropiroots
