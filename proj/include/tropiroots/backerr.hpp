#pragma once

// Backward-error measures for computed roots and polynomial eigenvalues.
//
// Global measures compare p with p̃(z) = p_d·Π(z − ẑ_k), whose coefficients
// are reconstructed at pair precision (see xprec.hpp).

#include <optional>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "tropiroots/poly.hpp"
#include "tropiroots/tropical.hpp"
#include "tropiroots/xprec.hpp"

namespace tropiroots {

struct CoefficientResidual {
  double abs_p = 0.0;
  double abs_ptilde = 0.0;
  double abs_diff = 0.0;  // |p_i − p̃_i|
  double gamma_tilde = 0.0;
  double ratio = 0.0;  // |p_i − p̃_i| / γ̃_i
};

struct BackwardErrorReport {
  /// ||p̃ − p||_2 / ||p||_2.
  double eta_norm = 0.0;
  /// max over p_i != 0 of |p_i − p̃_i|/|p_i|; +inf when a zero coefficient is perturbed.
  double eta_elem_rel = 0.0;
  /// First zero coefficient that p̃ perturbs (only set when eta_elem_rel is infinite).
  std::optional<Eigen::Index> elem_rel_infinite_at;
  /// max_{i<d} |p_i − p̃_i| / γ̃_i with p̃_d = p_d.
  double eta_minmax = 0.0;
  /// Same measure minimized over real scalings μ (real data only).
  std::optional<double> eta_minmax_opt;
  std::vector<CoefficientResidual> per_coeff;
  Complex mu_used{1.0, 0.0};
};

/// |p(ẑ)| / Σ α_i |ẑ|^i; +inf when the denominator vanishes and the residual does not.
double eta_single(const Polynomial& p, Complex zhat, std::span<const double> alpha);
/// Relative componentwise error |p(ẑ)| / Σ |p_i ẑ^i|, evaluated term by term.
double eta_single_relative(const Polynomial& p, Complex zhat);

/// Reconstructed p̃ with leading coefficient p_d.
ExpandedPolynomial reconstruct(const Polynomial& p, const RootSet& roots);

double eta_norm_global(const Polynomial& p, const RootSet& roots);

/// Min-max upper bound at μ = 1, with per-coefficient residuals and the
/// relative elementwise and normwise errors filled in alongside.
BackwardErrorReport eta_minmax_upper(const Polynomial& p, const RootSet& roots, const GammaWeights& g);

/// min over real μ != 0 of max_i |p_i − μ p̃_i| / γ̃_i. Throws NonRealInput
/// unless p is real and p̃ is real up to sqrt(eps)·γ̃.
double eta_minmax_opt_real(const Polynomial& p, const RootSet& roots, const GammaWeights& g,
                           double* mu_out = nullptr);
/// Same with p̃ given directly by its coefficients.
double eta_minmax_opt_real(const Polynomial& p, const ExpandedPolynomial& ptilde, const GammaWeights& g,
                           double* mu_out = nullptr);

/// |z_k − ẑ_σ(k)| / |z_k| for the assignment σ minimizing the largest such
/// error (ties resolved by the smallest total error). Absolute error when z_k = 0.
std::vector<double> forward_errors(const RootSet& true_roots, const RootSet& computed);

enum class PevpWeighting { Sum, Max };

/// σ_min(P(λ)) / Σ |λ|^i ||P_i||_2 (or max in place of the sum).
/// `norms` may carry precomputed ||P_i||_2.
double eta_pevp(const MatrixPolynomial& p, Complex lambda, PevpWeighting weighting = PevpWeighting::Sum,
                const Eigen::VectorXd* norms = nullptr);

struct PevpBackwardError {
  double max = 0.0;
  Eigen::VectorXd per_eigenvalue;  // NaN at excluded entries
  std::size_t excluded = 0;        // non-finite eigenvalues
};

PevpBackwardError eta_pevp_max(const MatrixPolynomial& p, const Eigen::VectorXcd& lambdas,
                               PevpWeighting weighting = PevpWeighting::Sum);

}  // namespace tropiroots
