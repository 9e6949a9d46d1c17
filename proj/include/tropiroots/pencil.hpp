#pragma once

// Companion linearization of the grade d+1 polynomial 0·z^{d+1} + p(z), its
// two-sided tropical scaling and the removal of the artificial eigenvalue at
// infinity. The block variants handle matrix polynomials.

#include <Eigen/Core>

#include "tropiroots/linalg.hpp"
#include "tropiroots/poly.hpp"
#include "tropiroots/tropical.hpp"

namespace tropiroots {

/// (A, B) of size (d+1)s. Unscaled: first block row [P_d … P_0], identity
/// blocks on the block subdiagonal, B = diag(0, I, …, I).
struct CompanionPencil {
  Eigen::MatrixXcd a;
  Eigen::MatrixXcd b;
  Eigen::Index degree = 0;
  Eigen::Index block_size = 1;
  /// |p_i| or ||P_i||, ascending in i.
  Eigen::VectorXd coeff_norms;
  bool scaled = false;
  /// Natural logs of the block diagonals of D_l and D_r (length d+1) once scaled.
  Eigen::VectorXd log_dl;
  Eigen::VectorXd log_dr;
};

/// Trailing pencil left after the infinite eigenvalue(s) are removed.
struct DeflatedPencil {
  Eigen::MatrixXcd a;
  Eigen::MatrixXcd b;
  /// Scalar case: the rotation applied to rows 1–2.
  linalg::Givens<double> rotation;
};

enum class CoefficientNorm { Spectral, Frobenius };

CompanionPencil build_companion(const Polynomial& p);

/// Scales by D_l, D_r without forming them: first-row entries become
/// phase(p_i)/γ_i and diag(B̂) = (0, 1/τ̃_d, …, 1/τ̃_1), each entry computed
/// from γ and τ̃ directly.
CompanionPencil tropical_scale(const CompanionPencil& c, const TropicalData& t, const GammaWeights& g);

/// Rotates rows 1–2 so that Â(2,1) vanishes and returns the trailing d×d pair.
/// The discarded leading entry is made real nonnegative.
DeflatedPencil deflate_infinity(const CompanionPencil& c);

Eigen::VectorXd coefficient_norms(const MatrixPolynomial& p, CoefficientNorm norm = CoefficientNorm::Spectral);

/// Block companion pencil, already tropically scaled with the roots of
/// max_i ||P_i|| x^i.
CompanionPencil build_block_companion(const MatrixPolynomial& p, CoefficientNorm norm = CoefficientNorm::Spectral);

/// Applies Q^H from a Householder QR of the first block column and drops the
/// first s rows and columns. Throws RankDeficientLeadingBlock when that
/// column has numerical rank below s.
DeflatedPencil deflate_infinity_block(const CompanionPencil& c);

}  // namespace tropiroots
