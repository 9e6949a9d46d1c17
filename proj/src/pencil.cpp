#include "tropiroots/pencil.hpp"

#include <cmath>
#include <limits>

#include <Eigen/QR>

#include "tropiroots/errors.hpp"

namespace tropiroots {

namespace {

bool is_normal_finite(double v) { return std::isfinite(v) && v >= std::numeric_limits<double>::min(); }

// 1/x from the rounded value when representable, else from its log.
double reciprocal(double value, double log_value) {
  return is_normal_finite(value) && is_normal_finite(1.0 / value) ? 1.0 / value : std::exp(-log_value);
}

CompanionPencil empty_block_companion(Eigen::Index d, Eigen::Index s) {
  const Eigen::Index n = (d + 1) * s;
  CompanionPencil c;
  c.degree = d;
  c.block_size = s;
  c.a = Eigen::MatrixXcd::Zero(n, n);
  c.b = Eigen::MatrixXcd::Zero(n, n);
  for (Eigen::Index r = 1; r <= d; ++r) {
    c.a.block(r * s, (r - 1) * s, s, s).setIdentity();
    c.b.block(r * s, r * s, s, s).setIdentity();
  }
  return c;
}

}  // namespace

CompanionPencil build_companion(const Polynomial& p) {
  const Eigen::Index d = p.degree();
  if (d < 1) throw InvalidInput("build_companion: degree must be at least 1");
  if (p[0] == Complex(0)) throw InvalidInput("build_companion: zero roots must be deflated first");
  CompanionPencil c = empty_block_companion(d, 1);
  for (Eigen::Index col = 0; col <= d; ++col) c.a(0, col) = p[d - col];
  c.coeff_norms = p.magnitudes();
  return c;
}

CompanionPencil tropical_scale(const CompanionPencil& c, const TropicalData& t, const GammaWeights& g) {
  if (c.scaled) throw InvalidInput("tropical_scale: pencil is already scaled");
  const Eigen::Index d = c.degree;
  const Eigen::Index s = c.block_size;
  if (t.degree() != d || g.gamma.size() != d + 1)
    throw InvalidInput("tropical_scale: tropical data does not match the pencil");

  CompanionPencil out = c;
  out.scaled = true;

  // First block row: P_i · (1/γ_i) / ||P_i||, zero blocks stay zero.
  for (Eigen::Index col = 0; col <= d; ++col) {
    const Eigen::Index i = d - col;
    auto blk = out.a.block(0, col * s, s, s);
    const double norm = c.coeff_norms[i];
    if (norm == 0.0) continue;
    const double factor = reciprocal(g.gamma[i], g.log_gamma[i]) / norm;
    if (is_normal_finite(factor)) {
      blk *= factor;
    } else {
      // Factor out of range: scale by the unit block then by 1/γ_i.
      blk /= norm;
      blk *= reciprocal(g.gamma[i], g.log_gamma[i]);
    }
  }

  // diag(B̂) block r (1-based) is 1/τ̃_{d-r+1}; subdiagonal blocks of Â stay identity.
  for (Eigen::Index r = 1; r <= d; ++r) {
    const Eigen::Index j = d - r;  // 0-based index of τ̃_{d-r+1}
    const double inv_tau = reciprocal(t.expanded[j], t.expanded_log[j]);
    out.b.block(r * s, r * s, s, s) = inv_tau * Eigen::MatrixXcd::Identity(s, s);
  }

  out.log_dl.resize(d + 1);
  out.log_dr.resize(d + 1);
  out.log_dl[0] = -std::log(c.coeff_norms[d]);
  out.log_dl[1] = 0.0;
  out.log_dr[0] = 0.0;
  double suffix = 0.0;  // Σ_{j=d-r+1}^{d} log τ̃_j
  for (Eigen::Index r = 1; r <= d; ++r) {
    suffix += t.expanded_log[d - r];
    out.log_dr[r] = -suffix;
    if (r + 1 <= d) out.log_dl[r + 1] = suffix;
  }
  return out;
}

DeflatedPencil deflate_infinity(const CompanionPencil& c) {
  if (c.block_size != 1) throw InvalidInput("deflate_infinity: use deflate_infinity_block for block pencils");
  const Eigen::Index d = c.degree;
  Eigen::MatrixXcd a = c.a;
  Eigen::MatrixXcd b = c.b;
  DeflatedPencil out;
  out.rotation = linalg::givens(a(0, 0), a(1, 0));
  out.rotation.apply(a.row(0), a.row(1));
  out.rotation.apply(b.row(0), b.row(1));
  a(1, 0) = Complex(0);

  const Complex r = out.rotation.r;
  if (std::abs(r) > 0.0) {
    const Complex phase = std::conj(r) / std::abs(r);
    a.row(0) *= phase;
    b.row(0) *= phase;
  }
  out.a = a.bottomRightCorner(d, d);
  out.b = b.bottomRightCorner(d, d);
  return out;
}

Eigen::VectorXd coefficient_norms(const MatrixPolynomial& p, CoefficientNorm norm) {
  Eigen::VectorXd out(p.degree() + 1);
  for (Eigen::Index i = 0; i <= p.degree(); ++i) {
    const auto& m = p[i];
    if (m.size() == 1) {
      out[i] = std::abs(m(0, 0));
    } else if (norm == CoefficientNorm::Frobenius) {
      out[i] = m.norm();
    } else {
      out[i] = linalg::jacobi_svd_sigma_max<double>(m);
    }
  }
  return out;
}

CompanionPencil build_block_companion(const MatrixPolynomial& p, CoefficientNorm norm) {
  const Eigen::Index d = p.degree();
  const Eigen::Index s = p.size();
  if (d < 1) throw InvalidInput("build_block_companion: degree must be at least 1");
  const Eigen::VectorXd norms = coefficient_norms(p, norm);
  if (norms[0] == 0.0) throw InvalidInput("build_block_companion: trailing coefficient P_0 is zero");

  CompanionPencil c = empty_block_companion(d, s);
  for (Eigen::Index col = 0; col <= d; ++col) c.a.block(0, col * s, s, s) = p[d - col];
  c.coeff_norms = norms;

  const std::span<const double> mags(norms.data(), static_cast<std::size_t>(norms.size()));
  const TropicalData t = tropical_roots(mags);
  const GammaWeights g = gammas(mags, t);
  return tropical_scale(c, t, g);
}

DeflatedPencil deflate_infinity_block(const CompanionPencil& c) {
  const Eigen::Index s = c.block_size;
  const Eigen::Index n = c.a.rows();
  const Eigen::Index m = n - s;

  const Eigen::MatrixXcd first = c.a.leftCols(s);
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(first);
  const Eigen::MatrixXcd r = qr.matrixQR().topRows(s).triangularView<Eigen::Upper>();

  double rmax = 0.0;
  for (Eigen::Index k = 0; k < s; ++k) rmax = std::max(rmax, std::abs(r(k, k)));
  const double tol = static_cast<double>(n) * std::numeric_limits<double>::epsilon() * rmax;
  std::size_t rank = 0;
  for (Eigen::Index k = 0; k < s; ++k)
    if (std::abs(r(k, k)) > tol) ++rank;
  if (rank < static_cast<std::size_t>(s)) throw RankDeficientLeadingBlock(rank, static_cast<std::size_t>(s));

  Eigen::MatrixXcd a = c.a;
  Eigen::MatrixXcd b = c.b;
  a.applyOnTheLeft(qr.householderQ().adjoint());
  b.applyOnTheLeft(qr.householderQ().adjoint());

  DeflatedPencil out;
  out.a = a.bottomRightCorner(m, m);
  out.b = b.bottomRightCorner(m, m);
  return out;
}

}  // namespace tropiroots
