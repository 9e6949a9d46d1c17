#include "tropiroots/solver.hpp"

#include <cmath>
#include <limits>

#include "tropiroots/errors.hpp"
#include "tropiroots/pencil.hpp"
#include "tropiroots/xprec.hpp"

namespace tropiroots {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

struct ScaledProblem {
  TropicalData tropical;
  GammaWeights gammas;
  DeflatedPencil deflated;
  linalg::HessTri<double> reduced;
};

ScaledProblem prepare(const Polynomial& q) {
  ScaledProblem s;
  s.tropical = tropical_roots(q);
  s.gammas = gammas(q, s.tropical);
  const CompanionPencil scaled = tropical_scale(build_companion(q), s.tropical, s.gammas);
  s.deflated = deflate_infinity(scaled);
  s.reduced = linalg::hess_tri<double>(s.deflated.a, s.deflated.b);
  return s;
}

// Σ_k a_ik b_kj at pair precision; `adjoint_b` uses conj(b_jk).
std::vector<std::vector<XComplex>> xproduct(const std::vector<std::vector<XComplex>>& a, const Eigen::MatrixXcd& b,
                                            bool adjoint_b) {
  const std::size_t n = a.size();
  std::vector<std::vector<XComplex>> out(n, std::vector<XComplex>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      XComplex acc;
      for (std::size_t k = 0; k < n; ++k) {
        const auto ik = static_cast<Eigen::Index>(k), ij = static_cast<Eigen::Index>(j);
        const Complex bkj = adjoint_b ? std::conj(b(ij, ik)) : b(ik, ij);
        if (bkj == Complex(0) || a[i][k].is_zero()) continue;
        acc = acc + a[i][k] * XComplex(bkj);
      }
      out[i][j] = acc;
    }
  return out;
}

std::vector<std::vector<XComplex>> to_x(const Eigen::MatrixXcd& m) {
  std::vector<std::vector<XComplex>> out(static_cast<std::size_t>(m.rows()));
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) out[static_cast<std::size_t>(i)].push_back(XComplex(m(i, j)));
  return out;
}

}  // namespace

SolveResult solve(const Polynomial& p, const SolveOptions& options) {
  const ZeroDeflation zd = deflate_zero_roots(p);
  const Polynomial& q = zd.reduced;
  const Eigen::Index d = q.degree();

  SolveResult res;
  res.diagnostics.zero_roots = zd.zero_roots;
  res.roots = RootSet::Zero(p.degree());

  if (d >= 1) {
    if (d == 1) {
      res.roots[0] = -q[0] / q[1];
      res.diagnostics.tropical = tropical_roots(q);
    } else {
      ScaledProblem s = prepare(q);
      linalg::QzOptions qz = options.qz;
      qz.accumulate = false;
      const auto schur = linalg::qz_strict<double>(std::move(s.reduced.h), std::move(s.reduced.t), qz);
      res.roots.head(d) = schur.eigenvalues();
      res.diagnostics.qz_iterations = schur.iterations;
      res.diagnostics.infinite_deflations = schur.infinite_deflations;
      res.diagnostics.tropical = std::move(s.tropical);
    }
  }

  if (options.backward_error && d >= 1) {
    const RootSet own = res.roots.head(d);
    const GammaWeights g = gammas(q, res.diagnostics.tropical);
    BackwardErrorReport rep = eta_minmax_upper(q, own, g);
    if (options.optimize_mu) {
      try {
        double mu = 1.0;
        rep.eta_minmax_opt = eta_minmax_opt_real(q, own, g, &mu);
        rep.mu_used = Complex(mu, 0.0);
      } catch (const NonRealInput&) {
      }
    }
    res.report = std::move(rep);
  }
  return res;
}

PevpResult solve_pevp(const MatrixPolynomial& p, const linalg::QzOptions& qz) {
  const CompanionPencil c = build_block_companion(p);
  const DeflatedPencil defl = deflate_infinity_block(c);
  auto ht = linalg::hess_tri_pair(defl.a, defl.b);
  linalg::QzOptions opts = qz;
  opts.accumulate = false;
  const auto schur = linalg::qz_strict<double>(std::move(ht.h), std::move(ht.t), opts);

  PevpResult out;
  out.eigenvalues = schur.eigenvalues();
  out.qz_iterations = schur.iterations;
  out.huge.resize(static_cast<std::size_t>(out.eigenvalues.size()));
  for (Eigen::Index k = 0; k < out.eigenvalues.size(); ++k)
    out.huge[static_cast<std::size_t>(k)] = !(std::abs(out.eigenvalues[k]) <= 1.0 / kEps);
  out.backward_error = eta_pevp_max(p, out.eigenvalues);
  return out;
}

Assumption1Report check_assumption1(const Polynomial& p, double constant, const linalg::QzOptions& qz) {
  const ZeroDeflation zd = deflate_zero_roots(p);
  const Polynomial& q = zd.reduced;
  const Eigen::Index d = q.degree();
  if (d < 1) throw InvalidInput("check_assumption1: no nonzero roots to check");

  ScaledProblem s = prepare(q);
  linalg::QzOptions opts = qz;
  opts.accumulate = true;
  const auto schur = linalg::qz_strict<double>(s.reduced.h, s.reduced.t, opts, &s.reduced.q, &s.reduced.z);

  const auto qs = xproduct(to_x(schur.q), schur.s, false);
  const auto qt = xproduct(to_x(schur.q), schur.t, false);
  const auto a_rec = xproduct(qs, schur.z, true);
  const auto b_rec = xproduct(qt, schur.z, true);

  Assumption1Report rep;
  rep.constant = constant;
  rep.delta_b_col_ratios = Eigen::VectorXd::Zero(d);
  for (Eigen::Index j = 0; j < d; ++j) {
    double col_max = 0.0;
    for (Eigen::Index i = 0; i < d; ++i) {
      const auto ui = static_cast<std::size_t>(i), uj = static_cast<std::size_t>(j);
      const double da = (a_rec[ui][uj] - XComplex(s.deflated.a(i, j))).abs();
      const double db = (b_rec[ui][uj] - XComplex(s.deflated.b(i, j))).abs();
      rep.delta_a_max = std::max(rep.delta_a_max, da);
      col_max = std::max(col_max, db);
    }
    // Column j carries 1/τ̃_{d-j} (1-based τ̃).
    const double log_scale = std::log(kEps) - s.tropical.expanded_log[d - j - 1];
    rep.delta_b_col_ratios[j] = col_max == 0.0 ? 0.0 : std::exp(std::log(col_max) - log_scale);
  }
  rep.delta_b_ratio_max = rep.delta_b_col_ratios.maxCoeff();
  const double n = static_cast<double>(d + 1);
  rep.pass = rep.delta_a_max <= constant * n * kEps && rep.delta_b_ratio_max <= constant * n;
  return rep;
}

}  // namespace tropiroots
