#include "tropiroots/backerr.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>

#include "tropiroots/errors.hpp"
#include "tropiroots/linalg.hpp"
#include "tropiroots/pencil.hpp"

namespace tropiroots {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kEps = std::numeric_limits<double>::epsilon();

void check_roots(const Polynomial& p, const RootSet& roots) {
  if (roots.size() != p.degree())
    throw LengthMismatch("root count " + std::to_string(roots.size()) + " does not match degree " +
                         std::to_string(p.degree()));
  if (!roots.allFinite()) throw InvalidInput("roots must be finite");
}

// sqrt(Σ exp(2·l_i)) from natural logs, scaled to avoid overflow.
double log_two_norm(const std::vector<double>& logs) {
  const double top = *std::max_element(logs.begin(), logs.end());
  if (top == -kInf) return -kInf;
  double s = 0.0;
  for (double l : logs) s += std::exp(2.0 * (l - top));
  return top + 0.5 * std::log(s);
}

// Bipartite perfect matching restricted to allowed edges (Kuhn).
bool perfect_matching(const std::vector<std::vector<char>>& allowed, std::vector<int>& match_of_col) {
  const int n = static_cast<int>(allowed.size());
  match_of_col.assign(static_cast<std::size_t>(n), -1);
  std::vector<char> seen;
  std::function<bool(int)> augment = [&](int r) {
    for (int c = 0; c < n; ++c) {
      if (!allowed[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] || seen[static_cast<std::size_t>(c)]) continue;
      seen[static_cast<std::size_t>(c)] = 1;
      const int owner = match_of_col[static_cast<std::size_t>(c)];
      if (owner < 0 || augment(owner)) {
        match_of_col[static_cast<std::size_t>(c)] = r;
        return true;
      }
    }
    return false;
  };
  for (int r = 0; r < n; ++r) {
    seen.assign(static_cast<std::size_t>(n), 0);
    if (!augment(r)) return false;
  }
  return true;
}

// Minimum-sum assignment (Hungarian, O(n^3)); returns column of each row.
std::vector<int> hungarian(const std::vector<std::vector<double>>& cost) {
  const int n = static_cast<int>(cost.size());
  std::vector<double> u(static_cast<std::size_t>(n + 1)), v(static_cast<std::size_t>(n + 1));
  std::vector<int> p(static_cast<std::size_t>(n + 1)), way(static_cast<std::size_t>(n + 1));
  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::vector<double> minv(static_cast<std::size_t>(n + 1), kInf);
    std::vector<char> used(static_cast<std::size_t>(n + 1), 0);
    do {
      used[static_cast<std::size_t>(j0)] = 1;
      const int i0 = p[static_cast<std::size_t>(j0)];
      double delta = kInf;
      int j1 = 0;
      for (int j = 1; j <= n; ++j) {
        if (used[static_cast<std::size_t>(j)]) continue;
        const double cur = cost[static_cast<std::size_t>(i0 - 1)][static_cast<std::size_t>(j - 1)] -
                           u[static_cast<std::size_t>(i0)] - v[static_cast<std::size_t>(j)];
        if (cur < minv[static_cast<std::size_t>(j)]) {
          minv[static_cast<std::size_t>(j)] = cur;
          way[static_cast<std::size_t>(j)] = j0;
        }
        if (minv[static_cast<std::size_t>(j)] < delta) {
          delta = minv[static_cast<std::size_t>(j)];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[static_cast<std::size_t>(j)]) {
          u[static_cast<std::size_t>(p[static_cast<std::size_t>(j)])] += delta;
          v[static_cast<std::size_t>(j)] -= delta;
        } else {
          minv[static_cast<std::size_t>(j)] -= delta;
        }
      }
      j0 = j1;
    } while (p[static_cast<std::size_t>(j0)] != 0);
    do {
      const int j1 = way[static_cast<std::size_t>(j0)];
      p[static_cast<std::size_t>(j0)] = p[static_cast<std::size_t>(j1)];
      j0 = j1;
    } while (j0 != 0);
  }
  std::vector<int> col_of_row(static_cast<std::size_t>(n));
  for (int j = 1; j <= n; ++j) col_of_row[static_cast<std::size_t>(p[static_cast<std::size_t>(j)] - 1)] = j - 1;
  return col_of_row;
}

}  // namespace

double eta_single(const Polynomial& p, Complex zhat, std::span<const double> alpha) {
  if (static_cast<Eigen::Index>(alpha.size()) != p.degree() + 1)
    throw LengthMismatch("eta_single: weight count does not match the coefficients");
  const double num = std::abs(eval(p, zhat));
  const MagnitudeTerms den = weighted_power_sum(alpha, std::abs(zhat));
  if (num == 0.0) return 0.0;
  if (den.sum == 0.0 && den.log_sum == -kInf) return kInf;
  if (std::isfinite(num) && std::isfinite(den.sum) && den.sum > 0.0) return num / den.sum;
  return std::exp(std::log(num) - den.log_sum);
}

double eta_single_relative(const Polynomial& p, Complex zhat) {
  const double num = std::abs(eval(p, zhat));
  const double r = std::abs(zhat);
  double den = 0.0;
  for (Eigen::Index i = 0; i <= p.degree(); ++i) den += std::abs(p[i]) * std::pow(r, static_cast<double>(i));
  if (num == 0.0) return 0.0;
  return den == 0.0 ? kInf : num / den;
}

ExpandedPolynomial reconstruct(const Polynomial& p, const RootSet& roots) {
  check_roots(p, roots);
  return expand_from_roots({roots.data(), static_cast<std::size_t>(roots.size())}, p.leading());
}

double eta_norm_global(const Polynomial& p, const RootSet& roots) {
  const auto pt = reconstruct(p, roots);
  std::vector<double> diff_logs, p_logs;
  for (Eigen::Index i = 0; i <= p.degree(); ++i) {
    diff_logs.push_back((pt.coeffs[static_cast<std::size_t>(i)] - XComplex(p[i])).log_abs());
    p_logs.push_back(XComplex(p[i]).log_abs());
  }
  return std::exp(log_two_norm(diff_logs) - log_two_norm(p_logs));
}

BackwardErrorReport eta_minmax_upper(const Polynomial& p, const RootSet& roots, const GammaWeights& g) {
  const Eigen::Index d = p.degree();
  if (g.gamma_tilde.size() != d + 1) throw LengthMismatch("eta_minmax_upper: weights do not match the polynomial");
  const auto pt = reconstruct(p, roots);

  BackwardErrorReport rep;
  rep.per_coeff.resize(static_cast<std::size_t>(d + 1));
  std::vector<double> diff_logs, p_logs;
  for (Eigen::Index i = 0; i <= d; ++i) {
    const XComplex pi(p[i]);
    const XComplex diff = pt.coeffs[static_cast<std::size_t>(i)] - pi;
    const double log_diff = i == d ? -kInf : diff.log_abs();
    auto& row = rep.per_coeff[static_cast<std::size_t>(i)];
    row.abs_p = std::abs(p[i]);
    row.abs_ptilde = pt.coeffs[static_cast<std::size_t>(i)].abs();
    row.abs_diff = std::exp(log_diff);
    row.gamma_tilde = g.gamma_tilde[i];
    row.ratio = std::exp(log_diff - g.log_gamma_tilde[i]);
    rep.eta_minmax = std::max(rep.eta_minmax, row.ratio);

    diff_logs.push_back(log_diff);
    p_logs.push_back(pi.log_abs());
    if (p[i] != Complex(0)) {
      rep.eta_elem_rel = std::max(rep.eta_elem_rel, std::exp(log_diff - pi.log_abs()));
    } else if (log_diff > -kInf && !rep.elem_rel_infinite_at) {
      rep.elem_rel_infinite_at = i;
      rep.eta_elem_rel = kInf;
    }
  }
  rep.eta_norm = std::exp(log_two_norm(diff_logs) - log_two_norm(p_logs));
  return rep;
}

double eta_minmax_opt_real(const Polynomial& p, const RootSet& roots, const GammaWeights& g, double* mu_out) {
  return eta_minmax_opt_real(p, reconstruct(p, roots), g, mu_out);
}

double eta_minmax_opt_real(const Polynomial& p, const ExpandedPolynomial& pt, const GammaWeights& g, double* mu_out) {
  const Eigen::Index d = p.degree();
  if (g.gamma_tilde.size() != d + 1 || static_cast<Eigen::Index>(pt.coeffs.size()) != d + 1)
    throw LengthMismatch("eta_minmax_opt_real: weights do not match the polynomial");
  for (Eigen::Index i = 0; i <= d; ++i)
    if (p[i].imag() != 0.0) throw NonRealInput("eta_minmax_opt_real: polynomial has complex coefficients");
  const double tol = std::sqrt(kEps);
  for (Eigen::Index i = 0; i <= d; ++i) {
    const auto& c = pt.coeffs[static_cast<std::size_t>(i)];
    const double log_im = XComplex(DoubleDouble(), c.imag_mantissa(), c.exponent()).log_abs();
    if (log_im - g.log_gamma_tilde[i] > std::log(tol))
      throw NonRealInput("eta_minmax_opt_real: reconstructed polynomial is not real (roots not conjugate-symmetric)");
  }

  auto f = [&](double mu) {
    const XComplex xmu(Complex(mu, 0.0));
    double worst = 0.0;
    for (Eigen::Index i = 0; i <= d; ++i) {
      const double l = (XComplex(p[i]) - xmu * pt.coeffs[static_cast<std::size_t>(i)]).log_abs();
      worst = std::max(worst, std::exp(l - g.log_gamma_tilde[i]));
    }
    return worst;
  };

  // f is convex in μ: bracket a minimum around μ = 1, then golden-section search.
  double lo = 0.5, mid = 1.0, hi = 2.0;
  double flo = f(lo), fmid = f(mid), fhi = f(hi);
  for (int k = 0; k < 60 && flo < fmid; ++k) {
    hi = mid, fhi = fmid;
    mid = lo, fmid = flo;
    lo *= 0.5, flo = f(lo);
  }
  for (int k = 0; k < 60 && fhi < fmid; ++k) {
    lo = mid, flo = fmid;
    mid = hi, fmid = fhi;
    hi *= 2.0, fhi = f(hi);
  }
  const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = hi - phi * (hi - lo), x2 = lo + phi * (hi - lo);
  double f1 = f(x1), f2 = f(x2);
  for (int it = 0; it < 200 && hi - lo > 4.0 * kEps * std::abs(mid); ++it) {
    if (f1 <= f2) {
      hi = x2, x2 = x1, f2 = f1;
      x1 = hi - phi * (hi - lo), f1 = f(x1);
    } else {
      lo = x1, x1 = x2, f1 = f2;
      x2 = lo + phi * (hi - lo), f2 = f(x2);
    }
  }
  double best_mu = f1 <= f2 ? x1 : x2;
  double best = std::min(f1, f2);
  const double at_one = f(1.0);
  if (at_one <= best) {
    best = at_one;
    best_mu = 1.0;
  }
  if (mu_out) *mu_out = best_mu;
  return best;
}

std::vector<double> forward_errors(const RootSet& true_roots, const RootSet& computed) {
  if (true_roots.size() != computed.size())
    throw LengthMismatch("forward_errors: root sets have different sizes");
  const auto n = static_cast<std::size_t>(true_roots.size());
  if (n == 0) return {};

  std::vector<std::vector<double>> err(n, std::vector<double>(n));
  std::vector<double> levels;
  levels.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    const Complex z = true_roots[static_cast<Eigen::Index>(i)];
    const double scale = std::abs(z) > 0.0 ? std::abs(z) : 1.0;
    for (std::size_t j = 0; j < n; ++j) {
      err[i][j] = std::abs(z - computed[static_cast<Eigen::Index>(j)]) / scale;
      levels.push_back(err[i][j]);
    }
  }
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());

  // Smallest bottleneck level admitting a perfect matching.
  std::vector<int> match;
  std::size_t lo = 0, hi = levels.size() - 1;
  auto feasible = [&](double level) {
    std::vector<std::vector<char>> allowed(n, std::vector<char>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) allowed[i][j] = err[i][j] <= level;
    return perfect_matching(allowed, match);
  };
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (feasible(levels[mid])) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  const double bottleneck = levels[lo];

  // Among bottleneck-optimal assignments pick the one with least total error.
  const double big = 1.0 + static_cast<double>(n) * (bottleneck + 1.0) * 4.0;
  std::vector<std::vector<double>> cost(n, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) cost[i][j] = err[i][j] <= bottleneck ? err[i][j] : big;
  const auto col = hungarian(cost);

  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = err[i][static_cast<std::size_t>(col[i])];
  return out;
}

double eta_pevp(const MatrixPolynomial& p, Complex lambda, PevpWeighting weighting, const Eigen::VectorXd* norms) {
  if (!std::isfinite(lambda.real()) || !std::isfinite(lambda.imag())) return kInf;
  const Eigen::Index d = p.degree();
  const Eigen::VectorXd own = norms ? Eigen::VectorXd() : coefficient_norms(p, CoefficientNorm::Spectral);
  const Eigen::VectorXd& nrm = norms ? *norms : own;

  const double r = std::abs(lambda);
  const double log_r = std::log(r);
  std::vector<double> logs(static_cast<std::size_t>(d + 1), -kInf);
  for (Eigen::Index i = 0; i <= d; ++i) {
    if (nrm[i] == 0.0) continue;
    if (i > 0 && r == 0.0) continue;
    logs[static_cast<std::size_t>(i)] = std::log(nrm[i]) + (i == 0 ? 0.0 : static_cast<double>(i) * log_r);
  }
  const double top = *std::max_element(logs.begin(), logs.end());
  if (top == -kInf) return 0.0;

  // P(λ)/M and the weight sum divided by M, M = max_i |λ|^i ||P_i||.
  const Complex phase = r > 0.0 ? lambda / r : Complex(1.0);
  Eigen::MatrixXcd scaled = Eigen::MatrixXcd::Zero(p.size(), p.size());
  Complex ph(1.0);
  double weight = 0.0;
  for (Eigen::Index i = 0; i <= d; ++i) {
    if (i > 0) ph *= phase;
    if (i > 0 && r == 0.0) break;
    const double pw = i == 0 ? -top : static_cast<double>(i) * log_r - top;
    scaled += (ph * std::exp(pw)) * p[i];
    if (logs[static_cast<std::size_t>(i)] > -kInf) {
      const double w = std::exp(logs[static_cast<std::size_t>(i)] - top);
      weight = weighting == PevpWeighting::Sum ? weight + w : std::max(weight, w);
    }
  }
  return linalg::jacobi_svd_sigma_min<double>(scaled) / weight;
}

PevpBackwardError eta_pevp_max(const MatrixPolynomial& p, const Eigen::VectorXcd& lambdas, PevpWeighting weighting) {
  const Eigen::VectorXd norms = coefficient_norms(p, CoefficientNorm::Spectral);
  PevpBackwardError out;
  out.per_eigenvalue.resize(lambdas.size());
  for (Eigen::Index k = 0; k < lambdas.size(); ++k) {
    const Complex l = lambdas[k];
    if (!std::isfinite(l.real()) || !std::isfinite(l.imag())) {
      out.per_eigenvalue[k] = std::numeric_limits<double>::quiet_NaN();
      ++out.excluded;
      continue;
    }
    out.per_eigenvalue[k] = eta_pevp(p, l, weighting, &norms);
    out.max = std::max(out.max, out.per_eigenvalue[k]);
  }
  return out;
}

}  // namespace tropiroots
