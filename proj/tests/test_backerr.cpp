#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "helpers.hpp"
#include "tropiroots/backerr.hpp"
#include "tropiroots/errors.hpp"
#include "tropiroots/solver.hpp"
#include "tropiroots/tropical.hpp"

using namespace tropiroots;
using testing::kEps;
using Mat = Eigen::MatrixXcd;

namespace {

const Polynomial kGradedQuartic{-1e-60, 1e-30, 2e-25, -1.0, 1.0};
const RootSet kGradedQuarticRoots{{-9.999999999000001e-16, 9.999999999999999e-31, 1.000000000100000e-15, 1.0}};

std::vector<double> magnitudes(const Polynomial& p) {
  std::vector<double> m;
  for (Eigen::Index i = 0; i <= p.degree(); ++i) m.push_back(std::abs(p[i]));
  return m;
}

GammaWeights weights(const Polynomial& p) { return gammas(p, tropical_roots(p)); }

std::vector<double> to_vec(const Eigen::VectorXd& v) { return {v.data(), v.data() + v.size()}; }

Polynomial random_poly(std::mt19937_64& rng, int d, double spread, bool zeros) {
  std::uniform_real_distribution<double> e(-spread, spread), u(0, 1);
  Eigen::VectorXcd c(d + 1);
  for (int i = 0; i <= d; ++i)
    c[i] = zeros && i > 0 && i < d && u(rng) < 0.2 ? Complex(0) : std::pow(10.0, e(rng)) * testing::unit_phase(rng);
  return Polynomial(c);
}

ExpandedPolynomial from_coeffs(const Eigen::VectorXcd& c) {
  ExpandedPolynomial e;
  for (Eigen::Index i = 0; i < c.size(); ++i) e.coeffs.emplace_back(c[i]);
  e.rounded = c;
  return e;
}

}  // namespace

TEST_CASE("eta_single") {
  const Polynomial q{-1.0, 0.0, 1.0};
  CHECK(eta_single(q, 1.0, magnitudes(q)) == 0.0);

  const Complex z = 1.0 + 1e-8;
  const long double zl = static_cast<long double>(z.real());
  const long double oracle = (zl * zl - 1) / (1 + zl * zl);
  CHECK(eta_single(q, z, magnitudes(q)) == doctest::Approx(static_cast<double>(oracle)).epsilon(1e-7));
  CHECK(eta_single(q, z, magnitudes(q)) == doctest::Approx(1e-8).epsilon(1e-7));

  CHECK(eta_single(q, 2.0, std::vector<double>{0, 0, 0}) == INFINITY);
  CHECK_THROWS_AS(eta_single(q, 2.0, std::vector<double>{1, 1}), LengthMismatch);

  SUBCASE("|p| weights agree with the relative formula") {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> e(-5, 5);
    for (int trial = 0; trial < 100; ++trial) {
      const Polynomial p = random_poly(rng, 1 + trial % 15, 5, false);
      const Complex zh = std::pow(10.0, e(rng) / 5) * testing::unit_phase(rng);
      CHECK(eta_single(p, zh, magnitudes(p)) == doctest::Approx(eta_single_relative(p, zh)).epsilon(1e-13));
    }
  }
}

TEST_CASE("single-root bound chain") {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> e(-20, 20);
  for (int trial = 0; trial < 1000; ++trial) {
    const int d = 1 + trial % 30;
    const Polynomial p = random_poly(rng, d, 20, true);
    const GammaWeights g = weights(p);
    const Complex zh = std::pow(10.0, e(rng)) * testing::unit_phase(rng);
    const double eg = eta_single(p, zh, to_vec(g.gamma_tilde));
    const double ep = eta_single(p, zh, magnitudes(p));
    if (!std::isfinite(ep)) continue;
    CHECK(eg <= ep);
    CHECK(ep <= (d + 1) * eg);
  }
}

TEST_CASE("minimizing perturbation is attained") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    const Polynomial p = random_poly(rng, 3 + trial % 15, 10, false);
    const GammaWeights g = weights(p);
    const RootSet roots = solve(p).roots;
    for (Eigen::Index k = 0; k < roots.size(); ++k) {
      const Complex z = roots[k];
      const double r = std::abs(z);
      const XComplex res = xeval(p.span(), z);
      double s = 0.0;
      for (Eigen::Index i = 0; i <= p.degree(); ++i) s += g.gamma_tilde[i] * std::pow(r, double(i));
      // Δp_i = −p(z)·γ̃_i·conj(z)^i / (|z|^i·S), then (p + Δp)(z) evaluated at pair precision.
      std::vector<XComplex> q;
      for (Eigen::Index i = 0; i <= p.degree(); ++i) {
        const Complex phase = std::pow(std::conj(z) / r, double(i));
        const double w = g.gamma_tilde[i] / s;
        q.push_back(XComplex(p[i]) - res * XComplex(w * phase));
      }
      XComplex acc;
      for (auto it = q.rbegin(); it != q.rend(); ++it) acc = acc * XComplex(z) + *it;
      CHECK(acc.log_abs() <= std::log(10 * std::ldexp(1.0, -100) * s));
    }
  }
}

TEST_CASE("eta_norm_global") {
  const Polynomial q{-1.0, 0.0, 1.0};
  CHECK(eta_norm_global(q, RootSet{{1.0, -1.0}}) == 0.0);

  const RootSet ex = solve(kGradedQuartic).roots;
  CHECK(eta_norm_global(kGradedQuartic, ex) <= 1.5e-15);

  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 20; ++trial) {
    const Polynomial p = random_poly(rng, 5, 3, false);
    RootSet r = solve(p).roots;
    for (Eigen::Index k = 0; k < r.size(); ++k) r[k] *= 1.0 + 1e-6 * testing::gaussian_complex(rng);
    const Complex c = 1e7 * testing::unit_phase(rng);
    const Polynomial cp(c * p.coeffs());
    CHECK(eta_norm_global(cp, r) == doctest::Approx(eta_norm_global(p, r)).epsilon(1e-13));
  }
}

TEST_CASE("eta_minmax_upper") {
  SUBCASE("graded quartic, computed roots") {
    const auto rep = eta_minmax_upper(kGradedQuartic, solve(kGradedQuartic).roots, weights(kGradedQuartic));
    CHECK(rep.eta_minmax <= 3.5e-15);
    CHECK(rep.per_coeff.size() == 5);
    CHECK(rep.per_coeff[4].ratio == 0.0);
    CHECK(rep.eta_minmax <= rep.eta_elem_rel);
  }
  SUBCASE("graded quartic, large errors on the tiny zeros") {
    const std::vector<double> err{1.5e-9, 5.1e-2, 1.5e-9, 0.0};
    RootSet r(4);
    for (Eigen::Index k = 0; k < 4; ++k) r[k] = kGradedQuarticRoots[k] * (1.0 + err[std::size_t(k)]);
    const auto rep = eta_minmax_upper(kGradedQuartic, r, weights(kGradedQuartic));
    CHECK(rep.eta_minmax >= 1e-2);
    CHECK(rep.eta_minmax <= 1e-1);
    CHECK(rep.eta_norm <= 8.2e-25);
    CHECK(rep.eta_norm == doctest::Approx(eta_norm_global(kGradedQuartic, r)));
  }
  SUBCASE("exact roots") {
    const Polynomial p{-6.0, 11.0, -6.0, 1.0};
    const auto rep = eta_minmax_upper(p, RootSet{{1.0, 2.0, 3.0}}, weights(p));
    CHECK(rep.eta_minmax <= 10 * std::ldexp(1.0, -100));
    CHECK(rep.eta_elem_rel == 0.0);
  }
  SUBCASE("perturbed zero coefficient") {
    const Polynomial p{1.0, 0.0, 1.0};
    const auto rep = eta_minmax_upper(p, RootSet{{Complex(1e-3, 1.0), Complex(0, -1.0)}}, weights(p));
    CHECK(rep.eta_elem_rel == INFINITY);
    REQUIRE(rep.elem_rel_infinite_at.has_value());
    CHECK(*rep.elem_rel_infinite_at == 1);
    CHECK(std::isfinite(rep.eta_minmax));
  }
  SUBCASE("scaling invariance and ordering") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 100; ++trial) {
      const Polynomial p = random_poly(rng, 2 + trial % 20, 10, false);
      RootSet r = solve(p).roots;
      for (Eigen::Index k = 0; k < r.size(); ++k) r[k] *= 1.0 + 1e-10 * testing::gaussian_complex(rng);
      const auto a = eta_minmax_upper(p, r, weights(p));
      // Power-of-two magnitude and quarter-turn phase so c·p is exact.
      const Complex quarter[4] = {1.0, Complex(0, 1), -1.0, Complex(0, -1)};
      const Complex c = std::ldexp(1.0, trial % 41 - 20) * quarter[trial % 4];
      const Polynomial cp(c * p.coeffs());
      const auto b = eta_minmax_upper(cp, r, weights(cp));
      CHECK(std::abs(a.eta_minmax - b.eta_minmax) <= 1e-13 * a.eta_minmax);
      if (std::isfinite(a.eta_elem_rel)) CHECK(a.eta_minmax <= a.eta_elem_rel);
      for (const auto& row : a.per_coeff) CHECK(row.ratio >= 0.0);
    }
  }
  CHECK_THROWS_AS(eta_minmax_upper(kGradedQuartic, RootSet{{1.0, 2.0}}, weights(kGradedQuartic)), LengthMismatch);
}

TEST_CASE("eta_minmax_opt_real") {
  SUBCASE("scaled copy") {
    const Polynomial p{-6.0, 11.0, -6.0, 1.0};
    const double c = 1.0 + 1.0 / 64;
    double mu = 0.0;
    const double v = eta_minmax_opt_real(p, from_coeffs(c * p.coeffs()), weights(p), &mu);
    CHECK(v <= 1e-15);
    CHECK(mu == doctest::Approx(1.0 / c).epsilon(1e-13));
  }
  SUBCASE("single perturbed coefficient against a grid scan") {
    std::mt19937_64 rng(6);
    for (int trial = 0; trial < 20; ++trial) {
      Eigen::VectorXcd c(6);
      for (int i = 0; i < 6; ++i) c[i] = std::pow(10.0, 4 * testing::gaussian_complex(rng).real());
      const Polynomial p(c);
      const GammaWeights g = weights(p);
      const double delta = 1e-3 * (1 + trial);
      Eigen::VectorXcd pt = c;
      pt[1] *= 1 + delta;
      const double v = eta_minmax_opt_real(p, from_coeffs(pt), g);
      CHECK(v <= delta * std::abs(c[1]) / g.gamma_tilde[1] * (1 + 1e-12));
      double grid = INFINITY;
      for (int k = -4000; k <= 4000; ++k) {
        const double mu = 1.0 + k * 1e-5;
        double f = 0.0;
        for (int i = 0; i < 6; ++i) f = std::max(f, std::abs(c[i] - mu * pt[i]) / g.gamma_tilde[i]);
        grid = std::min(grid, f);
      }
      CHECK(v <= grid * (1 + 1e-9));
    }
  }
  SUBCASE("never above the mu = 1 value on real data") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> e(-5, 5);
    for (int trial = 0; trial < 100; ++trial) {
      const int d = 2 + trial % 12;
      RootSet z(d);
      for (int k = 0; k < d; ++k) z[k] = (k % 2 ? -1.0 : 1.0) * std::pow(10.0, e(rng));
      const Polynomial p(expand_from_roots({z.data(), std::size_t(d)}, 1.0).rounded.real().cast<Complex>());
      const RootSet r = solve(p).roots;
      const GammaWeights g = weights(p);
      const double upper = eta_minmax_upper(p, r, g).eta_minmax;
      CHECK(eta_minmax_opt_real(p, r, g) <= upper);
    }
  }
  const Polynomial cp{Complex(1, 1), 1.0};
  CHECK_THROWS_AS(eta_minmax_opt_real(cp, RootSet{{Complex(-1, -1)}}, weights(cp)), NonRealInput);
  const Polynomial rp{1.0, 0.0, 1.0};
  CHECK_THROWS_AS(eta_minmax_opt_real(rp, RootSet{{Complex(0, 1), Complex(0.5, -1)}}, weights(rp)), NonRealInput);
}

TEST_CASE("forward_errors") {
  const RootSet a{{1.0, Complex(0, 2), -3.0}};
  for (double e : forward_errors(a, a)) CHECK(e == 0.0);
  CHECK_THROWS_AS(forward_errors(a, RootSet{{1.0}}), LengthMismatch);

  const auto fe = forward_errors(kGradedQuarticRoots, solve(kGradedQuartic).roots);
  for (double e : fe) CHECK(e <= 5e-15);

  SUBCASE("bottleneck optimal and permutation invariant") {
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 100; ++trial) {
      const int n = 2 + trial % 5;
      RootSet t(n), c(n);
      for (int k = 0; k < n; ++k) {
        t[k] = testing::gaussian_complex(rng);
        c[k] = t[k] + 0.7 * testing::gaussian_complex(rng);
      }
      const auto got = forward_errors(t, c);
      // Brute force over all assignments.
      std::vector<int> perm(static_cast<std::size_t>(n));
      std::iota(perm.begin(), perm.end(), 0);
      double best = INFINITY;
      do {
        double worst = 0;
        for (int k = 0; k < n; ++k) worst = std::max(worst, testing::rel_err(c[perm[std::size_t(k)]], t[k]));
        best = std::min(best, worst);
      } while (std::next_permutation(perm.begin(), perm.end()));
      CHECK(*std::max_element(got.begin(), got.end()) == best);

      std::vector<int> p(static_cast<std::size_t>(n));
      std::iota(p.begin(), p.end(), 0);
      std::shuffle(p.begin(), p.end(), rng);
      RootSet cs(n), ts(n);
      for (int k = 0; k < n; ++k) cs[k] = c[p[std::size_t(k)]], ts[k] = t[p[std::size_t(k)]];
      CHECK(forward_errors(t, cs) == got);
      const auto shuffled = forward_errors(ts, c);
      for (int k = 0; k < n; ++k) CHECK(shuffled[std::size_t(k)] == got[std::size_t(p[std::size_t(k)])]);
    }
  }
}

TEST_CASE("eta_pevp") {
  const MatrixPolynomial q2({-Mat::Identity(2, 2), Mat::Zero(2, 2), Mat::Identity(2, 2)});
  CHECK(eta_pevp(q2, 1.0) == 0.0);
  const Complex l = 1.0 + 1e-9;
  const double expect = std::abs(l * l - 1.0) / (std::norm(l) + 1.0);
  CHECK(eta_pevp(q2, l) == doctest::Approx(expect).epsilon(1e-6));
  CHECK(eta_pevp(q2, l) == doctest::Approx(1e-9).epsilon(1e-6));
  CHECK(eta_pevp(q2, Complex(INFINITY, 0)) == INFINITY);

  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 50; ++trial) {
    const auto p = random_matrix_polynomial(3, 1 + trial % 5, {-5, 5}, 100 + std::uint64_t(trial));
    const Complex z = std::pow(10.0, 3 * testing::gaussian_complex(rng).real()) * testing::unit_phase(rng);
    const double s = eta_pevp(p, z, PevpWeighting::Sum), m = eta_pevp(p, z, PevpWeighting::Max);
    CHECK(s <= m * (1 + 1e-14));
    CHECK(m <= (p.degree() + 1) * s * (1 + 1e-14));
  }

  // Huge arguments stay finite.
  CHECK(std::isfinite(eta_pevp(q2, 1e200)));
}

TEST_CASE("eta_pevp_max") {
  const MatrixPolynomial q2({-Mat::Identity(2, 2), Mat::Zero(2, 2), Mat::Identity(2, 2)});
  CHECK(eta_pevp_max(q2, Eigen::VectorXcd{{1.0, 1.0, -1.0, -1.0}}).max == 0.0);
  const Eigen::VectorXcd one_off{{1.0, 1.0 + 1e-6, -1.0, Complex(INFINITY, 0)}};
  const auto r = eta_pevp_max(q2, one_off);
  CHECK(r.max == eta_pevp(q2, 1.0 + 1e-6));
  CHECK(r.excluded == 1);
  CHECK(std::isnan(r.per_eigenvalue[3]));
}
