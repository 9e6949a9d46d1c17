#include "tropiroots/poly.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "tropiroots/errors.hpp"
#include "tropiroots/linalg.hpp"
#include "tropiroots/xprec.hpp"

namespace tropiroots {

namespace {

constexpr int kMaxGenerationAttempts = 100;

bool all_finite(const Eigen::VectorXcd& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if (!std::isfinite(v[i].real()) || !std::isfinite(v[i].imag())) return false;
  return true;
}

Complex random_polar(std::mt19937_64& rng, ExponentRange range) {
  std::uniform_real_distribution<double> exponent(range.lo, range.hi);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  const double e = range.lo == range.hi ? range.lo : exponent(rng);
  return std::polar(std::pow(10.0, e), angle(rng));
}

void check_range(Eigen::Index degree, ExponentRange range) {
  if (degree < 1) throw InvalidInput("generator: degree must be at least 1");
  if (!(range.lo <= range.hi)) throw InvalidInput("generator: empty exponent range");
}

}  // namespace

Polynomial::Polynomial(Eigen::VectorXcd coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.size() == 0) throw InvalidInput("polynomial: no coefficients");
  if (!all_finite(coeffs_)) throw InvalidInput("polynomial: non-finite coefficient");
  if (coeffs_[coeffs_.size() - 1] == Complex(0)) {
    if ((coeffs_.array() == Complex(0)).all()) throw ZeroPolynomial();
    throw InvalidInput("polynomial: leading coefficient is zero");
  }
}

Polynomial::Polynomial(std::initializer_list<Complex> coeffs)
    : Polynomial(Eigen::Map<const Eigen::VectorXcd>(coeffs.begin(), static_cast<Eigen::Index>(coeffs.size()))) {}

Polynomial Polynomial::trimmed(Eigen::VectorXcd coeffs) {
  Eigen::Index n = coeffs.size();
  while (n > 0 && coeffs[n - 1] == Complex(0)) --n;
  if (n == 0) throw ZeroPolynomial();
  return Polynomial(coeffs.head(n).eval());
}

MatrixPolynomial::MatrixPolynomial(std::vector<Eigen::MatrixXcd> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) throw InvalidInput("matrix polynomial: no coefficients");
  const Eigen::Index s = coeffs_.front().rows();
  if (s == 0) throw InvalidInput("matrix polynomial: empty coefficients");
  for (const auto& c : coeffs_) {
    if (c.rows() != s || c.cols() != s)
      throw DimensionMismatch("matrix polynomial: coefficients must be square and of equal size");
    if (!c.allFinite()) throw InvalidInput("matrix polynomial: non-finite coefficient");
  }
  if (coeffs_.back().isZero(0.0)) throw InvalidInput("matrix polynomial: leading coefficient is zero");
}

Complex eval(const Polynomial& p, Complex z) {
  const auto& c = p.coeffs();
  Complex acc = c[p.degree()];
  for (Eigen::Index i = p.degree() - 1; i >= 0; --i) acc = acc * z + c[i];
  return acc;
}

MagnitudeTerms log_weighted_power_sum(std::span<const double> log_weights, double r) {
  const double neg_inf = -std::numeric_limits<double>::infinity();
  const double log_r = std::log(r);
  MagnitudeTerms out;
  out.log_max = neg_inf;
  std::vector<double> logs(log_weights.size(), neg_inf);
  for (std::size_t i = 0; i < log_weights.size(); ++i) {
    if (log_weights[i] == neg_inf) continue;
    // 0^0 = 1 for the constant term.
    logs[i] = i == 0 ? log_weights[0] : log_weights[i] + static_cast<double>(i) * log_r;
    if (logs[i] > out.log_max) {
      out.log_max = logs[i];
      out.argmax = static_cast<Eigen::Index>(i);
    }
  }
  if (out.log_max == neg_inf) {
    out.log_sum = neg_inf;
    return out;
  }
  double scaled = 0.0;
  for (double l : logs) scaled += std::exp(l - out.log_max);
  out.log_sum = out.log_max + std::log(scaled);
  out.sum = std::exp(out.log_sum);
  out.max = std::exp(out.log_max);
  return out;
}

MagnitudeTerms weighted_power_sum(std::span<const double> weights, double r) {
  if (!(r >= 0.0)) throw InvalidInput("weighted_power_sum: r must be nonnegative");
  // Linear evaluation keeps results monotone in each weight; only give it up
  // when powers or the sum leave the normal range.
  MagnitudeTerms out;
  bool linear_ok = true;
  bool any_positive = false;
  double power = 1.0;
  for (std::size_t i = 0; i < weights.size() && linear_ok; ++i) {
    if (i > 0) power *= r;
    if (!std::isfinite(weights[i])) linear_ok = false;
    if (r > 0.0 && (power < std::numeric_limits<double>::min() || !std::isfinite(power))) linear_ok = false;
    const double term = weights[i] * power;
    if (weights[i] > 0.0) any_positive = true;
    out.sum += term;
    if (term > out.max) {
      out.max = term;
      out.argmax = static_cast<Eigen::Index>(i);
    }
  }
  if (linear_ok && std::isfinite(out.sum) && (out.sum > 0.0 || !any_positive) &&
      (out.sum == 0.0 || out.max >= std::numeric_limits<double>::min())) {
    out.log_sum = std::log(out.sum);
    out.log_max = std::log(out.max);
    return out;
  }
  std::vector<double> logs(weights.size());
  for (std::size_t i = 0; i < weights.size(); ++i) logs[i] = std::log(weights[i]);
  return log_weighted_power_sum(logs, r);
}

MagnitudeTerms eval_magnitude_terms(const Polynomial& p, double r) {
  const Eigen::VectorXd w = p.magnitudes();
  return weighted_power_sum({w.data(), static_cast<std::size_t>(w.size())}, r);
}

ZeroDeflation deflate_zero_roots(const Eigen::VectorXcd& coeffs) {
  Eigen::Index m0 = 0;
  while (m0 < coeffs.size() && coeffs[m0] == Complex(0)) ++m0;
  if (m0 == coeffs.size()) throw ZeroPolynomial();
  return {Polynomial::trimmed(coeffs.tail(coeffs.size() - m0).eval()), m0};
}

ZeroDeflation deflate_zero_roots(const Polynomial& p) { return deflate_zero_roots(p.coeffs()); }

GeneratedPolynomial random_from_roots(Eigen::Index degree, ExponentRange range, Eigen::Index multiplicity_max,
                                      std::uint64_t seed) {
  check_range(degree, range);
  if (multiplicity_max < 1) throw InvalidInput("random_from_roots: multiplicity_max must be at least 1");
  std::mt19937_64 rng(seed);
  for (int attempt = 0; attempt < kMaxGenerationAttempts; ++attempt) {
    RootSet roots(degree);
    Eigen::Index filled = 0;
    while (filled < degree) {
      std::uniform_int_distribution<Eigen::Index> mult(1, multiplicity_max);
      const Eigen::Index m = std::min(mult(rng), degree - filled);
      const Complex z = random_polar(rng, range);
      roots.segment(filled, m).setConstant(z);
      filled += m;
    }
    const auto expanded = expand_from_roots({roots.data(), static_cast<std::size_t>(degree)}, Complex(1));
    bool representable = true;
    for (Eigen::Index i = 0; i <= degree && representable; ++i) {
      const double a = std::abs(expanded.rounded[i]);
      representable = std::isfinite(a) && a >= std::numeric_limits<double>::min();
    }
    if (representable) return {Polynomial(expanded.rounded), std::move(roots)};
  }
  throw GenerationFailed("random_from_roots: coefficients left the double range in every attempt");
}

Polynomial random_coeffs(Eigen::Index degree, ExponentRange range, std::uint64_t seed) {
  check_range(degree, range);
  std::mt19937_64 rng(seed);
  for (int attempt = 0; attempt < kMaxGenerationAttempts; ++attempt) {
    Eigen::VectorXcd c(degree + 1);
    for (Eigen::Index i = 0; i <= degree; ++i) c[i] = random_polar(rng, range);
    if (all_finite(c) && (c.array() != Complex(0)).all()) return Polynomial(std::move(c));
  }
  throw GenerationFailed("random_coeffs: coefficients left the double range in every attempt");
}

MatrixPolynomial random_matrix_polynomial(Eigen::Index size, Eigen::Index degree, ExponentRange range,
                                          std::uint64_t seed) {
  check_range(degree, range);
  if (size < 1) throw InvalidInput("random_matrix_polynomial: size must be at least 1");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> exponent(range.lo, range.hi);
  std::vector<Eigen::MatrixXcd> coeffs;
  coeffs.reserve(static_cast<std::size_t>(degree + 1));
  for (Eigen::Index i = 0; i <= degree; ++i) {
    Eigen::MatrixXcd g(size, size);
    for (Eigen::Index c = 0; c < size; ++c)
      for (Eigen::Index r = 0; r < size; ++r) g(r, c) = Complex(normal(rng), normal(rng));
    const double e = range.lo == range.hi ? range.lo : exponent(rng);
    g *= std::pow(10.0, e) / linalg::jacobi_svd_sigma_max(g);
    coeffs.push_back(std::move(g));
  }
  return MatrixPolynomial(std::move(coeffs));
}

}  // namespace tropiroots
