#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Core>

namespace tropiroots {

using Complex = std::complex<double>;

/// Computed or exact zeros, multiplicities by repetition.
using RootSet = Eigen::VectorXcd;

/// Dense polynomial p(z) = Σ p_i z^i, coefficients ascending.
///
/// The leading coefficient is nonzero and every coefficient is finite.
class Polynomial {
 public:
  explicit Polynomial(Eigen::VectorXcd coeffs);
  Polynomial(std::initializer_list<Complex> coeffs);

  /// Drops trailing (highest-power) zeros before validating.
  static Polynomial trimmed(Eigen::VectorXcd coeffs);

  Eigen::Index degree() const { return coeffs_.size() - 1; }
  const Eigen::VectorXcd& coeffs() const { return coeffs_; }
  Complex operator[](Eigen::Index i) const { return coeffs_[i]; }
  Complex leading() const { return coeffs_[degree()]; }

  std::span<const Complex> span() const { return {coeffs_.data(), static_cast<std::size_t>(coeffs_.size())}; }
  Eigen::VectorXd magnitudes() const { return coeffs_.cwiseAbs(); }

 private:
  Eigen::VectorXcd coeffs_;
};

/// P(z) = Σ P_i z^i with square s×s coefficients.
class MatrixPolynomial {
 public:
  explicit MatrixPolynomial(std::vector<Eigen::MatrixXcd> coeffs);

  Eigen::Index degree() const { return static_cast<Eigen::Index>(coeffs_.size()) - 1; }
  Eigen::Index size() const { return coeffs_.front().rows(); }
  const std::vector<Eigen::MatrixXcd>& coeffs() const { return coeffs_; }
  const Eigen::MatrixXcd& operator[](Eigen::Index i) const { return coeffs_[static_cast<std::size_t>(i)]; }

 private:
  std::vector<Eigen::MatrixXcd> coeffs_;
};

/// Horner's rule in working precision.
Complex eval(const Polynomial& p, Complex z);

/// Σ w_i r^i, max_i w_i r^i and its first maximizing index, together with
/// their natural logs. Switches to a log-domain evaluation when the linear
/// one would leave the double range.
struct MagnitudeTerms {
  double sum = 0.0;
  double max = 0.0;
  Eigen::Index argmax = 0;
  double log_sum = 0.0;
  double log_max = 0.0;
};

MagnitudeTerms weighted_power_sum(std::span<const double> weights, double r);
/// Same as weighted_power_sum with weights given as natural logs (-inf for zero).
MagnitudeTerms log_weighted_power_sum(std::span<const double> log_weights, double r);

/// weighted_power_sum with weights |p_i|.
MagnitudeTerms eval_magnitude_terms(const Polynomial& p, double r);

/// Strips zero low-order coefficients: p(z) = z^m0 · q(z), q_0 != 0.
struct ZeroDeflation {
  Polynomial reduced;
  Eigen::Index zero_roots = 0;
};

ZeroDeflation deflate_zero_roots(const Eigen::VectorXcd& coeffs);
ZeroDeflation deflate_zero_roots(const Polynomial& p);

/// Closed interval of decimal exponents e; moduli are drawn as 10^e.
struct ExponentRange {
  double lo = 0.0;
  double hi = 0.0;
};

struct GeneratedPolynomial {
  Polynomial poly;
  RootSet roots;
};

/// Monic polynomial with random zeros of modulus 10^e (e uniform in range),
/// uniform argument, and multiplicities uniform in [1, multiplicity_max]
/// (the last one truncated so they sum to d). Expansion is done at pair
/// precision; samples whose coefficients leave the normal double range are
/// redrawn, at most 100 times.
GeneratedPolynomial random_from_roots(Eigen::Index degree, ExponentRange range,
                                      Eigen::Index multiplicity_max, std::uint64_t seed);

/// Coefficients of modulus 10^e with uniform argument.
Polynomial random_coeffs(Eigen::Index degree, ExponentRange range, std::uint64_t seed);

/// Coefficients 10^e · G / ||G||_2 with G complex Gaussian.
MatrixPolynomial random_matrix_polynomial(Eigen::Index size, Eigen::Index degree,
                                          ExponentRange range, std::uint64_t seed);

}  // namespace tropiroots
