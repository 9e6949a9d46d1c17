#pragma once

// Compensated (double-double) complex arithmetic with an extended binary
// exponent. Roughly 106 significant bits; the exponent is an int64 so
// intermediate products of widely spread roots never overflow.

#include <cmath>
#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Core>

namespace tropiroots {

/// Unevaluated sum hi + lo with |lo| <= ulp(hi)/2.
struct DoubleDouble {
  double hi = 0.0;
  double lo = 0.0;

  constexpr DoubleDouble() = default;
  constexpr DoubleDouble(double h) : hi(h) {}
  constexpr DoubleDouble(double h, double l) : hi(h), lo(l) {}

  static DoubleDouble two_sum(double a, double b) {
    const double s = a + b;
    const double bb = s - a;
    return {s, (a - (s - bb)) + (b - bb)};
  }
  static DoubleDouble quick_two_sum(double a, double b) {
    const double s = a + b;
    return {s, b - (s - a)};
  }
  static DoubleDouble two_prod(double a, double b) {
    const double p = a * b;
    return {p, std::fma(a, b, -p)};
  }

  friend DoubleDouble operator-(DoubleDouble a) { return {-a.hi, -a.lo}; }

  friend DoubleDouble operator+(DoubleDouble a, DoubleDouble b) {
    DoubleDouble s = two_sum(a.hi, b.hi);
    const DoubleDouble t = two_sum(a.lo, b.lo);
    s.lo += t.hi;
    s = quick_two_sum(s.hi, s.lo);
    s.lo += t.lo;
    return quick_two_sum(s.hi, s.lo);
  }
  friend DoubleDouble operator-(DoubleDouble a, DoubleDouble b) { return a + (-b); }

  friend DoubleDouble operator*(DoubleDouble a, DoubleDouble b) {
    DoubleDouble p = two_prod(a.hi, b.hi);
    p.lo += a.hi * b.lo + a.lo * b.hi;
    return quick_two_sum(p.hi, p.lo);
  }

  friend DoubleDouble operator/(DoubleDouble a, DoubleDouble b) {
    const double q1 = a.hi / b.hi;
    const DoubleDouble r = a - b * DoubleDouble(q1);
    const double q2 = r.hi / b.hi;
    const DoubleDouble r2 = r - b * DoubleDouble(q2);
    return quick_two_sum(q1, q2) + DoubleDouble(r2.hi / b.hi);
  }

  friend DoubleDouble sqrt(DoubleDouble a) {
    if (a.hi <= 0.0) return {};
    const double x = std::sqrt(a.hi);
    const DoubleDouble x2 = two_prod(x, x);
    return quick_two_sum(x, (a - x2).hi * 0.5 / x);
  }

  DoubleDouble ldexp(int e) const { return {std::ldexp(hi, e), std::ldexp(lo, e)}; }
  double to_double() const { return hi + lo; }
};

/// Complex value (re + i·im)·2^exponent with double-double parts.
///
/// Normalized form keeps max(|re.hi|, |im.hi|) in [0.5, 1), or both parts
/// zero with exponent 0.
class XComplex {
 public:
  XComplex() = default;
  XComplex(std::complex<double> z);  // NOLINT(google-explicit-constructor)
  XComplex(DoubleDouble re, DoubleDouble im, std::int64_t exponent);

  friend XComplex xadd(const XComplex& a, const XComplex& b);
  friend XComplex xmul(const XComplex& a, const XComplex& b);

  friend XComplex operator+(const XComplex& a, const XComplex& b) { return xadd(a, b); }
  friend XComplex operator-(const XComplex& a, const XComplex& b) { return xadd(a, -b); }
  friend XComplex operator*(const XComplex& a, const XComplex& b) { return xmul(a, b); }
  friend XComplex operator-(const XComplex& a) { return {-a.re_, -a.im_, a.exp_}; }

  bool is_zero() const { return re_.hi == 0.0 && im_.hi == 0.0; }
  const DoubleDouble& real_mantissa() const { return re_; }
  const DoubleDouble& imag_mantissa() const { return im_; }
  std::int64_t exponent() const { return exp_; }

  /// Rounded to working precision; may overflow to infinity or underflow to 0.
  std::complex<double> to_complex() const;
  /// Natural log of the modulus; -inf for zero.
  double log_abs() const;
  /// Modulus in working precision (may be inf/0 outside the double range).
  double abs() const;

 private:
  void normalize();

  DoubleDouble re_;
  DoubleDouble im_;
  std::int64_t exp_ = 0;
};

XComplex xadd(const XComplex& a, const XComplex& b);
XComplex xmul(const XComplex& a, const XComplex& b);

/// Coefficients of leading·Π(z − root) at pair precision plus rounded copies.
struct ExpandedPolynomial {
  std::vector<XComplex> coeffs;  // ascending powers
  Eigen::VectorXcd rounded;
};

/// Expands leading·Π(z − r_k) one linear factor at a time, roots taken in
/// nondecreasing modulus order.
ExpandedPolynomial expand_from_roots(std::span<const std::complex<double>> roots,
                                     std::complex<double> leading);

/// Horner evaluation of Σ c_i z^i at pair precision.
XComplex xeval(std::span<const std::complex<double>> coeffs, std::complex<double> z);

}  // namespace tropiroots
