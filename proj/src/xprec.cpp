#include "tropiroots/xprec.hpp"

#include <algorithm>
#include <limits>
#include <numbers>
#include <numeric>

namespace tropiroots {

namespace {

// Exponent gap beyond which the smaller addend cannot affect 106 bits.
constexpr std::int64_t kNegligibleGap = 240;

}  // namespace

XComplex::XComplex(std::complex<double> z) : re_(z.real()), im_(z.imag()) { normalize(); }

XComplex::XComplex(DoubleDouble re, DoubleDouble im, std::int64_t exponent)
    : re_(re), im_(im), exp_(exponent) {
  normalize();
}

void XComplex::normalize() {
  const double m = std::max(std::abs(re_.hi), std::abs(im_.hi));
  if (m == 0.0) {
    // hi == 0 implies lo == 0 for normalized pairs.
    re_ = {};
    im_ = {};
    exp_ = 0;
    return;
  }
  int k = 0;
  std::frexp(m, &k);
  if (k != 0) {
    re_ = re_.ldexp(-k);
    im_ = im_.ldexp(-k);
    exp_ += k;
  }
}

XComplex xadd(const XComplex& a, const XComplex& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  const std::int64_t e = std::max(a.exp_, b.exp_);
  const std::int64_t ga = e - a.exp_;
  const std::int64_t gb = e - b.exp_;
  if (ga > kNegligibleGap) return b;
  if (gb > kNegligibleGap) return a;
  const DoubleDouble ar = a.re_.ldexp(static_cast<int>(-ga));
  const DoubleDouble ai = a.im_.ldexp(static_cast<int>(-ga));
  const DoubleDouble br = b.re_.ldexp(static_cast<int>(-gb));
  const DoubleDouble bi = b.im_.ldexp(static_cast<int>(-gb));
  return XComplex(ar + br, ai + bi, e);
}

XComplex xmul(const XComplex& a, const XComplex& b) {
  if (a.is_zero() || b.is_zero()) return {};
  const DoubleDouble re = a.re_ * b.re_ - a.im_ * b.im_;
  const DoubleDouble im = a.re_ * b.im_ + a.im_ * b.re_;
  return XComplex(re, im, a.exp_ + b.exp_);
}

std::complex<double> XComplex::to_complex() const {
  if (is_zero()) return {0.0, 0.0};
  constexpr std::int64_t kClamp = 4000;
  const int e = static_cast<int>(std::clamp(exp_, -kClamp, kClamp));
  return {std::ldexp(re_.to_double(), e), std::ldexp(im_.to_double(), e)};
}

double XComplex::log_abs() const {
  if (is_zero()) return -std::numeric_limits<double>::infinity();
  const double m = std::hypot(re_.to_double(), im_.to_double());
  return std::log(m) + static_cast<double>(exp_) * std::numbers::ln2;
}

double XComplex::abs() const { return std::exp(log_abs()); }

ExpandedPolynomial expand_from_roots(std::span<const std::complex<double>> roots,
                                     std::complex<double> leading) {
  std::vector<std::size_t> order(roots.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return std::abs(roots[i]) < std::abs(roots[j]);
  });

  // c holds ascending coefficients of the partial product.
  std::vector<XComplex> c{XComplex(leading)};
  c.reserve(roots.size() + 1);
  for (std::size_t k : order) {
    const XComplex neg_root(-roots[k]);
    c.emplace_back();
    for (std::size_t i = c.size() - 1; i > 0; --i) c[i] = c[i - 1] + neg_root * c[i];
    c[0] = neg_root * c[0];
  }

  ExpandedPolynomial out;
  out.rounded.resize(static_cast<Eigen::Index>(c.size()));
  for (std::size_t i = 0; i < c.size(); ++i) out.rounded[static_cast<Eigen::Index>(i)] = c[i].to_complex();
  out.coeffs = std::move(c);
  return out;
}

XComplex xeval(std::span<const std::complex<double>> coeffs, std::complex<double> z) {
  XComplex acc;
  const XComplex xz(z);
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * xz + XComplex(*it);
  return acc;
}

}  // namespace tropiroots
