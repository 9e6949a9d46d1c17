#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <random>
#include <vector>

#include <Eigen/Core>
#include <Eigen/QR>

namespace testing {

using Complex = std::complex<double>;
constexpr double kEps = std::numeric_limits<double>::epsilon();

inline Complex gaussian_complex(std::mt19937_64& rng) {
  std::normal_distribution<double> n;
  return {n(rng), n(rng)};
}

inline Complex unit_phase(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 2.0 * M_PI);
  return std::polar(1.0, u(rng));
}

inline Eigen::MatrixXcd gaussian_matrix(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& rng) {
  Eigen::MatrixXcd m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = gaussian_complex(rng);
  return m;
}

/// Haar-ish unitary: Q factor of a complex Gaussian matrix.
inline Eigen::MatrixXcd random_unitary(Eigen::Index n, std::mt19937_64& rng) {
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(gaussian_matrix(n, n, rng));
  return qr.householderQ() * Eigen::MatrixXcd::Identity(n, n);
}

inline double rel_err(Complex a, Complex b) { return std::abs(a - b) / std::abs(b); }

/// Chordal distance between eigenvalues given as (alpha, beta) pairs.
inline double chordal(Complex a1, Complex b1, Complex a2, Complex b2) {
  return std::abs(a1 * b2 - a2 * b1) / (std::hypot(std::abs(a1), std::abs(b1)) * std::hypot(std::abs(a2), std::abs(b2)));
}

/// Greedy matching by nearest distance; returns max over pairs of dist.
template <typename Dist>
double greedy_match_max(std::size_t n, Dist dist) {
  std::vector<bool> used(n, false);
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t arg = 0;
    for (std::size_t j = 0; j < n; ++j)
      if (!used[j] && dist(i, j) < best) best = dist(i, j), arg = j;
    used[arg] = true;
    worst = std::max(worst, best);
  }
  return worst;
}

}  // namespace testing
