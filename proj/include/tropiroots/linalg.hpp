#pragma once

// Dense complex kernels: Givens rotations, Hessenberg-triangular reduction,
// a single-shift complex QZ iteration that only treats exactly zero
// diagonal entries of T as infinite eigenvalues, and one-sided Jacobi SVD.
//
// Everything is templated on the real scalar type; the library instantiates
// it with double.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <optional>
#include <vector>

#include <Eigen/Core>

#include "tropiroots/errors.hpp"

namespace tropiroots::linalg {

template <typename Real>
using CMatrix = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Real>
using CVector = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, 1>;

/// Plane rotation G = [c s; -conj(s) c] with G·[a; b] = [r; 0].
template <typename Real>
struct Givens {
  Real c = 1;
  std::complex<Real> s = 0;
  std::complex<Real> r = 0;

  /// (x, y) <- (c·x + s·y, -conj(s)·x + c·y), elementwise.
  template <typename X, typename Y>
  void apply(X&& x, Y&& y) const {
    for (Eigen::Index k = 0; k < x.size(); ++k) {
      const std::complex<Real> xv = x(k);
      const std::complex<Real> yv = y(k);
      x(k) = c * xv + s * yv;
      y(k) = -std::conj(s) * xv + c * yv;
    }
  }

  /// Accumulates G^H into columns (i, j) of a left transformation Q.
  template <typename M>
  void accumulate_left(M& q, Eigen::Index i, Eigen::Index j) const {
    for (Eigen::Index k = 0; k < q.rows(); ++k) {
      const std::complex<Real> qi = q(k, i);
      const std::complex<Real> qj = q(k, j);
      q(k, i) = c * qi + std::conj(s) * qj;
      q(k, j) = -s * qi + c * qj;
    }
  }
};

namespace detail {

// Rotation that is the identity when both entries vanish.
template <typename Real>
Givens<Real> rotation(std::complex<Real> a, std::complex<Real> b) {
  Givens<Real> g;
  if (b == std::complex<Real>(0)) {
    g.r = a;
    return g;
  }
  if (a == std::complex<Real>(0)) {
    const Real nb = std::abs(b);
    g.c = 0;
    g.s = std::conj(b) / nb;
    g.r = nb;
    return g;
  }
  const Real na = std::abs(a);
  const Real nb = std::abs(b);
  const Real rho = std::hypot(na, nb);
  const std::complex<Real> phase = a / na;
  g.c = na / rho;
  g.s = phase * std::conj(b) / rho;
  g.r = phase * rho;
  return g;
}

template <typename Real>
Real abs1(std::complex<Real> z) {
  return std::abs(z.real()) + std::abs(z.imag());
}

}  // namespace detail

/// Rotation with G·[a; b] = [r; 0], c real, c² + |s|² = 1.
template <typename Real>
Givens<Real> givens(std::complex<Real> a, std::complex<Real> b) {
  if (a == std::complex<Real>(0) && b == std::complex<Real>(0)) throw BothZero();
  return detail::rotation(a, b);
}

/// Q^H·A·Z = H upper Hessenberg, Q^H·B·Z = T upper triangular.
template <typename Real>
struct HessTri {
  CMatrix<Real> h;
  CMatrix<Real> t;
  CMatrix<Real> q;
  CMatrix<Real> z;
};

/// Unitary Q, Z and triangular S, T with A = Q·S·Z^H, B = Q·T·Z^H.
template <typename Real>
struct GeneralizedSchur {
  CMatrix<Real> s;
  CMatrix<Real> t;
  CMatrix<Real> q;  // empty unless accumulated
  CMatrix<Real> z;
  CVector<Real> alpha;
  CVector<Real> beta;
  std::size_t iterations = 0;
  /// Number of exactly zero beta values.
  std::size_t infinite_deflations = 0;

  /// alpha/beta; infinite when beta is exactly zero.
  CVector<Real> eigenvalues() const {
    CVector<Real> out(alpha.size());
    for (Eigen::Index i = 0; i < alpha.size(); ++i) {
      out(i) = beta(i) == std::complex<Real>(0)
                   ? std::complex<Real>(std::numeric_limits<Real>::infinity(), 0)
                   : alpha(i) / beta(i);
    }
    return out;
  }
};

/// Reduces (A, B) to Hessenberg-triangular form with Givens rotations.
/// Rotations whose target entry is already zero are skipped.
template <typename Real>
HessTri<Real> hess_tri(const CMatrix<Real>& a, const CMatrix<Real>& b) {
  if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows())
    throw DimensionMismatch("hess_tri: A and B must be square and of equal size");
  const Eigen::Index n = a.rows();
  const std::complex<Real> zero(0);
  HessTri<Real> out{a, b, CMatrix<Real>::Identity(n, n), CMatrix<Real>::Identity(n, n)};
  auto& h = out.h;
  auto& t = out.t;

  for (Eigen::Index j = 0; j + 1 < n; ++j) {
    for (Eigen::Index i = n - 1; i > j; --i) {
      if (t(i, j) == zero) continue;
      const auto g = detail::rotation(t(i - 1, j), t(i, j));
      g.apply(t.row(i - 1).tail(n - j), t.row(i).tail(n - j));
      t(i, j) = zero;
      g.apply(h.row(i - 1), h.row(i));
      g.accumulate_left(out.q, i - 1, i);
    }
  }

  for (Eigen::Index jcol = 0; jcol + 2 < n; ++jcol) {
    for (Eigen::Index jrow = n - 1; jrow >= jcol + 2; --jrow) {
      if (h(jrow, jcol) == zero) continue;
      const auto g = detail::rotation(h(jrow - 1, jcol), h(jrow, jcol));
      g.apply(h.row(jrow - 1).tail(n - jcol), h.row(jrow).tail(n - jcol));
      h(jrow, jcol) = zero;
      g.apply(t.row(jrow - 1).tail(n - jrow + 1), t.row(jrow).tail(n - jrow + 1));
      g.accumulate_left(out.q, jrow - 1, jrow);

      if (t(jrow, jrow - 1) == zero) continue;
      const auto gz = detail::rotation(t(jrow, jrow), t(jrow, jrow - 1));
      gz.apply(h.col(jrow), h.col(jrow - 1));
      gz.apply(t.col(jrow).head(jrow + 1), t.col(jrow - 1).head(jrow + 1));
      t(jrow, jrow - 1) = zero;
      gz.apply(out.z.col(jrow), out.z.col(jrow - 1));
    }
  }
  return out;
}

/// hess_tri carried out in pair arithmetic, rounded once at the end. Errors
/// in each column of T then stay proportional to that column's own scale,
/// which the working-precision version loses when it rotates rows whose B
/// entries differ by many orders of magnitude.
HessTri<double> hess_tri_pair(const CMatrix<double>& a, const CMatrix<double>& b);

struct QzOptions {
  /// Iteration cap is maxit_factor · n.
  std::size_t maxit_factor = 80;
  /// Keep Q and Z.
  bool accumulate = true;
  /// Stagnant iterations on one eigenvalue before an exceptional shift.
  std::size_t exceptional_interval = 20;
};

/// Single-shift implicit complex QZ on a Hessenberg-triangular pair.
///
/// A subdiagonal entry of H is set to zero when it is at most
/// eps·(|h_jj| + |h_j+1,j+1|). A diagonal entry of T is never set to zero;
/// an infinite eigenvalue is only produced when some t_jj is exactly zero.
/// `q0`/`z0` are the accumulators from the reduction, if any.
template <typename Real>
GeneralizedSchur<Real> qz_strict(CMatrix<Real> h, CMatrix<Real> t, const QzOptions& opts = {},
                                 const CMatrix<Real>* q0 = nullptr,
                                 const CMatrix<Real>* z0 = nullptr) {
  using C = std::complex<Real>;
  using detail::abs1;
  if (h.rows() != h.cols() || t.rows() != t.cols() || h.rows() != t.rows())
    throw DimensionMismatch("qz_strict: H and T must be square and of equal size");

  const Eigen::Index n = h.rows();
  const C zero(0);
  const Real safmin = std::numeric_limits<Real>::min();
  const Real ulp = std::numeric_limits<Real>::epsilon();

  GeneralizedSchur<Real> out;
  out.alpha.resize(n);
  out.beta.resize(n);
  CMatrix<Real> q, z;
  if (opts.accumulate) {
    q = q0 ? *q0 : CMatrix<Real>::Identity(n, n);
    z = z0 ? *z0 : CMatrix<Real>::Identity(n, n);
  }

  const Real ascale = Real(1) / std::max(safmin, h.norm());
  const Real bscale = Real(1) / std::max(safmin, t.norm());
  const std::size_t maxit = opts.maxit_factor * static_cast<std::size_t>(std::max<Eigen::Index>(n, 1));

  // Row rotation on rows (i, i+1), columns from col_begin to the end.
  auto rotate_rows = [&](const Givens<Real>& g, Eigen::Index i, Eigen::Index hcol, Eigen::Index tcol) {
    g.apply(h.row(i).tail(n - hcol), h.row(i + 1).tail(n - hcol));
    if (tcol < n) g.apply(t.row(i).tail(n - tcol), t.row(i + 1).tail(n - tcol));
    if (opts.accumulate) g.accumulate_left(q, i, i + 1);
  };
  // Column rotation mixing (x = col jx, y = col jy) in rows 0..hrows-1 / trows-1.
  auto rotate_cols = [&](const Givens<Real>& g, Eigen::Index jx, Eigen::Index jy, Eigen::Index hrows,
                         Eigen::Index trows) {
    g.apply(h.col(jx).head(hrows), h.col(jy).head(hrows));
    if (trows > 0) g.apply(t.col(jx).head(trows), t.col(jy).head(trows));
    if (opts.accumulate) g.apply(z.col(jx), z.col(jy));
  };

  const Eigen::Index ilo = 0;
  Eigen::Index ilast = n - 1;
  std::size_t iiter = 0;
  std::size_t total = 0;
  C eshift = zero;

  // T(ilast, ilast) == 0: zero H(ilast, ilast-1) so an infinite eigenvalue splits off.
  auto drop_infinite = [&]() {
    const auto g = detail::rotation(h(ilast, ilast), h(ilast, ilast - 1));
    h(ilast, ilast) = g.r;
    h(ilast, ilast - 1) = zero;
    rotate_cols(g, ilast, ilast - 1, ilast, ilast);
  };

  while (ilast >= ilo) {
    bool deflate = false;
    Eigen::Index ifirst = ilo;

    if (ilast == ilo) {
      deflate = true;
    } else if (abs1(h(ilast, ilast - 1)) <=
               std::max(safmin, ulp * (abs1(h(ilast, ilast)) + abs1(h(ilast - 1, ilast - 1))))) {
      h(ilast, ilast - 1) = zero;
      deflate = true;
    } else if (t(ilast, ilast) == zero) {
      drop_infinite();
      deflate = true;
    } else {
      // Find the top of the unreduced block; handle exact zeros on diag(T).
      for (Eigen::Index j = ilast - 1; j >= ilo; --j) {
        bool top = j == ilo;
        if (!top && abs1(h(j, j - 1)) <= std::max(safmin, ulp * (abs1(h(j, j)) + abs1(h(j - 1, j - 1))))) {
          h(j, j - 1) = zero;
          top = true;
        }
        if (t(j, j) == zero) {
          if (top) {
            // Split 1x1 blocks with zero T entries off the top until a
            // nonzero T(jch+1, jch+1) remains.
            bool resolved = false;
            for (Eigen::Index jch = j; jch < ilast; ++jch) {
              const auto g = detail::rotation(h(jch, jch), h(jch + 1, jch));
              h(jch, jch) = g.r;
              h(jch + 1, jch) = zero;
              g.apply(h.row(jch).tail(n - jch - 1), h.row(jch + 1).tail(n - jch - 1));
              g.apply(t.row(jch).tail(n - jch - 1), t.row(jch + 1).tail(n - jch - 1));
              if (opts.accumulate) g.accumulate_left(q, jch, jch + 1);
              if (t(jch + 1, jch + 1) != zero) {
                if (jch + 1 >= ilast) {
                  deflate = true;
                } else {
                  ifirst = jch + 1;
                }
                resolved = true;
                break;
              }
            }
            if (!resolved) {
              drop_infinite();
                      deflate = true;
            }
          } else {
            // Chase the zero down to T(ilast, ilast).
            for (Eigen::Index jch = j; jch < ilast; ++jch) {
              const auto g = detail::rotation(t(jch, jch + 1), t(jch + 1, jch + 1));
              t(jch, jch + 1) = g.r;
              t(jch + 1, jch + 1) = zero;
              if (jch + 2 < n) g.apply(t.row(jch).tail(n - jch - 2), t.row(jch + 1).tail(n - jch - 2));
              g.apply(h.row(jch).tail(n - jch + 1), h.row(jch + 1).tail(n - jch + 1));
              if (opts.accumulate) g.accumulate_left(q, jch, jch + 1);

              const auto gz = detail::rotation(h(jch + 1, jch), h(jch + 1, jch - 1));
              h(jch + 1, jch) = gz.r;
              h(jch + 1, jch - 1) = zero;
              rotate_cols(gz, jch, jch - 1, jch + 1, jch);
            }
            drop_infinite();
                  deflate = true;
          }
          break;
        }
        if (top) {
          ifirst = j;
          break;
        }
      }
    }

    if (deflate) {
      out.alpha(ilast) = h(ilast, ilast);
      out.beta(ilast) = t(ilast, ilast);
      --ilast;
      iiter = 0;
      eshift = zero;
      continue;
    }

    // QZ sweep on rows/cols ifirst..ilast.
    ++iiter;
    ++total;
    if (total > maxit) throw NoConvergence(ilast, total - 1);

    C shift;
    if (iiter % opts.exceptional_interval != 0) {
      // Wilkinson-type shift from the trailing 2x2 of (ascale·H, bscale·T).
      const C u12 = (bscale * t(ilast - 1, ilast)) / (bscale * t(ilast, ilast));
      const C ad11 = (ascale * h(ilast - 1, ilast - 1)) / (bscale * t(ilast - 1, ilast - 1));
      const C ad21 = (ascale * h(ilast, ilast - 1)) / (bscale * t(ilast - 1, ilast - 1));
      const C ad12 = (ascale * h(ilast - 1, ilast)) / (bscale * t(ilast, ilast));
      const C ad22 = (ascale * h(ilast, ilast)) / (bscale * t(ilast, ilast));
      const C abi22 = ad22 - u12 * ad21;
      const C abi12 = ad12 - u12 * ad11;
      shift = abi22;
      const C ctemp = std::sqrt(abi12) * std::sqrt(ad21);
      Real temp = abs1(ctemp);
      if (ctemp != zero) {
        const C x = Real(0.5) * (ad11 - shift);
        const Real temp2 = abs1(x);
        temp = std::max(temp, temp2);
        C y = temp * std::sqrt((x / temp) * (x / temp) + (ctemp / temp) * (ctemp / temp));
        if (temp2 > 0) {
          const C xn = x / temp2;
          if (xn.real() * y.real() + xn.imag() * y.imag() < 0) y = -y;
        }
        shift -= ctemp * (ctemp / (x + y));
      }
    } else {
      // Exceptional shift: accumulated subdiagonal ratio, turned by a fixed phase.
      const C turn = std::polar(Real(1), Real(0.7853981633974483));
      eshift += (ascale * h(ilast, ilast - 1)) / (bscale * t(ilast - 1, ilast - 1));
      shift = eshift * turn;
    }

    const Eigen::Index istart = ifirst;
    const C c0 = ascale * h(istart, istart) - shift * (bscale * t(istart, istart));
    const C c1 = ascale * h(istart + 1, istart);
    Givens<Real> g = detail::rotation(c0, c1);

    for (Eigen::Index j = istart; j < ilast; ++j) {
      if (j > istart) {
        g = detail::rotation(h(j, j - 1), h(j + 1, j - 1));
        h(j, j - 1) = g.r;
        h(j + 1, j - 1) = zero;
      }
      rotate_rows(g, j, j, j);

      const auto gz = detail::rotation(t(j + 1, j + 1), t(j + 1, j));
      t(j + 1, j + 1) = gz.r;
      t(j + 1, j) = zero;
      const Eigen::Index hrows = std::min(j + 2, ilast) + 1;
      rotate_cols(gz, j + 1, j, hrows, j + 1);
    }
  }

  out.iterations = total;
  for (Eigen::Index i = 0; i < n; ++i) out.infinite_deflations += out.beta(i) == zero;
  out.s = std::move(h);
  out.t = std::move(t);
  if (opts.accumulate) {
    out.q = std::move(q);
    out.z = std::move(z);
  }
  return out;
}

/// Singular values by one-sided (Hestenes) Jacobi, unsorted.
template <typename Real>
std::vector<Real> jacobi_singular_values(const CMatrix<Real>& m) {
  CMatrix<Real> u = m;
  const Eigen::Index n = u.cols();
  const Real tol = std::max<Real>(1, static_cast<Real>(n)) * std::numeric_limits<Real>::epsilon();
  constexpr int kMaxSweeps = 80;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    bool rotated = false;
    for (Eigen::Index p = 0; p + 1 < n; ++p) {
      for (Eigen::Index r = p + 1; r < n; ++r) {
        const Real alpha = u.col(p).squaredNorm();
        const Real beta = u.col(r).squaredNorm();
        const std::complex<Real> gamma = u.col(p).dot(u.col(r));
        const Real g = std::abs(gamma);
        if (!(g > tol * std::sqrt(alpha) * std::sqrt(beta))) continue;
        rotated = true;
        const std::complex<Real> phase = gamma / g;
        const Real zeta = (beta - alpha) / (2 * g);
        const Real tan = std::copysign(Real(1), zeta) / (std::abs(zeta) + std::sqrt(1 + zeta * zeta));
        const Real cs = 1 / std::sqrt(1 + tan * tan);
        const Real sn = cs * tan;
        for (Eigen::Index k = 0; k < u.rows(); ++k) {
          const std::complex<Real> x = u(k, p);
          const std::complex<Real> w = u(k, r) * std::conj(phase);
          u(k, p) = cs * x - sn * w;
          u(k, r) = sn * x + cs * w;
        }
      }
    }
    if (!rotated) break;
  }
  std::vector<Real> sigma(static_cast<std::size_t>(n));
  for (Eigen::Index k = 0; k < n; ++k) sigma[static_cast<std::size_t>(k)] = u.col(k).norm();
  return sigma;
}

template <typename Real>
Real jacobi_svd_sigma_min(const CMatrix<Real>& m) {
  if (m.rows() != m.cols()) throw DimensionMismatch("jacobi_svd_sigma_min: matrix must be square");
  if (m.size() == 0) return 0;
  const auto s = jacobi_singular_values(m);
  return *std::min_element(s.begin(), s.end());
}

/// Spectral norm (largest singular value).
template <typename Real>
Real jacobi_svd_sigma_max(const CMatrix<Real>& m) {
  if (m.size() == 0) return 0;
  const auto s = jacobi_singular_values(m);
  return *std::max_element(s.begin(), s.end());
}

}  // namespace tropiroots::linalg
