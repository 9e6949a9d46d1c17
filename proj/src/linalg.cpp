#include "tropiroots/linalg.hpp"

#include <vector>

#include "tropiroots/xprec.hpp"

namespace tropiroots::linalg {

namespace {

using DD = DoubleDouble;

struct DC {
  DD re, im;

  bool is_zero() const { return re.hi == 0.0 && im.hi == 0.0; }
  DC conj() const { return {re, -im}; }
  friend DC operator+(const DC& a, const DC& b) { return {a.re + b.re, a.im + b.im}; }
  friend DC operator-(const DC& a) { return {-a.re, -a.im}; }
  friend DC operator*(const DC& a, const DC& b) { return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re}; }
  friend DC operator*(const DD& a, const DC& b) { return {a * b.re, a * b.im}; }
};

// |z| with a power-of-two rescaling so the squares stay in range.
DD modulus(const DC& z) {
  const double m = std::max(std::abs(z.re.hi), std::abs(z.im.hi));
  if (m == 0.0) return {};
  int e = 0;
  std::frexp(m, &e);
  const DD x = z.re.ldexp(-e), y = z.im.ldexp(-e);
  return sqrt(x * x + y * y).ldexp(e);
}

struct Rot {
  DD c{1.0};
  DC s{};

  void apply(DC& x, DC& y) const {
    const DC xv = x, yv = y;
    x = c * xv + s * yv;
    y = -(s.conj() * xv) + c * yv;
  }
};

Rot make_rotation(const DC& a, const DC& b) {
  Rot g;
  if (b.is_zero()) return g;
  if (a.is_zero()) {
    const DD nb = modulus(b);
    g.c = DD();
    g.s = {b.re / nb, -(b.im / nb)};
    return g;
  }
  const DD na = modulus(a), nb = modulus(b);
  // hypot(na, nb) with the same rescaling as modulus().
  const DD rho = modulus({na, nb});
  const DC phase{a.re / na, a.im / na};
  g.c = na / rho;
  const DC bc = b.conj();
  g.s = {(phase * bc).re / rho, (phase * bc).im / rho};
  return g;
}

class DMatrix {
 public:
  explicit DMatrix(const CMatrix<double>& m) : n_(m.rows()), v_(static_cast<std::size_t>(m.size())) {
    for (Eigen::Index i = 0; i < n_; ++i)
      for (Eigen::Index j = 0; j < n_; ++j) (*this)(i, j) = {DD(m(i, j).real()), DD(m(i, j).imag())};
  }
  DC& operator()(Eigen::Index i, Eigen::Index j) { return v_[static_cast<std::size_t>(i * n_ + j)]; }

  void rotate_rows(const Rot& g, Eigen::Index i, Eigen::Index k, Eigen::Index from) {
    for (Eigen::Index j = from; j < n_; ++j) g.apply((*this)(i, j), (*this)(k, j));
  }
  void rotate_cols(const Rot& g, Eigen::Index i, Eigen::Index k, Eigen::Index rows) {
    for (Eigen::Index r = 0; r < rows; ++r) g.apply((*this)(r, i), (*this)(r, k));
  }
  CMatrix<double> rounded() {
    CMatrix<double> out(n_, n_);
    for (Eigen::Index i = 0; i < n_; ++i)
      for (Eigen::Index j = 0; j < n_; ++j) out(i, j) = {(*this)(i, j).re.to_double(), (*this)(i, j).im.to_double()};
    return out;
  }

 private:
  Eigen::Index n_;
  std::vector<DC> v_;
};

}  // namespace

HessTri<double> hess_tri_pair(const CMatrix<double>& a, const CMatrix<double>& b) {
  if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows())
    throw DimensionMismatch("hess_tri_pair: A and B must be square and of equal size");
  const Eigen::Index n = a.rows();
  DMatrix h(a), t(b);
  // Q^H and Z^H are accumulated by rows and transposed at the end.
  const CMatrix<double> id = CMatrix<double>::Identity(n, n);
  DMatrix qh(id), zh(id);

  for (Eigen::Index j = 0; j + 1 < n; ++j) {
    for (Eigen::Index i = n - 1; i > j; --i) {
      if (t(i, j).is_zero()) continue;
      const Rot g = make_rotation(t(i - 1, j), t(i, j));
      t.rotate_rows(g, i - 1, i, j);
      t(i, j) = {};
      h.rotate_rows(g, i - 1, i, 0);
      qh.rotate_rows(g, i - 1, i, 0);
    }
  }

  for (Eigen::Index jcol = 0; jcol + 2 < n; ++jcol) {
    for (Eigen::Index jrow = n - 1; jrow >= jcol + 2; --jrow) {
      if (h(jrow, jcol).is_zero()) continue;
      const Rot g = make_rotation(h(jrow - 1, jcol), h(jrow, jcol));
      h.rotate_rows(g, jrow - 1, jrow, jcol);
      h(jrow, jcol) = {};
      t.rotate_rows(g, jrow - 1, jrow, jrow - 1);
      qh.rotate_rows(g, jrow - 1, jrow, 0);

      if (t(jrow, jrow - 1).is_zero()) continue;
      const Rot gz = make_rotation(t(jrow, jrow), t(jrow, jrow - 1));
      h.rotate_cols(gz, jrow, jrow - 1, n);
      t.rotate_cols(gz, jrow, jrow - 1, jrow + 1);
      t(jrow, jrow - 1) = {};
      // Z <- Z·G^T: rows of Z^H see conj(G).
      Rot gc = gz;
      gc.s = gz.s.conj();
      zh.rotate_rows(gc, jrow, jrow - 1, 0);
    }
  }
  return {h.rounded(), t.rounded(), qh.rounded().adjoint(), zh.rounded().adjoint()};
}

}  // namespace tropiroots::linalg
