#include "tropiroots/tropical.hpp"

#include <cmath>
#include <limits>

#include "tropiroots/errors.hpp"

namespace tropiroots {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

bool is_normal_finite(double v) { return std::isfinite(v) && v >= std::numeric_limits<double>::min(); }

std::vector<double> logs_of(std::span<const double> magnitudes) {
  std::vector<double> out(magnitudes.size());
  for (std::size_t i = 0; i < magnitudes.size(); ++i) {
    if (!(magnitudes[i] >= 0.0) || !std::isfinite(magnitudes[i]))
      throw InvalidInput("tropical: magnitudes must be finite and nonnegative");
    out[i] = magnitudes[i] > 0.0 ? std::log(magnitudes[i]) : kNegInf;
  }
  return out;
}

std::span<const double> span_of(const Eigen::VectorXd& v) { return {v.data(), static_cast<std::size_t>(v.size())}; }

// Segment ℓ (1-based) containing abscissa i, preferring the one to the right
// of a vertex except at the last vertex.
std::size_t segment_of(const TropicalData& t, Eigen::Index i) {
  std::size_t l = 1;
  while (l + 1 < t.hull_indices.size() && t.hull_indices[l] <= i) ++l;
  return l;
}

}  // namespace

std::vector<Eigen::Index> newton_polygon_log(std::span<const double> logs) {
  if (logs.empty() || logs.front() == kNegInf || logs.back() == kNegInf)
    throw InvalidInput("newton_polygon: first and last magnitudes must be nonzero");
  std::vector<Eigen::Index> hull;
  hull.reserve(logs.size());
  for (std::size_t c = 0; c < logs.size(); ++c) {
    if (logs[c] == kNegInf) continue;
    const auto ci = static_cast<Eigen::Index>(c);
    while (hull.size() >= 2) {
      const Eigen::Index a = hull[hull.size() - 2];
      const Eigen::Index b = hull.back();
      const double la = logs[static_cast<std::size_t>(a)];
      const double lb = logs[static_cast<std::size_t>(b)];
      // Drop b when it lies on or below the chord from a to c.
      if ((lb - la) * static_cast<double>(ci - a) <= (logs[c] - la) * static_cast<double>(b - a)) {
        hull.pop_back();
      } else {
        break;
      }
    }
    hull.push_back(ci);
  }
  return hull;
}

std::vector<Eigen::Index> newton_polygon(std::span<const double> magnitudes) {
  return newton_polygon_log(logs_of(magnitudes));
}

TropicalData tropical_roots(std::span<const double> magnitudes) {
  if (magnitudes.size() < 2) throw InvalidInput("tropical_roots: degree must be at least 1");
  const auto logs = logs_of(magnitudes);
  TropicalData t;
  t.hull_indices = newton_polygon_log(logs);
  const auto d = static_cast<Eigen::Index>(magnitudes.size()) - 1;
  t.expanded.resize(d);
  t.expanded_log.resize(d);
  Eigen::Index fill = 0;
  for (std::size_t l = 1; l < t.hull_indices.size(); ++l) {
    const auto k0 = static_cast<std::size_t>(t.hull_indices[l - 1]);
    const auto k1 = static_cast<std::size_t>(t.hull_indices[l]);
    TropicalRoot root;
    root.multiplicity = static_cast<Eigen::Index>(k1 - k0);
    root.log_value = (logs[k0] - logs[k1]) / static_cast<double>(root.multiplicity);
    const double ratio = magnitudes[k0] / magnitudes[k1];
    root.value = is_normal_finite(ratio)
                     ? (root.multiplicity == 1 ? ratio : std::pow(ratio, 1.0 / static_cast<double>(root.multiplicity)))
                     : std::exp(root.log_value);
    t.expanded.segment(fill, root.multiplicity).setConstant(root.value);
    t.expanded_log.segment(fill, root.multiplicity).setConstant(root.log_value);
    fill += root.multiplicity;
    t.roots.push_back(root);
  }
  return t;
}

TropicalData tropical_roots(const Polynomial& p) {
  const Eigen::VectorXd m = p.magnitudes();
  return tropical_roots(span_of(m));
}

GammaWeights gammas(std::span<const double> magnitudes, const TropicalData& t) {
  const auto logs = logs_of(magnitudes);
  const auto n = static_cast<Eigen::Index>(magnitudes.size());
  if (n != t.degree() + 1) throw InvalidInput("gammas: tropical data does not match the coefficients");

  GammaWeights g;
  g.log_gamma.resize(n);
  g.gamma.resize(n);
  g.log_gamma_tilde.resize(n);
  g.gamma_tilde.resize(n);

  std::vector<bool> vertex(static_cast<std::size_t>(n), false);
  for (Eigen::Index k : t.hull_indices) vertex[static_cast<std::size_t>(k)] = true;

  for (Eigen::Index i = 0; i < n; ++i) {
    const auto ui = static_cast<std::size_t>(i);
    const bool nonzero = magnitudes[ui] > 0.0;
    if (vertex[ui]) {
      g.log_gamma[i] = 0.0;
      g.gamma[i] = 1.0;
    } else {
      const TropicalRoot& root = t.roots[segment_of(t, i) - 1];
      const Eigen::Index k = t.hull_indices[segment_of(t, i)];
      const auto uk = static_cast<std::size_t>(k);
      const double steps = static_cast<double>(k - i);
      const double log_num = logs[uk] + steps * root.log_value;
      double lg = nonzero ? log_num - logs[ui] : log_num;
      if (nonzero) lg = std::max(lg, 0.0);
      g.log_gamma[i] = lg;

      const double num = magnitudes[uk] * std::pow(root.value, steps);
      double direct = nonzero ? num / magnitudes[ui] : num;
      if (is_normal_finite(num) && is_normal_finite(direct)) {
        if (nonzero) direct = std::max(direct, 1.0);
        g.gamma[i] = direct;
      } else {
        g.gamma[i] = std::exp(lg);
      }
    }

    if (nonzero) {
      g.log_gamma_tilde[i] = g.log_gamma[i] + logs[ui];
      const double direct = g.gamma[i] * magnitudes[ui];
      g.gamma_tilde[i] = is_normal_finite(direct) ? direct : std::exp(g.log_gamma_tilde[i]);
    } else {
      g.log_gamma_tilde[i] = g.log_gamma[i];
      g.gamma_tilde[i] = g.gamma[i];
    }
  }
  return g;
}

GammaWeights gammas(const Polynomial& p, const TropicalData& t) {
  const Eigen::VectorXd m = p.magnitudes();
  return gammas(span_of(m), t);
}

Eigen::VectorXd hull_log_heights(std::span<const double> magnitudes, const TropicalData& t) {
  const auto logs = logs_of(magnitudes);
  const auto n = static_cast<Eigen::Index>(magnitudes.size());
  Eigen::VectorXd h(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const std::size_t l = segment_of(t, i);
    const Eigen::Index k = t.hull_indices[l];
    h[i] = logs[static_cast<std::size_t>(k)] + static_cast<double>(k - i) * t.roots[l - 1].log_value;
  }
  return h;
}

}  // namespace tropiroots
