#pragma once

// Max-times tropical polynomial tp(x) = max_i |p_i| x^i: Newton polygon,
// tropical roots and the gamma weights of the min-max backward error.
// All hull and weight computations run on natural logs of the magnitudes.

#include <span>
#include <vector>

#include <Eigen/Core>

#include "tropiroots/poly.hpp"

namespace tropiroots {

struct TropicalRoot {
  double value = 0.0;
  double log_value = 0.0;
  Eigen::Index multiplicity = 0;
};

struct TropicalData {
  /// Upper-hull vertex indices 0 = k_0 < k_1 < ... < k_t = d.
  std::vector<Eigen::Index> hull_indices;
  /// Strictly increasing tropical roots τ_1 < ... < τ_t.
  std::vector<TropicalRoot> roots;
  /// τ̃_1 <= ... <= τ̃_d: each root repeated by its multiplicity.
  Eigen::VectorXd expanded;
  Eigen::VectorXd expanded_log;
  /// Multiplicity of the tropical root at zero (exact zero roots removed upstream).
  Eigen::Index zero_multiplicity = 0;

  Eigen::Index degree() const { return expanded.size(); }
};

/// γ_i and γ̃_i, both as natural logs and as rounded working-precision values
/// (the latter may be inf/0 when out of range).
struct GammaWeights {
  Eigen::VectorXd log_gamma;
  Eigen::VectorXd gamma;
  Eigen::VectorXd log_gamma_tilde;
  Eigen::VectorXd gamma_tilde;
};

/// Upper convex hull of (i, log m_i) by a monotone-chain sweep. Zero
/// magnitudes never lie on the hull; collinear points are not vertices.
std::vector<Eigen::Index> newton_polygon(std::span<const double> magnitudes);
std::vector<Eigen::Index> newton_polygon_log(std::span<const double> log_magnitudes);

TropicalData tropical_roots(std::span<const double> magnitudes);
TropicalData tropical_roots(const Polynomial& p);

/// γ_i = τ_ℓ^{k_ℓ}|p_{k_ℓ}| / (τ_ℓ^i |p_i|) for k_{ℓ-1} <= i <= k_ℓ
/// (|p_i| replaced by 1 when p_i = 0); γ̃_i = γ_i|p_i|, or γ_i when p_i = 0.
GammaWeights gammas(std::span<const double> magnitudes, const TropicalData& t);
GammaWeights gammas(const Polynomial& p, const TropicalData& t);

/// Natural log of the Newton polygon's height above each abscissa i.
Eigen::VectorXd hull_log_heights(std::span<const double> magnitudes, const TropicalData& t);

}  // namespace tropiroots
