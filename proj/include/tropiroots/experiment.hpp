#pragma once

// Seeded randomized studies. Ids 1–4 solve scalar polynomials:
//   1  zeros of modulus 10^e, e in [-20, 20], simple,            d = 50
//   2  zeros of modulus 10^e, e in [-10, 10], multiplicity <= 30, d = 30
//   3  coefficients of modulus 10^e, e in [-20, 20],              d = 100
//   4  as 3 with                                                  d = 20
// Ids 5–6 solve synthetic matrix polynomials (s in 2..8, d in 2..7, coefficient
// norms 10^e with e in [-10, 10]); 5 reports the sum-weighted backward error,
// 6 the max-weighted one.
//
// Scalar CSV columns:
//   sample,status,eta_norm,eta_elem_rel,eta_minmax,max_forward_err
//   [,eta_minmax_opt][,assumption1_deltaA,assumption1_deltaB_ratio,assumption1_verdict][,wall_time_s]
// Matrix CSV columns:
//   sample,status,size,degree,eta_P_max,huge_eigenvalues[,wall_time_s]
// status is "ok" or the error message of a failed sample; unknown fields are empty.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "tropiroots/linalg.hpp"
#include "tropiroots/poly.hpp"

namespace tropiroots {

struct ExperimentSpec {
  int id = 1;
  std::size_t samples = 100;
  Eigen::Index degree = 50;
  ExponentRange range{-20.0, 20.0};
  Eigen::Index multiplicity_max = 1;
  std::uint64_t seed = 1;
  /// Matrix experiments: fixed block size (0 draws s in 2..8) and degree (0 draws d in 2..7).
  Eigen::Index size = 0;
  bool mu_opt = false;
  bool assumption1 = false;
  /// Adds a wall-time column; the output is then no longer reproducible byte for byte.
  bool timing = false;
  unsigned threads = 1;
  linalg::QzOptions qz;
};

/// Parameters of experiment `id` (1–6) at full sample count.
ExperimentSpec default_experiment(int id);

/// Seed of sample k derived from the experiment seed.
std::uint64_t sample_seed(std::uint64_t seed, std::size_t k);

struct ScalarSample {
  std::string status = "ok";
  double eta_norm = 0.0;
  double eta_elem_rel = 0.0;
  double eta_minmax = 0.0;
  std::optional<double> max_forward_err;
  std::optional<double> eta_minmax_opt;
  std::optional<double> assumption1_delta_a;
  std::optional<double> assumption1_ratio;
  std::optional<bool> assumption1_pass;
  double wall_time = 0.0;
};

struct MatrixSample {
  std::string status = "ok";
  Eigen::Index size = 0;
  Eigen::Index degree = 0;
  double eta_max = 0.0;
  std::size_t huge = 0;
  double wall_time = 0.0;
};

/// The polynomial of sample k (scalar ids) with its exact zeros when known.
GeneratedPolynomial experiment_polynomial(const ExperimentSpec& spec, std::size_t k);
/// The matrix polynomial of sample k (matrix ids).
MatrixPolynomial experiment_matrix_polynomial(const ExperimentSpec& spec, std::size_t k);

ScalarSample run_scalar_sample(const ExperimentSpec& spec, std::size_t k);
MatrixSample run_matrix_sample(const ExperimentSpec& spec, std::size_t k);

bool is_matrix_experiment(int id);

/// Runs all samples (in parallel when spec.threads > 1) and writes the CSV in sample order.
void run_experiment(const ExperimentSpec& spec, std::ostream& csv);

}  // namespace tropiroots
