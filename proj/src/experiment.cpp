#include "tropiroots/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <ostream>
#include <random>
#include <thread>

#include "tropiroots/backerr.hpp"
#include "tropiroots/errors.hpp"
#include "tropiroots/io.hpp"
#include "tropiroots/solver.hpp"

namespace tropiroots {

namespace {

using Clock = std::chrono::steady_clock;

std::string opt_field(const std::optional<double>& v) { return v ? io::format_double(*v) : std::string(); }

template <typename Sample, typename Run>
std::vector<Sample> run_all(const ExperimentSpec& spec, Run run) {
  std::vector<Sample> out(spec.samples);
  const unsigned threads = std::max(1u, std::min<unsigned>(spec.threads, static_cast<unsigned>(spec.samples)));
  if (threads <= 1) {
    for (std::size_t k = 0; k < spec.samples; ++k) out[k] = run(spec, k);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t)
    pool.emplace_back([&] {
      for (std::size_t k = next++; k < spec.samples; k = next++) out[k] = run(spec, k);
    });
  for (auto& th : pool) th.join();
  return out;
}

}  // namespace

bool is_matrix_experiment(int id) { return id == 5 || id == 6; }

ExperimentSpec default_experiment(int id) {
  ExperimentSpec s;
  s.id = id;
  switch (id) {
    case 1: s.degree = 50, s.range = {-20, 20}, s.multiplicity_max = 1; break;
    case 2: s.degree = 30, s.range = {-10, 10}, s.multiplicity_max = 30; break;
    case 3: s.degree = 100, s.range = {-20, 20}; break;
    case 4: s.degree = 20, s.range = {-20, 20}; break;
    case 5:
    case 6: s.samples = 50, s.degree = 0, s.range = {-10, 10}; break;
    default: throw InvalidInput("experiment id must be in 1..6");
  }
  return s;
}

std::uint64_t sample_seed(std::uint64_t seed, std::size_t k) {
  // splitmix64 finalizer over (seed, k)
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (static_cast<std::uint64_t>(k) + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

GeneratedPolynomial experiment_polynomial(const ExperimentSpec& spec, std::size_t k) {
  const std::uint64_t seed = sample_seed(spec.seed, k);
  if (spec.id == 1 || spec.id == 2)
    return random_from_roots(spec.degree, spec.range, spec.multiplicity_max, seed);
  if (spec.id == 3 || spec.id == 4) return {random_coeffs(spec.degree, spec.range, seed), RootSet()};
  throw InvalidInput("experiment " + std::to_string(spec.id) + " is not a scalar experiment");
}

MatrixPolynomial experiment_matrix_polynomial(const ExperimentSpec& spec, std::size_t k) {
  if (!is_matrix_experiment(spec.id))
    throw InvalidInput("experiment " + std::to_string(spec.id) + " is not a matrix experiment");
  const std::uint64_t seed = sample_seed(spec.seed, k);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> size_dist(2, 8), degree_dist(2, 7);
  const Eigen::Index s = spec.size > 0 ? spec.size : size_dist(rng);
  const Eigen::Index d = spec.degree > 0 ? spec.degree : degree_dist(rng);
  return random_matrix_polynomial(s, d, spec.range, rng());
}

ScalarSample run_scalar_sample(const ExperimentSpec& spec, std::size_t k) {
  ScalarSample out;
  const auto start = Clock::now();
  try {
    const GeneratedPolynomial g = experiment_polynomial(spec, k);
    SolveOptions opts;
    opts.backward_error = true;
    opts.optimize_mu = spec.mu_opt;
    opts.qz = spec.qz;
    const SolveResult res = solve(g.poly, opts);
    out.eta_norm = res.report->eta_norm;
    out.eta_elem_rel = res.report->eta_elem_rel;
    out.eta_minmax = res.report->eta_minmax;
    out.eta_minmax_opt = res.report->eta_minmax_opt;
    if (g.roots.size() > 0) {
      const auto fe = forward_errors(g.roots, res.roots);
      out.max_forward_err = *std::max_element(fe.begin(), fe.end());
    }
    if (spec.assumption1) {
      const Assumption1Report a = check_assumption1(g.poly, 100.0, spec.qz);
      out.assumption1_delta_a = a.delta_a_max;
      out.assumption1_ratio = a.delta_b_ratio_max;
      out.assumption1_pass = a.pass;
    }
  } catch (const std::exception& e) {
    out.status = e.what();
  }
  out.wall_time = std::chrono::duration<double>(Clock::now() - start).count();
  return out;
}

MatrixSample run_matrix_sample(const ExperimentSpec& spec, std::size_t k) {
  MatrixSample out;
  const auto start = Clock::now();
  try {
    const MatrixPolynomial p = experiment_matrix_polynomial(spec, k);
    out.size = p.size();
    out.degree = p.degree();
    const PevpResult r = solve_pevp(p, spec.qz);
    if (spec.id == 6) {
      out.eta_max = eta_pevp_max(p, r.eigenvalues, PevpWeighting::Max).max;
    } else {
      out.eta_max = r.backward_error.max;
    }
    out.huge = static_cast<std::size_t>(std::count(r.huge.begin(), r.huge.end(), true));
  } catch (const std::exception& e) {
    out.status = e.what();
  }
  out.wall_time = std::chrono::duration<double>(Clock::now() - start).count();
  return out;
}

void run_experiment(const ExperimentSpec& spec, std::ostream& csv) {
  // Failure messages go in a CSV field; keep them free of separators.
  auto clean = [](std::string s) {
    std::replace(s.begin(), s.end(), ',', ';');
    std::replace(s.begin(), s.end(), '\n', ' ');
    return s;
  };
  if (is_matrix_experiment(spec.id)) {
    const auto rows = run_all<MatrixSample>(spec, run_matrix_sample);
    csv << "sample,status,size,degree,eta_P_max,huge_eigenvalues" << (spec.timing ? ",wall_time_s" : "") << '\n';
    for (std::size_t k = 0; k < rows.size(); ++k) {
      const auto& r = rows[k];
      csv << k << ',' << clean(r.status) << ',';
      if (r.status == "ok") {
        csv << r.size << ',' << r.degree << ',' << io::format_double(r.eta_max) << ',' << r.huge;
      } else {
        csv << ",,,";
      }
      if (spec.timing) csv << ',' << io::format_double(r.wall_time);
      csv << '\n';
    }
    return;
  }

  if (spec.id < 1 || spec.id > 4) throw InvalidInput("experiment id must be in 1..6");
  const auto rows = run_all<ScalarSample>(spec, run_scalar_sample);
  csv << "sample,status,eta_norm,eta_elem_rel,eta_minmax,max_forward_err";
  if (spec.mu_opt) csv << ",eta_minmax_opt";
  if (spec.assumption1) csv << ",assumption1_deltaA,assumption1_deltaB_ratio,assumption1_verdict";
  if (spec.timing) csv << ",wall_time_s";
  csv << '\n';
  for (std::size_t k = 0; k < rows.size(); ++k) {
    const auto& r = rows[k];
    const bool ok = r.status == "ok";
    csv << k << ',' << clean(r.status) << ',';
    if (ok) {
      csv << io::format_double(r.eta_norm) << ',' << io::format_double(r.eta_elem_rel) << ','
          << io::format_double(r.eta_minmax) << ',' << opt_field(r.max_forward_err);
    } else {
      csv << ",,,";
    }
    if (spec.mu_opt) csv << ',' << opt_field(r.eta_minmax_opt);
    if (spec.assumption1) {
      csv << ',' << opt_field(r.assumption1_delta_a) << ',' << opt_field(r.assumption1_ratio) << ',';
      if (r.assumption1_pass) csv << (*r.assumption1_pass ? "pass" : "fail");
    }
    if (spec.timing) csv << ',' << io::format_double(r.wall_time);
    csv << '\n';
  }
}

}  // namespace tropiroots
