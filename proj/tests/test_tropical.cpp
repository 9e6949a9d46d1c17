#include <doctest.h>

#include <cmath>
#include <random>

#include "helpers.hpp"
#include "tropiroots/errors.hpp"
#include "tropiroots/tropical.hpp"

using namespace tropiroots;
using testing::kEps;

namespace {

// Upper hull by definition: k is a vertex unless it lies on or below some
// chord between points strictly to its left and right. O(d^3).
std::vector<Eigen::Index> brute_force_hull(const std::vector<double>& m) {
  const auto n = static_cast<Eigen::Index>(m.size());
  std::vector<Eigen::Index> out;
  for (Eigen::Index k = 0; k < n; ++k) {
    if (m[static_cast<std::size_t>(k)] == 0.0) continue;
    bool vertex = true;
    const double lk = std::log(m[static_cast<std::size_t>(k)]);
    for (Eigen::Index a = 0; a < k && vertex; ++a) {
      if (m[static_cast<std::size_t>(a)] == 0.0) continue;
      for (Eigen::Index c = k + 1; c < n && vertex; ++c) {
        if (m[static_cast<std::size_t>(c)] == 0.0) continue;
        const double la = std::log(m[static_cast<std::size_t>(a)]);
        const double lc = std::log(m[static_cast<std::size_t>(c)]);
        if ((lk - la) * static_cast<double>(c - a) <= (lc - la) * static_cast<double>(k - a)) vertex = false;
      }
    }
    if (vertex) out.push_back(k);
  }
  return out;
}

std::vector<double> random_magnitudes(std::mt19937_64& rng, int d) {
  std::uniform_real_distribution<double> e(-20, 20), u(0, 1);
  std::vector<double> m(static_cast<std::size_t>(d + 1));
  for (auto& x : m) x = u(rng) < 0.15 ? 0.0 : std::pow(10.0, e(rng));
  m.front() = std::pow(10.0, e(rng));
  m.back() = std::pow(10.0, e(rng));
  return m;
}

const std::vector<double> kGradedQuartic{1e-60, 1e-30, 2e-25, 1.0, 1.0};
const double kBeta = std::ldexp(1.0, -26) + std::ldexp(1.0, -52);

}  // namespace

TEST_CASE("newton_polygon examples") {
  CHECK(newton_polygon(kGradedQuartic) == std::vector<Eigen::Index>{0, 1, 3, 4});
  CHECK(brute_force_hull(kGradedQuartic) == std::vector<Eigen::Index>{0, 1, 3, 4});
  CHECK(newton_polygon(std::vector<double>{1, 0, 1}) == std::vector<Eigen::Index>{0, 2});
  CHECK(newton_polygon(std::vector<double>{1, 1}) == std::vector<Eigen::Index>{0, 1});
  // Collinear interior points are not vertices.
  CHECK(newton_polygon(std::vector<double>{1, 2, 4, 8}) == std::vector<Eigen::Index>{0, 3});
  CHECK_THROWS_AS(newton_polygon(std::vector<double>{0, 1}), InvalidInput);
  CHECK_THROWS_AS(newton_polygon(std::vector<double>{1, 0}), InvalidInput);
}

TEST_CASE("newton_polygon matches brute force on random data") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto m = random_magnitudes(rng, 1 + trial % 40);
    REQUIRE(newton_polygon(m) == brute_force_hull(m));
  }
}

TEST_CASE("tropical_roots") {
  const TropicalData t = tropical_roots(kGradedQuartic);
  REQUIRE(t.roots.size() == 3);
  CHECK(t.roots[0].value == doctest::Approx(1e-30).epsilon(1e-15));
  CHECK(t.roots[0].multiplicity == 1);
  CHECK(t.roots[1].value == doctest::Approx(1e-15).epsilon(1e-15));
  CHECK(t.roots[1].multiplicity == 2);
  CHECK(t.roots[2].value == 1.0);
  CHECK(t.roots[2].multiplicity == 1);
  CHECK(t.expanded.size() == 4);
  CHECK(t.expanded[1] == t.expanded[2]);
  CHECK(t.expanded[3] == 1.0);

  const TropicalData b = tropical_roots(std::vector<double>{1.0, 2 * kBeta, 1.0});
  REQUIRE(b.roots.size() == 1);
  CHECK(b.roots[0].value == 1.0);
  CHECK(b.roots[0].multiplicity == 2);

  const TropicalData c = tropical_roots(std::vector<double>{1e-12, 0, 0, 0, 0, 0, 1});
  REQUIRE(c.roots.size() == 1);
  CHECK(c.roots[0].value == doctest::Approx(1e-2).epsilon(1e-14));
  CHECK(c.roots[0].multiplicity == 6);

  CHECK_THROWS_AS(tropical_roots(std::vector<double>{1.0}), InvalidInput);

  SUBCASE("random invariants") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 1000; ++trial) {
      const int d = 1 + trial % 40;
      const auto m = random_magnitudes(rng, d);
      const TropicalData r = tropical_roots(m);
      Eigen::Index total = 0;
      for (std::size_t l = 0; l < r.roots.size(); ++l) {
        total += r.roots[l].multiplicity;
        CHECK(r.roots[l].multiplicity == r.hull_indices[l + 1] - r.hull_indices[l]);
        if (l > 0) CHECK(r.roots[l].value > r.roots[l - 1].value);
      }
      CHECK(total == d);
      CHECK(r.expanded.size() == d);
      for (Eigen::Index i = 1; i < d; ++i) CHECK(r.expanded[i] >= r.expanded[i - 1]);
    }
  }
}

TEST_CASE("gammas") {
  SUBCASE("beta example") {
    const std::vector<double> m{1.0, 2 * kBeta, 1.0};
    const GammaWeights g = gammas(m, tropical_roots(m));
    CHECK(g.gamma[0] == 1.0);
    CHECK(g.gamma[2] == 1.0);
    const double expect = 1.0 / (2 * kBeta);
    CHECK(std::abs(g.gamma[1] - expect) <= 2 * std::nextafter(expect, INFINITY) - 2 * expect);
  }
  SUBCASE("graded quartic") {
    const GammaWeights g = gammas(kGradedQuartic, tropical_roots(kGradedQuartic));
    CHECK(g.gamma[0] == 1.0);
    CHECK(g.gamma[1] == 1.0);
    CHECK(g.gamma[2] == doctest::Approx(5e9).epsilon(1e-14));
    CHECK(g.gamma[3] == 1.0);
    CHECK(g.gamma[4] == 1.0);
    CHECK(g.gamma_tilde[2] == doctest::Approx(1e-15).epsilon(1e-14));
  }
  SUBCASE("log-linear magnitudes give unit weights") {
    std::vector<double> m;
    for (int i = 0; i <= 10; ++i) m.push_back(std::ldexp(1.0, 3 * i));
    const GammaWeights g = gammas(m, tropical_roots(m));
    for (Eigen::Index i = 0; i <= 10; ++i) CHECK(g.gamma[i] == doctest::Approx(1.0).epsilon(1e-14));
  }
  SUBCASE("zero coefficients") {
    const std::vector<double> m{4.0, 0.0, 1.0};
    const GammaWeights g = gammas(m, tropical_roots(m));
    // τ = 2, γ_1 = τ^2·1/τ^1 = 2 with |p_1| replaced by 1; γ̃_1 = γ_1.
    CHECK(g.gamma[1] == doctest::Approx(2.0));
    CHECK(g.gamma_tilde[1] == g.gamma[1]);
  }
  SUBCASE("random invariants and minimality") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 300; ++trial) {
      const int d = 1 + trial % 30;
      const auto m = random_magnitudes(rng, d);
      const TropicalData t = tropical_roots(m);
      const GammaWeights g = gammas(m, t);
      for (Eigen::Index k : t.hull_indices) CHECK(g.log_gamma[k] == 0.0);
      for (Eigen::Index i = 0; i <= d; ++i) {
        const double mi = m[static_cast<std::size_t>(i)];
        if (mi > 0) CHECK(g.gamma[i] >= 1.0);
        CHECK(g.gamma[i] > 0.0);
        const double lmi = mi > 0 ? std::log(mi) : 0.0;
        // Both endpoints of the segment containing i give the same weight.
        for (std::size_t l = 1; l < t.hull_indices.size(); ++l) {
          const Eigen::Index a = t.hull_indices[l - 1], b = t.hull_indices[l];
          if (i < a || i > b) continue;
          const double lt = t.roots[l - 1].log_value;
          const double from_left = std::log(m[static_cast<std::size_t>(a)]) + static_cast<double>(a - i) * lt - lmi;
          const double from_right = std::log(m[static_cast<std::size_t>(b)]) + static_cast<double>(b - i) * lt - lmi;
          const double scale = std::max({1.0, std::abs(from_left), std::abs(lmi)}) * 64 * kEps * (d + 1);
          CHECK(std::abs(from_left - from_right) <= scale);
          if (mi > 0) CHECK(std::abs(std::max(from_left, 0.0) - g.log_gamma[i]) <= scale);
        }
        // γ_i <= β_i(τ_m) = max_j |p_j| τ_m^j / (|p_i| τ_m^i) for every tropical root.
        for (const auto& root : t.roots) {
          double top = -INFINITY;
          for (Eigen::Index j = 0; j <= d; ++j) {
            const double mj = m[static_cast<std::size_t>(j)];
            if (mj > 0) top = std::max(top, std::log(mj) + static_cast<double>(j - i) * root.log_value);
          }
          const double beta = top - lmi;
          CHECK(g.log_gamma[i] <= beta + 1e-9 * std::max(1.0, std::abs(beta)));
        }
      }
    }
  }
}

TEST_CASE("hull_log_heights") {
  const TropicalData t = tropical_roots(kGradedQuartic);
  const Eigen::VectorXd h = hull_log_heights(kGradedQuartic, t);
  CHECK(h[0] == doctest::Approx(std::log(1e-60)));
  CHECK(h[2] == doctest::Approx(std::log(1e-15)).epsilon(1e-13));
  CHECK(h[3] == doctest::Approx(0.0));
}
