#include <doctest.h>

#include <sstream>

#include "helpers.hpp"
#include "tropiroots/errors.hpp"
#include "tropiroots/io.hpp"

using namespace tropiroots;
using io::json;

TEST_CASE("complex values") {
  CHECK(io::complex_from_json(json::parse("2.5")) == Complex(2.5, 0));
  CHECK(io::complex_from_json(json::parse("[1, -2]")) == Complex(1, -2));
  CHECK_THROWS_AS(io::complex_from_json(json::parse("[1, 2, 3]")), InvalidInput);
  CHECK_THROWS_AS(io::complex_from_json(json::parse("\"x\"")), InvalidInput);
}

TEST_CASE("round trips") {
  const Polynomial p{Complex(1e-300, 3), 0.1, Complex(0, -7e250)};
  const auto back = io::polynomial_from_json(io::parse_json(io::polynomial_to_json(p).dump()));
  CHECK(back.coeffs() == p.coeffs());

  const auto m = random_matrix_polynomial(3, 2, {-5, 5}, 3);
  const auto mb = io::matrix_polynomial_from_json(io::parse_json(io::matrix_polynomial_to_json(m).dump()));
  REQUIRE(mb.degree() == 2);
  for (Eigen::Index i = 0; i <= 2; ++i) CHECK(mb[i] == m[i]);

  const RootSet r{{1.0, Complex(0, 1e-200)}};
  CHECK(io::roots_from_json(io::parse_json(io::roots_to_json(r).dump())) == r);
}

TEST_CASE("malformed input") {
  CHECK_THROWS_AS(io::parse_json("{\"coeffs\": [1, 2"), InvalidInput);
  CHECK_THROWS_AS(io::polynomial_from_json(json::parse("{\"coeffs\": []}")), InvalidInput);
  CHECK_THROWS_AS(io::polynomial_from_json(json::parse("{\"coeffs\": [1, 0]}")), InvalidInput);
  CHECK_THROWS_AS(io::polynomial_from_json(json::parse("{\"c\": [1, 2]}")), InvalidInput);
  CHECK_THROWS_AS(io::matrix_polynomial_from_json(json::parse("{\"size\": 2, \"coeffs\": [[[1]]]}")), InvalidInput);
}

TEST_CASE("csv writers") {
  const Polynomial p{1.0, 1e-3, 1.0};
  std::ostringstream n;
  io::write_newton_csv(n, p);
  std::string line;
  std::istringstream in(n.str());
  std::getline(in, line);
  CHECK(line == "i,log10_abs_p,log10_hull,log10_gamma");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  CHECK(rows == 3);

  BackwardErrorReport rep;
  rep.per_coeff.resize(2);
  std::ostringstream b;
  io::write_backerr_csv(b, rep);
  CHECK(b.str().rfind("i,abs_p,abs_ptilde,abs_diff,gamma_tilde\n", 0) == 0);

  std::ostringstream d;
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(2, 2);
  a(1, 0) = Complex(2, -1);
  io::write_pencil_dump(d, a, Eigen::MatrixXcd::Identity(2, 2));
  CHECK(d.str().find("2 1 2 -1") != std::string::npos);

  CHECK(io::format_double(0.1) == "0.1");
  CHECK(io::format_double(INFINITY) == "inf");
}
