#pragma once

// JSON and CSV formats used by the command-line tool.
//
//   polynomial        {"coeffs": [[re, im], ...]}            ascending powers
//   matrix polynomial {"size": s, "coeffs": [P_0, P_1, ...]} each P_i an s×s array of [re, im]
//   roots             {"roots": [[re, im], ...]}
//
// A bare number is accepted wherever [re, im] is expected.

#include <filesystem>
#include <iosfwd>
#include <string>

#include <json.hpp>

#include "tropiroots/backerr.hpp"
#include "tropiroots/pencil.hpp"
#include "tropiroots/poly.hpp"
#include "tropiroots/solver.hpp"
#include "tropiroots/tropical.hpp"

namespace tropiroots::io {

using nlohmann::json;

/// Parses text or a file; malformed content raises InvalidInput.
json parse_json(const std::string& text);
json read_json_file(const std::filesystem::path& path);

Complex complex_from_json(const json& j);
json complex_to_json(Complex z);

Polynomial polynomial_from_json(const json& j);
json polynomial_to_json(const Polynomial& p);
MatrixPolynomial matrix_polynomial_from_json(const json& j);
json matrix_polynomial_to_json(const MatrixPolynomial& p);
RootSet roots_from_json(const json& j);
json roots_to_json(const Eigen::VectorXcd& roots);

json to_json(const BackwardErrorReport& r);
json to_json(const Assumption1Report& r);
json to_json(const TropicalData& t, const GammaWeights& g);
json to_json(const SolveDiagnostics& d);
json to_json(const PevpResult& r);

/// i, log10|p_i|, log10 hull height, log10 γ_i.
void write_newton_csv(std::ostream& os, const Polynomial& p);
/// i, |p_i|, |p̃_i|, |p_i − p̃_i|, γ̃_i.
void write_backerr_csv(std::ostream& os, const BackwardErrorReport& r);
/// "row col re im" lines for nonzero entries of A then B, 1-based indices.
void write_pencil_dump(std::ostream& os, const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b);

/// Shortest round-trip text for a double ("inf", "-inf", "nan" for non-finite).
std::string format_double(double v);

}  // namespace tropiroots::io
