#include "tropiroots/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include "tropiroots/errors.hpp"

namespace tropiroots::io {

namespace {

// JSON has no infinity; non-finite reals are written as strings.
json real_to_json(double v) {
  if (std::isfinite(v)) return v;
  return format_double(v);
}

const json& member(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw InvalidInput(std::string("JSON: missing field \"") + key + "\"");
  return j.at(key);
}

}  // namespace

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return {buf, res.ptr};
}

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InvalidInput(std::string("malformed JSON: ") + e.what());
  }
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_json(ss.str());
}

Complex complex_from_json(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  throw InvalidInput("JSON: expected a number or [re, im], got " + j.dump());
}

json complex_to_json(Complex z) { return json::array({real_to_json(z.real()), real_to_json(z.imag())}); }

Polynomial polynomial_from_json(const json& j) {
  const json& c = member(j, "coeffs");
  if (!c.is_array() || c.empty()) throw InvalidInput("JSON: \"coeffs\" must be a non-empty array");
  Eigen::VectorXcd v(static_cast<Eigen::Index>(c.size()));
  for (std::size_t i = 0; i < c.size(); ++i) v[static_cast<Eigen::Index>(i)] = complex_from_json(c[i]);
  return Polynomial(std::move(v));
}

json polynomial_to_json(const Polynomial& p) {
  json c = json::array();
  for (Eigen::Index i = 0; i <= p.degree(); ++i) c.push_back(complex_to_json(p[i]));
  return {{"coeffs", c}};
}

MatrixPolynomial matrix_polynomial_from_json(const json& j) {
  const json& sz = member(j, "size");
  if (!sz.is_number_integer() || sz.get<long long>() < 1) throw InvalidInput("JSON: \"size\" must be a positive integer");
  const auto s = static_cast<Eigen::Index>(sz.get<long long>());
  const json& c = member(j, "coeffs");
  if (!c.is_array() || c.empty()) throw InvalidInput("JSON: \"coeffs\" must be a non-empty array");
  std::vector<Eigen::MatrixXcd> mats;
  for (const json& m : c) {
    if (!m.is_array() || static_cast<Eigen::Index>(m.size()) != s)
      throw DimensionMismatch("JSON: each coefficient must have " + std::to_string(s) + " rows");
    Eigen::MatrixXcd mat(s, s);
    for (Eigen::Index r = 0; r < s; ++r) {
      const json& row = m[static_cast<std::size_t>(r)];
      if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != s)
        throw DimensionMismatch("JSON: each coefficient row must have " + std::to_string(s) + " entries");
      for (Eigen::Index col = 0; col < s; ++col) mat(r, col) = complex_from_json(row[static_cast<std::size_t>(col)]);
    }
    mats.push_back(std::move(mat));
  }
  return MatrixPolynomial(std::move(mats));
}

json matrix_polynomial_to_json(const MatrixPolynomial& p) {
  json c = json::array();
  for (const auto& m : p.coeffs()) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      json row = json::array();
      for (Eigen::Index col = 0; col < m.cols(); ++col) row.push_back(complex_to_json(m(r, col)));
      rows.push_back(row);
    }
    c.push_back(rows);
  }
  return {{"size", p.size()}, {"coeffs", c}};
}

RootSet roots_from_json(const json& j) {
  const json& r = member(j, "roots");
  if (!r.is_array()) throw InvalidInput("JSON: \"roots\" must be an array");
  RootSet out(static_cast<Eigen::Index>(r.size()));
  for (std::size_t i = 0; i < r.size(); ++i) out[static_cast<Eigen::Index>(i)] = complex_from_json(r[i]);
  return out;
}

json roots_to_json(const Eigen::VectorXcd& roots) {
  json r = json::array();
  for (Eigen::Index i = 0; i < roots.size(); ++i) r.push_back(complex_to_json(roots[i]));
  return {{"roots", r}};
}

json to_json(const BackwardErrorReport& r) {
  json per = json::array();
  for (std::size_t i = 0; i < r.per_coeff.size(); ++i) {
    const auto& c = r.per_coeff[i];
    per.push_back({{"i", i},
                   {"abs_p", real_to_json(c.abs_p)},
                   {"abs_ptilde", real_to_json(c.abs_ptilde)},
                   {"abs_diff", real_to_json(c.abs_diff)},
                   {"gamma_tilde", real_to_json(c.gamma_tilde)},
                   {"ratio", real_to_json(c.ratio)}});
  }
  json j = {{"eta_norm", real_to_json(r.eta_norm)},
            {"eta_elem_rel", real_to_json(r.eta_elem_rel)},
            {"eta_minmax", real_to_json(r.eta_minmax)},
            {"mu_used", complex_to_json(r.mu_used)},
            {"per_coeff", per}};
  j["eta_elem_rel_infinite_at"] = r.elem_rel_infinite_at ? json(*r.elem_rel_infinite_at) : json(nullptr);
  j["eta_minmax_opt"] = r.eta_minmax_opt ? real_to_json(*r.eta_minmax_opt) : json(nullptr);
  return j;
}

json to_json(const Assumption1Report& r) {
  json cols = json::array();
  for (Eigen::Index i = 0; i < r.delta_b_col_ratios.size(); ++i) cols.push_back(real_to_json(r.delta_b_col_ratios[i]));
  return {{"deltaA_max", real_to_json(r.delta_a_max)},
          {"deltaB_col_ratios", cols},
          {"deltaB_ratio_max", real_to_json(r.delta_b_ratio_max)},
          {"constant", r.constant},
          {"verdict", r.pass ? "pass" : "fail"}};
}

json to_json(const TropicalData& t, const GammaWeights& g) {
  json roots = json::array();
  for (const auto& r : t.roots)
    roots.push_back({{"tau", real_to_json(r.value)}, {"log_tau", r.log_value}, {"multiplicity", r.multiplicity}});
  json gamma = json::array(), gamma_tilde = json::array();
  for (Eigen::Index i = 0; i < g.gamma.size(); ++i) {
    gamma.push_back(real_to_json(g.gamma[i]));
    gamma_tilde.push_back(real_to_json(g.gamma_tilde[i]));
  }
  return {{"hull_indices", t.hull_indices}, {"roots", roots}, {"gamma", gamma}, {"gamma_tilde", gamma_tilde}};
}

json to_json(const SolveDiagnostics& d) {
  return {{"qz_iterations", d.qz_iterations},
          {"infinite_deflations", d.infinite_deflations},
          {"zero_roots", d.zero_roots},
          {"tropical_roots", d.tropical.roots.size()}};
}

json to_json(const PevpResult& r) {
  json j = roots_to_json(r.eigenvalues);
  json eigs = j["roots"];
  json eta = json::array(), huge = json::array();
  for (Eigen::Index k = 0; k < r.eigenvalues.size(); ++k) {
    eta.push_back(real_to_json(r.backward_error.per_eigenvalue[k]));
    huge.push_back(static_cast<bool>(r.huge[static_cast<std::size_t>(k)]));
  }
  return {{"eigenvalues", eigs},
          {"eta_P", eta},
          {"eta_P_max", real_to_json(r.backward_error.max)},
          {"excluded", r.backward_error.excluded},
          {"huge", huge},
          {"qz_iterations", r.qz_iterations}};
}

void write_newton_csv(std::ostream& os, const Polynomial& p) {
  const Eigen::VectorXd m = p.magnitudes();
  const std::span<const double> mags(m.data(), static_cast<std::size_t>(m.size()));
  const TropicalData t = tropical_roots(mags);
  const GammaWeights g = gammas(mags, t);
  const Eigen::VectorXd h = hull_log_heights(mags, t);
  const double ln10 = std::log(10.0);
  os << "i,log10_abs_p,log10_hull,log10_gamma\n";
  for (Eigen::Index i = 0; i <= p.degree(); ++i) {
    const double lp = m[i] > 0.0 ? std::log10(m[i]) : -std::numeric_limits<double>::infinity();
    os << i << ',' << format_double(lp) << ',' << format_double(h[i] / ln10) << ','
       << format_double(g.log_gamma[i] / ln10) << '\n';
  }
}

void write_backerr_csv(std::ostream& os, const BackwardErrorReport& r) {
  os << "i,abs_p,abs_ptilde,abs_diff,gamma_tilde\n";
  for (std::size_t i = 0; i < r.per_coeff.size(); ++i) {
    const auto& c = r.per_coeff[i];
    os << i << ',' << format_double(c.abs_p) << ',' << format_double(c.abs_ptilde) << ','
       << format_double(c.abs_diff) << ',' << format_double(c.gamma_tilde) << '\n';
  }
}

void write_pencil_dump(std::ostream& os, const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  auto dump = [&os](const char* name, const Eigen::MatrixXcd& m) {
    os << "% " << name << ' ' << m.rows() << ' ' << m.cols() << '\n';
    for (Eigen::Index r = 0; r < m.rows(); ++r)
      for (Eigen::Index c = 0; c < m.cols(); ++c)
        if (m(r, c) != Complex(0))
          os << r + 1 << ' ' << c + 1 << ' ' << format_double(m(r, c).real()) << ' '
             << format_double(m(r, c).imag()) << '\n';
  };
  dump("A", a);
  dump("B", b);
}

}  // namespace tropiroots::io
