#pragma once

#include <cctype>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "cliffcalc/calculus.hpp"
#include "cliffcalc/hyper_basis.hpp"
#include "cliffcalc/multivector.hpp"
#include "cliffcalc/operator_tuple.hpp"
#include "cliffcalc/scalars.hpp"
#include "cliffcalc/version.hpp"

namespace cliffcalc {

using Json = nlohmann::json;

inline constexpr const char* kSchemaVersion = "1";

inline Json matrix_to_json(const Matrix& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c)
      row.push_back(Json::array({m(r, c).real(), m(r, c).imag()}));
    rows.push_back(std::move(row));
  }
  return rows;
}

/// Entries may be plain numbers for real matrices or [re, im] pairs.
inline Matrix matrix_from_json(const Json& j) {
  if (!j.is_array()) throw std::invalid_argument("a matrix must be an array of rows");
  const std::size_t rows = j.size();
  if (rows == 0) return Matrix();
  if (!j[0].is_array()) throw std::invalid_argument("a matrix row must be an array");
  const std::size_t cols = j[0].size();
  Matrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (std::size_t r = 0; r < rows; ++r) {
    if (!j[r].is_array() || j[r].size() != cols)
      throw std::invalid_argument("matrix rows must have equal length");
    for (std::size_t c = 0; c < cols; ++c) {
      const Json& e = j[r][c];
      if (e.is_number()) {
        m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
            Complex(e.get<double>(), 0.0);
      } else if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number()) {
        m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
            Complex(e[0].get<double>(), e[1].get<double>());
      } else {
        throw std::invalid_argument("matrix entries must be numbers or [re, im] pairs");
      }
    }
  }
  return m;
}

struct OperatorFile {
  int m = 0;
  int d = 0;
  std::vector<Matrix> matrices;
  std::vector<std::string> labels;
};

inline OperatorFile operator_file_from_json(const Json& j) {
  if (!j.is_object()) throw std::invalid_argument("operator file must be a JSON object");
  for (const char* key : {"m", "d", "matrices"})
    if (!j.contains(key))
      throw std::invalid_argument(std::string("operator file lacks '") + key + "'");
  OperatorFile file;
  file.m = j.at("m").get<int>();
  file.d = j.at("d").get<int>();
  const Json& mats = j.at("matrices");
  if (!mats.is_array() || static_cast<int>(mats.size()) != file.m)
    throw std::invalid_argument("'matrices' must list exactly m matrices");
  for (const Json& entry : mats) {
    Matrix m = matrix_from_json(entry);
    if (m.rows() != file.d || m.cols() != file.d)
      throw std::invalid_argument("every matrix must be d x d");
    file.matrices.push_back(std::move(m));
  }
  if (j.contains("labels")) {
    const Json& labels = j.at("labels");
    if (!labels.is_array() || static_cast<int>(labels.size()) != file.m)
      throw std::invalid_argument("'labels' must list exactly m strings");
    for (const Json& l : labels) file.labels.push_back(l.get<std::string>());
  }
  return file;
}

inline Json operator_file_to_json(const OperatorFile& file) {
  Json out;
  out["schema_version"] = kSchemaVersion;
  out["m"] = file.m;
  out["d"] = file.d;
  Json mats = Json::array();
  for (const Matrix& m : file.matrices) mats.push_back(matrix_to_json(m));
  out["matrices"] = std::move(mats);
  if (!file.labels.empty()) out["labels"] = file.labels;
  return out;
}

/// Reads an operator file and builds the validated tuple; Hermiticity
/// violations are reported per matrix.
inline OperatorTuple load_operator_tuple(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open operator file: " + path);
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw std::runtime_error("operator file " + path + ": " + e.what());
  }
  const OperatorFile file = operator_file_from_json(j);
  const auto residuals = OperatorTuple::hermiticity_residuals(file.matrices);
  std::string violations;
  for (std::size_t i = 0; i < residuals.size(); ++i) {
    const double scale = spectral_norm(file.matrices[i]);
    if (residuals[i] > kHermiticityTol * scale) {
      if (!violations.empty()) violations += "; ";
      violations += "operator " + std::to_string(i + 1) + " deviates by " +
                    std::to_string(residuals[i]);
    }
  }
  if (!violations.empty())
    throw std::invalid_argument("operator file " + path +
                                " fails the self-adjointness check: " + violations);
  return OperatorTuple(file.matrices);
}

inline Blade blade_from_label(const std::string& label) {
  if (label == "e0") return 0;
  Blade bits = 0;
  std::size_t i = 0;
  while (i < label.size()) {
    if (label[i] != 'e')
      throw std::invalid_argument("bad blade label: " + label);
    ++i;
    const std::size_t start = i;
    while (i < label.size() && std::isdigit(static_cast<unsigned char>(label[i]))) ++i;
    if (start == i) throw std::invalid_argument("bad blade label: " + label);
    const int index = std::stoi(label.substr(start, i - start));
    if (index < 1 || index > kMaxGenerators)
      throw std::invalid_argument("generator index out of range in label: " + label);
    const Blade bit = Blade{1} << (index - 1);
    if (bits & bit)
      throw std::invalid_argument("repeated generator in label: " + label);
    bits |= bit;
  }
  return bits;
}

inline Json multivector_to_json(const Multivector<double>& a) {
  Json coeffs = Json::object();
  const Blade count = Blade{1} << a.generators();
  for (Blade b = 0; b < count; ++b)
    if (a.coeff(b) != 0.0) coeffs[blade_label(b)] = a.coeff(b);
  Json out;
  out["n"] = a.generators();
  out["coefficients"] = std::move(coeffs);
  return out;
}

inline Multivector<double> multivector_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("n") || !j.contains("coefficients"))
    throw std::invalid_argument("multivector needs 'n' and 'coefficients'");
  Multivector<double> a(j.at("n").get<int>());
  for (const auto& [label, value] : j.at("coefficients").items())
    a.set_coeff(blade_from_label(label), value.get<double>());
  return a;
}

inline Json matrix_multivector_to_json(const Multivector<Matrix>& a) {
  Json coeffs = Json::object();
  const Blade count = Blade{1} << a.generators();
  int dim = 0;
  for (Blade b = 0; b < count; ++b) {
    const Matrix& m = a.coeff(b);
    if (m.size() != 0) dim = static_cast<int>(m.rows());
    if (!scalar_is_zero(m)) coeffs[blade_label(b)] = matrix_to_json(m);
  }
  Json out;
  out["n"] = a.generators();
  out["dim"] = dim;
  out["coefficients"] = std::move(coeffs);
  return out;
}

inline Json hyper_polynomial_to_json(const HyperPolynomial& f) {
  Json terms = Json::array();
  for (const auto& [alpha, c] : f.terms()) {
    Json term;
    term["alpha"] = alpha;
    term["coefficient"] = multivector_to_json(c).at("coefficients");
    terms.push_back(std::move(term));
  }
  Json out;
  out["n"] = f.generators();
  out["terms"] = std::move(terms);
  return out;
}

inline HyperPolynomial hyper_polynomial_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("n") || !j.contains("terms"))
    throw std::invalid_argument("polynomial needs 'n' and 'terms'");
  const int n = j.at("n").get<int>();
  HyperPolynomial f(n);
  for (const Json& term : j.at("terms")) {
    if (!term.contains("alpha") || !term.contains("coefficient"))
      throw std::invalid_argument("every term needs 'alpha' and 'coefficient'");
    const MultiIndex alpha = term.at("alpha").get<MultiIndex>();
    Multivector<double> c(n);
    for (const auto& [label, value] : term.at("coefficient").items())
      c.set_coeff(blade_from_label(label), value.get<double>());
    Multivector<double> acc = f.coeff(alpha);
    acc += c;
    f.set_coeff(alpha, acc);
  }
  return f;
}

inline HyperPolynomial load_hyper_polynomial(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open coefficient file: " + path);
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw std::runtime_error("coefficient file " + path + ": " + e.what());
  }
  return hyper_polynomial_from_json(j);
}

inline Json calculus_result_to_json(const CalculusResult& r) {
  Json out;
  out["route"] = r.route;
  out["value"] = matrix_multivector_to_json(r.value);
  out["degree_norms"] = r.degree_norms;
  out["decay_warning"] = r.decay_warning;
  if (r.route == "integral") {
    out["radius"] = r.radius;
    out["truncation"] = r.truncation;
    out["quad_order"] = r.quad_order;
  }
  return out;
}

inline Json make_run_report(const std::string& command, Json config, Json result,
                            Json diagnostics, double wall_time_ms) {
  Json out;
  out["schema_version"] = kSchemaVersion;
  out["library_version"] = kVersion;
  out["command"] = command;
  out["config"] = std::move(config);
  out["result"] = std::move(result);
  out["diagnostics"] = std::move(diagnostics);
  out["wall_time_ms"] = wall_time_ms;
  return out;
}

}  // namespace cliffcalc
