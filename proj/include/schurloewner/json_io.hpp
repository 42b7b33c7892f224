#pragma once

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "schurloewner/bounds.hpp"
#include "schurloewner/estimators.hpp"
#include "schurloewner/loewner.hpp"
#include "schurloewner/matrixcore.hpp"

namespace schurloewner {

using json = nlohmann::json;

// Matrix wire format: {"n": int, "re": [[..]], "im": [[..]]}, row-major.
inline json matrix_to_json(const CMatrix& m) {
  const Eigen::Index n = m.rows();
  json re = json::array(), im = json::array();
  for (Eigen::Index i = 0; i < n; ++i) {
    json rrow = json::array(), irow = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      rrow.push_back(m(i, j).real());
      irow.push_back(m(i, j).imag());
    }
    re.push_back(std::move(rrow));
    im.push_back(std::move(irow));
  }
  return json{{"n", n}, {"re", std::move(re)}, {"im", std::move(im)}};
}

inline CMatrix matrix_from_json(const json& j) {
  if (!j.is_object() || !j.contains("n") || !j.contains("re") || !j.contains("im"))
    throw std::invalid_argument("matrix JSON must be {\"n\", \"re\", \"im\"}");
  const Eigen::Index n = j.at("n").get<Eigen::Index>();
  const auto& re = j.at("re");
  const auto& im = j.at("im");
  if (static_cast<Eigen::Index>(re.size()) != n || static_cast<Eigen::Index>(im.size()) != n)
    throw std::invalid_argument("matrix JSON: row count does not match n");
  CMatrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (static_cast<Eigen::Index>(re[i].size()) != n || static_cast<Eigen::Index>(im[i].size()) != n)
      throw std::invalid_argument("matrix JSON: column count does not match n");
    for (Eigen::Index jj = 0; jj < n; ++jj)
      m(i, jj) = Complex(re[i][jj].get<double>(), im[i][jj].get<double>());
  }
  return m;
}

// Vector wire format mirrors the matrix one with flat arrays.
inline json vector_to_json(const CVector& v) {
  json re = json::array(), im = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    re.push_back(v(i).real());
    im.push_back(v(i).imag());
  }
  return json{{"n", v.size()}, {"re", std::move(re)}, {"im", std::move(im)}};
}

inline json witness_to_json(const std::variant<CMatrix, CVector>& w) {
  if (std::holds_alternative<CMatrix>(w)) return matrix_to_json(std::get<CMatrix>(w));
  return vector_to_json(std::get<CVector>(w));
}

// Schatten index as a JSON-friendly key: "1", "1.5", "inf".
inline std::string format_q(double q) {
  if (std::isinf(q)) return "inf";
  if (q == std::floor(q) && std::abs(q) < 1e15) {
    std::ostringstream os;
    os << static_cast<long long>(q);
    return os.str();
  }
  std::ostringstream os;
  os << q;
  return os.str();
}

inline double parse_q(const json& j) {
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "inf" || s == "Inf" || s == "infinity") return kInfiniteQ;
    return std::stod(s);
  }
  return j.get<double>();
}

inline json estimate_to_json(const EstimateResult& e) {
  return json{{"lower_estimate", e.lower_estimate},
              {"witness", witness_to_json(e.witness)},
              {"restarts", e.restarts},
              {"iterations", e.iterations},
              {"seed", e.seed}};
}

inline json bound_report_to_json(const BoundReport& rep) {
  json bounds = json::array();
  for (const auto& rec : rep.bounds) {
    json r{{"id", rec.id}, {"applicable", rec.applicable}};
    if (rec.value) r["value"] = *rec.value;
    if (!rec.note.empty()) r["note"] = rec.note;
    bounds.push_back(std::move(r));
  }
  json best = json::object();
  for (const auto& [q, v] : rep.best_per_q) best[format_q(q)] = v;
  json out{{"function", rep.function_name},
           {"spectrum", rep.spectrum},
           {"bounds", std::move(bounds)},
           {"best_per_q", std::move(best)},
           {"phi", rep.phi}};
  if (rep.inputs) {
    out["inputs"] = json{{"alpha", rep.inputs->alpha},
                         {"beta", rep.inputs->beta},
                         {"k_diagonal", rep.inputs->k_diagonal}};
  }
  if (!rep.interpolation_alternative.empty()) {
    json alt = json::object();
    for (const auto& [q, v] : rep.interpolation_alternative) alt[format_q(q)] = v;
    out["interpolation_alternative"] = std::move(alt);
  }
  if (!rep.diagnostic.empty()) out["diagnostic"] = rep.diagnostic;
  return out;
}

inline json loewner_to_json(const LoewnerMatrix& l) {
  return json{{"function", l.function_name()},
              {"spectrum", l.spectrum().values()},
              {"matrix", matrix_to_json(l.complex_entries())}};
}

// Spectrum files: JSON array for *.json, otherwise CSV with one value per line.
inline Spectrum read_spectrum_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open spectrum file '" + path + "'");
  std::vector<double> values;
  const bool is_json = path.size() >= 5 && path.substr(path.size() - 5) == ".json";
  if (is_json) {
    json j;
    in >> j;
    if (!j.is_array()) throw std::invalid_argument("spectrum JSON must be an array of numbers");
    for (const auto& x : j) values.push_back(x.get<double>());
  } else {
    std::string line;
    while (std::getline(in, line)) {
      const auto first = line.find_first_not_of(" \t\r");
      if (first == std::string::npos) continue;
      values.push_back(std::stod(line.substr(first)));
    }
  }
  return Spectrum(values);
}

// Minimal structural validator covering the schema subset this project
// publishes: type, properties, required, items, enum, additionalProperties.
inline void validate_schema_impl(const json& value, const json& schema, const std::string& path,
                                 std::vector<std::string>& errors) {
  auto type_matches = [&](const std::string& t) {
    if (t == "object") return value.is_object();
    if (t == "array") return value.is_array();
    if (t == "string") return value.is_string();
    if (t == "number") return value.is_number();
    if (t == "integer") return value.is_number_integer() || value.is_number_unsigned();
    if (t == "boolean") return value.is_boolean();
    if (t == "null") return value.is_null();
    return false;
  };

  if (schema.contains("type")) {
    const auto& ty = schema.at("type");
    bool ok = false;
    if (ty.is_string()) {
      ok = type_matches(ty.get<std::string>());
    } else if (ty.is_array()) {
      for (const auto& t : ty)
        if (type_matches(t.get<std::string>())) { ok = true; break; }
    }
    if (!ok) {
      errors.push_back(path + ": type mismatch, expected " + ty.dump());
      return;
    }
  }
  if (schema.contains("enum")) {
    bool ok = false;
    for (const auto& cand : schema.at("enum"))
      if (cand == value) { ok = true; break; }
    if (!ok) errors.push_back(path + ": value not in enum " + schema.at("enum").dump());
  }
  if (value.is_object()) {
    if (schema.contains("required"))
      for (const auto& key : schema.at("required"))
        if (!value.contains(key.get<std::string>()))
          errors.push_back(path + ": missing required key '" + key.get<std::string>() + "'");
    if (schema.contains("properties")) {
      for (auto it = schema.at("properties").begin(); it != schema.at("properties").end(); ++it)
        if (value.contains(it.key()))
          validate_schema_impl(value.at(it.key()), it.value(), path + "/" + it.key(), errors);
      if (schema.contains("additionalProperties") && schema.at("additionalProperties").is_boolean() &&
          !schema.at("additionalProperties").get<bool>()) {
        for (auto it = value.begin(); it != value.end(); ++it)
          if (!schema.at("properties").contains(it.key()))
            errors.push_back(path + ": unexpected key '" + it.key() + "'");
      }
    }
  }
  if (value.is_array() && schema.contains("items")) {
    int idx = 0;
    for (const auto& item : value) {
      validate_schema_impl(item, schema.at("items"), path + "/" + std::to_string(idx), errors);
      ++idx;
    }
  }
}

inline std::vector<std::string> validate_schema(const json& value, const json& schema) {
  std::vector<std::string> errors;
  validate_schema_impl(value, schema, "", errors);
  return errors;
}

}  // namespace schurloewner
