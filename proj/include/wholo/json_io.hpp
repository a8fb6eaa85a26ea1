#pragma once

// JSON forms of configurations and verdicts.
//
// Configuration:
//   {"s": 2, "points": [[[re, im], [re, im]], ...], "fields": ["bose", "fermi", ...]}
// "fields" may be omitted on input (all bose); it is always written.

#include <cmath>
#include <fstream>
#include <iterator>
#include <sstream>
#include <stdexcept>
#include <string>

#include <nlohmann/json.hpp>

#include "wholo/classify.hpp"
#include "wholo/geometry.hpp"
#include "wholo/verdict.hpp"

namespace wholo {

using nlohmann::json;

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline json complex_to_json(Complex z) { return json::array({z.real(), z.imag()}); }

inline Complex complex_from_json(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw InputError(where + ": expected a complex number [re, im]");
  }
  const double re = j[0].get<double>(), im = j[1].get<double>();
  if (!std::isfinite(re) || !std::isfinite(im)) throw InputError(where + ": non-finite component");
  return {re, im};
}

inline json configuration_to_json(const Configuration& c) {
  json points = json::array();
  for (const auto& z : c.points()) {
    json p = json::array();
    for (int mu = 0; mu < z.dimension(); ++mu) p.push_back(complex_to_json(z[mu]));
    points.push_back(std::move(p));
  }
  json fields = json::array();
  for (auto f : c.fields()) fields.push_back(std::string(to_string(f)));
  return json{{"s", c.dimension()}, {"points", std::move(points)}, {"fields", std::move(fields)}};
}

inline Configuration configuration_from_json(const json& j) {
  if (!j.is_object()) throw InputError("configuration must be a JSON object");
  if (!j.contains("s") || !j["s"].is_number_integer()) throw InputError("\"s\" must be an integer");
  const auto s = j["s"].get<std::int64_t>();
  if (s < 2 || s > 1024) throw InputError("\"s\" must be in 2..1024, got " + std::to_string(s));
  if (!j.contains("points") || !j["points"].is_array() || j["points"].empty()) {
    throw InputError("\"points\" must be a nonempty array");
  }
  std::vector<ComplexVector> points;
  for (std::size_t i = 0; i < j["points"].size(); ++i) {
    const json& p = j["points"][i];
    const std::string where = "points[" + std::to_string(i) + "]";
    if (!p.is_array() || p.size() != static_cast<std::size_t>(s)) {
      throw InputError(where + ": expected " + std::to_string(s) + " components");
    }
    ComplexVector z(Eigen::VectorXcd(static_cast<Eigen::Index>(s)));
    for (std::size_t mu = 0; mu < p.size(); ++mu) {
      z[static_cast<int>(mu)] = complex_from_json(p[mu], where + "[" + std::to_string(mu) + "]");
    }
    points.push_back(std::move(z));
  }
  std::vector<Statistics> fields(points.size(), Statistics::Bose);
  if (j.contains("fields")) {
    const json& f = j["fields"];
    if (!f.is_array() || f.size() != points.size()) {
      throw InputError("\"fields\" must be an array with one entry per point");
    }
    for (std::size_t i = 0; i < f.size(); ++i) {
      if (f[i] == "bose") fields[i] = Statistics::Bose;
      else if (f[i] == "fermi") fields[i] = Statistics::Fermi;
      else throw InputError("fields[" + std::to_string(i) + "]: expected \"bose\" or \"fermi\"");
    }
  }
  for (const auto& [key, value] : j.items()) {
    if (key != "s" && key != "points" && key != "fields") throw InputError("unknown key \"" + key + "\"");
  }
  return Configuration(static_cast<int>(s), std::move(points), std::move(fields));
}

// Parse errors carry the byte position reported by the JSON parser.
inline json parse_json_text(const std::string& text, const std::string& source) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(source + ": malformed JSON at byte " + std::to_string(e.byte) + ": " + e.what());
  }
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

inline Configuration load_configuration(const std::string& path) {
  return configuration_from_json(parse_json_text(read_text_file(path), path));
}

inline json certificate_to_json(const Certificate& cert) {
  json j = json::object();
  if (cert.lambda) j["lambda"] = complex_to_json(*cert.lambda);
  if (cert.matrix) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < cert.matrix->rows(); ++r) {
      json row = json::array();
      for (Eigen::Index c = 0; c < cert.matrix->cols(); ++c) row.push_back(complex_to_json((*cert.matrix)(r, c)));
      rows.push_back(std::move(row));
    }
    j["matrix"] = std::move(rows);
  }
  if (cert.permutation) j["permutation"] = *cert.permutation;
  return j;
}

inline Certificate certificate_from_json(const json& j) {
  Certificate cert;
  if (j.contains("lambda")) cert.lambda = complex_from_json(j["lambda"], "certificate.lambda");
  if (j.contains("matrix")) {
    const json& rows = j["matrix"];
    const auto n = static_cast<Eigen::Index>(rows.size());
    Eigen::MatrixXcd m(n, n);
    for (Eigen::Index r = 0; r < n; ++r) {
      if (rows[static_cast<std::size_t>(r)].size() != static_cast<std::size_t>(n)) {
        throw InputError("certificate.matrix must be square");
      }
      for (Eigen::Index c = 0; c < n; ++c) {
        m(r, c) = complex_from_json(rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)], "certificate.matrix");
      }
    }
    cert.matrix = std::move(m);
  }
  if (j.contains("permutation")) cert.permutation = j["permutation"].get<std::vector<int>>();
  return cert;
}

inline json verdict_to_json(std::string_view command, const Verdict& v, const Configuration& c, double eps) {
  json j{{"command", command},
         {"state", to_string(v.state)},
         {"margin", std::isfinite(v.margin) ? json(v.margin) : json(nullptr)},
         {"epsilon", eps},
         {"s", c.dimension()},
         {"m", c.size()},
         {"n", function_index(c.dimension(), c.size())}};
  if (v.certificate) j["certificate"] = certificate_to_json(*v.certificate);
  if (v.witness_weights) j["witness_weights"] = *v.witness_weights;
  return j;
}

}  // namespace wholo
