#pragma once

// Validator for the subset of JSON Schema (draft-07) used by the files in
// schemas/: type, enum, required, properties, additionalProperties (bool),
// items, minItems, maxItems, minimum, and local "#/definitions/..." refs.

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace wholo::schema {

using nlohmann::json;

namespace detail {

inline bool has_type(const json& v, const std::string& t) {
  if (t == "object") return v.is_object();
  if (t == "array") return v.is_array();
  if (t == "string") return v.is_string();
  if (t == "integer") return v.is_number_integer();
  if (t == "number") return v.is_number();
  if (t == "boolean") return v.is_boolean();
  if (t == "null") return v.is_null();
  return false;
}

inline void check(const json& root, const json& s, const json& v, const std::string& path,
                  std::vector<std::string>& errors) {
  if (s.contains("$ref")) {
    const std::string ref = s["$ref"].get<std::string>();
    const std::string prefix = "#/definitions/";
    if (ref.rfind(prefix, 0) != 0 || !root.contains("definitions") ||
        !root["definitions"].contains(ref.substr(prefix.size()))) {
      errors.push_back(path + ": unresolvable $ref " + ref);
      return;
    }
    check(root, root["definitions"][ref.substr(prefix.size())], v, path, errors);
    return;
  }
  if (s.contains("type")) {
    bool ok = false;
    if (s["type"].is_array()) {
      for (const auto& t : s["type"]) ok = ok || has_type(v, t.get<std::string>());
    } else {
      ok = has_type(v, s["type"].get<std::string>());
    }
    if (!ok) {
      errors.push_back(path + ": expected type " + s["type"].dump());
      return;
    }
  }
  if (s.contains("enum")) {
    bool ok = false;
    for (const auto& e : s["enum"]) ok = ok || e == v;
    if (!ok) errors.push_back(path + ": value " + v.dump() + " not in " + s["enum"].dump());
  }
  if (s.contains("minimum") && v.is_number() && v.get<double>() < s["minimum"].get<double>()) {
    errors.push_back(path + ": below minimum " + s["minimum"].dump());
  }
  if (v.is_object()) {
    if (s.contains("required")) {
      for (const auto& r : s["required"]) {
        if (!v.contains(r.get<std::string>())) errors.push_back(path + ": missing required \"" + r.get<std::string>() + "\"");
      }
    }
    const json props = s.value("properties", json::object());
    for (const auto& [key, value] : v.items()) {
      if (props.contains(key)) {
        check(root, props[key], value, path + "." + key, errors);
      } else if (s.contains("additionalProperties") && s["additionalProperties"] == false) {
        errors.push_back(path + ": unexpected property \"" + key + "\"");
      }
    }
  }
  if (v.is_array()) {
    if (s.contains("minItems") && v.size() < s["minItems"].get<std::size_t>()) {
      errors.push_back(path + ": fewer than " + s["minItems"].dump() + " items");
    }
    if (s.contains("maxItems") && v.size() > s["maxItems"].get<std::size_t>()) {
      errors.push_back(path + ": more than " + s["maxItems"].dump() + " items");
    }
    if (s.contains("items")) {
      for (std::size_t i = 0; i < v.size(); ++i) check(root, s["items"], v[i], path + "[" + std::to_string(i) + "]", errors);
    }
  }
}

}  // namespace detail

// Empty result means valid.
inline std::vector<std::string> validate(const json& schema, const json& value) {
  std::vector<std::string> errors;
  detail::check(schema, schema, value, "$", errors);
  return errors;
}

}  // namespace wholo::schema
