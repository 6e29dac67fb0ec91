#ifndef NIO_TESTS_SCHEMA_CHECK_HPP
#define NIO_TESTS_SCHEMA_CHECK_HPP

#include <json.hpp>

#include <string>
#include <vector>

// Validator for the subset of JSON Schema the shipped schemas use:
// type (string or array of strings), enum, properties, required,
// additionalProperties (boolean false), items (single schema),
// minItems, maxItems.
namespace testsupport {

inline bool type_matches(const std::string& name, const nlohmann::json& j) {
  if (name == "null") return j.is_null();
  if (name == "object") return j.is_object();
  if (name == "array") return j.is_array();
  if (name == "string") return j.is_string();
  if (name == "boolean") return j.is_boolean();
  if (name == "number") return j.is_number();
  if (name == "integer") return j.is_number_integer() || j.is_number_unsigned();
  return false;
}

inline void collect_schema_errors(const nlohmann::json& schema,
                                  const nlohmann::json& j, const std::string& path,
                                  std::vector<std::string>& errors) {
  using nlohmann::json;
  if (schema.contains("type")) {
    const json& t = schema["type"];
    bool ok = false;
    if (t.is_string()) {
      ok = type_matches(t.get<std::string>(), j);
    } else {
      for (const auto& name : t) {
        if (type_matches(name.get<std::string>(), j)) {
          ok = true;
          break;
        }
      }
    }
    if (!ok) {
      errors.push_back(path + ": type mismatch, got " + std::string(j.type_name()));
      return;
    }
    // A nullable composite that is null passes without structural checks.
    if (j.is_null()) return;
  }
  if (schema.contains("enum")) {
    bool ok = false;
    for (const auto& candidate : schema["enum"]) {
      if (candidate == j) {
        ok = true;
        break;
      }
    }
    if (!ok) errors.push_back(path + ": value not in enum");
  }
  if (j.is_object()) {
    if (schema.contains("required")) {
      for (const auto& key : schema["required"]) {
        if (!j.contains(key.get<std::string>())) {
          errors.push_back(path + ": missing required key '" +
                           key.get<std::string>() + "'");
        }
      }
    }
    const json* props = schema.contains("properties") ? &schema["properties"] : nullptr;
    if (props != nullptr) {
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (props->contains(it.key())) {
          collect_schema_errors((*props)[it.key()], it.value(), path + "/" + it.key(),
                                errors);
        } else if (schema.contains("additionalProperties") &&
                   schema["additionalProperties"] == false) {
          errors.push_back(path + ": unexpected key '" + it.key() + "'");
        }
      }
    }
  }
  if (j.is_array()) {
    if (schema.contains("minItems") &&
        j.size() < schema["minItems"].get<std::size_t>()) {
      errors.push_back(path + ": fewer than minItems elements");
    }
    if (schema.contains("maxItems") &&
        j.size() > schema["maxItems"].get<std::size_t>()) {
      errors.push_back(path + ": more than maxItems elements");
    }
    if (schema.contains("items")) {
      for (std::size_t i = 0; i < j.size(); ++i) {
        collect_schema_errors(schema["items"], j[i],
                              path + "/" + std::to_string(i), errors);
      }
    }
  }
}

inline std::vector<std::string> schema_errors(const nlohmann::json& schema,
                                              const nlohmann::json& j) {
  std::vector<std::string> errors;
  collect_schema_errors(schema, j, "", errors);
  return errors;
}

}  // namespace testsupport

#endif  // NIO_TESTS_SCHEMA_CHECK_HPP
