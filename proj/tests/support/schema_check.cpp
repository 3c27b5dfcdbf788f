#include "support/schema_check.hpp"

#include <stdexcept>

namespace dxtest {
namespace {

using nlohmann::json;

bool has_type(const json& v, const std::string& type) {
  if (type == "object") return v.is_object();
  if (type == "array") return v.is_array();
  if (type == "string") return v.is_string();
  if (type == "boolean") return v.is_boolean();
  if (type == "null") return v.is_null();
  if (type == "integer") return v.is_number_integer();
  if (type == "number") return v.is_number();
  throw std::runtime_error("unsupported schema type " + type);
}

class Validator {
 public:
  explicit Validator(const json& root) : root_(root) {}

  void check(const json& v, const json& s, const std::string& at, std::vector<std::string>& errors) const {
    if (s.is_boolean()) {
      if (!s.get<bool>()) errors.push_back(at + ": not allowed");
      return;
    }
    for (const auto& [kw, arg] : s.items()) {
      if (kw == "$ref") {
        check(v, resolve(arg.get<std::string>()), at, errors);
      } else if (kw == "type") {
        bool ok = false;
        if (arg.is_string()) ok = has_type(v, arg.get<std::string>());
        else
          for (const auto& t : arg) ok = ok || has_type(v, t.get<std::string>());
        if (!ok) errors.push_back(at + ": expected type " + arg.dump() + ", got " + v.type_name());
      } else if (kw == "enum") {
        bool ok = false;
        for (const auto& e : arg) ok = ok || e == v;
        if (!ok) errors.push_back(at + ": " + v.dump() + " not in " + arg.dump());
      } else if (kw == "const") {
        if (arg != v) errors.push_back(at + ": expected " + arg.dump());
      } else if (kw == "required") {
        if (!v.is_object()) continue;
        for (const auto& k : arg)
          if (!v.contains(k.get<std::string>())) errors.push_back(at + ": missing " + k.get<std::string>());
      } else if (kw == "properties") {
        if (!v.is_object()) continue;
        for (const auto& [k, sub] : arg.items())
          if (v.contains(k)) check(v.at(k), sub, at + "/" + k, errors);
      } else if (kw == "additionalProperties") {
        if (!v.is_object()) continue;
        for (const auto& [k, item] : v.items()) {
          if (s.contains("properties") && s.at("properties").contains(k)) continue;
          check(item, arg, at + "/" + k, errors);
        }
      } else if (kw == "items") {
        if (!v.is_array()) continue;
        for (std::size_t i = 0; i < v.size(); ++i) check(v[i], arg, at + "/" + std::to_string(i), errors);
      } else if (kw == "minimum") {
        if (v.is_number() && v.get<double>() < arg.get<double>()) errors.push_back(at + ": below minimum");
      } else if (kw == "oneOf") {
        int matches = 0;
        for (const auto& alt : arg) {
          std::vector<std::string> sub;
          check(v, alt, at, sub);
          if (sub.empty()) ++matches;
        }
        if (matches != 1) errors.push_back(at + ": matches " + std::to_string(matches) + " oneOf alternatives");
      } else if (kw == "$schema" || kw == "$id" || kw == "$defs" || kw == "title" || kw == "description") {
        continue;
      } else {
        throw std::runtime_error("unsupported schema keyword " + kw);
      }
    }
  }

 private:
  const json& resolve(const std::string& ref) const {
    const std::string prefix = "#/$defs/";
    if (ref.rfind(prefix, 0) != 0) throw std::runtime_error("unsupported $ref " + ref);
    return root_.at("$defs").at(ref.substr(prefix.size()));
  }

  const json& root_;
};

}  // namespace

std::vector<std::string> validate_schema(const nlohmann::json& instance, const nlohmann::json& schema) {
  std::vector<std::string> errors;
  Validator(schema).check(instance, schema, "", errors);
  return errors;
}

}  // namespace dxtest
