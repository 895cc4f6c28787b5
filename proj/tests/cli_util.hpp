// Helpers for driving the CLI binary from tests.
#pragma once
#include <json.hpp>

#include <array>
#include <cstdio>
#include <fstream>
#include <set>
#include <string>

namespace cli_util {

using Json = nlohmann::json;

struct RunResult {
  int exit_code = -1;
  std::string out;
};

inline RunResult run(const std::string& cmdline) {
  RunResult res;
  FILE* pipe = popen((cmdline + " 2>/dev/null").c_str(), "r");
  if (!pipe) return res;
  std::array<char, 4096> buf;
  std::size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) res.out.append(buf.data(), got);
  int status = pclose(pipe);
  res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return res;
}

inline Json load_json_file(const std::string& path) {
  std::ifstream f(path);
  return Json::parse(f);
}

// Minimal structural validator for the subset of JSON Schema the shipped
// schema uses: type/required/properties/enum/items/$ref/if-then(const)/allOf.
class SchemaChecker {
 public:
  explicit SchemaChecker(Json schema) : root_(std::move(schema)) {}

  bool validate(const Json& value, std::string* why = nullptr) const {
    return check(root_, value, "$", why);
  }

 private:
  Json resolve(const Json& node) const {
    if (node.is_object() && node.contains("$ref")) {
      std::string ref = node["$ref"];
      // only local refs of the form #/definitions/name
      auto pos = ref.find_last_of('/');
      return root_["definitions"][ref.substr(pos + 1)];
    }
    return node;
  }

  static bool type_matches(const std::string& t, const Json& v) {
    if (t == "object") return v.is_object();
    if (t == "array") return v.is_array();
    if (t == "string") return v.is_string();
    if (t == "integer") return v.is_number_integer();
    if (t == "number") return v.is_number();
    if (t == "boolean") return v.is_boolean();
    if (t == "null") return v.is_null();
    return true;
  }

  bool check(const Json& schema_in, const Json& v, const std::string& path,
             std::string* why) const {
    Json schema = resolve(schema_in);
    if (!schema.is_object()) return true;
    if (schema.contains("type")) {
      const Json& t = schema["type"];
      bool ok = false;
      if (t.is_string())
        ok = type_matches(t.get<std::string>(), v);
      else
        for (const auto& tt : t) ok = ok || type_matches(tt.get<std::string>(), v);
      if (!ok) {
        if (why) *why = path + ": type mismatch";
        return false;
      }
    }
    if (schema.contains("enum")) {
      bool ok = false;
      for (const auto& e : schema["enum"]) ok = ok || e == v;
      if (!ok) {
        if (why) *why = path + ": not in enum";
        return false;
      }
    }
    if (schema.contains("minimum") && v.is_number()) {
      if (v.get<double>() < schema["minimum"].get<double>()) {
        if (why) *why = path + ": below minimum";
        return false;
      }
    }
    if (v.is_object()) {
      if (schema.contains("required"))
        for (const auto& r : schema["required"])
          if (!v.contains(r.get<std::string>())) {
            if (why) *why = path + ": missing required '" + r.get<std::string>() + "'";
            return false;
          }
      if (schema.contains("properties"))
        for (auto it = schema["properties"].begin(); it != schema["properties"].end(); ++it)
          if (v.contains(it.key()))
            if (!check(it.value(), v.at(it.key()), path + "." + it.key(), why)) return false;
      if (schema.contains("additionalProperties") && schema["additionalProperties"].is_object()) {
        std::set<std::string> known;
        if (schema.contains("properties"))
          for (auto it = schema["properties"].begin(); it != schema["properties"].end(); ++it)
            known.insert(it.key());
        for (auto it = v.begin(); it != v.end(); ++it)
          if (!known.count(it.key()))
            if (!check(schema["additionalProperties"], it.value(), path + "." + it.key(), why))
              return false;
      }
    }
    if (v.is_array() && schema.contains("items"))
      for (std::size_t i = 0; i < v.size(); ++i)
        if (!check(schema["items"], v[i], path + "[" + std::to_string(i) + "]", why)) return false;
    if (schema.contains("allOf")) {
      for (const auto& clause : schema["allOf"]) {
        if (clause.contains("if") && clause.contains("then")) {
          const Json& cond = clause["if"]["properties"];
          bool applies = true;
          for (auto it = cond.begin(); it != cond.end(); ++it) {
            if (!v.is_object() || !v.contains(it.key()) ||
                !(v.at(it.key()) == it.value().at("const")))
              applies = false;
          }
          if (applies && !check(clause["then"], v, path, why)) return false;
        }
      }
    }
    return true;
  }

  Json root_;
};

}  // namespace cli_util
