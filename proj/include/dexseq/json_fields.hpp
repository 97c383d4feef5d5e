#pragma once

#include <set>
#include <string>
#include <vector>

#include "json.hpp"

#include "dexseq/errors.hpp"
#include "dexseq/geometry.hpp"

namespace dexseq {

using Json = nlohmann::json;

namespace detail {

template <class T>
Json field_to_json(const T& v) {
  return Json(v);
}

inline Json field_to_json(const Vec3& v) { return Json::array({v.x(), v.y(), v.z()}); }

template <class T>
void field_from_json(const Json& j, T& out, const std::string& path) {
  try {
    out = j.get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(path, std::string("wrong type (") + e.what() + ")");
  }
}

inline void field_from_json(const Json& j, double& out, const std::string& path) {
  if (!j.is_number()) throw SchemaError(path, "expected a number");
  out = j.get<double>();
}

inline void field_from_json(const Json& j, int& out, const std::string& path) {
  if (!j.is_number_integer()) throw SchemaError(path, "expected an integer");
  out = j.get<int>();
}

inline void field_from_json(const Json& j, long& out, const std::string& path) {
  if (!j.is_number_integer()) throw SchemaError(path, "expected an integer");
  out = j.get<long>();
}

inline void field_from_json(const Json& j, bool& out, const std::string& path) {
  if (!j.is_boolean()) throw SchemaError(path, "expected true or false");
  out = j.get<bool>();
}

inline void field_from_json(const Json& j, Vec3& out, const std::string& path) {
  if (!j.is_array() || j.size() != 3) throw SchemaError(path, "expected an array of 3 numbers");
  for (std::size_t i = 0; i < 3; ++i) {
    if (!j[i].is_number()) throw SchemaError(path, "expected an array of 3 numbers");
    out[static_cast<Eigen::Index>(i)] = j[i].get<double>();
  }
}

}  // namespace detail

inline std::string join_path(const std::string& base, const std::string& key) {
  return base.empty() ? key : base + "." + key;
}

// Structs opt in by providing `template <class F> void visit_fields(F&& f)`
// that calls f("name", member) for every serialized member.
template <class T>
Json fields_to_json(const T& value) {
  T copy = value;
  Json j = Json::object();
  copy.visit_fields([&](const char* name, auto& member) { j[name] = detail::field_to_json(member); });
  return j;
}

// Strict load: unknown keys raise SchemaError, missing keys keep defaults.
template <class T>
void fields_from_json(const Json& j, T& value, const std::string& path) {
  if (!j.is_object()) throw SchemaError(path, "expected an object");
  std::set<std::string> known;
  value.visit_fields([&](const char* name, auto&) { known.insert(name); });
  for (const auto& [key, _] : j.items()) {
    if (!known.contains(key)) throw SchemaError(join_path(path, key), "unknown key");
  }
  value.visit_fields([&](const char* name, auto& member) {
    if (auto it = j.find(name); it != j.end()) {
      detail::field_from_json(*it, member, join_path(path, name));
    }
  });
}

// Rejects keys outside `allowed`.
inline void require_known_keys(const Json& j, const std::set<std::string>& allowed,
                               const std::string& path) {
  if (!j.is_object()) throw SchemaError(path, "expected an object");
  for (const auto& [key, _] : j.items()) {
    if (!allowed.contains(key)) throw SchemaError(join_path(path, key), "unknown key");
  }
}

}  // namespace dexseq
