// JSON system descriptors: either the raw two-zone matrices or a canonical
// override given directly in Liénard form.
#pragma once

#include <fstream>
#include <optional>
#include <sstream>
#include <string>

#include <json.hpp>

#include "pwlcycles/canonical_form.hpp"
#include "pwlcycles/errors.hpp"

namespace pwlcycles {

using json = nlohmann::json;

struct SystemDescriptor {
  std::string name;
  std::optional<PWLSystem> system;
  std::optional<CanonicalForm> canonical;
  friend bool operator==(const SystemDescriptor&, const SystemDescriptor&) = default;
};

inline constexpr const char* kCanonicalFields[] = {"T_L", "D_L", "a_L", "T_R", "D_R", "a_R", "b_star"};

namespace detail {

inline Rational rational_field(const json& j, const std::string& where) {
  if (j.is_string()) {
    try {
      return Rational::parse(j.get<std::string>());
    } catch (const Error& e) {
      throw ParseError(where + ": " + e.what());
    }
  }
  if (j.is_number_integer()) return Rational(j.get<long long>());
  throw ParseError(where + ": expected a rational string such as \"-3/10\"");
}

inline Vec2 vec_field(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2) throw ParseError(where + ": expected an array of 2 rationals");
  return {rational_field(j[0], where + "[0]"), rational_field(j[1], where + "[1]")};
}

inline Mat2 mat_field(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2) throw ParseError(where + ": expected a 2x2 array");
  Mat2 m;
  for (std::size_t r = 0; r < 2; ++r) {
    const Vec2 row = vec_field(j[r], where + "[" + std::to_string(r) + "]");
    m[r] = row;
  }
  return m;
}

inline json vec_json(const Vec2& v) { return json::array({v[0].to_string(), v[1].to_string()}); }
inline json mat_json(const Mat2& m) { return json::array({vec_json(m[0]), vec_json(m[1])}); }

inline Rational& canonical_slot(CanonicalForm& cf, std::size_t i) {
  Rational* slots[] = {&cf.T_L, &cf.D_L, &cf.a_L, &cf.T_R, &cf.D_R, &cf.a_R, &cf.b_star};
  return *slots[i];
}

}  // namespace detail

inline json canonical_to_json(const CanonicalForm& cf) {
  json j = json::object();
  CanonicalForm copy = cf;
  for (std::size_t i = 0; i < 7; ++i) j[kCanonicalFields[i]] = detail::canonical_slot(copy, i).to_string();
  return j;
}

inline CanonicalForm canonical_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("canonical: expected an object");
  CanonicalForm cf;
  for (std::size_t i = 0; i < 7; ++i) {
    const char* key = kCanonicalFields[i];
    if (!j.contains(key)) throw ParseError(std::string("canonical: missing ") + key);
    detail::canonical_slot(cf, i) = detail::rational_field(j[key], std::string("canonical.") + key);
  }
  return cf;
}

inline SystemDescriptor parse_descriptor(const json& j) {
  if (!j.is_object()) throw ParseError("descriptor must be a JSON object");
  SystemDescriptor d;
  if (j.contains("name")) {
    if (!j["name"].is_string()) throw ParseError("name: expected a string");
    d.name = j["name"].get<std::string>();
  }
  const char* matrix_keys[] = {"A_L", "A_R", "b_L", "b_R"};
  int present = 0;
  for (const char* k : matrix_keys) present += j.contains(k) ? 1 : 0;
  const bool has_canonical = j.contains("canonical");
  if (present > 0 && has_canonical) throw ParseError("give either the matrices or the canonical override, not both");
  if (has_canonical) {
    d.canonical = canonical_from_json(j["canonical"]);
    return d;
  }
  if (present == 0) throw ParseError("descriptor needs A_L, A_R, b_L, b_R or a canonical override");
  if (present != 4) throw ParseError("descriptor needs all of A_L, A_R, b_L, b_R");
  PWLSystem s;
  s.A_L = detail::mat_field(j["A_L"], "A_L");
  s.A_R = detail::mat_field(j["A_R"], "A_R");
  s.b_L = detail::vec_field(j["b_L"], "b_L");
  s.b_R = detail::vec_field(j["b_R"], "b_R");
  d.system = s;
  return d;
}

inline SystemDescriptor parse_descriptor(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  return parse_descriptor(j);
}

inline SystemDescriptor load_descriptor(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_descriptor(ss.str());
}

inline json descriptor_to_json(const SystemDescriptor& d) {
  json j = json::object();
  j["name"] = d.name;
  if (d.system) {
    j["A_L"] = detail::mat_json(d.system->A_L);
    j["A_R"] = detail::mat_json(d.system->A_R);
    j["b_L"] = detail::vec_json(d.system->b_L);
    j["b_R"] = detail::vec_json(d.system->b_R);
  }
  if (d.canonical) j["canonical"] = canonical_to_json(*d.canonical);
  return j;
}

}  // namespace pwlcycles
