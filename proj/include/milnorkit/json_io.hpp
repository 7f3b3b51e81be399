#pragma once

// JSON documents (schema 1) for the domain objects. Field values are stored as
// expression strings in the printed canonical form, so files stay diffable and
// parse back with the expression reader.

#include <cstddef>
#include <string>
#include <vector>

#include <json.hpp>

#include "milnorkit/cycles.hpp"
#include "milnorkit/error.hpp"
#include "milnorkit/expr.hpp"
#include "milnorkit/forms.hpp"
#include "milnorkit/milnor.hpp"
#include "milnorkit/series.hpp"
#include "milnorkit/verify.hpp"

namespace milnorkit {

using Json = nlohmann::ordered_json;

inline constexpr int json_schema = 1;

namespace detail {

inline const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key))
    throw ParseError(std::string("missing JSON field '") + key + "'");
  return j.at(key);
}

inline std::size_t size_field(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0))
    throw ParseError(std::string("field '") + key + "' must be a non-negative integer");
  return v.get<std::size_t>();
}

inline std::string string_field(const Json& j) {
  if (!j.is_string()) throw ParseError("expected an expression string");
  return j.get<std::string>();
}

}  // namespace detail

/// {"schema": 1, "kind": ..., "r": ...} followed by the body's fields.
inline Json document(const std::string& kind, std::size_t nvars, const Json& body) {
  Json out;
  out["schema"] = json_schema;
  out["kind"] = kind;
  out["r"] = nvars;
  for (const auto& [k, v] : body.items()) out[k] = v;
  return out;
}

inline void check_schema(const Json& doc) {
  if (detail::size_field(doc, "schema") != static_cast<std::size_t>(json_schema))
    throw ParseError("unsupported schema version");
}

inline Json to_json(const RationalFunction& f) { return f.to_string(); }

inline Json to_json(const Series& s) {
  Json coeffs = Json::array();
  for (const auto& c : s.coeffs()) coeffs.push_back(c.to_string());
  return Json{{"precision", s.precision()}, {"coeffs", coeffs}};
}

inline Series series_from_json(const Json& j, std::size_t nvars) {
  std::size_t precision = detail::size_field(j, "precision");
  const Json& coeffs = detail::field(j, "coeffs");
  if (!coeffs.is_array() || coeffs.size() > precision)
    throw ParseError("'coeffs' must be an array of at most 'precision' strings");
  std::vector<RationalFunction> c;
  for (const auto& x : coeffs) c.push_back(parse_field(detail::string_field(x), nvars));
  while (c.size() < precision) c.emplace_back(nvars);
  if (c.empty()) throw ParseError("precision must be positive");
  return Series(std::move(c));
}

inline Json to_json(const KForm& w) {
  Json terms = Json::array();
  for (const auto& [s, c] : w.terms()) {
    Json subset = Json::array();
    for (auto j : subset_elements(s)) subset.push_back(j + 1);
    terms.push_back(Json{{"subset", subset}, {"coeff", c.to_string()}});
  }
  return Json{{"degree", w.degree()}, {"terms", terms}};
}

inline KForm kform_from_json(const Json& j, std::size_t nvars) {
  std::size_t degree = detail::size_field(j, "degree");
  KForm w(nvars, degree);
  for (const auto& t : detail::field(j, "terms")) {
    std::vector<std::size_t> indices;
    for (const auto& x : detail::field(t, "subset")) {
      auto k = x.get<long long>();
      if (k < 1 || static_cast<std::size_t>(k) > nvars)
        throw ParseError("subset index out of range");
      indices.push_back(static_cast<std::size_t>(k - 1));
    }
    Subset s = subset_of(indices);
    if (subset_size(s) != degree || indices.size() != degree)
      throw ParseError("subset does not match the form degree");
    w.add_term(s, parse_field(detail::string_field(detail::field(t, "coeff")), nvars));
  }
  return w;
}

inline Json to_json(const MilnorSymbol& s) {
  Json entries = Json::array();
  for (const auto& a : s.entries()) entries.push_back(to_json(a));
  return Json{{"entries", entries}};
}

inline MilnorSymbol symbol_from_json(const Json& j, std::size_t nvars) {
  std::vector<Series> entries;
  for (const auto& a : detail::field(j, "entries")) entries.push_back(series_from_json(a, nvars));
  return MilnorSymbol(std::move(entries));
}

inline Json to_json(const MilnorChain& c) {
  Json terms = Json::array();
  for (const auto& t : c.terms())
    terms.push_back(Json{{"multiplicity", t.multiplicity}, {"symbol", to_json(t.symbol)}});
  return Json{{"modulus", c.modulus()}, {"length", c.length()}, {"terms", terms}};
}

inline MilnorChain chain_from_json(const Json& j, std::size_t nvars) {
  MilnorChain c(nvars, detail::size_field(j, "length"), detail::size_field(j, "modulus"));
  for (const auto& t : detail::field(j, "terms"))
    c.add(symbol_from_json(detail::field(t, "symbol"), nvars),
          detail::field(t, "multiplicity").get<long>());
  return c;
}

inline Json to_json(const RelClass& c) {
  Json components = Json::array();
  for (std::size_t i = 1; i < c.modulus(); ++i) components.push_back(to_json(c.at(i)));
  return Json{{"modulus", c.modulus()}, {"degree", c.degree()}, {"components", components}};
}

inline RelClass relclass_from_json(const Json& j, std::size_t nvars) {
  RelClass c(nvars, detail::size_field(j, "degree"), detail::size_field(j, "modulus"));
  const Json& components = detail::field(j, "components");
  if (!components.is_array() || components.size() + 1 != c.modulus())
    throw ParseError("expected modulus - 1 components");
  for (std::size_t i = 1; i < c.modulus(); ++i) c.set(i, kform_from_json(components[i - 1], nvars));
  return c;
}

inline Json to_json(const GraphCycle& g) {
  Json entries = Json::array();
  for (const auto& a : g.entries()) entries.push_back(to_json(a));
  return Json{{"modulus", g.modulus()}, {"entries", entries}};
}

inline GraphCycle cycle_from_json(const Json& j, std::size_t nvars) {
  std::vector<Series> entries;
  for (const auto& a : detail::field(j, "entries")) entries.push_back(series_from_json(a, nvars));
  return GraphCycle(std::move(entries), detail::size_field(j, "modulus"));
}

inline Json to_json(const PolySystem& s) {
  Json equations = Json::array();
  for (const auto& f : s.equations) equations.push_back(f.to_string());
  return Json{{"yvars", s.yvars}, {"equations", equations}};
}

/// A system document: "equations" holds polynomial expressions in y1..yn whose
/// coefficients may involve x1..xr and t. "yvars" defaults to the largest y
/// index used; "precision" defaults to the given value.
inline PolySystem system_from_json(const Json& j, std::size_t nvars, std::size_t precision) {
  if (j.contains("precision")) precision = detail::size_field(j, "precision");
  require(precision >= 1, "precision must be positive");
  std::vector<ExprPtr> trees;
  std::size_t yvars = 0;
  for (const auto& e : detail::field(j, "equations")) {
    trees.push_back(parse(detail::string_field(e)));
    yvars = std::max(yvars, max_yvariable(*trees.back()));
  }
  if (j.contains("yvars")) {
    std::size_t declared = detail::size_field(j, "yvars");
    if (declared < yvars) throw ParseError("equations use more y variables than declared");
    yvars = declared;
  }
  PolySystem system{yvars, {}};
  for (const auto& t : trees) system.equations.push_back(eval_system_poly(*t, yvars, nvars, precision));
  return system;
}

inline Json to_json(const PerturbedFamily& f) {
  Json slots = Json::array();
  for (std::size_t k = 0; k < f.slots.size(); ++k) {
    Json exps = Json::array();
    for (auto e : f.slots[k].exponents) exps.push_back(e);
    slots.push_back(Json{{"slot", "x_" + std::to_string(k + 1)},
                         {"equation", f.slots[k].equation + 1},
                         {"y", exps},
                         {"value", to_json(f.alpha0[k])}});
  }
  return Json{{"family", f.to_string()}, {"yvars", f.yvars}, {"slots", slots}};
}

inline Json to_json(const SuiteReport& r) {
  const SuiteConfig& c = r.config;
  Json out{{"suite", r.suite},
           {"r", c.r},
           {"m", c.m},
           {"n", c.n},
           {"precision", c.working_precision()},
           {"i", c.i ? Json(*c.i) : Json(nullptr)},
           {"seed", c.seed},
           {"trials", c.trials},
           {"passed", r.passed},
           {"failed", c.trials - r.passed}};
  if (r.failed_trial)
    out["first_failure"] = Json{{"trial", *r.failed_trial}, {"detail", r.failure}};
  return out;
}

}  // namespace milnorkit
