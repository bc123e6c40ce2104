#ifndef BSIDEAL_IO_HPP
#define BSIDEAL_IO_HPP

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cctype>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "bsideal/ideal_geometry.hpp"
#include "bsideal/parser.hpp"
#include "bsideal/snc.hpp"
#include "bsideal/solver.hpp"
#include "bsideal/torus.hpp"
#include "bsideal/weyl.hpp"

// JSON conversions and the problem description read by the CLI.

namespace bsideal {

using Json = nlohmann::ordered_json;

inline const std::vector<std::string>& all_tasks() {
  static const std::vector<std::string> tasks{"bs-find", "bs-verify", "decompose", "snc", "zeta", "exp-compare"};
  return tasks;
}

struct TranslationRequest {
  std::size_t i = 0;  // zero-based
  std::vector<int> ls;
};

struct ProblemSpec {
  std::string id;
  std::vector<std::string> variables;
  std::vector<Polynomial> F;
  std::vector<int> a;
  SolveBounds bounds;
  std::optional<ResolutionGraph> graph;
  bool graph_ambient = false;
  std::vector<std::string> tasks;  // canonical order
  std::optional<std::pair<ParamPoly, WeylOperator>> certificate;
  std::optional<std::vector<long>> sabbah_m;
  std::optional<TranslationRequest> translation;

  std::size_t n() const { return variables.size(); }
  std::size_t r() const { return F.size(); }
  WeylNames names() const { return WeylNames{variables, parameter_names(r())}; }
  bool has_task(const std::string& t) const { return std::find(tasks.begin(), tasks.end(), t) != tasks.end(); }
};

// ---- output -------------------------------------------------------------

inline Json vector_json(std::span<const long> v) { return Json(std::vector<long>(v.begin(), v.end())); }
inline Json vector_json(std::span<const int> v) { return Json(std::vector<int>(v.begin(), v.end())); }

inline Json hyperplane_json(const Hyperplane& h) {
  Json j;
  j["L"] = vector_json(h.slope());
  j["b"] = rational_to_string(h.intercept());
  j["equation"] = equation_string(h);
  return j;
}

inline Json coset_json(const TorusCoset& c) {
  Json j;
  Json binding = Json::array();
  for (const auto& b : c.bindings()) binding.push_back(Json{{"v", vector_json(b.v)}, {"theta", rational_to_string(b.theta)}});
  j["binding"] = std::move(binding);
  j["text"] = to_string(c);
  return j;
}

inline Json cosets_json(std::span<const TorusCoset> cs) {
  Json out = Json::array();
  for (const auto& c : cs) out.push_back(coset_json(c));
  return out;
}

inline Json certificate_json(const BSCertificate& c, const WeylNames& names) {
  Json j;
  j["b"] = to_string(c.b, names.s);
  j["P"] = to_string(c.P, names);
  Json F = Json::array();
  for (const auto& f : c.F->polys()) F.push_back(to_string(f, names.x));
  j["F"] = std::move(F);
  j["a"] = vector_json(c.a);
  return j;
}

inline Json graph_json(const ResolutionGraph& g) {
  Json comps = Json::array();
  for (const auto& c : g.components()) {
    Json maps = Json::array();
    for (std::size_t i : c.maps_into) maps.push_back(i + 1);
    comps.push_back(Json{{"L", vector_json(c.L)}, {"chi", c.chi}, {"maps_into", std::move(maps)}});
  }
  return Json{{"r", g.r()}, {"components", std::move(comps)}};
}

inline Json zeta_json(const MonZeta& z) {
  Json factors = Json::array();
  for (const auto& [v, e] : z.exponents()) factors.push_back(Json{{"v", vector_json(v)}, {"e", e}});
  return Json{{"text", to_string(z)}, {"factors", std::move(factors)}};
}

// ---- input --------------------------------------------------------------

namespace detail {

[[noreturn]] inline void bad_spec(const std::string& msg) { throw Error(errc::parse_error, msg); }

inline const Json& require(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad_spec(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

inline long as_long(const Json& j, const std::string& what) {
  if (!j.is_number_integer()) bad_spec(what + " must be an integer");
  return j.get<long>();
}

inline std::vector<long> long_array(const Json& j, const std::string& what) {
  if (!j.is_array()) bad_spec(what + " must be an array of integers");
  std::vector<long> out;
  for (const auto& x : j) out.push_back(as_long(x, what));
  return out;
}

inline std::string as_string(const Json& j, const std::string& what) {
  if (!j.is_string()) bad_spec(what + " must be a string");
  return j.get<std::string>();
}

inline Rational parse_rational(const std::string& text) {
  Rational q;
  if (text.empty() || q.set_str(text, 10) != 0) bad_spec("bad rational \"" + text + "\"");
  if (q.get_den() == 0) bad_spec("zero denominator in \"" + text + "\"");
  q.canonicalize();
  return q;
}

inline bool is_identifier(const std::string& s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  return std::all_of(s.begin(), s.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

}  // namespace detail

/// { "r": int, "components": [ { "L": [ints], "chi": int } ] }; an optional
/// "ambient": true marks a graph that is F itself (F already SNC).
inline std::pair<ResolutionGraph, bool> graph_from_json(const Json& j) {
  using namespace detail;
  const long r = as_long(require(j, "r"), "graph r");
  if (r < 1) bad_spec("graph r must be >= 1");
  const Json& comps = require(j, "components");
  if (!comps.is_array() || comps.empty()) bad_spec("graph components must be a non-empty array");
  std::vector<ResolutionComponent> out;
  for (const auto& c : comps) {
    ResolutionComponent rc{long_array(require(c, "L"), "component L"), as_long(require(c, "chi"), "component chi"), {}};
    if (c.contains("maps_into")) {
      for (long i : long_array(c.at("maps_into"), "maps_into")) {
        if (i < 1 || i > r) bad_spec("maps_into index out of range");
        rc.maps_into.insert(static_cast<std::size_t>(i - 1));
      }
    }
    out.push_back(std::move(rc));
  }
  bool ambient = false;
  if (j.contains("ambient")) {
    if (!j.at("ambient").is_boolean()) bad_spec("graph ambient must be a boolean");
    ambient = j.at("ambient").get<bool>();
  }
  try {
    return {ResolutionGraph(static_cast<std::size_t>(r), std::move(out)), ambient};
  } catch (const Error& e) {
    bad_spec(std::string("invalid resolution graph: ") + e.what());
  }
}

/// { "binding": [ { "v": [ints], "theta": "p/q" } ] }.
inline TorusCoset coset_from_json(const Json& j, std::size_t r) {
  using namespace detail;
  const Json& binding = require(j, "binding");
  if (!binding.is_array()) bad_spec("binding must be an array");
  std::vector<Binding> rows;
  for (const auto& b : binding) {
    auto v = long_array(require(b, "v"), "binding v");
    if (v.size() != r) bad_spec("binding v has the wrong length");
    rows.push_back({std::move(v), parse_rational(as_string(require(b, "theta"), "theta"))});
  }
  return TorusCoset(r, std::move(rows));
}

inline ProblemSpec spec_from_json(const Json& j, const std::string& fallback_id = "") {
  using namespace detail;
  if (!j.is_object()) bad_spec("problem description must be a JSON object");
  ProblemSpec spec;
  spec.id = j.contains("id") ? as_string(j.at("id"), "id") : fallback_id;
  if (spec.id.empty()) bad_spec("missing id");

  const Json& vars = require(j, "variables");
  if (!vars.is_array() || vars.empty()) bad_spec("variables must be a non-empty array");
  for (const auto& v : vars) spec.variables.push_back(as_string(v, "variable"));
  std::set<std::string> seen;
  for (const auto& v : spec.variables) {
    if (!is_identifier(v)) bad_spec("bad variable name \"" + v + "\"");
    if (!seen.insert(v).second) bad_spec("duplicate variable \"" + v + "\"");
  }

  const Json& fj = require(j, "F");
  if (!fj.is_array() || fj.empty()) bad_spec("F must be a non-empty array");
  for (const auto& f : fj) {
    Polynomial p = parse_polynomial(as_string(f, "F entry"), spec.variables);
    if (p.is_zero()) bad_spec("F contains the zero polynomial");
    spec.F.push_back(std::move(p));
  }
  const auto snames = parameter_names(spec.r());
  for (const auto& v : spec.variables) {
    if (std::find(snames.begin(), snames.end(), v) != snames.end())
      bad_spec("variable \"" + v + "\" collides with a parameter name");
    if (seen.count("d" + v)) bad_spec("variable \"d" + v + "\" collides with a derivative name");
  }

  for (long x : long_array(require(j, "a"), "a")) {
    if (x < 0) bad_spec("a must be non-negative");
    spec.a.push_back(static_cast<int>(x));
  }
  if (spec.a.size() != spec.r()) bad_spec("a must have one entry per polynomial in F");

  if (j.contains("bounds")) {
    const Json& b = j.at("bounds");
    if (!b.is_object()) bad_spec("bounds must be an object");
    auto field = [&](const char* key, int& slot) {
      if (!b.contains(key)) return;
      const long v = as_long(b.at(key), key);
      if (v < 0 || v > 64) bad_spec(std::string(key) + " out of range");
      slot = static_cast<int>(v);
    };
    field("max_operator_order", spec.bounds.max_operator_order);
    field("max_x_degree", spec.bounds.max_x_degree);
    field("max_s_degree", spec.bounds.max_s_degree);
    field("max_b_degree", spec.bounds.max_b_degree);
  }

  if (j.contains("resolution_graph")) {
    auto [g, ambient] = graph_from_json(j.at("resolution_graph"));
    if (g.r() != spec.r()) bad_spec("resolution graph r differs from the number of polynomials");
    spec.graph = std::move(g);
    spec.graph_ambient = ambient;
  }

  std::set<std::string> tasks;
  if (!j.contains("tasks") || (j.at("tasks").is_string() && j.at("tasks").get<std::string>() == "all")) {
    tasks.insert(all_tasks().begin(), all_tasks().end());
  } else {
    const Json& t = j.at("tasks");
    if (!t.is_array()) bad_spec("tasks must be \"all\" or an array");
    for (const auto& x : t) {
      auto name = as_string(x, "task");
      if (std::find(all_tasks().begin(), all_tasks().end(), name) == all_tasks().end())
        bad_spec("unknown task \"" + name + "\"");
      tasks.insert(name);
    }
  }
  for (const auto& t : all_tasks())
    if (tasks.count(t)) spec.tasks.push_back(t);
  if ((spec.has_task("snc") || spec.has_task("zeta")) && !spec.graph)
    bad_spec("tasks snc and zeta need a resolution_graph");

  if (j.contains("certificate")) {
    const Json& c = j.at("certificate");
    spec.certificate.emplace(parse_polynomial(as_string(require(c, "b"), "certificate b"), snames),
                             parse_operator(as_string(require(c, "P"), "certificate P"), spec.names()));
  }

  if (j.contains("sabbah_m")) {
    auto m = long_array(j.at("sabbah_m"), "sabbah_m");
    if (m.size() != spec.r()) bad_spec("sabbah_m must have one entry per polynomial");
    for (long x : m)
      if (x <= 0) bad_spec("sabbah_m entries must be positive");
    spec.sabbah_m = std::move(m);
  }

  if (j.contains("translation")) {
    const Json& t = j.at("translation");
    const long i = as_long(require(t, "i"), "translation i");
    if (i < 1 || i > static_cast<long>(spec.r())) bad_spec("translation i out of range");
    TranslationRequest req{static_cast<std::size_t>(i - 1), {}};
    for (long l : long_array(require(t, "l"), "translation l")) {
      if (l < 1 || l > 8) bad_spec("translation l must lie in 1..8");
      req.ls.push_back(static_cast<int>(l));
    }
    spec.translation = std::move(req);
  }
  return spec;
}

inline Json parse_json_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::exception& e) {
    throw Error(errc::parse_error, e.what());
  }
}

}  // namespace bsideal

#endif  // BSIDEAL_IO_HPP
