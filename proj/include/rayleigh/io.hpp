#pragma once

#include <fstream>
#include <initializer_list>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "rayleigh/configuration.hpp"
#include "rayleigh/continuous.hpp"
#include "rayleigh/dependence.hpp"
#include "rayleigh/dpp.hpp"
#include "rayleigh/error.hpp"
#include "rayleigh/exclusion.hpp"
#include "rayleigh/graph.hpp"
#include "rayleigh/harness.hpp"
#include "rayleigh/measures.hpp"

namespace rayleigh {

using Json = nlohmann::json;

/// Rejects keys outside `allowed` and a non-object value.
inline void require_keys(const Json& obj, std::initializer_list<std::string_view> allowed, const std::string& context) {
  if (!obj.is_object()) throw ParseError(context + " must be a JSON object");
  for (const auto& [key, _] : obj.items()) {
    bool known = false;
    for (auto a : allowed) known = known || key == a;
    if (!known) throw ParseError("unknown key '" + key + "' in " + context);
  }
}

inline const Json& require_field(const Json& obj, const char* key, const std::string& context) {
  auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(context + " is missing '" + key + "'");
  return *it;
}

template <class T>
T json_get(const Json& value, const std::string& what) {
  try {
    return value.get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ParseError(what + " has the wrong type");
  }
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw ParseError("cannot open " + path);
  std::stringstream buffer;
  buffer << file.rdbuf();
  return buffer.str();
}

inline Json parse_json_text(const std::string& text, const std::string& context) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(context + ": " + e.what());
  }
}

inline Json load_json_file(const std::string& path) { return parse_json_text(read_text_file(path), path); }

/// Measure format {"n": int, "atoms": {"bitstring": weight}}; character i of
/// a bitstring is coordinate i.
inline BooleanMeasure measure_from_json(const Json& j) {
  require_keys(j, {"n", "atoms"}, "measure");
  const int n = json_get<int>(require_field(j, "n", "measure"), "measure n");
  const Json& atoms = require_field(j, "atoms", "measure");
  if (!atoms.is_object()) throw ParseError("measure atoms must be an object");
  if (n < 1 || n > kDefaultMaxCoordinates) throw CapExceeded("measure dimension", n, kDefaultMaxCoordinates);
  std::vector<double> masses(std::size_t{1} << n, 0.0);
  for (const auto& [bits, weight] : atoms.items()) {
    const auto x = Configuration::from_string(bits);
    if (x.size() != n) throw ParseError("atom '" + bits + "' does not have n characters");
    masses[static_cast<std::size_t>(x.mask())] += json_get<double>(weight, "atom weight");
  }
  return BooleanMeasure(n, std::move(masses));
}

inline Json measure_to_json(const BooleanMeasure& m) {
  Json atoms = Json::object();
  m.for_each_atom([&](BooleanMeasure::Mask x, double p) { atoms[m.configuration(x).to_string()] = p; });
  return Json{{"n", m.n()}, {"atoms", atoms}};
}

/// Kernel format {"n": int, "re": [[...]], "im": [[...]]}; "im" may be omitted.
inline HermitianKernel kernel_from_json(const Json& j) {
  require_keys(j, {"n", "re", "im"}, "kernel");
  const int n = json_get<int>(require_field(j, "n", "kernel"), "kernel n");
  const auto re = json_get<std::vector<std::vector<double>>>(require_field(j, "re", "kernel"), "kernel re");
  std::vector<std::vector<double>> im;
  if (j.contains("im")) im = json_get<std::vector<std::vector<double>>>(j["im"], "kernel im");
  if (static_cast<int>(re.size()) != n) throw DimensionMismatch("kernel re part must have n rows");
  return HermitianKernel::from_parts(re, im);
}

inline Json kernel_to_json(const HermitianKernel& k) {
  const int n = k.n();
  Json re = Json::array(), im = Json::array();
  for (int i = 0; i < n; ++i) {
    Json rr = Json::array(), ir = Json::array();
    for (int c = 0; c < n; ++c) {
      rr.push_back(k.matrix()(i, c).real());
      ir.push_back(k.matrix()(i, c).imag());
    }
    re.push_back(rr);
    im.push_back(ir);
  }
  return Json{{"n", n}, {"re", re}, {"im", im}};
}

/// Exclusion format mirrors ExclusionSpec; "initial" is a bitstring.
inline ExclusionSpec exclusion_from_json(const Json& j) {
  require_keys(j, {"n", "swap_rates", "birth_rates", "death_rates", "initial", "horizon"}, "exclusion spec");
  ExclusionSpec s;
  s.n = json_get<int>(require_field(j, "n", "exclusion spec"), "exclusion n");
  s.swap_rates = json_get<std::vector<std::vector<double>>>(require_field(j, "swap_rates", "exclusion spec"), "swap_rates");
  if (j.contains("birth_rates")) s.birth_rates = json_get<std::vector<double>>(j["birth_rates"], "birth_rates");
  if (j.contains("death_rates")) s.death_rates = json_get<std::vector<double>>(j["death_rates"], "death_rates");
  s.initial = Configuration::from_string(json_get<std::string>(require_field(j, "initial", "exclusion spec"), "initial"));
  s.horizon = json_get<double>(require_field(j, "horizon", "exclusion spec"), "horizon");
  s.validate();
  return s;
}

inline Json exclusion_to_json(const ExclusionSpec& s) {
  Json j{{"n", s.n}, {"swap_rates", s.swap_rates}, {"initial", s.initial.to_string()}, {"horizon", s.horizon}};
  if (!s.birth_rates.empty()) j["birth_rates"] = s.birth_rates;
  if (!s.death_rates.empty()) j["death_rates"] = s.death_rates;
  return j;
}

/// Graph object {"vertices": n, "edges": [[u, v, weight?], ...]} or
/// {"family": "path"|"cycle"|"complete"|"star", "vertices": n}.
inline Graph graph_from_json(const Json& j) {
  require_keys(j, {"vertices", "edges", "family"}, "graph");
  const int n = json_get<int>(require_field(j, "vertices", "graph"), "graph vertices");
  if (j.contains("family")) {
    if (j.contains("edges")) throw ParseError("graph takes either 'family' or 'edges', not both");
    const auto family = json_get<std::string>(j["family"], "graph family");
    if (family == "path") return Graph::path(n);
    if (family == "cycle") return Graph::cycle(n);
    if (family == "complete") return Graph::complete(n);
    if (family == "star") return Graph::star(n);
    throw ParseError("unknown graph family '" + family + "'");
  }
  std::vector<Edge> edges;
  for (const auto& e : require_field(j, "edges", "graph")) {
    if (!e.is_array() || e.size() < 2 || e.size() > 3) throw ParseError("graph edges are [u, v] or [u, v, weight]");
    edges.push_back({json_get<int>(e[0], "edge endpoint"), json_get<int>(e[1], "edge endpoint"),
                     e.size() == 3 ? json_get<double>(e[2], "edge weight") : 1.0});
  }
  return Graph(n, std::move(edges));
}

inline Json points_to_json(const PointConfiguration& x) {
  Json out = Json::array();
  for (const auto& z : x.points) out.push_back(Json::array({z.real(), z.imag()}));
  return out;
}

inline PointConfiguration points_from_json(const Json& j) {
  PointConfiguration x;
  if (!j.is_array()) throw ParseError("point configuration must be an array of [re, im] pairs");
  for (const auto& p : j) {
    if (!p.is_array() || p.size() != 2) throw ParseError("each point must be [re, im]");
    x.points.emplace_back(json_get<double>(p[0], "point"), json_get<double>(p[1], "point"));
  }
  return x;
}

inline std::string_view relation_name(CouplingRelation r) {
  return r == CouplingRelation::covering ? "covering" : "domination";
}

inline Json coupling_to_json(const Coupling& c) {
  Json atoms = Json::array();
  for (const auto& a : c.joint)
    atoms.push_back(Json{{"upper", a.upper.to_string()}, {"lower", a.lower.to_string()}, {"mass", a.mass}});
  return Json{{"relation", relation_name(c.relation)}, {"left_n", c.left_n}, {"right_n", c.right_n}, {"atoms", atoms}};
}

inline Json violation_to_json(const Violation& v) {
  Json configs = Json::array();
  for (const auto& x : v.configurations) configs.push_back(x.to_string());
  return Json{{"kind", v.kind},     {"description", v.description}, {"coordinates", v.coordinates},
              {"configurations", configs}, {"point", v.point},       {"values", v.values}};
}

/// {holds, witness_type, witness, detail}; witness_type is "coupling",
/// "couplings", "violation" or "none".
inline Json verdict_to_json(const CheckVerdict& v) {
  Json j{{"holds", v.holds}, {"detail", v.detail}};
  if (v.violation) {
    j["witness_type"] = "violation";
    j["witness"] = violation_to_json(*v.violation);
  } else if (v.couplings.size() == 1) {
    j["witness_type"] = "coupling";
    j["witness"] = coupling_to_json(v.couplings.front());
  } else if (!v.couplings.empty()) {
    j["witness_type"] = "couplings";
    Json list = Json::array();
    for (const auto& c : v.couplings) list.push_back(coupling_to_json(c));
    j["witness"] = list;
  } else {
    j["witness_type"] = "none";
    j["witness"] = nullptr;
  }
  return j;
}

inline Json bound_spec_to_json(const BoundSpec& b) {
  Json j{{"family", bound_family_name(b.family)}};
  if (b.k) j["k"] = *b.k;
  if (b.n) j["n"] = *b.n;
  if (b.mu) j["mu"] = *b.mu;
  if (b.vertices) j["vertices"] = *b.vertices;
  return j;
}

inline Json report_to_json(const TailReport& r, const Comparison& c) {
  Json bounds = Json::array();
  for (const auto& b : c.bounds) bounds.push_back(bound_spec_to_json(b));
  Json rows = Json::array();
  for (std::size_t i = 0; i < r.grid.size(); ++i) {
    Json values = Json::object();
    for (std::size_t b = 0; b < c.bounds.size(); ++b) values[std::string(bound_family_name(c.bounds[b].family))] = c.values[i][b];
    rows.push_back(Json{{"a", r.grid[i]},
                        {"empirical", r.tail[i]},
                        {"ci_lo", r.tail_lo[i]},
                        {"ci_hi", r.tail_hi[i]},
                        {"empirical_two_sided", r.two_sided[i]},
                        {"ci_lo_two_sided", r.two_sided_lo[i]},
                        {"ci_hi_two_sided", r.two_sided_hi[i]},
                        {"bounds", values},
                        {"pass", static_cast<bool>(c.pass[i])}});
  }
  return Json{{"functional", r.functional},
              {"exact", r.exact},
              {"mean", r.mean},
              {"mean_standard_error", r.mean_standard_error},
              {"rescaling", r.rescaling},
              {"trials", r.trials},
              {"centering_trials", r.centering_trials},
              {"tail_trials", r.tail_trials},
              {"seed", r.seed},
              {"confidence", r.confidence},
              {"grid", r.grid},
              {"bounds", bounds},
              {"rows", rows},
              {"pass", c.overall}};
}

}  // namespace rayleigh
