#pragma once

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "ifpn/classify.hpp"
#include "ifpn/theorems.hpp"

namespace ifpn {

// Scenario file, version 1:
//
//   {
//     "version": 1,
//     "spaces":    [{"name", "pseudo_norm", "dimension", "mutation"?: {"kind", "amount"?}}],
//     "operators": [{"name", "kind", "parameters"?: {"dimension"?, "factor"?, "coordinate"?}}],
//     "classifier"?: {"eps_grid", "alpha_grid", "delta_candidates", "tol", "seq_tail",
//                     "bracket_cap", "bisect_tol"},
//     "scenarios": [{"name", "domain_space", "codomain_space", "operator",
//                    "point_of_interest"?, "far_field"?, "sequence_suite"?}]
//   }
//
// Mutation kinds: mu_offset, nu_scale, branch_swap. Operator kinds: identity,
// zero, scaling, coordinate_projection, cubic_ratio. Sequence suites: generic,
// harmonic. Unknown fields are rejected.

struct MutationDecl {
  std::string kind;
  double amount = 0.0;
};

struct SpaceDecl {
  std::string name;
  std::string pseudo_norm;
  std::size_t dimension = 1;
  std::optional<MutationDecl> mutation;
};

struct OperatorDecl {
  std::string name;
  std::string kind;
  std::optional<std::size_t> dimension;
  std::optional<double> factor;
  std::optional<std::size_t> coordinate;
};

struct ClassifierOverrides {
  std::optional<std::vector<double>> eps_grid, alpha_grid, delta_candidates;
  std::optional<double> tol, bracket_cap, bisect_tol;
  std::optional<std::uint64_t> seq_tail;
};

struct ScenarioDecl {
  std::string name;
  std::string domain_space;
  std::string codomain_space;
  std::string op;
  std::optional<std::vector<double>> point_of_interest;
  bool far_field = false;
  std::string sequence_suite = "generic";
};

struct ScenarioFile {
  int version = 1;
  std::vector<SpaceDecl> spaces;
  std::vector<OperatorDecl> operators;
  ClassifierOverrides classifier;
  std::vector<ScenarioDecl> scenarios;

  const SpaceDecl& space(const std::string& name) const {
    for (const auto& s : spaces)
      if (s.name == name) return s;
    throw ConfigError("unknown space '" + name + "'");
  }
  const OperatorDecl& op(const std::string& name) const {
    for (const auto& o : operators)
      if (o.name == name) return o;
    throw ConfigError("unknown operator '" + name + "'");
  }
  const ScenarioDecl& scenario(const std::string& name) const {
    for (const auto& s : scenarios)
      if (s.name == name) return s;
    throw ConfigError("unknown scenario '" + name + "'");
  }
};

namespace detail {

using json = nlohmann::json;

inline void only_keys(const json& j, std::initializer_list<const char*> allowed, const std::string& where) {
  if (!j.is_object()) throw ConfigError(where + ": expected an object");
  for (const auto& [k, v] : j.items()) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || k == a;
    if (!ok) throw ConfigError(where + ": unknown field '" + k + "'");
  }
}

inline const json& required(const json& j, const char* key, const std::string& where) {
  if (!j.contains(key)) throw ConfigError(where + ": missing field '" + key + "'");
  return j.at(key);
}

inline std::string get_string(const json& j, const char* key, const std::string& where) {
  const json& v = required(j, key, where);
  if (!v.is_string()) throw ConfigError(where + "." + key + ": expected a string");
  return v.get<std::string>();
}

inline double get_number(const json& v, const std::string& where) {
  if (!v.is_number()) throw ConfigError(where + ": expected a number");
  return v.get<double>();
}

inline std::size_t get_count(const json& v, const std::string& where) {
  if (!v.is_number_unsigned() || v.get<std::uint64_t>() == 0) throw ConfigError(where + ": expected a positive integer");
  return v.get<std::size_t>();
}

inline std::vector<double> get_numbers(const json& v, const std::string& where) {
  if (!v.is_array() || v.empty()) throw ConfigError(where + ": expected a non-empty array of numbers");
  std::vector<double> out;
  for (const auto& e : v) out.push_back(get_number(e, where));
  return out;
}

inline std::vector<json> get_list(const json& j, const char* key) {
  const json& v = required(j, key, "config");
  if (!v.is_array()) throw ConfigError(std::string("config.") + key + ": expected an array");
  return {v.begin(), v.end()};
}

}  // namespace detail

inline ScenarioFile parse_scenario_file(const std::string& text) {
  using detail::json;
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("malformed JSON: ") + e.what());
  }
  detail::only_keys(j, {"version", "spaces", "operators", "classifier", "scenarios"}, "config");
  ScenarioFile f;
  const json& ver = detail::required(j, "version", "config");
  if (!ver.is_number_integer() || ver.get<int>() != 1) throw ConfigError("config.version: only version 1 is supported");

  for (const json& s : detail::get_list(j, "spaces")) {
    detail::only_keys(s, {"name", "pseudo_norm", "dimension", "mutation"}, "space");
    SpaceDecl d;
    d.name = detail::get_string(s, "name", "space");
    d.pseudo_norm = detail::get_string(s, "pseudo_norm", "space " + d.name);
    d.dimension = detail::get_count(detail::required(s, "dimension", "space " + d.name), "space " + d.name + ".dimension");
    if (s.contains("mutation")) {
      const json& m = s.at("mutation");
      detail::only_keys(m, {"kind", "amount"}, "space " + d.name + ".mutation");
      MutationDecl md{detail::get_string(m, "kind", "mutation"), 0.0};
      if (md.kind != "mu_offset" && md.kind != "nu_scale" && md.kind != "branch_swap")
        throw ConfigError("space " + d.name + ": unknown mutation kind '" + md.kind + "'");
      if (md.kind != "branch_swap") md.amount = detail::get_number(detail::required(m, "amount", "mutation"), "mutation.amount");
      d.mutation = md;
    }
    f.spaces.push_back(std::move(d));
  }

  for (const json& o : detail::get_list(j, "operators")) {
    detail::only_keys(o, {"name", "kind", "parameters"}, "operator");
    OperatorDecl d;
    d.name = detail::get_string(o, "name", "operator");
    d.kind = detail::get_string(o, "kind", "operator " + d.name);
    if (o.contains("parameters")) {
      const json& p = o.at("parameters");
      const std::string where = "operator " + d.name + ".parameters";
      detail::only_keys(p, {"dimension", "factor", "coordinate"}, where);
      if (p.contains("dimension")) d.dimension = detail::get_count(p.at("dimension"), where + ".dimension");
      if (p.contains("factor")) d.factor = detail::get_number(p.at("factor"), where + ".factor");
      if (p.contains("coordinate")) d.coordinate = detail::get_count(p.at("coordinate"), where + ".coordinate");
    }
    f.operators.push_back(std::move(d));
  }

  if (j.contains("classifier")) {
    const json& c = j.at("classifier");
    detail::only_keys(c, {"eps_grid", "alpha_grid", "delta_candidates", "tol", "seq_tail", "bracket_cap", "bisect_tol"},
                      "classifier");
    auto& o = f.classifier;
    if (c.contains("eps_grid")) o.eps_grid = detail::get_numbers(c.at("eps_grid"), "classifier.eps_grid");
    if (c.contains("alpha_grid")) o.alpha_grid = detail::get_numbers(c.at("alpha_grid"), "classifier.alpha_grid");
    if (c.contains("delta_candidates"))
      o.delta_candidates = detail::get_numbers(c.at("delta_candidates"), "classifier.delta_candidates");
    if (c.contains("tol")) o.tol = detail::get_number(c.at("tol"), "classifier.tol");
    if (c.contains("bracket_cap")) o.bracket_cap = detail::get_number(c.at("bracket_cap"), "classifier.bracket_cap");
    if (c.contains("bisect_tol")) o.bisect_tol = detail::get_number(c.at("bisect_tol"), "classifier.bisect_tol");
    if (c.contains("seq_tail")) o.seq_tail = detail::get_count(c.at("seq_tail"), "classifier.seq_tail");
  }

  for (const json& s : detail::get_list(j, "scenarios")) {
    detail::only_keys(s, {"name", "domain_space", "codomain_space", "operator", "point_of_interest", "far_field",
                          "sequence_suite"},
                      "scenario");
    ScenarioDecl d;
    d.name = detail::get_string(s, "name", "scenario");
    const std::string where = "scenario " + d.name;
    d.domain_space = detail::get_string(s, "domain_space", where);
    d.codomain_space = detail::get_string(s, "codomain_space", where);
    d.op = detail::get_string(s, "operator", where);
    if (s.contains("point_of_interest")) d.point_of_interest = detail::get_numbers(s.at("point_of_interest"), where);
    if (s.contains("far_field")) {
      if (!s.at("far_field").is_boolean()) throw ConfigError(where + ".far_field: expected a boolean");
      d.far_field = s.at("far_field").get<bool>();
    }
    if (s.contains("sequence_suite")) {
      d.sequence_suite = detail::get_string(s, "sequence_suite", where);
      if (d.sequence_suite != "generic" && d.sequence_suite != "harmonic")
        throw ConfigError(where + ": unknown sequence suite '" + d.sequence_suite + "'");
    }
    f.scenarios.push_back(std::move(d));
  }

  // Every reference must resolve.
  for (const auto& s : f.scenarios) {
    f.space(s.domain_space);
    f.space(s.codomain_space);
    f.op(s.op);
  }
  return f;
}

inline ScenarioFile load_scenario_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_scenario_file(ss.str());
}

inline IfpnPair build_space(const SpaceDecl& d) {
  const PseudoNorm p = builtin_pseudo_norm(d.pseudo_norm, d.dimension);
  if (!d.mutation) return standard_ifpn(p);
  const MutationDecl& m = *d.mutation;
  if (m.kind == "mu_offset") return mu_offset(standard_ifpn(p), m.amount);
  if (m.kind == "nu_scale") return nu_scaled(standard_ifpn(p), m.amount);
  return branch_swapped_ifpn(p);
}

inline OperatorSpec build_operator(const OperatorDecl& d) {
  auto need_dim = [&] {
    if (!d.dimension) throw ConfigError("operator " + d.name + ": parameters.dimension is required");
    return std::to_string(*d.dimension);
  };
  std::string expr;
  if (d.kind == "identity" || d.kind == "zero") {
    expr = d.kind + "(" + need_dim() + ")";
  } else if (d.kind == "scaling") {
    if (!d.factor) throw ConfigError("operator " + d.name + ": parameters.factor is required");
    expr = "scaling(" + need_dim() + "," + detail::format_number(*d.factor) + ")";
  } else if (d.kind == "coordinate_projection") {
    if (!d.coordinate) throw ConfigError("operator " + d.name + ": parameters.coordinate is required");
    expr = "coordinate_projection(" + need_dim() + "," + std::to_string(*d.coordinate) + ")";
  } else if (d.kind == "cubic_ratio") {
    if (d.dimension && *d.dimension != 1) throw ConfigError("operator " + d.name + ": cubic_ratio is one-dimensional");
    expr = "cubic_ratio";
  } else {
    throw ConfigError("operator " + d.name + ": unknown kind '" + d.kind + "'");
  }
  return builtin_operator(expr);
}

inline void apply_overrides(ClassifierConfig& cfg, const ClassifierOverrides& o) {
  if (o.eps_grid) cfg.eps_grid = *o.eps_grid;
  if (o.alpha_grid) cfg.alpha_grid = *o.alpha_grid;
  if (o.delta_candidates) cfg.delta_candidates = *o.delta_candidates;
  if (o.tol) cfg.tol = *o.tol;
  if (o.bracket_cap) cfg.bisection.bracket_cap = *o.bracket_cap;
  if (o.bisect_tol) cfg.bisection.bisect_tol = *o.bisect_tol;
  if (o.seq_tail) cfg.seq_tail = *o.seq_tail;
}

inline Scenario build_scenario(const ScenarioFile& f, const ScenarioDecl& d, const GridOptions& opts) {
  const SpaceDecl& ds = f.space(d.domain_space);
  const SpaceDecl& cs = f.space(d.codomain_space);
  const OperatorSpec op = build_operator(f.op(d.op));
  const Point x0 = d.point_of_interest ? Point(*d.point_of_interest) : Point::zeros(op.domain_dim);
  if (x0.dim() != op.domain_dim) throw ConfigError("scenario " + d.name + ": point_of_interest has wrong dimension");
  ClassifierConfig cfg = default_classifier_config(op, x0, opts, d.far_field);
  if (d.sequence_suite == "harmonic") {
    cfg.seq_suite = harmonic_sequence_suite(x0);
    cfg.seq_tail = 65536;
  }
  apply_overrides(cfg, f.classifier);
  cfg.validate();
  return {d.name, ds.name, cs.name, build_space(ds), build_space(cs), op, std::move(cfg)};
}

inline std::vector<Scenario> build_scenarios(const ScenarioFile& f, const GridOptions& opts) {
  std::vector<Scenario> out;
  for (const auto& d : f.scenarios) out.push_back(build_scenario(f, d, opts));
  return out;
}

}  // namespace ifpn
