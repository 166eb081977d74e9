#pragma once

#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "ifpn/alpha.hpp"
#include "ifpn/classify.hpp"
#include "ifpn/report.hpp"
#include "ifpn/scenario.hpp"
#include "ifpn/theorems.hpp"

namespace ifpn {

enum ExitCode : int { kExitOk = 0, kExitRefuted = 1, kExitError = 2 };

struct CliOptions {
  std::string config;
  std::string report = "text";
  std::uint64_t seed = 42;
  std::string resolution = "default";
  std::string out;

  std::string space;
  std::string point;
  std::vector<double> alphas;
  std::string scenario;
  std::vector<std::string> properties;
};

namespace detail {

inline Resolution parse_resolution(const std::string& s) {
  if (s == "coarse") return Resolution::Coarse;
  if (s == "fine") return Resolution::Fine;
  return Resolution::Default;
}

inline Point parse_point(const std::string& text) {
  std::vector<double> c;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      throw InvalidParameter("cannot parse point '" + text + "'");
    }
    if (item.find_first_not_of(" \t", used) != std::string::npos) throw InvalidParameter("cannot parse point '" + text + "'");
    c.push_back(v);
  }
  if (c.empty()) throw InvalidParameter("point is empty");
  return Point(std::move(c));
}

inline ReportJson resolution_json(const CliOptions& o, const GridOptions& g) {
  ReportJson j;
  j["level"] = o.resolution;
  j["seed"] = o.seed;
  j["ladder_steps"] = g.ladder_steps;
  j["t_min"] = g.t_min;
  j["t_max"] = g.t_max;
  j["random_points"] = g.random_points;
  j["random_radius"] = g.random_radius;
  j["delta_candidates"] = default_delta_candidates(g.resolution).size();
  const BisectionOptions b;
  j["bisect_tol"] = b.bisect_tol;
  j["bracket_cap"] = b.bracket_cap;
  return j;
}

inline ReportJson header(const std::string& command, const CliOptions& o, const GridOptions& g) {
  ReportJson j;
  j["command"] = command;
  j["config"] = o.config.empty() ? "builtin" : o.config;
  j["resolution"] = resolution_json(o, g);
  return j;
}

inline void finish(ReportJson& j, int code, const std::string& summary) {
  j["exit_status"] = {{"code", code}, {"summary", summary}};
}

inline std::string join(const std::vector<std::string>& v) {
  std::string s;
  for (const auto& e : v) s += (s.empty() ? "" : ", ") + e;
  return s;
}

inline int cmd_validate(const CliOptions& o, const GridOptions& g, ReportJson& rep) {
  if (o.config.empty()) throw ConfigError("validate needs --config");
  const ScenarioFile f = load_scenario_file(o.config);
  const std::vector<double> alphas = default_axiom_alpha_grid();
  ReportJson spaces = ReportJson::array();
  std::vector<std::string> failing;
  for (const SpaceDecl& d : f.spaces) {
    const PseudoNorm p = builtin_pseudo_norm(d.pseudo_norm, d.dimension);
    const SampleGrid grid = default_grid(d.dimension, g);
    ReportJson s;
    s["name"] = d.name;
    s["pseudo_norm"] = p.name;
    s["dimension"] = d.dimension;
    if (d.mutation) s["mutation"] = {{"kind", d.mutation->kind}, {"amount", d.mutation->amount}};
    const DecisionOutcome pn = check_pseudo_norm_axioms(p, grid);
    const DecisionOutcome ax = check_ifpn_axioms(build_space(d), grid, alphas);
    s["pseudo_norm_axioms"] = to_json(pn);
    s["ifpn_axioms"] = to_json(ax);
    if (!pn.is(Verdict::Holds) || !ax.is(Verdict::Holds)) failing.push_back(d.name);
    spaces.push_back(std::move(s));
  }
  rep["spaces"] = std::move(spaces);
  const int code = failing.empty() ? kExitOk : kExitRefuted;
  finish(rep, code, failing.empty() ? "all spaces satisfy the axioms" : "not verified: " + join(failing));
  return code;
}

inline int cmd_alpha(const CliOptions& o, const GridOptions& g, ReportJson& rep) {
  if (o.space.empty() || o.point.empty()) throw ConfigError("alpha needs --space and --point");
  const Point x = parse_point(o.point);
  IfpnPair f;
  if (o.config.empty()) {
    f = standard_ifpn(builtin_pseudo_norm(o.space, x.dim()));
  } else {
    const ScenarioFile file = load_scenario_file(o.config);
    f = build_space(file.space(o.space));
  }
  if (f.dimension != x.dim()) throw DimensionMismatch("point dimension does not match space " + o.space);
  const std::vector<double> alphas = o.alphas.empty() ? default_alpha_grid() : o.alphas;
  const BisectionOptions bis;
  rep["space"] = f.name;
  rep["point"] = to_json(x);
  ReportJson values = ReportJson::array();
  for (double a : alphas) {
    ReportJson v;
    v["alpha"] = a;
    try {
      v["ascending"] = alpha_norm(f, x, a, bis);
    } catch (const BracketExceeded& e) {
      v["ascending_error"] = e.what();
    }
    try {
      v["descending"] = alpha_conorm(f, x, a, bis);
    } catch (const BracketExceeded& e) {
      v["descending_error"] = e.what();
    }
    values.push_back(std::move(v));
  }
  rep["values"] = std::move(values);
  const DecisionOutcome rt = roundtrip_check(f, default_grid(f.dimension, g), 1e-6, bis);
  rep["roundtrip"] = to_json(rt);
  const int code = rt.is(Verdict::Refuted) ? kExitRefuted : kExitOk;
  finish(rep, code, "roundtrip " + std::string(to_string(rt.verdict)));
  return code;
}

inline int cmd_classify(const CliOptions& o, const GridOptions& g, ReportJson& rep) {
  if (o.scenario.empty()) throw ConfigError("classify needs --scenario");
  Scenario s;
  if (o.config.empty()) {
    bool found = false;
    for (Scenario& c : default_corpus(g))
      if (c.name == o.scenario) {
        s = std::move(c);
        found = true;
        break;
      }
    if (!found) throw ConfigError("unknown scenario '" + o.scenario + "' in the builtin corpus");
  } else {
    const ScenarioFile f = load_scenario_file(o.config);
    s = build_scenario(f, f.scenario(o.scenario), g);
  }
  std::vector<Property> props;
  for (const auto& p : o.properties) props.push_back(parse_property(p));
  if (props.empty()) props.assign(kAllProperties.begin(), kAllProperties.end());

  rep["scenario"] = s.name;
  rep["domain_space"] = s.domain_space;
  rep["codomain_space"] = s.codomain_space;
  rep["operator"] = s.op.name;
  rep["point_of_interest"] = to_json(s.cfg.x0());
  ReportJson reports = ReportJson::array();
  std::vector<std::string> refuted, errors;
  for (Property p : props) {
    try {
      const PropertyReport r = check_property(p, s.op, s.domain, s.codomain, s.cfg);
      if (r.outcome.is(Verdict::Refuted)) refuted.emplace_back(cli_name(p));
      reports.push_back(to_json(r));
    } catch (const DomainError& e) {
      errors.emplace_back(cli_name(p));
      reports.push_back({{"property", std::string(cli_name(p))}, {"error", e.what()}});
    }
  }
  rep["reports"] = std::move(reports);
  const int code = refuted.empty() ? kExitOk : kExitRefuted;
  std::string summary = refuted.empty() ? "no property refuted" : "refuted: " + join(refuted);
  if (!errors.empty()) summary += "; domain errors: " + join(errors);
  finish(rep, code, summary);
  return code;
}

inline int cmd_theorems(const CliOptions& o, const GridOptions& g, ReportJson& rep) {
  std::vector<Scenario> scenarios;
  if (o.config.empty()) {
    scenarios = default_corpus(g);
  } else {
    scenarios = build_scenarios(load_scenario_file(o.config), g);
  }
  const auto edges = default_edges();
  const std::vector<LatticeReport> lattice = run_lattice(scenarios, g, edges);
  const CounterexampleReports ce = reproduce_counterexamples(g);

  ReportJson ej = ReportJson::array();
  for (const auto& e : edges) ej.push_back(to_json(e));
  rep["edges"] = std::move(ej);
  ReportJson sj = ReportJson::array();
  for (const auto& r : lattice) sj.push_back(to_json(r));
  rep["scenarios"] = std::move(sj);
  rep["counterexamples"] = {{"weak_vs_strong", to_json(ce.weak_vs_strong)},
                            {"sequential_vs_strong", to_json(ce.sequential_vs_strong)}};

  ReportJson forward = ReportJson::array(), converse = ReportJson::array();
  for (const auto& r : lattice)
    for (const auto& e : r.edges)
      if (e.status == EdgeStatus::Discrepant)
        (e.edge.direction == EdgeDirection::Forward ? forward : converse).push_back(r.scenario + ": " + e.edge.id);
  const bool bad = !forward.empty();
  rep["summary"] = {{"scenarios", lattice.size()},
                    {"forward_discrepant", std::move(forward)},
                    {"converse_discrepant", std::move(converse)}};
  const int code = bad ? kExitRefuted : kExitOk;
  finish(rep, code, bad ? "a forward implication is discrepant" : "no forward implication is discrepant");
  return code;
}

}  // namespace detail

/// Entry point of the `ifpn` executable. Returns the process exit code:
/// 0 success, 1 mathematical refutation, 2 parse or operational error.
inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CliOptions o;
  CLI::App app{"Numerical checks for intuitionistic fuzzy pseudo normed spaces", "ifpn"};
  app.fallthrough();
  app.require_subcommand(1);
  app.add_option("--config", o.config, "Scenario file (JSON)");
  app.add_option("--report", o.report, "Report format")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--seed", o.seed, "Seed for the random grid points");
  app.add_option("--resolution", o.resolution, "Grid density")->check(CLI::IsMember({"coarse", "default", "fine"}));
  app.add_option("--out", o.out, "Write the report to this file");

  CLI::App* validate = app.add_subcommand("validate", "Check the axioms of every declared space");
  CLI::App* alpha = app.add_subcommand("alpha", "Alpha-norms of a point and the round-trip check");
  alpha->add_option("--space", o.space, "Space name, or a pseudo norm expression without --config")->required();
  alpha->add_option("--point", o.point, "Comma-separated coordinates")->required();
  alpha->add_option("--alpha", o.alphas, "Alpha values")->delimiter(',');
  CLI::App* classify = app.add_subcommand("classify", "Classify one scenario");
  classify->add_option("--scenario", o.scenario, "Scenario name")->required();
  classify->add_option("--properties", o.properties, "Subset of properties")->delimiter(',');
  CLI::App* theorems = app.add_subcommand("theorems", "Run the implication lattice");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitError;
  }

  try {
    const GridOptions g = GridOptions::at(detail::parse_resolution(o.resolution), o.seed);
    ReportJson rep;
    int code = kExitOk;
    if (validate->parsed()) {
      rep = detail::header("validate", o, g);
      code = detail::cmd_validate(o, g, rep);
    } else if (alpha->parsed()) {
      rep = detail::header("alpha", o, g);
      code = detail::cmd_alpha(o, g, rep);
    } else if (classify->parsed()) {
      rep = detail::header("classify", o, g);
      code = detail::cmd_classify(o, g, rep);
    } else if (theorems->parsed()) {
      rep = detail::header("theorems", o, g);
      code = detail::cmd_theorems(o, g, rep);
    }
    const std::string text = o.report == "json" ? rep.dump(2) + "\n" : render_text(rep);
    if (o.out.empty()) {
      out << text;
    } else {
      std::ofstream f(o.out, std::ios::binary);
      if (!f) throw ConfigError("cannot write '" + o.out + "'");
      f << text;
    }
    return code;
  } catch (const std::exception& e) {
    err << "ifpn: " << e.what() << "\n";
    return kExitError;
  }
}

}  // namespace ifpn
