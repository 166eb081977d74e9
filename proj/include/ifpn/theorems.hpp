#pragma once

#include <map>
#include <set>
#include <tuple>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ifpn/classify.hpp"
#include "ifpn/ifpn.hpp"
#include "ifpn/operators.hpp"

namespace ifpn {

enum class EdgeDirection { Forward, Converse };

inline std::string_view to_string(EdgeDirection d) { return d == EdgeDirection::Forward ? "forward" : "converse"; }

/// One direction of an implication between two properties.
struct LatticeEdge {
  std::string id;
  Property hypothesis;
  Property conclusion;
  EdgeDirection direction;
  std::string anchor;
};

/// The fourteen implication directions tested by the harness.
inline std::vector<LatticeEdge> default_edges() {
  using P = Property;
  constexpr auto F = EdgeDirection::Forward, C = EdgeDirection::Converse;
  const std::string seq_eq = "sequential continuity / continuity equivalence";
  const std::string sb_ub = "strong / uniform boundedness equivalence";
  const std::string sc_sb = "strong continuity / strong boundedness equivalence";
  const std::string wc_wb = "weak continuity / weak boundedness equivalence";
  const std::vector<std::tuple<P, P, EdgeDirection, std::string>> raw = {
      {P::IFC, P::SeqIFC, F, seq_eq},
      {P::SeqIFC, P::IFC, C, seq_eq},
      {P::StrongIFC, P::WeakIFC, F, "strong continuity implies weak continuity"},
      {P::StrongIFC, P::SeqIFC, F, "strong continuity implies sequential continuity"},
      {P::StrongIFC, P::IFC, F, "strong continuity implies continuity"},
      {P::StrongIFB, P::WeakIFB, F, "strong boundedness implies weak boundedness"},
      {P::StrongIFB, P::UniformIFB, F, sb_ub},
      {P::UniformIFB, P::StrongIFB, C, sb_ub},
      {P::StrongIFB, P::StrongIFC, F, sc_sb},
      {P::StrongIFC, P::StrongIFB, C, sc_sb},
      {P::WeakIFB, P::WeakIFC, F, wc_wb},
      {P::WeakIFC, P::WeakIFB, C, wc_wb},
      {P::StrongIFB, P::SeqIFC, F, "strong boundedness implies sequential continuity"},
      {P::StrongIFB, P::IFC, F, "strong boundedness implies continuity"},
  };
  std::vector<LatticeEdge> edges;
  for (const auto& [h, c, d, anchor] : raw)
    edges.push_back({std::string(cli_name(h)) + "->" + std::string(cli_name(c)), h, c, d, anchor});
  return edges;
}

enum class EdgeStatus { Consistent, Discrepant, Vacuous, Inconclusive };

inline std::string_view to_string(EdgeStatus s) {
  switch (s) {
    case EdgeStatus::Consistent: return "Consistent";
    case EdgeStatus::Discrepant: return "Discrepant";
    case EdgeStatus::Vacuous: return "Vacuous";
    case EdgeStatus::Inconclusive: return "Inconclusive";
  }
  return "?";
}

struct EdgeResult {
  LatticeEdge edge;
  Point point;
  Verdict hypothesis = Verdict::Inconclusive;
  Verdict conclusion = Verdict::Inconclusive;
  EdgeStatus status = EdgeStatus::Inconclusive;
  std::string detail;
};

/// One corpus entry: an operator between two pairs, classified at cfg.x0().
struct Scenario {
  std::string name;
  std::string domain_space;
  std::string codomain_space;
  IfpnPair domain;
  IfpnPair codomain;
  OperatorSpec op;
  ClassifierConfig cfg;
};

struct LatticeReport {
  std::string scenario;
  std::string domain_space;
  std::string codomain_space;
  std::string op;
  std::vector<PropertyReport> properties;
  std::vector<EdgeResult> edges;

  const PropertyReport* find(Property p, const Point& at) const {
    for (const auto& r : properties)
      if (r.property == p && r.point == at) return &r;
    return nullptr;
  }
};

namespace detail {

// Discrepant needs both sides' artifacts to replay; otherwise the edge is
// left undecided.
inline EdgeResult evaluate_edge(const LatticeEdge& e, const PropertyReport& h, const PropertyReport& c,
                                bool artifacts_sound) {
  EdgeResult r{e, h.point, h.outcome.verdict, c.outcome.verdict, EdgeStatus::Inconclusive, ""};
  if (h.outcome.is(Verdict::Refuted)) {
    r.status = EdgeStatus::Consistent;
    r.detail = "hypothesis refuted";
  } else if (h.outcome.is(Verdict::Holds) && c.outcome.is(Verdict::Holds)) {
    r.status = EdgeStatus::Consistent;
    r.detail = "both hold";
  } else if (h.outcome.is(Verdict::Holds) && c.outcome.is(Verdict::Refuted)) {
    r.status = artifacts_sound ? EdgeStatus::Discrepant : EdgeStatus::Inconclusive;
    r.detail = artifacts_sound ? "hypothesis holds, conclusion refuted" : "artifacts failed to replay";
  } else {
    r.detail = "a verdict is inconclusive";
  }
  return r;
}

// Corpus-level rule: an edge whose hypothesis never holds is Vacuous rather
// than Consistent.
inline void mark_vacuous(std::vector<LatticeReport>& reports) {
  std::map<std::string, bool> hyp_ever_holds;
  for (const auto& rep : reports)
    for (const auto& er : rep.edges) hyp_ever_holds[er.edge.id] |= er.hypothesis == Verdict::Holds;
  for (auto& rep : reports)
    for (auto& er : rep.edges)
      if (!hyp_ever_holds[er.edge.id] && er.status == EdgeStatus::Consistent) {
        er.status = EdgeStatus::Vacuous;
        er.detail = "hypothesis never holds across the corpus";
      }
}

inline std::vector<EdgeResult> evaluate_edges(const std::vector<LatticeEdge>& edges, const Scenario& s,
                                              const std::vector<PropertyReport>& props) {
  auto get = [&](Property p) -> const PropertyReport& {
    for (const auto& r : props)
      if (r.property == p) return r;
    throw Error("missing property report");
  };
  std::vector<EdgeResult> out;
  for (const LatticeEdge& e : edges) {
    const PropertyReport& h = get(e.hypothesis);
    const PropertyReport& c = get(e.conclusion);
    bool sound = false;
    if (h.outcome.is(Verdict::Holds) && c.outcome.is(Verdict::Refuted))
      sound = replay_report(h, s.op, s.domain, s.codomain, s.cfg) && replay_report(c, s.op, s.domain, s.codomain, s.cfg);
    out.push_back(evaluate_edge(e, h, c, sound));
  }
  return out;
}

}  // namespace detail

/// Checks that a scenario's spaces satisfy the axioms on the default grid
/// and that the operator's declared linearity matches check_linearity.
/// Spaces are validated once per name.
class ScenarioValidator {
 public:
  explicit ScenarioValidator(GridOptions opts) : opts_(opts) {}

  void validate(const Scenario& s) {
    space(s.domain_space, s.domain);
    space(s.codomain_space, s.codomain);
    if (s.op.domain_dim != s.domain.dimension || s.op.codomain_dim != s.codomain.dimension)
      throw ScenarioError(s.name + ": operator " + s.op.name + " does not match the space dimensions");
    const DecisionOutcome lin = check_linearity(s.op, operator_grid(s.op, opts_));
    if (lin.is(Verdict::Holds) != s.op.declared_linear)
      throw ScenarioError(s.name + ": operator " + s.op.name + " declared " +
                          (s.op.declared_linear ? "linear" : "nonlinear") + " but linearity check gives " +
                          std::string(to_string(lin.verdict)));
  }

 private:
  void space(const std::string& name, const IfpnPair& f) {
    if (checked_.count(name)) return;
    const std::vector<double> alphas = default_axiom_alpha_grid();
    const DecisionOutcome o = check_ifpn_axioms(f, default_grid(f.dimension, opts_), alphas);
    if (!o.is(Verdict::Holds))
      throw ScenarioError("space " + name + " fails the axiom check (" + std::string(to_string(o.verdict)) +
                          (o.witness ? ", " + o.witness->tag : "") + ")");
    checked_.insert(name);
  }

  GridOptions opts_;
  std::set<std::string> checked_;
};

/// Runs all seven classifiers on every scenario and evaluates every edge.
inline std::vector<LatticeReport> run_lattice(const std::vector<Scenario>& scenarios, const GridOptions& opts = {},
                                              const std::vector<LatticeEdge>& edges = default_edges()) {
  ScenarioValidator validator(opts);
  for (const Scenario& s : scenarios) validator.validate(s);
  std::vector<LatticeReport> reports;
  for (const Scenario& s : scenarios) {
    LatticeReport rep{s.name, s.domain_space, s.codomain_space, s.op.name, {}, {}};
    for (Property p : kAllProperties) rep.properties.push_back(check_property(p, s.op, s.domain, s.codomain, s.cfg));
    rep.edges = detail::evaluate_edges(edges, s, rep.properties);
    reports.push_back(std::move(rep));
  }
  detail::mark_vacuous(reports);
  return reports;
}

inline IfpnPair standard_space(const std::string& pseudo_norm, std::size_t dim) {
  return standard_ifpn(builtin_pseudo_norm(pseudo_norm, dim));
}

/// Operators identity, zero, scaling 0.5/1/2 and projection on the first
/// coordinate over the standard pairs on abs, root(abs), euclidean and
/// truncated(euclidean,1), each space on both sides, classified at θ; plus
/// cubic_ratio on the two one-dimensional spaces at x₀ ∈ {0, 1, 2} with
/// far-field samples.
inline std::vector<Scenario> default_corpus(const GridOptions& opts = {}) {
  const std::vector<std::pair<std::string, std::size_t>> spaces = {
      {"abs", 1}, {"root(abs)", 1}, {"euclidean", 2}, {"truncated(euclidean,1)", 2}};
  std::vector<Scenario> out;
  for (const auto& [pn, d] : spaces) {
    const IfpnPair f = standard_space(pn, d);
    const std::string ds = std::to_string(d);
    for (const std::string& opn : {"identity(" + ds + ")", "zero(" + ds + ")", "scaling(" + ds + ",0.5)",
                                   "scaling(" + ds + ",1)", "scaling(" + ds + ",2)",
                                   "coordinate_projection(" + ds + ",1)"}) {
      const OperatorSpec op = builtin_operator(opn);
      out.push_back({op.name + " on " + pn, pn, pn, f, f, op, default_classifier_config(op, Point::zeros(d), opts)});
    }
    if (d == 1) {
      const OperatorSpec cubic = builtin_operator("cubic_ratio");
      for (double x0 : {0.0, 1.0, 2.0})
        out.push_back({"cubic_ratio on " + pn + " at " + detail::format_number(x0), pn, pn, f, f, cubic,
                       default_classifier_config(cubic, Point{x0}, opts, true)});
    }
  }
  return out;
}

/// The cubic example over the standard pair on abs, at x₀ ∈ {0, 1, 2}:
/// weak against strong continuity, and sequential (on the suite x₀+1/n,
/// x₀(1+1/n²)) against strong continuity.
struct CounterexampleReports {
  LatticeReport weak_vs_strong;
  LatticeReport sequential_vs_strong;
};

inline ClassifierConfig cubic_reproduction_config(const Point& x0, const GridOptions& opts = {}) {
  const OperatorSpec cubic = builtin_operator("cubic_ratio");
  ClassifierConfig cfg = default_classifier_config(cubic, x0, opts, true);
  cfg.seq_suite = harmonic_sequence_suite(x0);
  cfg.seq_tail = 65536;
  return cfg;
}

inline CounterexampleReports reproduce_counterexamples(const GridOptions& opts = {}) {
  const IfpnPair f = standard_space("abs", 1);
  const OperatorSpec cubic = builtin_operator("cubic_ratio");
  const auto edges = default_edges();
  auto edge = [&](Property h, Property c) {
    for (const auto& e : edges)
      if (e.hypothesis == h && e.conclusion == c) return e;
    throw Error("missing edge");
  };
  const LatticeEdge strong_weak = edge(Property::StrongIFC, Property::WeakIFC);
  const LatticeEdge strong_seq = edge(Property::StrongIFC, Property::SeqIFC);

  std::vector<LatticeReport> reps(2);
  reps[0] = {"cubic_ratio weak vs strong continuity", "abs", "abs", cubic.name, {}, {}};
  reps[1] = {"cubic_ratio sequential vs strong continuity", "abs", "abs", cubic.name, {}, {}};
  for (double xv : {0.0, 1.0, 2.0}) {
    const Point x0{xv};
    const ClassifierConfig cfg = cubic_reproduction_config(x0, opts);
    const Scenario s{"cubic_ratio at " + detail::format_number(xv), "abs", "abs", f, f, cubic, cfg};
    const PropertyReport strong = check_strong_ifc_at(cubic, f, f, cfg);
    const PropertyReport weak = check_weak_ifc_at(cubic, f, f, cfg);
    const PropertyReport seq = check_seq_ifc_at(cubic, f, f, cfg);
    reps[0].properties.insert(reps[0].properties.end(), {weak, strong});
    reps[1].properties.insert(reps[1].properties.end(), {seq, strong});
    auto e0 = detail::evaluate_edges({strong_weak}, s, {weak, strong});
    auto e1 = detail::evaluate_edges({strong_seq}, s, {seq, strong});
    reps[0].edges.push_back(e0.front());
    reps[1].edges.push_back(e1.front());
  }
  detail::mark_vacuous(reps);
  return {std::move(reps[0]), std::move(reps[1])};
}

/// True when some forward edge is Discrepant (converse edges are reported only).
inline bool forward_discrepancy(const std::vector<LatticeReport>& reports) {
  for (const auto& rep : reports)
    for (const auto& e : rep.edges)
      if (e.edge.direction == EdgeDirection::Forward && e.status == EdgeStatus::Discrepant) return true;
  return false;
}

}  // namespace ifpn
