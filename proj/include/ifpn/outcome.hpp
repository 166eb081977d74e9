#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ifpn/point.hpp"

namespace ifpn {

enum class Verdict { Holds, Refuted, Inconclusive };

inline std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Holds: return "Holds";
    case Verdict::Refuted: return "Refuted";
    case Verdict::Inconclusive: return "Inconclusive";
  }
  return "?";
}

/// A concrete tuple of named values. `tag` names the violated axiom or the
/// side of an implication that failed.
struct Witness {
  std::string tag;
  std::vector<std::pair<std::string, double>> scalars;
  std::vector<std::pair<std::string, Point>> points;
  std::string label;

  Witness() = default;
  explicit Witness(std::string t) : tag(std::move(t)) {}

  Witness& with(std::string name, double v) {
    scalars.emplace_back(std::move(name), v);
    return *this;
  }
  Witness& with(std::string name, Point p) {
    points.emplace_back(std::move(name), std::move(p));
    return *this;
  }
  Witness& labelled(std::string l) {
    label = std::move(l);
    return *this;
  }

  bool has_scalar(std::string_view name) const {
    for (const auto& [k, v] : scalars)
      if (k == name) return true;
    return false;
  }
  double scalar(std::string_view name) const {
    for (const auto& [k, v] : scalars)
      if (k == name) return v;
    throw Error("witness has no scalar '" + std::string(name) + "'");
  }
  const Point& point(std::string_view name) const {
    for (const auto& [k, v] : points)
      if (k == name) return v;
    throw Error("witness has no point '" + std::string(name) + "'");
  }
};

/// One row of an existential-choice table, e.g. {eps, alpha, delta, beta}.
using CertificateRow = std::vector<std::pair<std::string, double>>;

inline double row_value(const CertificateRow& row, std::string_view name) {
  for (const auto& [k, v] : row)
    if (k == name) return v;
  throw Error("certificate row has no column '" + std::string(name) + "'");
}

/// Three-valued verdict at a stated resolution.
/// Invariant: verdict == Refuted iff witness is present.
struct DecisionOutcome {
  Verdict verdict = Verdict::Holds;
  std::optional<Witness> witness;
  std::vector<Witness> candidate_witnesses;  // one per rejected existential choice
  std::vector<CertificateRow> certificate;
  std::vector<CertificateRow> diagnostics;
  std::string resolution;
  std::string note;

  static DecisionOutcome holds(std::string resolution) {
    DecisionOutcome o;
    o.resolution = std::move(resolution);
    return o;
  }
  static DecisionOutcome refuted(Witness w, std::string resolution) {
    DecisionOutcome o;
    o.verdict = Verdict::Refuted;
    o.witness = std::move(w);
    o.resolution = std::move(resolution);
    return o;
  }
  static DecisionOutcome inconclusive(std::string note, std::string resolution) {
    DecisionOutcome o;
    o.verdict = Verdict::Inconclusive;
    o.note = std::move(note);
    o.resolution = std::move(resolution);
    return o;
  }

  bool is(Verdict v) const { return verdict == v; }
};

}  // namespace ifpn
