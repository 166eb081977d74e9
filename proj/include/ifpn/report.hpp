#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "ifpn/classify.hpp"
#include "ifpn/outcome.hpp"
#include "ifpn/theorems.hpp"

namespace ifpn {

// Reports are built as insertion-ordered JSON so that the key order is fixed
// and two runs with the same inputs serialize byte for byte identically.
using ReportJson = nlohmann::ordered_json;

inline ReportJson to_json(const Point& p) {
  ReportJson a = ReportJson::array();
  for (double c : p.coords()) a.push_back(c);
  return a;
}

inline ReportJson to_json(const Witness& w) {
  ReportJson j;
  j["tag"] = w.tag;
  if (!w.label.empty()) j["label"] = w.label;
  for (const auto& [k, p] : w.points) j[k] = to_json(p);
  for (const auto& [k, v] : w.scalars) j[k] = v;
  return j;
}

inline ReportJson to_json(const CertificateRow& row) {
  ReportJson j = ReportJson::object();
  for (const auto& [k, v] : row) j[k] = v;
  return j;
}

inline void put_outcome(ReportJson& j, const DecisionOutcome& o) {
  j["verdict"] = std::string(to_string(o.verdict));
  j["resolution"] = o.resolution;
  if (!o.note.empty()) j["note"] = o.note;
  if (o.witness) j["witness"] = to_json(*o.witness);
  if (!o.certificate.empty()) {
    ReportJson rows = ReportJson::array();
    for (const auto& r : o.certificate) rows.push_back(to_json(r));
    j["certificate"] = std::move(rows);
  }
  if (!o.candidate_witnesses.empty()) {
    ReportJson ws = ReportJson::array();
    for (const auto& w : o.candidate_witnesses) ws.push_back(to_json(w));
    j["candidate_witnesses"] = std::move(ws);
  }
  if (!o.diagnostics.empty()) {
    ReportJson rows = ReportJson::array();
    for (const auto& r : o.diagnostics) rows.push_back(to_json(r));
    j["diagnostics"] = std::move(rows);
  }
}

inline ReportJson to_json(const DecisionOutcome& o) {
  ReportJson j = ReportJson::object();
  put_outcome(j, o);
  return j;
}

inline ReportJson to_json(const PropertyReport& r) {
  ReportJson j;
  j["property"] = std::string(cli_name(r.property));
  j["point"] = to_json(r.point);
  put_outcome(j, r.outcome);
  return j;
}

inline ReportJson to_json(const LatticeEdge& e) {
  ReportJson j;
  j["id"] = e.id;
  j["hypothesis"] = std::string(cli_name(e.hypothesis));
  j["conclusion"] = std::string(cli_name(e.conclusion));
  j["direction"] = std::string(to_string(e.direction));
  j["anchor"] = e.anchor;
  return j;
}

inline ReportJson to_json(const EdgeResult& r) {
  ReportJson j;
  j["edge"] = r.edge.id;
  j["direction"] = std::string(to_string(r.edge.direction));
  j["point"] = to_json(r.point);
  j["hypothesis"] = std::string(to_string(r.hypothesis));
  j["conclusion"] = std::string(to_string(r.conclusion));
  j["status"] = std::string(to_string(r.status));
  j["detail"] = r.detail;
  return j;
}

inline ReportJson to_json(const LatticeReport& r) {
  ReportJson j;
  j["scenario"] = r.scenario;
  j["domain_space"] = r.domain_space;
  j["codomain_space"] = r.codomain_space;
  j["operator"] = r.op;
  ReportJson props = ReportJson::array();
  for (const auto& p : r.properties) props.push_back(to_json(p));
  j["properties"] = std::move(props);
  ReportJson edges = ReportJson::array();
  for (const auto& e : r.edges) edges.push_back(to_json(e));
  j["edges"] = std::move(edges);
  return j;
}

namespace detail {

inline bool is_scalar(const ReportJson& v) { return !v.is_object() && !v.is_array(); }

inline bool is_flat_array(const ReportJson& v) {
  if (!v.is_array()) return false;
  for (const auto& e : v)
    if (!is_scalar(e)) return false;
  return true;
}

inline std::string scalar_text(const ReportJson& v) {
  if (v.is_string()) return v.get<std::string>();
  if (is_flat_array(v)) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i].dump();
    return s + "]";
  }
  return v.dump();
}

inline void render(const ReportJson& v, std::string& out, const std::string& indent) {
  if (v.is_object()) {
    for (const auto& [k, e] : v.items()) {
      if (is_scalar(e) || is_flat_array(e)) {
        out += indent + k + ": " + scalar_text(e) + "\n";
      } else {
        out += indent + k + ":\n";
        render(e, out, indent + "  ");
      }
    }
  } else if (v.is_array()) {
    for (const auto& e : v) {
      if (is_scalar(e) || is_flat_array(e)) {
        out += indent + "- " + scalar_text(e) + "\n";
        continue;
      }
      std::string inner;
      render(e, inner, indent + "  ");
      inner.replace(indent.size(), 2, "- ");
      out += inner;
    }
  } else {
    out += indent + scalar_text(v) + "\n";
  }
}

}  // namespace detail

/// Indented plain-text rendering of a report; carries the same fields as the JSON form.
inline std::string render_text(const ReportJson& report) {
  std::string out;
  detail::render(report, out, "");
  return out;
}

}  // namespace ifpn
