#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ifpn/alpha.hpp"
#include "ifpn/ifpn.hpp"
#include "ifpn/operators.hpp"
#include "ifpn/outcome.hpp"
#include "ifpn/tolerance.hpp"
#include "ifpn/vectorspace.hpp"

namespace ifpn {

enum class Property { IFC, SeqIFC, StrongIFC, WeakIFC, StrongIFB, WeakIFB, UniformIFB };

inline constexpr std::array<Property, 7> kAllProperties = {Property::IFC,       Property::SeqIFC,  Property::StrongIFC,
                                                           Property::WeakIFC,   Property::StrongIFB, Property::WeakIFB,
                                                           Property::UniformIFB};

inline std::string_view to_string(Property p) {
  switch (p) {
    case Property::IFC: return "IFC";
    case Property::SeqIFC: return "SeqIFC";
    case Property::StrongIFC: return "StrongIFC";
    case Property::WeakIFC: return "WeakIFC";
    case Property::StrongIFB: return "StrongIFB";
    case Property::WeakIFB: return "WeakIFB";
    case Property::UniformIFB: return "UniformIFB";
  }
  return "?";
}

inline std::string_view cli_name(Property p) {
  switch (p) {
    case Property::IFC: return "ifc";
    case Property::SeqIFC: return "seq_ifc";
    case Property::StrongIFC: return "strong_ifc";
    case Property::WeakIFC: return "weak_ifc";
    case Property::StrongIFB: return "strong_ifb";
    case Property::WeakIFB: return "weak_ifb";
    case Property::UniformIFB: return "uniform_ifb";
  }
  return "?";
}

/// Accepts either spelling: "strong_ifc" or "StrongIFC".
inline Property parse_property(std::string_view s) {
  for (Property p : kAllProperties)
    if (s == cli_name(p) || s == to_string(p)) return p;
  throw UnknownName(std::string(s));
}

/// True for properties whose Holds verdict carries a table of existential choices.
inline bool has_certificate(Property p) {
  return p == Property::IFC || p == Property::StrongIFC || p == Property::WeakIFC;
}

inline std::vector<double> default_eps_grid() { return {0.1, 0.5, 1.0, 2.0, 10.0}; }

inline std::vector<double> default_alpha_grid() {
  std::vector<double> a;
  for (int k = 1; k <= 9; ++k) a.push_back(k / 10.0);
  return a;
}

/// Descending log grid from 10 down to 1e-6.
inline std::vector<double> default_delta_candidates(Resolution r = Resolution::Default) {
  std::vector<double> d = log_ladder(1e-6, 10.0, scaled_steps(25, r));
  std::reverse(d.begin(), d.end());
  return d;
}

struct ClassifierConfig {
  std::vector<double> eps_grid = default_eps_grid();
  std::vector<double> alpha_grid = default_alpha_grid();
  std::vector<double> delta_candidates = default_delta_candidates();
  SampleGrid x_grid;
  std::optional<Point> point_of_interest;  // θ when unset
  std::vector<SequenceSpec> seq_suite;
  std::uint64_t seq_tail = 4096;
  double tol = 1e-9;
  BisectionOptions bisection;

  Point x0() const { return point_of_interest ? *point_of_interest : Point::zeros(x_grid.dimension); }

  void validate() const {
    if (eps_grid.empty() || alpha_grid.empty() || delta_candidates.empty())
      throw InvalidParameter("classifier grids must be non-empty");
    if (x_grid.points.empty() || x_grid.t_ladder.empty()) throw InvalidParameter("classifier x_grid is empty");
    for (double e : eps_grid)
      if (!(e > 0.0)) throw InvalidParameter("eps_grid values must be positive");
    for (double a : alpha_grid)
      if (!(a > 0.0 && a < 1.0)) throw InvalidParameter("alpha_grid values must lie in (0,1)");
    for (std::size_t i = 0; i < delta_candidates.size(); ++i) {
      if (!(delta_candidates[i] > 0.0)) throw InvalidParameter("delta candidates must be positive");
      if (i && !(delta_candidates[i] < delta_candidates[i - 1]))
        throw InvalidParameter("delta candidates must be strictly descending");
    }
    if (!(tol > 0.0)) throw InvalidParameter("tol must be positive");
    if (x0().dim() != x_grid.dimension) throw DimensionMismatch("point of interest has wrong dimension");
  }

  std::string describe() const {
    return x_grid.describe(tol) + " eps=" + std::to_string(eps_grid.size()) +
           " alphas=" + std::to_string(alpha_grid.size()) + " deltas=" + std::to_string(delta_candidates.size()) +
           " x0=" + x0().to_string();
  }
};

struct PropertyReport {
  Property property = Property::IFC;
  Point point;
  DecisionOutcome outcome;
};

/// Classification grid: the default grid, plus radial shells of radius
/// 1e-7..100 (8 radii per decade at default resolution) along ±eᵢ and ±𝟙
/// centred at θ and at x₀, plus optional far-field magnitudes 1e3..1e14 along
/// the same directions. Restricted to the operator's domain, duplicates removed.
inline SampleGrid classification_grid(const OperatorSpec& op, const Point& x0, const GridOptions& opts = {},
                                      bool far_field = false) {
  const std::size_t dim = op.domain_dim;
  SampleGrid g = default_grid(dim, opts);
  std::vector<Point> dirs;
  for (std::size_t i = 0; i < dim; ++i) {
    dirs.push_back(Point::unit(dim, i));
    dirs.push_back(-Point::unit(dim, i));
  }
  if (dim > 1) {
    dirs.push_back(Point::filled(dim, 1.0));
    dirs.push_back(Point::filled(dim, -1.0));
  }
  const int per_decade = std::max(1, static_cast<int>(std::lround(8 * resolution_factor(opts.resolution))));
  std::vector<double> radii;
  for (int k = -7 * per_decade; k <= 2 * per_decade; ++k)
    radii.push_back(std::pow(10.0, static_cast<double>(k) / per_decade));
  std::vector<Point> centres{Point::zeros(dim)};
  if (!x0.is_origin()) centres.push_back(x0);
  for (const Point& c : centres)
    for (const Point& d : dirs)
      for (double r : radii) g.points.push_back(c + r * d);
  if (far_field)
    for (int k = 3; k <= 14; ++k)
      for (const Point& d : dirs) g.points.push_back(std::pow(10.0, k) * d);

  std::vector<Point> unique;
  unique.reserve(g.points.size());
  for (Point& p : g.points) {
    if (op.domain == GridDomain::NonNegative && !p.nonnegative()) continue;
    if (std::find(unique.begin(), unique.end(), p) == unique.end()) unique.push_back(std::move(p));
  }
  g.points = std::move(unique);
  if (op.domain == GridDomain::NonNegative) {
    std::erase_if(g.scalars, [](double c) { return c < 0.0; });
    g.domain = GridDomain::NonNegative;
  }
  return g;
}

/// Sequences x₀ + n⁻³e₁, x₀ + n⁻³𝟙 and x₀(1 + n⁻³), all converging to x₀.
inline std::vector<SequenceSpec> generic_sequence_suite(const Point& x0) {
  const std::size_t d = x0.dim();
  auto cube = [](std::uint64_t n) { return std::pow(static_cast<double>(n), -3.0); };
  return {
      {"x0+e1/n^3", [x0, d, cube](std::uint64_t n) { return x0 + cube(n) * Point::unit(d, 0); }, x0},
      {"x0+1/n^3", [x0, d, cube](std::uint64_t n) { return x0 + cube(n) * Point::filled(d, 1.0); }, x0},
      {"x0*(1+1/n^3)", [x0, cube](std::uint64_t n) { return (1.0 + cube(n)) * x0; }, x0},
  };
}

/// Sequences x₀ + 1/n and x₀(1 + 1/n²) on the line.
inline std::vector<SequenceSpec> harmonic_sequence_suite(const Point& x0) {
  if (x0.dim() != 1) throw DimensionMismatch("harmonic suite is one-dimensional");
  return {
      {"x0+1/n", [x0](std::uint64_t n) { return x0 + Point{1.0 / static_cast<double>(n)}; }, x0},
      {"x0*(1+1/n^2)",
       [x0](std::uint64_t n) { return (1.0 + 1.0 / (static_cast<double>(n) * static_cast<double>(n))) * x0; }, x0},
  };
}

/// Default classifier settings for an operator at x₀.
inline ClassifierConfig default_classifier_config(const OperatorSpec& op, const Point& x0,
                                                  const GridOptions& opts = {}, bool far_field = false) {
  ClassifierConfig cfg;
  cfg.delta_candidates = default_delta_candidates(opts.resolution);
  cfg.x_grid = classification_grid(op, x0, opts, far_field);
  cfg.point_of_interest = x0;
  cfg.seq_suite = generic_sequence_suite(x0);
  return cfg;
}

namespace detail {

// Per-sample offsets from the point of interest: u = x − x₀, v = T(x) − T(x₀).
struct Offsets {
  std::vector<Point> x, u, v;
  std::vector<bool> at_x0;
};

inline Offsets offsets(const OperatorSpec& T, const ClassifierConfig& cfg) {
  const Point x0 = cfg.x0();
  const Point tx0 = T(x0);
  Offsets o;
  for (const Point& x : cfg.x_grid.points) {
    o.x.push_back(x);
    o.u.push_back(x - x0);
    o.v.push_back(T(x) - tx0);
    o.at_x0.push_back(x == x0);
  }
  return o;
}

inline void check_dims(const OperatorSpec& T, const IfpnPair& fd, const IfpnPair& fc, const ClassifierConfig& cfg) {
  cfg.validate();
  if (T.domain_dim != fd.dimension || T.codomain_dim != fc.dimension)
    throw DimensionMismatch("operator " + T.name + " does not map " + fd.name + " into " + fc.name);
  if (cfg.x_grid.dimension != T.domain_dim) throw DimensionMismatch("x_grid is not in the operator's domain");
}

/// δ search order for one ε: ε, ε/2, ε/4, … down to the smallest absolute
/// candidate, then the absolute candidates.
inline std::vector<double> delta_search_order(double eps, const std::vector<double>& absolute) {
  std::vector<double> out;
  for (double d = eps; d >= absolute.back(); d *= 0.5) out.push_back(d);
  out.insert(out.end(), absolute.begin(), absolute.end());
  return out;
}

/// β = α first, then the rest of the α grid ascending.
inline std::vector<double> beta_search_order(double alpha, std::vector<double> grid) {
  std::sort(grid.begin(), grid.end());
  std::erase(grid, alpha);
  grid.insert(grid.begin(), alpha);
  return grid;
}

// Complexity of a value for witness selection: 0 is simplest, then values
// near ±1. Used to report the simplest of several violations.
inline double simplicity(double v) { return v == 0.0 ? 0.0 : 1.0 + std::abs(std::log10(std::abs(v))); }
inline double simplicity(const Point& x) {
  double s = 0.0;
  for (double c : x.coords()) s += simplicity(c);
  return s;
}
inline double alpha_simplicity(double a) { return simplicity(a / (1.0 - a)); }

}  // namespace detail

// ---- per-sample conditions, shared by the searches and by replay ----------
//
// Each returns the tag of the violated conclusion ("" when none) and sets
// `premise` when the sample meets the property's hypothesis. Premises are
// compared exactly; conclusions with the scale-aware tolerance.

namespace detail {

inline std::string ifc_violation(const IfpnPair& fd, const IfpnPair& fc, const Point& u, const Point& v, double eps,
                                 double alpha, double delta, double beta, double tol, bool& premise) {
  premise = fd.mu(u, delta) > 1.0 - beta && fd.nu(u, delta) < beta;
  if (!premise) return "";
  if (definitely_greater(1.0 - alpha, fc.mu(v, eps), tol)) return "IFC.mu";
  if (definitely_greater(fc.nu(v, eps), alpha, tol)) return "IFC.nu";
  return "";
}

inline std::string weak_ifc_violation(const IfpnPair& fd, const IfpnPair& fc, const Point& u, const Point& v,
                                      double eps, double alpha, double delta, double tol, bool& premise) {
  const bool mu_premise = fd.mu(u, delta) >= alpha;
  const bool nu_premise = fd.nu(u, delta) <= alpha;
  premise = mu_premise || nu_premise;
  if (mu_premise && definitely_greater(alpha, fc.mu(v, eps), tol)) return "WeakIFC.mu";
  if (nu_premise && definitely_greater(fc.nu(v, eps), alpha, tol)) return "WeakIFC.nu";
  return "";
}

inline std::string strong_ifc_violation(const IfpnPair& fd, const IfpnPair& fc, const Point& u, const Point& v,
                                        double eps, double delta, double tol) {
  if (definitely_greater(fd.mu(u, delta), fc.mu(v, eps), tol)) return "StrongIFC.mu";
  if (definitely_greater(fc.nu(v, eps), fd.nu(u, delta), tol)) return "StrongIFC.nu";
  return "";
}

inline std::string strong_ifb_violation(const IfpnPair& fd, const IfpnPair& fc, const Point& x, const Point& tx,
                                        double t, double tol) {
  if (definitely_greater(fd.mu(x, t), fc.mu(tx, t), tol)) return "StrongIFB.mu";
  if (definitely_greater(fc.nu(tx, t), fd.nu(x, t), tol)) return "StrongIFB.nu";
  return "";
}

inline std::string weak_ifb_violation(const IfpnPair& fd, const IfpnPair& fc, const Point& x, const Point& tx,
                                      double t, double alpha, double tol) {
  if (fd.mu(x, t) >= alpha && definitely_greater(alpha, fc.mu(tx, t), tol)) return "WeakIFB.mu";
  if (fd.nu(x, t) <= 1.0 - alpha && definitely_greater(fc.nu(tx, t), 1.0 - alpha, tol)) return "WeakIFB.nu";
  return "";
}

// Uniform IFB compares α-norms that are only known to within the bisection
// tolerance, so the band widens by two bisection widths.
inline double uniform_band(const ClassifierConfig& cfg) { return cfg.tol + 2.0 * cfg.bisection.bisect_tol; }

inline std::string uniform_ifb_violation(const IfpnPair& fd, const IfpnPair& fc, const Point& x, const Point& tx,
                                         double alpha, const ClassifierConfig& cfg) {
  const double band = uniform_band(cfg);
  if (alpha_norm(fc, tx, alpha, cfg.bisection) > alpha_norm(fd, x, alpha, cfg.bisection) + band)
    return "UniformIFB.asc";
  if (alpha_conorm(fc, tx, alpha, cfg.bisection) > alpha_conorm(fd, x, alpha, cfg.bisection) + band)
    return "UniformIFB.desc";
  return "";
}

// ---- ∃-choice search ----------------------------------------------------

struct Cell {
  double eps;
  double alpha;  // NaN when the property has no α
};

struct Choice {
  double delta;
  double beta;  // NaN when the property has no β
};

struct ChoiceCheck {
  std::optional<Witness> violation;
  bool nonvacuous = false;
};

inline CertificateRow certificate_row(const Cell& c, const Choice& ch) {
  CertificateRow row{{"eps", c.eps}};
  if (!std::isnan(c.alpha)) row.emplace_back("alpha", c.alpha);
  row.emplace_back("delta", ch.delta);
  if (!std::isnan(ch.beta)) row.emplace_back("beta", ch.beta);
  return row;
}

inline std::string describe_cell(const Cell& c) {
  return "eps=" + format_number(c.eps) + (std::isnan(c.alpha) ? "" : " alpha=" + format_number(c.alpha));
}

// For every cell, takes the first choice with no violating sample and at
// least one sample other than x₀ meeting the premise. A cell whose choices all
// fail refutes the property; a cell whose only successes are vacuous leaves
// it undecided.
template <class Choices, class Eval>
DecisionOutcome exists_search(const std::vector<Cell>& cells, Choices&& choices_for, Eval&& eval,
                              const std::string& res) {
  DecisionOutcome out = DecisionOutcome::holds(res);
  std::vector<std::string> vacuous;
  for (const Cell& cell : cells) {
    bool found = false, vacuous_success = false;
    std::vector<Witness> failures;
    for (const Choice& ch : choices_for(cell)) {
      ChoiceCheck r = eval(cell, ch);
      if (r.violation) {
        failures.push_back(std::move(*r.violation));
      } else if (r.nonvacuous) {
        out.certificate.push_back(certificate_row(cell, ch));
        found = true;
        break;
      } else {
        vacuous_success = true;
      }
    }
    if (found) continue;
    if (vacuous_success) {
      vacuous.push_back(describe_cell(cell));
      continue;
    }
    DecisionOutcome r = DecisionOutcome::refuted(failures.back(), res);
    r.note = "every candidate fails at " + describe_cell(cell);
    r.candidate_witnesses = std::move(failures);
    return r;
  }
  if (!vacuous.empty()) {
    std::string note = "only vacuous candidates (no sample point other than x0 meets the premise) at";
    for (const auto& v : vacuous) note += " [" + v + "]";
    return DecisionOutcome::inconclusive(note, res);
  }
  return out;
}

inline std::vector<Choice> delta_choices(double eps, const ClassifierConfig& cfg) {
  std::vector<Choice> out;
  for (double d : delta_search_order(eps, cfg.delta_candidates)) out.push_back({d, std::nan("")});
  return out;
}

// Largest δ (log-bisection on [1e-30, 1e6]) for which the strong continuity
// inequalities hold at one sample. 0 when even 1e-30 fails.
inline double critical_delta(const IfpnPair& fd, const IfpnPair& fc, const Point& u, const Point& v, double eps,
                             double tol) {
  auto ok = [&](double d) { return strong_ifc_violation(fd, fc, u, v, eps, d, tol).empty(); };
  constexpr double kLo = 1e-30, kHi = 1e6;
  if (ok(kHi)) return kHi;
  if (!ok(kLo)) return 0.0;
  double lo = std::log(kLo), hi = std::log(kHi);
  while (hi - lo > 1e-12) (ok(std::exp(0.5 * (lo + hi))) ? lo : hi) = 0.5 * (lo + hi);
  return std::exp(lo);
}

}  // namespace detail

// ---- the seven properties -------------------------------------------------

/// IFC at x₀: for each (ε, α), a (δ, β) such that
/// μ₁(x−x₀,δ) > 1−β and ν₁(x−x₀,δ) < β imply μ₂(Tx−Tx₀,ε) > 1−α and ν₂(Tx−Tx₀,ε) < α.
inline PropertyReport check_ifc_at(const OperatorSpec& T, const IfpnPair& fd, const IfpnPair& fc,
                                   const ClassifierConfig& cfg) {
  detail::check_dims(T, fd, fc, cfg);
  const Point x0 = cfg.x0();
  const detail::Offsets o = detail::offsets(T, cfg);
  std::vector<detail::Cell> cells;
  for (double e : cfg.eps_grid)
    for (double a : cfg.alpha_grid) cells.push_back({e, a});
  auto choices = [&](const detail::Cell& c) {
    std::vector<detail::Choice> out;
    for (double d : detail::delta_search_order(c.eps, cfg.delta_candidates))
      for (double b : detail::beta_search_order(c.alpha, cfg.alpha_grid)) out.push_back({d, b});
    return out;
  };
  auto eval = [&](const detail::Cell& c, const detail::Choice& ch) {
    detail::ChoiceCheck r;
    for (std::size_t i = 0; i < o.x.size(); ++i) {
      bool premise = false;
      const std::string tag =
          detail::ifc_violation(fd, fc, o.u[i], o.v[i], c.eps, c.alpha, ch.delta, ch.beta, cfg.tol, premise);
      if (premise && !o.at_x0[i]) r.nonvacuous = true;
      if (!tag.empty()) {
        r.violation = Witness(tag)
                          .with("x", o.x[i])
                          .with("x0", x0)
                          .with("eps", c.eps)
                          .with("alpha", c.alpha)
                          .with("delta", ch.delta)
                          .with("beta", ch.beta);
        return r;
      }
    }
    return r;
  };
  return {Property::IFC, x0, detail::exists_search(cells, choices, eval, cfg.describe())};
}

/// Weak IFC at x₀: for each (ε, α), a δ such that μ₁(x−x₀,δ) ≥ α implies
/// μ₂(Tx−Tx₀,ε) ≥ α and ν₁(x−x₀,δ) ≤ α implies ν₂(Tx−Tx₀,ε) ≤ α.
inline PropertyReport check_weak_ifc_at(const OperatorSpec& T, const IfpnPair& fd, const IfpnPair& fc,
                                        const ClassifierConfig& cfg) {
  detail::check_dims(T, fd, fc, cfg);
  const Point x0 = cfg.x0();
  const detail::Offsets o = detail::offsets(T, cfg);
  std::vector<detail::Cell> cells;
  for (double e : cfg.eps_grid)
    for (double a : cfg.alpha_grid) cells.push_back({e, a});
  auto choices = [&](const detail::Cell& c) { return detail::delta_choices(c.eps, cfg); };
  auto eval = [&](const detail::Cell& c, const detail::Choice& ch) {
    detail::ChoiceCheck r;
    for (std::size_t i = 0; i < o.x.size(); ++i) {
      bool premise = false;
      const std::string tag =
          detail::weak_ifc_violation(fd, fc, o.u[i], o.v[i], c.eps, c.alpha, ch.delta, cfg.tol, premise);
      if (premise && !o.at_x0[i]) r.nonvacuous = true;
      if (!tag.empty()) {
        r.violation = Witness(tag)
                          .with("x", o.x[i])
                          .with("x0", x0)
                          .with("eps", c.eps)
                          .with("alpha", c.alpha)
                          .with("delta", ch.delta);
        return r;
      }
    }
    return r;
  };
  return {Property::WeakIFC, x0, detail::exists_search(cells, choices, eval, cfg.describe())};
}

/// Strong IFC at x₀: for each ε, a δ with μ₂(Tx−Tx₀,ε) ≥ μ₁(x−x₀,δ) and
/// ν₂(Tx−Tx₀,ε) ≤ ν₁(x−x₀,δ) at every sample. A refutation carries, per ε
/// and per magnitude bound 1, 10, 100, …, the smallest critical δ among
/// samples with sup-magnitude within the bound.
inline PropertyReport check_strong_ifc_at(const OperatorSpec& T, const IfpnPair& fd, const IfpnPair& fc,
                                          const ClassifierConfig& cfg) {
  detail::check_dims(T, fd, fc, cfg);
  const Point x0 = cfg.x0();
  const detail::Offsets o = detail::offsets(T, cfg);
  std::vector<detail::Cell> cells;
  for (double e : cfg.eps_grid) cells.push_back({e, std::nan("")});
  auto choices = [&](const detail::Cell& c) { return detail::delta_choices(c.eps, cfg); };
  auto eval = [&](const detail::Cell& c, const detail::Choice& ch) {
    detail::ChoiceCheck r;
    for (std::size_t i = 0; i < o.x.size(); ++i) {
      if (!o.at_x0[i]) r.nonvacuous = true;
      const std::string tag = detail::strong_ifc_violation(fd, fc, o.u[i], o.v[i], c.eps, ch.delta, cfg.tol);
      if (!tag.empty()) {
        r.violation = Witness(tag).with("x", o.x[i]).with("x0", x0).with("eps", c.eps).with("delta", ch.delta);
        return r;
      }
    }
    return r;
  };
  DecisionOutcome out = detail::exists_search(cells, choices, eval, cfg.describe());
  if (out.is(Verdict::Refuted)) {
    double top = 0.0;
    for (const Point& x : o.x) top = std::max(top, x.sup_abs());
    for (double eps : cfg.eps_grid) {
      std::vector<double> crit(o.x.size());
      for (std::size_t i = 0; i < o.x.size(); ++i)
        crit[i] = o.at_x0[i] ? INFINITY : detail::critical_delta(fd, fc, o.u[i], o.v[i], eps, cfg.tol);
      for (double bound = 1.0; bound <= top * (1.0 + 1e-12); bound *= 10.0) {
        double m = INFINITY;
        for (std::size_t i = 0; i < o.x.size(); ++i)
          if (o.x[i].sup_abs() <= bound) m = std::min(m, crit[i]);
        if (std::isfinite(m)) out.diagnostics.push_back({{"eps", eps}, {"bound", bound}, {"min_critical_delta", m}});
      }
    }
  }
  return {Property::StrongIFC, x0, std::move(out)};
}

/// Sequential IFC at x₀: every suite sequence converging to x₀ in the domain
/// has an image converging to T(x₀). A suite sequence that does not converge
/// in the domain makes the verdict Inconclusive.
inline PropertyReport check_seq_ifc_at(const OperatorSpec& T, const IfpnPair& fd, const IfpnPair& fc,
                                       const ClassifierConfig& cfg) {
  detail::check_dims(T, fd, fc, cfg);
  if (cfg.seq_suite.empty()) throw InvalidParameter("sequence suite is empty");
  const Point x0 = cfg.x0();
  const auto& lad = cfg.x_grid.t_ladder;
  std::string res = cfg.describe() + " tail=" + std::to_string(cfg.seq_tail) + " sequences=";
  for (std::size_t i = 0; i < cfg.seq_suite.size(); ++i) res += (i ? "," : "") + cfg.seq_suite[i].name;
  std::vector<std::string> open;
  for (const SequenceSpec& s : cfg.seq_suite) {
    if (!(s.declared_limit == x0)) throw InvalidParameter("sequence " + s.name + " does not target x0");
    const DecisionOutcome pre = check_convergence(fd, s, cfg.seq_tail, cfg.tol, lad);
    if (!pre.is(Verdict::Holds)) {
      open.push_back(s.name + ": does not converge to x0 in the domain space");
      continue;
    }
    const SequenceSpec image{"T(" + s.name + ")", [&T, terms = s.terms](std::uint64_t n) { return T(terms(n)); },
                             T(x0)};
    DecisionOutcome img = check_convergence(fc, image, cfg.seq_tail, cfg.tol, lad);
    if (img.is(Verdict::Refuted)) {
      Witness w = *img.witness;
      w.tag = "SeqIFC";
      w.with("x0", x0).labelled(s.name);
      return {Property::SeqIFC, x0, DecisionOutcome::refuted(std::move(w), res)};
    }
    if (img.is(Verdict::Inconclusive)) open.push_back(s.name + ": " + img.note);
  }
  if (!open.empty()) {
    std::string note;
    for (const auto& s : open) note += (note.empty() ? "" : "; ") + s;
    return {Property::SeqIFC, x0, DecisionOutcome::inconclusive(note, res)};
  }
  return {Property::SeqIFC, x0, DecisionOutcome::holds(res)};
}

// The boundedness sweeps visit every sample and report the simplest violation
// (coordinates and t near 0 or ±1, α near 1/2), ties broken by sweep order.

/// Strong IFB: μ₂(Tx,t) ≥ μ₁(x,t) and ν₂(Tx,t) ≤ ν₁(x,t) for every sample x and ladder t.
inline PropertyReport check_strong_ifb(const OperatorSpec& T, const IfpnPair& fd, const IfpnPair& fc,
                                       const ClassifierConfig& cfg) {
  detail::check_dims(T, fd, fc, cfg);
  std::optional<Witness> best;
  double best_key = 0.0;
  for (const Point& x : cfg.x_grid.points) {
    const Point tx = T(x);
    for (double t : cfg.x_grid.t_ladder) {
      const std::string tag = detail::strong_ifb_violation(fd, fc, x, tx, t, cfg.tol);
      if (tag.empty()) continue;
      const double key = detail::simplicity(x) + detail::simplicity(t);
      if (best && key >= best_key) continue;
      best = Witness(tag)
                 .with("x", x)
                 .with("t", t)
                 .with("mu1", fd.mu(x, t))
                 .with("mu2", fc.mu(tx, t))
                 .with("nu1", fd.nu(x, t))
                 .with("nu2", fc.nu(tx, t));
      best_key = key;
    }
  }
  const std::string res = cfg.describe();
  return {Property::StrongIFB, cfg.x0(),
          best ? DecisionOutcome::refuted(std::move(*best), res) : DecisionOutcome::holds(res)};
}

/// Weak IFB: for every α, μ₁(x,t) ≥ α implies μ₂(Tx,t) ≥ α and
/// ν₁(x,t) ≤ 1−α implies ν₂(Tx,t) ≤ 1−α.
inline PropertyReport check_weak_ifb(const OperatorSpec& T, const IfpnPair& fd, const IfpnPair& fc,
                                     const ClassifierConfig& cfg) {
  detail::check_dims(T, fd, fc, cfg);
  std::optional<Witness> best;
  double best_key = 0.0;
  for (const Point& x : cfg.x_grid.points) {
    const Point tx = T(x);
    for (double t : cfg.x_grid.t_ladder) {
      for (double a : cfg.alpha_grid) {
        const std::string tag = detail::weak_ifb_violation(fd, fc, x, tx, t, a, cfg.tol);
        if (tag.empty()) continue;
        const double key = detail::simplicity(x) + detail::simplicity(t) + detail::alpha_simplicity(a);
        if (best && key >= best_key) continue;
        best = Witness(tag).with("x", x).with("t", t).with("alpha", a);
        best_key = key;
      }
    }
  }
  const std::string res = cfg.describe();
  return {Property::WeakIFB, cfg.x0(),
          best ? DecisionOutcome::refuted(std::move(*best), res) : DecisionOutcome::holds(res)};
}

/// Uniform IFB: ‖Tx‖²_α ≤ ‖x‖¹_α and ‖Tx‖²*_α ≤ ‖x‖¹*_α for every α and sample
/// x. Samples whose α-norms exceed the bisection bracket are skipped; if any
/// were skipped and nothing else fails, the verdict is Inconclusive.
inline PropertyReport check_uniform_ifb(const OperatorSpec& T, const IfpnPair& fd, const IfpnPair& fc,
                                        const ClassifierConfig& cfg) {
  detail::check_dims(T, fd, fc, cfg);
  std::optional<Witness> best;
  double best_key = 0.0;
  std::size_t skipped = 0;
  for (const Point& x : cfg.x_grid.points) {
    const Point tx = T(x);
    for (double a : cfg.alpha_grid) {
      std::string tag;
      try {
        tag = detail::uniform_ifb_violation(fd, fc, x, tx, a, cfg);
      } catch (const BracketExceeded&) {
        ++skipped;
        continue;
      }
      if (tag.empty()) continue;
      const double key = detail::simplicity(x) + detail::alpha_simplicity(a);
      if (best && key >= best_key) continue;
      best = Witness(tag).with("x", x).with("alpha", a);
      best_key = key;
    }
  }
  const std::string res = cfg.describe() + " bracket_cap=" + detail::format_number(cfg.bisection.bracket_cap) +
                          " bisect_tol=" + detail::format_number(cfg.bisection.bisect_tol) +
                          " bracket_skipped=" + std::to_string(skipped);
  if (best) return {Property::UniformIFB, cfg.x0(), DecisionOutcome::refuted(std::move(*best), res)};
  if (skipped)
    return {Property::UniformIFB, cfg.x0(),
            DecisionOutcome::inconclusive(std::to_string(skipped) + " (x, alpha) samples exceed the bracket cap", res)};
  return {Property::UniformIFB, cfg.x0(), DecisionOutcome::holds(res)};
}

inline PropertyReport check_property(Property p, const OperatorSpec& T, const IfpnPair& fd, const IfpnPair& fc,
                                     const ClassifierConfig& cfg) {
  switch (p) {
    case Property::IFC: return check_ifc_at(T, fd, fc, cfg);
    case Property::SeqIFC: return check_seq_ifc_at(T, fd, fc, cfg);
    case Property::StrongIFC: return check_strong_ifc_at(T, fd, fc, cfg);
    case Property::WeakIFC: return check_weak_ifc_at(T, fd, fc, cfg);
    case Property::StrongIFB: return check_strong_ifb(T, fd, fc, cfg);
    case Property::WeakIFB: return check_weak_ifb(T, fd, fc, cfg);
    case Property::UniformIFB: return check_uniform_ifb(T, fd, fc, cfg);
  }
  throw InvalidParameter("unknown property");
}

// ---- replay ----------------------------------------------------------------

/// Re-evaluates a classifier witness; true when it still violates its
/// defining inequality beyond the configured tolerance.
inline bool replay_witness(Property p, const OperatorSpec& T, const IfpnPair& fd, const IfpnPair& fc,
                           const ClassifierConfig& cfg, const Witness& w) {
  const double tol = cfg.tol;
  switch (p) {
    case Property::IFC:
    case Property::WeakIFC:
    case Property::StrongIFC: {
      const Point& x = w.point("x");
      const Point& x0 = w.point("x0");
      const Point u = x - x0, v = T(x) - T(x0);
      bool premise = true;
      std::string tag;
      if (p == Property::IFC)
        tag = detail::ifc_violation(fd, fc, u, v, w.scalar("eps"), w.scalar("alpha"), w.scalar("delta"),
                                    w.scalar("beta"), tol, premise);
      else if (p == Property::WeakIFC)
        tag = detail::weak_ifc_violation(fd, fc, u, v, w.scalar("eps"), w.scalar("alpha"), w.scalar("delta"), tol,
                                         premise);
      else
        tag = detail::strong_ifc_violation(fd, fc, u, v, w.scalar("eps"), w.scalar("delta"), tol);
      return premise && !tag.empty();
    }
    case Property::SeqIFC: {
      for (const SequenceSpec& s : cfg.seq_suite) {
        if (s.name != w.label) continue;
        const Point d = T(s.terms(static_cast<std::uint64_t>(w.scalar("n")))) - T(w.point("x0"));
        const double t = w.scalar("t");
        return fc.mu(d, t) < 1.0 - tol || fc.nu(d, t) > tol;
      }
      return false;
    }
    case Property::StrongIFB: {
      const Point& x = w.point("x");
      return !detail::strong_ifb_violation(fd, fc, x, T(x), w.scalar("t"), tol).empty();
    }
    case Property::WeakIFB: {
      const Point& x = w.point("x");
      return !detail::weak_ifb_violation(fd, fc, x, T(x), w.scalar("t"), w.scalar("alpha"), tol).empty();
    }
    case Property::UniformIFB: {
      const Point& x = w.point("x");
      return !detail::uniform_ifb_violation(fd, fc, x, T(x), w.scalar("alpha"), cfg).empty();
    }
  }
  return false;
}

/// Re-checks one certificate row against every sample of cfg.x_grid; true when
/// the recorded choice has no violating sample and a non-vacuous premise.
inline bool replay_certificate(Property p, const OperatorSpec& T, const IfpnPair& fd, const IfpnPair& fc,
                               const ClassifierConfig& cfg, const CertificateRow& row) {
  if (!has_certificate(p)) return false;
  const detail::Offsets o = detail::offsets(T, cfg);
  const double eps = row_value(row, "eps"), delta = row_value(row, "delta");
  bool nonvacuous = false;
  for (std::size_t i = 0; i < o.x.size(); ++i) {
    bool premise = true;
    std::string tag;
    if (p == Property::IFC)
      tag = detail::ifc_violation(fd, fc, o.u[i], o.v[i], eps, row_value(row, "alpha"), delta,
                                  row_value(row, "beta"), cfg.tol, premise);
    else if (p == Property::WeakIFC)
      tag = detail::weak_ifc_violation(fd, fc, o.u[i], o.v[i], eps, row_value(row, "alpha"), delta, cfg.tol,
                                       premise);
    else
      tag = detail::strong_ifc_violation(fd, fc, o.u[i], o.v[i], eps, delta, cfg.tol);
    if (!tag.empty()) return false;
    if (premise && !o.at_x0[i]) nonvacuous = true;
  }
  return nonvacuous;
}

/// Replays the main witness, every candidate witness and every certificate
/// row of a report. True when all of them reproduce.
inline bool replay_report(const PropertyReport& r, const OperatorSpec& T, const IfpnPair& fd, const IfpnPair& fc,
                          const ClassifierConfig& cfg) {
  const DecisionOutcome& o = r.outcome;
  if (o.witness && !replay_witness(r.property, T, fd, fc, cfg, *o.witness)) return false;
  for (const Witness& w : o.candidate_witnesses)
    if (!replay_witness(r.property, T, fd, fc, cfg, w)) return false;
  for (const CertificateRow& row : o.certificate)
    if (!replay_certificate(r.property, T, fd, fc, cfg, row)) return false;
  return true;
}

}  // namespace ifpn
