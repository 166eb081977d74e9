#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "ifpn/detail/expr.hpp"
#include "ifpn/outcome.hpp"
#include "ifpn/point.hpp"
#include "ifpn/tolerance.hpp"

namespace ifpn {

/// A map ℝⁿ → [0,∞) claimed to satisfy P.1–P.4. The claim is checked by
/// check_pseudo_norm_axioms, never assumed.
struct PseudoNorm {
  std::string name;
  std::size_t dimension = 1;
  std::function<double(const Point&)> eval;

  double operator()(const Point& x) const { return eval(x); }
};

namespace detail {

inline PseudoNorm build_pseudo_norm(const Expr& e, std::size_t dim) {
  if (dim == 0) throw InvalidParameter("dimension must be positive");
  if (e.head == "abs") {
    e.expect_arity(0);
    if (dim != 1) throw DimensionMismatch("abs is defined on dimension 1 only");
    return {"abs", 1, [](const Point& x) { return std::abs(x[0]); }};
  }
  if (e.head == "euclidean") {
    e.expect_arity(0);
    return {"euclidean", dim, [](const Point& x) { return x.euclidean(); }};
  }
  if (e.head == "sup") {
    e.expect_arity(0);
    return {"sup", dim, [](const Point& x) { return x.sup_abs(); }};
  }
  if (e.head == "truncated") {
    e.expect_arity(2);
    PseudoNorm base = build_pseudo_norm(e.sub(0), dim);
    const double cap = e.number(1);
    if (!(cap > 0.0)) throw InvalidParameter("truncated: cap must be positive");
    return {"truncated(" + base.name + "," + format_number(cap) + ")", dim,
            [b = base.eval, cap](const Point& x) { return std::min(b(x), cap); }};
  }
  if (e.head == "root") {
    e.expect_arity(1);
    PseudoNorm base = build_pseudo_norm(e.sub(0), dim);
    return {"root(" + base.name + ")", dim, [b = base.eval](const Point& x) { return std::sqrt(b(x)); }};
  }
  if (e.head == "scaled") {
    e.expect_arity(2);
    PseudoNorm base = build_pseudo_norm(e.sub(0), dim);
    const double k = e.number(1);
    if (!(k > 0.0)) throw InvalidParameter("scaled: factor must be positive");
    return {"scaled(" + base.name + "," + format_number(k) + ")", dim,
            [b = base.eval, k](const Point& x) { return k * b(x); }};
  }
  throw UnknownName(e.head);
}

}  // namespace detail

/// Builds a pseudo norm from a name expression: abs, euclidean, sup,
/// truncated(base,cap), root(base), scaled(base,factor).
inline PseudoNorm builtin_pseudo_norm(std::string_view name, std::size_t dimension) {
  return detail::build_pseudo_norm(detail::parse_expr(name), dimension);
}

enum class GridDomain { Full, NonNegative };

/// Finite surrogate for the quantifiers over X, ℝ⁺ and |c| ≤ 1.
struct SampleGrid {
  std::size_t dimension = 1;
  std::vector<Point> points;
  std::vector<double> scalars;
  std::vector<double> t_ladder;
  std::uint64_t seed = 42;
  GridDomain domain = GridDomain::Full;

  // Full grids contain θ and are closed under negation; every grid has a
  // strictly ascending positive ladder.
  void validate() const {
    if (points.empty() || t_ladder.empty()) throw InvalidParameter("sample grid is empty");
    for (const Point& p : points)
      if (p.dim() != dimension) throw DimensionMismatch("grid point has wrong dimension");
    for (std::size_t i = 0; i < t_ladder.size(); ++i) {
      if (!(t_ladder[i] > 0.0)) throw InvalidParameter("t ladder must be positive");
      if (i && !(t_ladder[i] > t_ladder[i - 1])) throw InvalidParameter("t ladder must be strictly ascending");
    }
    for (double c : scalars)
      if (std::abs(c) > 1.0) throw InvalidParameter("grid scalars must satisfy |c| <= 1");
    if (domain == GridDomain::Full) {
      if (std::find(points.begin(), points.end(), Point::zeros(dimension)) == points.end())
        throw InvalidParameter("grid must contain the origin");
      for (const Point& p : points)
        if (std::find(points.begin(), points.end(), -p) == points.end())
          throw InvalidParameter("grid must be closed under negation");
    }
  }

  std::string describe(double tol) const {
    return "points=" + std::to_string(points.size()) + " scalars=" + std::to_string(scalars.size()) +
           " t_ladder=" + std::to_string(t_ladder.size()) + "[" + detail::format_number(t_ladder.front()) + "," +
           detail::format_number(t_ladder.back()) + "] seed=" + std::to_string(seed) +
           " tol=" + detail::format_number(tol);
  }
};

enum class Resolution { Coarse, Default, Fine };

inline double resolution_factor(Resolution r) {
  switch (r) {
    case Resolution::Coarse: return 0.5;
    case Resolution::Default: return 1.0;
    case Resolution::Fine: return 2.0;
  }
  return 1.0;
}

/// Scales a step count, keeping both endpoints of a ladder: (n-1)·f + 1.
inline std::size_t scaled_steps(std::size_t steps, Resolution r) {
  return static_cast<std::size_t>(std::lround(static_cast<double>(steps - 1) * resolution_factor(r))) + 1;
}

struct GridOptions {
  std::size_t ladder_steps = 33;
  double t_min = 1e-4;
  double t_max = 1e4;
  std::size_t random_points = 64;  // includes negations
  double random_radius = 10.0;
  std::uint64_t seed = 42;
  Resolution resolution = Resolution::Default;

  static GridOptions at(Resolution r, std::uint64_t seed) {
    GridOptions o;
    o.resolution = r;
    o.seed = seed;
    o.ladder_steps = scaled_steps(33, r);
    o.random_points = static_cast<std::size_t>(64 * resolution_factor(r));
    return o;
  }
};

/// `steps` logarithmically spaced values from lo to hi inclusive.
inline std::vector<double> log_ladder(double lo, double hi, std::size_t steps) {
  if (steps < 2) return {lo};
  std::vector<double> out(steps);
  const double a = std::log10(lo), b = std::log10(hi);
  for (std::size_t i = 0; i < steps; ++i)
    out[i] = std::pow(10.0, a + (b - a) * static_cast<double>(i) / static_cast<double>(steps - 1));
  out.front() = lo;
  out.back() = hi;
  return out;
}

inline std::vector<double> default_scalars() { return {-1.0, -0.75, -0.5, -0.25, 0.0, 0.25, 0.5, 0.75, 1.0}; }

inline SampleGrid restrict_nonnegative(SampleGrid g) {
  std::erase_if(g.points, [](const Point& p) { return !p.nonnegative(); });
  std::erase_if(g.scalars, [](double c) { return c < 0.0; });
  g.domain = GridDomain::NonNegative;
  return g;
}

/// Default grid: coordinatewise values {0, ±0.5, ±1, ±2, ±10} (full product
/// for dimension ≤ 2, axes and diagonal above that), plus seeded random points
/// in the ball of radius 10 together with their negations.
inline SampleGrid default_grid(std::size_t dim, const GridOptions& opt = {}) {
  if (dim == 0) throw InvalidParameter("dimension must be positive");
  static constexpr double kValues[] = {0.0, 0.5, -0.5, 1.0, -1.0, 2.0, -2.0, 10.0, -10.0};
  SampleGrid g;
  g.dimension = dim;
  g.seed = opt.seed;
  g.scalars = default_scalars();
  g.t_ladder = log_ladder(opt.t_min, opt.t_max, opt.ladder_steps);

  if (dim <= 2) {
    std::vector<double> c(dim, 0.0);
    std::vector<std::size_t> idx(dim, 0);
    for (;;) {
      for (std::size_t i = 0; i < dim; ++i) c[i] = kValues[idx[i]];
      g.points.emplace_back(c);
      std::size_t k = dim;
      while (k > 0 && ++idx[k - 1] == std::size(kValues)) idx[--k] = 0;
      if (k == 0) break;
    }
  } else {
    g.points.push_back(Point::zeros(dim));
    for (std::size_t axis = 0; axis < dim; ++axis)
      for (double v : kValues)
        if (v != 0.0) g.points.push_back(v * Point::unit(dim, axis));
    for (double v : kValues)
      if (v != 0.0) g.points.push_back(Point::filled(dim, v));
  }

  std::mt19937_64 rng(opt.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (std::size_t k = 0; k < opt.random_points / 2; ++k) {
    std::vector<double> d(dim);
    double n2 = 0.0;
    do {
      n2 = 0.0;
      for (double& v : d) {
        v = normal(rng);
        n2 += v * v;
      }
    } while (n2 == 0.0);
    const double r = opt.random_radius * std::pow(unif(rng), 1.0 / static_cast<double>(dim)) / std::sqrt(n2);
    for (double& v : d) v *= r;
    Point p(d);
    g.points.push_back(p);
    g.points.push_back(-p);
  }
  return g;
}

/// Checks P.1–P.4 on the grid. P.2 is checked in both directions with
/// |‖x‖| ≤ tol ⟺ x within tol of θ (sup distance).
inline DecisionOutcome check_pseudo_norm_axioms(const PseudoNorm& p, const SampleGrid& grid, double tol = 1e-9) {
  if (grid.points.empty()) throw InvalidParameter("empty grid");
  if (grid.dimension != p.dimension) throw DimensionMismatch("grid dimension does not match pseudo norm");
  const std::string res = grid.describe(tol);

  std::vector<double> values;
  values.reserve(grid.points.size());
  for (const Point& x : grid.points) {
    const double v = p(x);
    values.push_back(v);
    if (!(v >= -tol)) return DecisionOutcome::refuted(Witness("P.1").with("x", x).with("value", v), res);
    const bool near_zero_value = std::abs(v) <= tol;
    const bool near_origin = x.sup_abs() <= tol;
    if (near_zero_value != near_origin)
      return DecisionOutcome::refuted(Witness("P.2").with("x", x).with("value", v), res);
  }
  for (std::size_t i = 0; i < grid.points.size(); ++i) {
    for (double c : grid.scalars) {
      const double v = p(c * grid.points[i]);
      if (exceeds_abs(v, values[i], tol))
        return DecisionOutcome::refuted(Witness("P.3").with("x", grid.points[i]).with("c", c).with("lhs", v).with("rhs", values[i]), res);
    }
  }
  for (std::size_t i = 0; i < grid.points.size(); ++i) {
    for (std::size_t j = i; j < grid.points.size(); ++j) {
      const double v = p(grid.points[i] + grid.points[j]);
      if (exceeds_abs(v, values[i] + values[j], tol))
        return DecisionOutcome::refuted(Witness("P.4")
                                            .with("x", grid.points[i])
                                            .with("y", grid.points[j])
                                            .with("lhs", v)
                                            .with("rhs", values[i] + values[j]),
                                        res);
    }
  }
  return DecisionOutcome::holds(res);
}

/// Re-evaluates a P.* witness; true when it still violates its axiom by more than tol.
inline bool replay_pseudo_norm_witness(const PseudoNorm& p, const Witness& w, double tol) {
  if (w.tag == "P.1") return p(w.point("x")) < -tol;
  if (w.tag == "P.2") {
    const Point& x = w.point("x");
    return (std::abs(p(x)) <= tol) != (x.sup_abs() <= tol);
  }
  if (w.tag == "P.3") {
    const Point& x = w.point("x");
    return exceeds_abs(p(w.scalar("c") * x), p(x), tol);
  }
  if (w.tag == "P.4") {
    const Point& x = w.point("x");
    const Point& y = w.point("y");
    return exceeds_abs(p(x + y), p(x) + p(y), tol);
  }
  return false;
}

}  // namespace ifpn
