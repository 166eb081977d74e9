#pragma once

#include <cmath>
#include <functional>
#include <string>
#include <string_view>

#include "ifpn/detail/expr.hpp"
#include "ifpn/outcome.hpp"
#include "ifpn/tolerance.hpp"
#include "ifpn/vectorspace.hpp"

namespace ifpn {

/// A map between coordinate spaces. `domain` restricts where apply is defined.
struct OperatorSpec {
  std::string name;
  std::size_t domain_dim = 1;
  std::size_t codomain_dim = 1;
  std::function<Point(const Point&)> apply;
  bool declared_linear = false;
  GridDomain domain = GridDomain::Full;

  Point operator()(const Point& x) const {
    if (x.dim() != domain_dim) throw DimensionMismatch(name + ": argument has dimension " + std::to_string(x.dim()));
    return apply(x);
  }
};

namespace detail {

inline std::size_t positive_dim(double d, const std::string& who) {
  if (!(d >= 1.0) || d != std::floor(d)) throw InvalidParameter(who + ": dimension must be a positive integer");
  return static_cast<std::size_t>(d);
}

}  // namespace detail

/// x ↦ x³/(1+x) on x ≥ 0.
inline double cubic_ratio_value(double x) {
  if (x < 0.0) throw DomainError("cubic_ratio is defined for x >= 0 only, got " + detail::format_number(x));
  return x * x * x / (1.0 + x);
}

/// Builds a builtin operator from a name expression: identity(d), zero(d),
/// scaling(d,λ), coordinate_projection(d,k) with 1-based k, cubic_ratio.
inline OperatorSpec builtin_operator(std::string_view name) {
  const detail::Expr e = detail::parse_expr(name);
  OperatorSpec op;
  if (e.head == "identity") {
    e.expect_arity(1);
    const std::size_t d = detail::positive_dim(e.number(0), e.head);
    op = {"identity(" + std::to_string(d) + ")", d, d, [](const Point& x) { return x; }, true};
  } else if (e.head == "zero") {
    e.expect_arity(1);
    const std::size_t d = detail::positive_dim(e.number(0), e.head);
    op = {"zero(" + std::to_string(d) + ")", d, d, [d](const Point&) { return Point::zeros(d); }, true};
  } else if (e.head == "scaling") {
    e.expect_arity(2);
    const std::size_t d = detail::positive_dim(e.number(0), e.head);
    const double lambda = e.number(1);
    if (!std::isfinite(lambda)) throw InvalidParameter("scaling: factor must be finite");
    op = {"scaling(" + std::to_string(d) + "," + detail::format_number(lambda) + ")", d, d,
          [lambda](const Point& x) { return lambda * x; }, true};
  } else if (e.head == "coordinate_projection") {
    e.expect_arity(2);
    const std::size_t d = detail::positive_dim(e.number(0), e.head);
    const double k = e.number(1);
    if (!(k >= 1.0 && k <= static_cast<double>(d)) || k != std::floor(k))
      throw InvalidParameter("coordinate_projection: coordinate must be an integer in 1..d");
    const auto axis = static_cast<std::size_t>(k) - 1;
    op = {"coordinate_projection(" + std::to_string(d) + "," + std::to_string(axis + 1) + ")", d, d,
          [axis](const Point& x) { return x[axis] * Point::unit(x.dim(), axis); }, true};
  } else if (e.head == "cubic_ratio") {
    e.expect_arity(0);
    op = {"cubic_ratio", 1, 1, [](const Point& x) { return Point{cubic_ratio_value(x[0])}; }, false,
          GridDomain::NonNegative};
  } else {
    throw UnknownName(e.head);
  }
  if (op.declared_linear && !op(Point::zeros(op.domain_dim)).is_origin())
    throw InvalidParameter(op.name + ": declared linear but does not fix the origin");
  return op;
}

/// The default grid restricted to where the operator is defined.
inline SampleGrid operator_grid(const OperatorSpec& op, const GridOptions& opts = {}) {
  SampleGrid g = default_grid(op.domain_dim, opts);
  return op.domain == GridDomain::NonNegative ? restrict_nonnegative(std::move(g)) : g;
}

namespace detail {

inline bool points_differ(const Point& a, const Point& b, double tol) {
  for (std::size_t i = 0; i < a.dim(); ++i)
    if (std::abs(a[i] - b[i]) > tol * std::max({1.0, std::abs(a[i]), std::abs(b[i])})) return true;
  return false;
}

}  // namespace detail

/// Checks additivity over all unordered grid pairs and homogeneity over grid
/// points × scalars. Coordinates are compared with tolerance tol·max(1,|a|,|b|).
inline DecisionOutcome check_linearity(const OperatorSpec& op, const SampleGrid& grid, double tol = 1e-9) {
  if (grid.dimension != op.domain_dim) throw DimensionMismatch("grid dimension does not match operator domain");
  if (grid.points.empty()) throw InvalidParameter("empty grid");
  const std::string res = grid.describe(tol);
  const auto& pts = grid.points;
  std::vector<Point> images;
  images.reserve(pts.size());
  for (const Point& x : pts) images.push_back(op(x));

  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i; j < pts.size(); ++j) {
      if (detail::points_differ(op(pts[i] + pts[j]), images[i] + images[j], tol))
        return DecisionOutcome::refuted(Witness("additivity").with("x", pts[i]).with("y", pts[j]).with("c", 1.0), res);
    }
    for (double c : grid.scalars) {
      if (grid.domain == GridDomain::NonNegative && c < 0.0) continue;
      if (detail::points_differ(op(c * pts[i]), c * images[i], tol))
        return DecisionOutcome::refuted(Witness("homogeneity").with("x", pts[i]).with("y", pts[i]).with("c", c), res);
    }
  }
  return DecisionOutcome::holds(res);
}

inline bool replay_linearity_witness(const OperatorSpec& op, const Witness& w, double tol) {
  const Point& x = w.point("x");
  if (w.tag == "additivity") return detail::points_differ(op(x + w.point("y")), op(x) + op(w.point("y")), tol);
  if (w.tag == "homogeneity") return detail::points_differ(op(w.scalar("c") * x), w.scalar("c") * op(x), tol);
  return false;
}

}  // namespace ifpn
