#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "ifpn/errors.hpp"

namespace ifpn {

/// A point of ℝⁿ. Constructors reject NaN and infinite coordinates.
class Point {
 public:
  Point() = default;
  explicit Point(std::vector<double> coords) : coords_(std::move(coords)) { check_finite(); }
  Point(std::initializer_list<double> coords) : coords_(coords) { check_finite(); }

  static Point zeros(std::size_t dim) { return Point(std::vector<double>(dim, 0.0)); }
  static Point unit(std::size_t dim, std::size_t axis) {
    std::vector<double> c(dim, 0.0);
    c.at(axis) = 1.0;
    return Point(std::move(c));
  }
  static Point filled(std::size_t dim, double value) { return Point(std::vector<double>(dim, value)); }

  std::size_t dim() const { return coords_.size(); }
  double operator[](std::size_t i) const { return coords_[i]; }
  std::span<const double> coords() const { return coords_; }

  bool is_origin() const {
    return std::all_of(coords_.begin(), coords_.end(), [](double c) { return c == 0.0; });
  }
  double sup_abs() const {
    double m = 0.0;
    for (double c : coords_) m = std::max(m, std::abs(c));
    return m;
  }
  double euclidean() const {
    double s = 0.0;
    for (double c : coords_) s += c * c;
    return std::sqrt(s);
  }
  bool nonnegative() const {
    return std::all_of(coords_.begin(), coords_.end(), [](double c) { return c >= 0.0; });
  }

  Point& operator+=(const Point& o) {
    same_dim(o);
    for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] += o.coords_[i];
    return *this;
  }
  Point& operator-=(const Point& o) {
    same_dim(o);
    for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] -= o.coords_[i];
    return *this;
  }
  Point& operator*=(double c) {
    for (double& v : coords_) v *= c;
    return *this;
  }

  friend Point operator+(Point a, const Point& b) { return a += b; }
  friend Point operator-(Point a, const Point& b) { return a -= b; }
  friend Point operator*(double c, Point a) { return a *= c; }
  friend Point operator-(Point a) { return a *= -1.0; }
  friend bool operator==(const Point&, const Point&) = default;

  std::string to_string() const {
    std::ostringstream os;
    os.precision(17);
    os << '(';
    for (std::size_t i = 0; i < coords_.size(); ++i) os << (i ? "," : "") << coords_[i];
    os << ')';
    return os.str();
  }

 private:
  void check_finite() const {
    for (double c : coords_)
      if (!std::isfinite(c)) throw InvalidParameter("point coordinate is not finite");
  }
  void same_dim(const Point& o) const {
    if (o.dim() != dim()) throw DimensionMismatch("point dimensions differ");
  }

  std::vector<double> coords_;
};

}  // namespace ifpn
