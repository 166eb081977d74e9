#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "ifpn/point.hpp"

namespace testing_support {

// Hand-rolled generators for property tests. Magnitudes are log-uniform so
// that tiny and large coordinates both show up.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  double magnitude(double lo = 1e-6, double hi = 1e3) {
    std::uniform_real_distribution<double> u(std::log(lo), std::log(hi));
    return std::exp(u(rng_));
  }
  double signed_value() { return (coin() ? 1.0 : -1.0) * magnitude(); }
  double scalar_in_unit() { return std::uniform_real_distribution<double>(-1.0, 1.0)(rng_); }
  double alpha() { return std::uniform_real_distribution<double>(0.01, 0.99)(rng_); }
  double positive_t() { return magnitude(1e-4, 1e4); }
  bool coin() { return std::bernoulli_distribution(0.5)(rng_); }

  ifpn::Point point(std::size_t dim) {
    std::vector<double> c(dim);
    for (double& v : c) v = coin() && coin() ? 0.0 : signed_value();
    return ifpn::Point(std::move(c));
  }

 private:
  std::mt19937_64 rng_;
};

// The standard pair written out from its defining cases.
inline double mu_oracle(double a, double t) { return t <= 0 ? 0.0 : (a < t ? 1.0 : t / (t + a)); }
inline double nu_oracle(double a, double t) { return t <= 0 ? 1.0 : (a < t ? 0.0 : a / (t + a)); }

}  // namespace testing_support
