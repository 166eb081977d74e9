#pragma once

#include <algorithm>
#include <cmath>

namespace ifpn {

// Absolute comparisons, used where a fixed band is meaningful (axiom sweeps,
// values in [0,1] compared against 0 or 1).
inline bool exceeds_abs(double a, double b, double tol) { return a - b > tol; }

// Scale-aware comparison: a is definitely greater than b when the gap exceeds
// tol relative to the larger magnitude. Membership degrees far from θ become
// tiny (1e-20 and below), and an absolute band would swallow every violation
// there.
inline bool definitely_greater(double a, double b, double tol) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return a - b > tol * scale;
}

inline bool approx_ge(double a, double b, double tol) { return !definitely_greater(b, a, tol); }
inline bool approx_le(double a, double b, double tol) { return !definitely_greater(a, b, tol); }

}  // namespace ifpn
