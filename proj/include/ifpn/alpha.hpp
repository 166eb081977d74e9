#pragma once

#include <cmath>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "ifpn/ifpn.hpp"
#include "ifpn/outcome.hpp"
#include "ifpn/vectorspace.hpp"

namespace ifpn {

struct BisectionOptions {
  double bracket_cap = 1e6;
  double bisect_tol = 1e-9;
  double growth = 2.0;
};

namespace detail {

// inf{t > 0 : pred(t)} for a predicate that is monotone (false then true) in t.
// Returns a t where pred holds, within opts.bisect_tol of the infimum.
template <class Pred>
double monotone_infimum(Pred&& pred, const BisectionOptions& opts, const char* what) {
  if (pred(std::numeric_limits<double>::min())) return 0.0;
  double lo = 0.0, hi = 1.0;
  while (!pred(hi)) {
    lo = hi;
    if (hi >= opts.bracket_cap) throw BracketExceeded(std::string(what) + ": no t <= bracket cap satisfies the cut");
    hi = std::min(hi * opts.growth, opts.bracket_cap);
  }
  while (hi - lo > opts.bisect_tol) {
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) break;
    (pred(mid) ? hi : lo) = mid;
  }
  return hi;
}

inline void check_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw InvalidParameter("alpha must lie in (0,1)");
}

}  // namespace detail

/// ‖x‖_α = inf{t > 0 : μ(x,t) ≥ α}, by doubling then bisection.
inline double alpha_norm(const IfpnPair& f, const Point& x, double alpha, const BisectionOptions& opts = {}) {
  detail::check_alpha(alpha);
  return detail::monotone_infimum([&](double t) { return f.mu(x, t) >= alpha; }, opts, "alpha_norm");
}

/// ‖x‖*_α = inf{t > 0 : ν(x,t) ≤ α}.
inline double alpha_conorm(const IfpnPair& f, const Point& x, double alpha, const BisectionOptions& opts = {}) {
  detail::check_alpha(alpha);
  return detail::monotone_infimum([&](double t) { return f.nu(x, t) <= alpha; }, opts, "alpha_conorm");
}

/// The ascending family ‖·‖_α and descending family ‖·‖*_α of a pair.
class AlphaFamily {
 public:
  explicit AlphaFamily(IfpnPair source, BisectionOptions opts = {}) : source_(std::move(source)), opts_(opts) {}

  double ascending(const Point& x, double alpha) const { return alpha_norm(source_, x, alpha, opts_); }
  double descending(const Point& x, double alpha) const { return alpha_conorm(source_, x, alpha, opts_); }

  const IfpnPair& source() const { return source_; }
  const BisectionOptions& options() const { return opts_; }

  PseudoNorm ascending_slice(double alpha) const {
    return {"asc[" + detail::format_number(alpha) + "]" + source_.name, source_.dimension,
            [fam = *this, alpha](const Point& x) { return fam.ascending(x, alpha); }};
  }
  PseudoNorm descending_slice(double alpha) const {
    return {"desc[" + detail::format_number(alpha) + "]" + source_.name, source_.dimension,
            [fam = *this, alpha](const Point& x) { return fam.descending(x, alpha); }};
  }

 private:
  IfpnPair source_;
  BisectionOptions opts_;
};

/// Checks that every α-slice of both families is a pseudo norm on the grid and
/// that the families are ascending resp. descending in α.
inline DecisionOutcome check_family(const AlphaFamily& fam, const SampleGrid& grid, std::span<const double> alpha_grid) {
  if (grid.points.empty() || alpha_grid.empty()) throw InvalidParameter("empty grid");
  const double tol = 4.0 * fam.options().bisect_tol;
  const std::string res = grid.describe(tol) + " alphas=" + std::to_string(alpha_grid.size());

  for (double a : alpha_grid) {
    for (int side = 0; side < 2; ++side) {
      const PseudoNorm slice = side == 0 ? fam.ascending_slice(a) : fam.descending_slice(a);
      DecisionOutcome o = check_pseudo_norm_axioms(slice, grid, tol);
      if (o.is(Verdict::Refuted)) {
        Witness w = *o.witness;
        w.with("alpha", a).labelled(side == 0 ? "ascending" : "descending");
        return DecisionOutcome::refuted(std::move(w), res);
      }
    }
  }

  for (const Point& x : grid.points) {
    std::vector<double> asc, desc;
    for (double a : alpha_grid) {
      asc.push_back(fam.ascending(x, a));
      desc.push_back(fam.descending(x, a));
    }
    for (std::size_t i = 0; i < alpha_grid.size(); ++i) {
      for (std::size_t j = i + 1; j < alpha_grid.size(); ++j) {
        if (alpha_grid[i] > alpha_grid[j]) continue;
        if (asc[i] > asc[j] + tol)
          return DecisionOutcome::refuted(
              Witness("ascending").with("x", x).with("alpha1", alpha_grid[i]).with("alpha2", alpha_grid[j]), res);
        if (desc[i] < desc[j] - tol)
          return DecisionOutcome::refuted(
              Witness("descending").with("x", x).with("alpha1", alpha_grid[i]).with("alpha2", alpha_grid[j]), res);
      }
    }
  }
  return DecisionOutcome::holds(res);
}

/// Rebuilds (μ′, ν′) from the families:
/// μ′(x,t) = sup{α : ‖x‖_α ≤ t}, ν′(x,t) = inf{α : ‖x‖*_α ≤ t} for t > 0.
/// Both are bisections in α, relying on the families' monotonicity.
inline IfpnPair reconstruct(const AlphaFamily& fam) {
  IfpnPair r;
  r.name = "reconstructed(" + fam.source().name + ")";
  r.dimension = fam.source().dimension;
  r.jumps = fam.source().jumps;
  const double tol = fam.options().bisect_tol;
  r.mu = [fam, tol](const Point& x, double t) {
    if (t <= 0.0) return 0.0;
    double lo = 0.0, hi = 1.0;
    while (hi - lo > tol) {
      const double mid = 0.5 * (lo + hi);
      (fam.ascending(x, mid) <= t ? lo : hi) = mid;
    }
    return lo;
  };
  r.nu = [fam, tol](const Point& x, double t) {
    if (t <= 0.0) return 1.0;
    double lo = 0.0, hi = 1.0;
    while (hi - lo > tol) {
      const double mid = 0.5 * (lo + hi);
      (fam.descending(x, mid) <= t ? hi : lo) = mid;
    }
    return hi;
  };
  return r;
}

/// Compares (μ′, ν′) with (μ, ν) at every grid point and ladder t, skipping
/// t within tol of a jump of μ(x,·).
inline DecisionOutcome roundtrip_check(const IfpnPair& f, const SampleGrid& grid, double tol,
                                       const BisectionOptions& opts = {}) {
  const IfpnPair back = reconstruct(AlphaFamily(f, opts));
  std::size_t excluded = 0;
  for (const Point& x : grid.points) {
    const std::vector<double> jumps = f.jumps ? f.jumps(x) : std::vector<double>{};
    for (double t : grid.t_ladder) {
      bool near_jump = false;
      for (double j : jumps) near_jump = near_jump || std::abs(t - j) <= tol;
      if (near_jump) {
        ++excluded;
        continue;
      }
      const double m = f.mu(x, t), mp = back.mu(x, t);
      const double n = f.nu(x, t), np = back.nu(x, t);
      if (std::abs(m - mp) > tol || std::abs(n - np) > tol) {
        return DecisionOutcome::refuted(Witness(std::abs(m - mp) > tol ? "mu" : "nu")
                                            .with("x", x)
                                            .with("t", t)
                                            .with("mu", m)
                                            .with("mu_prime", mp)
                                            .with("nu", n)
                                            .with("nu_prime", np),
                                        grid.describe(tol) + " jump_band_excluded=" + std::to_string(excluded));
      }
    }
  }
  return DecisionOutcome::holds(grid.describe(tol) + " jump_band_excluded=" + std::to_string(excluded));
}

/// Spot-checks the cut correspondence between a pair and its families over
/// grid points × ladder × alpha_grid, with slack tol on both sides:
///   ‖x‖_α ≤ t  ⟹ μ(x, t+tol) ≥ α − tol,   μ(x,t) ≥ α ⟹ ‖x‖_α ≤ t + tol,
///   ‖x‖*_α ≤ t ⟹ ν(x, t+tol) ≤ α + tol,   ν(x,t) ≤ α ⟹ ‖x‖*_α ≤ t + tol.
inline DecisionOutcome check_galois(const IfpnPair& f, const SampleGrid& grid, std::span<const double> alpha_grid,
                                    double tol, const BisectionOptions& opts = {}) {
  const std::string res = grid.describe(tol) + " alphas=" + std::to_string(alpha_grid.size());
  auto fail = [&](const char* tag, const Point& x, double a, double t, double cut) {
    return DecisionOutcome::refuted(Witness(tag).with("x", x).with("alpha", a).with("t", t).with("cut", cut), res);
  };
  for (const Point& x : grid.points) {
    for (double a : alpha_grid) {
      const double asc = alpha_norm(f, x, a, opts), desc = alpha_conorm(f, x, a, opts);
      for (double t : grid.t_ladder) {
        if (asc <= t && f.mu(x, t + tol) < a - tol) return fail("galois.mu.cut", x, a, t, asc);
        if (f.mu(x, t) >= a && asc > t + tol) return fail("galois.mu.level", x, a, t, asc);
        if (desc <= t && f.nu(x, t + tol) > a + tol) return fail("galois.nu.cut", x, a, t, desc);
        if (f.nu(x, t) <= a && desc > t + tol) return fail("galois.nu.level", x, a, t, desc);
      }
    }
  }
  return DecisionOutcome::holds(res);
}

}  // namespace ifpn
