#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ifpn/outcome.hpp"
#include "ifpn/tolerance.hpp"
#include "ifpn/vectorspace.hpp"

namespace ifpn {

/// A membership/non-membership pair (μ, ν) on ℝⁿ × ℝ claimed to be an IFPN.
/// `jumps`, when set, lists the t-abscissae where μ(x,·) is discontinuous.
struct IfpnPair {
  std::string name;
  std::size_t dimension = 1;
  std::function<double(const Point&, double)> mu;
  std::function<double(const Point&, double)> nu;
  std::function<std::vector<double>(const Point&)> jumps;
};

/// The standard pair over a pseudo norm: μ = 1 below the norm, t/(t+‖x‖) at
/// or above it, 0 for t ≤ 0; ν is the complement on t > 0 and 1 for t ≤ 0.
inline IfpnPair standard_ifpn(const PseudoNorm& p) {
  IfpnPair f;
  f.name = "standard(" + p.name + ")";
  f.dimension = p.dimension;
  f.mu = [n = p.eval](const Point& x, double t) {
    if (t <= 0.0) return 0.0;
    const double a = n(x);
    return a < t ? 1.0 : t / (t + a);
  };
  f.nu = [n = p.eval](const Point& x, double t) {
    if (t <= 0.0) return 1.0;
    const double a = n(x);
    return a < t ? 0.0 : a / (t + a);
  };
  f.jumps = [n = p.eval](const Point& x) { return std::vector<double>{n(x)}; };
  return f;
}

// Deliberately broken pairs, used to exercise the axiom checker.

inline IfpnPair mu_offset(IfpnPair f, double amount) {
  f.name += "+mu_offset(" + detail::format_number(amount) + ")";
  f.mu = [m = f.mu, amount](const Point& x, double t) { return m(x, t) + amount; };
  return f;
}

inline IfpnPair nu_scaled(IfpnPair f, double factor) {
  f.name += "+nu_scale(" + detail::format_number(factor) + ")";
  f.nu = [n = f.nu, factor](const Point& x, double t) { return factor * n(x, t); };
  return f;
}

/// The standard pair with the branch condition swapped (‖x‖ < t ↔ ‖x‖ ≥ t).
inline IfpnPair branch_swapped_ifpn(const PseudoNorm& p) {
  IfpnPair f;
  f.name = "branch_swapped(" + p.name + ")";
  f.dimension = p.dimension;
  f.mu = [n = p.eval](const Point& x, double t) {
    if (t <= 0.0) return 0.0;
    const double a = n(x);
    return a >= t ? 1.0 : t / (t + a);
  };
  f.nu = [n = p.eval](const Point& x, double t) {
    if (t <= 0.0) return 1.0;
    const double a = n(x);
    return a >= t ? 0.0 : a / (t + a);
  };
  return f;
}

/// Adds `amount` to μ at the single sample (x, t), leaving every other value intact.
inline IfpnPair perturbed_at(IfpnPair f, Point at_x, double at_t, double amount) {
  f.name += "+perturbed";
  f.mu = [m = f.mu, at_x = std::move(at_x), at_t, amount](const Point& x, double t) {
    const double v = m(x, t);
    return (t == at_t && x == at_x) ? v + amount : v;
  };
  return f;
}

inline std::vector<double> default_axiom_alpha_grid() {
  std::vector<double> a;
  for (int k = 1; k <= 19; ++k) a.push_back(0.05 * k);
  return a;
}

namespace detail {

// Log ladder from 1e-8 up to the top of the grid ladder at the grid's density,
// used for IFP.3/IFP.7 style existence probes. Witnesses store its endpoints
// and length so replays rebuild the identical ladder.
inline std::vector<double> extended_small_ladder(const SampleGrid& grid) {
  const auto& lad = grid.t_ladder;
  const double lo = 1e-8, hi = lad.back();
  const double per_decade =
      lad.size() > 1 ? static_cast<double>(lad.size() - 1) / std::log10(hi / lad.front()) : 4.0;
  const auto steps = static_cast<std::size_t>(std::lround(std::log10(hi / lo) * per_decade)) + 1;
  return log_ladder(lo, hi, std::max<std::size_t>(steps, 2));
}

inline Witness with_ladder(Witness w, const std::vector<double>& lad) {
  return w.with("t_lo", lad.front()).with("t_hi", lad.back()).with("t_steps", static_cast<double>(lad.size()));
}

}  // namespace detail

/// Checks IFP.1–IFP.15 on the grid. Limits at infinity (IFP.6/13) and left
/// continuity (IFP.8/15) can only fail as Inconclusive.
inline DecisionOutcome check_ifpn_axioms(const IfpnPair& f, const SampleGrid& grid,
                                         std::span<const double> alpha_grid, double tol = 1e-9) {
  grid.validate();
  if (alpha_grid.empty()) throw InvalidParameter("alpha grid is empty");
  for (double a : alpha_grid)
    if (!(a > 0.0 && a < 1.0)) throw InvalidParameter("alpha grid values must lie in (0,1)");
  if (grid.dimension != f.dimension) throw DimensionMismatch("grid dimension does not match pair");

  const std::string res = grid.describe(tol) + " alphas=" + std::to_string(alpha_grid.size());
  const auto& pts = grid.points;
  const auto& lad = grid.t_ladder;

  auto refuted = [&](Witness w) { return DecisionOutcome::refuted(std::move(w), res); };

  // IFP.1 (with the [0,1] range) and IFP.2/IFP.9.
  for (const Point& x : pts) {
    for (double t : {-1.0, 0.0}) {
      const double m = f.mu(x, t), n = f.nu(x, t);
      if (std::abs(m) > tol) return refuted(Witness("IFP.2").with("x", x).with("t", t).with("mu", m));
      if (std::abs(n - 1.0) > tol) return refuted(Witness("IFP.9").with("x", x).with("t", t).with("nu", n));
    }
    for (double t : lad) {
      const double m = f.mu(x, t), n = f.nu(x, t);
      if (m < -tol || m > 1.0 + tol || n < -tol || n > 1.0 + tol || m + n > 1.0 + tol)
        return refuted(Witness("IFP.1").with("x", x).with("t", t).with("mu", m).with("nu", n));
    }
  }

  const std::vector<double> small = detail::extended_small_ladder(grid);

  // IFP.3/IFP.10: value 1 (resp. 0) for every t > 0 exactly at θ.
  for (const Point& x : pts) {
    if (x.sup_abs() <= tol) {
      for (double t : lad) {
        if (f.mu(x, t) < 1.0 - tol) return refuted(Witness("IFP.3").with("x", x).with("t", t).labelled("origin"));
        if (f.nu(x, t) > tol) return refuted(Witness("IFP.10").with("x", x).with("t", t).labelled("origin"));
      }
      continue;
    }
    bool mu_dips = false, nu_rises = false;
    for (double t : small) {
      mu_dips = mu_dips || f.mu(x, t) < 1.0 - tol;
      nu_rises = nu_rises || f.nu(x, t) > tol;
    }
    if (!mu_dips) return refuted(detail::with_ladder(Witness("IFP.3").with("x", x), small).labelled("nonorigin"));
    if (!nu_rises) return refuted(detail::with_ladder(Witness("IFP.10").with("x", x), small).labelled("nonorigin"));
  }

  // IFP.4/IFP.11.
  for (const Point& x : pts) {
    for (double c : grid.scalars) {
      const Point cx = c * x;
      for (double t : lad) {
        if (exceeds_abs(f.mu(x, t), f.mu(cx, t), tol))
          return refuted(Witness("IFP.4").with("x", x).with("c", c).with("t", t));
        if (exceeds_abs(f.nu(cx, t), f.nu(x, t), tol))
          return refuted(Witness("IFP.11").with("x", x).with("c", c).with("t", t));
      }
    }
  }

  // IFP.5/IFP.12 with min/max aggregation. The pair (x,s),(y,t) is symmetric,
  // so unordered point pairs with all ordered ladder pairs cover every case.
  {
    const std::size_t L = lad.size();
    std::vector<double> mu_tab(pts.size() * L), nu_tab(pts.size() * L);
    for (std::size_t i = 0; i < pts.size(); ++i)
      for (std::size_t k = 0; k < L; ++k) {
        mu_tab[i * L + k] = f.mu(pts[i], lad[k]);
        nu_tab[i * L + k] = f.nu(pts[i], lad[k]);
      }
    for (std::size_t i = 0; i < pts.size(); ++i) {
      for (std::size_t j = i; j < pts.size(); ++j) {
        const Point sum = pts[i] + pts[j];
        for (std::size_t a = 0; a < L; ++a) {
          for (std::size_t b = 0; b < L; ++b) {
            const double st = lad[a] + lad[b];
            const double lo = std::min(mu_tab[i * L + a], mu_tab[j * L + b]);
            if (exceeds_abs(lo, f.mu(sum, st), tol))
              return refuted(Witness("IFP.5").with("x", pts[i]).with("y", pts[j]).with("s", lad[a]).with("t", lad[b]));
            const double hi = std::max(nu_tab[i * L + a], nu_tab[j * L + b]);
            if (exceeds_abs(f.nu(sum, st), hi, tol))
              return refuted(Witness("IFP.12").with("x", pts[i]).with("y", pts[j]).with("s", lad[a]).with("t", lad[b]));
          }
        }
      }
    }
  }

  // IFP.7/IFP.14, contrapositive: away from θ, μ dips to every α and ν rises
  // to every α somewhere on the small-t ladder. Non-strict bands of width tol.
  for (const Point& x : pts) {
    if (x.sup_abs() <= tol) continue;
    double mu_min = 1.0, nu_max = 0.0;
    for (double t : small) {
      mu_min = std::min(mu_min, f.mu(x, t));
      nu_max = std::max(nu_max, f.nu(x, t));
    }
    for (double a : alpha_grid) {
      if (mu_min > a + tol) return refuted(detail::with_ladder(Witness("IFP.7").with("x", x).with("alpha", a), small));
      if (nu_max < a - tol) return refuted(detail::with_ladder(Witness("IFP.14").with("x", x).with("alpha", a), small));
    }
  }

  std::vector<std::string> open;

  // IFP.6/IFP.13 at the top of the ladder.
  const double top = lad.back();
  for (const Point& x : pts) {
    if (f.mu(x, top) < 1.0 - tol || f.nu(x, top) > tol) {
      open.push_back("IFP.6/IFP.13: limit not attained at t=" + detail::format_number(top) + " for x=" + x.to_string());
      break;
    }
  }

  // IFP.8/IFP.15: one-sided differences with relative steps 1e-3 and 1e-6.
  bool left_ok = true;
  for (const Point& x : pts) {
    for (double t : lad) {
      for (const auto& g : {f.mu, f.nu}) {
        const double v = g(x, t);
        const double d_large = std::abs(v - g(x, t * (1.0 - 1e-3)));
        const double d_small = std::abs(v - g(x, t * (1.0 - 1e-6)));
        if (!(d_small <= 1e-4 || d_small <= 0.01 * d_large)) {
          open.push_back("IFP.8/IFP.15: left difference does not shrink at x=" + x.to_string() +
                         " t=" + detail::format_number(t));
          left_ok = false;
          break;
        }
      }
      if (!left_ok) break;
    }
    if (!left_ok) break;
  }

  if (!open.empty()) {
    std::string note;
    for (const auto& s : open) note += (note.empty() ? "" : "; ") + s;
    return DecisionOutcome::inconclusive(note, res);
  }
  return DecisionOutcome::holds(res);
}

/// Re-evaluates an IFP.* witness; true when the violation is still present.
inline bool replay_ifpn_witness(const IfpnPair& f, const Witness& w, double tol) {
  auto ladder = [&w] {
    return log_ladder(w.scalar("t_lo"), w.scalar("t_hi"), static_cast<std::size_t>(w.scalar("t_steps")));
  };
  const std::string& tag = w.tag;
  if (tag == "IFP.1") {
    const double m = f.mu(w.point("x"), w.scalar("t")), n = f.nu(w.point("x"), w.scalar("t"));
    return m < -tol || m > 1.0 + tol || n < -tol || n > 1.0 + tol || m + n > 1.0 + tol;
  }
  if (tag == "IFP.2") return std::abs(f.mu(w.point("x"), w.scalar("t"))) > tol;
  if (tag == "IFP.9") return std::abs(f.nu(w.point("x"), w.scalar("t")) - 1.0) > tol;
  if (tag == "IFP.3" || tag == "IFP.10") {
    const bool is_mu = tag == "IFP.3";
    const Point& x = w.point("x");
    if (w.label == "origin")
      return is_mu ? f.mu(x, w.scalar("t")) < 1.0 - tol : f.nu(x, w.scalar("t")) > tol;
    for (double t : ladder())
      if (is_mu ? f.mu(x, t) < 1.0 - tol : f.nu(x, t) > tol) return false;
    return true;
  }
  if (tag == "IFP.4" || tag == "IFP.11") {
    const Point& x = w.point("x");
    const Point cx = w.scalar("c") * x;
    const double t = w.scalar("t");
    return tag == "IFP.4" ? exceeds_abs(f.mu(x, t), f.mu(cx, t), tol) : exceeds_abs(f.nu(cx, t), f.nu(x, t), tol);
  }
  if (tag == "IFP.5" || tag == "IFP.12") {
    const Point& x = w.point("x");
    const Point& y = w.point("y");
    const double s = w.scalar("s"), t = w.scalar("t");
    if (tag == "IFP.5") return exceeds_abs(std::min(f.mu(x, s), f.mu(y, t)), f.mu(x + y, s + t), tol);
    return exceeds_abs(f.nu(x + y, s + t), std::max(f.nu(x, s), f.nu(y, t)), tol);
  }
  if (tag == "IFP.7" || tag == "IFP.14") {
    const Point& x = w.point("x");
    const double a = w.scalar("alpha");
    for (double t : ladder())
      if (tag == "IFP.7" ? f.mu(x, t) <= a + tol : f.nu(x, t) >= a - tol) return false;
    return true;
  }
  return false;
}

/// A sequence n ↦ terms(n), n ≥ 1, with the limit it is claimed to converge to.
struct SequenceSpec {
  std::string name;
  std::function<Point(std::uint64_t)> terms;
  Point declared_limit;
};

/// Checks μ(aₙ−a,t) ≥ 1−tol and ν(aₙ−a,t) ≤ tol for every ladder t and every
/// n in the final quarter of 1..tail. A failure whose deviation is still
/// shrinking between n = tail/4 and n = tail is reported as Inconclusive.
inline DecisionOutcome check_convergence(const IfpnPair& f, const SequenceSpec& s, std::uint64_t tail, double tol,
                                         std::span<const double> t_ladder) {
  if (tail < 10) throw InvalidParameter("convergence tail must be at least 10");
  if (t_ladder.empty()) throw InvalidParameter("t ladder is empty");
  const std::string res = "sequence=" + s.name + " tail=" + std::to_string(tail) +
                          " t_ladder=" + std::to_string(t_ladder.size()) + "[" +
                          detail::format_number(t_ladder.front()) + "," + detail::format_number(t_ladder.back()) +
                          "] tol=" + detail::format_number(tol);
  auto deviation = [&](std::uint64_t n, double t) {
    const Point d = s.terms(n) - s.declared_limit;
    return std::max(1.0 - f.mu(d, t), f.nu(d, t));
  };
  const std::uint64_t first = tail - tail / 4 + 1;
  for (std::uint64_t n = first; n <= tail; ++n) {
    const Point d = s.terms(n) - s.declared_limit;
    for (double t : t_ladder) {
      if (f.mu(d, t) >= 1.0 - tol && f.nu(d, t) <= tol) continue;
      const double early = deviation(std::max<std::uint64_t>(1, tail / 4), t);
      const double late = deviation(tail, t);
      if (late < 0.99 * early)
        return DecisionOutcome::inconclusive("deviation still shrinking at t=" + detail::format_number(t) + " (" +
                                                 detail::format_number(early) + " -> " + detail::format_number(late) +
                                                 ")",
                                             res);
      return DecisionOutcome::refuted(Witness("convergence")
                                          .with("n", static_cast<double>(n))
                                          .with("t", t)
                                          .with("deviation", deviation(n, t))
                                          .labelled(s.name),
                                      res);
    }
  }
  return DecisionOutcome::holds(res);
}

}  // namespace ifpn
