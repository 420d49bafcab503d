#pragma once

// Closed-form threshold quantities for Y_d(n, c/n).
//
// phi(t) = (d+1)(1-t) + (1+dt) ln t      vanishes once in (0,1), at t_star
// psi(t) = -ln t / (1-t)^d               has a unique minimum in (0,1), at t_psi
// c_star = psi(t_star)                   homology threshold
// c_col  = psi(t_psi)                    collapsibility threshold
//
// Every root is found by bisection on a monotone branch. Small t is handled in log(t) and
// powers (1-t)^k go through log1p, so large d does not underflow the intermediate terms.
// For d above roughly 700, t_star itself is below the double range; instantiate with
// long double there, or use log_t_star / log10_gap_c_star which work in any precision.

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "rsc/errors.hpp"

namespace rsc {

template <typename Scalar = double>
struct ThresholdReport {
  int d = 0;
  Scalar t_star{};
  Scalar c_star{};
  Scalar t_psi{};
  Scalar c_col{};
  // Present only when a density query c was supplied.
  std::optional<Scalar> c;
  std::optional<Scalar> t_c;
  std::optional<Scalar> g;
  std::optional<Scalar> g_prime;
  std::optional<Scalar> shadow_density;
  std::optional<Scalar> kernel_bound;
};

namespace detail {

inline void require_dimension(int d) {
  if (d < 2) throw std::domain_error("dimension d must be >= 2, got " + std::to_string(d));
}

template <typename Scalar>
void require_open_unit(Scalar t) {
  if (!(t > Scalar(0) && t < Scalar(1))) throw std::domain_error("t must lie in (0,1)");
}

// (1-t)^k without forming (1-t)^k for tiny t or huge k.
template <typename Scalar>
Scalar pow_one_minus(Scalar t, Scalar k) {
  using std::exp;
  using std::log1p;
  return exp(k * log1p(-t));
}

// Bisection on [lo, hi] where f changes sign exactly once. `positive_at_lo` gives the sign
// on the left so the endpoints never need to be evaluated. Runs to machine precision.
template <typename Scalar, typename F>
Scalar bisect(F&& f, Scalar lo, Scalar hi, bool positive_at_lo) {
  for (int it = 0; it < 4000; ++it) {
    const Scalar mid = lo + (hi - lo) / 2;
    if (!(mid > lo && mid < hi)) break;
    const Scalar fm = f(mid);
    if (fm == Scalar(0)) return mid;
    if ((fm > Scalar(0)) == positive_at_lo) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo + (hi - lo) / 2;
}

// Root of psi(t) = c on the decreasing branch (0, exp(log_hi)), returned as log t.
// Requires psi(exp(log_hi)) < c. Valid for d = 1 as well (there log_hi = 0).
template <typename Scalar>
Scalar log_lower_branch_root(int d, Scalar c, Scalar log_hi) {
  using std::exp;
  using std::log1p;
  // sign(psi(t) - c) = sign(-ln t - c (1-t)^d); positive once -u > c.
  auto excess = [&](Scalar u) { return -u - c * exp(Scalar(d) * log1p(-exp(u))); };
  return bisect<Scalar>(excess, -(c + Scalar(1)), log_hi, true);
}

}  // namespace detail

template <typename Scalar = double>
Scalar phi(int d, Scalar t) {
  using std::log;
  detail::require_dimension(d);
  detail::require_open_unit(t);
  return Scalar(d + 1) * (Scalar(1) - t) + (Scalar(1) + Scalar(d) * t) * log(t);
}

template <typename Scalar = double>
Scalar psi(int d, Scalar t) {
  using std::log;
  detail::require_dimension(d);
  detail::require_open_unit(t);
  return -log(t) / detail::pow_one_minus(t, Scalar(d));
}

/// Numerator of -psi'(t): 1 - t + d t ln t. Vanishes at t_psi.
template <typename Scalar = double>
Scalar psi_slope_numerator(int d, Scalar t) {
  using std::log;
  detail::require_dimension(d);
  detail::require_open_unit(t);
  return Scalar(1) - t + Scalar(d) * t * log(t);
}

template <typename Scalar = double>
Scalar log_t_psi(int d) {
  using std::exp;
  using std::expm1;
  using std::log;
  detail::require_dimension(d);
  auto q = [d](Scalar u) { return -expm1(u) + Scalar(d) * exp(u) * u; };
  return detail::bisect<Scalar>(q, Scalar(-60), log(Scalar(0.5)), true);
}

template <typename Scalar = double>
Scalar t_psi(int d) {
  using std::exp;
  return exp(log_t_psi<Scalar>(d));
}

template <typename Scalar = double>
Scalar c_col(int d) {
  return psi<Scalar>(d, t_psi<Scalar>(d));
}

template <typename Scalar = double>
Scalar log_t_star(int d) {
  using std::exp;
  using std::expm1;
  detail::require_dimension(d);
  // phi in u = ln t; negative as u -> -inf, positive at t_psi where phi peaks.
  auto f = [d](Scalar u) {
    return -Scalar(d + 1) * expm1(u) + (Scalar(1) + Scalar(d) * exp(u)) * u;
  };
  return detail::bisect<Scalar>(f, -Scalar(d + 1) - Scalar(40), log_t_psi<Scalar>(d), false);
}

template <typename Scalar = double>
Scalar t_star(int d) {
  using std::exp;
  return exp(log_t_star<Scalar>(d));
}

template <typename Scalar = double>
Scalar c_star(int d) {
  using std::exp;
  const Scalar u = log_t_star<Scalar>(d);
  return -u / detail::pow_one_minus(exp(u), Scalar(d));
}

/// log10((d+1) - c_star(d)), accurate even when the gap is far below the scalar's range.
template <typename Scalar = double>
Scalar log10_gap_c_star(int d) {
  using std::exp;
  using std::expm1;
  using std::log;
  using std::log10;
  using std::log1p;
  const Scalar u = log_t_star<Scalar>(d);
  const Scalar t = exp(u);
  const Scalar dd = Scalar(d);
  // phi(t*) = 0 gives c* = (d+1)(1-t)^(1-d) / (1+dt), so
  // (d+1) - c* = (d+1) t r / (1+dt) with r = ((1+dt) - (1-t)^(1-d)) / t.
  Scalar r;
  if (t < Scalar(1e-8)) {
    r = Scalar(1) - dd * (dd - Scalar(1)) * t / Scalar(2);
  } else {
    r = dd - expm1((Scalar(1) - dd) * log1p(-t)) / t;
  }
  return log10(Scalar(d + 1)) + u / log(Scalar(10)) + log10(r) - log10(Scalar(1) + dd * t);
}

/// All roots of t = exp(-c(1-t)^d) in (0,1], ascending; always ends with 1.
template <typename Scalar = double>
std::vector<Scalar> fixed_points(int d, Scalar c) {
  using std::abs;
  using std::exp;
  using std::log1p;
  using std::pow;
  detail::require_dimension(d);
  if (!(c > Scalar(0))) throw std::domain_error("c must be positive");
  const Scalar lt_psi = log_t_psi<Scalar>(d);
  const Scalar tp = exp(lt_psi);
  const Scalar cc = psi<Scalar>(d, tp);
  const Scalar tangency_tol = Scalar(1e-9);
  if (abs(c - cc) <= tangency_tol) return {tp, Scalar(1)};
  if (c < cc) return {Scalar(1)};

  const Scalar lower = exp(detail::log_lower_branch_root<Scalar>(d, c, lt_psi));
  // Increasing branch, parametrised by s = 1 - t so roots near 1 keep full precision.
  auto excess = [&](Scalar s) { return -log1p(-s) - c * pow(s, Scalar(d)); };
  const Scalar s = detail::bisect<Scalar>(excess, Scalar(0), Scalar(1) - tp, true);
  return {lower, Scalar(1) - s, Scalar(1)};
}

/// Smallest root of t = exp(-c(1-t)^d) in (0,1).
template <typename Scalar = double>
Scalar t_c(int d, Scalar c) {
  const auto roots = fixed_points<Scalar>(d, c);
  if (roots.size() < 2) {
    throw NoInteriorRoot("t = exp(-c(1-t)^d) has no root in (0,1) for c <= c_col(d)");
  }
  return roots.front();
}

/// f(t) = t + c t (1-t)^d - c/(d+1) (1 - (1-t)^(d+1)), the kernel-mass objective.
template <typename Scalar = double>
Scalar kernel_objective(int d, Scalar c, Scalar t) {
  using std::expm1;
  using std::log1p;
  if (t == Scalar(1)) return Scalar(1) - c / Scalar(d + 1);
  const Scalar one_minus_d = detail::pow_one_minus(t, Scalar(d));
  const Scalar complement = -expm1(Scalar(d + 1) * log1p(-t));
  return t + c * t * one_minus_d - c / Scalar(d + 1) * complement;
}

template <typename Scalar = double>
Scalar kernel_bound(int d, Scalar c) {
  const auto roots = fixed_points<Scalar>(d, c);
  Scalar best = kernel_objective<Scalar>(d, c, roots.front());
  for (const Scalar t : roots) best = std::max(best, kernel_objective<Scalar>(d, c, t));
  return best;
}

/// Limiting dim H_d / C(n,d): zero up to c_star, g_d(c) above it.
template <typename Scalar = double>
Scalar betti_density(int d, Scalar c) {
  detail::require_dimension(d);
  if (!(c > Scalar(0))) throw std::domain_error("c must be positive");
  if (c <= c_star<Scalar>(d)) return Scalar(0);
  const Scalar t = t_c<Scalar>(d, c);
  const Scalar s = Scalar(1) - t;
  return c * t * detail::pow_one_minus(t, Scalar(d)) +
         c / Scalar(d + 1) * detail::pow_one_minus(t, Scalar(d + 1)) - s;
}

template <typename Scalar = double>
Scalar betti_density_prime(int d, Scalar c) {
  detail::require_dimension(d);
  if (!(c > c_star<Scalar>(d))) {
    throw NoInteriorRoot("g_d'(c) is defined for c > c_star(d) only");
  }
  return detail::pow_one_minus(t_c<Scalar>(d, c), Scalar(d + 1)) / Scalar(d + 1);
}

template <typename Scalar = double>
Scalar shadow_density(int d, Scalar c) {
  using std::abs;
  detail::require_dimension(d);
  if (!(c > Scalar(0))) throw std::domain_error("c must be positive");
  const Scalar cs = c_star<Scalar>(d);
  if (abs(c - cs) <= Scalar(1e-12)) throw AtCriticalPoint("shadow density is undefined at c = c_star(d)");
  if (c < cs) return Scalar(0);
  return detail::pow_one_minus(t_c<Scalar>(d, c), Scalar(d + 1));
}

/// Shadow density (1-t_c)^2 of G(n, c/n), the d = 1 comparator. Zero for c <= 1.
template <typename Scalar = double>
Scalar graph_shadow_density(Scalar c) {
  using std::exp;
  if (!(c > Scalar(1))) return Scalar(0);
  const Scalar t = exp(detail::log_lower_branch_root<Scalar>(1, c, Scalar(0)));
  return (Scalar(1) - t) * (Scalar(1) - t);
}

template <typename Scalar = double>
ThresholdReport<Scalar> threshold_report(int d, std::optional<Scalar> c = std::nullopt) {
  ThresholdReport<Scalar> r;
  r.d = d;
  r.t_star = t_star<Scalar>(d);
  r.c_star = c_star<Scalar>(d);
  r.t_psi = t_psi<Scalar>(d);
  r.c_col = c_col<Scalar>(d);
  if (!c) return r;
  r.c = c;
  const auto roots = fixed_points<Scalar>(d, *c);
  if (roots.size() > 1) r.t_c = roots.front();
  r.g = betti_density<Scalar>(d, *c);
  if (*c > r.c_star) r.g_prime = betti_density_prime<Scalar>(d, *c);
  try {
    r.shadow_density = shadow_density<Scalar>(d, *c);
  } catch (const AtCriticalPoint&) {
  }
  r.kernel_bound = kernel_bound<Scalar>(d, *c);
  return r;
}

}  // namespace rsc
