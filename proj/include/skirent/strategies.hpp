#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "skirent/numerics.hpp"
#include "skirent/rng.hpp"
#include "skirent/solver.hpp"

namespace skirent {
namespace strategy {

/// Number of days skiing is possible: a finite day count or unbounded.
/// The unbounded case is a distinguished state, never a sentinel float.
class SeasonLength {
 public:
  static SeasonLength finite(double days) {
    if (!(days >= 0.0)) {
      throw std::domain_error("SeasonLength: days must be nonnegative");
    }
    return SeasonLength(days, false);
  }
  static SeasonLength infinite() noexcept { return SeasonLength(0.0, true); }

  bool is_infinite() const noexcept { return infinite_; }
  double days() const {
    if (infinite_) {
      throw std::logic_error("SeasonLength: days() called on an infinite season");
    }
    return days_;
  }

 private:
  SeasonLength(double days, bool infinite) noexcept
      : days_(days), infinite_(infinite) {}
  double days_;
  bool infinite_;
};

/// The skier's mixed strategy: buy day drawn from the exponential density
/// e^{x/B} / (B (e^z - 1)) supported on [0, B z). The cutoff ratio z may come
/// from any source (optimal, no-information z = 1, or a faulty prediction),
/// so the experimental arms all share this one type.
struct SkierPolicy {
  double buy_cost;  // B, dollars
  double z;         // cutoff ratio
  double cutoff;    // B * z, days

  SkierPolicy(double buy_cost_, double z_) : buy_cost(buy_cost_), z(z_) {
    if (!(buy_cost > 0.0)) {
      throw std::domain_error("SkierPolicy: buy_cost must be positive");
    }
    if (!(z > 0.0)) {
      throw std::domain_error("SkierPolicy: z must be positive");
    }
    cutoff = buy_cost * z;
  }
};

inline double skier_density(const SkierPolicy& policy, double x) {
  if (!(x >= 0.0)) {
    throw std::domain_error("skier_density: x must be nonnegative");
  }
  if (x >= policy.cutoff) return 0.0;
  return std::exp(x / policy.buy_cost) /
         (policy.buy_cost * std::expm1(policy.z));
}

/// CDF of the buy day: (e^{x/B} - 1) / (e^z - 1), clamped to [0, 1].
inline double skier_cdf(const SkierPolicy& policy, double x) {
  if (x <= 0.0) return 0.0;
  if (x >= policy.cutoff) return 1.0;
  return std::expm1(x / policy.buy_cost) / std::expm1(policy.z);
}

/// Inverse CDF: x = B ln(1 + u (e^z - 1)); increasing, maps [0,1] onto
/// [0, cutoff].
inline double skier_inverse_cdf(const SkierPolicy& policy, double u) {
  if (!(u >= 0.0) || !(u <= 1.0)) {
    throw std::domain_error("skier_inverse_cdf: u must lie in [0, 1]");
  }
  return policy.buy_cost * std::log1p(u * std::expm1(policy.z));
}

/// One buy-day draw; consumes exactly one uniform variate.
template <class Rng>
double sample_skier(const SkierPolicy& policy, Rng& rng) {
  return skier_inverse_cdf(policy, rng.next_double());
}

namespace detail {

// M(w) = integral of t e^{-t} over [0, w] = 1 - (1 + w) e^{-w}; evaluated in
// a form stable for small w.
inline double finite_mass_shape(double w) {
  return -std::expm1(-w) - w * std::exp(-w);
}

}  // namespace detail

/// The adversary's mixed strategy: a sub-density proportional to
/// y e^{-y/B} carrying total mass alpha on [0, cutoff], plus an atom of mass
/// 1 - alpha on the infinite season. The default cutoff is B, the
/// normalized-over-[0,B] family with density alpha y e^{1-y/B} / ((e-2) B^2);
/// equilibrium() instead confines the finite mass to the support matched to
/// the optimal skier, [0, B min(z*(alpha), 1)], which is what makes the
/// skier indifferent across its own support.
class AdversaryPolicy {
 public:
  AdversaryPolicy(double alpha, double buy_cost)
      : AdversaryPolicy(alpha, buy_cost, buy_cost) {}

  static AdversaryPolicy equilibrium(double alpha, double buy_cost) {
    const double z = solver::optimal_cutoff_z(alpha);  // throws at alpha = 1
    return AdversaryPolicy(alpha, buy_cost, buy_cost * std::min(z, 1.0));
  }

  double alpha() const noexcept { return alpha_; }
  double buy_cost() const noexcept { return buy_cost_; }
  /// Upper end of the finite-season support, in (0, buy_cost].
  double cutoff() const noexcept { return cutoff_; }

  /// q(y) / y, finite and positive on [0, cutoff]; the factor y is cancelled
  /// analytically so integrands built on it stay bounded at y = 0.
  double density_over_y(double y) const {
    if (alpha_ == 0.0 || y > cutoff_) return 0.0;
    const double b = buy_cost_;
    return alpha_ * std::exp(-y / b) /
           (b * b * detail::finite_mass_shape(cutoff_ / b));
  }

 private:
  AdversaryPolicy(double alpha, double buy_cost, double cutoff)
      : alpha_(alpha), buy_cost_(buy_cost), cutoff_(cutoff) {
    if (!(alpha >= 0.0) || !(alpha <= 1.0)) {
      throw std::domain_error("AdversaryPolicy: alpha must lie in [0, 1]");
    }
    if (!(buy_cost > 0.0)) {
      throw std::domain_error("AdversaryPolicy: buy_cost must be positive");
    }
    if (!(cutoff <= buy_cost) || !(cutoff > 0.0 || alpha == 0.0)) {
      throw std::domain_error("AdversaryPolicy: cutoff must lie in (0, buy_cost]");
    }
  }

  double alpha_;
  double buy_cost_;
  double cutoff_;
};

/// Finite-part sub-density q(y) on [0, buy_cost]; zero beyond the support
/// cutoff. Integrates to alpha.
inline double adversary_density(const AdversaryPolicy& policy, double y) {
  if (!(y >= 0.0) || !(y <= policy.buy_cost())) {
    throw std::domain_error("adversary_density: y must lie in [0, buy_cost]");
  }
  return y * policy.density_over_y(y);
}

/// CDF of the finite part conditioned on the season being finite:
/// G(y) = M(y/B) / M(c/B) with M(w) = 1 - (1+w) e^{-w}. G(0) = 0, G(c) = 1,
/// strictly increasing on [0, c].
inline double adversary_conditional_cdf(const AdversaryPolicy& policy, double y) {
  if (!(y >= 0.0) || !(y <= policy.buy_cost())) {
    throw std::domain_error("adversary_conditional_cdf: y must lie in [0, buy_cost]");
  }
  if (policy.alpha() == 0.0) {
    throw std::domain_error("adversary_conditional_cdf: no finite mass at alpha = 0");
  }
  if (y >= policy.cutoff()) return 1.0;
  const double b = policy.buy_cost();
  return detail::finite_mass_shape(y / b) /
         detail::finite_mass_shape(policy.cutoff() / b);
}

/// One season draw. Consumes one uniform for the finite/infinite branch and,
/// when finite, a second one inverted through the conditional CDF by
/// bisection to 1e-10, so each draw is a deterministic function of the
/// uniforms.
template <class Rng>
SeasonLength sample_adversary(const AdversaryPolicy& policy, Rng& rng) {
  const double branch = rng.next_double();
  if (branch >= policy.alpha()) {
    return SeasonLength::infinite();
  }
  const double u = rng.next_double();
  double lo = 0.0;
  double hi = policy.cutoff();
  while (hi - lo > 1e-10) {
    const double mid = 0.5 * (lo + hi);
    if (adversary_conditional_cdf(policy, mid) < u) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return SeasonLength::finite(0.5 * (lo + hi));
}

}  // namespace strategy
}  // namespace skirent
