#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <stdexcept>

#include "skirent/numerics.hpp"
#include "skirent/strategies.hpp"

namespace skirent {
namespace game {

/// One pure-strategy matchup: the skier buys on day x, the season lasts y.
struct PurePlay {
  double x;
  strategy::SeasonLength y;
};

/// Cost to the skier: rent until min(x, y), plus the buy price if the season
/// outlasts the buy day. A tie x = y means the skier rented through the last
/// moment and never bought.
inline double cost(double x, const strategy::SeasonLength& y, double buy_cost) {
  if (!(x >= 0.0)) throw std::domain_error("cost: x must be nonnegative");
  if (!(buy_cost > 0.0)) throw std::domain_error("cost: buy_cost must be positive");
  if (y.is_infinite() || x < y.days()) return x + buy_cost;
  return y.days();
}

/// Cost of the omniscient offline play: min(y, B).
inline double opt_cost(const strategy::SeasonLength& y, double buy_cost) {
  if (!(buy_cost > 0.0)) throw std::domain_error("opt_cost: buy_cost must be positive");
  if (y.is_infinite()) return buy_cost;
  return std::min(y.days(), buy_cost);
}

/// cost / opt_cost. A zero-length season is resolved to 1 by convention
/// (both costs vanish; the equilibrium adversary density vanishes at 0, so
/// the case carries no mass).
inline double competitive_ratio(double x, const strategy::SeasonLength& y,
                                double buy_cost) {
  if (!y.is_infinite() && y.days() == 0.0) return 1.0;
  return cost(x, y, buy_cost) / opt_cost(y, buy_cost);
}

inline double competitive_ratio(const PurePlay& play, double buy_cost) {
  return competitive_ratio(play.x, play.y, buy_cost);
}

/// Expected cost of a mixed skier against a fixed finite season length:
/// the closed form (1/(e^z - 1) + 1) * min(y, cutoff).
inline double expected_cost_vs_y(const strategy::SkierPolicy& policy, double y) {
  if (!(y >= 0.0) || !(y <= policy.buy_cost)) {
    throw std::domain_error("expected_cost_vs_y: y must lie in [0, buy_cost]");
  }
  return (1.0 / std::expm1(policy.z) + 1.0) * std::min(y, policy.cutoff);
}

/// Expected competitive ratio when the skier buys on a fixed day x and the
/// season is drawn from the adversary's mixture: seasons that end by x cost
/// ratio 1, longer finite seasons cost (x+B)/y, and the infinite atom costs
/// (x+B)/B. The finite parts are evaluated by quadrature; the 1/y pole is
/// cancelled against the density's leading factor y.
inline double expected_cr_vs_adversary(double x,
                                       const strategy::AdversaryPolicy& policy) {
  if (!(x >= 0.0)) {
    throw std::domain_error("expected_cr_vs_adversary: x must be nonnegative");
  }
  const double b = policy.buy_cost();
  const double c = policy.cutoff();
  double total = (1.0 - policy.alpha()) * (x + b) / b;
  const double split = std::min(x, c);
  if (split > 0.0) {
    total += numerics::integrate(
        [&policy](double y) { return y * policy.density_over_y(y); }, 0.0, split,
        1e-9);
  }
  if (x < c) {
    total += numerics::integrate(
        [&policy, x, b](double y) { return (x + b) * policy.density_over_y(y); },
        split, c, 1e-9);
  }
  return total;
}

/// Checks that a longer season y' > y >= B weakly raises the competitive
/// ratio at every grid point and strictly raises it somewhere at or beyond
/// y, i.e. that y is a dominated adversary play.
inline bool dominance_holds(std::span<const double> x_grid, double y,
                            double y_prime, double buy_cost) {
  if (!(y >= buy_cost) || !(y_prime > y)) {
    throw std::domain_error("dominance_holds: requires y >= buy_cost and y' > y");
  }
  const auto season = strategy::SeasonLength::finite(y);
  const auto season_prime = strategy::SeasonLength::finite(y_prime);
  bool strict_somewhere = false;
  for (double x : x_grid) {
    const double cr = competitive_ratio(x, season, buy_cost);
    const double cr_prime = competitive_ratio(x, season_prime, buy_cost);
    if (cr_prime < cr) return false;
    if (x >= y && cr_prime > cr) strict_somewhere = true;
  }
  return strict_somewhere;
}

}  // namespace game
}  // namespace skirent
