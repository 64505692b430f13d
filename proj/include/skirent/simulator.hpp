#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "skirent/game.hpp"
#include "skirent/rng.hpp"
#include "skirent/solver.hpp"
#include "skirent/strategies.hpp"

namespace skirent {
namespace sim {

struct TrialConfig {
  double buy_cost;
  double skier_z;          // cutoff ratio the skier actually plays
  double adversary_alpha;  // true mass on finite seasons
  std::int64_t trials;
  std::uint64_t seed;
};

/// Aggregate of one Monte-Carlo run. std_err and the confidence bounds are
/// empty when a single trial gives no spread estimate.
struct SimulationSummary {
  std::int64_t trials;
  double mean_cr;
  std::optional<double> std_err;
  std::optional<double> ci95_lo;
  std::optional<double> ci95_hi;
  std::uint64_t seed;
  double infinite_season_fraction;
};

namespace detail {

// Runs fn(i) for i in [0, n) across the requested threads; each index owns
// its output slot, so the partition never affects results.
template <class Fn>
void for_each_index(std::int64_t n, int threads, Fn&& fn) {
  if (threads <= 1 || n < 2) {
    for (std::int64_t i = 0; i < n; ++i) fn(i);
    return;
  }
  const int workers = static_cast<int>(std::min<std::int64_t>(threads, n));
  std::vector<std::thread> pool;
  pool.reserve(workers);
  const std::int64_t chunk = (n + workers - 1) / workers;
  for (int w = 0; w < workers; ++w) {
    const std::int64_t lo = w * chunk;
    const std::int64_t hi = std::min<std::int64_t>(n, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([lo, hi, &fn] {
      for (std::int64_t i = lo; i < hi; ++i) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

// Neumaier compensated sum over a fixed index order; keeps the aggregation
// both accurate and independent of how trials were scheduled across threads.
inline double compensated_sum(const std::vector<double>& values) {
  double sum = 0.0;
  double compensation = 0.0;
  for (double v : values) {
    const double t = sum + v;
    if (std::fabs(sum) >= std::fabs(v)) {
      compensation += (sum - t) + v;
    } else {
      compensation += (v - t) + sum;
    }
    sum = t;
  }
  return sum + compensation;
}

// Sequential fixed-order reduction of per-trial ratios, so the summary is a
// pure function of the config no matter how the trials were scheduled.
inline SimulationSummary summarize(std::vector<double>& ratios,
                                   std::int64_t infinite_count,
                                   std::uint64_t seed) {
  const auto n = static_cast<std::int64_t>(ratios.size());
  const double mean = compensated_sum(ratios) / static_cast<double>(n);

  SimulationSummary summary;
  summary.trials = n;
  summary.mean_cr = mean;
  summary.seed = seed;
  summary.infinite_season_fraction =
      static_cast<double>(infinite_count) / static_cast<double>(n);
  if (n >= 2) {
    for (double& r : ratios) {
      const double d = r - mean;
      r = d * d;
    }
    const double ss = compensated_sum(ratios);
    const double std_err =
        std::sqrt(ss / static_cast<double>(n - 1) / static_cast<double>(n));
    summary.std_err = std_err;
    summary.ci95_lo = mean - 1.96 * std_err;
    summary.ci95_hi = mean + 1.96 * std_err;
  }
  return summary;
}

}  // namespace detail

/// Plays the skier's cutoff-z mixed strategy against the equilibrium
/// adversary for the true alpha. Trial i draws its buy day and season from
/// substream(seed, i) — one uniform for the buy day, then the season draw —
/// so the output is identical for identical configs regardless of thread
/// count.
inline SimulationSummary run(const TrialConfig& config, int threads = 1) {
  if (config.trials < 1) {
    throw std::domain_error("run: trials must be >= 1");
  }
  const strategy::SkierPolicy skier(config.buy_cost, config.skier_z);
  const auto adversary =
      strategy::AdversaryPolicy::equilibrium(config.adversary_alpha, config.buy_cost);

  std::vector<double> ratios(static_cast<std::size_t>(config.trials));
  std::vector<unsigned char> infinite(static_cast<std::size_t>(config.trials));
  detail::for_each_index(config.trials, threads, [&](std::int64_t i) {
    auto rng = substream(config.seed, static_cast<std::uint64_t>(i));
    const double x = strategy::sample_skier(skier, rng);
    const auto y = strategy::sample_adversary(adversary, rng);
    ratios[static_cast<std::size_t>(i)] =
        game::competitive_ratio(x, y, config.buy_cost);
    infinite[static_cast<std::size_t>(i)] = y.is_infinite() ? 1 : 0;
  });

  std::int64_t infinite_count = 0;
  for (unsigned char flag : infinite) infinite_count += flag;
  return detail::summarize(ratios, infinite_count, config.seed);
}

struct Table1Row {
  std::string label;
  SimulationSummary summary;
  double theoretical;
};

/// The three-arm experiment: the skier tunes its cutoff to a correct
/// prediction (0.15), to no prediction (z = 1), and to a wrong prediction
/// (0.60), all against the alpha = 0.15 equilibrium adversary. Each row is
/// paired with the exact expected value of its pairing.
inline std::vector<Table1Row> run_table1(double buy_cost, std::int64_t trials,
                                         std::uint64_t seed, int threads = 1) {
  constexpr double kTrueAlpha = 0.15;
  constexpr double kWrongAlpha = 0.60;
  std::vector<Table1Row> rows;
  rows.reserve(3);
  rows.push_back(
      {"correct_prediction",
       run({buy_cost, solver::optimal_cutoff_z(kTrueAlpha), kTrueAlpha, trials, seed},
           threads),
       solver::optimal_cr(kTrueAlpha)});
  rows.push_back({"no_prediction",
                  run({buy_cost, 1.0, kTrueAlpha, trials, seed}, threads),
                  solver::no_information_cr()});
  rows.push_back(
      {"wrong_prediction",
       run({buy_cost, solver::optimal_cutoff_z(kWrongAlpha), kTrueAlpha, trials, seed},
           threads),
       solver::cross_expected_cr(kWrongAlpha, kTrueAlpha)});
  return rows;
}

/// Monte-Carlo estimate of the expected competitive ratio of a fixed buy
/// day x against an explicit adversary policy; the cross-check for the
/// quadrature in game::expected_cr_vs_adversary.
inline SimulationSummary estimate_vs_fixed_x(double x,
                                             const strategy::AdversaryPolicy& adversary,
                                             std::int64_t trials, std::uint64_t seed,
                                             int threads = 1) {
  if (trials < 1) {
    throw std::domain_error("estimate_vs_fixed_x: trials must be >= 1");
  }
  if (!(x >= 0.0)) {
    throw std::domain_error("estimate_vs_fixed_x: x must be nonnegative");
  }
  std::vector<double> ratios(static_cast<std::size_t>(trials));
  std::vector<unsigned char> infinite(static_cast<std::size_t>(trials));
  detail::for_each_index(trials, threads, [&](std::int64_t i) {
    auto rng = substream(seed, static_cast<std::uint64_t>(i));
    const auto y = strategy::sample_adversary(adversary, rng);
    ratios[static_cast<std::size_t>(i)] =
        game::competitive_ratio(x, y, adversary.buy_cost());
    infinite[static_cast<std::size_t>(i)] = y.is_infinite() ? 1 : 0;
  });
  std::int64_t infinite_count = 0;
  for (unsigned char flag : infinite) infinite_count += flag;
  return detail::summarize(ratios, infinite_count, seed);
}

}  // namespace sim
}  // namespace skirent
