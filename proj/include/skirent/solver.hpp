#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <utility>

#include "skirent/numerics.hpp"

namespace skirent {

/// Raised when a computation requires the optimal cutoff at alpha = 1, where
/// the cutoff grows without bound (the optimal play is to never buy).
struct infinite_cutoff_error : std::domain_error {
  infinite_cutoff_error()
      : std::domain_error("optimal cutoff is infinite at alpha = 1 (never buy)") {}
};

namespace solver {

namespace detail {

inline void require_probability(double p, const char* name) {
  if (!(p >= 0.0) || !(p <= 1.0)) {
    throw std::domain_error(std::string(name) + " must lie in [0, 1]");
  }
}

}  // namespace detail

/// A probability estimate that the season lasts at most B days, together
/// with an optional error radius around it.
struct Prediction {
  double alpha_hat;
  double eps;

  explicit Prediction(double alpha_hat_, double eps_ = 0.0)
      : alpha_hat(alpha_hat_), eps(eps_) {
    detail::require_probability(alpha_hat, "alpha_hat");
    if (!(eps >= 0.0) || eps > std::max(alpha_hat, 1.0 - alpha_hat)) {
      throw std::domain_error("eps must lie in [0, max(alpha_hat, 1 - alpha_hat)]");
    }
  }
};

/// The probability at which knowing alpha is worth nothing: the optimal
/// strategy degenerates to the classic no-information one.
inline double no_information_alpha() {
  const double e = std::exp(1.0);
  return (e - 2.0) / (e - 1.0);
}

/// e/(e-1), the classic randomized guarantee without side information.
inline double no_information_cr() {
  const double e = std::exp(1.0);
  return e / (e - 1.0);
}

/// Expected worst-case competitive ratio of the truncated-exponential
/// strategy with cutoff ratio z against an adversary constrained to place
/// mass alpha on short seasons: L(z; alpha) = e^z (z + alpha(1-z)) / (e^z - 1).
/// Affine in alpha at fixed z.
inline double dual_objective(double z, double alpha) {
  detail::require_probability(alpha, "alpha");
  if (!(z > 0.0)) {
    throw std::domain_error("dual_objective: z must be positive");
  }
  // e^z/(e^z - 1) = 1/(1 - e^-z), overflow-free for large z.
  return (z + alpha * (1.0 - z)) / (-std::expm1(-z));
}

/// Cutoff ratio by bisection on the monotone form e^z - z = 1/(1 - alpha).
inline double optimal_cutoff_z_bisection(double alpha) {
  detail::require_probability(alpha, "alpha");
  if (alpha == 1.0) throw infinite_cutoff_error();
  const double target = 1.0 / (1.0 - alpha);
  auto f = [target](double z) { return std::exp(z) - z - target; };
  const double hi = std::log(target) + 2.0;
  return numerics::find_root(f, numerics::make_bracket(f, 0.0, hi), 1e-12);
}

/// Cutoff ratio through the closed form z* = 1/(alpha-1) - W_{-1}(-e^{1/(alpha-1)}).
inline double optimal_cutoff_z_lambert(double alpha) {
  detail::require_probability(alpha, "alpha");
  if (alpha == 1.0) throw infinite_cutoff_error();
  const double c = 1.0 / (1.0 - alpha);
  return -c - numerics::lambert_w_neg1_exp(c);
}

/// Optimal cutoff ratio z*(alpha): the unique root of
/// (1 - alpha)(e^z - z) = 1. Evaluated through both independent routes
/// (bisection and the Lambert-W closed form), which are required to agree.
inline double optimal_cutoff_z(double alpha) {
  const double by_bisection = optimal_cutoff_z_bisection(alpha);
  const double by_lambert = optimal_cutoff_z_lambert(alpha);
  if (std::fabs(by_bisection - by_lambert) > 1e-9) {
    throw numeric_error("optimal_cutoff_z: solution routes disagree");
  }
  return by_lambert;
}

/// Optimal expected worst-case competitive ratio J(alpha). Computed as
/// L(z*(alpha); alpha) and cross-checked against the closed form
/// (alpha - 1) W_{-1}(-e^{1/(alpha-1)}). alpha = 1 returns 1 as the
/// documented limit (never buy, always optimal).
inline double optimal_cr(double alpha) {
  detail::require_probability(alpha, "alpha");
  if (alpha == 1.0) return 1.0;
  const double z = optimal_cutoff_z(alpha);
  const double via_objective = z > 0.0 ? dual_objective(z, alpha) : 1.0;
  const double c = 1.0 / (1.0 - alpha);
  const double via_closed_form = -numerics::lambert_w_neg1_exp(c) / c;
  if (std::fabs(via_objective - via_closed_form) > 1e-9) {
    throw numeric_error("optimal_cr: solution routes disagree");
  }
  return via_objective;
}

/// Worst-case growth of the expected competitive ratio per unit of
/// prediction error: Delta(alpha_hat) = |(1 - z*) e^{z*} / (e^{z*} - 1)|.
/// Unbounded at alpha_hat in {0, 1}, reported as an empty optional rather
/// than a floating-point infinity.
inline std::optional<double> sensitivity_delta(double alpha_hat) {
  detail::require_probability(alpha_hat, "alpha_hat");
  if (alpha_hat == 0.0 || alpha_hat == 1.0) return std::nullopt;
  const double z = optimal_cutoff_z(alpha_hat);
  return std::fabs((1.0 - z) / (-std::expm1(-z)));
}

/// Exact expected worst-case competitive ratio when the cutoff is tuned to
/// alpha_used but the adversary is constrained by alpha_true:
/// L(z*(alpha_used); alpha_true). Exactness follows from L being affine in
/// alpha at fixed z.
inline double cross_expected_cr(double alpha_used, double alpha_true) {
  detail::require_probability(alpha_true, "alpha_true");
  const double z = optimal_cutoff_z(alpha_used);  // throws at alpha_used = 1
  if (z == 0.0) {
    if (alpha_true == 0.0) return 1.0;
    throw numeric_error(
        "cross_expected_cr: unbounded (immediate buy against short seasons)");
  }
  return dual_objective(z, alpha_true);
}

/// Range the expected competitive ratio can take when the true alpha lies
/// within eps of the prediction: both perturbed values are clipped into
/// [0, 1], L(z*(alpha_hat); .) is evaluated at the clipped endpoints, and the
/// pair is returned ordered. The optimum J(alpha_hat) always lies inside.
inline std::pair<double, double> cr_interval(const Prediction& pred) {
  if (pred.eps == 0.0) {
    const double j = optimal_cr(pred.alpha_hat);
    return {j, j};
  }
  if (pred.alpha_hat == 0.0 || pred.alpha_hat == 1.0) {
    throw std::domain_error(
        "cr_interval: unbounded at alpha_hat in {0, 1} with eps > 0");
  }
  const double z = optimal_cutoff_z(pred.alpha_hat);
  const double alpha_lo = std::max(0.0, pred.alpha_hat - pred.eps);
  const double alpha_hi = std::min(1.0, pred.alpha_hat + pred.eps);
  const double a = dual_objective(z, alpha_lo);
  const double b = dual_objective(z, alpha_hi);
  return {std::min(a, b), std::max(a, b)};
}

/// Everything a consumer of a prediction needs in one record: the cutoff,
/// the optimal guarantee, the spread under the stated error radius, and the
/// per-unit-error slope. cr_worst and delta are empty when unbounded.
struct GuaranteeReport {
  double z_star;
  double cutoff_days;
  double cr_optimal;
  double cr_best;
  std::optional<double> cr_worst;
  std::optional<double> delta;
};

inline GuaranteeReport guarantee_report(const Prediction& pred, double buy_cost) {
  if (!(buy_cost > 0.0)) {
    throw std::domain_error("guarantee_report: buy_cost must be positive");
  }
  const double z = optimal_cutoff_z(pred.alpha_hat);  // throws at alpha_hat = 1
  GuaranteeReport report;
  report.z_star = z;
  report.cutoff_days = buy_cost * z;
  report.cr_optimal = optimal_cr(pred.alpha_hat);
  if (pred.eps > 0.0 && (pred.alpha_hat == 0.0 || pred.alpha_hat == 1.0)) {
    report.cr_best = report.cr_optimal;
    report.cr_worst = std::nullopt;
  } else {
    const auto [lo, hi] = cr_interval(pred);
    report.cr_best = lo;
    report.cr_worst = hi;
  }
  report.delta = sensitivity_delta(pred.alpha_hat);
  return report;
}

}  // namespace solver
}  // namespace skirent
