#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>

namespace skirent {

/// Raised when an iteration fails to converge or a function evaluates to a
/// non-finite value inside a numeric routine.
struct numeric_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Raised when an interval handed to the root finder does not bracket a
/// sign change.
struct bracketing_error : numeric_error {
  using numeric_error::numeric_error;
};

namespace numerics {

/// An interval [lo, hi] known to bracket a root: lo < hi and the function
/// changes sign across it (an endpoint sitting exactly on a root counts).
/// Construct through make_bracket so the invariant is checked against the
/// actual function.
struct Bracket {
  double lo;
  double hi;
  double f_lo;
  double f_hi;
};

namespace detail {

inline void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) {
    throw numeric_error(std::string(what) + " evaluated to a non-finite value");
  }
}

}  // namespace detail

/// Validates that f changes sign across [lo, hi] and returns the bracket.
/// Endpoints where f is exactly zero are accepted; they are returned
/// directly by find_root.
template <class F>
Bracket make_bracket(F&& f, double lo, double hi) {
  if (!(lo < hi)) {
    throw bracketing_error("bracket requires lo < hi");
  }
  const double f_lo = f(lo);
  const double f_hi = f(hi);
  detail::require_finite(f_lo, "bracket endpoint");
  detail::require_finite(f_hi, "bracket endpoint");
  if (f_lo != 0.0 && f_hi != 0.0 && std::signbit(f_lo) == std::signbit(f_hi)) {
    throw bracketing_error("no sign change across bracket");
  }
  return Bracket{lo, hi, f_lo, f_hi};
}

/// Bisection root finder. Deterministic, never leaves the initial bracket,
/// and converges unconditionally for any continuous sign-changing f.
/// Returns an endpoint immediately when it is an exact root.
template <class F>
double find_root(F&& f, const Bracket& bracket, double tol = 1e-12) {
  if (!(tol > 0.0)) {
    throw std::domain_error("find_root: tol must be positive");
  }
  if (bracket.f_lo == 0.0) return bracket.lo;
  if (bracket.f_hi == 0.0) return bracket.hi;

  constexpr int kMaxIter = 200;
  double lo = bracket.lo;
  double hi = bracket.hi;
  bool lo_negative = std::signbit(bracket.f_hi) == 0;  // f_lo < 0 < f_hi
  for (int iter = 0; iter < kMaxIter && (hi - lo) > tol; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;  // interval is at floating-point resolution
    const double f_mid = f(mid);
    detail::require_finite(f_mid, "find_root function");
    if (f_mid == 0.0) return mid;
    if ((f_mid < 0.0) == lo_negative) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

/// Central finite difference (f(x+h) - f(x-h)) / (2h).
template <class F>
double finite_difference(F&& f, double x, double h) {
  if (!(h > 0.0)) {
    throw std::domain_error("finite_difference: h must be positive");
  }
  const double fp = f(x + h);
  const double fm = f(x - h);
  detail::require_finite(fp, "finite_difference function");
  detail::require_finite(fm, "finite_difference function");
  return (fp - fm) / (2.0 * h);
}

namespace detail {

// One Halley step for g(w) = w e^w - x, safeguarded by the caller.
inline double halley_step_wexp(double w, double x) {
  const double ew = std::exp(w);
  const double g = w * ew - x;
  const double g1 = ew * (w + 1.0);
  const double denom = g1 - (w + 2.0) * g / (2.0 * (w + 1.0));
  return w - g / denom;
}

}  // namespace detail

/// Real branch W_{-1} of the Lambert W function on [-1/e, 0): the solution
/// w <= -1 of w e^w = x. Seeded by the branch-point series near -1/e and the
/// log-log asymptotic near 0, then polished by bracket-safeguarded Halley
/// iteration, so no external special-function dependency is involved.
inline double lambert_w_neg1(double x) {
  const double inv_e = std::exp(-1.0);
  if (!(x >= -inv_e) || !(x < 0.0)) {
    throw std::domain_error("lambert_w_neg1: x must lie in [-1/e, 0)");
  }
  if (x == -inv_e) return -1.0;
  if (x > -1e-15) {
    // W_{-1} -> -inf as x -> 0-.
    throw std::domain_error("lambert_w_neg1: x too close to 0");
  }

  double w;
  if (x < -0.25) {
    // Branch-point series in s = sqrt(2(1 + e x)).
    const double s = std::sqrt(2.0 * (1.0 + std::exp(1.0) * x));
    w = -1.0 - s - s * s / 3.0 - 11.0 / 72.0 * s * s * s;
    if (s < 1e-5) return w;  // series already below double precision
  } else {
    const double l1 = std::log(-x);
    const double l2 = std::log(-l1);
    w = l1 - l2 + l2 / l1;
  }

  // g(w) = w e^w - x is monotone decreasing in w on (-inf, -1], with
  // g(-1) <= 0; expand downward until g(w_lo) >= 0.
  auto g = [x](double w_) { return w_ * std::exp(w_) - x; };
  double hi = -1.0;
  double lo = std::min(w - 1.0, -2.0);
  for (int i = 0; i < 200 && g(lo) < 0.0; ++i) {
    hi = lo;
    lo = 2.0 * lo;
  }
  if (g(lo) < 0.0) {
    throw numeric_error("lambert_w_neg1: failed to bracket");
  }

  w = std::min(std::max(w, lo), hi);
  const double tol = 1e-14 * std::fabs(x);
  for (int iter = 0; iter < 100; ++iter) {
    const double gv = g(w);
    if (std::fabs(gv) <= tol) break;
    if (gv > 0.0) {
      lo = w;  // root lies above (g decreasing)
    } else {
      hi = w;
    }
    double next = detail::halley_step_wexp(w, x);
    if (!std::isfinite(next) || next <= lo || next >= hi) {
      next = 0.5 * (lo + hi);  // fall back to bisection inside the bracket
    }
    if (next == w) break;
    w = next;
  }
  return w;
}

/// W_{-1}(-e^{-c}) for c >= 1, with the argument kept in log space. Direct
/// evaluation underflows once e^{-c} drops below double range, long before
/// the function itself degenerates, so for small arguments the equivalent
/// problem v - ln v = c (v = -W) is solved by Newton instead.
inline double lambert_w_neg1_exp(double c) {
  if (!(c >= 1.0)) {
    throw std::domain_error("lambert_w_neg1_exp: c must be >= 1");
  }
  if (c == 1.0) return -1.0;
  const double x = -std::exp(-c);
  if (x <= -1e-15) return lambert_w_neg1(x);

  // Seed below the root; f is convex, so Newton climbs monotonically.
  double v = c + std::log(c);
  for (int iter = 0; iter < 100; ++iter) {
    const double f = v - std::log(v) - c;
    if (std::fabs(f) <= 1e-14 * c) break;
    const double step = f / (1.0 - 1.0 / v);
    v -= step;
    if (std::fabs(step) <= 1e-15 * v) break;
  }
  return -v;
}

namespace detail {

template <class F>
double adaptive_simpson(F& f, double a, double b, double fa, double fm, double fb,
                        double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  require_finite(flm, "integrand");
  require_finite(frm, "integrand");
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::fabs(delta) <= 15.0 * tol) {
    return left + right + delta / 15.0;
  }
  return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace detail

/// Adaptive Simpson quadrature of f over [a, b] to absolute tolerance tol.
template <class F>
double integrate(F&& f, double a, double b, double tol = 1e-9) {
  if (a == b) return 0.0;
  if (!(a < b)) {
    throw std::domain_error("integrate: requires a <= b");
  }
  if (!(tol > 0.0)) {
    throw std::domain_error("integrate: tol must be positive");
  }
  const double fa = f(a);
  const double m = 0.5 * (a + b);
  const double fm = f(m);
  const double fb = f(b);
  detail::require_finite(fa, "integrand");
  detail::require_finite(fm, "integrand");
  detail::require_finite(fb, "integrand");
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return detail::adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, 52);
}

}  // namespace numerics
}  // namespace skirent
