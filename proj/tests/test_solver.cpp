#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "skirent/numerics.hpp"
#include "skirent/rng.hpp"
#include "skirent/solver.hpp"

using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;
using namespace skirent;
using solver::dual_objective;
using solver::optimal_cr;
using solver::optimal_cutoff_z;
using solver::Prediction;

// Reference values in this file are frozen from 50-digit solves of
// (1 - alpha)(e^z - z) = 1 and evaluations of L(z; alpha).

TEST_CASE("optimal cutoff ratio") {
  SECTION("certain long season buys immediately") {
    REQUIRE(optimal_cutoff_z(0.0) == 0.0);
  }
  SECTION("reference solutions") {
    REQUIRE_THAT(optimal_cutoff_z(0.15), WithinAbs(0.5406471539010744, 1e-10));
    REQUIRE_THAT(optimal_cutoff_z(0.6), WithinAbs(1.3473967510313404, 1e-10));
    REQUIRE_THAT(optimal_cutoff_z(0.15), WithinAbs(0.541, 1e-3));
    REQUIRE_THAT(optimal_cutoff_z(0.6), WithinAbs(1.347, 1e-3));
  }
  SECTION("the no-information probability pins the cutoff ratio at one") {
    REQUIRE_THAT(optimal_cutoff_z(solver::no_information_alpha()),
                 WithinAbs(1.0, 1e-12));
  }
  SECTION("defining residual") {
    for (double alpha = 0.02; alpha < 1.0; alpha += 0.07) {
      const double z = optimal_cutoff_z(alpha);
      REQUIRE_THAT((1.0 - alpha) * (std::exp(z) - z), WithinAbs(1.0, 1e-10));
    }
  }
  SECTION("certain short season never buys") {
    REQUIRE_THROWS_AS(optimal_cutoff_z(1.0), infinite_cutoff_error);
    REQUIRE_THROWS_AS(optimal_cutoff_z(-0.1), std::domain_error);
    REQUIRE_THROWS_AS(optimal_cutoff_z(1.1), std::domain_error);
  }
}

TEST_CASE("both cutoff routes agree across the probability range") {
  for (int k = 1; k <= 99; ++k) {
    const double alpha = k / 100.0;
    REQUIRE(std::fabs(solver::optimal_cutoff_z_bisection(alpha) -
                      solver::optimal_cutoff_z_lambert(alpha)) <= 1e-9);
  }
}

TEST_CASE("cutoff ratio is increasing and crosses one at the no-information point") {
  double previous = optimal_cutoff_z(0.0);
  for (int k = 1; k <= 99; ++k) {
    const double z = optimal_cutoff_z(k / 100.0);
    REQUIRE(z > previous);
    previous = z;
  }
  const double alpha0 = solver::no_information_alpha();
  REQUIRE(optimal_cutoff_z(alpha0 - 0.001) < 1.0);
  REQUIRE(optimal_cutoff_z(alpha0 + 0.001) > 1.0);
}

TEST_CASE("dual objective") {
  SECTION("z = 1 collapses the alpha term") {
    for (double alpha : {0.0, 0.3, 0.7, 1.0}) {
      REQUIRE_THAT(dual_objective(1.0, alpha),
                   WithinAbs(solver::no_information_cr(), 1e-14));
    }
  }
  SECTION("reference evaluations") {
    REQUIRE_THAT(dual_objective(optimal_cutoff_z(0.15), 0.15),
                 WithinRel(1.4595500808159133, 1e-10));
    REQUIRE_THAT(dual_objective(optimal_cutoff_z(0.6), 0.15),
                 WithinRel(1.7501895058275944, 1e-10));
  }
  SECTION("domain") {
    REQUIRE_THROWS_AS(dual_objective(0.0, 0.5), std::domain_error);
    REQUIRE_THROWS_AS(dual_objective(-1.0, 0.5), std::domain_error);
    REQUIRE_THROWS_AS(dual_objective(1.0, 1.5), std::domain_error);
  }
}

TEST_CASE("dual objective is affine in alpha at fixed z") {
  Splitmix64 rng(11);
  for (double z : {0.3, 1.0, 1.7, 4.2}) {
    const double slope = (1.0 - z) * std::exp(z) / std::expm1(z);
    for (int trial = 0; trial < 50; ++trial) {
      const double a1 = rng.next_double();
      const double a2 = rng.next_double();
      REQUIRE_THAT(dual_objective(z, a2) - dual_objective(z, a1),
                   WithinAbs((a2 - a1) * slope, 1e-12));
    }
  }
}

TEST_CASE("optimal competitive ratio") {
  SECTION("no-information point attains e/(e-1)") {
    REQUIRE_THAT(optimal_cr(solver::no_information_alpha()),
                 WithinAbs(solver::no_information_cr(), 1e-9));
  }
  SECTION("reference value") {
    REQUIRE_THAT(optimal_cr(0.15), WithinRel(1.4595500808159133, 1e-10));
  }
  SECTION("degenerate certainties cost nothing extra") {
    REQUIRE(optimal_cr(0.0) == 1.0);
    REQUIRE(optimal_cr(1.0) == 1.0);
  }
  SECTION("information never hurts") {
    const double bound = solver::no_information_cr() + 1e-9;
    for (int k = 0; k <= 100; ++k) {
      REQUIRE(optimal_cr(k / 100.0) <= bound);
    }
  }
}

TEST_CASE("sensitivity to prediction error") {
  SECTION("vanishes exactly where predictions carry no information") {
    const auto delta = solver::sensitivity_delta(solver::no_information_alpha());
    REQUIRE(delta.has_value());
    REQUIRE(*delta <= 1e-9);
  }
  SECTION("reference values") {
    REQUIRE_THAT(*solver::sensitivity_delta(0.15),
                 WithinRel(1.0999071360129716, 1e-10));
    REQUIRE_THAT(*solver::sensitivity_delta(0.3),
                 WithinRel(0.35799297274093517, 1e-10));
    REQUIRE(*solver::sensitivity_delta(0.001) > 5.0);
  }
  SECTION("unbounded at the boundaries") {
    REQUIRE_FALSE(solver::sensitivity_delta(0.0).has_value());
    REQUIRE_FALSE(solver::sensitivity_delta(1.0).has_value());
  }
  SECTION("matches a finite difference of the objective in alpha") {
    for (double alpha = 0.05; alpha < 1.0; alpha += 0.05) {
      const double z = optimal_cutoff_z(alpha);
      const double fd = numerics::finite_difference(
          [z](double a) { return dual_objective(z, a); }, alpha, 1e-6);
      REQUIRE(std::fabs(*solver::sensitivity_delta(alpha) - std::fabs(fd)) <= 1e-6);
    }
  }
}

TEST_CASE("objective is stationary at the computed cutoff") {
  for (double alpha = 0.05; alpha <= 0.95; alpha += 0.05) {
    const double z = optimal_cutoff_z(alpha);
    const double fd = numerics::finite_difference(
        [alpha](double zz) { return dual_objective(zz, alpha); }, z, 1e-5);
    REQUIRE(std::fabs(fd) <= 1e-6);
  }
}

TEST_CASE("prediction validation") {
  REQUIRE_NOTHROW(Prediction(0.15, 0.45));
  REQUIRE_NOTHROW(Prediction(0.0));
  REQUIRE_NOTHROW(Prediction(1.0, 1.0));
  REQUIRE_THROWS_AS(Prediction(-0.1), std::domain_error);
  REQUIRE_THROWS_AS(Prediction(1.1), std::domain_error);
  REQUIRE_THROWS_AS(Prediction(0.5, 0.6), std::domain_error);
  REQUIRE_THROWS_AS(Prediction(0.15, -0.01), std::domain_error);
}

TEST_CASE("competitive-ratio interval under prediction error") {
  SECTION("zero error collapses the interval") {
    const auto [lo, hi] = solver::cr_interval(Prediction(0.15));
    REQUIRE(lo == hi);
    REQUIRE_THAT(lo, WithinRel(1.4595500808159133, 1e-10));
  }
  SECTION("reference interval with clipping below zero") {
    const auto [lo, hi] = solver::cr_interval(Prediction(0.15, 0.45));
    REQUIRE_THAT(hi, WithinRel(1.9545082920217505, 1e-10));
    REQUIRE_THAT(lo, WithinRel(1.2945640104139675, 1e-10));
  }
  SECTION("interval brackets the optimum on both sides of the crossover") {
    Splitmix64 rng(5);
    for (int trial = 0; trial < 100; ++trial) {
      const double alpha = 0.01 + 0.98 * rng.next_double();
      const double eps = rng.next_double() * std::max(alpha, 1.0 - alpha);
      const auto [lo, hi] = solver::cr_interval(Prediction(alpha, eps));
      const double j = optimal_cr(alpha);
      REQUIRE(lo <= j + 1e-12);
      REQUIRE(hi >= j - 1e-12);
    }
  }
  SECTION("unclipped width is the error radius times the sensitivity") {
    for (auto [alpha, eps] : {std::pair{0.3, 0.2}, std::pair{0.6, 0.2}}) {
      const auto [lo, hi] = solver::cr_interval(Prediction(alpha, eps));
      const double j = optimal_cr(alpha);
      REQUIRE_THAT(hi - j, WithinAbs(eps * *solver::sensitivity_delta(alpha), 1e-12));
      REQUIRE_THAT(j - lo, WithinAbs(eps * *solver::sensitivity_delta(alpha), 1e-12));
    }
  }
  SECTION("unbounded corner") {
    REQUIRE_THROWS_AS(solver::cr_interval(Prediction(0.0, 0.5)), std::domain_error);
    REQUIRE_THROWS_AS(solver::cr_interval(Prediction(1.0, 0.5)), std::domain_error);
  }
}

TEST_CASE("cross expected competitive ratio") {
  REQUIRE_THAT(solver::cross_expected_cr(0.15, 0.15),
               WithinRel(optimal_cr(0.15), 1e-12));
  REQUIRE_THAT(solver::cross_expected_cr(0.6, 0.15),
               WithinRel(1.7501895058275944, 1e-10));
  SECTION("the no-information cutoff is insensitive to the true alpha") {
    for (double alpha_true : {0.0, 0.25, 0.5, 1.0}) {
      REQUIRE_THAT(solver::cross_expected_cr(solver::no_information_alpha(), alpha_true),
                   WithinAbs(solver::no_information_cr(), 1e-12));
    }
  }
  REQUIRE_THROWS_AS(solver::cross_expected_cr(1.0, 0.5), infinite_cutoff_error);
  REQUIRE(solver::cross_expected_cr(0.0, 0.0) == 1.0);
  REQUIRE_THROWS_AS(solver::cross_expected_cr(0.0, 0.5), numeric_error);
}

TEST_CASE("guarantee report") {
  SECTION("correct prediction at B = 10") {
    const auto report = solver::guarantee_report(Prediction(0.15), 10.0);
    REQUIRE_THAT(report.cutoff_days, WithinAbs(5.4064715390107444, 1e-9));
    REQUIRE_THAT(report.cutoff_days, WithinAbs(5.41, 5e-3));
    REQUIRE(report.cr_best == report.cr_optimal);
    REQUIRE(report.cr_worst.has_value());
  }
  SECTION("wrong prediction at B = 10") {
    const auto report = solver::guarantee_report(Prediction(0.6), 10.0);
    REQUIRE_THAT(report.cutoff_days, WithinAbs(13.473967510313404, 1e-9));
    REQUIRE_THAT(report.cutoff_days, WithinAbs(13.47, 5e-3));
  }
  SECTION("errors cost nothing at the no-information point") {
    const auto report =
        solver::guarantee_report(Prediction(solver::no_information_alpha(), 0.3), 10.0);
    REQUIRE(report.cr_worst.has_value());
    REQUIRE_THAT(report.cr_best, WithinAbs(solver::no_information_cr(), 1e-9));
    REQUIRE_THAT(*report.cr_worst, WithinAbs(solver::no_information_cr(), 1e-9));
  }
  SECTION("unbounded worst case when a certain prediction may be wrong") {
    const auto report = solver::guarantee_report(Prediction(0.0, 0.3), 10.0);
    REQUIRE(report.z_star == 0.0);
    REQUIRE(report.cr_best == 1.0);
    REQUIRE_FALSE(report.cr_worst.has_value());
    REQUIRE_FALSE(report.delta.has_value());
  }
  SECTION("field ordering invariants hold across predictions") {
    Splitmix64 rng(3);
    const double bound = solver::no_information_cr() + 1e-9;
    for (int trial = 0; trial < 60; ++trial) {
      const double alpha = 0.01 + 0.98 * rng.next_double();
      const double eps = rng.next_double() * std::max(alpha, 1.0 - alpha);
      const auto report = solver::guarantee_report(Prediction(alpha, eps), 10.0);
      REQUIRE(report.cr_best <= report.cr_optimal + 1e-12);
      REQUIRE(report.cr_optimal <= *report.cr_worst + 1e-12);
      REQUIRE(report.cr_optimal <= bound);
    }
  }
  REQUIRE_THROWS_AS(solver::guarantee_report(Prediction(0.5), 0.0), std::domain_error);
  REQUIRE_THROWS_AS(solver::guarantee_report(Prediction(1.0), 10.0),
                    infinite_cutoff_error);
}
