#include <doctest.h>

#include <cmath>
#include <sstream>

#include "brs/errors.hpp"
#include "brs/point_process.hpp"

using namespace brs;

TEST_CASE("memoryless threshold at half budget") {
  const double t = poisson_threshold(0.5);
  CHECK(std::fabs(t - 1.67835) <= 5e-4);
  CHECK(std::fabs(std::exp(-t) * (t + 1.0) - 0.5) <= 1e-10);
  // Apparent density of the condensed half-span stream, rate-normalized.
  CHECK(std::fabs(2.0 * (1.0 - std::exp(-t)) - 1.62664) <= 5e-4);
}

TEST_CASE("small budget fraction inflates the apparent rate") {
  const double t = poisson_threshold(0.05);
  CHECK(std::fabs(t - 0.3554) <= 5e-4);
  const double inflation = (1.0 - std::exp(-t)) / 0.05;
  CHECK(inflation >= 5.8);
  CHECK(inflation <= 6.1);
}

TEST_CASE("threshold equation residual and monotonicity") {
  double prev_t = 0.0, prev_inflation = 1e300;
  for (double f = 0.05; f < 0.96; f += 0.05) {
    const double t = poisson_threshold(f);
    CHECK(std::fabs(std::exp(-t) * (t + 1.0) - (1.0 - f)) <= 1e-10);
    CHECK(t > prev_t);
    const double inflation = (1.0 - std::exp(-t)) / f;
    CHECK(inflation <= prev_inflation + 1e-12);
    CHECK(inflation >= 1.0);
    prev_t = t;
    prev_inflation = inflation;
  }
  CHECK(poisson_threshold(1e-6) < 2e-3);
  CHECK_THROWS_AS(poisson_threshold(0.0), InvalidFraction);
  CHECK_THROWS_AS(poisson_threshold(1.0), InvalidFraction);
  CHECK_THROWS_AS(poisson_threshold(-0.5), InvalidFraction);
}

TEST_CASE("dedicated root agrees with the generic mixture solver") {
  for (double f : {0.1, 0.3, 0.5, 0.8}) {
    const long n = 1000;
    const MixtureModel m({{n, exponential(1.0)}});
    const ThresholdSolution sol = solve_brs_equation(m, f * static_cast<double>(n));
    CHECK(std::fabs(sol.t - poisson_threshold(f)) <= 1e-8);
  }
}

TEST_CASE("density bias report for the rate-1 stream") {
  const long n = 500;
  const MixtureModel m({{n, exponential(1.0)}});
  const DensityBiasReport rep = max_density_bound(m, 0.5 * static_cast<double>(n));
  CHECK(rep.true_rate == doctest::Approx(1.0));
  CHECK(std::fabs(rep.d_max_bound - 1.62664) <= 5e-4);
  CHECK(std::fabs(rep.inflation - 1.62664) <= 5e-4);
  // Complementary window: the items above t spread over the leftover span.
  const double expected_dual =
      (static_cast<double>(n) * std::exp(-rep.solution.t)) / (0.5 * static_cast<double>(n));
  CHECK(rep.min_density_dual == doctest::Approx(expected_dual).epsilon(1e-6));
  CHECK(rep.min_density_dual < rep.true_rate);
  CHECK(rep.d_max_bound > rep.true_rate);
}

TEST_CASE("trivial budget: condensing everything changes nothing") {
  const long n = 100;
  const MixtureModel m({{n, uniform_on(1.0)}});
  const DensityBiasReport rep = max_density_bound(m, 0.5 * static_cast<double>(n));
  CHECK(rep.solution.trivial);
  CHECK(rep.d_max_bound == doctest::Approx(2.0));  // n / s = 1 / mean gap
  CHECK(rep.inflation == doctest::Approx(1.0));
}

TEST_CASE("simulated condensed density approaches the bound from below") {
  const double d = simulate_condensed_density(exponential(1.0), 100000, 0.5, 2026);
  CHECK(std::fabs(d - 1.62664) <= 0.02 * 1.62664);
  CHECK(d <= 1.62664 * 1.01);
  CHECK_THROWS_AS(simulate_condensed_density(exponential(1.0), 100, 1.0, 1), TrivialRegime);
  CHECK_THROWS_AS(simulate_condensed_density(exponential(1.0), 100, 0.0, 1), InvalidFraction);
}

TEST_CASE("single-gap stream density is all or nothing") {
  const double d = simulate_condensed_density(exponential(1.0), 1, 0.5, 5);
  CHECK((d == doctest::Approx(0.0) || d == doctest::Approx(2.0)));
}

TEST_CASE("bias curve csv shape") {
  std::ostringstream out;
  write_poisson_bias_curve(out, {0.0, 1.0, 2.0}, {0.5, 0.95});
  const std::string text = out.str();
  CHECK(text.rfind("t,exp_curve,level_f0.5,level_f0.95", 0) == 0);
  int newlines = 0;
  for (char c : text) newlines += (c == '\n');
  CHECK(newlines == 4);  // header + three grid rows
  CHECK(text.find("\n0,1,0.5,") != std::string::npos);  // exp(-0)(0+1) = 1
}
