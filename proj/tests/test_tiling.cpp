#include <doctest.h>

#include <cmath>

#include "brs/errors.hpp"
#include "brs/tiling.hpp"

using namespace brs;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("reference workbench: 300 rectangles, 150 ellipses, unit budget") {
  const TilingModel model{300, 150, 1.0};
  const ThresholdSolution sol = tiling_threshold(model);
  CHECK_FALSE(sol.trivial);
  CHECK(std::fabs(sol.t - 0.0326) <= 5e-4);
  const double bound = tiling_bound(model);
  CHECK(std::fabs(bound - 69.325) <= 5e-2);
  CHECK(bound < 450.0);
  CHECK(std::fabs(sol.equation_residual) <= 1e-9);
}

TEST_CASE("closed-form area laws match a numeric-density rebuild") {
  const Distribution rect_numeric = numeric_density(
      [](double u) { return u <= 0.0 ? 0.0 : -std::log(u); }, 1.0);
  const Distribution ell_numeric = numeric_density(
      [](double u) {
        if (u <= 0.0) return 0.0;
        const double v = 4.0 * u / kPi;
        return v >= 1.0 ? 0.0 : -(4.0 / kPi) * std::log(v);
      },
      kPi / 4.0);
  const MixtureModel closed = tiling_mixture({300, 150, 1.0});
  const MixtureModel numeric({{300, rect_numeric}, {150, ell_numeric}});
  const ThresholdSolution a = solve_brs_equation(closed, 1.0);
  const ThresholdSolution b = solve_brs_equation(numeric, 1.0);
  CHECK(std::fabs(a.t - b.t) <= 1e-6);
  CHECK(std::fabs(brs_bound(closed, 1.0).bound - brs_bound(numeric, 1.0).bound) <= 1e-5);
}

TEST_CASE("single-shape and trivial-budget corners") {
  const TilingModel rect_only{10, 0, 0.5};
  const MixtureModel m = tiling_mixture(rect_only);
  CHECK(m.components().size() == 1);
  CHECK(m.total_count() == 10);
  CHECK_FALSE(tiling_threshold(rect_only).trivial);

  const TilingModel one_ellipse{0, 1, kPi / 16.0};
  const ThresholdSolution sol = tiling_threshold(one_ellipse);
  CHECK(sol.trivial);  // budget equals the mean area of one ellipse
  CHECK(sol.t == doctest::Approx(kPi / 4.0));
  CHECK(tiling_bound(one_ellipse) == doctest::Approx(1.0));
}

TEST_CASE("model validation") {
  CHECK_THROWS_AS(tiling_threshold({-1, 5, 1.0}), InvalidArgument);
  CHECK_THROWS_AS(tiling_threshold({0, 0, 1.0}), InvalidArgument);
  CHECK_THROWS_AS(tiling_threshold({3, 3, 0.0}), InvalidBudget);
  CHECK_THROWS_AS(tiling_threshold({3, 3, -2.0}), InvalidBudget);
}

TEST_CASE("greedy packs at least one fewer than the stop-on-overflow scan, always") {
  const TilingModel model{300, 150, 1.0};
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const ShapeSelectionResult r = simulate_shape_selection(model, seed);
    CHECK(r.greedy_count >= r.sequential_count - 1);
    CHECK(r.sequential_count <= r.below_threshold_count);
    CHECK(r.greedy_area <= 1.0 + 1e-12);
    CHECK(r.greedy_count <= 450);
  }
}

TEST_CASE("below-threshold census has mean area equal to the budget") {
  const TilingModel model{300, 150, 1.0};
  double area_sum = 0.0, count_sum = 0.0, greedy_sum = 0.0;
  const int reps = 1000;
  for (int rep = 0; rep < reps; ++rep) {
    const ShapeSelectionResult r = simulate_shape_selection(model, 9000 + static_cast<std::uint64_t>(rep));
    area_sum += r.below_threshold_area;
    count_sum += static_cast<double>(r.below_threshold_count);
    greedy_sum += static_cast<double>(r.greedy_count);
  }
  const double mean_area = area_sum / reps;
  CHECK(std::fabs(mean_area - 1.0) <= 0.05);
  const double bound = tiling_bound(model);
  // Below-threshold census count fluctuates around the expected-count bound.
  CHECK(std::fabs(count_sum / reps - bound) <= 0.05 * bound);
  CHECK(greedy_sum / reps <= bound + 3.0 * 8.0 / std::sqrt(static_cast<double>(reps)));
}
