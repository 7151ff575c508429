#include "brs/tiling.hpp"

#include <vector>

#include "brs/errors.hpp"
#include "brs/selection.hpp"

namespace brs {

namespace {

void validate(const TilingModel& model) {
  if (model.n_rect < 0 || model.n_ellipse < 0) {
    throw InvalidArgument("shape counts must be nonnegative");
  }
  if (model.n_rect + model.n_ellipse < 1) {
    throw InvalidArgument("at least one shape required");
  }
  if (!(model.target_area > 0.0)) throw InvalidBudget("target area must be positive");
}

}  // namespace

MixtureModel tiling_mixture(const TilingModel& model) {
  validate(model);
  std::vector<MixtureComponent> components;
  if (model.n_rect > 0) components.push_back({model.n_rect, rectangle_area()});
  if (model.n_ellipse > 0) components.push_back({model.n_ellipse, ellipse_area()});
  return MixtureModel(std::move(components));
}

ThresholdSolution tiling_threshold(const TilingModel& model) {
  return solve_brs_equation(tiling_mixture(model), model.target_area);
}

double tiling_bound(const TilingModel& model) {
  return brs_bound(tiling_mixture(model), model.target_area).bound;
}

ShapeSelectionResult simulate_shape_selection(const TilingModel& model, std::uint64_t seed) {
  validate(model);
  const ThresholdSolution sol = tiling_threshold(model);
  const double t = sol.t;
  const double s = model.target_area;
  const long n = model.n_rect + model.n_ellipse;
  const double p_rect = static_cast<double>(model.n_rect) / static_cast<double>(n);
  const Distribution rect = rectangle_area();
  const Distribution ell = ellipse_area();

  SplitMix64 rng = replicate_stream(seed, 0);
  std::vector<double> areas(static_cast<std::size_t>(n));
  for (auto& a : areas) {
    const bool is_rect = rng.uniform01() < p_rect;
    a = is_rect ? rect.sample(rng) : ell.sample(rng);
  }

  ShapeSelectionResult res;
  const SelectionResult greedy = max_feasible_count(areas, s);
  res.greedy_count = greedy.count;
  res.greedy_area = greedy.selected_sum;

  double seq_area = 0.0;
  bool seq_open = true;
  for (double a : areas) {
    if (a > t) continue;
    ++res.below_threshold_count;
    res.below_threshold_area += a;
    if (seq_open) {
      seq_area += a;
      ++res.sequential_count;
      if (seq_area > s) seq_open = false;  // boundary item counted, then stop
    }
  }
  return res;
}

}  // namespace brs
