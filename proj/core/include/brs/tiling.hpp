#pragma once

#include <cstdint>

#include "brs/threshold.hpp"

namespace brs {

// Two-shape packing workbench: random rectangle areas (product of two
// U[0,1] sides) and random ellipse areas (pi*A*B, sides U[0,1/2]), selected
// greedily under a total-area budget.
struct TilingModel {
  long n_rect = 0;
  long n_ellipse = 0;
  double target_area = 1.0;
};

// The area mixture behind a tiling model (zero-count shapes dropped).
MixtureModel tiling_mixture(const TilingModel& model);

ThresholdSolution tiling_threshold(const TilingModel& model);
double tiling_bound(const TilingModel& model);

struct ShapeSelectionResult {
  long greedy_count = 0;           // exact budget-optimal count
  double greedy_area = 0.0;
  long below_threshold_count = 0;  // all areas <= t; expected area equals the budget
  double below_threshold_area = 0.0;
  long sequential_count = 0;       // areas <= t accepted in arrival order until the
                                   // budget is first exceeded (boundary item counted)
};

// One replication: n_rect + n_ellipse shapes, types shuffled by draw.
ShapeSelectionResult simulate_shape_selection(const TilingModel& model, std::uint64_t seed);

}  // namespace brs
