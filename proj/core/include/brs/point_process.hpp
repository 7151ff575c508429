#pragma once

#include <cstdint>
#include <ostream>
#include <vector>

#include "brs/threshold.hpp"

namespace brs {

// Selection bias on a renewal stream: condensing the s shortest
// inter-arrival gaps of n produces an apparent event density far above the
// true rate.  For the memoryless (rate-1) stream the threshold solves
// exp(-t)(t + 1) = 1 - s/n.

// Root of exp(-t)(t+1) = 1 - budget_fraction; budget_fraction in (0, 1).
double poisson_threshold(double budget_fraction);

struct DensityBiasReport {
  long n = 0;
  double s = 0.0;
  ThresholdSolution solution;
  double d_max_bound = 0.0;       // sum n_k F_k(t) / s, densest window of measure s
  double true_rate = 0.0;         // n / expected total span
  double inflation = 0.0;         // d_max_bound / true_rate
  double min_density_dual = 0.0;  // density of the complementary selection
};

DensityBiasReport max_density_bound(const MixtureModel& model, double s);

// One simulated stream: n inter-arrival draws, budget s = fraction * n,
// apparent density N(n, s) / s of the condensed window.
double simulate_condensed_density(const Distribution& dist, long n, double fraction,
                                  std::uint64_t seed);

// CSV of the threshold equation's left side against the budget levels
// 1 - fraction, for plotting where each fraction's root sits.
void write_poisson_bias_curve(std::ostream& out, const std::vector<double>& t_grid,
                              const std::vector<double>& fractions);

}  // namespace brs
