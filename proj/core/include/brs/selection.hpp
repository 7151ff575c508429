#pragma once

#include <cstdint>
#include <span>
#include <variant>
#include <vector>

#include "brs/threshold.hpp"

namespace brs {

// N(n, s): the largest number of sample values whose sum stays within the
// budget.  Selecting smallest-first is optimal, ties broken by index.
struct SelectionResult {
  long count = 0;
  double selected_sum = 0.0;
  std::vector<long> selected_indices;  // in ascending (value, index) order
  double overshoot = 0.0;              // first excluded value, 0 if all selected
};

SelectionResult max_feasible_count(std::span<const double> sample, double s);

// Exhaustive subset check of the greedy optimum; instances up to n = 20.
long brute_force_max_count(std::span<const double> sample, double s);

// Dependence structures sharing one marginal story, used to exercise the
// bound's distribution-free guarantee.
struct IidScenario {
  long n = 1;
  Distribution dist;
};

struct FullyDependentScenario {  // one draw copied to all n coordinates
  long n = 1;
  Distribution dist;
};

struct AlternatingBlocksScenario {  // blocks of x, 1-x, x, ... with U[0,1] marginals
  long n = 1;
  double p = 0.5;  // geometric block-length parameter on {1, 2, ...}
};

struct MixtureScenario {
  MixtureModel model;
};

class Scenario {
 public:
  using Kind = std::variant<IidScenario, FullyDependentScenario, AlternatingBlocksScenario, MixtureScenario>;

  explicit Scenario(Kind kind);

  long size() const;
  void sample(SplitMix64& rng, std::vector<double>& out) const;
  // Single-coordinate marginal model; the count bound depends only on this.
  MixtureModel marginal_model() const;
  const Kind& kind() const { return kind_; }

 private:
  Kind kind_;
};

struct McReport {
  long reps = 0;
  std::uint64_t seed = 0;
  double mean_count = 0.0;
  double stderr_count = 0.0;
  double mean_selected_sum = 0.0;
  double p_below_n = 0.0;   // fraction of replicates with N < n
  double bound_used = 0.0;  // marginal-model count bound at this budget
};

// Replicate r uses replicate_stream(seed, r); aggregation walks replicates in
// index order with compensated summation, so the report is bit-identical for
// any worker count.
McReport mc_estimate(const Scenario& scenario, double s, long reps, std::uint64_t seed,
                     int workers = 1);

// Deterministic per-sample inequality behind the count bound: with A the
// greedy optimum and B = {i : X_i <= t},  t(|A| - |B|) <= S_A - S_B.
struct KeyInequalityReport {
  long a_count = 0;
  double a_sum = 0.0;
  long b_count = 0;
  double b_sum = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;
};

KeyInequalityReport key_inequality_check(std::span<const double> sample, double s, double t);

// One greedy realization per n: ratio N / (n F(t(n, s_n))) with s_n =
// budget_fraction * n, which drifts to 1 as n grows.
struct RatioPoint {
  long n = 0;
  double ratio = 0.0;
};

std::vector<RatioPoint> asymptotic_ratio(const Distribution& dist, double budget_fraction,
                                         const std::vector<long>& n_grid, std::uint64_t seed);

}  // namespace brs
