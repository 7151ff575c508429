#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "brs/distribution.hpp"

namespace brs {

// Optimal online selection of as many of n sequentially observed iid values
// as possible, under either a capacity constraint (Knapsack: accepted values
// must sum to at most the state) or a monotonicity constraint (Subsequence:
// each accepted value must not exceed the last accepted one).
enum class SequentialProblem { kKnapsack, kSubsequence };

struct PolicyOptions {
  double x_sup = 1.0;           // initial state (capacity / upper bound)
  bool store_alphas = true;     // keep per-(n, x) acceptance cutoffs
  bool check_grid = true;       // recompute at half resolution and compare
  double grid_tol = 1e-3;       // allowed change of v_n(x_sup) under refinement
};

class PolicyTable {
 public:
  PolicyTable(SequentialProblem problem, Distribution dist, long n_max, long grid_size,
              PolicyOptions options);

  SequentialProblem problem() const { return problem_; }
  const Distribution& dist() const { return dist_; }
  long n_max() const { return n_max_; }
  long grid_size() const { return grid_size_; }
  double x_sup() const { return options_.x_sup; }
  bool has_alphas() const { return options_.store_alphas; }

  double grid_point(long i) const { return step_ * static_cast<double>(i); }
  // v_n at a grid point / at an arbitrary state (linear interpolation).
  double value(long n, long i) const { return values_[idx(n, i)]; }
  double value_at(long n, double x) const;
  double alpha(long n, long i) const { return alphas_[idx(n, i)]; }

  // Accept/reject decision of the optimal policy with n observations left
  // (the current one included), in state `state`, observing `x`.
  bool accepts(long n, double state, double x) const;

 private:
  std::size_t idx(long n, long i) const {
    return static_cast<std::size_t>(n) * static_cast<std::size_t>(grid_size_) +
           static_cast<std::size_t>(i);
  }

  SequentialProblem problem_;
  Distribution dist_;
  long n_max_;
  long grid_size_;
  PolicyOptions options_;
  double step_;
  std::vector<double> values_;  // (n_max + 1) x grid_size
  std::vector<double> alphas_;  // same layout when stored
};

// Bellman tables.  v_0 = 0; each level integrates the accept/reject optimum
// against the observation density with composite trapezoid on the grid, the
// two smooth pieces split at the acceptance cutoff.
PolicyTable knapsack_value(const Distribution& dist, long n_max, long grid_size,
                           const PolicyOptions& options = {});
PolicyTable subsequence_value(const Distribution& dist, long n_max, long grid_size,
                              const PolicyOptions& options = {});

// Lower edge of the acceptance interval [alpha, x] for Subsequence tables:
// the y solving v_{n-1}(x) = 1 + v_{n-1}(y), or 0 when v_{n-1}(x) < 1.
double indifference_threshold(const PolicyTable& table, long n, double x);

// Realized count of the table's policy on one sample, observations in order.
long run_policy(const PolicyTable& table, std::span<const double> sample);

struct PolicySimulation {
  std::vector<long> samples;
  double mean = 0.0;
  double variance = 0.0;
  std::uint64_t seed = 0;
};

PolicySimulation simulate_policy(const PolicyTable& table, long reps, std::uint64_t seed,
                                 int workers = 1);

// Longest strictly increasing subsequence length (patience sorting), the
// full-information benchmark for online monotone selection.
long clairvoyant_lis(std::span<const double> sample);

}  // namespace brs
