#pragma once

#include <vector>

#include "brs/distribution.hpp"

namespace brs {

// A population of independent items: n_k items drawn from component k.
struct MixtureComponent {
  long count = 0;
  Distribution dist;
};

class MixtureModel {
 public:
  explicit MixtureModel(std::vector<MixtureComponent> components);

  const std::vector<MixtureComponent>& components() const { return components_; }
  long total_count() const { return total_count_; }

  // Expected total demand sum n_k E(X_k).
  double total_mean() const;
  // Largest support supremum across components (+inf if any is unbounded).
  double support_sup() const;
  // G(t) = sum n_k int_0^t x dF_k(x): expected demand of all items <= t.
  double demand(double t) const;
  // sum n_k F_k(t): expected number of items <= t.
  double expected_below(double t) const;

 private:
  std::vector<MixtureComponent> components_;
  long total_count_ = 0;
};

// Root of the budget equation G(t) = s (the BRS equation).  In the trivial
// regime (s >= expected total demand) no root exists, t is the support
// supremum and every count bound collapses to n.
struct ThresholdSolution {
  double t = 0.0;
  double equation_residual = 0.0;
  bool trivial = false;
  int iterations = 0;
};

struct BoundReport {
  ThresholdSolution solution;
  double bound = 0.0;                  // sum n_k F_k(t), or n in the trivial regime
  std::vector<double> per_component;   // n_k F_k(t) per component
};

// Residual tolerance for accepting a solve: |G(t) - s| <= 1e-9 * max(1, s).
double solve_residual_tolerance(double s);

ThresholdSolution solve_brs_equation(const MixtureModel& model, double s);

// Expected-count bound E N(n,s) <= sum n_k F_k(t(n,s)), valid under any
// dependence structure with the given marginals.
BoundReport brs_bound(const MixtureModel& model, double s);

// Residual-corrected bound: subtracts (s - E(S_A))/t, the unspent budget
// measured in threshold units.  expected_selected_sum must lie in [0, s].
double refined_bound(const MixtureModel& model, double s, double expected_selected_sum);

// Conditioned version: p_below_n * refined + n * (1 - p_below_n), where
// p_below_n = P(N < n) weighs the regime in which the budget binds.
double corollary_bound(const MixtureModel& model, double s, double p_below_n,
                       double expected_selected_sum);

}  // namespace brs
