#include "brs/threshold.hpp"

#include <cassert>
#include <cmath>

#include "brs/errors.hpp"
#include "brs/root_find.hpp"

namespace brs {

MixtureModel::MixtureModel(std::vector<MixtureComponent> components)
    : components_(std::move(components)) {
  if (components_.empty()) throw InvalidArgument("MixtureModel: at least one component required");
  for (const auto& c : components_) {
    if (c.count < 1) throw InvalidArgument("MixtureModel: component counts must be >= 1");
    total_count_ += c.count;
  }
}

double MixtureModel::total_mean() const {
  double sum = 0.0;
  for (const auto& c : components_) sum += static_cast<double>(c.count) * c.dist.total_mean();
  return sum;
}

double MixtureModel::support_sup() const {
  double sup = 0.0;
  for (const auto& c : components_) sup = std::fmax(sup, c.dist.support_sup());
  return sup;
}

double MixtureModel::demand(double t) const {
  double sum = 0.0;
  for (const auto& c : components_) sum += static_cast<double>(c.count) * c.dist.truncated_mean(t);
  return sum;
}

double MixtureModel::expected_below(double t) const {
  double sum = 0.0;
  for (const auto& c : components_) sum += static_cast<double>(c.count) * c.dist.cdf(t);
  return sum;
}

double solve_residual_tolerance(double s) { return 1e-9 * std::fmax(1.0, s); }

ThresholdSolution solve_brs_equation(const MixtureModel& model, double s) {
  if (!(s > 0.0)) throw InvalidBudget("budget s must be positive");

  if (s >= model.total_mean()) {
    return {model.support_sup(), 0.0, true, 0};
  }

  const auto g = [&model, s](double t) { return model.demand(t) - s; };
  const double sup = model.support_sup();

  // Bracket: start at [0, 1], double the upper end until the demand covers s.
  double hi = std::isfinite(sup) ? std::fmin(1.0, sup) : 1.0;
  double ghi = g(hi);
  int expand = 0;
  while (ghi < 0.0) {
    if (std::isfinite(sup) && hi >= sup) break;  // cannot happen below total mean
    hi = std::isfinite(sup) ? std::fmin(2.0 * hi, sup) : 2.0 * hi;
    ghi = g(hi);
    if (++expand > 200) throw NoConvergence("bracket expansion exceeded 200 doublings");
  }

  const double f_tol = solve_residual_tolerance(s);
  const RootResult root = brent(g, 0.0, hi, -s, ghi, f_tol);
  if (!root.converged) {
    throw NoConvergence("budget equation solve exceeded tolerance: residual " +
                        std::to_string(root.residual));
  }
  return {root.x, root.residual, false, root.iterations};
}

BoundReport brs_bound(const MixtureModel& model, double s) {
  BoundReport report;
  report.solution = solve_brs_equation(model, s);
  report.per_component.reserve(model.components().size());
  if (report.solution.trivial) {
    for (const auto& c : model.components()) {
      report.per_component.push_back(static_cast<double>(c.count));
      report.bound += static_cast<double>(c.count);
    }
    return report;
  }
  for (const auto& c : model.components()) {
    const double part = static_cast<double>(c.count) * c.dist.cdf(report.solution.t);
    report.per_component.push_back(part);
    report.bound += part;
  }
  return report;
}

double refined_bound(const MixtureModel& model, double s, double expected_selected_sum) {
  if (expected_selected_sum < 0.0 || expected_selected_sum > s) {
    throw InvalidResidual("expected selected sum must lie in [0, s]");
  }
  const BoundReport base = brs_bound(model, s);
  if (base.solution.trivial) return base.bound;
  assert(base.solution.t > 0.0);  // guaranteed by s > 0
  return base.bound - (s - expected_selected_sum) / base.solution.t;
}

double corollary_bound(const MixtureModel& model, double s, double p_below_n,
                       double expected_selected_sum) {
  if (p_below_n < 0.0 || p_below_n > 1.0) {
    throw InvalidProbability("p_below_n must lie in [0, 1]");
  }
  const double n = static_cast<double>(model.total_count());
  return p_below_n * refined_bound(model, s, expected_selected_sum) + n * (1.0 - p_below_n);
}

}  // namespace brs
