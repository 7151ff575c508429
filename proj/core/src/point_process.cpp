#include "brs/point_process.hpp"

#include <algorithm>
#include <cmath>

#include "brs/errors.hpp"
#include "brs/io.hpp"
#include "brs/root_find.hpp"
#include "brs/selection.hpp"

namespace brs {

double poisson_threshold(double budget_fraction) {
  if (!(budget_fraction > 0.0) || budget_fraction >= 1.0) {
    throw InvalidFraction("budget fraction must lie in (0, 1)");
  }
  const double level = 1.0 - budget_fraction;
  const auto g = [level](double t) { return std::exp(-t) * (t + 1.0) - level; };
  // g decreases from 1; 60 halvings of [0, 60] put the residual far below 1e-10.
  double lo = 0.0, hi = 60.0;
  while (hi - lo > 1e-14) {
    const double mid = 0.5 * (lo + hi);
    if (g(mid) > 0.0) lo = mid; else hi = mid;
  }
  return 0.5 * (lo + hi);
}

DensityBiasReport max_density_bound(const MixtureModel& model, double s) {
  const BoundReport base = brs_bound(model, s);
  DensityBiasReport rep;
  rep.n = model.total_count();
  rep.s = s;
  rep.solution = base.solution;
  rep.d_max_bound = base.bound / s;
  const double mean_gap = model.total_mean() / static_cast<double>(rep.n);
  rep.true_rate = 1.0 / mean_gap;
  rep.inflation = rep.d_max_bound / rep.true_rate;
  const double span = model.total_mean();  // expected full stream length
  rep.min_density_dual =
      span > s ? (static_cast<double>(rep.n) - base.bound) / (span - s) : 0.0;
  return rep;
}

double simulate_condensed_density(const Distribution& dist, long n, double fraction,
                                  std::uint64_t seed) {
  if (n < 1) throw InvalidArgument("n must be >= 1");
  if (!(fraction > 0.0)) throw InvalidFraction("budget fraction must be positive");
  if (fraction >= dist.total_mean()) {
    throw TrivialRegime("budget fraction at or above the mean gap condenses nothing");
  }
  const double s = fraction * static_cast<double>(n);
  SplitMix64 rng = replicate_stream(seed, 0);
  std::vector<double> gaps(static_cast<std::size_t>(n));
  for (auto& g : gaps) g = dist.sample(rng);
  const SelectionResult sel = max_feasible_count(gaps, s);
  return static_cast<double>(sel.count) / s;
}

void write_poisson_bias_curve(std::ostream& out, const std::vector<double>& t_grid,
                              const std::vector<double>& fractions) {
  out << "t,exp_curve";
  for (double f : fractions) out << ",level_f" << format_sig(f);
  out << "\n";
  for (double t : t_grid) {
    out << format_sig(t) << "," << format_sig(std::exp(-t) * (t + 1.0));
    for (double f : fractions) out << "," << format_sig(1.0 - f);
    out << "\n";
  }
}

}  // namespace brs
