#include "brs/selection.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <thread>

#include "brs/errors.hpp"

namespace brs {

namespace {

// Largest prefix of the ascending value sequence fitting the budget.
struct GreedyStats {
  long count = 0;
  double sum = 0.0;
};

GreedyStats greedy_prefix(std::span<const double> ascending, double s) {
  GreedyStats g;
  for (double v : ascending) {
    if (v < 0.0) throw InvalidArgument("sample values must be nonnegative");
    if (g.sum + v > s) break;
    g.sum += v;
    ++g.count;
  }
  return g;
}

}  // namespace

SelectionResult max_feasible_count(std::span<const double> sample, double s) {
  if (!(s >= 0.0)) throw InvalidBudget("budget s must be nonnegative");
  std::vector<long> order(sample.size());
  std::iota(order.begin(), order.end(), 0L);
  std::sort(order.begin(), order.end(), [&sample](long a, long b) {
    return sample[a] < sample[b] || (sample[a] == sample[b] && a < b);
  });

  SelectionResult res;
  for (long idx : order) {
    const double v = sample[idx];
    if (v < 0.0) throw InvalidArgument("sample values must be nonnegative");
    if (res.selected_sum + v > s) {
      res.overshoot = v;
      break;
    }
    res.selected_sum += v;
    res.selected_indices.push_back(idx);
    ++res.count;
  }
  return res;
}

long brute_force_max_count(std::span<const double> sample, double s) {
  const std::size_t n = sample.size();
  if (n > 20) throw TooLarge("brute_force_max_count supports n <= 20");
  if (!(s >= 0.0)) throw InvalidBudget("budget s must be nonnegative");
  if (n == 0) return 0;
  // sums[m] = sum over the subset encoded by mask m, built from m minus its
  // lowest set bit.
  std::vector<double> sums(std::size_t{1} << n, 0.0);
  long best = 0;
  for (std::uint32_t m = 1; m < sums.size(); ++m) {
    const std::uint32_t low = m & (m - 1U);
    const int bit = std::countr_zero(m);
    sums[m] = sums[low] + sample[static_cast<std::size_t>(bit)];
    if (sums[m] <= s) best = std::max(best, static_cast<long>(std::popcount(m)));
  }
  return best;
}

Scenario::Scenario(Kind kind) : kind_(std::move(kind)) {
  std::visit(
      [](const auto& k) {
        using T = std::decay_t<decltype(k)>;
        if constexpr (!std::is_same_v<T, MixtureScenario>) {
          if (k.n < 1) throw InvalidArgument("scenario size n must be >= 1");
        }
        if constexpr (std::is_same_v<T, AlternatingBlocksScenario>) {
          if (!(k.p > 0.0) || k.p > 1.0) {
            throw InvalidProbability("alternating-blocks p must lie in (0, 1]");
          }
        }
      },
      kind_);
}

long Scenario::size() const {
  return std::visit(
      [](const auto& k) -> long {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, MixtureScenario>) return k.model.total_count();
        else return k.n;
      },
      kind_);
}

void Scenario::sample(SplitMix64& rng, std::vector<double>& out) const {
  out.clear();
  std::visit(
      [&rng, &out](const auto& k) {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, IidScenario>) {
          out.reserve(k.n);
          for (long i = 0; i < k.n; ++i) out.push_back(k.dist.sample(rng));
        } else if constexpr (std::is_same_v<T, FullyDependentScenario>) {
          out.assign(static_cast<std::size_t>(k.n), k.dist.sample(rng));
        } else if constexpr (std::is_same_v<T, AlternatingBlocksScenario>) {
          out.reserve(k.n);
          while (static_cast<long>(out.size()) < k.n) {
            const double x = rng.uniform01();
            long len = 1;
            if (k.p < 1.0) {
              const double u = rng.uniform01();
              const double raw = std::floor(std::log1p(-u) / std::log1p(-k.p));
              len = 1 + static_cast<long>(std::fmin(raw, 1e18));
            }
            bool flip = false;
            for (long j = 0; j < len && static_cast<long>(out.size()) < k.n; ++j) {
              out.push_back(flip ? 1.0 - x : x);
              flip = !flip;
            }
          }
        } else {
          out.reserve(k.model.total_count());
          for (const auto& c : k.model.components()) {
            for (long i = 0; i < c.count; ++i) out.push_back(c.dist.sample(rng));
          }
        }
      },
      kind_);
}

MixtureModel Scenario::marginal_model() const {
  return std::visit(
      [](const auto& k) -> MixtureModel {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, IidScenario>) {
          return MixtureModel({{k.n, k.dist}});
        } else if constexpr (std::is_same_v<T, FullyDependentScenario>) {
          return MixtureModel({{k.n, k.dist}});
        } else if constexpr (std::is_same_v<T, AlternatingBlocksScenario>) {
          return MixtureModel({{k.n, uniform_on(1.0)}});
        } else {
          return k.model;
        }
      },
      kind_);
}

namespace {

struct RepOutcome {
  double count = 0.0;
  double sum = 0.0;
  bool below_n = false;
};

void run_replicate_range(const Scenario& scenario, double s, std::uint64_t seed, long lo,
                         long hi, long n, std::vector<RepOutcome>& out) {
  std::vector<double> buf;
  std::vector<double> sorted;
  for (long r = lo; r < hi; ++r) {
    SplitMix64 rng = replicate_stream(seed, static_cast<std::uint64_t>(r));
    scenario.sample(rng, buf);
    sorted.assign(buf.begin(), buf.end());
    std::sort(sorted.begin(), sorted.end());
    const GreedyStats g = greedy_prefix(sorted, s);
    out[static_cast<std::size_t>(r)] = {static_cast<double>(g.count), g.sum, g.count < n};
  }
}

double kahan_total(const std::vector<RepOutcome>& reps, double (*pick)(const RepOutcome&)) {
  double sum = 0.0, comp = 0.0;
  for (const auto& r : reps) {
    const double y = pick(r) - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  return sum;
}

}  // namespace

McReport mc_estimate(const Scenario& scenario, double s, long reps, std::uint64_t seed,
                     int workers) {
  if (reps < 1) throw InvalidArgument("reps must be >= 1");
  if (!(s > 0.0)) throw InvalidBudget("budget s must be positive");
  if (workers < 1) workers = 1;

  const long n = scenario.size();
  std::vector<RepOutcome> outcomes(static_cast<std::size_t>(reps));

  if (workers == 1 || reps < 2 * workers) {
    run_replicate_range(scenario, s, seed, 0, reps, n, outcomes);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    const long chunk = (reps + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
      const long lo = static_cast<long>(w) * chunk;
      const long hi = std::min(reps, lo + chunk);
      if (lo >= hi) break;
      pool.emplace_back([&scenario, s, seed, lo, hi, n, &outcomes] {
        run_replicate_range(scenario, s, seed, lo, hi, n, outcomes);
      });
    }
    for (auto& th : pool) th.join();
  }

  // Index-order reduction: identical bits for any worker count.
  const double total_count = kahan_total(outcomes, [](const RepOutcome& r) { return r.count; });
  const double total_sum = kahan_total(outcomes, [](const RepOutcome& r) { return r.sum; });
  const double mean = total_count / static_cast<double>(reps);
  double ss = 0.0, comp = 0.0;
  long below = 0;
  for (const auto& r : outcomes) {
    const double d = r.count - mean;
    const double y = d * d - comp;
    const double t = ss + y;
    comp = (t - ss) - y;
    ss = t;
    below += r.below_n ? 1 : 0;
  }

  McReport rep;
  rep.reps = reps;
  rep.seed = seed;
  rep.mean_count = mean;
  rep.stderr_count =
      reps > 1 ? std::sqrt(ss / static_cast<double>(reps - 1) / static_cast<double>(reps)) : 0.0;
  rep.mean_selected_sum = total_sum / static_cast<double>(reps);
  rep.p_below_n = static_cast<double>(below) / static_cast<double>(reps);
  rep.bound_used = brs_bound(scenario.marginal_model(), s).bound;
  return rep;
}

KeyInequalityReport key_inequality_check(std::span<const double> sample, double s, double t) {
  if (!(t >= 0.0)) throw InvalidArgument("threshold t must be nonnegative");
  std::vector<double> sorted(sample.begin(), sample.end());
  std::sort(sorted.begin(), sorted.end());

  // Both A (greedy prefix) and B (values <= t) are prefixes of the sorted
  // sample, so their sums come from one accumulation pass and the inequality
  // is evaluated on consistently rounded quantities.
  KeyInequalityReport rep;
  const GreedyStats a = greedy_prefix(sorted, s);
  rep.a_count = a.count;
  rep.a_sum = a.sum;
  double run = 0.0;
  long i = 0;
  for (; i < static_cast<long>(sorted.size()) && sorted[static_cast<std::size_t>(i)] <= t; ++i) {
    run += sorted[static_cast<std::size_t>(i)];
  }
  rep.b_count = i;
  rep.b_sum = run;
  rep.lhs = t * static_cast<double>(rep.a_count - rep.b_count);
  rep.rhs = rep.a_sum - rep.b_sum;
  const double slack = 1e-9 * std::fmax(1.0, std::fabs(rep.lhs) + std::fabs(rep.rhs));
  rep.holds = rep.lhs <= rep.rhs + slack;
  return rep;
}

std::vector<RatioPoint> asymptotic_ratio(const Distribution& dist, double budget_fraction,
                                         const std::vector<long>& n_grid, std::uint64_t seed) {
  if (!(budget_fraction > 0.0)) throw InvalidFraction("budget fraction must be positive");
  if (budget_fraction >= dist.total_mean()) {
    throw TrivialRegime("budget fraction at or above the mean makes the ratio degenerate");
  }
  std::vector<RatioPoint> out;
  out.reserve(n_grid.size());
  std::vector<double> buf;
  for (std::size_t i = 0; i < n_grid.size(); ++i) {
    const long n = n_grid[i];
    if (n < 1) throw InvalidArgument("n grid entries must be >= 1");
    const double s = budget_fraction * static_cast<double>(n);
    const ThresholdSolution sol = solve_brs_equation(MixtureModel({{n, dist}}), s);
    SplitMix64 rng = replicate_stream(seed, i);
    buf.clear();
    buf.reserve(static_cast<std::size_t>(n));
    for (long j = 0; j < n; ++j) buf.push_back(dist.sample(rng));
    std::sort(buf.begin(), buf.end());
    const GreedyStats g = greedy_prefix(buf, s);
    const double denom = static_cast<double>(n) * dist.cdf(sol.t);
    out.push_back({n, static_cast<double>(g.count) / denom});
  }
  return out;
}

}  // namespace brs
