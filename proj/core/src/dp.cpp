#include "brs/dp.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "brs/errors.hpp"
#include "brs/root_find.hpp"

namespace brs {

namespace {

// Inverse of the piecewise-linear interpolant of a nondecreasing row over
// grid indices [0, hi]: the state z with row(z) = target, solved exactly on
// the bracketing segment.
double inverse_on_row(const double* row, long hi, double target, double step) {
  if (target <= row[0]) return 0.0;
  if (target >= row[hi]) return step * static_cast<double>(hi);
  long lo = 0;
  long up = hi;
  while (up - lo > 1) {
    const long mid = (lo + up) / 2;
    if (row[mid] <= target) lo = mid; else up = mid;
  }
  const double rise = row[up] - row[lo];
  const double frac = rise > 0.0 ? (target - row[lo]) / rise : 0.0;
  return step * (static_cast<double>(lo) + frac);
}

double interp_row(const double* row, long hi, double step, double x) {
  if (x <= 0.0) return row[0];
  const double pos = x / step;
  long i = static_cast<long>(pos);
  if (i >= hi) return row[hi];
  const double frac = pos - static_cast<double>(i);
  return row[i] + frac * (row[i + 1] - row[i]);
}

}  // namespace

PolicyTable::PolicyTable(SequentialProblem problem, Distribution dist, long n_max,
                         long grid_size, PolicyOptions options)
    : problem_(problem),
      dist_(std::move(dist)),
      n_max_(n_max),
      grid_size_(grid_size),
      options_(options),
      step_(options.x_sup / static_cast<double>(grid_size - 1)) {
  if (n_max_ < 1) throw InvalidArgument("n_max must be >= 1");
  if (grid_size_ < 64) throw InvalidArgument("grid_size must be >= 64");
  if (!(options_.x_sup > 0.0)) throw InvalidArgument("x_sup must be positive");

  const long G = grid_size_;
  values_.assign(static_cast<std::size_t>(n_max_ + 1) * static_cast<std::size_t>(G), 0.0);
  if (options_.store_alphas) alphas_.assign(values_.size(), 0.0);

  // Per-grid-point density and cdf of the observation distribution.
  std::vector<double> f(G), F(G);
  for (long i = 0; i < G; ++i) {
    const double x = grid_point(i);
    f[i] = dist_.density(x);
    F[i] = dist_.cdf(x);
  }

  std::vector<double> w;  // prefix integral of v_{n-1}(y) f(y) dy (subsequence)
  if (problem_ == SequentialProblem::kSubsequence) w.assign(static_cast<std::size_t>(G), 0.0);

  for (long n = 1; n <= n_max_; ++n) {
    const double* prev = &values_[idx(n - 1, 0)];
    double* cur = &values_[idx(n, 0)];
    double* alph = options_.store_alphas ? &alphas_[idx(n, 0)] : nullptr;

    if (problem_ == SequentialProblem::kSubsequence) {
      for (long j = 1; j < G; ++j) {
        w[j] = w[j - 1] + 0.5 * (prev[j - 1] * f[j - 1] + prev[j] * f[j]) * step_;
      }
    }

    for (long i = 0; i < G; ++i) {
      const double x = grid_point(i);
      const double vx = prev[i];
      double v;
      double alpha;

      if (problem_ == SequentialProblem::kKnapsack) {
        // Accept y iff 1 + v_{n-1}(x - y) >= v_{n-1}(x): acceptance region
        // [0, alpha] with v_{n-1}(x - alpha) = v_{n-1}(x) - 1.
        alpha = vx <= 1.0 ? x : x - inverse_on_row(prev, i, vx - 1.0, step_);
        // int_0^alpha v_{n-1}(x - y) f(y) dy, trapezoid on grid-aligned nodes
        // (x - y lands on grid points) plus the partial end segment.
        const long m = std::min(i, static_cast<long>(alpha / step_));
        double integral = 0.0;
        for (long j = 1; j <= m; ++j) {
          integral += 0.5 * (prev[i - j + 1] * f[j - 1] + prev[i - j] * f[j]) * step_;
        }
        const double ym = step_ * static_cast<double>(m);
        if (alpha > ym) {
          const double qa = interp_row(prev, G - 1, step_, x - alpha) * dist_.density(alpha);
          integral += 0.5 * (prev[i - m] * f[m] + qa) * (alpha - ym);
        }
        const double Fa = dist_.cdf(alpha);
        v = vx * (1.0 - Fa) + Fa + integral;
      } else {
        // Accept y iff 1 + v_{n-1}(y) >= v_{n-1}(x): acceptance region
        // [alpha, x] with v_{n-1}(alpha) = v_{n-1}(x) - 1.
        alpha = vx < 1.0 ? 0.0 : inverse_on_row(prev, i, vx - 1.0, step_);
        const long m = std::min(i, static_cast<long>(alpha / step_));
        const double ym = step_ * static_cast<double>(m);
        double w_alpha = w[m];
        if (alpha > ym) {
          const double qa = interp_row(prev, G - 1, step_, alpha) * dist_.density(alpha);
          w_alpha += 0.5 * (prev[m] * f[m] + qa) * (alpha - ym);
        }
        const double Fa = dist_.cdf(alpha);
        v = vx * (1.0 - F[i] + Fa) + (F[i] - Fa) + (w[i] - w_alpha);
      }

      cur[i] = v;
      if (alph) alph[i] = alpha;
    }
  }

  if (options_.check_grid && G >= 128) {
    PolicyOptions coarse_opt = options_;
    coarse_opt.check_grid = false;
    coarse_opt.store_alphas = false;
    PolicyTable coarse(problem_, dist_, n_max_, G / 2, coarse_opt);
    const double fine_v = value(n_max_, G - 1);
    const double coarse_v = coarse.value(n_max_, coarse.grid_size() - 1);
    if (std::fabs(fine_v - coarse_v) > options_.grid_tol) {
      throw GridTooCoarse("value at x_sup moved by " + std::to_string(fine_v - coarse_v) +
                          " under grid refinement");
    }
  }
}

double PolicyTable::value_at(long n, double x) const {
  if (n < 0 || n > n_max_) throw OutOfRange("level n outside policy table");
  return interp_row(&values_[idx(n, 0)], grid_size_ - 1, step_,
                    std::clamp(x, 0.0, options_.x_sup));
}

bool PolicyTable::accepts(long n, double state, double x) const {
  if (n < 1 || n > n_max_) throw OutOfRange("level n outside policy table");
  if (x > state) return false;
  if (problem_ == SequentialProblem::kKnapsack) {
    return 1.0 + value_at(n - 1, state - x) >= value_at(n - 1, state);
  }
  return 1.0 + value_at(n - 1, x) >= value_at(n - 1, state);
}

PolicyTable knapsack_value(const Distribution& dist, long n_max, long grid_size,
                           const PolicyOptions& options) {
  return PolicyTable(SequentialProblem::kKnapsack, dist, n_max, grid_size, options);
}

PolicyTable subsequence_value(const Distribution& dist, long n_max, long grid_size,
                              const PolicyOptions& options) {
  return PolicyTable(SequentialProblem::kSubsequence, dist, n_max, grid_size, options);
}

double indifference_threshold(const PolicyTable& table, long n, double x) {
  if (table.problem() != SequentialProblem::kSubsequence) {
    throw OutOfRange("indifference_threshold applies to Subsequence tables");
  }
  if (n < 1 || n > table.n_max()) throw OutOfRange("level n outside policy table");
  if (x < 0.0 || x > table.x_sup()) throw OutOfRange("state x outside [0, x_sup]");
  const double vx = table.value_at(n - 1, x);
  if (vx < 1.0) return 0.0;
  const auto g = [&table, n, vx](double y) { return table.value_at(n - 1, y) - (vx - 1.0); };
  return bisect_monotone(g, 0.0, x);
}

long run_policy(const PolicyTable& table, std::span<const double> sample) {
  const long horizon = static_cast<long>(sample.size());
  if (horizon > table.n_max()) throw OutOfRange("sample longer than the policy horizon");
  double state = table.x_sup();
  long count = 0;
  for (long i = 0; i < horizon; ++i) {
    const long remaining = horizon - i;
    const double x = sample[static_cast<std::size_t>(i)];
    if (table.accepts(remaining, state, x)) {
      ++count;
      state = table.problem() == SequentialProblem::kKnapsack ? state - x : x;
    }
  }
  return count;
}

PolicySimulation simulate_policy(const PolicyTable& table, long reps, std::uint64_t seed,
                                 int workers) {
  if (reps < 1) throw InvalidArgument("reps must be >= 1");
  if (workers < 1) workers = 1;
  const long n = table.n_max();
  std::vector<long> counts(static_cast<std::size_t>(reps), 0);

  const auto run_range = [&table, seed, n, &counts](long lo, long hi) {
    std::vector<double> buf(static_cast<std::size_t>(n));
    for (long r = lo; r < hi; ++r) {
      SplitMix64 rng = replicate_stream(seed, static_cast<std::uint64_t>(r));
      for (long i = 0; i < n; ++i) buf[static_cast<std::size_t>(i)] = table.dist().sample(rng);
      counts[static_cast<std::size_t>(r)] = run_policy(table, buf);
    }
  };

  if (workers == 1 || reps < 2 * workers) {
    run_range(0, reps);
  } else {
    std::vector<std::thread> pool;
    const long chunk = (reps + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
      const long lo = static_cast<long>(w) * chunk;
      const long hi = std::min(reps, lo + chunk);
      if (lo >= hi) break;
      pool.emplace_back(run_range, lo, hi);
    }
    for (auto& th : pool) th.join();
  }

  PolicySimulation sim;
  sim.samples = std::move(counts);
  sim.seed = seed;
  double total = 0.0;
  for (long c : sim.samples) total += static_cast<double>(c);
  sim.mean = total / static_cast<double>(reps);
  double ss = 0.0;
  for (long c : sim.samples) {
    const double d = static_cast<double>(c) - sim.mean;
    ss += d * d;
  }
  sim.variance = reps > 1 ? ss / static_cast<double>(reps - 1) : 0.0;
  return sim;
}

long clairvoyant_lis(std::span<const double> sample) {
  std::vector<double> tails;
  tails.reserve(sample.size());
  for (double x : sample) {
    const auto it = std::lower_bound(tails.begin(), tails.end(), x);
    if (it == tails.end()) tails.push_back(x);
    else *it = x;
  }
  return static_cast<long>(tails.size());
}

}  // namespace brs
