// brs: thresholds and expected-count bounds for budget-constrained selection.
//
//   brs solve        --model m.json --budget 2
//   brs bound        --model m.json --budget 2 [--selected-sum E] [--p-n P]
//   brs mc           --model scenario.json --budget 2 --reps 10000 [--workers 4]
//   brs dp           --problem knapsack|subsequence --n 50 --grid 1024 [--simulate R]
//   brs poisson-bias --fraction 0.5 | --model m.json --budget s | --curve
//   brs tiling       --rects 300 --ellipses 150 --budget 1 [--reps R]
//   brs ratio        --dist d.json --fraction 0.125 --n-grid 1000,10000,100000
//   brs reproduce    [--out table.csv]
//
// Model files are JSON (see brs/io.hpp for the schemas); --model/--dist also
// accept inline JSON starting with '{'.  Results go to stdout or, with
// --out, to a temp file renamed into place only on success.  Every run is a
// pure function of its arguments and seed; --workers never changes output.
// Exit codes: 0 success, 1 invalid input, 2 numerical failure.

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "brs/dp.hpp"
#include "brs/errors.hpp"
#include "brs/io.hpp"
#include "brs/point_process.hpp"
#include "brs/selection.hpp"
#include "brs/threshold.hpp"
#include "brs/tiling.hpp"

namespace {

constexpr std::uint64_t kDefaultSeed = 123456789ULL;

std::string load_model_text(const std::string& arg) {
  const auto first = arg.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && arg[first] == '{') return arg;  // inline JSON
  std::ifstream in(arg, std::ios::binary);
  if (!in) throw brs::ParseError("cannot open model file: " + arg);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void emit(const std::string& out_path, const std::string& content) {
  if (out_path.empty()) {
    std::cout << content;
    return;
  }
  const std::filesystem::path target(out_path);
  const std::filesystem::path tmp(out_path + ".tmp");
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw brs::InvalidArgument("cannot write output file: " + out_path);
    out << content;
    if (!out.good()) throw brs::InvalidArgument("write failed: " + out_path);
  }
  std::filesystem::rename(tmp, target);
}

std::vector<long> parse_long_list(const std::string& text) {
  std::vector<long> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    out.push_back(std::stol(item));
  }
  if (out.empty()) throw brs::InvalidArgument("empty integer list");
  return out;
}

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    out.push_back(std::stod(item));
  }
  if (out.empty()) throw brs::InvalidArgument("empty numeric list");
  return out;
}

// One reproduction check: |computed - reference| <= tolerance, or for
// upper-bound rows computed <= reference + tolerance.
struct ReproRow {
  std::string label;
  double reference = 0.0;
  double computed = 0.0;
  double tolerance = 0.0;
  bool upper_bound = false;

  bool pass() const {
    if (upper_bound) return computed <= reference + tolerance;
    return std::fabs(computed - reference) <= tolerance;
  }
};

std::string render_repro_table(const std::vector<ReproRow>& rows) {
  std::ostringstream out;
  out << "label,reference,computed,tolerance,status\n";
  for (const auto& r : rows) {
    out << r.label << "," << brs::format_sig(r.reference) << "," << brs::format_sig(r.computed)
        << "," << brs::format_sig(r.tolerance) << "," << (r.pass() ? "pass" : "fail") << "\n";
  }
  return out.str();
}

std::vector<ReproRow> run_reproduction(std::uint64_t seed, int workers) {
  using namespace brs;
  std::vector<ReproRow> rows;

  {  // Uniform closed forms: t = sqrt(2s/n), bound = sqrt(2sn).
    const MixtureModel m({{100, uniform_on(1.0)}});
    const BoundReport r = brs_bound(m, 2.0);
    rows.push_back({"uniform_threshold_n100_s2", 0.2, r.solution.t, 1e-9});
    rows.push_back({"uniform_bound_n100_s2", 20.0, r.bound, 1e-9});
  }
  {  // One item from each of U[0,k], k=1..10: bound = sqrt(2 H_10).
    std::vector<MixtureComponent> comps;
    double h10 = 0.0;
    for (long k = 1; k <= 10; ++k) {
      comps.push_back({1, uniform_on(static_cast<double>(k))});
      h10 += 1.0 / static_cast<double>(k);
    }
    const BoundReport r = brs_bound(MixtureModel(std::move(comps)), 1.0);
    rows.push_back({"harmonic_bound_n10_s1", std::sqrt(2.0 * h10), r.bound, 1e-8});
  }
  {  // Budget covering the full expected demand: bound collapses to n.
    const BoundReport r = brs_bound(MixtureModel({{10, uniform_on(1.0)}}), 5.0);
    rows.push_back({"trivial_budget_bound_n10_s5", 10.0, r.bound, 0.0});
  }
  rows.push_back({"rectangle_cdf_at_half", 0.5 * (1.0 - std::log(0.5)),
                  rectangle_area().cdf(0.5), 1e-12});
  {  // Memoryless stream, half the mean span selected.
    const double t = poisson_threshold(0.5);
    rows.push_back({"poisson_threshold_f0.5", 1.67835, t, 5e-4});
    rows.push_back({"poisson_density_f0.5", 1.62664, 2.0 * (1.0 - std::exp(-t)), 5e-4});
    const double t05 = poisson_threshold(0.05);
    rows.push_back({"poisson_inflation_f0.05", 5.95, (1.0 - std::exp(-t05)) / 0.05, 0.15});
  }
  {  // Two-shape tiling: 300 rectangles + 150 ellipses, unit target area.
    const TilingModel tm{300, 150, 1.0};
    const ThresholdSolution sol = tiling_threshold(tm);
    rows.push_back({"tiling_threshold_300r_150e_s1", 0.0326, sol.t, 5e-4});
    rows.push_back({"tiling_bound_300r_150e_s1", 69.325, tiling_bound(tm), 5e-2});
    double mean_greedy = 0.0, mean_area = 0.0, ss = 0.0;
    const long reps = 1000;
    std::vector<double> counts(reps);
    for (long r = 0; r < reps; ++r) {
      const ShapeSelectionResult sel =
          simulate_shape_selection(tm, seed + 11 + static_cast<std::uint64_t>(r) * 7919ULL);
      counts[r] = static_cast<double>(sel.greedy_count);
      mean_greedy += counts[r];
      mean_area += sel.below_threshold_area;
    }
    mean_greedy /= reps;
    mean_area /= reps;
    for (double c : counts) ss += (c - mean_greedy) * (c - mean_greedy);
    const double se = std::sqrt(ss / (reps - 1) / reps);
    ReproRow mc_row{"tiling_mc_mean_1000reps_upper_bound", 69.325, mean_greedy, 3.0 * se};
    mc_row.upper_bound = true;
    rows.push_back(mc_row);
    rows.push_back({"tiling_threshold_area_mean_1000reps", 1.0, mean_area, 0.05});
  }
  {  // Identical copies of one uniform draw: E N = sum_k min(1, s/k).
    const auto dep_mean = [](long n, double s) {
      double sum = 0.0;
      for (long k = 1; k <= n; ++k) sum += std::fmin(1.0, s / static_cast<double>(k));
      return sum;
    };
    const McReport a = mc_estimate(Scenario(FullyDependentScenario{3, uniform_on(1.0)}), 1.0,
                                   100000, seed + 21, workers);
    rows.push_back({"full_dependence_mean_n3_s1", dep_mean(3, 1.0), a.mean_count,
                    3.0 * a.stderr_count});
    const McReport b = mc_estimate(Scenario(FullyDependentScenario{100, uniform_on(1.0)}), 2.5,
                                   100000, seed + 22, workers);
    rows.push_back({"full_dependence_mean_n100_s2.5", dep_mean(100, 2.5), b.mean_count,
                    3.0 * b.stderr_count});
  }
  {  // Online selection DP, uniform observations on [0, 1].
    const Distribution u = uniform_on(1.0);
    const PolicyTable knap = knapsack_value(u, 50, 1024);
    const PolicyTable sub = subsequence_value(u, 50, 1024);
    const double v50 = knap.value(50, knap.grid_size() - 1);
    const double vt50 = sub.value(50, sub.grid_size() - 1);
    rows.push_back({"dp_identity_gap_n50", 0.0, std::fabs(v50 - vt50), 1e-2});
    ReproRow cap{"knapsack_value_n50_upper_bound", 10.0, v50, 0.0};
    cap.upper_bound = true;
    rows.push_back(cap);
    const PolicySimulation sim = simulate_policy(knap, 10000, seed + 31, workers);
    const double se = std::sqrt(sim.variance / static_cast<double>(sim.samples.size()));
    rows.push_back({"knapsack_policy_mean_n50_10000reps", v50, sim.mean, 3.0 * se});

    PolicyOptions big;
    big.store_alphas = false;
    const PolicyTable sub200 = subsequence_value(u, 200, 1024, big);
    ReproRow cap200{"subsequence_value_n200_upper_bound", 20.0,
                    sub200.value(200, sub200.grid_size() - 1), 0.0};
    cap200.upper_bound = true;
    rows.push_back(cap200);

    PolicyOptions long_horizon = big;
    long_horizon.grid_tol = 1e-2;  // terminal value is ~100 at this horizon
    const PolicyTable sub5000 = subsequence_value(u, 5000, 1024, long_horizon);
    const PolicySimulation var_sim = simulate_policy(sub5000, 1000, seed + 32, workers);
    const double var_limit = std::sqrt(2.0 * 5000.0) / 3.0;
    rows.push_back({"subsequence_var_ratio_n5000_1000reps", 1.0, var_sim.variance / var_limit,
                    0.3});
  }
  {  // Full-information benchmark: mean longest increasing run length.
    const long n = 10000, reps = 200;
    double total = 0.0;
    std::vector<double> buf(n);
    for (long r = 0; r < reps; ++r) {
      SplitMix64 rng = replicate_stream(seed + 41, static_cast<std::uint64_t>(r));
      for (auto& x : buf) x = rng.uniform01();
      total += static_cast<double>(clairvoyant_lis(buf));
    }
    const double mean = total / reps;
    const double ref = 2.0 * std::sqrt(static_cast<double>(n)) -
                       1.77108 * std::pow(static_cast<double>(n), 1.0 / 6.0);
    rows.push_back({"lis_mean_n10000_200reps", ref, mean, 0.03 * ref});
  }
  {  // Single-path count over its expected-count prediction, large n.
    const auto last_ratio = [seed](const Distribution& d, double f, std::uint64_t salt) {
      return asymptotic_ratio(d, f, {100000}, seed + salt).back().ratio;
    };
    rows.push_back({"ratio_uniform_f0.125_n100000", 1.0, last_ratio(uniform_on(1.0), 0.125, 51),
                    0.03});
    rows.push_back({"ratio_exponential_f0.5_n100000", 1.0, last_ratio(exponential(1.0), 0.5, 52),
                    0.03});
  }
  return rows;
}

int dispatch(int argc, char** argv) {
  using namespace brs;

  CLI::App app{"thresholds and expected-count bounds for budget-constrained selection"};
  app.require_subcommand(1);

  std::string model_arg, dist_arg, out_path, format = "json";
  double budget = 0.0, fraction = 0.0, selected_sum = -1.0, p_below = -1.0, x_sup = 1.0;
  long reps = 10000, n_items = 50, grid = 1024, sim_reps = 0;
  long rects = 300, ellipses = 150;
  std::uint64_t seed = kDefaultSeed;
  int workers = 1;
  std::string problem = "knapsack", n_grid_text = "1000,10000,100000";
  std::string fractions_text = "0.25,0.5,0.75";
  double t_max = 6.0;
  long curve_points = 121;
  bool curve = false;

  const auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--out", out_path, "write output to this path (atomic rename)");
    cmd->add_option("--seed", seed, "RNG seed")->envname("BRS_SEED");
    cmd->add_option("--workers", workers, "worker threads (never changes results)")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--format", format, "output format: json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
  };

  CLI::App* solve = app.add_subcommand("solve", "solve the budget equation for a mixture");
  solve->add_option("--model", model_arg, "mixture JSON (file or inline)")->required();
  solve->add_option("--budget", budget, "budget s")->required();
  add_common(solve);

  CLI::App* bound = app.add_subcommand("bound", "expected-count bound report");
  bound->add_option("--model", model_arg, "mixture JSON (file or inline)")->required();
  bound->add_option("--budget", budget, "budget s")->required();
  bound->add_option("--selected-sum", selected_sum, "E(S_A) for the residual-corrected bound");
  bound->add_option("--p-n", p_below, "P(N < n) for the conditioned bound");
  add_common(bound);

  CLI::App* mc = app.add_subcommand("mc", "Monte Carlo count estimate for a scenario");
  mc->add_option("--model", model_arg, "scenario or mixture JSON (file or inline)")->required();
  mc->add_option("--budget", budget, "budget s")->required();
  mc->add_option("--reps", reps, "replications")->check(CLI::PositiveNumber);
  add_common(mc);

  CLI::App* dp = app.add_subcommand("dp", "sequential selection value tables");
  dp->add_option("--problem", problem, "knapsack or subsequence")
      ->check(CLI::IsMember({"knapsack", "subsequence"}));
  dp->add_option("--n", n_items, "horizon length")->check(CLI::PositiveNumber);
  dp->add_option("--grid", grid, "state grid size (>= 64)");
  dp->add_option("--x-sup", x_sup, "initial state");
  dp->add_option("--dist", dist_arg, "observation distribution JSON (default uniform on [0,1])");
  dp->add_option("--simulate", sim_reps, "also run this many policy replications");
  add_common(dp);

  CLI::App* pb = app.add_subcommand("poisson-bias", "selection-bias of condensed renewal streams");
  pb->add_option("--fraction", fraction, "budget fraction s/n in (0,1)");
  pb->add_option("--model", model_arg, "mixture JSON for the general report");
  pb->add_option("--budget", budget, "budget s (with --model)");
  pb->add_flag("--curve", curve, "emit the threshold-equation curve as CSV");
  pb->add_option("--t-max", t_max, "curve upper end");
  pb->add_option("--points", curve_points, "curve sample count");
  pb->add_option("--fractions", fractions_text, "comma list of budget fractions for the curve");
  add_common(pb);

  CLI::App* tiling = app.add_subcommand("tiling", "two-shape packing threshold and bound");
  tiling->add_option("--model", model_arg, "tiling JSON (file or inline)");
  tiling->add_option("--rects", rects, "rectangle count");
  tiling->add_option("--ellipses", ellipses, "ellipse count");
  tiling->add_option("--budget", budget, "target area");
  tiling->add_option("--reps", sim_reps, "emit per-replication selection CSV");
  add_common(tiling);

  CLI::App* ratio = app.add_subcommand("ratio", "single-path count over its predicted count");
  ratio->add_option("--dist", dist_arg, "distribution JSON (file or inline)")->required();
  ratio->add_option("--fraction", fraction, "budget fraction per item")->required();
  ratio->add_option("--n-grid", n_grid_text, "comma list of n values");
  add_common(ratio);

  CLI::App* repro = app.add_subcommand("reproduce", "check all pinned reference values");
  add_common(repro);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;  // normalize CLI11's error codes to "invalid input"
  }

  if (solve->parsed()) {
    const MixtureModel model = parse_mixture(load_model_text(model_arg));
    const BoundReport report = brs_bound(model, budget);
    if (format == "csv") {
      std::ostringstream os;
      write_bound_report_csv(os, report);
      emit(out_path, os.str());
    } else {
      emit(out_path, bound_report_to_json(report) + "\n");
    }
    return 0;
  }

  if (bound->parsed()) {
    const MixtureModel model = parse_mixture(load_model_text(model_arg));
    const BoundReport report = brs_bound(model, budget);
    std::string json_text = bound_report_to_json(report);
    json_text.pop_back();  // reopen the object to append optional fields
    if (selected_sum >= 0.0) {
      json_text += ",\"refined_bound\":" + format_sig(refined_bound(model, budget, selected_sum));
      if (p_below >= 0.0) {
        json_text += ",\"corollary_bound\":" +
                     format_sig(corollary_bound(model, budget, p_below, selected_sum));
      }
    }
    json_text += "}\n";
    if (format == "csv") {
      std::ostringstream os;
      write_bound_report_csv(os, report);
      emit(out_path, os.str());
    } else {
      emit(out_path, json_text);
    }
    return 0;
  }

  if (mc->parsed()) {
    const Scenario scenario = parse_scenario(load_model_text(model_arg));
    const McReport report = mc_estimate(scenario, budget, reps, seed, workers);
    if (format == "csv") {
      std::ostringstream os;
      write_mc_report_csv(os, report);
      emit(out_path, os.str());
    } else {
      emit(out_path, mc_report_to_json(report) + "\n");
    }
    return 0;
  }

  if (dp->parsed()) {
    const Distribution dist =
        dist_arg.empty() ? uniform_on(1.0) : parse_distribution(load_model_text(dist_arg));
    PolicyOptions options;
    options.x_sup = x_sup;
    const PolicyTable table =
        problem == "knapsack" ? knapsack_value(dist, n_items, grid, options)
                              : subsequence_value(dist, n_items, grid, options);
    if (format == "csv") {
      std::ostringstream os;
      write_policy_csv(os, table);
      emit(out_path, os.str());
      return 0;
    }
    std::ostringstream os;
    os << "{\"problem\":\"" << problem << "\",\"n\":" << n_items << ",\"grid\":" << grid
       << ",\"x_sup\":" << format_sig(x_sup) << ",\"value\":"
       << format_sig(table.value(n_items, table.grid_size() - 1));
    if (sim_reps > 0) {
      const PolicySimulation sim = simulate_policy(table, sim_reps, seed, workers);
      os << ",\"simulated_mean\":" << format_sig(sim.mean)
         << ",\"simulated_variance\":" << format_sig(sim.variance)
         << ",\"simulated_reps\":" << sim_reps;
    }
    os << "}\n";
    emit(out_path, os.str());
    return 0;
  }

  if (pb->parsed()) {
    if (curve) {
      std::vector<double> ts(static_cast<std::size_t>(curve_points));
      for (long i = 0; i < curve_points; ++i) {
        ts[static_cast<std::size_t>(i)] =
            t_max * static_cast<double>(i) / static_cast<double>(curve_points - 1);
      }
      std::ostringstream os;
      write_poisson_bias_curve(os, ts, parse_double_list(fractions_text));
      emit(out_path, os.str());
      return 0;
    }
    if (!model_arg.empty()) {
      const MixtureModel model = parse_mixture(load_model_text(model_arg));
      const DensityBiasReport report = max_density_bound(model, budget);
      emit(out_path, density_bias_to_json(report) + "\n");
      return 0;
    }
    const double t = poisson_threshold(fraction);
    std::ostringstream os;
    os << "{\"fraction\":" << format_sig(fraction) << ",\"t\":" << format_sig(t)
       << ",\"density_bound\":" << format_sig((1.0 - std::exp(-t)) / fraction)
       << ",\"inflation\":" << format_sig((1.0 - std::exp(-t)) / fraction) << "}\n";
    emit(out_path, os.str());
    return 0;
  }

  if (tiling->parsed()) {
    TilingModel model{rects, ellipses, budget > 0.0 ? budget : 1.0};
    if (!model_arg.empty()) model = parse_tiling(load_model_text(model_arg));
    if (sim_reps > 0) {
      std::ostringstream os;
      os << "rep,greedy_count,greedy_area,below_threshold_count,below_threshold_area,"
            "sequential_count\n";
      for (long r = 0; r < sim_reps; ++r) {
        const ShapeSelectionResult sel =
            simulate_shape_selection(model, seed + static_cast<std::uint64_t>(r));
        os << r << "," << sel.greedy_count << "," << format_sig(sel.greedy_area) << ","
           << sel.below_threshold_count << "," << format_sig(sel.below_threshold_area) << ","
           << sel.sequential_count << "\n";
      }
      emit(out_path, os.str());
      return 0;
    }
    const ThresholdSolution sol = tiling_threshold(model);
    std::ostringstream os;
    os << "{\"n_rect\":" << model.n_rect << ",\"n_ellipse\":" << model.n_ellipse
       << ",\"target_area\":" << format_sig(model.target_area) << ",\"t\":" << format_sig(sol.t)
       << ",\"trivial\":" << (sol.trivial ? "true" : "false")
       << ",\"bound\":" << format_sig(tiling_bound(model)) << "}\n";
    emit(out_path, os.str());
    return 0;
  }

  if (ratio->parsed()) {
    const Distribution dist = parse_distribution(load_model_text(dist_arg));
    const auto points = asymptotic_ratio(dist, fraction, parse_long_list(n_grid_text), seed);
    std::ostringstream os;
    write_ratio_csv(os, points);
    emit(out_path, os.str());
    return 0;
  }

  if (repro->parsed()) {
    emit(out_path, render_repro_table(run_reproduction(seed, workers)));
    return 0;
  }

  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return dispatch(argc, argv);
  } catch (const brs::NumericError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
