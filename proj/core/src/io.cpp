#include "brs/io.hpp"

#include <cmath>
#include <cstdio>

#include <json.hpp>

#include "brs/errors.hpp"

namespace brs {

namespace {

using nlohmann::json;

json must_parse(std::string_view text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw ParseError("malformed JSON input");
  return j;
}

double get_number(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number()) {
    throw ParseError(std::string("expected numeric field \"") + key + "\"");
  }
  return j.at(key).get<double>();
}

long get_count(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number_integer()) {
    throw ParseError(std::string("expected integer field \"") + key + "\"");
  }
  return j.at(key).get<long>();
}

Distribution distribution_from(const json& j) {
  if (!j.contains("family") || !j.at("family").is_string()) {
    throw ParseError("distribution requires a string \"family\"");
  }
  const std::string family = j.at("family").get<std::string>();
  const json params = j.value("params", json::object());
  if (family == "uniform") return uniform_on(get_number(params, "b"));
  if (family == "scaled_uniform_top") return scaled_uniform_top(get_count(params, "k"));
  if (family == "exponential") return exponential(get_number(params, "rate"));
  if (family == "rectangle_area") return rectangle_area();
  if (family == "ellipse_area") return ellipse_area();
  if (family == "numeric_density") {
    throw ParseError("numeric_density carries a function handle and cannot be parsed");
  }
  throw ParseError("unknown distribution family \"" + family + "\"");
}

json distribution_to(const Distribution& dist) {
  json params = json::object();
  const auto& fam = dist.family();
  if (const auto* u = std::get_if<UniformOn>(&fam)) {
    params["b"] = u->b;
  } else if (const auto* s = std::get_if<ScaledUniformTop>(&fam)) {
    params["k"] = s->k;
  } else if (const auto* e = std::get_if<Exponential>(&fam)) {
    params["rate"] = e->rate;
  } else if (std::get_if<NumericDensity>(&fam)) {
    throw ParseError("numeric_density carries a function handle and cannot be serialized");
  }
  return json{{"family", dist.family_name()}, {"params", params}};
}

MixtureModel mixture_from(const json& j) {
  if (!j.contains("components") || !j.at("components").is_array() || j.at("components").empty()) {
    throw ParseError("mixture requires a nonempty \"components\" array");
  }
  std::vector<MixtureComponent> components;
  for (const json& c : j.at("components")) {
    const long count = get_count(c, "count");
    if (count < 1) throw ParseError("component counts must be >= 1");
    components.push_back({count, distribution_from(c)});
  }
  return MixtureModel(std::move(components));
}

Scenario scenario_from(const json& j) {
  if (!j.contains("kind")) {
    return Scenario(MixtureScenario{mixture_from(j)});  // bare mixture
  }
  if (!j.at("kind").is_string()) throw ParseError("scenario \"kind\" must be a string");
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "mixture") return Scenario(MixtureScenario{mixture_from(j)});
  const long n = get_count(j, "n");
  if (kind == "alternating_blocks") {
    return Scenario(AlternatingBlocksScenario{n, get_number(j, "p")});
  }
  if (!j.contains("dist")) throw ParseError("scenario requires a \"dist\" object");
  Distribution dist = distribution_from(j.at("dist"));
  if (kind == "iid") return Scenario(IidScenario{n, std::move(dist)});
  if (kind == "fully_dependent") return Scenario(FullyDependentScenario{n, std::move(dist)});
  throw ParseError("unknown scenario kind \"" + kind + "\"");
}

}  // namespace

Distribution parse_distribution(std::string_view json_text) {
  return distribution_from(must_parse(json_text));
}

MixtureModel parse_mixture(std::string_view json_text) {
  return mixture_from(must_parse(json_text));
}

Scenario parse_scenario(std::string_view json_text) {
  return scenario_from(must_parse(json_text));
}

TilingModel parse_tiling(std::string_view json_text) {
  const json j = must_parse(json_text);
  TilingModel model;
  model.n_rect = get_count(j, "n_rect");
  model.n_ellipse = get_count(j, "n_ellipse");
  model.target_area = get_number(j, "target_area");
  return model;
}

std::string distribution_to_json(const Distribution& dist) {
  return distribution_to(dist).dump();
}

std::string mixture_to_json(const MixtureModel& model) {
  json components = json::array();
  for (const auto& c : model.components()) {
    json entry = distribution_to(c.dist);
    entry["count"] = c.count;
    components.push_back(std::move(entry));
  }
  return json{{"components", components}}.dump();
}

std::string format_sig(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

namespace {

// Emit numbers through the shared formatter so JSON and CSV agree byte-wise.
// Infinite thresholds (trivial regime, unbounded support) become strings,
// since JSON has no infinity literal.
json sig(double v) {
  if (!std::isfinite(v)) return json(format_sig(v));
  const json j = json::parse(format_sig(v), nullptr, false);
  return j.is_discarded() ? json(v) : j;
}

json solution_to(const ThresholdSolution& sol) {
  return json{{"t", sig(sol.t)},
              {"residual", sig(sol.equation_residual)},
              {"trivial", sol.trivial},
              {"iterations", sol.iterations}};
}

}  // namespace

std::string bound_report_to_json(const BoundReport& report) {
  json j = solution_to(report.solution);
  j["bound"] = sig(report.bound);
  json per = json::array();
  for (double p : report.per_component) per.push_back(sig(p));
  j["per_component"] = per;
  return j.dump();
}

std::string mc_report_to_json(const McReport& report) {
  return json{{"reps", report.reps},
              {"seed", report.seed},
              {"mean_count", sig(report.mean_count)},
              {"stderr_count", sig(report.stderr_count)},
              {"mean_selected_sum", sig(report.mean_selected_sum)},
              {"p_below_n", sig(report.p_below_n)},
              {"bound_used", sig(report.bound_used)}}
      .dump();
}

std::string density_bias_to_json(const DensityBiasReport& report) {
  json j = solution_to(report.solution);
  j["n"] = report.n;
  j["s"] = sig(report.s);
  j["d_max_bound"] = sig(report.d_max_bound);
  j["true_rate"] = sig(report.true_rate);
  j["inflation"] = sig(report.inflation);
  j["min_density_dual"] = sig(report.min_density_dual);
  return j.dump();
}

void write_bound_report_csv(std::ostream& out, const BoundReport& report) {
  out << "component,contribution\n";
  for (std::size_t i = 0; i < report.per_component.size(); ++i) {
    out << i << "," << format_sig(report.per_component[i]) << "\n";
  }
  out << "total," << format_sig(report.bound) << "\n";
}

void write_mc_report_csv(std::ostream& out, const McReport& report) {
  out << "reps,seed,mean_count,stderr_count,mean_selected_sum,p_below_n,bound_used\n";
  out << report.reps << "," << report.seed << "," << format_sig(report.mean_count) << ","
      << format_sig(report.stderr_count) << "," << format_sig(report.mean_selected_sum) << ","
      << format_sig(report.p_below_n) << "," << format_sig(report.bound_used) << "\n";
}

void write_policy_csv(std::ostream& out, const PolicyTable& table) {
  out << "n,x,value" << (table.has_alphas() ? ",alpha" : "") << "\n";
  for (long n = 1; n <= table.n_max(); ++n) {
    for (long i = 0; i < table.grid_size(); ++i) {
      out << n << "," << format_sig(table.grid_point(i)) << "," << format_sig(table.value(n, i));
      if (table.has_alphas()) out << "," << format_sig(table.alpha(n, i));
      out << "\n";
    }
  }
}

void write_ratio_csv(std::ostream& out, const std::vector<RatioPoint>& points) {
  out << "n,ratio\n";
  for (const auto& p : points) out << p.n << "," << format_sig(p.ratio) << "\n";
}

}  // namespace brs
