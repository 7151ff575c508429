#pragma once

#include <ostream>
#include <string>
#include <string_view>

#include "brs/dp.hpp"
#include "brs/point_process.hpp"
#include "brs/selection.hpp"
#include "brs/threshold.hpp"
#include "brs/tiling.hpp"

namespace brs {

// JSON model formats (ParseError on malformed input):
//   distribution  {"family": "uniform", "params": {"b": 1.0}}
//                 families: uniform {b}, scaled_uniform_top {k},
//                 exponential {rate}, rectangle_area {}, ellipse_area {}
//   mixture       {"components": [{"count": 100, "family": ..., "params": ...}, ...]}
//   scenario      {"kind": "iid" | "fully_dependent", "n": 100, "dist": <distribution>}
//                 {"kind": "alternating_blocks", "n": 100, "p": 0.3}
//                 {"kind": "mixture", "components": [...]}
//   tiling        {"n_rect": 300, "n_ellipse": 150, "target_area": 1.0}
// numeric_density distributions carry a function handle and do not serialize.

Distribution parse_distribution(std::string_view json_text);
MixtureModel parse_mixture(std::string_view json_text);
Scenario parse_scenario(std::string_view json_text);   // bare mixtures also accepted
TilingModel parse_tiling(std::string_view json_text);

std::string distribution_to_json(const Distribution& dist);
std::string mixture_to_json(const MixtureModel& model);

// 12-significant-digit numeric formatting shared by all CSV/JSON emitters.
std::string format_sig(double v);

std::string bound_report_to_json(const BoundReport& report);
std::string mc_report_to_json(const McReport& report);
std::string density_bias_to_json(const DensityBiasReport& report);

void write_bound_report_csv(std::ostream& out, const BoundReport& report);
void write_mc_report_csv(std::ostream& out, const McReport& report);
void write_policy_csv(std::ostream& out, const PolicyTable& table);
void write_ratio_csv(std::ostream& out, const std::vector<RatioPoint>& points);

}  // namespace brs
