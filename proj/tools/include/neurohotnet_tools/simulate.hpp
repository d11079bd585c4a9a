#pragma once

#include <string>
#include <vector>

#include "neurohotnet/simlab.hpp"
#include "neurohotnet_tools/report.hpp"

namespace neurohotnet::tools {

/// Recovery-study settings for `regions` (nu 2.5e-4 at 120 regions and
/// 1.5e-4 above; delta 1.8e-3; epsilon 8e-4).
SimConfig study1_preset(std::size_t regions);

/// "a:b:n" rounded to whole region counts.
std::vector<std::size_t> size_grid(const std::string& text);

Json sim_config_json(const SimConfig& cfg);
Json study1_json(const SimResult& result, bool timings);
Json study2_json(const RuntimeResult& result, bool timings);

/// CSV with columns size,method,recovery,ci (study 1) or
/// size,method,seconds,components (study 2).
std::string study1_table(const SimResult& result);
std::string study2_table(const RuntimeResult& result);

}  // namespace neurohotnet::tools
