#pragma once

#include <cstddef>
#include <string>

#include "neurohotnet/pipelines.hpp"
#include "neurohotnet/precision.hpp"
#include "neurohotnet_tools/config.hpp"
#include "neurohotnet_tools/report.hpp"

namespace neurohotnet::tools {

/// Copy of `config` with the defaults of its method filled in. Throws
/// ConfigError for an unknown method, a missing required key or a value
/// outside its domain.
Config resolve_config(const Config& config);

/// Runs one of the four pipelines end to end. The report holds the resolved
/// configuration, provenance (seed, input digests, version) and one row per
/// reported component. The thread count never changes the report.
Json run_pipeline(const Config& config, std::size_t threads);

TestMethod parse_test_method(const std::string& text);
NullScheme parse_null_scheme(const std::string& text);
GlassoSolver parse_solver(const std::string& text);

}  // namespace neurohotnet::tools
