#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "neurohotnet/graph.hpp"

namespace neurohotnet::tools {

using Json = nlohmann::ordered_json;

/// One row of a component table: label, size, regions, p-value and the mean
/// weighted degree of the members in the raw structural graph.
struct ComponentRow {
  std::string label;
  NodeSet component;
  std::optional<double> p_value;
  std::optional<double> statistic;
  std::optional<double> mean_weighted_degree;
  std::optional<bool> selected;
};

Json component_row_json(const ComponentRow& row, const std::vector<std::string>& labels);
Json component_rows_json(const std::vector<ComponentRow>& rows,
                         const std::vector<std::string>& labels);

/// Rows labelled prefix1, prefix2, ... in the given order.
std::vector<ComponentRow> label_rows(const std::vector<NodeSet>& components,
                                     const std::string& prefix);

double mean_weighted_degree(const WeightedGraph& g, const NodeSet& component);
void attach_degrees(std::vector<ComponentRow>& rows, const WeightedGraph* structural);

/// Region-name sets listed under "components" of a report.
std::vector<std::vector<std::string>> parse_report_components(const nlohmann::json& report);

/// Components from a report-style JSON document or a text file with one
/// component per line (comma-separated region names, '#' comments).
std::vector<NodeSet> read_components_file(const std::filesystem::path& path,
                                          const std::vector<std::string>& labels);

/// (name, path) pairs -> [{"name", "sha256"}] in the given order.
Json input_digests(const std::vector<std::pair<std::string, std::filesystem::path>>& inputs);

/// Two-space indented JSON followed by a newline.
std::string dump(const Json& doc);

}  // namespace neurohotnet::tools
