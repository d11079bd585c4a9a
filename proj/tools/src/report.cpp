#include "neurohotnet_tools/report.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include "neurohotnet/error.hpp"
#include "neurohotnet_tools/digest.hpp"

namespace neurohotnet::tools {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

NodeSet to_node_set(const std::vector<std::string>& names,
                    const std::map<std::string, std::size_t>& index, const std::string& where) {
  std::vector<std::size_t> members;
  for (const auto& name : names) {
    const auto it = index.find(name);
    if (it == index.end()) throw InputError(where + ": unknown region '" + name + "'");
    members.push_back(it->second);
  }
  try {
    return NodeSet(std::move(members), index.size());
  } catch (const Error& e) {
    throw InputError(where + ": " + e.what());
  }
}

}  // namespace

Json component_row_json(const ComponentRow& row, const std::vector<std::string>& labels) {
  Json j;
  j["label"] = row.label;
  j["size"] = row.component.size();
  Json regions = Json::array();
  for (const auto m : row.component.members()) regions.push_back(labels.at(m));
  j["regions"] = std::move(regions);
  j["p_value"] = row.p_value ? Json(*row.p_value) : Json(nullptr);
  if (row.statistic) j["statistic"] = *row.statistic;
  j["mean_weighted_degree"] =
      row.mean_weighted_degree ? Json(*row.mean_weighted_degree) : Json(nullptr);
  if (row.selected) j["selected"] = *row.selected;
  return j;
}

Json component_rows_json(const std::vector<ComponentRow>& rows,
                         const std::vector<std::string>& labels) {
  Json out = Json::array();
  for (const auto& row : rows) out.push_back(component_row_json(row, labels));
  return out;
}

std::vector<ComponentRow> label_rows(const std::vector<NodeSet>& components,
                                     const std::string& prefix) {
  std::vector<ComponentRow> rows;
  rows.reserve(components.size());
  for (std::size_t i = 0; i < components.size(); ++i) {
    ComponentRow row;
    row.label = prefix + std::to_string(i + 1);
    row.component = components[i];
    rows.push_back(std::move(row));
  }
  return rows;
}

double mean_weighted_degree(const WeightedGraph& g, const NodeSet& component) {
  if (component.empty()) return 0.0;
  const Vector degrees = weighted_degrees(g);
  double total = 0.0;
  for (const auto m : component.members()) total += degrees(static_cast<Eigen::Index>(m));
  return total / static_cast<double>(component.size());
}

void attach_degrees(std::vector<ComponentRow>& rows, const WeightedGraph* structural) {
  if (structural == nullptr) return;
  for (auto& row : rows) row.mean_weighted_degree = mean_weighted_degree(*structural, row.component);
}

std::vector<std::vector<std::string>> parse_report_components(const nlohmann::json& report) {
  if (!report.contains("components") || !report.at("components").is_array()) {
    throw InputError("document has no \"components\" array");
  }
  std::vector<std::vector<std::string>> out;
  for (const auto& c : report.at("components")) {
    if (!c.contains("regions") || !c.at("regions").is_array()) {
      throw InputError("component entry without a \"regions\" array");
    }
    out.push_back(c.at("regions").get<std::vector<std::string>>());
  }
  return out;
}

std::vector<NodeSet> read_components_file(const std::filesystem::path& path,
                                          const std::vector<std::string>& labels) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open components file " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();

  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < labels.size(); ++i) index.emplace(labels[i], i);

  std::vector<NodeSet> out;
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
      throw InputError(path.string() + ": " + e.what());
    }
    for (const auto& names : parse_report_components(doc)) {
      out.push_back(to_node_set(names, index, path.string()));
    }
    return out;
  }

  std::istringstream lines(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(lines, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    std::vector<std::string> names;
    std::istringstream fields(t);
    std::string field;
    while (std::getline(fields, field, ',')) names.push_back(trim(field));
    out.push_back(to_node_set(names, index, path.string() + ":" + std::to_string(line_no)));
  }
  return out;
}

Json input_digests(const std::vector<std::pair<std::string, std::filesystem::path>>& inputs) {
  Json out = Json::array();
  for (const auto& [name, path] : inputs) {
    Json j;
    j["name"] = name;
    j["sha256"] = sha256_file(path);
    out.push_back(std::move(j));
  }
  return out;
}

std::string dump(const Json& doc) { return doc.dump(2) + "\n"; }

}  // namespace neurohotnet::tools
