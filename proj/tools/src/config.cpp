#include "neurohotnet_tools/config.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <sstream>

#include "neurohotnet/error.hpp"

namespace neurohotnet::tools {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

}  // namespace

const std::map<std::string, std::string>& Config::known_keys() {
  static const std::map<std::string, std::string> keys = {
      {"method", "neurohotnet | siggm-diffusion | glasso | naive"},
      {"structural", "structural connectivity matrix file"},
      {"subjects", "directory with one matrix file per subject"},
      {"subject_kind", "auto | timeseries | correlation"},
      {"gamma", "diffusion rate, or auto for the mean weighted degree"},
      {"delta", "influence threshold"},
      {"alpha", "family-wise level for component selection"},
      {"permutations", "permutation replicates B"},
      {"seed", "master seed for random streams"},
      {"test", "permutation | ttest"},
      {"null", "relabel | rows-only"},
      {"nu", "graphical lasso sparsity"},
      {"eta", "influence weighting of the penalty"},
      {"tol", "graphical lasso convergence tolerance"},
      {"max_iter", "graphical lasso iteration limit"},
      {"solver", "newton | block"},
      {"epsilon", "edge p-value threshold of the naive detector"},
  };
  return keys;
}

Config Config::parse(std::istream& in, const std::string& source) {
  Config cfg;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string text = trim(line);
    if (text.empty() || text.front() == '#') continue;
    const auto eq = text.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(source + ":" + std::to_string(line_no) + ": expected key = value");
    }
    const std::string key = trim(text.substr(0, eq));
    const std::string value = trim(text.substr(eq + 1));
    if (cfg.has(key)) {
      throw ConfigError(source + ":" + std::to_string(line_no) + ": duplicate key '" + key + "'");
    }
    try {
      cfg.set(key, value);
    } catch (const ConfigError& e) {
      throw ConfigError(source + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
  return cfg;
}

Config Config::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  Config cfg = parse(in, path.string());
  cfg.base_dir_ = path.parent_path();
  return cfg;
}

void Config::set(const std::string& key, const std::string& value) {
  if (known_keys().count(key) == 0) throw ConfigError("unknown config key '" + key + "'");
  if (value.empty()) throw ConfigError("empty value for '" + key + "'");
  entries_[key] = value;
}

const std::string& Config::get(const std::string& key) const {
  const auto it = entries_.find(key);
  if (it == entries_.end()) throw ConfigError("missing required setting '" + key + "'");
  return it->second;
}

std::string Config::get_or(const std::string& key, const std::string& fallback) const {
  const auto it = entries_.find(key);
  return it == entries_.end() ? fallback : it->second;
}

double Config::get_double(const std::string& key) const { return parse_double(get(key), key); }

double Config::get_double_or(const std::string& key, double fallback) const {
  return has(key) ? get_double(key) : fallback;
}

std::uint64_t Config::get_u64(const std::string& key) const { return parse_u64(get(key), key); }

std::uint64_t Config::get_u64_or(const std::string& key, std::uint64_t fallback) const {
  return has(key) ? get_u64(key) : fallback;
}

std::filesystem::path Config::get_path(const std::string& key) const {
  std::filesystem::path p = get(key);
  if (p.is_relative() && !base_dir_.empty()) p = base_dir_ / p;
  return p;
}

double parse_double(const std::string& text, const std::string& what) {
  // std::stod accepts "1e-79" and rejects garbage via pos check.
  std::size_t pos = 0;
  double value = 0.0;
  try {
    value = std::stod(text, &pos);
  } catch (const std::exception&) {
    throw ConfigError("'" + what + "' is not a number: " + text);
  }
  if (pos != text.size()) throw ConfigError("'" + what + "' is not a number: " + text);
  return value;
}

std::uint64_t parse_u64(const std::string& text, const std::string& what) {
  std::uint64_t value = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw ConfigError("'" + what + "' is not a nonnegative integer: " + text);
  }
  return value;
}

GridSpec parse_grid(const std::string& text) {
  std::stringstream ss(text);
  std::string a, b, n;
  if (!std::getline(ss, a, ':') || !std::getline(ss, b, ':') || !std::getline(ss, n) ||
      ss.rdbuf()->in_avail() > 0) {
    throw ConfigError("grid must look like first:last:count, got '" + text + "'");
  }
  GridSpec g{parse_double(a, "grid start"), parse_double(b, "grid end"),
             static_cast<std::size_t>(parse_u64(n, "grid count"))};
  if (g.count == 0) throw ConfigError("grid count must be positive");
  return g;
}

}  // namespace neurohotnet::tools
