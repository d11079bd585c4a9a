#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>

namespace neurohotnet::tools {

/// Pipeline settings read from a `key = value` file. Blank lines and lines
/// starting with '#' are ignored; keys must be known (see known_keys()).
class Config {
 public:
  static Config parse(std::istream& in, const std::string& source = "<config>");
  /// Relative paths inside the file resolve against its directory.
  static Config load(const std::filesystem::path& path);

  /// Overrides (or adds) one key; validates the key name.
  void set(const std::string& key, const std::string& value);
  void erase(const std::string& key) { entries_.erase(key); }
  bool has(const std::string& key) const { return entries_.count(key) != 0; }

  const std::string& get(const std::string& key) const;
  std::string get_or(const std::string& key, const std::string& fallback) const;
  double get_double(const std::string& key) const;
  double get_double_or(const std::string& key, double fallback) const;
  std::uint64_t get_u64(const std::string& key) const;
  std::uint64_t get_u64_or(const std::string& key, std::uint64_t fallback) const;
  std::filesystem::path get_path(const std::string& key) const;

  const std::map<std::string, std::string>& entries() const noexcept { return entries_; }
  const std::filesystem::path& base_dir() const noexcept { return base_dir_; }
  void set_base_dir(std::filesystem::path dir) { base_dir_ = std::move(dir); }

  static const std::map<std::string, std::string>& known_keys();

 private:
  std::map<std::string, std::string> entries_;
  std::filesystem::path base_dir_;
};

/// Parses "a:b:n" into its three fields.
struct GridSpec {
  double first = 0.0;
  double last = 0.0;
  std::size_t count = 0;
};
GridSpec parse_grid(const std::string& text);

double parse_double(const std::string& text, const std::string& what);
std::uint64_t parse_u64(const std::string& text, const std::string& what);

}  // namespace neurohotnet::tools
