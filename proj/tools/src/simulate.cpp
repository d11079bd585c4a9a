#include "neurohotnet_tools/simulate.hpp"

#include <cmath>
#include <sstream>

#include "neurohotnet/detect.hpp"
#include "neurohotnet/error.hpp"
#include "neurohotnet/matrix_io.hpp"
#include "neurohotnet/version.hpp"
#include "neurohotnet_tools/config.hpp"

namespace neurohotnet::tools {

namespace {

Json node_sets(const std::vector<NodeSet>& sets) {
  Json out = Json::array();
  for (const auto& s : sets) out.push_back(s.members());
  return out;
}

}  // namespace

SimConfig study1_preset(std::size_t regions) {
  SimConfig cfg;
  cfg.regions = regions;
  cfg.delta = 1.8e-3;
  cfg.nu = regions <= 120 ? 2.5e-4 : 1.5e-4;
  cfg.epsilon = 8e-4;
  return cfg;
}

std::vector<std::size_t> size_grid(const std::string& text) {
  const GridSpec spec = parse_grid(text);
  std::vector<std::size_t> sizes;
  for (const double v : linear_grid(spec.first, spec.last, spec.count)) {
    if (!(v >= 1.0)) throw ConfigError("sizes must be at least 1");
    const auto n = static_cast<std::size_t>(std::llround(v));
    if (sizes.empty() || sizes.back() != n) sizes.push_back(n);
  }
  return sizes;
}

Json sim_config_json(const SimConfig& cfg) {
  Json j;
  j["regions"] = cfg.regions;
  j["density"] = cfg.density;
  j["min_component"] = cfg.min_component;
  j["subjects"] = cfg.subjects;
  j["frames"] = cfg.frames;
  j["signal_mean"] = cfg.signal_mean;
  j["signal_sd"] = cfg.signal_sd;
  j["signal_sd_is_stand_in"] = true;
  j["noise_sd"] = cfg.noise_sd;
  j["trials"] = cfg.trials;
  j["seed"] = cfg.seed;
  j["gamma"] = cfg.gamma;
  j["delta"] = cfg.delta;
  j["nu"] = cfg.nu;
  j["eta"] = cfg.eta;
  j["epsilon"] = cfg.epsilon;
  j["alpha"] = cfg.alpha;
  j["permutations"] = cfg.permutations;
  return j;
}

Json study1_json(const SimResult& result, bool timings) {
  Json doc;
  doc["tool"] = "neurohotnet";
  doc["version"] = kVersion;
  doc["command"] = "simulate";
  doc["preset"] = "study1";
  doc["config"] = sim_config_json(result.config);
  Json summary = Json::array();
  for (const auto& s : result.summary) {
    Json row;
    row["method"] = method_name(s.method);
    row["completed"] = s.completed;
    row["failed"] = s.failed;
    row["mean_recovery"] = s.mean_recovery;
    row["ci_half_width"] = s.ci_half_width;
    if (timings) row["mean_seconds"] = s.mean_seconds;
    summary.push_back(std::move(row));
  }
  doc["summary"] = std::move(summary);
  Json trials = Json::array();
  for (const auto& t : result.trials) {
    Json tj;
    tj["trial"] = t.trial;
    tj["truth"] = node_sets(t.truth);
    Json outcomes = Json::array();
    for (const auto& o : t.outcomes) {
      Json oj;
      oj["method"] = method_name(o.method);
      oj["failed"] = o.failed;
      if (o.failed) oj["error"] = o.error;
      oj["recovery"] = o.recovery;
      oj["estimated"] = node_sets(o.estimated);
      oj["matches"] = o.matches;
      if (timings) oj["seconds"] = o.seconds;
      outcomes.push_back(std::move(oj));
    }
    tj["outcomes"] = std::move(outcomes);
    trials.push_back(std::move(tj));
  }
  doc["trials"] = std::move(trials);
  return doc;
}

Json study2_json(const RuntimeResult& result, bool timings) {
  Json doc;
  doc["tool"] = "neurohotnet";
  doc["version"] = kVersion;
  doc["command"] = "bench";
  doc["config"] = sim_config_json(result.config);
  Json points = Json::array();
  for (const auto& p : result.points) {
    Json pj;
    pj["regions"] = p.regions;
    pj["method"] = method_name(p.method);
    pj["components"] = p.components;
    if (timings) {
      pj["seconds"] = p.seconds;
      pj["mean_seconds"] = p.mean_seconds;
    }
    points.push_back(std::move(pj));
  }
  doc["points"] = std::move(points);
  if (timings) {
    doc["loglog_slope"] = {{"neurohotnet", result.slope_neurohotnet},
                           {"siggm-diffusion", result.slope_siggm}};
  }
  return doc;
}

std::string study1_table(const SimResult& result) {
  std::ostringstream out;
  out << "size,method,recovery,ci\n";
  for (const auto& s : result.summary) {
    out << result.config.regions << ',' << method_name(s.method) << ','
        << format_double(s.mean_recovery) << ',' << format_double(s.ci_half_width) << '\n';
  }
  return out.str();
}

std::string study2_table(const RuntimeResult& result) {
  std::ostringstream out;
  out << "size,method,seconds,components\n";
  for (const auto& p : result.points) {
    out << p.regions << ',' << method_name(p.method) << ',' << format_double(p.mean_seconds)
        << ',' << p.components << '\n';
  }
  return out.str();
}

}  // namespace neurohotnet::tools
