#include "neurohotnet_tools/run_pipeline.hpp"

#include <optional>
#include <set>
#include <utility>

#include "neurohotnet/baselines.hpp"
#include "neurohotnet/diffusion.hpp"
#include "neurohotnet/error.hpp"
#include "neurohotnet/matrix_io.hpp"
#include "neurohotnet/version.hpp"
#include "neurohotnet_tools/subjects.hpp"

namespace neurohotnet::tools {

namespace {

const std::set<std::string> kMethods = {"neurohotnet", "siggm-diffusion", "glasso", "naive"};

void require(const Config& cfg, std::initializer_list<const char*> keys, const std::string& method) {
  for (const char* key : keys) {
    if (!cfg.has(key)) {
      throw ConfigError("method '" + method + "' needs the setting '" + std::string(key) + "'");
    }
  }
}

void default_to(Config& cfg, const std::string& key, const std::string& value) {
  if (!cfg.has(key)) cfg.set(key, value);
}

void check_range(bool ok, const std::string& key, const std::string& rule) {
  if (!ok) throw ConfigError("'" + key + "' must be " + rule);
}

double resolve_gamma(const Config& cfg, const WeightedGraph& g) {
  const std::string text = cfg.get("gamma");
  return text == "auto" ? suggest_gamma(g) : cfg.get_double("gamma");
}

GlassoOptions glasso_options(const Config& cfg) {
  GlassoOptions opt;
  opt.tol = cfg.get_double("tol");
  opt.max_iter = static_cast<int>(cfg.get_u64("max_iter"));
  opt.solver = parse_solver(cfg.get("solver"));
  return opt;
}

Matrix population_matrix(const std::vector<SubjectSample>& samples, std::string& source) {
  bool all_signals = true;
  for (const auto& s : samples) all_signals = all_signals && s.signals().has_value();
  source = all_signals ? "pooled-covariance" : "mean-correlation";
  return all_signals ? pooled_covariance(samples) : mean_correlation(samples);
}

}  // namespace

TestMethod parse_test_method(const std::string& text) {
  if (text == "permutation") return TestMethod::kPermutation;
  if (text == "ttest") return TestMethod::kTTest;
  throw ConfigError("test must be permutation or ttest, got '" + text + "'");
}

NullScheme parse_null_scheme(const std::string& text) {
  if (text == "relabel") return NullScheme::kRelabel;
  if (text == "rows-only") return NullScheme::kRowsOnly;
  throw ConfigError("null must be relabel or rows-only, got '" + text + "'");
}

GlassoSolver parse_solver(const std::string& text) {
  if (text == "newton") return GlassoSolver::kNewton;
  if (text == "block") return GlassoSolver::kBlockCoordinate;
  throw ConfigError("solver must be newton or block, got '" + text + "'");
}

Config resolve_config(const Config& config) {
  Config cfg = config;
  const std::string method = cfg.get("method");
  if (kMethods.count(method) == 0) {
    throw ConfigError("unknown method '" + method +
                      "' (expected neurohotnet, siggm-diffusion, glasso or naive)");
  }
  default_to(cfg, "subject_kind", "auto");
  parse_subject_kind(cfg.get("subject_kind"));

  if (method == "neurohotnet") {
    require(cfg, {"structural", "subjects", "delta", "seed"}, method);
    default_to(cfg, "gamma", "auto");
    default_to(cfg, "alpha", "0.05");
    default_to(cfg, "permutations", "10000");
    default_to(cfg, "test", "permutation");
    default_to(cfg, "null", "relabel");
    check_range(cfg.get_double("delta") >= 0.0, "delta", "nonnegative");
    const double alpha = cfg.get_double("alpha");
    check_range(alpha > 0.0 && alpha < 1.0, "alpha", "in (0, 1)");
    parse_test_method(cfg.get("test"));
    parse_null_scheme(cfg.get("null"));
    if (cfg.get("test") == "permutation") {
      check_range(cfg.get_u64("permutations") >= kMinPermutations, "permutations",
                  "at least " + std::to_string(kMinPermutations));
    }
    cfg.get_u64("seed");
  } else if (method == "siggm-diffusion" || method == "glasso") {
    require(cfg, {"subjects", "nu"}, method);
    if (method == "siggm-diffusion") {
      require(cfg, {"structural"}, method);
      default_to(cfg, "gamma", "auto");
      default_to(cfg, "eta", "1");
    } else {
      default_to(cfg, "eta", "0");
      check_range(cfg.get_double("eta") == 0.0, "eta", "0 for plain glasso");
    }
    default_to(cfg, "tol", "1e-6");
    default_to(cfg, "max_iter", "500");
    default_to(cfg, "solver", "newton");
    check_range(cfg.get_double("nu") > 0.0, "nu", "positive");
    check_range(cfg.get_double("eta") >= 0.0, "eta", "nonnegative");
    check_range(cfg.get_double("tol") > 0.0, "tol", "positive");
    check_range(cfg.get_u64("max_iter") >= 1, "max_iter", "at least 1");
    parse_solver(cfg.get("solver"));
  } else {
    require(cfg, {"subjects", "epsilon"}, method);
    const double eps = cfg.get_double("epsilon");
    check_range(eps > 0.0 && eps < 1.0, "epsilon", "in (0, 1)");
  }
  if (cfg.has("gamma") && cfg.get("gamma") != "auto") {
    check_range(cfg.get_double("gamma") > 0.0, "gamma", "positive or auto");
  }
  return cfg;
}

Json run_pipeline(const Config& config, std::size_t threads) {
  const Config cfg = resolve_config(config);
  const std::string method = cfg.get("method");

  std::vector<std::pair<std::string, std::filesystem::path>> inputs;
  std::optional<WeightedGraph> structural;
  if (cfg.has("structural")) {
    structural = read_weighted_graph(cfg.get_path("structural"));
    inputs.emplace_back(cfg.get("structural"), cfg.get_path("structural"));
  }
  SubjectSet subjects =
      load_subjects(cfg.get_path("subjects"), parse_subject_kind(cfg.get("subject_kind")));
  for (const auto& f : subjects.files) {
    inputs.emplace_back(cfg.get("subjects") + "/" + f.filename().string(), f);
  }
  if (structural && structural->labels() != subjects.labels) {
    throw StructuralError("structural matrix and subject files disagree on region labels");
  }
  const auto& labels = subjects.labels;

  Json report;
  report["tool"] = "neurohotnet";
  report["version"] = kVersion;
  report["command"] = "run";
  report["method"] = method;
  Json resolved = Json::object();
  for (const auto& [key, value] : cfg.entries()) resolved[key] = value;
  report["config"] = std::move(resolved);
  Json provenance;
  provenance["seed"] = cfg.has("seed") ? Json(cfg.get_u64("seed")) : Json(nullptr);
  provenance["version"] = kVersion;
  provenance["inputs"] = input_digests(inputs);
  report["provenance"] = std::move(provenance);
  report["regions"] = labels.size();
  report["subjects"] = subjects.samples.size();

  report["parameters"] = nullptr;
  Json parameters;
  std::vector<ComponentRow> rows;
  if (method == "neurohotnet") {
    const double gamma = resolve_gamma(cfg, *structural);
    const InfluenceGraph influence = diffuse(*structural, gamma, threads);
    HotnetOptions opt;
    opt.delta = cfg.get_double("delta");
    opt.alpha = cfg.get_double("alpha");
    opt.method = parse_test_method(cfg.get("test"));
    opt.permutation.permutations = cfg.get_u64("permutations");
    opt.permutation.seed = cfg.get_u64("seed");
    opt.permutation.null = parse_null_scheme(cfg.get("null"));
    opt.permutation.threads = threads;
    const HotnetOutcome outcome = run_neurohotnet(influence, subjects.samples, opt);

    parameters["gamma"] = gamma;
    parameters["delta"] = opt.delta;
    parameters["alpha"] = opt.alpha;
    parameters["test"] = cfg.get("test");
    parameters["permutations"] = opt.method == TestMethod::kPermutation ? opt.permutation.permutations : 1;
    parameters["selection_cutoff"] =
        outcome.results.empty() ? Json(nullptr)
                                : Json(opt.alpha / static_cast<double>(outcome.results.size()));

    std::vector<ComponentRow> tested;
    std::size_t selected = 0;
    for (std::size_t i = 0; i < outcome.results.size(); ++i) {
      const TestResult& r = outcome.results[i];
      ComponentRow row;
      row.label = "C" + std::to_string(i + 1);
      row.component = r.component;
      row.p_value = r.p_value;
      row.statistic = r.statistic;
      row.selected = r.selected;
      tested.push_back(row);
      if (r.selected) {
        row.label = "H" + std::to_string(++selected);
        row.selected.reset();
        rows.push_back(std::move(row));
      }
    }
    attach_degrees(tested, &*structural);
    report["candidates"] = component_rows_json(tested, labels);
  } else if (method == "siggm-diffusion" || method == "glasso") {
    std::string source;
    const Matrix pooled = population_matrix(subjects.samples, source);
    const GlassoOptions opt = glasso_options(cfg);
    const double nu = cfg.get_double("nu");
    PrecisionEstimate est;
    if (method == "siggm-diffusion") {
      const double gamma = resolve_gamma(cfg, *structural);
      const InfluenceGraph influence = diffuse(*structural, gamma, threads);
      parameters["gamma"] = gamma;
      est = siggm_with_diffusion(pooled, influence, nu, cfg.get_double("eta"), opt);
    } else {
      est = glasso(pooled, uniform_penalty(labels.size(), nu), opt);
    }
    parameters["nu"] = nu;
    parameters["eta"] = cfg.get_double("eta");
    parameters["population_matrix"] = source;
    parameters["iterations"] = est.sweeps;
    std::size_t edges = 0;
    for (Eigen::Index j = 0; j < est.precision.cols(); ++j) {
      for (Eigen::Index i = 0; i < j; ++i) {
        if (std::abs(est.precision(i, j)) >= kSupportCutoff) ++edges;
      }
    }
    parameters["support_edges"] = edges;
    rows = label_rows(est.components, method == "glasso" ? "G" : "S");
  } else {
    const double eps = cfg.get_double("epsilon");
    parameters["epsilon"] = eps;
    const CandidateSet found = naive_detect(subjects.samples, eps, threads);
    rows = label_rows(found.components, "N");
  }
  attach_degrees(rows, structural ? &*structural : nullptr);
  report["parameters"] = std::move(parameters);
  report["components"] = component_rows_json(rows, labels);
  return report;
}

}  // namespace neurohotnet::tools
