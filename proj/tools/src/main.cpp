#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "neurohotnet/baselines.hpp"
#include "neurohotnet/detect.hpp"
#include "neurohotnet/diffusion.hpp"
#include "neurohotnet/error.hpp"
#include "neurohotnet/matrix_io.hpp"
#include "neurohotnet/parallel.hpp"
#include "neurohotnet/pipelines.hpp"
#include "neurohotnet/precision.hpp"
#include "neurohotnet/simlab.hpp"
#include "neurohotnet/version.hpp"
#include "neurohotnet_tools/config.hpp"
#include "neurohotnet_tools/report.hpp"
#include "neurohotnet_tools/run_pipeline.hpp"
#include "neurohotnet_tools/simulate.hpp"
#include "neurohotnet_tools/subjects.hpp"

namespace nh = neurohotnet;
namespace nt = neurohotnet::tools;

namespace {

struct Global {
  std::size_t threads = 0;
  std::string output;
};

void emit(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw nh::InputError("cannot write " + path);
  out << text;
}

nt::Json header(const std::string& command) {
  nt::Json doc;
  doc["tool"] = "neurohotnet";
  doc["version"] = nh::kVersion;
  doc["command"] = command;
  return doc;
}

double gamma_value(const std::string& text, const nh::WeightedGraph& g) {
  return text == "auto" ? nh::suggest_gamma(g) : nt::parse_double(text, "--gamma");
}

nh::InfluenceGraph read_influence(const std::string& path) {
  auto m = nh::read_labeled_matrix(path);
  if (m.values.rows() != m.values.cols()) {
    throw nh::StructuralError(path + ": influence matrix must be square");
  }
  // gamma is not stored in matrix files and plays no role downstream
  return nh::InfluenceGraph(std::move(m.labels), std::move(m.values), 1.0);
}

// --- diffuse ---------------------------------------------------------------

struct DiffuseArgs {
  std::string input;
  std::string gamma = "auto";
};

void add_diffuse(CLI::App& app, Global& global) {
  auto args = std::make_shared<DiffuseArgs>();
  auto* cmd = app.add_subcommand("diffuse", "Influence graph of a structural matrix");
  cmd->add_option("--input", args->input, "Structural weight matrix (CSV with header)")->required();
  cmd->add_option("--gamma", args->gamma, "Restart rate or 'auto'");
  cmd->callback([args, &global] {
    const auto g = nh::read_weighted_graph(args->input);
    const auto influence = nh::diffuse(g, gamma_value(args->gamma, g), nh::resolve_threads(global.threads));
    std::ostringstream out;
    nh::write_labeled_matrix(out, influence.labels(), influence.influence());
    emit(out.str(), global.output);
  });
}

// --- detect ----------------------------------------------------------------

struct DetectArgs {
  std::string influence;
  double delta = 0.0;
  std::string grid;
};

void add_detect(CLI::App& app, Global& global) {
  auto args = std::make_shared<DetectArgs>();
  auto* cmd = app.add_subcommand("detect", "Candidate subnetworks of a thresholded influence graph");
  cmd->add_option("--influence", args->influence, "Influence matrix")->required();
  cmd->add_option("--delta", args->delta, "Influence threshold")->required();
  cmd->add_option("--delta-grid", args->grid, "Component-size profile over a:b:n");
  cmd->callback([args, &global] {
    if (!(args->delta >= 0.0)) throw nh::ParameterError("--delta must be nonnegative");
    const auto influence = read_influence(args->influence);
    const auto found = nh::candidates(influence, args->delta);
    nt::Json doc = header("detect");
    doc["parameters"] = {{"delta", args->delta}};
    doc["regions"] = influence.size();
    doc["components"] =
        nt::component_rows_json(nt::label_rows(found.components, "C"), influence.labels());
    if (!args->grid.empty()) {
      const auto spec = nt::parse_grid(args->grid);
      nt::Json profile = nt::Json::array();
      for (const auto& p : nh::delta_profile(influence, nh::linear_grid(spec.first, spec.last, spec.count))) {
        profile.push_back({{"delta", p.delta}, {"sizes", p.sizes}});
      }
      doc["delta_profile"] = std::move(profile);
    }
    emit(nt::dump(doc), global.output);
  });
}

// --- test ------------------------------------------------------------------

struct TestArgs {
  std::string subjects;
  std::string components;
  std::string structural;
  std::string kind = "auto";
  std::string method = "permutation";
  std::string null = "relabel";
  double alpha = 0.05;
  std::size_t permutations = nh::kDefaultPermutations;
  std::uint64_t seed = 0;
};

void add_test(CLI::App& app, Global& global) {
  auto args = std::make_shared<TestArgs>();
  auto* cmd = app.add_subcommand("test", "Combined test of given components on subject data");
  cmd->add_option("--subjects", args->subjects, "Directory of per-subject CSV files")->required();
  cmd->add_option("--components", args->components, "Report JSON or one component per line")
      ->required();
  cmd->add_option("--alpha", args->alpha, "Family-wise level");
  cmd->add_option("--permutations", args->permutations, "Null replicates");
  cmd->add_option("--seed", args->seed, "Random seed")->required();
  cmd->add_option("--method", args->method, "permutation or ttest");
  cmd->add_option("--null", args->null, "relabel or rows-only");
  cmd->add_option("--kind", args->kind, "auto, timeseries or correlation");
  cmd->add_option("--structural", args->structural, "Structural matrix for the degree column");
  cmd->callback([args, &global] {
    if (!(args->alpha > 0.0 && args->alpha < 1.0)) throw nh::ParameterError("--alpha must be in (0, 1)");
    const auto method = nt::parse_test_method(args->method);
    nh::PermutationOptions opt;
    opt.permutations = args->permutations;
    opt.seed = args->seed;
    opt.null = nt::parse_null_scheme(args->null);
    opt.threads = nh::resolve_threads(global.threads);

    const auto set = nt::load_subjects(args->subjects, nt::parse_subject_kind(args->kind));
    std::optional<nh::WeightedGraph> structural;
    if (!args->structural.empty()) {
      structural = nh::read_weighted_graph(args->structural);
      if (structural->labels() != set.labels) {
        throw nh::StructuralError("structural matrix and subject files disagree on region labels");
      }
    }
    const auto components = nt::read_components_file(args->components, set.labels);

    std::vector<nh::TestResult> results;
    if (method == nh::TestMethod::kPermutation) {
      const nh::FisherStack z(set.samples);
      for (const auto& c : components) results.push_back(nh::permutation_test(z, c, opt));
    } else {
      for (const auto& c : components) results.push_back(nh::ttest_variant(set.samples, c, args->seed));
    }
    results = nh::select(std::move(results), args->alpha);

    std::vector<nt::ComponentRow> rows;
    for (std::size_t i = 0; i < results.size(); ++i) {
      nt::ComponentRow row;
      row.label = "C" + std::to_string(i + 1);
      row.component = results[i].component;
      row.p_value = results[i].p_value;
      row.statistic = results[i].statistic;
      row.selected = results[i].selected;
      rows.push_back(std::move(row));
    }
    nt::attach_degrees(rows, structural ? &*structural : nullptr);

    nt::Json doc = header("test");
    doc["parameters"] = {{"alpha", args->alpha},
                         {"method", args->method},
                         {"null", args->null},
                         {"permutations", method == nh::TestMethod::kPermutation ? args->permutations : 1},
                         {"seed", args->seed}};
    doc["regions"] = set.labels.size();
    doc["subjects"] = set.samples.size();
    doc["components"] = nt::component_rows_json(rows, set.labels);
    emit(nt::dump(doc), global.output);
  });
}

// --- naive -----------------------------------------------------------------

struct NaiveArgs {
  std::string subjects;
  std::string kind = "auto";
  double epsilon = 0.0;
};

void add_naive(CLI::App& app, Global& global) {
  auto args = std::make_shared<NaiveArgs>();
  auto* cmd = app.add_subcommand("naive", "Edge-wise correlation test at level epsilon");
  cmd->add_option("--subjects", args->subjects, "Directory of per-subject CSV files")->required();
  cmd->add_option("--epsilon", args->epsilon, "Edge p-value threshold")->required();
  cmd->add_option("--kind", args->kind, "auto, timeseries or correlation");
  cmd->callback([args, &global] {
    const auto set = nt::load_subjects(args->subjects, nt::parse_subject_kind(args->kind));
    const auto found = nh::naive_detect(set.samples, args->epsilon, nh::resolve_threads(global.threads));
    nt::Json doc = header("naive");
    doc["parameters"] = {{"epsilon", args->epsilon}};
    doc["regions"] = set.labels.size();
    doc["subjects"] = set.samples.size();
    doc["components"] = nt::component_rows_json(nt::label_rows(found.components, "N"), set.labels);
    emit(nt::dump(doc), global.output);
  });
}

// --- glasso ----------------------------------------------------------------

struct GlassoArgs {
  std::string subjects;
  std::string influence;
  std::string kind = "auto";
  std::string solver = "newton";
  std::string precision_out;
  double nu = 0.0;
  double eta = 0.0;
  double tol = 1e-6;
  int max_iter = 500;
};

void add_glasso(CLI::App& app, Global& global) {
  auto args = std::make_shared<GlassoArgs>();
  auto* cmd = app.add_subcommand("glasso", "Penalized precision estimate and its support components");
  cmd->add_option("--subjects", args->subjects, "Directory of per-subject CSV files")->required();
  cmd->add_option("--influence", args->influence, "Influence matrix weighting the penalty");
  cmd->add_option("--nu", args->nu, "Penalty scale")->required();
  cmd->add_option("--eta", args->eta, "Influence weighting of the penalty");
  cmd->add_option("--tol", args->tol, "Convergence tolerance");
  cmd->add_option("--max-iter", args->max_iter, "Iteration limit");
  cmd->add_option("--solver", args->solver, "newton or block");
  cmd->add_option("--kind", args->kind, "auto, timeseries or correlation");
  cmd->add_option("--precision-output", args->precision_out, "Write the precision matrix here");
  cmd->callback([args, &global] {
    const auto set = nt::load_subjects(args->subjects, nt::parse_subject_kind(args->kind));
    nh::GlassoOptions opt;
    opt.tol = args->tol;
    opt.max_iter = args->max_iter;
    opt.solver = nt::parse_solver(args->solver);
    const nh::Matrix pooled = nh::mean_correlation(set.samples);
    nh::PrecisionEstimate est;
    if (!args->influence.empty()) {
      const auto influence = read_influence(args->influence);
      if (influence.labels() != set.labels) {
        throw nh::StructuralError("influence matrix and subject files disagree on region labels");
      }
      est = nh::siggm_with_diffusion(pooled, influence, args->nu, args->eta, opt);
    } else {
      est = nh::glasso(pooled, nh::uniform_penalty(set.labels.size(), args->nu), opt);
    }
    if (!args->precision_out.empty()) {
      nh::write_labeled_matrix(std::filesystem::path(args->precision_out), set.labels, est.precision);
    }
    nt::Json doc = header("glasso");
    doc["parameters"] = {{"nu", args->nu},
                         {"eta", args->influence.empty() ? 0.0 : args->eta},
                         {"tol", args->tol},
                         {"solver", args->solver},
                         {"iterations", est.sweeps}};
    doc["regions"] = set.labels.size();
    doc["subjects"] = set.samples.size();
    doc["components"] = nt::component_rows_json(
        nt::label_rows(est.components, args->influence.empty() ? "G" : "S"), set.labels);
    emit(nt::dump(doc), global.output);
  });
}

// --- run -------------------------------------------------------------------

struct RunArgs {
  std::string config;
  std::vector<std::string> sets;
  std::optional<std::string> method, structural, subjects, seed, delta, gamma, nu, eta, epsilon,
      alpha, permutations, test, null, solver;
};

void add_run(CLI::App& app, Global& global) {
  auto args = std::make_shared<RunArgs>();
  auto* cmd = app.add_subcommand("run", "Run a configured pipeline end to end");
  cmd->add_option("--config", args->config, "key = value configuration file")->required();
  cmd->add_option("--set", args->sets, "Override any key: key=value (repeatable)");
  const std::pair<const char*, std::optional<std::string>*> flags[] = {
      {"--method", &args->method},   {"--structural", &args->structural},
      {"--subjects", &args->subjects}, {"--seed", &args->seed},
      {"--delta", &args->delta},     {"--gamma", &args->gamma},
      {"--nu", &args->nu},           {"--eta", &args->eta},
      {"--epsilon", &args->epsilon}, {"--alpha", &args->alpha},
      {"--permutations", &args->permutations}, {"--test", &args->test},
      {"--null", &args->null},       {"--solver", &args->solver}};
  for (const auto& [flag, target] : flags) {
    cmd->add_option(flag, *target, std::string("Override the '") + (flag + 2) + "' key");
  }
  cmd->callback([args, &global] {
    nt::Config cfg = nt::Config::load(args->config);
    const std::pair<const char*, const std::optional<std::string>*> keys[] = {
        {"method", &args->method},   {"structural", &args->structural},
        {"subjects", &args->subjects}, {"seed", &args->seed},
        {"delta", &args->delta},     {"gamma", &args->gamma},
        {"nu", &args->nu},           {"eta", &args->eta},
        {"epsilon", &args->epsilon}, {"alpha", &args->alpha},
        {"permutations", &args->permutations}, {"test", &args->test},
        {"null", &args->null},       {"solver", &args->solver}};
    for (const auto& [key, value] : keys) {
      if (!value->has_value()) continue;
      // paths given on the command line are relative to the working directory
      if ((std::string(key) == "structural" || std::string(key) == "subjects")) {
        cfg.set(key, std::filesystem::absolute(**value).lexically_normal().string());
      } else {
        cfg.set(key, **value);
      }
    }
    for (const auto& s : args->sets) {
      const auto eq = s.find('=');
      if (eq == std::string::npos) throw nh::ConfigError("--set expects key=value, got '" + s + "'");
      cfg.set(s.substr(0, eq), s.substr(eq + 1));
    }
    emit(nt::dump(nt::run_pipeline(cfg, nh::resolve_threads(global.threads))), global.output);
  });
}

// --- simulate / bench ------------------------------------------------------

struct SimulateArgs {
  std::string preset = "study1";
  std::size_t regions = 120;
  std::optional<std::size_t> trials;
  std::optional<std::size_t> permutations;
  std::uint64_t seed = 0;
  std::string table;
  bool omit_timings = false;
};

void add_simulate(CLI::App& app, Global& global) {
  auto args = std::make_shared<SimulateArgs>();
  auto* cmd = app.add_subcommand("simulate", "Recovery study on simulated subjects");
  cmd->add_option("--preset", args->preset, "Simulation preset")->check(CLI::IsMember({"study1"}));
  cmd->add_option("--r", args->regions, "Number of regions")->check(CLI::IsMember({120, 300, 500}));
  cmd->add_option("--trials", args->trials, "Number of trials");
  cmd->add_option("--permutations", args->permutations, "Null replicates per component");
  cmd->add_option("--seed", args->seed, "Master seed")->required();
  cmd->add_option("--table", args->table, "Write a flat CSV table here");
  cmd->add_flag("--omit-timings", args->omit_timings, "Leave timings out of the report");
  cmd->callback([args, &global] {
    nh::SimConfig cfg = nt::study1_preset(args->regions);
    cfg.seed = args->seed;
    if (args->trials) cfg.trials = *args->trials;
    if (args->permutations) cfg.permutations = *args->permutations;
    const auto result = nh::run_study1(cfg, nh::resolve_threads(global.threads));
    emit(nt::dump(nt::study1_json(result, !args->omit_timings)), global.output);
    if (!args->table.empty()) emit(nt::study1_table(result), args->table);
  });
}

struct BenchArgs {
  std::string sizes = "50:500:10";
  std::size_t repeats = 10;
  std::uint64_t seed = 0;
  std::string table;
  bool omit_timings = false;
};

void add_bench(CLI::App& app, Global& global) {
  auto args = std::make_shared<BenchArgs>();
  auto* cmd = app.add_subcommand("bench", "Runtime study over graph sizes");
  cmd->add_option("--sizes", args->sizes, "Region counts as a:b:n");
  cmd->add_option("--repeats", args->repeats, "Timed repeats per size and method");
  cmd->add_option("--seed", args->seed, "Master seed")->required();
  cmd->add_option("--table", args->table, "Write a flat CSV table here");
  cmd->add_flag("--omit-timings", args->omit_timings, "Leave timings out of the report");
  cmd->callback([args, &global] {
    const auto sizes = nt::size_grid(args->sizes);
    nh::SimConfig cfg = nt::study1_preset(120);
    cfg.seed = args->seed;
    const auto result = nh::run_study2(sizes, args->repeats, cfg);
    emit(nt::dump(nt::study2_json(result, !args->omit_timings)), global.output);
    if (!args->table.empty()) emit(nt::study2_table(result), args->table);
  });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Structure-informed detection of functional brain subnetworks"};
  app.set_version_flag("--version", std::string(nh::kVersion));
  app.require_subcommand(1);
  Global global;
  app.fallthrough();
  app.add_option("--threads", global.threads,
                 std::string("Worker threads (default: $") + nh::kThreadsEnvVar +
                     " or all cores)");
  app.add_option("--output,-o", global.output, "Write the report here instead of stdout");

  add_diffuse(app, global);
  add_detect(app, global);
  add_test(app, global);
  add_naive(app, global);
  add_glasso(app, global);
  add_run(app, global);
  add_simulate(app, global);
  add_bench(app, global);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const nh::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
