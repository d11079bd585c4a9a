#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "neurohotnet/graph.hpp"
#include "neurohotnet/inference.hpp"
#include "neurohotnet/nearest_correlation.hpp"

namespace neurohotnet {

/// Everything that determines one simulation run. A fixed seed fixes every
/// random draw; the thread count never does.
struct SimConfig {
  std::size_t regions = 120;
  double density = 0.3;
  std::size_t min_component = 8;
  std::size_t subjects = 308;
  std::size_t frames = 284;
  double signal_mean = 9600.0;
  /// Stand-in for per-region signal standard deviations (not published).
  double signal_sd = 400.0;
  double noise_sd = 120.0;
  std::size_t trials = 200;
  std::uint64_t seed = 0;

  double gamma = 30.0;
  double delta = 1.8e-3;
  double nu = 2.5e-4;
  double eta = 1.0;
  double epsilon = 8e-4;
  double alpha = 0.05;
  std::size_t permutations = 1000;
  NearestCorrelationOptions nearest{1e-8, 2000, 1e-12};

  /// Throws ParameterError on any violated invariant.
  void validate() const;
};

/// Random weighted graph: each pair is an edge with probability `density`
/// and weight Uniform(0, 1); edges of components smaller than `min_component`
/// are then removed.
WeightedGraph generate_truth(std::size_t regions, double density, std::size_t min_component,
                             std::uint64_t seed);

/// Population covariance of the simulated signals: the truth weights scaled
/// by their maximum (unit diagonal), projected to the nearest correlation
/// matrix, then multiplied elementwise by sigma sigma^T.
Matrix simulation_covariance(const WeightedGraph& truth, const SimConfig& cfg);

/// Subjects drawn from N(signal_mean 1, covariance) with independent
/// N(0, noise_sd^2) noise per region and frame. Subject i uses the substream
/// (seed, subject tag, i). Signals are kept only when keep_signals is set.
std::vector<SubjectSample> generate_subjects(const WeightedGraph& truth, const SimConfig& cfg,
                                             std::uint64_t seed, bool keep_signals = false,
                                             std::size_t threads = 1);

/// Fraction of truth components matched by an estimated component within a
/// symmetric difference of at most 2. Estimated components are consumed at
/// most once, greedily by smallest difference (ties: smallest truth index,
/// then smallest estimated index). Empty truth gives 1.
double recovery_rate(const std::vector<NodeSet>& truth, const std::vector<NodeSet>& estimated);

/// Indices into `estimated` matched to each truth component (-1 if none).
std::vector<long> match_components(const std::vector<NodeSet>& truth,
                                   const std::vector<NodeSet>& estimated);

inline constexpr std::size_t kMatchTolerance = 2;

/// The four compared pipelines.
enum class Method { kNeuroHotnet, kSiggmDiffusion, kGlasso, kNaive };
inline constexpr Method kAllMethods[] = {Method::kNeuroHotnet, Method::kSiggmDiffusion,
                                         Method::kGlasso, Method::kNaive};
std::string method_name(Method m);

struct MethodOutcome {
  Method method{};
  bool failed = false;
  std::string error;
  std::vector<NodeSet> estimated;
  std::vector<long> matches;  // per truth component
  double recovery = 0.0;
  double seconds = 0.0;
};

struct TrialRecord {
  std::size_t trial = 0;
  std::vector<NodeSet> truth;
  std::vector<MethodOutcome> outcomes;  // in kAllMethods order
};

struct MethodSummary {
  Method method{};
  std::size_t completed = 0;
  std::size_t failed = 0;
  double mean_recovery = 0.0;
  double ci_half_width = 0.0;  // normal approximation, 95%
  double mean_seconds = 0.0;
};

struct SimResult {
  SimConfig config;
  std::vector<TrialRecord> trials;
  std::vector<MethodSummary> summary;
};

/// Runs every method on one simulated data set.
TrialRecord run_trial(const SimConfig& cfg, std::size_t trial);

/// Recovery study: `cfg.trials` independent trials, spread over `threads`
/// workers; the result does not depend on the thread count except timings.
SimResult run_study1(const SimConfig& cfg, std::size_t threads = 1);

struct RuntimePoint {
  std::size_t regions = 0;
  Method method{};
  std::vector<double> seconds;  // one per repeat
  double mean_seconds = 0.0;
  std::size_t components = 0;   // from the last repeat
};

struct RuntimeResult {
  SimConfig config;
  std::vector<RuntimePoint> points;
  /// Least-squares slope of log(mean seconds) against log(regions).
  double slope_neurohotnet = 0.0;
  double slope_siggm = 0.0;
};

/// Runtime study: one data set per size; the Neuro-Hotnet and diffusion-glasso
/// pipelines are each timed `repeats` times, serially.
RuntimeResult run_study2(const std::vector<std::size_t>& sizes, std::size_t repeats,
                         const SimConfig& cfg);

/// Least-squares slope of log(y) on log(x).
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

/// Seed of trial `t` derived from the master seed.
std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial);

}  // namespace neurohotnet
