#include "neurohotnet/simlab.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>
#include <tuple>

#include "neurohotnet/baselines.hpp"
#include "neurohotnet/detect.hpp"
#include "neurohotnet/diffusion.hpp"
#include "neurohotnet/error.hpp"
#include "neurohotnet/parallel.hpp"
#include "neurohotnet/pipelines.hpp"
#include "neurohotnet/precision.hpp"
#include "neurohotnet/rng.hpp"
#include "neurohotnet/stats.hpp"

namespace neurohotnet {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string subject_label(std::size_t i) {
  std::ostringstream out;
  out << "sim" << i;
  return out.str();
}

}  // namespace

void SimConfig::validate() const {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw ParameterError(what);
  };
  require(regions >= 1, "regions must be at least 1");
  require(density > 0.0 && density < 1.0, "density must lie in (0, 1)");
  require(min_component >= 1, "min_component must be at least 1");
  require(subjects >= 3, "at least 3 subjects are needed");
  require(frames >= 2, "at least 2 frames are needed");
  require(signal_sd > 0.0, "signal_sd must be positive");
  require(noise_sd >= 0.0, "noise_sd must be nonnegative");
  require(trials >= 1, "trials must be at least 1");
  require(gamma > 0.0, "gamma must be positive");
  require(delta >= 0.0, "delta must be nonnegative");
  require(nu > 0.0, "nu must be positive");
  require(eta >= 0.0, "eta must be nonnegative");
  require(epsilon > 0.0 && epsilon < 1.0, "epsilon must lie in (0, 1)");
  require(alpha > 0.0 && alpha < 1.0, "alpha must lie in (0, 1)");
  require(permutations >= kMinPermutations, "permutations must be at least 100");
}

std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial) {
  return mix64(mix64(seed ^ stream_tag::kTrial) + mix64(trial));
}

WeightedGraph generate_truth(std::size_t regions, double density, std::size_t min_component,
                             std::uint64_t seed) {
  if (!(density >= 0.0 && density <= 1.0)) throw ParameterError("density must lie in [0, 1]");
  if (min_component < 1) throw ParameterError("min_component must be at least 1");
  const auto n = static_cast<Eigen::Index>(regions);
  RandomStream rng(seed, stream_tag::kTruthGraph);
  Matrix w = Matrix::Zero(n, n);
  for (Eigen::Index j = 1; j < n; ++j) {
    for (Eigen::Index i = 0; i < j; ++i) {
      const bool edge = rng.uniform() < density;
      double weight = rng.uniform();
      while (weight == 0.0) weight = rng.uniform();
      if (edge) {
        w(i, j) = weight;
        w(j, i) = weight;
      }
    }
  }
  // Keep only components that are large enough.
  const auto kept = connected_components(w, std::max<std::size_t>(min_component, 1));
  std::vector<bool> keep(regions, false);
  for (const auto& c : kept) {
    for (auto v : c) keep[v] = true;
  }
  for (Eigen::Index j = 0; j < n; ++j) {
    if (keep[static_cast<std::size_t>(j)]) continue;
    w.row(j).setZero();
    w.col(j).setZero();
  }
  return WeightedGraph::unlabeled(std::move(w));
}

Matrix simulation_covariance(const WeightedGraph& truth, const SimConfig& cfg) {
  const auto n = static_cast<Eigen::Index>(truth.size());
  Matrix rho = truth.weights();
  const double scale = rho.cwiseAbs().maxCoeff();
  if (scale > 0.0) rho /= scale;
  rho.diagonal().setOnes();
  const Matrix corr = nearest_correlation(rho, cfg.nearest).correlation;
  const Vector sigma = Vector::Constant(n, cfg.signal_sd);
  return sigma.asDiagonal() * corr * sigma.asDiagonal();
}

std::vector<SubjectSample> generate_subjects(const WeightedGraph& truth, const SimConfig& cfg,
                                             std::uint64_t seed, bool keep_signals,
                                             std::size_t threads) {
  const Matrix covariance = simulation_covariance(truth, cfg);
  const auto n = covariance.rows();
  // Symmetric square root; the projected correlation may be singular.
  const Eigen::SelfAdjointEigenSolver<Matrix> eig(covariance);
  if (eig.info() != Eigen::Success) throw NumericalError("eigendecomposition failed");
  const Matrix root = eig.eigenvectors() *
                      eig.eigenvalues().cwiseMax(0.0).cwiseSqrt().asDiagonal() *
                      eig.eigenvectors().transpose();
  const auto frames = static_cast<Eigen::Index>(cfg.frames);

  std::vector<std::optional<SubjectSample>> slots(cfg.subjects);
  parallel_for(cfg.subjects, threads, [&](std::size_t begin, std::size_t end) {
    Matrix draws(frames, n);
    for (std::size_t s = begin; s < end; ++s) {
      RandomStream rng(seed, stream_tag::kSubjects, s);
      for (Eigen::Index t = 0; t < frames; ++t) {
        for (Eigen::Index r = 0; r < n; ++r) draws(t, r) = rng.normal();
      }
      Matrix signals = draws * root;  // root is symmetric
      signals.array() += cfg.signal_mean;
      if (cfg.noise_sd > 0.0) {
        for (Eigen::Index t = 0; t < frames; ++t) {
          for (Eigen::Index r = 0; r < n; ++r) signals(t, r) += cfg.noise_sd * rng.normal();
        }
      }
      auto sample = SubjectSample::from_signals(subject_label(s), std::move(signals));
      if (!keep_signals) sample.discard_signals();
      slots[s].emplace(std::move(sample));
    }
  });
  std::vector<SubjectSample> out;
  out.reserve(slots.size());
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

std::vector<long> match_components(const std::vector<NodeSet>& truth,
                                   const std::vector<NodeSet>& estimated) {
  struct Candidate {
    std::size_t difference;
    std::size_t truth_index;
    std::size_t estimated_index;
  };
  std::vector<Candidate> pairs;
  for (std::size_t t = 0; t < truth.size(); ++t) {
    for (std::size_t e = 0; e < estimated.size(); ++e) {
      const auto d = symmetric_difference_size(truth[t], estimated[e]);
      if (d <= kMatchTolerance) pairs.push_back({d, t, e});
    }
  }
  // Ties resolve by the smallest node index of the truth, then the estimate.
  std::sort(pairs.begin(), pairs.end(), [&](const Candidate& a, const Candidate& b) {
    return std::tuple(a.difference, truth[a.truth_index].front(), a.truth_index,
                      estimated[a.estimated_index].front(), a.estimated_index) <
           std::tuple(b.difference, truth[b.truth_index].front(), b.truth_index,
                      estimated[b.estimated_index].front(), b.estimated_index);
  });
  std::vector<long> match(truth.size(), -1);
  std::vector<bool> used(estimated.size(), false);
  for (const auto& p : pairs) {
    if (match[p.truth_index] >= 0 || used[p.estimated_index]) continue;
    match[p.truth_index] = static_cast<long>(p.estimated_index);
    used[p.estimated_index] = true;
  }
  return match;
}

double recovery_rate(const std::vector<NodeSet>& truth, const std::vector<NodeSet>& estimated) {
  if (truth.empty()) return 1.0;
  const auto match = match_components(truth, estimated);
  const auto hits = std::count_if(match.begin(), match.end(), [](long m) { return m >= 0; });
  return static_cast<double>(hits) / static_cast<double>(truth.size());
}

std::string method_name(Method m) {
  switch (m) {
    case Method::kNeuroHotnet: return "neurohotnet";
    case Method::kSiggmDiffusion: return "siggm-diffusion";
    case Method::kGlasso: return "glasso";
    case Method::kNaive: return "naive";
  }
  return "unknown";
}

TrialRecord run_trial(const SimConfig& cfg, std::size_t trial) {
  const std::uint64_t seed = trial_seed(cfg.seed, trial);
  TrialRecord record;
  record.trial = trial;

  const WeightedGraph truth = generate_truth(cfg.regions, cfg.density, cfg.min_component, seed);
  record.truth = connected_components(truth.weights(), cfg.min_component);
  const auto samples = generate_subjects(truth, cfg, seed);

  std::optional<InfluenceGraph> influence;
  std::optional<Matrix> pooled;
  for (const Method method : kAllMethods) {
    MethodOutcome outcome;
    outcome.method = method;
    const auto start = Clock::now();
    try {
      switch (method) {
        case Method::kNeuroHotnet: {
          influence.emplace(diffuse(truth, cfg.gamma));
          HotnetOptions options;
          options.delta = cfg.delta;
          options.alpha = cfg.alpha;
          options.permutation.permutations = cfg.permutations;
          options.permutation.seed = seed;
          outcome.estimated = run_neurohotnet(*influence, samples, options).selected();
          break;
        }
        case Method::kSiggmDiffusion:
        case Method::kGlasso: {
          if (!influence) influence.emplace(diffuse(truth, cfg.gamma));
          if (!pooled) pooled.emplace(mean_correlation(samples));
          const double eta = method == Method::kGlasso ? 0.0 : cfg.eta;
          outcome.estimated = siggm_with_diffusion(*pooled, *influence, cfg.nu, eta).components;
          break;
        }
        case Method::kNaive:
          outcome.estimated = naive_detect(samples, cfg.epsilon).components;
          break;
      }
      outcome.matches = match_components(record.truth, outcome.estimated);
      outcome.recovery = recovery_rate(record.truth, outcome.estimated);
    } catch (const Error& e) {
      outcome.failed = true;
      outcome.error = e.what();
    }
    outcome.seconds = seconds_since(start);
    record.outcomes.push_back(std::move(outcome));
  }
  return record;
}

SimResult run_study1(const SimConfig& cfg, std::size_t threads) {
  cfg.validate();
  SimResult result;
  result.config = cfg;
  result.trials.resize(cfg.trials);
  parallel_for(cfg.trials, threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t t = begin; t < end; ++t) result.trials[t] = run_trial(cfg, t);
  });

  const double z = stats::normal_two_sided_quantile(0.95);
  for (std::size_t k = 0; k < std::size(kAllMethods); ++k) {
    MethodSummary summary;
    summary.method = kAllMethods[k];
    std::vector<double> rates;
    double seconds = 0.0;
    for (const auto& trial : result.trials) {
      const auto& outcome = trial.outcomes[k];
      if (outcome.failed) {
        ++summary.failed;
        continue;
      }
      rates.push_back(outcome.recovery);
      seconds += outcome.seconds;
    }
    summary.completed = rates.size();
    if (!rates.empty()) {
      summary.mean_recovery = stats::mean(rates);
      summary.ci_half_width =
          z * stats::stddev(rates) / std::sqrt(static_cast<double>(rates.size()));
      summary.mean_seconds = seconds / static_cast<double>(rates.size());
    }
    result.summary.push_back(summary);
  }
  return result;
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw ParameterError("slope needs at least two matching points");
  }
  std::vector<double> lx(x.size());
  std::vector<double> ly(y.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0 && y[i] > 0.0)) throw ParameterError("log-log slope needs positive values");
    lx[i] = std::log(x[i]);
    ly[i] = std::log(y[i]);
  }
  const double mx = stats::mean(lx);
  const double my = stats::mean(ly);
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxy += (lx[i] - mx) * (ly[i] - my);
    sxx += (lx[i] - mx) * (lx[i] - mx);
  }
  if (sxx == 0.0) throw ParameterError("slope needs at least two distinct sizes");
  return sxy / sxx;
}

RuntimeResult run_study2(const std::vector<std::size_t>& sizes, std::size_t repeats,
                         const SimConfig& cfg) {
  cfg.validate();
  if (sizes.empty() || repeats == 0) throw ParameterError("need at least one size and one repeat");
  RuntimeResult result;
  result.config = cfg;
  std::vector<double> xs;
  std::vector<double> hotnet_times;
  std::vector<double> siggm_times;
  for (const std::size_t regions : sizes) {
    const std::uint64_t seed = trial_seed(cfg.seed, regions);
    SimConfig sized = cfg;
    sized.regions = regions;
    const WeightedGraph truth =
        generate_truth(regions, cfg.density, cfg.min_component, seed);
    const auto samples = generate_subjects(truth, sized, seed);

    RuntimePoint hotnet{regions, Method::kNeuroHotnet, {}, 0.0, 0};
    RuntimePoint siggm{regions, Method::kSiggmDiffusion, {}, 0.0, 0};
    for (std::size_t rep = 0; rep < repeats; ++rep) {
      auto start = Clock::now();
      const auto influence = diffuse(truth, cfg.gamma);
      HotnetOptions options;
      options.delta = cfg.delta;
      options.alpha = cfg.alpha;
      options.permutation.permutations = cfg.permutations;
      options.permutation.seed = seed;
      hotnet.components = run_neurohotnet(influence, samples, options).selected().size();
      hotnet.seconds.push_back(seconds_since(start));

      start = Clock::now();
      const auto influence2 = diffuse(truth, cfg.gamma);
      const Matrix pooled = mean_correlation(samples);
      siggm.components =
          siggm_with_diffusion(pooled, influence2, cfg.nu, cfg.eta).components.size();
      siggm.seconds.push_back(seconds_since(start));
    }
    hotnet.mean_seconds = stats::mean(hotnet.seconds);
    siggm.mean_seconds = stats::mean(siggm.seconds);
    xs.push_back(static_cast<double>(regions));
    hotnet_times.push_back(hotnet.mean_seconds);
    siggm_times.push_back(siggm.mean_seconds);
    result.points.push_back(std::move(hotnet));
    result.points.push_back(std::move(siggm));
  }
  if (xs.size() >= 2) {
    result.slope_neurohotnet = loglog_slope(xs, hotnet_times);
    result.slope_siggm = loglog_slope(xs, siggm_times);
  }
  return result;
}

}  // namespace neurohotnet
