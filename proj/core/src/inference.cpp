#include "neurohotnet/inference.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "neurohotnet/error.hpp"
#include "neurohotnet/parallel.hpp"
#include "neurohotnet/rng.hpp"
#include "neurohotnet/stats.hpp"

namespace neurohotnet {

namespace {

constexpr double kUnitDiagonalTolerance = 1e-10;
// Replicates whose |statistic| matches the observed one up to rounding count
// as exceedances; a relabeling that maps the component onto itself must tie.
constexpr double kTieTolerance = 1e-10;

void check_component(const NodeSet& component, std::size_t regions) {
  if (component.size() < 2) {
    throw ParameterError("a component needs at least two nodes to form a pair");
  }
  if (component.members().back() >= regions) {
    throw StructuralError("component refers to a node outside the correlation matrices");
  }
}

/// Draws the images of `count` members under a uniform relabeling of
/// `regions` nodes: the first `count` steps of a Fisher-Yates shuffle.
/// `scratch` must hold 0..regions-1 and is restored before returning.
void draw_images(RandomStream& rng, std::size_t count, std::vector<std::size_t>& scratch,
                 std::vector<std::size_t>& swaps, std::vector<std::size_t>& images) {
  const std::size_t regions = scratch.size();
  for (std::size_t k = 0; k < count; ++k) {
    const auto j = k + static_cast<std::size_t>(rng.below(regions - k));
    std::swap(scratch[k], scratch[j]);
    swaps[k] = j;
    images[k] = scratch[k];
  }
  for (std::size_t k = count; k-- > 0;) std::swap(scratch[k], scratch[swaps[k]]);
}

/// Sum of z over unordered member pairs with rows mapped through `row_image`
/// and columns through `col_image`.
double pair_sum(const Matrix& z, const std::vector<std::size_t>& row_image,
                const std::vector<std::size_t>& col_image) {
  double total = 0.0;
  const std::size_t m = row_image.size();
  for (std::size_t b = 1; b < m; ++b) {
    const auto col = static_cast<Eigen::Index>(col_image[b]);
    for (std::size_t a = 0; a < b; ++a) {
      total += z(static_cast<Eigen::Index>(row_image[a]), col);
    }
  }
  return total;
}

double mean_abs_within(const Matrix& c, const std::vector<std::size_t>& image) {
  double total = 0.0;
  const std::size_t m = image.size();
  for (std::size_t b = 1; b < m; ++b) {
    for (std::size_t a = 0; a < b; ++a) {
      total += std::abs(c(static_cast<Eigen::Index>(image[a]),
                          static_cast<Eigen::Index>(image[b])));
    }
  }
  return total / static_cast<double>(m * (m - 1) / 2);
}

void check_same_regions(const std::vector<SubjectSample>& samples) {
  if (samples.empty()) throw InputError("no subjects supplied");
  const auto r = samples.front().regions();
  for (const auto& s : samples) {
    if (s.regions() != r) {
      std::ostringstream msg;
      msg << "subject '" << s.subject_id() << "' has " << s.regions()
          << " regions, expected " << r;
      throw StructuralError(msg.str());
    }
  }
}

}  // namespace

Matrix pearson_correlation(const Matrix& signals) {
  const auto frames = signals.rows();
  const auto n = signals.cols();
  if (frames < 2) throw InputError("need at least two time points for a correlation");
  Matrix centered = signals.rowwise() - signals.colwise().mean();
  Vector scale(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const double norm = centered.col(j).norm();
    if (!(norm > 0.0)) {
      std::ostringstream msg;
      msg << "time series of region " << j << " is constant";
      throw InputError(msg.str());
    }
    scale(j) = 1.0 / norm;
  }
  centered = centered * scale.asDiagonal();
  Matrix corr = Matrix::Identity(n, n);
  corr.selfadjointView<Eigen::Lower>().rankUpdate(centered.transpose());
  corr.diagonal().setOnes();
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = j + 1; i < n; ++i) {
      // rankUpdate added the product on top of the identity's zeros.
      const double r = std::clamp(corr(i, j), -1.0, 1.0);
      corr(i, j) = r;
      corr(j, i) = r;
    }
  }
  return corr;
}

SubjectSample SubjectSample::from_signals(std::string subject_id, Matrix signals) {
  Matrix corr = pearson_correlation(signals);
  return SubjectSample(std::move(subject_id), std::move(signals), std::move(corr));
}

SubjectSample SubjectSample::from_correlations(std::string subject_id, Matrix correlations) {
  if (correlations.rows() != correlations.cols()) {
    throw StructuralError("correlation matrix of '" + subject_id + "' is not square");
  }
  if (!is_symmetric(correlations)) {
    throw StructuralError("correlation matrix of '" + subject_id + "' is not symmetric");
  }
  const auto n = correlations.rows();
  for (Eigen::Index j = 0; j < n; ++j) {
    if (std::abs(correlations(j, j) - 1.0) > kUnitDiagonalTolerance) {
      throw InputError("correlation matrix of '" + subject_id + "' lacks a unit diagonal");
    }
    for (Eigen::Index i = 0; i < n; ++i) {
      const double r = correlations(i, j);
      if (!(std::abs(r) <= 1.0)) {
        throw InputError("correlation outside [-1, 1] for subject '" + subject_id + "'");
      }
    }
  }
  return SubjectSample(std::move(subject_id), std::nullopt, std::move(correlations));
}

double fisher_z(double r) {
  if (!(std::abs(r) <= 1.0)) {
    std::ostringstream msg;
    msg << "correlation " << r << " lies outside [-1, 1]";
    throw InputError(msg.str());
  }
  return std::atanh(std::clamp(r, -kFisherClamp, kFisherClamp));
}

FisherStack::FisherStack(const std::vector<SubjectSample>& samples) {
  check_same_regions(samples);
  regions_ = samples.front().regions();
  z_.reserve(samples.size());
  for (const auto& s : samples) z_.push_back(s.correlations().unaryExpr(&fisher_z));
}

double component_statistic(const FisherStack& z, const NodeSet& component) {
  check_component(component, z.regions());
  const std::size_t m = component.size();
  double total = 0.0;
  for (std::size_t i = 0; i < z.subjects(); ++i) {
    total += pair_sum(z.subject(i), component.members(), component.members());
  }
  return total / (static_cast<double>(z.subjects()) * static_cast<double>(m * (m - 1) / 2));
}

double component_statistic(const std::vector<SubjectSample>& samples,
                           const NodeSet& component) {
  return component_statistic(FisherStack(samples), component);
}

TestResult permutation_test(const FisherStack& z, const NodeSet& component,
                            const PermutationOptions& options) {
  if (options.permutations < kMinPermutations) {
    std::ostringstream msg;
    msg << "permutation test needs at least " << kMinPermutations
        << " replicates, got " << options.permutations;
    throw ParameterError(msg.str());
  }
  check_component(component, z.regions());

  const std::size_t m = component.size();
  const double normalizer =
      static_cast<double>(z.subjects()) * static_cast<double>(m * (m - 1) / 2);
  const double observed = component_statistic(z, component);
  const double bar = std::abs(observed) - kTieTolerance * std::max(1.0, std::abs(observed));

  const std::size_t replicates = options.permutations;
  std::vector<unsigned char> exceeds(replicates, 0);
  parallel_for(replicates, options.threads, [&](std::size_t begin, std::size_t end) {
    std::vector<std::size_t> scratch(z.regions());
    std::iota(scratch.begin(), scratch.end(), std::size_t{0});
    std::vector<std::size_t> swaps(m);
    std::vector<std::size_t> images(m);
    for (std::size_t b = begin; b < end; ++b) {
      double total = 0.0;
      for (std::size_t i = 0; i < z.subjects(); ++i) {
        RandomStream rng(options.seed, stream_tag::kPermutation, i, b);
        draw_images(rng, m, scratch, swaps, images);
        total += options.null == NullScheme::kRelabel
                     ? pair_sum(z.subject(i), images, images)
                     : pair_sum(z.subject(i), images, component.members());
      }
      exceeds[b] = std::abs(total / normalizer) >= bar ? 1 : 0;
    }
  });
  const auto count = static_cast<std::size_t>(std::count(exceeds.begin(), exceeds.end(), 1));

  TestResult out;
  out.component = component;
  out.statistic = observed;
  out.permutations = replicates;
  out.p_value = static_cast<double>(1 + count) / static_cast<double>(replicates + 1);
  return out;
}

TestResult permutation_test(const std::vector<SubjectSample>& samples,
                            const NodeSet& component, const PermutationOptions& options) {
  return permutation_test(FisherStack(samples), component, options);
}

std::vector<TestResult> select(std::vector<TestResult> results, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw ParameterError("alpha must lie in (0, 1)");
  const double cutoff = alpha / static_cast<double>(std::max<std::size_t>(results.size(), 1));
  for (auto& r : results) r.selected = r.p_value < cutoff;
  return results;
}

TestResult ttest_variant(const std::vector<SubjectSample>& samples,
                         const NodeSet& component, std::uint64_t seed) {
  if (samples.size() < 3) throw ParameterError("the t-test variant needs at least 3 subjects");
  check_same_regions(samples);
  const auto regions = samples.front().regions();
  check_component(component, regions);

  const std::size_t m = component.size();
  std::vector<double> observed(samples.size());
  std::vector<double> null(samples.size());
  std::vector<std::size_t> scratch(regions);
  std::iota(scratch.begin(), scratch.end(), std::size_t{0});
  std::vector<std::size_t> swaps(m);
  std::vector<std::size_t> images(m);
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const Matrix& c = samples[i].correlations();
    observed[i] = mean_abs_within(c, component.members());
    RandomStream rng(seed, stream_tag::kTTestNull, i, 0);
    draw_images(rng, m, scratch, swaps, images);
    null[i] = mean_abs_within(c, images);
  }
  const auto test = stats::paired_t_test(observed, null);

  TestResult out;
  out.component = component;
  out.statistic = test.t;
  out.permutations = 1;
  // A zero-variance difference with nonzero mean has t = inf.
  out.p_value = std::max(test.p_value, std::numeric_limits<double>::min());
  return out;
}

}  // namespace neurohotnet
