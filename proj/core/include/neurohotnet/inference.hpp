#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "neurohotnet/graph.hpp"

namespace neurohotnet {

/// |r| is clamped to this before atanh so that perfect correlations stay finite.
inline constexpr double kFisherClamp = 1.0 - 1e-7;

/// Fewest permutation replicates accepted by permutation_test.
inline constexpr std::size_t kMinPermutations = 100;
inline constexpr std::size_t kDefaultPermutations = 10000;

/// One participant: optional T x R signals and the R x R Pearson correlations.
class SubjectSample {
 public:
  /// Correlations computed from the columns of `signals` (T >= 2).
  static SubjectSample from_signals(std::string subject_id, Matrix signals);
  /// Validates symmetry, unit diagonal and the [-1, 1] range.
  static SubjectSample from_correlations(std::string subject_id, Matrix correlations);

  const std::string& subject_id() const noexcept { return subject_id_; }
  const std::optional<Matrix>& signals() const noexcept { return signals_; }
  const Matrix& correlations() const noexcept { return correlations_; }
  std::size_t regions() const noexcept { return static_cast<std::size_t>(correlations_.rows()); }

  /// Drops the time series, keeping only correlations.
  void discard_signals() { signals_.reset(); }

 private:
  SubjectSample(std::string id, std::optional<Matrix> signals, Matrix correlations)
      : subject_id_(std::move(id)),
        signals_(std::move(signals)),
        correlations_(std::move(correlations)) {}

  std::string subject_id_;
  std::optional<Matrix> signals_;
  Matrix correlations_;
};

/// Pearson correlation of the columns of a T x R matrix. Exactly symmetric
/// with a unit diagonal; throws InputError for a constant column.
Matrix pearson_correlation(const Matrix& signals);

/// atanh(r) after clamping |r| to kFisherClamp. Throws InputError if |r| > 1.
double fisher_z(double r);

/// Fisher z-scores of every subject's correlations, computed once and shared
/// by all component tests.
class FisherStack {
 public:
  explicit FisherStack(const std::vector<SubjectSample>& samples);

  std::size_t subjects() const noexcept { return z_.size(); }
  std::size_t regions() const noexcept { return regions_; }
  const Matrix& subject(std::size_t i) const { return z_[i]; }

 private:
  std::vector<Matrix> z_;
  std::size_t regions_ = 0;
};

/// Mean Fisher z over subjects and unordered pairs inside the component.
double component_statistic(const std::vector<SubjectSample>& samples,
                           const NodeSet& component);
double component_statistic(const FisherStack& z, const NodeSet& component);

/// How a null replicate scrambles a subject's correlation matrix.
enum class NullScheme {
  /// One uniform node relabeling applied to rows and columns.
  kRelabel,
  /// Rows only; the matrix loses symmetry and its unit diagonal.
  kRowsOnly,
};

struct TestResult {
  NodeSet component;
  double statistic = 0.0;
  double p_value = 1.0;
  std::size_t permutations = 0;
  bool selected = false;
};

struct PermutationOptions {
  std::size_t permutations = kDefaultPermutations;
  std::uint64_t seed = 0;
  NullScheme null = NullScheme::kRelabel;
  std::size_t threads = 1;
};

/// Combined permutation test of "no functional connectivity inside the
/// component". Each replicate relabels every subject independently using the
/// substream (seed, subject, replicate) and recomputes the statistic;
/// p = (1 + #{|S0| >= |S_obs|}) / (B + 1). Throws ParameterError if B < 100.
TestResult permutation_test(const FisherStack& z, const NodeSet& component,
                            const PermutationOptions& options);
TestResult permutation_test(const std::vector<SubjectSample>& samples,
                            const NodeSet& component, const PermutationOptions& options);

/// Marks results with p < alpha / results.size() as selected.
std::vector<TestResult> select(std::vector<TestResult> results, double alpha);

/// Paired t-test between each subject's mean |correlation| inside the
/// component and the same quantity after one random relabeling of that
/// subject. Degrees of freedom I - 1; needs at least 3 subjects.
TestResult ttest_variant(const std::vector<SubjectSample>& samples,
                         const NodeSet& component, std::uint64_t seed);

}  // namespace neurohotnet
