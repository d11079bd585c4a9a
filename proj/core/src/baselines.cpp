#include "neurohotnet/baselines.hpp"

#include <cmath>
#include <sstream>

#include "neurohotnet/diagnostics.hpp"
#include "neurohotnet/error.hpp"
#include "neurohotnet/parallel.hpp"
#include "neurohotnet/stats.hpp"

namespace neurohotnet {

Matrix naive_pair_pvalues(const std::vector<SubjectSample>& samples, std::size_t threads) {
  if (samples.size() < 3) throw ParameterError("the naive detector needs at least 3 subjects");
  const FisherStack z(samples);
  const auto n = static_cast<Eigen::Index>(z.regions());
  const std::size_t subjects = z.subjects();

  // Grand mean over every unordered pair of every subject, summed in a fixed order.
  double total = 0.0;
  for (std::size_t i = 0; i < subjects; ++i) {
    const Matrix& zi = z.subject(i);
    for (Eigen::Index b = 1; b < n; ++b) {
      for (Eigen::Index a = 0; a < b; ++a) total += zi(a, b);
    }
  }
  const double pairs = static_cast<double>(n) * static_cast<double>(n - 1) / 2.0;
  const double grand_mean = total / (pairs * static_cast<double>(subjects));

  Matrix pvalues = Matrix::Ones(n, n);
  std::vector<std::size_t> degenerate_in_column(static_cast<std::size_t>(n), 0);
  parallel_for(static_cast<std::size_t>(n), threads, [&](std::size_t begin, std::size_t end) {
    std::vector<double> values(subjects);
    for (std::size_t col = begin; col < end; ++col) {
      const auto b = static_cast<Eigen::Index>(col);
      for (Eigen::Index a = 0; a < b; ++a) {
        for (std::size_t i = 0; i < subjects; ++i) values[i] = z.subject(i)(a, b);
        const auto test = stats::one_sample_t_test(values, grand_mean);
        double p = test.p_value;
        if (test.degenerate) {
          p = 1.0;
          ++degenerate_in_column[col];
        }
        pvalues(a, b) = p;
        pvalues(b, a) = p;
      }
    }
  });
  std::size_t degenerate = 0;
  for (auto d : degenerate_in_column) degenerate += d;
  if (degenerate > 0) {
    std::ostringstream msg;
    msg << degenerate << " region pair(s) have identical z-scores in every subject; "
        << "their p-value is set to 1";
    warn(msg.str());
  }
  return pvalues;
}

CandidateSet naive_detect(const std::vector<SubjectSample>& samples, double epsilon,
                          std::size_t threads) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw ParameterError("epsilon must lie in (0, 1)");
  const Matrix pvalues = naive_pair_pvalues(samples, threads);
  const auto n = pvalues.rows();
  Matrix edges = Matrix::Zero(n, n);
  for (Eigen::Index b = 0; b < n; ++b) {
    for (Eigen::Index a = 0; a < n; ++a) {
      if (a != b && pvalues(a, b) < epsilon) edges(a, b) = 1.0;
    }
  }
  CandidateSet out;
  out.delta = epsilon;
  out.components = connected_components(edges, kMinCandidateSize);
  return out;
}

}  // namespace neurohotnet
