#include "neurohotnet/detect.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "neurohotnet/error.hpp"

namespace neurohotnet {

namespace {

void check_delta(double delta) {
  if (!(delta >= 0.0) || !std::isfinite(delta)) {
    throw ParameterError("delta must be a finite nonnegative number");
  }
}

}  // namespace

Matrix threshold(const InfluenceGraph& g, double delta) {
  check_delta(delta);
  Matrix kept = g.influence();
  for (Eigen::Index j = 0; j < kept.cols(); ++j) {
    for (Eigen::Index i = 0; i < kept.rows(); ++i) {
      if (i == j || kept(i, j) < delta) kept(i, j) = 0.0;
    }
  }
  return kept;
}

CandidateSet candidates(const InfluenceGraph& g, double delta) {
  CandidateSet out;
  out.delta = delta;
  out.components = connected_components(threshold(g, delta), kMinCandidateSize);
  out.source_labels = g.labels();
  return out;
}

std::vector<DeltaProfile> delta_profile(const InfluenceGraph& g,
                                        const std::vector<double>& deltas) {
  std::vector<DeltaProfile> profile;
  profile.reserve(deltas.size());
  for (const double delta : deltas) {
    DeltaProfile row;
    row.delta = delta;
    for (const auto& c : candidates(g, delta).components) row.sizes.push_back(c.size());
    std::sort(row.sizes.begin(), row.sizes.end(), std::greater<>());
    profile.push_back(std::move(row));
  }
  return profile;
}

std::vector<double> linear_grid(double first, double last, std::size_t count) {
  if (count == 0) throw ParameterError("grid needs at least one point");
  if (count == 1) return {first};
  std::vector<double> grid(count);
  const double step = (last - first) / static_cast<double>(count - 1);
  for (std::size_t i = 0; i < count; ++i) grid[i] = first + step * static_cast<double>(i);
  grid.back() = last;
  return grid;
}

}  // namespace neurohotnet
