#pragma once

#include <string>
#include <vector>

#include "neurohotnet/graph.hpp"

namespace neurohotnet {

/// Equilibrium heat-diffusion influence between every pair of regions.
///
/// `influence(a, b)` averages the share of a's heat that settles on b with the
/// share of b's heat that settles on a, so the matrix is symmetric. Entries
/// between different structural components are exactly zero. The diagonal is
/// kept for completeness but carries no meaning downstream.
class InfluenceGraph {
 public:
  InfluenceGraph(std::vector<std::string> labels, Matrix influence, double gamma);

  std::size_t size() const noexcept { return labels_.size(); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const Matrix& influence() const noexcept { return influence_; }
  double gamma() const noexcept { return gamma_; }

 private:
  std::vector<std::string> labels_;
  Matrix influence_;
  double gamma_;
};

/// Influence graph for restart rate gamma > 0.
///
/// Builds the degree-normalized adjacency M', the Laplacian L = D' - M', and
/// f = (L + gamma I)^{-T}, then averages the two row-normalized directions of
/// f. L + gamma I is factored once (Cholesky) and the inverse is materialized
/// one column at a time; columns are spread over `threads` workers without
/// changing any bit of the result.
InfluenceGraph diffuse(const WeightedGraph& g, double gamma, std::size_t threads = 1);

/// Mean weighted degree over nodes that have at least one edge.
double suggest_gamma(const WeightedGraph& g);

}  // namespace neurohotnet
