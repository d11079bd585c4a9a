#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace neurohotnet {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Relative tolerance used by the symmetry check on ingest.
inline constexpr double kSymmetryTolerance = 1e-9;

/// Sorted set of node indices into a graph's label order.
class NodeSet {
 public:
  NodeSet() = default;
  /// Sorts and validates; throws StructuralError on duplicates or indices >= bound.
  NodeSet(std::vector<std::size_t> members, std::size_t bound);

  const std::vector<std::size_t>& members() const noexcept { return members_; }
  std::size_t size() const noexcept { return members_.size(); }
  bool empty() const noexcept { return members_.empty(); }
  bool contains(std::size_t node) const;
  std::size_t front() const { return members_.front(); }

  auto begin() const noexcept { return members_.begin(); }
  auto end() const noexcept { return members_.end(); }

  friend bool operator==(const NodeSet&, const NodeSet&) = default;

 private:
  std::vector<std::size_t> members_;
};

/// |a \ b| + |b \ a|.
std::size_t symmetric_difference_size(const NodeSet& a, const NodeSet& b);

/// Symmetric, nonnegative, zero-diagonal weight matrix with distinct labels.
class WeightedGraph {
 public:
  enum class Repair { kNone, kSymmetrize };

  /// Validates every invariant. With Repair::kSymmetrize an asymmetric input is
  /// replaced by (A + A^T) / 2 instead of being rejected.
  WeightedGraph(std::vector<std::string> labels, Matrix weights,
                Repair repair = Repair::kNone);

  /// Labels "0", "1", ... for quick construction in code.
  static WeightedGraph unlabeled(Matrix weights, Repair repair = Repair::kNone);

  std::size_t size() const noexcept { return labels_.size(); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const Matrix& weights() const noexcept { return weights_; }
  bool has_edges() const;

 private:
  std::vector<std::string> labels_;
  Matrix weights_;
};

/// Default labels "0".."n-1".
std::vector<std::string> index_labels(std::size_t n);

/// True if |a_ij - a_ji| <= tol * max(1, max|a|) for all pairs.
bool is_symmetric(const Matrix& a, double relative_tolerance = kSymmetryTolerance);

/// Row sums of the weight matrix (the diagonal of the degree matrix).
Vector weighted_degrees(const WeightedGraph& g);

/// w_ab / sqrt(deg(a) deg(b)); rows and columns of zero-degree nodes are zero.
Matrix normalize_symmetric(const WeightedGraph& g);

/// Maximal sets of nodes joined through nonzero off-diagonal entries, keeping
/// those with at least min_size members, ordered by smallest member.
/// Isolated nodes never form a component. Throws StructuralError if adjacency
/// is not square and symmetric.
std::vector<NodeSet> connected_components(const Matrix& adjacency,
                                          std::size_t min_size);

}  // namespace neurohotnet
