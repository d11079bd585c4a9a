#include "neurohotnet/graph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <set>
#include <sstream>

#include "neurohotnet/error.hpp"

namespace neurohotnet {

NodeSet::NodeSet(std::vector<std::size_t> members, std::size_t bound)
    : members_(std::move(members)) {
  std::sort(members_.begin(), members_.end());
  if (std::adjacent_find(members_.begin(), members_.end()) != members_.end()) {
    throw StructuralError("node set contains duplicate indices");
  }
  if (!members_.empty() && members_.back() >= bound) {
    std::ostringstream msg;
    msg << "node index " << members_.back() << " out of range for " << bound
        << " nodes";
    throw StructuralError(msg.str());
  }
}

bool NodeSet::contains(std::size_t node) const {
  return std::binary_search(members_.begin(), members_.end(), node);
}

std::size_t symmetric_difference_size(const NodeSet& a, const NodeSet& b) {
  std::vector<std::size_t> diff;
  std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(),
                                std::back_inserter(diff));
  return diff.size();
}

std::vector<std::string> index_labels(std::size_t n) {
  std::vector<std::string> labels(n);
  for (std::size_t i = 0; i < n; ++i) labels[i] = std::to_string(i);
  return labels;
}

bool is_symmetric(const Matrix& a, double relative_tolerance) {
  if (a.rows() != a.cols()) return false;
  const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
  const double tol = relative_tolerance * scale;
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = i + 1; j < a.cols(); ++j) {
      if (!(std::abs(a(i, j) - a(j, i)) <= tol)) return false;
    }
  }
  return true;
}

WeightedGraph::WeightedGraph(std::vector<std::string> labels, Matrix weights,
                             Repair repair)
    : labels_(std::move(labels)), weights_(std::move(weights)) {
  const auto n = static_cast<Eigen::Index>(labels_.size());
  if (weights_.rows() != n || weights_.cols() != n) {
    std::ostringstream msg;
    msg << "weight matrix is " << weights_.rows() << "x" << weights_.cols()
        << " but " << n << " labels were given";
    throw StructuralError(msg.str());
  }
  std::set<std::string> seen;
  for (const auto& label : labels_) {
    if (!seen.insert(label).second) {
      throw StructuralError("duplicate region label '" + label + "'");
    }
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const double w = weights_(i, j);
      if (!std::isfinite(w) || w < 0.0) {
        std::ostringstream msg;
        msg << "weight (" << i << "," << j << ") = " << w
            << " is not a finite nonnegative number";
        throw StructuralError(msg.str());
      }
    }
    if (weights_(i, i) != 0.0) {
      throw StructuralError("diagonal weight of '" + labels_[i] + "' is nonzero");
    }
  }
  if (!is_symmetric(weights_)) {
    if (repair != Repair::kSymmetrize) {
      throw StructuralError("weight matrix is not symmetric");
    }
    weights_ = (0.5 * (weights_ + weights_.transpose())).eval();
  }
  // Exact symmetry from here on.
  weights_.triangularView<Eigen::StrictlyLower>() =
      weights_.transpose().triangularView<Eigen::StrictlyLower>();
}

WeightedGraph WeightedGraph::unlabeled(Matrix weights, Repair repair) {
  auto labels = index_labels(static_cast<std::size_t>(weights.rows()));
  return WeightedGraph(std::move(labels), std::move(weights), repair);
}

bool WeightedGraph::has_edges() const { return (weights_.array() > 0.0).any(); }

Vector weighted_degrees(const WeightedGraph& g) {
  return g.weights().rowwise().sum();
}

Matrix normalize_symmetric(const WeightedGraph& g) {
  const Vector degree = weighted_degrees(g);
  const auto n = degree.size();
  Vector inv_sqrt = Vector::Zero(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (degree(i) > 0.0) inv_sqrt(i) = 1.0 / std::sqrt(degree(i));
  }
  Matrix out(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) {
      // Written as one division so that M'(a,b) == M'(b,a) bit for bit.
      const double w = g.weights()(i, j);
      out(i, j) = w == 0.0 ? 0.0 : w / std::sqrt(degree(i) * degree(j));
    }
  }
  return out;
}

std::vector<NodeSet> connected_components(const Matrix& adjacency,
                                          std::size_t min_size) {
  if (min_size == 0) throw ParameterError("min_size must be at least 1");
  if (adjacency.rows() != adjacency.cols()) {
    throw StructuralError("adjacency matrix is not square");
  }
  if (!is_symmetric(adjacency)) {
    throw StructuralError("adjacency matrix is not symmetric");
  }
  const auto n = static_cast<std::size_t>(adjacency.rows());
  std::vector<bool> visited(n, false);
  std::vector<NodeSet> components;
  std::vector<std::size_t> members;
  std::queue<std::size_t> frontier;
  for (std::size_t start = 0; start < n; ++start) {
    if (visited[start]) continue;
    visited[start] = true;
    members.assign(1, start);
    frontier.push(start);
    while (!frontier.empty()) {
      const auto u = frontier.front();
      frontier.pop();
      for (std::size_t v = 0; v < n; ++v) {
        if (v == u || visited[v]) continue;
        const auto iu = static_cast<Eigen::Index>(u);
        const auto iv = static_cast<Eigen::Index>(v);
        if (adjacency(iu, iv) != 0.0 || adjacency(iv, iu) != 0.0) {
          visited[v] = true;
          members.push_back(v);
          frontier.push(v);
        }
      }
    }
    if (members.size() >= 2 && members.size() >= min_size) {
      components.emplace_back(members, n);
    }
  }
  return components;
}

}  // namespace neurohotnet
