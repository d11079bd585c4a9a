#include "neurohotnet/diffusion.hpp"

#include <cmath>
#include <sstream>

#include "neurohotnet/error.hpp"
#include "neurohotnet/parallel.hpp"

namespace neurohotnet {

InfluenceGraph::InfluenceGraph(std::vector<std::string> labels, Matrix influence,
                               double gamma)
    : labels_(std::move(labels)), influence_(std::move(influence)), gamma_(gamma) {
  const auto n = static_cast<Eigen::Index>(labels_.size());
  if (influence_.rows() != n || influence_.cols() != n) {
    throw StructuralError("influence matrix does not match label count");
  }
  if (!(gamma_ > 0.0)) throw ParameterError("gamma must be positive");
}

InfluenceGraph diffuse(const WeightedGraph& g, double gamma, std::size_t threads) {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) {
    std::ostringstream msg;
    msg << "gamma must be a finite positive number, got " << gamma;
    throw ParameterError(msg.str());
  }
  const auto n = static_cast<Eigen::Index>(g.size());
  const Vector degree = weighted_degrees(g);
  const Matrix normalized = normalize_symmetric(g);

  Matrix system = -normalized;
  for (Eigen::Index i = 0; i < n; ++i) {
    system(i, i) += normalized.row(i).sum() + gamma;
  }

  const Eigen::LLT<Matrix> factor(system);
  if (factor.info() != Eigen::Success) {
    std::ostringstream msg;
    msg << "Cholesky factorization of L + gamma*I failed (n=" << n
        << ", gamma=" << gamma << ", min diagonal=" << system.diagonal().minCoeff()
        << ")";
    throw NumericalError(msg.str());
  }

  // Column j of the inverse; f = inverse^T, so f's row j is that column.
  Matrix flow(n, n);
  parallel_for(static_cast<std::size_t>(n), threads,
               [&](std::size_t begin, std::size_t end) {
                 Vector unit = Vector::Zero(n);
                 for (std::size_t j = begin; j < end; ++j) {
                   const auto col = static_cast<Eigen::Index>(j);
                   unit.setZero();
                   unit(col) = 1.0;
                   flow.row(col) = factor.solve(unit).transpose();
                 }
               });

  Vector row_sum(n);
  for (Eigen::Index i = 0; i < n; ++i) row_sum(i) = flow.row(i).sum();

  Matrix influence = Matrix::Zero(n, n);
  for (Eigen::Index a = 0; a < n; ++a) {
    if (degree(a) == 0.0) continue;
    for (Eigen::Index b = a; b < n; ++b) {
      if (degree(b) == 0.0) continue;
      const double value =
          0.5 * (flow(a, b) / row_sum(a) + flow(b, a) / row_sum(b));
      influence(a, b) = value;
      influence(b, a) = value;
    }
  }
  return InfluenceGraph(g.labels(), std::move(influence), gamma);
}

double suggest_gamma(const WeightedGraph& g) {
  const Vector degree = weighted_degrees(g);
  double total = 0.0;
  std::size_t count = 0;
  for (Eigen::Index i = 0; i < degree.size(); ++i) {
    if (degree(i) > 0.0) {
      total += degree(i);
      ++count;
    }
  }
  if (count == 0) throw ParameterError("cannot suggest gamma for a graph without edges");
  return total / static_cast<double>(count);
}

}  // namespace neurohotnet
