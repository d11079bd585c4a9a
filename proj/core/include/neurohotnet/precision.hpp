#pragma once

#include <vector>

#include "neurohotnet/diffusion.hpp"
#include "neurohotnet/graph.hpp"
#include "neurohotnet/inference.hpp"

namespace neurohotnet {

/// Off-diagonal |K| below this is a structural zero when reading the support.
inline constexpr double kSupportCutoff = 1e-8;
/// Added to the diagonal of S before the positive-definiteness check.
inline constexpr double kCovarianceJitter = 1e-8;

struct PrecisionEstimate {
  Matrix precision;  // K
  double nu = 0.0;
  Matrix penalty;
  std::vector<NodeSet> components;
  int sweeps = 0;
  double last_change = 0.0;
  /// Penalized log-likelihood after each sweep (index 0 = starting point),
  /// filled only when GlassoOptions::track_objective is set.
  std::vector<double> objective_trace;
};

/// Element-wise mean of the subjects' sample covariances after each signal
/// column is centered and scaled to unit standard deviation. Throws
/// InputError if a subject has no signals.
Matrix pooled_covariance(const std::vector<SubjectSample>& samples);

/// Mean of the subjects' correlation matrices. Identical to pooled_covariance
/// for subjects whose correlations come from their signals, and usable when
/// only correlations are stored.
Matrix mean_correlation(const std::vector<SubjectSample>& samples);

/// nu * exp(-eta * g) where g is the influence min-max rescaled to [0, 1] over
/// off-diagonal entries (all zero if the influence is constant). Zero diagonal.
Matrix penalty_from_influence(const InfluenceGraph& g, double nu, double eta);

/// nu everywhere off the diagonal.
Matrix uniform_penalty(std::size_t n, double nu);

enum class GlassoSolver {
  /// Proximal Newton steps with an Armijo line search. The quadratic model
  /// is minimized by preconditioned conjugate gradients inside the current
  /// sign pattern followed by a coordinate descent sweep.
  kNewton,
  /// Primal block coordinate ascent, one row/column block at a time.
  kBlockCoordinate,
};

struct GlassoOptions {
  double tol = 1e-6;
  int max_iter = 500;
  GlassoSolver solver = GlassoSolver::kNewton;
  /// Penalize K_jj with the diagonal of the penalty matrix as well.
  bool penalize_diagonal = false;
  bool track_objective = false;
};

/// Penalized log-likelihood log det K - tr(S K) - sum_{j != k} P_jk |K_jk|
/// (plus sum_j P_jj K_jj when the diagonal is penalized).
double glasso_objective(const Matrix& covariance, const Matrix& precision,
                        const Matrix& penalty, bool penalize_diagonal = false);

/// Maximizes glasso_objective over positive-definite K.
///
/// Both solvers start from K = diag(1 / (S_jj + P_jj)) and never decrease
/// the objective from one iteration to the next; K stays positive definite
/// throughout. An iteration is a Newton step (kNewton) or a sweep over all
/// columns (kBlockCoordinate). Converged when no entry of K moved by more
/// than tol in an iteration; kNewton also requires every entry of the
/// minimum-norm subgradient to be within tol of zero.
///
/// Throws NumericalError if S + 1e-8 I is not positive definite, and
/// ConvergenceError (with the last K) after max_iter sweeps.
PrecisionEstimate glasso(const Matrix& covariance, const Matrix& penalty,
                         const GlassoOptions& options = {});

/// Components (>= 3 nodes) of the off-diagonal support of K.
std::vector<NodeSet> support_components(const Matrix& precision);

/// Population-level diffusion-informed estimate: pooled covariance, penalty
/// from the influence graph, graphical lasso, support components.
PrecisionEstimate siggm_with_diffusion(const std::vector<SubjectSample>& samples,
                                       const InfluenceGraph& g, double nu, double eta,
                                       const GlassoOptions& options = {});
PrecisionEstimate siggm_with_diffusion(const Matrix& pooled, const InfluenceGraph& g,
                                       double nu, double eta,
                                       const GlassoOptions& options = {});

}  // namespace neurohotnet
