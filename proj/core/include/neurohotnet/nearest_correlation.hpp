#pragma once

#include "neurohotnet/graph.hpp"

namespace neurohotnet {

struct NearestCorrelationOptions {
  double tol = 1e-8;
  int max_iter = 200;
  /// Eigenvalue floor applied once after convergence.
  double eigen_floor = 1e-12;
};

struct NearestCorrelationResult {
  Matrix correlation;
  int iterations = 0;
  double residual = 0.0;
};

/// Nearest correlation matrix in the Frobenius norm by alternating projections
/// onto the PSD cone and the unit-diagonal subspace, with Dykstra's correction
/// on the PSD step (Higham 2002). Converged when the relative changes of both
/// iterates and their relative gap are all below tol. The result is then
/// eigenvalue-floored, rescaled and given an exact unit diagonal.
///
/// Throws StructuralError for non-symmetric input and ConvergenceError after
/// max_iter iterations.
NearestCorrelationResult nearest_correlation(const Matrix& a,
                                             const NearestCorrelationOptions& options = {});

/// Projection onto the PSD cone: negative eigenvalues replaced by zero.
Matrix project_psd(const Matrix& a);

}  // namespace neurohotnet
