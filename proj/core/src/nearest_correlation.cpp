#include "neurohotnet/nearest_correlation.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "neurohotnet/error.hpp"

namespace neurohotnet {

Matrix project_psd(const Matrix& a) {
  const Eigen::SelfAdjointEigenSolver<Matrix> eig(a);
  if (eig.info() != Eigen::Success) throw NumericalError("eigendecomposition failed");
  const Vector clipped = eig.eigenvalues().cwiseMax(0.0);
  Matrix out = eig.eigenvectors() * clipped.asDiagonal() * eig.eigenvectors().transpose();
  return 0.5 * (out + out.transpose());
}

NearestCorrelationResult nearest_correlation(const Matrix& a,
                                             const NearestCorrelationOptions& options) {
  if (a.rows() != a.cols() || !is_symmetric(a)) {
    throw StructuralError("nearest_correlation needs a square symmetric matrix");
  }
  if (!(options.tol > 0.0) || options.max_iter < 1) {
    throw ParameterError("nearest_correlation needs tol > 0 and max_iter >= 1");
  }
  const auto n = a.rows();
  Matrix y = 0.5 * (a + a.transpose());
  y.diagonal().setOnes();
  Matrix x = y;
  Matrix correction = Matrix::Zero(n, n);
  double residual = 0.0;
  int iteration = 0;
  bool converged = false;
  for (iteration = 1; iteration <= options.max_iter; ++iteration) {
    const Matrix x_old = x;
    const Matrix y_old = y;
    const Matrix r = y - correction;
    x = project_psd(r);
    correction = x - r;
    y = x;
    y.diagonal().setOnes();

    const double y_norm = std::max(y.norm(), 1e-300);
    const double change_x = (x - x_old).norm() / std::max(x.norm(), 1e-300);
    const double change_y = (y - y_old).norm() / y_norm;
    const double gap = (y - x).norm() / y_norm;
    residual = std::max({change_x, change_y, gap});
    if (residual <= options.tol) {
      converged = true;
      break;
    }
  }
  if (!converged) {
    std::ostringstream msg;
    msg << "nearest correlation did not converge in " << options.max_iter
        << " iterations (residual " << residual << ")";
    throw ConvergenceError(msg.str(), y, residual, options.max_iter);
  }

  // Floor the spectrum, then restore the exact unit diagonal.
  const Eigen::SelfAdjointEigenSolver<Matrix> eig(y);
  if (eig.info() != Eigen::Success) throw NumericalError("eigendecomposition failed");
  const Vector floored = eig.eigenvalues().cwiseMax(options.eigen_floor);
  Matrix out = eig.eigenvectors() * floored.asDiagonal() * eig.eigenvectors().transpose();
  const Vector inv_sqrt = out.diagonal().cwiseSqrt().cwiseInverse();
  out = inv_sqrt.asDiagonal() * out * inv_sqrt.asDiagonal();
  for (Eigen::Index j = 0; j < n; ++j) {
    out(j, j) = 1.0;
    for (Eigen::Index i = j + 1; i < n; ++i) {
      const double v = 0.5 * (out(i, j) + out(j, i));
      out(i, j) = v;
      out(j, i) = v;
    }
  }
  return {std::move(out), std::min(iteration, options.max_iter), residual};
}

}  // namespace neurohotnet
