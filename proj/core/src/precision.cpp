#include "neurohotnet/precision.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>
#include <sstream>

#include "neurohotnet/detect.hpp"
#include "neurohotnet/error.hpp"

namespace neurohotnet {

namespace {

constexpr int kMaxInnerPasses = 10000;

double soft_threshold(double x, double t) {
  if (x > t) return x - t;
  if (x < -t) return x + t;
  return 0.0;
}

void check_penalty(const Matrix& penalty, Eigen::Index n) {
  if (penalty.rows() != n || penalty.cols() != n) {
    throw StructuralError("penalty matrix does not match the covariance dimension");
  }
  if (!is_symmetric(penalty)) throw StructuralError("penalty matrix is not symmetric");
  if (!((penalty.array() >= 0.0).all())) throw ParameterError("penalties must be nonnegative");
}

}  // namespace

Matrix pooled_covariance(const std::vector<SubjectSample>& samples) {
  if (samples.empty()) throw InputError("no subjects supplied");
  const auto n = static_cast<Eigen::Index>(samples.front().regions());
  Matrix total = Matrix::Zero(n, n);
  for (const auto& s : samples) {
    if (!s.signals()) {
      throw InputError("subject '" + s.subject_id() + "' has no time series");
    }
    const Matrix& y = *s.signals();
    if (y.cols() != n) throw StructuralError("subjects disagree on the number of regions");
    if (y.rows() < 2) throw InputError("subject '" + s.subject_id() + "' has fewer than 2 frames");
    Matrix normalized = y.rowwise() - y.colwise().mean();
    const double dof = static_cast<double>(y.rows() - 1);
    for (Eigen::Index j = 0; j < n; ++j) {
      const double sd = normalized.col(j).norm() / std::sqrt(dof);
      if (!(sd > 0.0)) {
        throw InputError("subject '" + s.subject_id() + "' has a constant region time series");
      }
      normalized.col(j) /= sd;
    }
    Matrix cov = Matrix::Zero(n, n);
    cov.selfadjointView<Eigen::Lower>().rankUpdate(normalized.transpose(), 1.0 / dof);
    total += cov.selfadjointView<Eigen::Lower>();
  }
  total /= static_cast<double>(samples.size());
  return total;
}

Matrix mean_correlation(const std::vector<SubjectSample>& samples) {
  if (samples.empty()) throw InputError("no subjects supplied");
  const auto n = static_cast<Eigen::Index>(samples.front().regions());
  Matrix total = Matrix::Zero(n, n);
  for (const auto& s : samples) {
    if (static_cast<Eigen::Index>(s.regions()) != n) {
      throw StructuralError("subjects disagree on the number of regions");
    }
    total += s.correlations();
  }
  return total / static_cast<double>(samples.size());
}

Matrix penalty_from_influence(const InfluenceGraph& g, double nu, double eta) {
  if (!(nu > 0.0) || !std::isfinite(nu)) throw ParameterError("nu must be positive");
  if (!(eta >= 0.0) || !std::isfinite(eta)) throw ParameterError("eta must be nonnegative");
  const Matrix& influence = g.influence();
  const auto n = influence.rows();
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) {
      if (i == j) continue;
      lo = std::min(lo, influence(i, j));
      hi = std::max(hi, influence(i, j));
    }
  }
  Matrix penalty = Matrix::Zero(n, n);
  const double span = hi - lo;
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) {
      if (i == j) continue;
      const double scaled = span > 0.0 ? (influence(i, j) - lo) / span : 0.0;
      penalty(i, j) = nu * std::exp(-eta * scaled);
    }
  }
  return penalty;
}

Matrix uniform_penalty(std::size_t n, double nu) {
  if (!(nu >= 0.0)) throw ParameterError("nu must be nonnegative");
  const auto m = static_cast<Eigen::Index>(n);
  Matrix penalty = Matrix::Constant(m, m, nu);
  penalty.diagonal().setZero();
  return penalty;
}

double glasso_objective(const Matrix& covariance, const Matrix& precision,
                        const Matrix& penalty, bool penalize_diagonal) {
  const Eigen::LLT<Matrix> factor(precision);
  if (factor.info() != Eigen::Success) {
    return -std::numeric_limits<double>::infinity();
  }
  const Matrix& l = factor.matrixLLT();
  double log_det = 0.0;
  for (Eigen::Index i = 0; i < l.rows(); ++i) log_det += 2.0 * std::log(l(i, i));
  const double trace = (covariance.cwiseProduct(precision)).sum();
  double l1 = 0.0;
  const auto n = precision.rows();
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) {
      if (i == j && !penalize_diagonal) continue;
      l1 += penalty(i, j) * std::abs(precision(i, j));
    }
  }
  return log_det - trace - l1;
}

namespace {

struct SolverState {
  Matrix precision;
  int iterations = 0;
  double last_change = 0.0;
  bool converged = false;
  std::vector<double> trace;
};

Matrix effective_penalty(const Matrix& penalty, bool penalize_diagonal) {
  Matrix p = penalty;
  if (!penalize_diagonal) p.diagonal().setZero();
  return p;
}

// Smooth part -log det K + tr(S K) plus the l1 term; +inf if K is not PD.
double negative_objective(const Matrix& s, const Matrix& k, const Matrix& p,
                          Eigen::LLT<Matrix>& factor) {
  factor.compute(k);
  if (factor.info() != Eigen::Success) return std::numeric_limits<double>::infinity();
  const Matrix& l = factor.matrixLLT();
  double log_det = 0.0;
  for (Eigen::Index i = 0; i < l.rows(); ++i) log_det += 2.0 * std::log(l(i, i));
  return -log_det + s.cwiseProduct(k).sum() + p.cwiseProduct(k.cwiseAbs()).sum();
}

double l1_norm(const Matrix& p, const Matrix& k) { return p.cwiseProduct(k.cwiseAbs()).sum(); }

// Largest entry of the minimum-norm subgradient of the negated objective.
double subgradient_residual(const Matrix& gradient, const Matrix& k, const Matrix& p) {
  double worst = 0.0;
  for (Eigen::Index j = 0; j < k.cols(); ++j) {
    for (Eigen::Index i = 0; i < k.rows(); ++i) {
      const double g = gradient(i, j);
      const double r = k(i, j) > 0.0   ? std::abs(g + p(i, j))
                       : k(i, j) < 0.0 ? std::abs(g - p(i, j))
                                       : std::max(0.0, std::abs(g) - p(i, j));
      worst = std::max(worst, r);
    }
  }
  return worst;
}

// Quadratic model of the smooth part restricted to the orthant sigma on the
// free mask, minimized by conjugate gradients. The full inverse Hessian
// R -> K R K serves as preconditioner, so a dense support needs few steps.
Matrix orthant_newton_direction(const Matrix& k, const Matrix& w, const Matrix& gradient,
                                const Matrix& p, const Matrix& mask, const Matrix& sigma) {
  constexpr int kMaxCg = 100;
  constexpr double kCgTol = 1e-10;
  const auto n = k.rows();
  Matrix d = Matrix::Zero(n, n);
  Matrix r = -(gradient + p.cwiseProduct(sigma)).cwiseProduct(mask);
  Matrix z = (k * r * k).cwiseProduct(mask);
  Matrix dir = z;
  double rz = r.cwiseProduct(z).sum();
  const double r0 = r.norm();
  if (r0 == 0.0) return d;
  // Inexact Newton: the forcing term shrinks with the model gradient.
  const double tolerance = r0 * std::clamp(std::sqrt(r0), kCgTol, 0.1);
  for (int it = 0; it < kMaxCg; ++it) {
    const Matrix hd = (w * dir * w).cwiseProduct(mask);
    const double curvature = dir.cwiseProduct(hd).sum();
    if (!(curvature > 0.0)) break;
    const double step = rz / curvature;
    d += step * dir;
    r -= step * hd;
    if (r.norm() <= tolerance) break;
    z = (k * r * k).cwiseProduct(mask);
    const double rz_next = r.cwiseProduct(z).sum();
    dir = z + (rz_next / rz) * dir;
    rz = rz_next;
  }
  return d;
}

// Coordinate descent on the l1-regularized quadratic model over the free set,
// continuing from d.
void coordinate_newton_sweeps(const Matrix& s, const Matrix& k, const Matrix& w,
                              const Matrix& p, const Matrix& mask, int sweeps, Matrix& d) {
  const auto n = k.rows();
  Matrix dw_t = w * d;  // (D W)^T = W D, column-major for the row updates
  for (int sweep = 0; sweep < sweeps; ++sweep) {
    for (Eigen::Index j = 0; j < n; ++j) {
      for (Eigen::Index i = 0; i <= j; ++i) {
        if (mask(i, j) == 0.0) continue;
        const double a = i == j ? w(i, i) * w(i, i) : w(i, j) * w(i, j) + w(i, i) * w(j, j);
        const double b = s(i, j) - w(i, j) + w.col(i).dot(dw_t.row(j));
        const double c = k(i, j) + d(i, j);
        const double mu = -c + soft_threshold(c - b / a, p(i, j) / a);
        if (mu == 0.0) continue;
        d(i, j) += mu;
        dw_t.col(i) += mu * w.col(j);
        if (i != j) {
          d(j, i) += mu;
          dw_t.col(j) += mu * w.col(i);
        }
      }
    }
  }
}

// Newton direction for the l1-regularized quadratic model over the free set.
// Conjugate gradients within the current orthant handle the poorly
// conditioned smooth part; a coordinate sweep then lets entries change sign.
Matrix newton_direction(const Matrix& s, const Matrix& k, const Matrix& w,
                        const Matrix& gradient, const Matrix& p, const Matrix& free_mask) {
  const auto n = k.rows();
  Matrix mask = Matrix::Zero(n, n);
  Matrix sigma = Matrix::Zero(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) {
      if (free_mask(i, j) == 0.0) continue;
      const double g = gradient(i, j);
      if (k(i, j) != 0.0) {
        mask(i, j) = 1.0;
        sigma(i, j) = k(i, j) > 0.0 ? 1.0 : -1.0;
      } else if (std::abs(g) > p(i, j)) {
        mask(i, j) = 1.0;
        sigma(i, j) = g > 0.0 ? -1.0 : 1.0;
      }
    }
  }
  Matrix step = orthant_newton_direction(k, w, gradient, p, mask, sigma);
  step = 0.5 * (step + step.transpose()).eval();
  // Entries leaving their orthant stop at zero.
  Matrix next = k + step;
  next = (next.cwiseProduct(sigma).array() > 0.0 || mask.array() == 0.0)
             .select(next, Matrix::Zero(n, n));
  Matrix d = next - k;
  coordinate_newton_sweeps(s, k, w, p, free_mask, 1, d);
  return d;
}

double model_change(const Matrix& k, const Matrix& w, const Matrix& gradient, const Matrix& p,
                    const Matrix& d) {
  return gradient.cwiseProduct(d).sum() + 0.5 * (w * d * w).cwiseProduct(d).sum() +
         l1_norm(p, k + d) - l1_norm(p, k);
}

SolverState solve_newton(const Matrix& s, const Matrix& p, Matrix k,
                         const GlassoOptions& options) {
  constexpr double kArmijo = 1e-3;
  constexpr int kMaxHalvings = 60;
  const auto n = s.rows();
  SolverState state;
  Eigen::LLT<Matrix> factor;
  Eigen::LLT<Matrix> trial_factor;
  double f = negative_objective(s, k, p, factor);
  if (options.track_objective) state.trace.push_back(-f);

  Matrix free_mask(n, n);
  Matrix candidate;
  for (int iter = 1; iter <= options.max_iter; ++iter) {
    state.iterations = iter;
    Matrix w = factor.solve(Matrix::Identity(n, n));
    w = 0.5 * (w + w.transpose()).eval();
    const Matrix gradient = s - w;
    const double residual = subgradient_residual(gradient, k, p);
    if (residual == 0.0 || (iter > 1 && state.last_change < options.tol && residual <= options.tol)) {
      state.converged = true;
      break;
    }

    for (Eigen::Index j = 0; j < n; ++j) {
      for (Eigen::Index i = 0; i < n; ++i) {
        const bool free = i == j || k(i, j) != 0.0 || std::abs(gradient(i, j)) > p(i, j);
        free_mask(i, j) = free ? 1.0 : 0.0;
      }
    }
    Matrix d = newton_direction(s, k, w, gradient, p, free_mask);
    if (!(model_change(k, w, gradient, p, d) < 0.0)) {
      d.setZero();
      coordinate_newton_sweeps(s, k, w, p, free_mask, 1 + iter / 3, d);
    }
    d = 0.5 * (d + d.transpose()).eval();
    const double decrease =
        gradient.cwiseProduct(d).sum() + l1_norm(p, k + d) - l1_norm(p, k);

    bool accepted = false;
    double f_new = f;
    double step = 1.0;
    if (decrease < 0.0) {
      for (int halving = 0; halving < kMaxHalvings; ++halving, step *= 0.5) {
        candidate = k + step * d;
        f_new = negative_objective(s, candidate, p, trial_factor);
        if (f_new <= f + kArmijo * step * decrease) {
          accepted = true;
          break;
        }
      }
    }
    if (!accepted) {
      // No descent left along the model direction: stationary to working precision.
      state.last_change = 0.0;
      state.converged = true;
      break;
    }
    state.last_change = step * d.cwiseAbs().maxCoeff();
    k = candidate;
    std::swap(factor, trial_factor);
    f = f_new;
    if (options.track_objective) state.trace.push_back(-f);
  }
  state.precision = std::move(k);
  return state;
}

SolverState solve_block_coordinate(const Matrix& s, const Matrix& p, Matrix k,
                                   const GlassoOptions& options) {
  const auto n = s.rows();
  SolverState state;
  // Diagonal of W = K^{-1} at every block optimum.
  const Vector w_diag = s.diagonal() + p.diagonal();
  Matrix w = Matrix::Zero(n, n);
  for (Eigen::Index j = 0; j < n; ++j) w(j, j) = 1.0 / k(j, j);
  if (options.track_objective) {
    Eigen::LLT<Matrix> factor;
    state.trace.push_back(-negative_objective(s, k, p, factor));
  }

  const double inner_tol = std::min(1e-10, options.tol * 1e-4);
  Vector theta(n);
  Vector a_theta(n);  // A theta with A = s22' (W11 - w12 w12^T / w22)
  Vector w_col(n);
  Vector v_theta(n);
  for (int sweep = 1; sweep <= options.max_iter; ++sweep) {
    state.iterations = sweep;
    double change = 0.0;
    for (Eigen::Index j = 0; j < n; ++j) {
      const double s22 = w_diag(j);
      const double wjj = w(j, j);
      w_col = w.col(j);
      auto a_entry = [&](Eigen::Index r, Eigen::Index c) {
        return s22 * (w(r, c) - w_col(r) * w_col(c) / wjj);
      };

      theta = k.col(j);
      theta(j) = 0.0;
      a_theta.setZero();
      for (Eigen::Index c = 0; c < n; ++c) {
        if (c == j || theta(c) == 0.0) continue;
        for (Eigen::Index r = 0; r < n; ++r) {
          if (r != j) a_theta(r) += a_entry(r, c) * theta(c);
        }
      }
      for (int pass = 0; pass < kMaxInnerPasses; ++pass) {
        double max_step = 0.0;
        for (Eigen::Index c = 0; c < n; ++c) {
          if (c == j) continue;
          const double diag = a_entry(c, c);
          const double old = theta(c);
          const double partial = a_theta(c) - diag * old + s(c, j);
          const double updated = -soft_threshold(partial, p(c, j)) / diag;
          const double step = updated - old;
          if (step == 0.0) continue;
          theta(c) = updated;
          for (Eigen::Index r = 0; r < n; ++r) {
            if (r != j) a_theta(r) += a_entry(r, c) * step;
          }
          max_step = std::max(max_step, std::abs(step));
        }
        if (max_step <= inner_tol) break;
      }

      // V theta, where V = W11 - w12 w12^T / w22 is the inverse of K11.
      const double w_dot = w_col.dot(theta);
      v_theta = w * theta - w_col * (w_dot / wjj);
      v_theta(j) = 0.0;
      const double theta_jj = 1.0 / s22 + theta.dot(v_theta);
      for (Eigen::Index r = 0; r < n; ++r) {
        const double value = r == j ? theta_jj : theta(r);
        change = std::max(change, std::abs(value - k(r, j)));
        k(r, j) = value;
        k(j, r) = value;
      }

      // W11 <- V + w12 w12^T / s22 with w12 = -s22 V theta; w22 = s22.
      const Vector w12 = -s22 * v_theta;
      for (Eigen::Index c = 0; c < n; ++c) {
        if (c == j) continue;
        for (Eigen::Index r = 0; r < n; ++r) {
          if (r != j) w(r, c) += -w_col(r) * w_col(c) / wjj + w12(r) * w12(c) / s22;
        }
      }
      for (Eigen::Index r = 0; r < n; ++r) {
        if (r == j) continue;
        w(r, j) = w12(r);
        w(j, r) = w12(r);
      }
      w(j, j) = s22;
    }
    state.last_change = change;
    if (options.track_objective) {
      Eigen::LLT<Matrix> factor;
      state.trace.push_back(-negative_objective(s, k, p, factor));
    }
    if (change < options.tol) {
      state.converged = true;
      break;
    }
  }
  state.precision = std::move(k);
  return state;
}

}  // namespace

PrecisionEstimate glasso(const Matrix& covariance, const Matrix& penalty,
                         const GlassoOptions& options) {
  const auto n = covariance.rows();
  if (covariance.cols() != n) throw StructuralError("covariance matrix is not square");
  if (!is_symmetric(covariance)) throw StructuralError("covariance matrix is not symmetric");
  check_penalty(penalty, n);
  if (!(options.tol > 0.0) || options.max_iter < 1) {
    throw ParameterError("glasso needs tol > 0 and max_iter >= 1");
  }
  for (Eigen::Index j = 0; j < n; ++j) {
    if (!(covariance(j, j) > 0.0)) {
      throw NumericalError("covariance has a nonpositive diagonal entry");
    }
  }
  {
    Matrix jittered = covariance;
    jittered.diagonal().array() += kCovarianceJitter;
    if (Eigen::LLT<Matrix>(jittered).info() != Eigen::Success) {
      throw NumericalError(
          "covariance is not positive semidefinite (Cholesky of S + 1e-8 I failed)");
    }
  }

  const Matrix p = effective_penalty(penalty, options.penalize_diagonal);
  Matrix start = Matrix::Zero(n, n);
  for (Eigen::Index j = 0; j < n; ++j) start(j, j) = 1.0 / (covariance(j, j) + p(j, j));

  SolverState state = options.solver == GlassoSolver::kNewton
                          ? solve_newton(covariance, p, std::move(start), options)
                          : solve_block_coordinate(covariance, p, std::move(start), options);
  if (!state.converged) {
    std::ostringstream msg;
    msg << "graphical lasso did not converge in " << options.max_iter
        << " iterations (last max change " << state.last_change << ")";
    throw ConvergenceError(msg.str(), state.precision, state.last_change, options.max_iter);
  }

  PrecisionEstimate out;
  out.nu = penalty.maxCoeff();
  out.penalty = penalty;
  out.precision = std::move(state.precision);
  out.sweeps = state.iterations;
  out.last_change = state.last_change;
  out.objective_trace = std::move(state.trace);
  out.components = support_components(out.precision);
  return out;
}

std::vector<NodeSet> support_components(const Matrix& precision) {
  const auto n = precision.rows();
  Matrix support = Matrix::Zero(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) {
      if (i != j && (std::abs(precision(i, j)) >= kSupportCutoff ||
                     std::abs(precision(j, i)) >= kSupportCutoff)) {
        support(i, j) = 1.0;
      }
    }
  }
  return connected_components(support, kMinCandidateSize);
}

PrecisionEstimate siggm_with_diffusion(const Matrix& pooled, const InfluenceGraph& g,
                                       double nu, double eta, const GlassoOptions& options) {
  auto estimate = glasso(pooled, penalty_from_influence(g, nu, eta), options);
  estimate.nu = nu;
  return estimate;
}

PrecisionEstimate siggm_with_diffusion(const std::vector<SubjectSample>& samples,
                                       const InfluenceGraph& g, double nu, double eta,
                                       const GlassoOptions& options) {
  return siggm_with_diffusion(pooled_covariance(samples), g, nu, eta, options);
}

}  // namespace neurohotnet
