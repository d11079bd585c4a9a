#pragma once

#include <cstdint>
#include <vector>

#include "neurohotnet/graph.hpp"
#include "neurohotnet/inference.hpp"

namespace testsupport {

using neurohotnet::Matrix;
using neurohotnet::NodeSet;
using neurohotnet::SubjectSample;

/// Influence matrix computed the long way: normalize, build L + gamma I,
/// invert by Gauss-Jordan elimination with partial pivoting, transpose and
/// average the two row-normalized directions.
Matrix diffusion_oracle(const Matrix& weights, double gamma);

/// Nearest correlation matrix from the dual problem: gradient ascent on the
/// diagonal shift y of max_y sum(y) - |(A + diag y)_+|^2 / 2.
Matrix nearest_correlation_oracle(const Matrix& a, double tol = 1e-13, int max_iter = 100000);

/// K of the 2x2 graphical lasso with unit variances, off-diagonal covariance
/// s12 and off-diagonal penalty lambda (diagonal unpenalized).
Matrix glasso_2x2(double s12, double lambda);

/// Mean Fisher z over subjects and pairs by plain loops.
double statistic_oracle(const std::vector<SubjectSample>& samples, const NodeSet& component);

/// Largest |S - W| violation of the stationarity conditions of the penalized
/// likelihood, W = K^{-1} by a full inverse (diagonal unpenalized).
double kkt_residual(const Matrix& s, const Matrix& k, const Matrix& penalty);

/// Random symmetric nonnegative weights with the given edge density.
Matrix random_weights(std::size_t n, double density, std::uint64_t seed);

/// Subjects whose signals have correlation rho inside `clique` and 0
/// elsewhere (unit variances).
std::vector<SubjectSample> planted_subjects(std::size_t regions, const std::vector<std::size_t>& clique,
                                            double rho, std::size_t subjects, std::size_t frames,
                                            std::uint64_t seed);

/// Subjects with independent standard normal signals.
std::vector<SubjectSample> null_subjects(std::size_t regions, std::size_t subjects, std::size_t frames,
                                         std::uint64_t seed);

/// Weights of the ten-node toy graph shipped in data/toy (1-based node k is index k-1).
Matrix toy_weights();

}  // namespace testsupport
