#pragma once

#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace neurohotnet {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed matrices: asymmetric, wrong shape, negative or non-finite weights.
class StructuralError : public Error {
 public:
  using Error::Error;
};

/// A tuning parameter outside its admissible range.
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// Bad input data (missing signals, correlations outside [-1, 1], ...).
class InputError : public Error {
 public:
  using Error::Error;
};

/// A factorization or solve failed.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// An iterative method ran out of iterations. Carries the last iterate.
class ConvergenceError : public NumericalError {
 public:
  ConvergenceError(const std::string& what, Eigen::MatrixXd last_iterate,
                   double residual, int iterations)
      : NumericalError(what),
        last_iterate_(std::move(last_iterate)),
        residual_(residual),
        iterations_(iterations) {}

  const Eigen::MatrixXd& last_iterate() const noexcept { return last_iterate_; }
  double residual() const noexcept { return residual_; }
  int iterations() const noexcept { return iterations_; }

 private:
  Eigen::MatrixXd last_iterate_;
  double residual_;
  int iterations_;
};

/// Configuration or command-line problems detected by the front-end.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace neurohotnet
