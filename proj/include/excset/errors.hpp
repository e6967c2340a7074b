#pragma once

#include <stdexcept>
#include <string>

namespace excset {

/// Arguments whose dimensions do not fit together (ambient dimension, subspace
/// dimension, index ranges).
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Argument outside the mathematical domain of a function.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Invalid experiment configuration or model parameters.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An iterative numerical procedure stopped before reaching its tolerance.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double achieved)
      : std::runtime_error(what), achieved_(achieved) {}
  double achieved_tolerance() const noexcept { return achieved_; }

 private:
  double achieved_;
};

/// The circulant embedding of the covariance has eigenvalues that are too
/// negative to clip; the torus is too small relative to the correlation length.
class EmbeddingNotPD : public std::runtime_error {
 public:
  EmbeddingNotPD(const std::string& what, double min_eigenvalue)
      : std::runtime_error(what), min_eigenvalue_(min_eigenvalue) {}
  double min_eigenvalue() const noexcept { return min_eigenvalue_; }

 private:
  double min_eigenvalue_;
};

}  // namespace excset
