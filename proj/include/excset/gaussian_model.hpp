#pragma once

#include <span>

#include "excset/grassmann.hpp"

namespace excset {

enum class CovarianceFamily {
  SquaredExponentialIsotropic,    // sigma^2 exp(-|x|^2 / (2 ell^2))
  SquaredExponentialAnisotropic,  // sigma^2 exp(-x^T A x / 2)
};

/// Law of a centred stationary Gaussian field through its covariance.
/// Immutable; validated at construction.
class CovarianceModel {
 public:
  static CovarianceModel isotropic(int dim, double variance, double length_scale);
  static CovarianceModel anisotropic(double variance, Matrix shape);

  CovarianceFamily family() const { return family_; }
  bool is_isotropic() const { return family_ == CovarianceFamily::SquaredExponentialIsotropic; }
  int dim() const { return static_cast<int>(shape_.rows()); }
  double variance() const { return variance_; }
  double sigma() const;

  /// Isotropic length scale; throws ConfigError for anisotropic models.
  double length_scale() const;

  /// Shape matrix A with C(x) = sigma^2 exp(-x^T A x / 2); I / ell^2 if isotropic.
  const Matrix& shape() const { return shape_; }

  /// Largest correlation length, 1 / sqrt(min eigenvalue of A).
  double correlation_length() const { return correlation_length_; }

  double covariance(std::span<const double> x) const;
  double covariance(const Vector& x) const { return covariance(std::span<const double>(x.data(), x.size())); }

  /// Gradient covariance Lambda = E grad xi(0) grad xi(0)^T = -Hess C(0) = sigma^2 A.
  const Matrix& lambda_matrix() const { return lambda_; }

  /// Spectral density rho with C(x) = int rho(w) exp(i w.x) dw.
  double spectral_density(const Vector& w) const;

 private:
  CovarianceModel(CovarianceFamily family, double variance, Matrix shape);

  CovarianceFamily family_;
  double variance_;
  Matrix shape_;
  Matrix shape_inverse_;
  double shape_det_;
  Matrix lambda_;
  double correlation_length_;
};

}  // namespace excset
