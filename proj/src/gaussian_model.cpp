#include "excset/gaussian_model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "excset/errors.hpp"

namespace excset {

CovarianceModel CovarianceModel::isotropic(int dim, double variance, double length_scale) {
  if (dim < 1) throw ConfigError("isotropic model: dimension must be positive");
  if (!(length_scale > 0.0) || !std::isfinite(length_scale)) {
    throw ConfigError("isotropic model: length scale must be positive");
  }
  return CovarianceModel(CovarianceFamily::SquaredExponentialIsotropic, variance,
                         Matrix::Identity(dim, dim) / (length_scale * length_scale));
}

CovarianceModel CovarianceModel::anisotropic(double variance, Matrix shape) {
  return CovarianceModel(CovarianceFamily::SquaredExponentialAnisotropic, variance, std::move(shape));
}

CovarianceModel::CovarianceModel(CovarianceFamily family, double variance, Matrix shape)
    : family_(family), variance_(variance), shape_(std::move(shape)) {
  if (!(variance_ > 0.0) || !std::isfinite(variance_)) throw ConfigError("covariance model: variance must be positive");
  if (shape_.rows() < 1 || shape_.rows() != shape_.cols()) {
    throw ConfigError("covariance model: shape matrix must be square");
  }
  if (!shape_.allFinite()) throw ConfigError("covariance model: shape matrix has non-finite entries");
  const double asym = (shape_ - shape_.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-12 * std::max(1.0, shape_.cwiseAbs().maxCoeff())) {
    throw ConfigError("covariance model: shape matrix is not symmetric");
  }
  shape_ = 0.5 * (shape_ + shape_.transpose());
  Eigen::SelfAdjointEigenSolver<Matrix> eig(shape_);
  const double min_eig = eig.eigenvalues().minCoeff();
  if (!(min_eig > 1e-10 * shape_.trace())) {
    throw ConfigError("covariance model: shape matrix is not positive definite (min eigenvalue " +
                      std::to_string(min_eig) + ")");
  }
  shape_inverse_ = shape_.inverse();
  shape_det_ = shape_.determinant();
  lambda_ = variance_ * shape_;
  correlation_length_ = 1.0 / std::sqrt(min_eig);
}

double CovarianceModel::sigma() const { return std::sqrt(variance_); }

double CovarianceModel::length_scale() const {
  if (!is_isotropic()) throw ConfigError("length_scale: model is anisotropic");
  return correlation_length_;
}

double CovarianceModel::covariance(std::span<const double> x) const {
  const Eigen::Index d = shape_.rows();
  if (static_cast<Eigen::Index>(x.size()) != d) throw DimensionError("covariance: point has wrong dimension");
  double q = 0.0;
  for (Eigen::Index i = 0; i < d; ++i) {
    double row = 0.0;
    for (Eigen::Index j = 0; j < d; ++j) row += shape_(i, j) * x[j];
    q += x[i] * row;
  }
  return variance_ * std::exp(-0.5 * q);
}

double CovarianceModel::spectral_density(const Vector& w) const {
  if (w.size() != shape_.rows()) throw DimensionError("spectral_density: frequency has wrong dimension");
  const double d = static_cast<double>(shape_.rows());
  const double q = w.dot(shape_inverse_ * w);
  return variance_ * std::pow(2.0 * std::numbers::pi, -0.5 * d) / std::sqrt(shape_det_) * std::exp(-0.5 * q);
}

}  // namespace excset
