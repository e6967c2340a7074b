#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "excset/errors.hpp"
#include "excset/gaussian_model.hpp"
#include "test_support.hpp"

using namespace excset;
using namespace excset::testing;

namespace {

// Central second differences of C at the origin.
Matrix fd_hessian(const CovarianceModel& m, double h) {
  const int d = m.dim();
  Matrix H(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      Vector e = Vector::Zero(d), f = Vector::Zero(d);
      e[i] = h;
      f[j] = h;
      H(i, j) = (m.covariance(e + f) - m.covariance(e - f) - m.covariance(f - e) + m.covariance(-e - f)) / (4 * h * h);
    }
  return H;
}

// Tensor-product midpoint rule on [-R, R]^2 of rho(w) cos(w.x).
double fourier_2d(const CovarianceModel& m, const Vector& x, double R, int n) {
  const double dw = 2 * R / n;
  double s = 0.0;
  Vector w(2);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      w << -R + (i + 0.5) * dw, -R + (j + 0.5) * dw;
      s += m.spectral_density(w) * std::cos(w.dot(x));
    }
  return s * dw * dw;
}

}  // namespace

TEST_CASE("isotropic model") {
  const auto m = CovarianceModel::isotropic(2, 2.0, 0.5);
  CHECK(m.is_isotropic());
  CHECK(m.dim() == 2);
  CHECK(m.sigma() == doctest::Approx(std::sqrt(2.0)));
  CHECK(m.length_scale() == doctest::Approx(0.5));
  CHECK(m.correlation_length() == doctest::Approx(0.5));
  CHECK((m.lambda_matrix() - 8.0 * Matrix::Identity(2, 2)).norm() < 1e-14);
  Vector x(2);
  x << 0.5, 0.0;
  CHECK(m.covariance(x) == doctest::Approx(2.0 * std::exp(-0.5)));
  CHECK(m.covariance(Vector::Zero(2)) == 2.0);
}

TEST_CASE("anisotropic model") {
  Matrix A(2, 2);
  A << 1.0, 0.0, 0.0, 4.0;
  const auto m = CovarianceModel::anisotropic(1.0, A);
  CHECK_FALSE(m.is_isotropic());
  CHECK(m.correlation_length() == doctest::Approx(1.0));
  CHECK_THROWS_AS(m.length_scale(), ConfigError);
  CHECK((m.lambda_matrix() - A).norm() < 1e-14);
}

TEST_CASE("validation rejects bad parameters") {
  CHECK_THROWS_AS(CovarianceModel::isotropic(2, 0.0, 1.0), ConfigError);
  CHECK_THROWS_AS(CovarianceModel::isotropic(2, -1.0, 1.0), ConfigError);
  CHECK_THROWS_AS(CovarianceModel::isotropic(2, 1.0, 0.0), ConfigError);
  CHECK_THROWS_AS(CovarianceModel::isotropic(0, 1.0, 1.0), ConfigError);
  Matrix A(2, 2);
  A << 1.0, 2.0, 2.0, 1.0;  // indefinite
  CHECK_THROWS_AS(CovarianceModel::anisotropic(1.0, A), ConfigError);
  A << 1.0, 0.1, 0.0, 1.0;
  CHECK_THROWS_AS(CovarianceModel::anisotropic(1.0, A), ConfigError);
  A << 1.0, NAN, NAN, 1.0;
  CHECK_THROWS_AS(CovarianceModel::anisotropic(1.0, A), ConfigError);
  CHECK_THROWS_AS(CovarianceModel::anisotropic(1.0, Matrix(2, 3)), ConfigError);
  const auto m = CovarianceModel::isotropic(3, 1.0, 1.0);
  CHECK_THROWS_AS(m.covariance(Vector::Zero(2)), DimensionError);
  CHECK_THROWS_AS(m.spectral_density(Vector::Zero(2)), DimensionError);
}

TEST_CASE("negative Hessian of C at the origin equals Lambda") {
  Rng rng(21);
  for (int d = 1; d <= 4; ++d)
    for (int rep = 0; rep < 5; ++rep) {
      const auto m = CovarianceModel::anisotropic(0.5 + rep, random_spd(rng, d));
      const Matrix H = fd_hessian(m, 1e-3 / std::sqrt(m.shape().norm()));
      CHECK((H + m.lambda_matrix()).norm() < 1e-5 * m.lambda_matrix().norm());
    }
}

TEST_CASE("covariance is even and maximal at the origin") {
  Rng rng(22);
  const auto m = CovarianceModel::anisotropic(1.3, random_spd(rng, 3));
  for (int rep = 0; rep < 50; ++rep) {
    const Vector x = Vector::Random(3);
    CHECK(m.covariance(x) == doctest::Approx(m.covariance(Vector(-x))));
    CHECK(m.covariance(x) <= m.variance());
  }
}

TEST_CASE("spectral density is the Fourier transform of C") {
  Matrix A(2, 2);
  A << 1.5, 0.4, 0.4, 0.8;
  const auto m = CovarianceModel::anisotropic(2.0, A);
  CHECK(close_rel(fourier_2d(m, Vector::Zero(2), 12.0, 400), 2.0, 1e-8));
  Vector x(2);
  x << 0.7, -0.3;
  CHECK(close_rel(fourier_2d(m, x, 12.0, 400), m.covariance(x), 1e-8));
  const auto iso = CovarianceModel::isotropic(2, 1.0, 0.5);
  CHECK(close_rel(fourier_2d(iso, Vector::Zero(2), 20.0, 400), 1.0, 1e-8));
}
