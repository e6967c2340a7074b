#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "excset/errors.hpp"
#include "excset/excursion_densities.hpp"
#include "excset/special_functions.hpp"
#include "test_support.hpp"

using namespace excset;
using namespace excset::testing;

namespace {

CovarianceModel diag_model(std::initializer_list<double> diag, double variance = 1.0) {
  Vector v(static_cast<Eigen::Index>(diag.size()));
  Eigen::Index i = 0;
  for (double x : diag) v[i++] = x;
  return CovarianceModel::anisotropic(variance, Matrix(v.asDiagonal()));
}

}  // namespace

TEST_CASE("isotropic flag density is constant and equals the closed form") {
  Rng rng(31);
  for (int d = 2; d <= 4; ++d)
    for (int k = 0; k < d; ++k)
      for (double alpha : {-1.0, 0.0, 0.7, 2.0}) {
        const ExcursionSpec spec(CovarianceModel::isotropic(d, 1.7, 0.6), alpha);
        const double closed = curvature_density_iso(spec, k);
        for (int rep = 0; rep < 10; ++rep) {
          CHECK(close_rel(flag_density(spec, k, sample_flag(rng, d, d - 1 - k)), closed, 1e-12, 1e-15));
        }
      }
}

TEST_CASE("isotropic closed form: known values") {
  // d = 2, sigma = ell = 1, alpha = 0: q_1 = 1/4, q_0 = 0
  const ExcursionSpec spec(CovarianceModel::isotropic(2, 1.0, 1.0), 0.0);
  CHECK(curvature_density_iso(spec, 1) == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(std::abs(curvature_density_iso(spec, 0)) < 1e-16);
  // d = 2, alpha = 1: q_0 = exp(-1/2) / (2 pi)^{3/2}
  const ExcursionSpec one(CovarianceModel::isotropic(2, 1.0, 1.0), 1.0);
  CHECK(curvature_density_iso(one, 0) == doctest::Approx(std::exp(-0.5) / std::pow(2 * M_PI, 1.5)).epsilon(1e-14));
  CHECK(volume_density(one) == doctest::Approx(gaussian_tail(1.0)));
  CHECK_THROWS_AS(curvature_density_iso(ExcursionSpec(diag_model({1.0, 2.0}), 0.0), 0), ConfigError);
}

TEST_CASE("averaged_eigen_products") {
  Vector lam(3);
  lam << 1.0, 2.0, 3.0;
  const auto k0 = averaged_eigen_products(lam, 0);
  CHECK(k0[0] == doctest::Approx(6.0));
  CHECK(k0[1] == doctest::Approx(3.0));
  CHECK(k0[2] == doctest::Approx(2.0));
  const auto k1 = averaged_eigen_products(lam, 1);
  CHECK(k1[0] == doctest::Approx(2.5));
  CHECK(k1[1] == doctest::Approx(2.0));
  CHECK(k1[2] == doctest::Approx(1.5));
  for (double v : averaged_eigen_products(lam, 2)) CHECK(v == 1.0);
  CHECK_THROWS_AS(averaged_eigen_products(lam, 3), DimensionError);
}

TEST_CASE("anisotropic quadrature reproduces the isotropic closed form") {
  for (int d = 2; d <= 3; ++d)
    for (int k = 0; k < d; ++k) {
      const ExcursionSpec spec(CovarianceModel::isotropic(d, 1.0, 0.8), 1.3);
      const auto est = curvature_density_aniso(spec, k);
      CHECK(close_rel(est.value, curvature_density_iso(spec, k), 1e-10, 1e-16));
    }
}

TEST_CASE("anisotropic quadrature: reference values") {
  // adaptive mpmath quadrature at 30 digits
  const ExcursionSpec spec0(diag_model({1.0, 4.0}), 0.0);
  const auto a = curvature_density_aniso(spec0, 1);
  CHECK(a.method == DensityEstimate::Method::Trapezoid);
  CHECK(close_rel(a.value, 0.385491106297510009, 1e-9));
  const ExcursionSpec spec1(diag_model({1.0, 4.0}), 0.5);
  CHECK(close_rel(curvature_density_aniso(spec1, 0).value, 0.0560329370458016192, 1e-9));
}

TEST_CASE("level parity and sign") {
  Rng rng(32);
  for (int d = 2; d <= 4; ++d) {
    const auto model = CovarianceModel::anisotropic(1.4, random_spd(rng, d));
    for (int k = 0; k < d; ++k)
      for (double alpha : {0.3, 1.1, 2.6}) {
        const Flag f = sample_flag(rng, d, d - 1 - k);
        const double plus = flag_density(ExcursionSpec(model, alpha), k, f);
        const double minus = flag_density(ExcursionSpec(model, -alpha), k, f);
        const double parity = (d - 1 - k) % 2 == 0 ? 1.0 : -1.0;
        CHECK(close_rel(minus, parity * plus, 1e-12, 1e-300));
        const double h = hermite(d - 1 - k, alpha / model.sigma());
        CHECK((plus > 0) == (h > 0));
        CHECK((plus < 0) == (h < 0));
      }
  }
}

TEST_CASE("flag density is rotation equivariant") {
  Rng rng(33);
  for (int d = 2; d <= 4; ++d)
    for (int k = 0; k < d; ++k) {
      const Matrix A = random_spd(rng, d);
      const Matrix R = sample_rotation(rng, d);
      const ExcursionSpec spec(CovarianceModel::anisotropic(1.0, A), 0.4);
      const ExcursionSpec rotated(CovarianceModel::anisotropic(1.0, R * A * R.transpose()), 0.4);
      const Flag f = sample_flag(rng, d, d - 1 - k);
      const Flag g(R * f.direction(), d - 1 - k == 0 ? Subspace::trivial(d) : Subspace(R * f.subspace().frame()));
      CHECK(close_rel(flag_density(spec, k, f), flag_density(rotated, k, g), 1e-10));
      CHECK(close_rel(curvature_density_aniso(spec, k).value, curvature_density_aniso(rotated, k).value,
                      d <= 3 ? 1e-9 : 0.05));
    }
}

TEST_CASE("Monte-Carlo flag mass agrees with the sphere quadrature") {
  Rng rng(34);
  for (int d = 2; d <= 3; ++d) {
    Matrix A = random_spd(rng, d);
    const ExcursionSpec spec(CovarianceModel::anisotropic(0.8, A), 0.9);
    for (int k = 0; k < d; ++k) {
      Rng mc(3400 + 10 * d + k);
      const McEstimate m = mc_total_flag_mass(spec, k, 100000, mc);
      const double q = curvature_density_aniso(spec, k).value;
      // q_0 is constant over flags, hence the relative floor
      CHECK(std::abs(m.estimate - q) < 5.0 * m.std_error + 1e-12 * std::abs(q));
    }
  }
}

TEST_CASE("d >= 4 falls back to Monte Carlo on the sphere") {
  const ExcursionSpec spec(CovarianceModel::isotropic(4, 1.0, 1.0), 0.5);
  SphereQuadratureConfig quad;
  quad.mc_samples = 20000;
  for (int k = 0; k < 4; ++k) {
    const auto est = curvature_density_aniso(spec, k, quad);
    CHECK(est.method == DensityEstimate::Method::MonteCarlo);
    // the isotropic integrand is constant, so the MC estimate is exact
    CHECK(close_rel(est.value, curvature_density_iso(spec, k), 1e-12, 1e-16));
  }
  const ExcursionSpec aniso(diag_model({1.0, 2.0, 3.0, 4.0}), 0.5);
  const auto a = curvature_density_aniso(aniso, 1, quad);
  const auto b = curvature_density_aniso(aniso, 1, quad);
  CHECK(a.value == b.value);
  CHECK(a.error > 0.0);
}

TEST_CASE("quadrature that cannot converge reports the achieved tolerance") {
  const ExcursionSpec spec(diag_model({1.0, 1e4}), 0.2);
  SphereQuadratureConfig quad;
  quad.initial_nodes = 8;
  quad.max_nodes = 32;
  try {
    (void)curvature_density_aniso(spec, 1, quad);
    FAIL("expected ConvergenceError");
  } catch (const ConvergenceError& e) {
    CHECK(e.achieved_tolerance() > quad.rel_tol);
  }
}

TEST_CASE("argument checks") {
  const ExcursionSpec spec(CovarianceModel::isotropic(3, 1.0, 1.0), 0.0);
  Rng rng(35);
  CHECK_THROWS_AS(flag_density(spec, 3, sample_flag(rng, 3, 0)), DimensionError);
  CHECK_THROWS_AS(flag_density(spec, 1, sample_flag(rng, 3, 0)), DimensionError);
  CHECK_THROWS_AS(flag_density(spec, 1, sample_flag(rng, 2, 1)), DimensionError);
  CHECK_THROWS_AS(mc_total_flag_mass(spec, 1, 50, rng), DomainError);
  CHECK_THROWS_AS(ExcursionSpec(CovarianceModel::isotropic(2, 1.0, 1.0), NAN), ConfigError);
}
