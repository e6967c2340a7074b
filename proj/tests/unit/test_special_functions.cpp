#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "excset/errors.hpp"
#include "excset/special_functions.hpp"
#include "test_support.hpp"

using namespace excset;
using excset::testing::close_rel;

namespace {

constexpr double kPi = std::numbers::pi;

// Eq. (beta) form, valid for k <= d-1.
double beta_binomial_form(int d, int k) {
  return 1.0 / binomial(d - 1, k) * std::tgamma(0.5 * d) / (std::tgamma(0.5 * k + 1.0) * std::tgamma(0.5 * (d - k)));
}

// Composite Simpson on [t, t + 40] of the normal density.
double tail_by_simpson(double t) {
  const int n = 200000;
  const double a = t, b = t + 40.0, h = (b - a) / n;
  auto f = [](double s) { return std::exp(-0.5 * s * s) / std::sqrt(2.0 * kPi); };
  double s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
  return s * h / 3.0;
}

// Composite Simpson for F_{k,l} with a fine fixed grid.
double f_kl_by_simpson(double theta, int d, int k, int l) {
  const int n = 20000;
  const double s = std::sin(theta);
  auto g = [&](double t) {
    return std::pow(std::sin((1 - t) * theta) / s, d - 1 - k) * std::pow(std::sin(t * theta) / s, d - 1 - l);
  };
  double acc = g(0) + g(1);
  for (int i = 1; i < n; ++i) acc += (i % 2 ? 4.0 : 2.0) * g(static_cast<double>(i) / n);
  return theta / s * acc / (3.0 * n) / sphere_surface(2 * d - k - l - 1);
}

}  // namespace

TEST_CASE("hermite: low orders") {
  CHECK(hermite(0, 3.7) == 1.0);
  CHECK(hermite(1, 2.5) == 2.5);
  CHECK(hermite(3, 2.0) == doctest::Approx(2.0).epsilon(1e-15));  // 8 - 6
  CHECK(hermite(2, 0.0) == -1.0);
  CHECK(hermite(4, 1.0) == doctest::Approx(1.0 - 6.0 + 3.0));
  CHECK_THROWS_AS(hermite(-1, 0.0), DomainError);
}

TEST_CASE("hermite: three-term recurrence") {
  for (int n = 1; n < 12; ++n) {
    for (double t = -5.0; t <= 5.0; t += 0.25) {
      const double lhs = hermite(n + 1, t);
      const double rhs = t * hermite(n, t) - n * hermite(n - 1, t);
      CHECK(close_rel(lhs, rhs, 1e-9, 1e-9));
    }
  }
}

TEST_CASE("hermite: parity and the switch to the recurrence above n = 20") {
  for (int n = 1; n <= 26; n += 2) CHECK(hermite(n, 0.0) == doctest::Approx(0.0));
  for (double t : {-2.3, 0.4, 1.7, 3.1}) {
    long double p = 1.0L, c = t;
    for (int m = 1; m < 25; ++m) {
      const long double nxt = t * c - m * p;
      p = c;
      c = nxt;
    }
    CHECK(close_rel(hermite(25, t), static_cast<double>(c), 1e-9, 1e-6));
    CHECK(close_rel(hermite(21, t), t * hermite(20, t) - 20 * hermite(19, t), 1e-10, 1e-6));
  }
}

TEST_CASE("gaussian_tail") {
  CHECK(gaussian_tail(0.0) == 0.5);
  CHECK(std::abs(gaussian_tail(1.0) - 0.158655253931457051) < 1e-12);  // mpmath quadrature, 30 digits
  CHECK(std::abs(gaussian_tail(1.0) - tail_by_simpson(1.0)) < 1e-9);
  CHECK(std::abs(gaussian_tail(-0.5) - tail_by_simpson(-0.5)) < 1e-9);
  double prev = 1.0;
  for (double t = -8.0; t <= 8.0; t += 0.125) {
    const double v = gaussian_tail(t);
    CHECK(v > 0.0);
    CHECK(v < 1.0);
    CHECK(v < prev);
    prev = v;
    CHECK(std::abs(v + gaussian_tail(-t) - 1.0) < 1e-12);
  }
}

TEST_CASE("sphere_surface and ball volumes") {
  CHECK(sphere_surface(0) == doctest::Approx(2.0));
  CHECK(sphere_surface(1) == doctest::Approx(2.0 * kPi));
  CHECK(sphere_surface(2) == doctest::Approx(4.0 * kPi));
  CHECK(sphere_surface(3) == doctest::Approx(2.0 * kPi * kPi));
  for (int n = 1; n < 10; ++n) CHECK(sphere_surface(n - 1) == doctest::Approx(n * unit_ball_volume(n)));
}

TEST_CASE("beta_const") {
  for (int d = 1; d <= 8; ++d) {
    CHECK(beta_const(d, 0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(beta_const(d, d) == doctest::Approx(1.0).epsilon(1e-14));
    for (int k = 0; k <= d; ++k) CHECK(close_rel(beta_const(d, k), beta_const(d, d - k), 1e-14));
    for (int k = 0; k <= d - 1; ++k) CHECK(close_rel(beta_const(d, k), beta_binomial_form(d, k), 1e-12));
  }
  CHECK(beta_const(2, 1) == doctest::Approx(2.0 / kPi).epsilon(1e-15));
  CHECK_THROWS_AS(beta_const(2, 3), DimensionError);
}

TEST_CASE("gamma_const") {
  CHECK(gamma_const(2, 1) == doctest::Approx(0.5));
  CHECK(gamma_const(3, 2) == doctest::Approx(0.5));
  for (int d = 1; d <= 8; ++d) {
    for (int k = 0; k <= d - 1; ++k) {
      const double lhs = gamma_const(d, k) * std::tgamma(0.5 * k + 1.0);
      const double rhs = std::pow(kPi, 0.5 * k) / (beta_const(d, k) * sphere_surface(d - 1));
      CHECK(close_rel(lhs, rhs, 1e-12));
    }
  }
}

TEST_CASE("f_kl: endpoints") {
  for (int d = 2; d <= 5; ++d)
    for (int k = 1; k < d; ++k)
      for (int l = d - k; l < d; ++l) {
        CHECK(f_kl(kPi, d, k, l) == 0.0);
        const double limit = std::tgamma(d - k) * std::tgamma(d - l) / std::tgamma(2.0 * d - k - l) /
                             sphere_surface(2 * d - k - l - 1);
        CHECK(std::abs(f_kl(0.0, d, k, l) - limit) < 1e-8);
        // the quadrature branch just above the switch agrees with the limit
        CHECK(std::abs(f_kl(2e-4, d, k, l) - limit) < 1e-6);
      }
  CHECK(std::abs(f_kl(kPi / 2, 2, 1, 1) - 0.25) < 1e-10);
}

TEST_CASE("f_kl: interior values") {
  // mpmath quadrature at 30 digits
  CHECK(close_rel(f_kl(1.0, 3, 1, 2), 0.05166354113915092523, 1e-9));
  CHECK(close_rel(f_kl(2.5, 3, 2, 2), 0.66483855873603375890, 1e-9));
  CHECK(close_rel(f_kl(0.7, 4, 2, 3), 0.04509041778312837022, 1e-9));
  CHECK(close_rel(f_kl(3.0, 3, 1, 2), 7.95178061588166399041, 1e-9));
  CHECK(close_rel(f_kl(1.2, 2, 1, 1), 0.20491193404413740566, 1e-9));
  for (double theta : {0.3, 1.1, 2.0, 2.9}) CHECK(close_rel(f_kl(theta, 4, 1, 3), f_kl_by_simpson(theta, 4, 1, 3), 1e-9));
}

TEST_CASE("f_kl: nonnegative and stable under refinement") {
  for (int d = 2; d <= 4; ++d)
    for (int k = 1; k < d; ++k)
      for (int l = d - k; l < d; ++l)
        for (double theta = 0.0; theta < kPi; theta += 0.05) {
          const double coarse = f_kl(theta, d, k, l);
          CHECK(coarse >= 0.0);
          const double fine = f_kl(theta, d, k, l, 1e-14);
          CHECK(close_rel(coarse, fine, 1e-8, 1e-12));
        }
}

TEST_CASE("f_kl: argument checks") {
  CHECK_THROWS_AS(f_kl(-0.1, 2, 1, 1), DomainError);
  CHECK_THROWS_AS(f_kl(kPi + 1e-9, 2, 1, 1), DomainError);
  CHECK_THROWS_AS(f_kl(1.0, 3, 1, 1), DimensionError);  // k + l < d
}
