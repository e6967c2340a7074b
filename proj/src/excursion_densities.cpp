#include "excset/excursion_densities.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "excset/combinatorics.hpp"
#include "excset/errors.hpp"
#include "excset/quadrature.hpp"
#include "excset/special_functions.hpp"

namespace excset {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void check_order(const ExcursionSpec& spec, int k, const char* who) {
  if (k < 0 || k > spec.dim() - 1) {
    throw DimensionError(std::string(who) + ": order k must lie in 0..d-1, got " + std::to_string(k));
  }
}

// Flag-independent factor of q_k:
// beta_{d,k}^{-1} (2 pi)^{(k-d-1)/2} sigma^{k-d} exp(-alpha^2 / 2 sigma^2) H_{d-1-k}(alpha/sigma) / sqrt(det Lambda)
double level_factor(const ExcursionSpec& spec, int k) {
  const int d = spec.dim();
  const double t = spec.level();
  return std::pow(kTwoPi, 0.5 * (k - d - 1)) / beta_const(d, k) * std::pow(spec.sigma(), k - d) *
         std::exp(-0.5 * t * t) * hermite(d - 1 - k, t) / std::sqrt(spec.model().lambda_matrix().determinant());
}

// Integrand over the sphere for the curvature density of order k.
struct SphereIntegrand {
  Matrix lambda_inv;
  Matrix eigenvectors;
  std::vector<double> weights;  // lambda_(j)
  double exponent;              // k/2 + 1

  double operator()(const Vector& u) const {
    const Vector c = eigenvectors.transpose() * u;
    double num = 0.0;
    for (Eigen::Index j = 0; j < c.size(); ++j) num += weights[j] * c[j] * c[j];
    return num / std::pow(u.dot(lambda_inv * u), exponent);
  }
};

DensityEstimate sphere_mean(const SphereIntegrand& g, int d, const SphereQuadratureConfig& quad) {
  DensityEstimate out;
  if (d == 1) {
    Vector u(1);
    u[0] = 1.0;
    const double a = g(u);
    u[0] = -1.0;
    out.value = 0.5 * (a + g(u));
    out.nodes = 2;
    return out;
  }
  if (d >= 4) {
    Rng rng(quad.mc_seed);
    double mean = 0.0, m2 = 0.0;
    std::size_t n = 0;
    for (; n < quad.mc_samples; ++n) {
      const double v = g(sample_unit_vector(rng, d));
      const double delta = v - mean;
      mean += delta / static_cast<double>(n + 1);
      m2 += delta * (v - mean);
    }
    out.value = mean;
    out.error = n > 1 ? std::sqrt(m2 / static_cast<double>(n - 1) / static_cast<double>(n)) : 0.0;
    out.nodes = static_cast<int>(n);
    out.method = DensityEstimate::Method::MonteCarlo;
    return out;
  }

  auto evaluate = [&](int n) {
    if (d == 2) {
      double s = 0.0;
      Vector u(2);
      for (int i = 0; i < n; ++i) {
        const double phi = kTwoPi * i / n;
        u << std::cos(phi), std::sin(phi);
        s += g(u);
      }
      return s / n;
    }
    // d == 3: Gauss-Legendre in cos(theta), trapezoid with 2n nodes in phi
    const GaussLegendreRule rule = gauss_legendre(n);
    const int nphi = 2 * n;
    double s = 0.0;
    Vector u(3);
    for (int i = 0; i < n; ++i) {
      const double z = rule.nodes[i];
      const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
      double ring = 0.0;
      for (int j = 0; j < nphi; ++j) {
        const double phi = kTwoPi * j / nphi;
        u << r * std::cos(phi), r * std::sin(phi), z;
        ring += g(u);
      }
      s += rule.weights[i] * ring / nphi;
    }
    return 0.5 * s;
  };

  out.method = d == 2 ? DensityEstimate::Method::Trapezoid : DensityEstimate::Method::ProductGaussLegendre;
  int n = std::max(4, quad.initial_nodes);
  double prev = evaluate(n);
  while (true) {
    const int next = 2 * n;
    if (next > quad.max_nodes) {
      throw ConvergenceError("spherical quadrature did not converge within " + std::to_string(quad.max_nodes) +
                                 " nodes (achieved relative change " + std::to_string(out.error) + ")",
                             out.error);
    }
    const double cur = evaluate(next);
    const double scale = std::max(std::abs(cur), 1e-300);
    out.error = std::abs(cur - prev) / scale;
    out.value = cur;
    out.nodes = next;
    if (out.error <= quad.rel_tol || cur == prev) return out;
    prev = cur;
    n = next;
  }
}

}  // namespace

ExcursionSpec::ExcursionSpec(CovarianceModel model, double alpha) : model_(std::move(model)), alpha_(alpha) {
  if (!std::isfinite(alpha_)) throw ConfigError("excursion level alpha must be finite");
}

double flag_density(const ExcursionSpec& spec, int k, const Flag& flag) {
  check_order(spec, k, "flag_density");
  const int d = spec.dim();
  if (flag.ambient_dim() != d) throw DimensionError("flag_density: flag lives in the wrong dimension");
  if (flag.subspace().dim() != d - 1 - k) {
    throw DimensionError("flag_density: subspace dimension must be d-1-k = " + std::to_string(d - 1 - k));
  }
  const Matrix& lambda = spec.model().lambda_matrix();
  const Vector& u = flag.direction();
  const double quad_form = u.dot(lambda.ldlt().solve(u));
  return level_factor(spec, k) * std::pow(quad_form, -0.5 * k - 1.0) * lambda_bracket(lambda, flag.subspace());
}

double curvature_density_iso(const ExcursionSpec& spec, int k) {
  check_order(spec, k, "curvature_density_iso");
  if (!spec.model().is_isotropic()) throw ConfigError("curvature_density_iso: model is not isotropic");
  const int d = spec.dim();
  const double lambda = spec.model().lambda_matrix()(0, 0);
  const double t = spec.level();
  return std::pow(kTwoPi, 0.5 * (k - d - 1)) / beta_const(d, k) * std::pow(spec.sigma(), k - d) *
         std::pow(lambda, 0.5 * (d - k)) * std::exp(-0.5 * t * t) * hermite(d - 1 - k, t);
}

std::vector<double> averaged_eigen_products(const Vector& eigenvalues, int k) {
  const int d = static_cast<int>(eigenvalues.size());
  if (k < 0 || k > d - 1) throw DimensionError("averaged_eigen_products: order k must lie in 0..d-1");
  const int kstar = d - 1 - k;
  const double norm = binomial(d - 1, k);
  std::vector<double> out(d, 0.0);
  for (int j = 0; j < d; ++j) {
    std::vector<int> others;
    for (int i = 0; i < d; ++i)
      if (i != j) others.push_back(i);
    double sum = 0.0;
    for_each_combination(d - 1, kstar, [&](const std::vector<int>& I) {
      double p = 1.0;
      for (int i : I) p *= eigenvalues[others[i]];
      sum += p;
    });
    out[j] = sum / norm;
  }
  return out;
}

DensityEstimate curvature_density_aniso(const ExcursionSpec& spec, int k, const SphereQuadratureConfig& quad) {
  check_order(spec, k, "curvature_density_aniso");
  const Matrix& lambda = spec.model().lambda_matrix();
  Eigen::SelfAdjointEigenSolver<Matrix> eig(lambda);
  SphereIntegrand g{lambda.inverse(), eig.eigenvectors(), averaged_eigen_products(eig.eigenvalues(), k),
                    0.5 * k + 1.0};
  DensityEstimate est = sphere_mean(g, spec.dim(), quad);
  const double factor = level_factor(spec, k);
  est.value *= factor;
  if (est.method == DensityEstimate::Method::MonteCarlo) est.error *= std::abs(factor);
  return est;
}

double volume_density(const ExcursionSpec& spec) { return gaussian_tail(spec.level()); }

McEstimate mc_total_flag_mass(const ExcursionSpec& spec, int k, std::size_t n, Rng& rng) {
  check_order(spec, k, "mc_total_flag_mass");
  if (n < 100) throw DomainError("mc_total_flag_mass: need at least 100 samples");
  const int d = spec.dim();
  double mean = 0.0, m2 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double v = flag_density(spec, k, sample_flag(rng, d, d - 1 - k));
    const double delta = v - mean;
    mean += delta / static_cast<double>(i + 1);
    m2 += delta * (v - mean);
  }
  return {mean, std::sqrt(m2 / static_cast<double>(n - 1) / static_cast<double>(n))};
}

}  // namespace excset
