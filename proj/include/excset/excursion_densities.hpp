#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "excset/gaussian_model.hpp"
#include "excset/grassmann.hpp"
#include "excset/random.hpp"

namespace excset {

/// Excursion set {x : xi(x) >= alpha} of a centred Gaussian field.
class ExcursionSpec {
 public:
  ExcursionSpec(CovarianceModel model, double alpha);

  const CovarianceModel& model() const { return model_; }
  double alpha() const { return alpha_; }
  int dim() const { return model_.dim(); }
  double sigma() const { return model_.sigma(); }
  /// alpha / sigma
  double level() const { return alpha_ / model_.sigma(); }

 private:
  CovarianceModel model_;
  double alpha_;
};

/// Density q_k(u, U) of the specific flag measure of order k with respect to
/// the rotation-invariant probability measure on F(d, d-1-k). The flag's
/// subspace must have dimension d-1-k.
double flag_density(const ExcursionSpec& spec, int k, const Flag& flag);

/// Closed-form curvature density of order k for an isotropic model.
double curvature_density_iso(const ExcursionSpec& spec, int k);

/// Averaged eigenvalue products lambda_(j) = binom(d-1,k)^{-1} sum over
/// |I| = d-1-k, j not in I, of prod_{i in I} lambda_i.
std::vector<double> averaged_eigen_products(const Vector& eigenvalues, int k);

struct SphereQuadratureConfig {
  int initial_nodes = 16;       // circle nodes (d=2) or polar nodes (d=3)
  int max_nodes = 4096;
  double rel_tol = 1e-10;       // relative change between successive doublings
  std::size_t mc_samples = 200000;  // d >= 4 fallback
  std::uint64_t mc_seed = 0x5eed;
};

struct DensityEstimate {
  enum class Method { Trapezoid, ProductGaussLegendre, MonteCarlo };
  double value = 0.0;
  double error = 0.0;  // relative change at the last doubling, or the MC standard error
  int nodes = 0;
  Method method = Method::Trapezoid;
};

/// Curvature density of order k for any valid model, by integrating
/// sum_j lambda_(j) <u, b_j>^2 / (u^T Lambda^{-1} u)^{k/2+1} over the sphere.
/// Throws ConvergenceError (with the achieved tolerance) if max_nodes is hit.
DensityEstimate curvature_density_aniso(const ExcursionSpec& spec, int k,
                                        const SphereQuadratureConfig& quad = {});

/// Volume fraction P[xi(0) >= alpha].
double volume_density(const ExcursionSpec& spec);

struct McEstimate {
  double estimate = 0.0;
  double std_error = 0.0;
};

/// Monte-Carlo estimate of the total flag mass, i.e. the mean of q_k under
/// the rotation-invariant flag measure. Requires n >= 100.
McEstimate mc_total_flag_mass(const ExcursionSpec& spec, int k, std::size_t n, Rng& rng);

}  // namespace excset
