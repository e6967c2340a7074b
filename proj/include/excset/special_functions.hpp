#pragma once

namespace excset {

/// Probabilists' Hermite polynomial He_n(t) (He_0 = 1, He_1 = t, He_2 = t^2 - 1).
/// Evaluated by the explicit alternating sum for n <= 20, by the three-term
/// recurrence above that.
double hermite(int n, double t);

/// Upper standard normal tail, psi(t) = P[N(0,1) >= t].
double gaussian_tail(double t);

/// Surface measure of the unit k-sphere S^k in R^{k+1}.
double sphere_surface(int k);

/// Volume of the unit ball in R^n.
double unit_ball_volume(int n);

double binomial(int n, int k);

/// Kinematic constant Gamma((k+1)/2) Gamma((d-k+1)/2) / (Gamma((d+1)/2) Gamma(1/2)).
double beta_const(int d, int k);

/// binom(d-1, k) / O_{d-1-k}, for 0 <= k <= d-1.
double gamma_const(int d, int k);

/// Angular weight F_{k,l}(theta) of the mixed curvature measures, for
/// k + l >= d and theta in [0, pi]. The t-integral is done by adaptive
/// Gauss-Legendre bisection to `abs_tol`; below theta = 1e-4 the theta -> 0
/// limit B(d-k, d-l) / O_{2d-k-l-1} is returned, and F(pi) = 0.
double f_kl(double theta, int d, int k, int l, double abs_tol = 1e-10);

}  // namespace excset
