#pragma once

#include <cmath>
#include <utility>
#include <vector>

namespace excset {

/// Gauss-Legendre rule on [-1, 1].
struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point rule; nodes by Newton iteration on P_n from Chebyshev guesses.
GaussLegendreRule gauss_legendre(int n);

namespace detail {

template <typename Panel>
std::pair<double, double> adaptive_step(Panel& panel, double lo, double hi, double whole, double tol, int depth) {
  const double mid = 0.5 * (lo + hi);
  const double left = panel(lo, mid);
  const double right = panel(mid, hi);
  const double err = std::abs(left + right - whole);
  if (err <= tol || depth <= 0) return {left + right, err};
  const auto [l, el] = adaptive_step(panel, lo, mid, left, 0.5 * tol, depth - 1);
  const auto [r, er] = adaptive_step(panel, mid, hi, right, 0.5 * tol, depth - 1);
  return {l + r, el + er};
}

}  // namespace detail

/// Adaptive bisection with a fixed 15-point Gauss-Legendre panel. A panel is
/// accepted once |whole - (left + right)| <= tol, the tolerance being split
/// between halves. Returns {integral, estimated absolute error}.
template <typename F>
std::pair<double, double> integrate_adaptive(F&& f, double a, double b, double abs_tol, int max_depth = 40) {
  static const GaussLegendreRule rule = gauss_legendre(15);
  auto panel = [&](double lo, double hi) {
    const double mid = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    double s = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) s += rule.weights[i] * f(mid + half * rule.nodes[i]);
    return s * half;
  };
  return detail::adaptive_step(panel, a, b, panel(a, b), abs_tol, max_depth);
}

}  // namespace excset
