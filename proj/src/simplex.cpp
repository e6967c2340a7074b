#include "simplex.hpp"

#include <limits>
#include <stdexcept>
#include <vector>

namespace excset::detail {

namespace {

constexpr double kPivotTol = 1e-12;

// max c^T x  s.t.  A x <= b, x >= 0, with b >= 0 so the slack basis is feasible.
double maximize(const Matrix& A, const Vector& b, const Vector& c) {
  const Eigen::Index m = A.rows();
  const Eigen::Index n = A.cols();
  const Eigen::Index rhs = n + m;
  Matrix T = Matrix::Zero(m + 1, n + m + 1);
  T.topLeftCorner(m, n) = A;
  T.block(0, n, m, m).setIdentity();
  T.col(rhs).head(m) = b;
  T.row(m).head(n) = -c.transpose();
  std::vector<Eigen::Index> basis(static_cast<std::size_t>(m));
  for (Eigen::Index i = 0; i < m; ++i) basis[i] = n + i;

  for (int iter = 0; iter < 10000; ++iter) {
    Eigen::Index enter = -1;
    for (Eigen::Index j = 0; j < n + m; ++j) {
      if (T(m, j) < -kPivotTol) {
        enter = j;
        break;
      }
    }
    if (enter < 0) return T(m, rhs);

    Eigen::Index leave = -1;
    double best = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < m; ++i) {
      if (T(i, enter) > kPivotTol) {
        const double ratio = T(i, rhs) / T(i, enter);
        if (ratio < best - kPivotTol || (ratio <= best + kPivotTol && leave >= 0 && basis[i] < basis[leave])) {
          best = std::min(best, ratio);
          leave = i;
        }
      }
    }
    if (leave < 0) throw std::runtime_error("separation_margin: unbounded program");

    T.row(leave) /= T(leave, enter);
    for (Eigen::Index i = 0; i <= m; ++i) {
      if (i != leave && T(i, enter) != 0.0) T.row(i) -= T(i, enter) * T.row(leave);
    }
    basis[leave] = enter;
  }
  throw std::runtime_error("separation_margin: simplex iteration limit reached");
}

}  // namespace

double separation_margin(const Matrix& rows) {
  const Eigen::Index m = rows.rows();
  const Eigen::Index r = rows.cols();
  if (m == 0) return 1.0;
  // variables (p, q, eps) with y = p - q, 0 <= p, q <= 1, 0 <= eps <= 1
  const Eigen::Index nvar = 2 * r + 1;
  const Eigen::Index ncon = m + 2 * r + 1;
  Matrix A = Matrix::Zero(ncon, nvar);
  Vector b = Vector::Zero(ncon);
  A.topLeftCorner(m, r) = rows;
  A.block(0, r, m, r) = -rows;
  A.col(2 * r).head(m).setOnes();
  for (Eigen::Index i = 0; i < 2 * r + 1; ++i) {
    A(m + i, i) = 1.0;
    b[m + i] = 1.0;
  }
  Vector c = Vector::Zero(nvar);
  c[2 * r] = 1.0;
  return maximize(A, b, c);
}

}  // namespace excset::detail
