#include "excset/grassmann.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "excset/combinatorics.hpp"
#include "excset/errors.hpp"

namespace excset {

namespace {

constexpr double kFrameTol = 1e-10;
constexpr double kRankTol = 1e-12;

Vector gaussian_vector(Rng& rng, int d) {
  std::normal_distribution<double> normal;
  Vector v(d);
  for (int i = 0; i < d; ++i) v[i] = normal(rng);
  return v;
}

}  // namespace

Subspace::Subspace(Matrix frame) : frame_(std::move(frame)) {
  if (frame_.cols() > frame_.rows()) {
    throw DimensionError("Subspace: more frame vectors than ambient dimensions");
  }
  if (frame_.cols() == 0) return;
  const Matrix gram = frame_.transpose() * frame_;
  const double dev = (gram - Matrix::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff();
  if (dev > kFrameTol) {
    throw DimensionError("Subspace: frame is not orthonormal (deviation " + std::to_string(dev) + ")");
  }
}

Subspace Subspace::trivial(int ambient_dim) { return Subspace(Matrix(ambient_dim, 0)); }

Subspace Subspace::span_of(const Matrix& vectors) {
  Matrix q = vectors;
  for (Eigen::Index i = 0; i < q.cols(); ++i) {
    const double original = q.col(i).norm();
    // two passes of modified Gram-Schmidt keep the frame orthonormal to rounding
    for (int pass = 0; pass < 2; ++pass) {
      for (Eigen::Index j = 0; j < i; ++j) q.col(i) -= q.col(j).dot(q.col(i)) * q.col(j);
    }
    const double norm = q.col(i).norm();
    if (!(norm > kRankTol * std::max(original, 1.0))) {
      throw DimensionError("Subspace::span_of: vectors are linearly dependent");
    }
    q.col(i) /= norm;
  }
  return Subspace(std::move(q));
}

Subspace Subspace::orthogonal_complement(const Vector& u) {
  const int d = static_cast<int>(u.size());
  const double n = u.norm();
  if (!(n > 0.0)) throw DimensionError("orthogonal_complement: zero vector");
  // columns 2..d of a Householder-completed basis starting with u/|u|
  Eigen::HouseholderQR<Matrix> qr(u / n);
  Matrix full = qr.householderQ() * Matrix::Identity(d, d);
  return span_of(full.rightCols(d - 1));
}

Flag::Flag(Vector direction, Subspace subspace) : u_(std::move(direction)), U_(std::move(subspace)) {
  if (U_.ambient_dim() != u_.size()) throw DimensionError("Flag: ambient dimensions differ");
  if (std::abs(u_.norm() - 1.0) > kFrameTol) throw DimensionError("Flag: direction is not a unit vector");
  if (U_.dim() > 0 && (U_.frame().transpose() * u_).cwiseAbs().maxCoeff() > kFrameTol) {
    throw DimensionError("Flag: subspace is not orthogonal to the direction");
  }
  if (U_.dim() >= u_.size()) throw DimensionError("Flag: subspace dimension must be below d");
}

double lambda_bracket(const Matrix& L, const Subspace& U) {
  if (L.rows() != L.cols() || L.rows() != U.ambient_dim()) {
    throw DimensionError("lambda_bracket: matrix and subspace dimensions differ");
  }
  if (U.dim() == 0) return 1.0;
  const Matrix& F = U.frame();
  return (F.transpose() * L * F).determinant();
}

double eigen_expansion(const Matrix& L, const Subspace& U) {
  if (L.rows() != L.cols() || L.rows() != U.ambient_dim()) {
    throw DimensionError("eigen_expansion: matrix and subspace dimensions differ");
  }
  const int d = static_cast<int>(L.rows());
  const int j = U.dim();
  if (j == 0) return 1.0;
  Eigen::SelfAdjointEigenSolver<Matrix> eig(0.5 * (L + L.transpose()));
  const Vector& lambda = eig.eigenvalues();
  // row i holds <b_i, u_1..u_j>
  const Matrix coords = eig.eigenvectors().transpose() * U.frame();
  double sum = 0.0;
  Matrix minor(j, j);
  for_each_combination(d, j, [&](const std::vector<int>& I) {
    double lambda_I = 1.0;
    for (int r = 0; r < j; ++r) {
      lambda_I *= lambda[I[r]];
      minor.row(r) = coords.row(I[r]);
    }
    const double det = minor.determinant();
    sum += lambda_I * det * det;
  });
  return sum;
}

double subspace_pairing(const Subspace& U, const Subspace& V) {
  if (U.ambient_dim() != V.ambient_dim() || U.dim() != V.dim()) {
    throw DimensionError("subspace_pairing: subspaces must have equal dimensions");
  }
  if (U.dim() == 0) return 1.0;
  const double det = (U.frame().transpose() * V.frame()).determinant();
  return det * det;
}

double wedge_norm_sq(const Matrix& vectors) {
  if (vectors.cols() == 0) return 1.0;
  return (vectors.transpose() * vectors).determinant();
}

Vector sample_unit_vector(Rng& rng, int d) {
  if (d < 1) throw DimensionError("sample_unit_vector: d must be positive");
  while (true) {
    Vector v = gaussian_vector(rng, d);
    const double n = v.norm();
    if (n > 1e-300) return v / n;
  }
}

Subspace sample_subspace_orthogonal(Rng& rng, const Vector& u, int j) {
  const int d = static_cast<int>(u.size());
  if (j < 0 || j > d - 1) throw DimensionError("sample_subspace_orthogonal: need 0 <= j <= d-1");
  if (j == 0) return Subspace::trivial(d);
  while (true) {
    Matrix g(d, j);
    for (int c = 0; c < j; ++c) {
      Vector v = gaussian_vector(rng, d);
      v -= u.dot(v) * u;
      g.col(c) = v;
    }
    // re-project after orthonormalization so the frame is exactly in u-perp
    try {
      Matrix q = Subspace::span_of(g).frame();
      for (int c = 0; c < j; ++c) q.col(c) -= u.dot(q.col(c)) * u;
      return Subspace::span_of(q);
    } catch (const DimensionError&) {
      // degenerate Gaussian draw (probability zero); resample
    }
  }
}

Flag sample_flag(Rng& rng, int d, int j) {
  if (j < 0 || j > d - 1) throw DimensionError("sample_flag: need 0 <= j <= d-1");
  Vector u = sample_unit_vector(rng, d);
  Subspace U = sample_subspace_orthogonal(rng, u, j);
  return Flag(std::move(u), std::move(U));
}

Matrix sample_rotation(Rng& rng, int d) {
  Matrix g(d, d);
  std::normal_distribution<double> normal;
  for (int c = 0; c < d; ++c)
    for (int r = 0; r < d; ++r) g(r, c) = normal(rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ() * Matrix::Identity(d, d);
  const Matrix& r = qr.matrixQR();
  for (int i = 0; i < d; ++i)
    if (r(i, i) < 0) q.col(i) = -q.col(i);
  if (q.determinant() < 0) q.col(0) = -q.col(0);
  return q;
}

}  // namespace excset
