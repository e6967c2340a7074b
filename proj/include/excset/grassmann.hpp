#pragma once

#include <Eigen/Dense>

#include "excset/random.hpp"

namespace excset {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// A linear subspace of R^d stored as an orthonormal frame (d x j, columns).
class Subspace {
 public:
  /// Takes ownership of an orthonormal frame; throws DimensionError if the
  /// Gram matrix deviates from the identity by more than 1e-10.
  explicit Subspace(Matrix frame);

  /// The zero subspace of R^d.
  static Subspace trivial(int ambient_dim);

  /// Orthonormalizes the columns by modified Gram-Schmidt. Throws if they are
  /// linearly dependent (residual norm below 1e-12 of the input norm).
  static Subspace span_of(const Matrix& vectors);

  /// The (d-1)-dimensional complement of a nonzero vector.
  static Subspace orthogonal_complement(const Vector& u);

  int ambient_dim() const { return static_cast<int>(frame_.rows()); }
  int dim() const { return static_cast<int>(frame_.cols()); }
  const Matrix& frame() const { return frame_; }

  /// Orthogonal projector onto the subspace.
  Matrix projector() const { return frame_ * frame_.transpose(); }

 private:
  Matrix frame_;
};

/// A pair (u, U) with |u| = 1 and u orthogonal to U.
class Flag {
 public:
  Flag(Vector direction, Subspace subspace);

  const Vector& direction() const { return u_; }
  const Subspace& subspace() const { return U_; }
  int ambient_dim() const { return static_cast<int>(u_.size()); }

 private:
  Vector u_;
  Subspace U_;
};

/// L[U] = det(<L u_i, u_j>) over an orthonormal frame of U; 1 for dim U = 0.
double lambda_bracket(const Matrix& L, const Subspace& U);

/// The same functional via the eigen-decomposition of L:
/// sum over |I| = dim U of lambda_I <U, B_I>^2.
double eigen_expansion(const Matrix& L, const Subspace& U);

/// <U, V>^2 = det(<u_i, v_j>)^2 for subspaces of equal dimension.
double subspace_pairing(const Subspace& U, const Subspace& V);

/// Squared norm of v_1 ^ ... ^ v_k: the Gram determinant of the columns.
double wedge_norm_sq(const Matrix& vectors);

/// Uniform point on S^{d-1}.
Vector sample_unit_vector(Rng& rng, int d);

/// Uniform j-dimensional subspace of the orthogonal complement of unit u.
Subspace sample_subspace_orthogonal(Rng& rng, const Vector& u, int j);

/// Draw from the rotation-invariant probability measure on the flag space
/// F(d, j): u uniform on the sphere, U uniform in the Grassmannian of u-perp.
Flag sample_flag(Rng& rng, int d, int j);

/// Haar-random d x d rotation (determinant +1).
Matrix sample_rotation(Rng& rng, int d);

}  // namespace excset
