#pragma once

#include <span>
#include <vector>

#include "excset/excursion_densities.hpp"
#include "excset/grassmann.hpp"

namespace excset {

/// W = [0, v_1] + ... + [0, v_m] (Minkowski sum), a zonotope with a vertex at
/// the origin. Generators must be nonzero, span R^d and lie in an open
/// half-space; at most 16 of them.
class Zonotope {
 public:
  static constexpr int kMaxGenerators = 16;

  explicit Zonotope(Matrix generators);  // d x m, one generator per column
  explicit Zonotope(const std::vector<Vector>& generators);

  /// Axis-parallel cube [0, side]^d.
  static Zonotope cube(int dim, double side);

  int dim() const { return static_cast<int>(generators_.rows()); }
  int size() const { return static_cast<int>(generators_.cols()); }
  const Matrix& generators() const { return generators_; }
  Vector generator(int i) const { return generators_.col(i); }
  double max_generator_norm() const { return max_norm_; }

  /// Corners of the axis-aligned bounding box.
  Vector lower_corner() const;
  Vector upper_corner() const;

  /// Point membership via the facet inequalities |<c, x - center>| <= h(c).
  bool contains(const Vector& x, double tol = 1e-12) const;

 private:
  Matrix generators_;
  double max_norm_ = 0.0;
  Matrix facet_normals_;  // unit normals, one per column
  Vector facet_offsets_;
  Vector center_;
};

struct ZonotopeFace {
  std::vector<int> subset;  // generators spanning the face, ascending
  int dim = 0;
  double volume = 0.0;      // dim-dimensional volume
  Subspace span;            // linear hull of the face
};

/// All dim-j faces of Z that contain the origin, 1 <= j <= d.
std::vector<ZonotopeFace> faces_at_origin(const Zonotope& Z, int j);

/// One representative per parallel class of dim-j faces, 1 <= j <= d. Every
/// span-closed generator subset of rank j names such a class; all faces in
/// a class are translates of the sum of its generators.
std::vector<ZonotopeFace> face_classes(const Zonotope& Z, int j);

/// Volume of sum_{i in S} [0, v_i] inside its own linear span.
double face_volume(std::span<const int> subset, const Zonotope& Z);

/// Closed-form mean Euler characteristic of the excursion set inside Z. The
/// face sum runs over parallel classes; for parallelotopes these are exactly
/// the faces at the origin.
double expected_euler_zonotope(const ExcursionSpec& spec, const Zonotope& Z);

/// Kinematic-formula evaluation for isotropic models from the window's
/// total curvatures C_0..C_d (intrinsic volumes for convex windows).
double expected_euler_pkf_iso(const ExcursionSpec& spec, std::span<const double> intrinsic_volumes);

/// Intrinsic volumes V_0..V_d of a box: elementary symmetric polynomials of the sides.
std::vector<double> intrinsic_volumes_box(std::span<const double> side_lengths);

/// Intrinsic volumes V_0..V_d of a ball of radius r in R^d.
std::vector<double> intrinsic_volumes_ball(int d, double r);

}  // namespace excset
