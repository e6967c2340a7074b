#include "excset/zonotope.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <set>
#include <string>

#include "excset/combinatorics.hpp"
#include "excset/errors.hpp"
#include "excset/special_functions.hpp"
#include "simplex.hpp"

namespace excset {

namespace {

constexpr double kSpanTol = 1e-10;
constexpr double kFeasibleTol = 1e-9;

// Orthonormal basis of the column span, with rank decided relative to the
// largest column norm.
Matrix span_basis(const Matrix& cols) {
  if (cols.cols() == 0) return Matrix(cols.rows(), 0);
  Eigen::ColPivHouseholderQR<Matrix> qr(cols);
  qr.setThreshold(kSpanTol);
  const Eigen::Index rank = qr.rank();
  Matrix q = qr.householderQ() * Matrix::Identity(cols.rows(), rank);
  return q;
}

Matrix complement_basis(const Matrix& q) {
  const Eigen::Index d = q.rows();
  if (q.cols() == 0) return Matrix::Identity(d, d);
  Eigen::HouseholderQR<Matrix> qr(q);
  Matrix full = qr.householderQ() * Matrix::Identity(d, d);
  return full.rightCols(d - q.cols());
}

Matrix select_columns(const Matrix& m, std::span<const int> idx) {
  Matrix out(m.rows(), static_cast<Eigen::Index>(idx.size()));
  for (std::size_t c = 0; c < idx.size(); ++c) out.col(static_cast<Eigen::Index>(c)) = m.col(idx[c]);
  return out;
}

}  // namespace

Zonotope::Zonotope(const std::vector<Vector>& generators) : Zonotope([&] {
        if (generators.empty()) throw ConfigError("zonotope: no generators");
        Matrix m(generators.front().size(), static_cast<Eigen::Index>(generators.size()));
        for (std::size_t i = 0; i < generators.size(); ++i) {
          if (generators[i].size() != m.rows()) throw ConfigError("zonotope: generators differ in dimension");
          m.col(static_cast<Eigen::Index>(i)) = generators[i];
        }
        return m;
      }()) {}

Zonotope::Zonotope(Matrix generators) : generators_(std::move(generators)) {
  const Eigen::Index d = generators_.rows();
  const Eigen::Index m = generators_.cols();
  if (d < 1 || m < 1) throw ConfigError("zonotope: no generators");
  if (m > kMaxGenerators) {
    throw ConfigError("zonotope: at most " + std::to_string(kMaxGenerators) + " generators supported");
  }
  if (!generators_.allFinite()) throw ConfigError("zonotope: non-finite generator");
  for (Eigen::Index i = 0; i < m; ++i) {
    const double n = generators_.col(i).norm();
    if (!(n > 0.0)) throw ConfigError("zonotope: zero generator");
    max_norm_ = std::max(max_norm_, n);
  }
  if (m < d || span_basis(generators_ / max_norm_).cols() < d) {
    throw ConfigError("zonotope: generators do not span R^d");
  }
  if (!(detail::separation_margin((generators_ / max_norm_).transpose()) > kFeasibleTol)) {
    throw ConfigError("zonotope: the origin is not a vertex; generators must lie in an open half-space "
                      "(flip the signs of some generators to translate the window)");
  }

  center_ = 0.5 * generators_.rowwise().sum();
  std::vector<Vector> normals;
  if (d == 1) {
    normals.push_back(Vector::Ones(1));
  } else {
    for_each_combination(static_cast<int>(m), static_cast<int>(d - 1), [&](const std::vector<int>& idx) {
      const Matrix sub = select_columns(generators_ / max_norm_, idx);
      const Matrix q = span_basis(sub);
      if (q.cols() != d - 1) return;
      Vector c = complement_basis(q).col(0);
      for (const Vector& prev : normals)
        if (std::abs(std::abs(prev.dot(c)) - 1.0) < 1e-12) return;
      normals.push_back(c);
    });
  }
  facet_normals_.resize(d, static_cast<Eigen::Index>(normals.size()));
  facet_offsets_.resize(static_cast<Eigen::Index>(normals.size()));
  for (std::size_t f = 0; f < normals.size(); ++f) {
    const auto col = static_cast<Eigen::Index>(f);
    facet_normals_.col(col) = normals[f];
    facet_offsets_[col] = 0.5 * (normals[f].transpose() * generators_).cwiseAbs().sum();
  }
}

Zonotope Zonotope::cube(int dim, double side) {
  if (dim < 1) throw ConfigError("cube: dimension must be positive");
  if (!(side > 0.0)) throw ConfigError("cube: side must be positive");
  return Zonotope(Matrix(side * Matrix::Identity(dim, dim)));
}

Vector Zonotope::lower_corner() const { return generators_.cwiseMin(0.0).rowwise().sum(); }
Vector Zonotope::upper_corner() const { return generators_.cwiseMax(0.0).rowwise().sum(); }

bool Zonotope::contains(const Vector& x, double tol) const {
  if (x.size() != generators_.rows()) throw DimensionError("Zonotope::contains: point has wrong dimension");
  const Vector offsets = (facet_normals_.transpose() * (x - center_)).cwiseAbs();
  return ((offsets - facet_offsets_).array() <= tol * std::max(1.0, max_norm_)).all();
}

double face_volume(std::span<const int> subset, const Zonotope& Z) {
  if (subset.empty()) throw DimensionError("face_volume: empty generator set");
  for (int i : subset)
    if (i < 0 || i >= Z.size()) throw DimensionError("face_volume: generator index out of range");
  const Matrix vs = select_columns(Z.generators(), subset);
  const Matrix q = span_basis(vs / Z.max_generator_norm());
  const Matrix coords = q.transpose() * vs;  // j x |S|
  const int j = static_cast<int>(q.cols());
  double volume = 0.0;
  Matrix block(j, j);
  for_each_combination(static_cast<int>(subset.size()), j, [&](const std::vector<int>& B) {
    for (int c = 0; c < j; ++c) block.col(c) = coords.col(B[c]);
    volume += std::abs(block.determinant());
  });
  return volume;
}

namespace {

// Span-closed generator subsets of rank j, optionally restricted to those
// naming a face through the origin.
std::vector<ZonotopeFace> rank_j_flats(const Zonotope& Z, int j, bool through_origin) {
  const int m = Z.size();
  const Matrix scaled = Z.generators() / Z.max_generator_norm();

  std::vector<ZonotopeFace> faces;
  std::set<std::uint32_t> seen;
  for_each_combination(m, j, [&](const std::vector<int>& B) {
    const Matrix q = span_basis(select_columns(scaled, B));
    if (q.cols() != j) return;
    std::vector<int> subset, outside;
    std::uint32_t mask = 0;
    for (int i = 0; i < m; ++i) {
      const Vector v = scaled.col(i);
      if ((v - q * (q.transpose() * v)).norm() <= kSpanTol * std::max(1.0, v.norm())) {
        subset.push_back(i);
        mask |= 1u << i;
      } else {
        outside.push_back(i);
      }
    }
    if (!seen.insert(mask).second) return;
    if (through_origin && !outside.empty()) {
      const Matrix perp = complement_basis(q);
      const Matrix rows = (perp.transpose() * select_columns(scaled, outside)).transpose();
      if (!(detail::separation_margin(rows) > kFeasibleTol)) return;
    }
    faces.push_back(ZonotopeFace{subset, j, face_volume(subset, Z), Subspace::span_of(q)});
  });
  return faces;
}

}  // namespace

std::vector<ZonotopeFace> faces_at_origin(const Zonotope& Z, int j) {
  if (j < 1 || j > Z.dim()) throw DimensionError("faces_at_origin: need 1 <= j <= d");
  return rank_j_flats(Z, j, true);
}

std::vector<ZonotopeFace> face_classes(const Zonotope& Z, int j) {
  if (j < 1 || j > Z.dim()) throw DimensionError("face_classes: need 1 <= j <= d");
  return rank_j_flats(Z, j, false);
}

double expected_euler_zonotope(const ExcursionSpec& spec, const Zonotope& Z) {
  const int d = spec.dim();
  if (Z.dim() != d) throw DimensionError("expected_euler_zonotope: window and model dimensions differ");
  const Matrix& lambda = spec.model().lambda_matrix();
  const double t = spec.level();
  const double gauss = std::exp(-0.5 * t * t);
  double total = gaussian_tail(t);
  for (int k = 0; k < d; ++k) {
    const double h = hermite(d - 1 - k, t);
    if (h == 0.0) continue;
    double face_sum = 0.0;
    for (const ZonotopeFace& F : face_classes(Z, d - k)) {
      face_sum += F.volume * std::sqrt(lambda_bracket(lambda, F.span));
    }
    total += std::pow(2.0 * std::numbers::pi, -0.5 * (d - k + 1)) * std::pow(spec.sigma(), k - d) * gauss * h *
             face_sum;
  }
  return total;
}

double expected_euler_pkf_iso(const ExcursionSpec& spec, std::span<const double> intrinsic_volumes) {
  const int d = spec.dim();
  if (static_cast<int>(intrinsic_volumes.size()) != d + 1) {
    throw DimensionError("expected_euler_pkf_iso: need d+1 curvature totals C_0..C_d");
  }
  if (!spec.model().is_isotropic()) throw ConfigError("expected_euler_pkf_iso: model is not isotropic");
  double total = volume_density(spec) * intrinsic_volumes[0];
  for (int k = 0; k < d; ++k) {
    total += beta_const(d, k) * curvature_density_iso(spec, k) * intrinsic_volumes[d - k];
  }
  return total;
}

std::vector<double> intrinsic_volumes_box(std::span<const double> side_lengths) {
  if (side_lengths.empty()) throw ConfigError("intrinsic_volumes_box: no sides");
  std::vector<double> e{1.0};
  for (double s : side_lengths) {
    if (!(s > 0.0) || !std::isfinite(s)) throw ConfigError("intrinsic_volumes_box: side lengths must be positive");
    e.push_back(0.0);
    for (std::size_t j = e.size() - 1; j > 0; --j) e[j] += s * e[j - 1];
  }
  return e;
}

std::vector<double> intrinsic_volumes_ball(int d, double r) {
  if (d < 1) throw ConfigError("intrinsic_volumes_ball: dimension must be positive");
  if (!(r > 0.0) || !std::isfinite(r)) throw ConfigError("intrinsic_volumes_ball: radius must be positive");
  std::vector<double> v(static_cast<std::size_t>(d) + 1);
  for (int j = 0; j <= d; ++j) {
    v[j] = binomial(d, j) * unit_ball_volume(d) / unit_ball_volume(d - j) * std::pow(r, j);
  }
  return v;
}

}  // namespace excset
