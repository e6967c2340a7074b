#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <vector>

#include "excset/gaussian_model.hpp"

namespace excset {

/// Regular grid of n^d points with spacing h; point (i_1..i_d) sits at h * i.
struct GridSpec {
  int dim = 2;
  int points_per_axis = 8;
  double spacing = 1.0;

  std::size_t size() const;
  double extent() const { return points_per_axis * spacing; }
  /// Throws ConfigError unless dim is 2 or 3, n >= 8 and h > 0.
  void validate() const;
};

/// One realization on the grid, row-major (last axis fastest).
struct FieldSample {
  std::vector<double> values;
  GridSpec grid;
  std::uint64_t seed = 0;
  int embedding_points = 0;     // torus points per axis
  double clipped_mass = 0.0;    // sum |negative eigenvalues| / sum positive eigenvalues
};

/// Circulant embedding of a covariance model on a torus of m >= 2n points
/// per axis. The square-root spectrum is computed once at construction and
/// shared by every sample; sample() is const and thread-safe.
class CirculantEmbedding {
 public:
  /// Tries m = 2n, then doubles up to 8n while a negative eigenvalue is
  /// below -1e-9 sigma^2. Throws EmbeddingNotPD if 8n is not enough.
  CirculantEmbedding(const CovarianceModel& model, const GridSpec& grid);

  const GridSpec& grid() const { return grid_; }
  int torus_points() const { return torus_; }
  double clipped_mass() const { return clipped_mass_; }
  double min_eigenvalue() const { return min_eigenvalue_; }

  FieldSample sample(std::uint64_t seed) const;

 private:
  GridSpec grid_;
  int torus_ = 0;
  std::vector<double> sqrt_eigen_;  // sqrt(max(lambda, 0) / N), torus order
  double clipped_mass_ = 0.0;
  double min_eigenvalue_ = 0.0;
};

/// Convenience wrapper: one sample, embedding built on the spot.
FieldSample simulate(const CovarianceModel& model, const GridSpec& grid, std::uint64_t seed);

/// Writes `<stem>.bin` (float64, row-major, native endianness) and `<stem>.hdr`
/// (key = value text: d, n, h, seed, model parameters).
void write_raw_sample(const FieldSample& sample, const CovarianceModel& model, const std::filesystem::path& stem);

}  // namespace excset
