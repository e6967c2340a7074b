#include "excset/field_simulator.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <fstream>
#include <iomanip>
#include <mutex>
#include <random>
#include <span>
#include <string>

#include "excset/errors.hpp"
#include "excset/random.hpp"

namespace excset {

namespace {

// The FFTW planner is not reentrant.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

class FftBuffer {
 public:
  FftBuffer(int dim, int points, int sign) : size_(1) {
    for (int i = 0; i < dim; ++i) size_ *= static_cast<std::size_t>(points);
    data_ = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * size_));
    if (data_ == nullptr) throw std::bad_alloc();
    std::vector<int> n(dim, points);
    std::lock_guard lock(planner_mutex());
    plan_ = fftw_plan_dft(dim, n.data(), data_, data_, sign, FFTW_ESTIMATE);
  }
  FftBuffer(const FftBuffer&) = delete;
  FftBuffer& operator=(const FftBuffer&) = delete;
  ~FftBuffer() {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(plan_);
    fftw_free(data_);
  }

  void execute() { fftw_execute(plan_); }
  std::size_t size() const { return size_; }
  fftw_complex& operator[](std::size_t i) { return data_[i]; }

 private:
  std::size_t size_;
  fftw_complex* data_ = nullptr;
  fftw_plan plan_ = nullptr;
};

}  // namespace

std::size_t GridSpec::size() const {
  std::size_t n = 1;
  for (int i = 0; i < dim; ++i) n *= static_cast<std::size_t>(points_per_axis);
  return n;
}

void GridSpec::validate() const {
  if (dim != 2 && dim != 3) throw ConfigError("grid: only d = 2 and d = 3 are supported");
  if (points_per_axis < 8) throw ConfigError("grid: need at least 8 points per axis");
  if (!(spacing > 0.0) || !std::isfinite(spacing)) throw ConfigError("grid: spacing must be positive");
}

CirculantEmbedding::CirculantEmbedding(const CovarianceModel& model, const GridSpec& grid) : grid_(grid) {
  grid_.validate();
  if (model.dim() != grid_.dim) throw DimensionError("circulant embedding: model and grid dimensions differ");
  const int d = grid_.dim;
  const double threshold = -1e-9 * model.variance();

  for (int m = 2 * grid_.points_per_axis; m <= 8 * grid_.points_per_axis; m *= 2) {
    FftBuffer buf(d, m, FFTW_FORWARD);
    const std::size_t total = buf.size();
    std::vector<int> idx(d, 0);
    std::vector<double> x(d);
    for (std::size_t p = 0; p < total; ++p) {
      for (int a = 0; a < d; ++a) {
        const int i = idx[a];
        x[a] = grid_.spacing * (2 * i <= m ? i : i - m);
      }
      buf[p][0] = model.covariance(std::span<const double>(x));
      buf[p][1] = 0.0;
      for (int a = d - 1; a >= 0; --a) {
        if (++idx[a] < m) break;
        idx[a] = 0;
      }
    }
    buf.execute();

    double neg = 0.0, pos = 0.0, min_eig = 0.0;
    for (std::size_t p = 0; p < total; ++p) {
      const double e = buf[p][0];
      if (e < 0.0) neg -= e;
      else pos += e;
      min_eig = std::min(min_eig, e);
    }
    min_eigenvalue_ = min_eig;
    if (min_eig < threshold) continue;

    torus_ = m;
    clipped_mass_ = pos > 0.0 ? neg / pos : 0.0;
    sqrt_eigen_.resize(total);
    for (std::size_t p = 0; p < total; ++p) {
      sqrt_eigen_[p] = std::sqrt(std::max(buf[p][0], 0.0) / static_cast<double>(total));
    }
    return;
  }
  throw EmbeddingNotPD("circulant embedding is not positive definite even at 8n points per axis (min eigenvalue " +
                           std::to_string(min_eigenvalue_) +
                           "); increase the grid extent n*h relative to the correlation length",
                       min_eigenvalue_);
}

FieldSample CirculantEmbedding::sample(std::uint64_t seed) const {
  const int d = grid_.dim;
  const int m = torus_;
  FftBuffer buf(d, m, FFTW_BACKWARD);
  Rng rng(seed);
  std::normal_distribution<double> normal;
  for (std::size_t p = 0; p < buf.size(); ++p) {
    const double re = normal(rng);
    const double im = normal(rng);
    buf[p][0] = sqrt_eigen_[p] * re;
    buf[p][1] = sqrt_eigen_[p] * im;
  }
  buf.execute();

  FieldSample out;
  out.grid = grid_;
  out.seed = seed;
  out.embedding_points = m;
  out.clipped_mass = clipped_mass_;
  out.values.resize(grid_.size());
  const int n = grid_.points_per_axis;
  std::vector<int> idx(d, 0);
  for (std::size_t q = 0; q < out.values.size(); ++q) {
    std::size_t p = 0;
    for (int a = 0; a < d; ++a) p = p * static_cast<std::size_t>(m) + static_cast<std::size_t>(idx[a]);
    out.values[q] = buf[p][0];
    for (int a = d - 1; a >= 0; --a) {
      if (++idx[a] < n) break;
      idx[a] = 0;
    }
  }
  return out;
}

FieldSample simulate(const CovarianceModel& model, const GridSpec& grid, std::uint64_t seed) {
  return CirculantEmbedding(model, grid).sample(seed);
}

void write_raw_sample(const FieldSample& sample, const CovarianceModel& model, const std::filesystem::path& stem) {
  std::filesystem::path bin = stem;
  bin += ".bin";
  std::filesystem::path hdr = stem;
  hdr += ".hdr";
  {
    std::ofstream out(bin, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + bin.string());
    out.write(reinterpret_cast<const char*>(sample.values.data()),
              static_cast<std::streamsize>(sample.values.size() * sizeof(double)));
  }
  std::ofstream out(hdr);
  if (!out) throw std::runtime_error("cannot open " + hdr.string());
  out << std::setprecision(17);
  out << "format = float64 row-major\n";
  out << "d = " << sample.grid.dim << "\n";
  out << "n = " << sample.grid.points_per_axis << "\n";
  out << "h = " << sample.grid.spacing << "\n";
  out << "seed = " << sample.seed << "\n";
  out << "embedding_points = " << sample.embedding_points << "\n";
  out << "clipped_mass = " << sample.clipped_mass << "\n";
  out << "model.family = " << (model.is_isotropic() ? "squared_exponential_isotropic" : "squared_exponential_anisotropic")
      << "\n";
  out << "model.sigma2 = " << model.variance() << "\n";
  if (model.is_isotropic()) {
    out << "model.ell = " << model.length_scale() << "\n";
  } else {
    out << "model.A =";
    for (Eigen::Index i = 0; i < model.shape().rows(); ++i)
      for (Eigen::Index j = 0; j < model.shape().cols(); ++j) out << ' ' << model.shape()(i, j);
    out << "\n";
  }
}

}  // namespace excset
