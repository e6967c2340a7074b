#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "excset/field_simulator.hpp"
#include "excset/grassmann.hpp"

namespace excset {

/// Boolean mask on a box of grid points, row-major (last axis fastest).
class BinaryGrid {
 public:
  BinaryGrid(std::vector<int> shape, std::vector<std::uint8_t> mask, double spacing = 1.0);

  int dim() const { return static_cast<int>(shape_.size()); }
  const std::vector<int>& shape() const { return shape_; }
  double spacing() const { return spacing_; }
  std::size_t size() const { return mask_.size(); }
  const std::vector<std::uint8_t>& mask() const { return mask_; }
  bool at(std::size_t flat) const { return mask_[flat] != 0; }

 private:
  std::vector<int> shape_;
  std::vector<std::uint8_t> mask_;
  double spacing_;
};

/// Euler characteristic of the closed cubical complex whose cells are the
/// grid cells (of every dimension) with all vertices set.
long euler_char(const BinaryGrid& grid);

/// Independent 2-D check: components minus holes, by union-find on the
/// complex and on its complement.
long euler_char_2d_oracle(const BinaryGrid& grid);

/// Thresholds the sub-box of `window_points` per axis at the grid origin:
/// a vertex is set iff value >= alpha and, if given, `inside(x)` holds at
/// its physical position x = h * index.
BinaryGrid threshold_window(const FieldSample& sample, double alpha, int window_points,
                            const std::function<bool(const Vector&)>& inside = {});

}  // namespace excset
