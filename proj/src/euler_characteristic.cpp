#include "excset/euler_characteristic.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <string>

#include "excset/errors.hpp"

namespace excset {

namespace {

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), std::size_t{0}); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<std::size_t> parent_;
};

}  // namespace

BinaryGrid::BinaryGrid(std::vector<int> shape, std::vector<std::uint8_t> mask, double spacing)
    : shape_(std::move(shape)), mask_(std::move(mask)), spacing_(spacing) {
  if (shape_.empty()) throw DimensionError("BinaryGrid: empty shape");
  std::size_t n = 1;
  for (int s : shape_) {
    if (s < 1) throw DimensionError("BinaryGrid: every axis needs at least one point");
    n *= static_cast<std::size_t>(s);
  }
  if (n != mask_.size()) throw DimensionError("BinaryGrid: mask size does not match shape");
}

long euler_char(const BinaryGrid& grid) {
  const int d = grid.dim();
  const auto& shape = grid.shape();
  std::vector<std::size_t> stride(d, 1);
  for (int a = d - 2; a >= 0; --a) stride[a] = stride[a + 1] * static_cast<std::size_t>(shape[a + 1]);

  // offsets of the 2^|S| vertices of a cell spanned by the axes in S
  const int ncells = 1 << d;
  std::vector<std::vector<std::size_t>> corner_offsets(ncells);
  for (int S = 0; S < ncells; ++S) {
    for (int sub = 0; sub < ncells; ++sub) {
      if ((sub & S) != sub) continue;
      std::size_t off = 0;
      for (int a = 0; a < d; ++a)
        if (sub & (1 << a)) off += stride[a];
      corner_offsets[S].push_back(off);
    }
  }

  long chi = 0;
  std::vector<int> idx(d, 0);
  for (std::size_t p = 0; p < grid.size(); ++p) {
    if (grid.at(p)) {
      for (int S = 0; S < ncells; ++S) {
        bool fits = true;
        for (int a = 0; a < d && fits; ++a)
          if ((S & (1 << a)) && idx[a] + 1 >= shape[a]) fits = false;
        if (!fits) continue;
        bool full = true;
        for (std::size_t off : corner_offsets[S])
          if (!grid.at(p + off)) {
            full = false;
            break;
          }
        if (full) chi += (std::popcount(static_cast<unsigned>(S)) % 2 == 0) ? 1 : -1;
      }
    }
    for (int a = d - 1; a >= 0; --a) {
      if (++idx[a] < shape[a]) break;
      idx[a] = 0;
    }
  }
  return chi;
}

long euler_char_2d_oracle(const BinaryGrid& grid) {
  if (grid.dim() != 2) throw DimensionError("euler_char_2d_oracle: grid must be two-dimensional");
  const int rows = grid.shape()[0];
  const int cols = grid.shape()[1];
  auto on = [&](int r, int c) {
    return r >= 0 && c >= 0 && r < rows && c < cols && grid.at(static_cast<std::size_t>(r) * cols + c);
  };

  // components of the complex: set vertices joined by set edges
  UnionFind fg(static_cast<std::size_t>(rows) * cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) {
      if (!on(r, c)) continue;
      if (on(r + 1, c)) fg.unite(static_cast<std::size_t>(r) * cols + c, static_cast<std::size_t>(r + 1) * cols + c);
      if (on(r, c + 1)) fg.unite(static_cast<std::size_t>(r) * cols + c, static_cast<std::size_t>(r) * cols + c + 1);
    }
  long components = 0;
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c)
      if (on(r, c) && fg.find(static_cast<std::size_t>(r) * cols + c) == static_cast<std::size_t>(r) * cols + c)
        ++components;

  // complement on a padded lattice: unset vertices and unfilled open squares
  // are nodes; squares touch their unset corners and neighbouring unfilled
  // squares across edges that are not in the complex
  const int vr = rows + 2, vc = cols + 2;  // padded vertices, index (r+1, c+1)
  const int sr = rows + 1, sc = cols + 1;  // squares with lower-left vertex (r, c), r,c in -1..rows-1
  const std::size_t nv = static_cast<std::size_t>(vr) * vc;
  UnionFind bg(nv + static_cast<std::size_t>(sr) * sc);
  auto vid = [&](int r, int c) { return static_cast<std::size_t>(r + 1) * vc + static_cast<std::size_t>(c + 1); };
  auto sid = [&](int r, int c) { return nv + static_cast<std::size_t>(r + 1) * sc + static_cast<std::size_t>(c + 1); };
  auto filled = [&](int r, int c) { return on(r, c) && on(r + 1, c) && on(r, c + 1) && on(r + 1, c + 1); };

  for (int r = -1; r <= rows - 1; ++r)
    for (int c = -1; c <= cols - 1; ++c) {
      if (filled(r, c)) continue;
      const int corners[4][2] = {{r, c}, {r + 1, c}, {r, c + 1}, {r + 1, c + 1}};
      for (const auto& v : corners)
        if (!on(v[0], v[1])) bg.unite(sid(r, c), vid(v[0], v[1]));
      // shared edge with the square above: vertices (r+1, c), (r+1, c+1)
      if (r + 1 <= rows - 1 && !filled(r + 1, c) && !(on(r + 1, c) && on(r + 1, c + 1))) bg.unite(sid(r, c), sid(r + 1, c));
      // shared edge with the square to the right: vertices (r, c+1), (r+1, c+1)
      if (c + 1 <= cols - 1 && !filled(r, c + 1) && !(on(r, c + 1) && on(r + 1, c + 1))) bg.unite(sid(r, c), sid(r, c + 1));
    }
  // unset vertices joined along unset edges too (edges are open segments)
  for (int r = -1; r <= rows; ++r)
    for (int c = -1; c <= cols; ++c) {
      if (on(r, c)) continue;
      if (r + 1 <= rows && !on(r + 1, c)) bg.unite(vid(r, c), vid(r + 1, c));
      if (c + 1 <= cols && !on(r, c + 1)) bg.unite(vid(r, c), vid(r, c + 1));
    }

  long background = 0;
  for (int r = -1; r <= rows; ++r)
    for (int c = -1; c <= cols; ++c)
      if (!on(r, c) && bg.find(vid(r, c)) == vid(r, c)) ++background;
  for (int r = -1; r <= rows - 1; ++r)
    for (int c = -1; c <= cols - 1; ++c)
      if (!filled(r, c) && bg.find(sid(r, c)) == sid(r, c)) ++background;
  const long holes = background - 1;  // one unbounded component
  return components - holes;
}

BinaryGrid threshold_window(const FieldSample& sample, double alpha, int window_points,
                            const std::function<bool(const Vector&)>& inside) {
  const int d = sample.grid.dim;
  const int n = sample.grid.points_per_axis;
  if (window_points < 1 || window_points > n) {
    throw ConfigError("threshold_window: window of " + std::to_string(window_points) +
                      " points does not fit in a grid of " + std::to_string(n));
  }
  std::size_t total = 1;
  for (int a = 0; a < d; ++a) total *= static_cast<std::size_t>(window_points);
  std::vector<std::uint8_t> mask(total, 0);
  std::vector<int> idx(d, 0);
  Vector x(d);
  for (std::size_t w = 0; w < total; ++w) {
    std::size_t p = 0;
    for (int a = 0; a < d; ++a) {
      p = p * static_cast<std::size_t>(n) + static_cast<std::size_t>(idx[a]);
      x[a] = sample.grid.spacing * idx[a];
    }
    mask[w] = sample.values[p] >= alpha && (!inside || inside(x)) ? 1 : 0;
    for (int a = d - 1; a >= 0; --a) {
      if (++idx[a] < window_points) break;
      idx[a] = 0;
    }
  }
  return BinaryGrid(std::vector<int>(d, window_points), std::move(mask), sample.grid.spacing);
}

}  // namespace excset
