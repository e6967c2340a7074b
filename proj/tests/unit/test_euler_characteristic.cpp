#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "excset/errors.hpp"
#include "excset/euler_characteristic.hpp"
#include "excset/field_simulator.hpp"
#include "excset/random.hpp"

using namespace excset;

namespace {

BinaryGrid grid2(int rows, int cols, std::vector<std::uint8_t> mask) { return BinaryGrid({rows, cols}, std::move(mask)); }

BinaryGrid random_grid2(Rng& rng, int rows, int cols, double p) {
  std::bernoulli_distribution coin(p);
  std::vector<std::uint8_t> m(static_cast<std::size_t>(rows) * cols);
  for (auto& v : m) v = coin(rng);
  return grid2(rows, cols, m);
}

BinaryGrid columns(const BinaryGrid& g, int from, int to) {
  const int rows = g.shape()[0], cols = g.shape()[1];
  std::vector<std::uint8_t> m;
  for (int i = 0; i < rows; ++i)
    for (int j = from; j <= to; ++j) m.push_back(g.mask()[i * cols + j]);
  return grid2(rows, to - from + 1, m);
}

BinaryGrid upsample2(const BinaryGrid& g) {
  const int rows = g.shape()[0], cols = g.shape()[1];
  std::vector<std::uint8_t> m(static_cast<std::size_t>(4) * rows * cols);
  for (int i = 0; i < 2 * rows; ++i)
    for (int j = 0; j < 2 * cols; ++j) m[i * 2 * cols + j] = g.mask()[(i / 2) * cols + j / 2];
  return grid2(2 * rows, 2 * cols, m);
}

}  // namespace

TEST_CASE("construction") {
  CHECK_THROWS_AS(BinaryGrid({}, {}), DimensionError);
  CHECK_THROWS_AS(BinaryGrid({2, 0}, {}), DimensionError);
  CHECK_THROWS_AS(BinaryGrid({2, 2}, {1, 1, 1}), DimensionError);
  CHECK_THROWS_AS(euler_char_2d_oracle(BinaryGrid({2, 2, 2}, std::vector<std::uint8_t>(8, 1))), DimensionError);
}

TEST_CASE("small configurations") {
  CHECK(euler_char(grid2(3, 3, std::vector<std::uint8_t>(9, 0))) == 0);
  CHECK(euler_char(grid2(3, 3, std::vector<std::uint8_t>(9, 1))) == 1);
  CHECK(euler_char(grid2(3, 3, {0, 0, 0, 0, 1, 0, 0, 0, 0})) == 1);
  CHECK(euler_char(grid2(3, 3, {1, 1, 1, 1, 0, 1, 1, 1, 1})) == 0);  // ring
  CHECK(euler_char(grid2(2, 2, {1, 0, 0, 1})) == 2);                  // diagonal pair
  CHECK(euler_char(grid2(1, 5, {1, 0, 1, 1, 0})) == 2);
  // two rings
  CHECK(euler_char(grid2(3, 5, {1, 1, 1, 1, 1, 1, 0, 1, 0, 1, 1, 1, 1, 1, 1})) == -1);
}

TEST_CASE("three dimensions") {
  CHECK(euler_char(BinaryGrid({3, 3, 3}, std::vector<std::uint8_t>(27, 1))) == 1);
  CHECK(euler_char(BinaryGrid({3, 3, 3}, std::vector<std::uint8_t>(27, 0))) == 0);
  std::vector<std::uint8_t> shell(27, 1);
  shell[13] = 0;
  CHECK(euler_char(BinaryGrid({3, 3, 3}, shell)) == 2);  // a sphere
  std::vector<std::uint8_t> torus(27, 0);
  for (int i = 0; i < 9; ++i)
    if (i != 4) torus[9 + i] = 1;  // ring in the middle slab
  CHECK(euler_char(BinaryGrid({3, 3, 3}, torus)) == 0);
}

TEST_CASE("agrees with components minus holes on random masks") {
  Rng rng(51);
  for (int rep = 0; rep < 1000; ++rep) {
    const double p = 0.3 + 0.4 * (rep % 5) / 4.0;
    const BinaryGrid g = random_grid2(rng, 8, 8, p);
    CHECK(euler_char(g) == euler_char_2d_oracle(g));
  }
  for (int rep = 0; rep < 50; ++rep) {
    const BinaryGrid g = random_grid2(rng, 40, 23, 0.55);
    CHECK(euler_char(g) == euler_char_2d_oracle(g));
  }
}

TEST_CASE("inclusion-exclusion across a shared column") {
  Rng rng(52);
  for (int rep = 0; rep < 200; ++rep) {
    const BinaryGrid g = random_grid2(rng, 10, 12, 0.6);
    const int k = 1 + rep % 10;
    CHECK(euler_char(g) == euler_char(columns(g, 0, k)) + euler_char(columns(g, k, 11)) - euler_char(columns(g, k, k)));
  }
}

TEST_CASE("block refinement preserves the Euler characteristic") {
  Rng rng(53);
  for (int rep = 0; rep < 200; ++rep) {
    const BinaryGrid g = random_grid2(rng, 9, 9, 0.5);
    CHECK(euler_char(upsample2(g)) == euler_char(g));
  }
}

TEST_CASE("product masks multiply") {
  Rng rng(54);
  std::bernoulli_distribution coin(0.6);
  for (int rep = 0; rep < 100; ++rep) {
    const BinaryGrid a = random_grid2(rng, 6, 7, 0.6);
    std::vector<std::uint8_t> b(5);
    for (auto& v : b) v = coin(rng);
    std::vector<std::uint8_t> prod;
    for (int i = 0; i < 42; ++i)
      for (int k = 0; k < 5; ++k) prod.push_back(a.mask()[i] && b[k]);
    CHECK(euler_char(BinaryGrid({6, 7, 5}, prod)) == euler_char(a) * euler_char(BinaryGrid({5}, b)));
  }
}

TEST_CASE("threshold_window") {
  const auto model = CovarianceModel::isotropic(2, 1.0, 1.0);
  const FieldSample s = simulate(model, GridSpec{2, 32, 0.25}, 9);
  const BinaryGrid w = threshold_window(s, 0.3, 20);
  REQUIRE(w.shape() == std::vector<int>{20, 20});
  CHECK(w.spacing() == 0.25);
  for (int i = 0; i < 20; ++i)
    for (int j = 0; j < 20; ++j) CHECK(w.at(i * 20 + j) == (s.values[i * 32 + j] >= 0.3));
  const BinaryGrid disk = threshold_window(s, -10.0, 20, [](const Vector& x) { return x.norm() <= 2.0; });
  for (int i = 0; i < 20; ++i)
    for (int j = 0; j < 20; ++j) CHECK(disk.at(i * 20 + j) == (std::hypot(0.25 * i, 0.25 * j) <= 2.0));
  CHECK(euler_char(disk) == 1);
  CHECK_THROWS_AS(threshold_window(s, 0.0, 33), ConfigError);
}
