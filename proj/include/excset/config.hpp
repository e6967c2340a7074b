#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "excset/excursion_densities.hpp"
#include "excset/gaussian_model.hpp"
#include "excset/zonotope.hpp"

namespace excset {

enum class Mode { Predict, Simulate, Validate, Density };
enum class WindowKind { Zonotope, Cube, Ball };

struct WindowConfig {
  WindowKind kind = WindowKind::Cube;
  std::vector<Vector> generators;  // zonotope
  double side = 0.0;               // cube
  double radius = 0.0;             // ball
};

struct GridConfig {
  int n = 0;
  double h = 0.0;
  std::optional<int> window_points;
};

/// Parsed experiment file. The file is JSON with the keys
///   model.{family, sigma2, ell | A, dim}, alpha,
///   window.{kind, generators | side | radius},
///   grid.{n, h, window_points}, mc.{replications, seed}, mode.
/// `model.A` is a row-major flat list; `model.dim` is only needed when the
/// dimension cannot be read off A or the generators. Unknown keys are errors.
struct ExperimentConfig {
  CovarianceModel model;
  double alpha = 0.0;
  WindowConfig window;
  std::optional<GridConfig> grid;
  int replications = 0;
  std::uint64_t seed = 0;
  Mode mode = Mode::Predict;
  nlohmann::ordered_json source;

  int dim() const { return model.dim(); }
  ExcursionSpec excursion() const { return ExcursionSpec(model, alpha); }
  /// Zonotope or cube window as generators; throws ConfigError for balls.
  Zonotope zonotope() const;
  /// Largest coordinate extent of the window.
  double window_extent() const;
};

ExperimentConfig parse_config(const nlohmann::ordered_json& doc);
ExperimentConfig load_config(const std::filesystem::path& path);

Mode parse_mode(const std::string& name);
std::string to_string(Mode mode);
std::string to_string(WindowKind kind);

}  // namespace excset
