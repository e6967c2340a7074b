#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "excset/config.hpp"

namespace excset {

/// Closed-form mean Euler characteristic of the excursion set in the window:
/// the zonotope formula for zonotope and cube windows, the kinematic formula
/// for balls (isotropic models only).
double predict(const ExperimentConfig& config);

/// Observation-window layout on the simulation grid.
struct WindowLayout {
  int window_points = 0;   // per axis
  double extent = 0.0;     // (window_points - 1) * h
  double h_over_ell = 0.0;
  std::vector<std::string> warnings;
};

/// Checks everything run_validation needs (grid present and fitting the
/// window, at least 30 replications, window at least 4 correlation lengths
/// across) and returns the window layout. Throws ConfigError.
WindowLayout check_validation_config(const ExperimentConfig& config);

struct ValidationReport {
  double prediction = 0.0;
  double mc_mean = 0.0;
  double mc_std_error = 0.0;
  std::optional<double> z_score;  // empty when the standard error is zero
  double margin = 0.0;            // relative discretization allowance
  bool accepted = false;          // |mean - prediction| <= 3 SE + margin |prediction|
  int replications = 0;
  std::uint64_t seed = 0;
  WindowLayout window;
  int torus_points = 0;
  double clipped_mass = 0.0;
  std::vector<long> chi;
  nlohmann::ordered_json config_echo;
};

/// Relative discretization allowance used by the acceptance rule.
double discretization_margin(int dim);

/// Simulates `replications` fields (seed of replication i is
/// derive_seed(seed, i)), counts the Euler characteristic of each thresholded
/// window and compares the mean with predict(). Results do not depend on
/// `threads`.
ValidationReport run_validation(const ExperimentConfig& config, int threads = 1);

nlohmann::ordered_json to_json(const ValidationReport& report);

/// "replication_index,chi" CSV.
std::string chi_table(const ValidationReport& report);

struct DensityRow {
  int k = 0;
  std::optional<double> closed_form;  // isotropic models only
  double quadrature = 0.0;
  double quadrature_error = 0.0;
  std::string quadrature_method;
  double monte_carlo = 0.0;
  double monte_carlo_se = 0.0;
};

struct DensityTable {
  std::vector<DensityRow> rows;  // k = 0..d-1
  double volume_density = 0.0;
  std::size_t flags = 0;
};

/// Every available route to the curvature densities side by side.
DensityTable density_report(const ExperimentConfig& config, std::size_t flags = 100000);

nlohmann::ordered_json to_json(const DensityTable& table);

std::string version_string();

}  // namespace excset
