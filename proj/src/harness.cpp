#include "excset/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <functional>
#include <memory>
#include <mutex>
#include <sstream>
#include <thread>

#include "excset/errors.hpp"
#include "excset/euler_characteristic.hpp"
#include "excset/field_simulator.hpp"
#include "excset/random.hpp"

namespace excset {

std::string version_string() { return EXCSET_VERSION; }

double predict(const ExperimentConfig& config) {
  const ExcursionSpec spec = config.excursion();
  if (config.window.kind == WindowKind::Ball) {
    if (!config.model.is_isotropic()) {
      throw ConfigError("ball windows need an isotropic model (kinematic formula)");
    }
    return expected_euler_pkf_iso(spec, intrinsic_volumes_ball(config.dim(), config.window.radius));
  }
  return expected_euler_zonotope(spec, config.zonotope());
}

double discretization_margin(int dim) { return dim >= 3 ? 0.07 : 0.05; }

WindowLayout check_validation_config(const ExperimentConfig& config) {
  if (!config.grid) throw ConfigError("validation needs a grid section");
  if (config.replications < 30) {
    throw ConfigError("validation needs mc.replications >= 30, got " + std::to_string(config.replications));
  }
  const GridConfig& g = *config.grid;
  GridSpec{config.dim(), g.n, g.h}.validate();

  WindowLayout layout;
  const int needed = static_cast<int>(std::floor(config.window_extent() / g.h + 1e-9)) + 1;
  layout.window_points = g.window_points.value_or(needed);
  if (layout.window_points < needed) {
    throw ConfigError("grid.window_points = " + std::to_string(layout.window_points) +
                      " is too small for the window (needs " + std::to_string(needed) + ")");
  }
  if (layout.window_points > g.n) {
    throw ConfigError("window needs " + std::to_string(layout.window_points) + " points per axis but grid.n = " +
                      std::to_string(g.n));
  }
  const double ell = config.model.correlation_length();
  layout.extent = (layout.window_points - 1) * g.h;
  layout.h_over_ell = g.h / ell;
  if (layout.window_points * g.h < 4.0 * ell) {
    throw ConfigError("observation window spans less than 4 correlation lengths");
  }
  if (layout.window_points * g.h < 8.0 * ell) {
    layout.warnings.push_back("observation window spans less than 8 correlation lengths");
  }
  if (layout.h_over_ell > 0.125) {
    layout.warnings.push_back("grid spacing exceeds ell/8; vertex-rule discretization bias may be noticeable");
  }
  return layout;
}

ValidationReport run_validation(const ExperimentConfig& config, int threads) {
  ValidationReport report;
  report.window = check_validation_config(config);
  report.prediction = predict(config);
  report.replications = config.replications;
  report.seed = config.seed;
  report.margin = discretization_margin(config.dim());
  report.config_echo = config.source;

  const GridSpec grid{config.dim(), config.grid->n, config.grid->h};
  const CirculantEmbedding embedding(config.model, grid);
  report.torus_points = embedding.torus_points();
  report.clipped_mass = embedding.clipped_mass();

  // window membership, translated so its bounding box starts at the grid origin
  std::function<bool(const Vector&)> inside;
  if (config.window.kind == WindowKind::Ball) {
    const double r = config.window.radius;
    inside = [r](const Vector& x) { return (x.array() - r).matrix().norm() <= r * (1.0 + 1e-12); };
  } else if (config.window.kind == WindowKind::Zonotope) {
    auto z = std::make_shared<Zonotope>(config.zonotope());
    const Vector lower = z->lower_corner();
    inside = [z, lower](const Vector& x) { return z->contains(x + lower, 1e-9); };
  }
  // cubes fill the whole sub-box up to the window extent
  else if (report.window.window_points - 1 > std::floor(config.window.side / grid.spacing + 1e-9)) {
    const double side = config.window.side;
    inside = [side](const Vector& x) { return x.maxCoeff() <= side * (1.0 + 1e-12); };
  }

  const int n_rep = config.replications;
  report.chi.assign(static_cast<std::size_t>(n_rep), 0);
  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    try {
      for (int i = next++; i < n_rep; i = next++) {
        const FieldSample sample = embedding.sample(derive_seed(config.seed, static_cast<std::uint64_t>(i)));
        report.chi[static_cast<std::size_t>(i)] =
            euler_char(threshold_window(sample, config.alpha, report.window.window_points, inside));
      }
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
      next = n_rep;
    }
  };
  const int n_threads = std::max(1, std::min(threads, n_rep));
  if (n_threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);

  double mean = 0.0, m2 = 0.0;
  for (int i = 0; i < n_rep; ++i) {
    const double v = static_cast<double>(report.chi[static_cast<std::size_t>(i)]);
    const double delta = v - mean;
    mean += delta / (i + 1);
    m2 += delta * (v - mean);
  }
  report.mc_mean = mean;
  report.mc_std_error = n_rep > 1 ? std::sqrt(m2 / (n_rep - 1) / n_rep) : 0.0;
  const double diff = report.mc_mean - report.prediction;
  if (report.mc_std_error > 0.0) report.z_score = diff / report.mc_std_error;
  report.accepted = std::abs(diff) <= 3.0 * report.mc_std_error + report.margin * std::abs(report.prediction);
  return report;
}

nlohmann::ordered_json to_json(const ValidationReport& r) {
  nlohmann::ordered_json j;
  j["prediction"] = r.prediction;
  j["mc_mean"] = r.mc_mean;
  j["mc_std_error"] = r.mc_std_error;
  j["z_score"] = r.z_score ? nlohmann::ordered_json(*r.z_score) : nlohmann::ordered_json(nullptr);
  j["acceptance"] = {{"rule", "|mc_mean - prediction| <= 3 * mc_std_error + margin * |prediction|"},
                     {"margin", r.margin},
                     {"accepted", r.accepted}};
  j["replications"] = r.replications;
  j["seed"] = r.seed;
  j["discretization"] = {{"h_over_ell", r.window.h_over_ell},
                         {"window_points", r.window.window_points},
                         {"window_extent", r.window.extent},
                         {"note", "vertex-rule cubical complex; bias is O(h)"},
                         {"warnings", r.window.warnings}};
  j["embedding"] = {{"torus_points", r.torus_points}, {"clipped_mass", r.clipped_mass}};
  j["chi"] = r.chi;
  j["config"] = r.config_echo;
  j["version"] = version_string();
  return j;
}

std::string chi_table(const ValidationReport& report) {
  std::ostringstream out;
  out << "replication_index,chi\n";
  for (std::size_t i = 0; i < report.chi.size(); ++i) out << i << ',' << report.chi[i] << '\n';
  return out.str();
}

DensityTable density_report(const ExperimentConfig& config, std::size_t flags) {
  const ExcursionSpec spec = config.excursion();
  DensityTable table;
  table.flags = flags;
  table.volume_density = volume_density(spec);
  for (int k = 0; k < spec.dim(); ++k) {
    DensityRow row;
    row.k = k;
    if (spec.model().is_isotropic()) row.closed_form = curvature_density_iso(spec, k);
    const DensityEstimate q = curvature_density_aniso(spec, k);
    row.quadrature = q.value;
    row.quadrature_error = q.error;
    switch (q.method) {
      case DensityEstimate::Method::Trapezoid: row.quadrature_method = "trapezoid"; break;
      case DensityEstimate::Method::ProductGaussLegendre: row.quadrature_method = "product_gauss_legendre"; break;
      case DensityEstimate::Method::MonteCarlo: row.quadrature_method = "monte_carlo"; break;
    }
    Rng rng(derive_seed(config.seed, static_cast<std::uint64_t>(k)));
    const McEstimate mc = mc_total_flag_mass(spec, k, flags, rng);
    row.monte_carlo = mc.estimate;
    row.monte_carlo_se = mc.std_error;
    table.rows.push_back(row);
  }
  return table;
}

nlohmann::ordered_json to_json(const DensityTable& t) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const DensityRow& r : t.rows) {
    rows.push_back({{"k", r.k},
                    {"closed_form", r.closed_form ? nlohmann::ordered_json(*r.closed_form) : nlohmann::ordered_json(nullptr)},
                    {"quadrature", r.quadrature},
                    {"quadrature_error", r.quadrature_error},
                    {"quadrature_method", r.quadrature_method},
                    {"monte_carlo", r.monte_carlo},
                    {"monte_carlo_se", r.monte_carlo_se}});
  }
  nlohmann::ordered_json j;
  j["curvature_densities"] = rows;
  j["volume_density"] = t.volume_density;
  j["flags"] = t.flags;
  j["version"] = version_string();
  return j;
}

}  // namespace excset
