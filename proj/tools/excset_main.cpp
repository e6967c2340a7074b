// excset: closed-form predictions and Monte-Carlo checks for the mean Euler
// characteristic of Gaussian excursion sets.
//
// Exit codes: 0 success, 2 configuration error, 3 circulant embedding not
// positive definite, 4 validation rejected the prediction, 1 anything else.

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "excset/config.hpp"
#include "excset/errors.hpp"
#include "excset/excursion_densities.hpp"
#include "excset/field_simulator.hpp"
#include "excset/harness.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitEmbedding = 3;
constexpr int kExitRejected = 4;

int default_threads() {
  if (const char* env = std::getenv("EXCSET_THREADS")) {
    try {
      const int n = std::stoi(env);
      if (n > 0) return n;
    } catch (const std::exception&) {
    }
    std::cerr << "warning: ignoring invalid EXCSET_THREADS='" << env << "'\n";
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

excset::Vector parse_vector(const std::string& text) {
  std::vector<double> xs;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      xs.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw excset::ConfigError("cannot parse vector component '" + item + "' in '" + text + "'");
    }
  }
  excset::Vector v(static_cast<Eigen::Index>(xs.size()));
  for (std::size_t i = 0; i < xs.size(); ++i) v[static_cast<Eigen::Index>(i)] = xs[i];
  return v;
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Mean Euler characteristic of Gaussian excursion sets"};
  app.require_subcommand(1);

  std::string config_path;
  std::optional<std::uint64_t> seed;
  int threads = default_threads();
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "experiment file (JSON)")->required()->check(CLI::ExistingFile);
    sub->add_option("--seed", seed, "overrides mc.seed");
    sub->add_option("--threads", threads, "worker threads (default: $EXCSET_THREADS or all cores)")
        ->check(CLI::PositiveNumber);
  };

  auto* predict_cmd = app.add_subcommand("predict", "closed-form mean Euler characteristic");
  add_common(predict_cmd);

  std::string out_stem = "sample";
  auto* simulate_cmd = app.add_subcommand("simulate", "simulate one field and dump it (<stem>.bin + <stem>.hdr)");
  add_common(simulate_cmd);
  simulate_cmd->add_option("--out", out_stem, "output stem");

  std::string report_path = "-";
  std::string chi_path;
  auto* validate_cmd = app.add_subcommand("validate", "Monte-Carlo check of the prediction");
  add_common(validate_cmd);
  validate_cmd->add_option("--report", report_path, "report file ('-' for stdout)");
  validate_cmd->add_option("--chi-table", chi_path, "per-replication CSV (replication_index,chi)");

  std::size_t flags = 100000;
  auto* density_cmd = app.add_subcommand("density", "curvature densities by every available route");
  add_common(density_cmd);
  density_cmd->add_option("--flags", flags, "Monte-Carlo flag samples")->check(CLI::Range(100, 100000000));

  int order = 0;
  std::string direction;
  std::vector<std::string> frame;
  auto* flag_cmd = app.add_subcommand("flag-density", "evaluate the flag density q_k at one flag");
  add_common(flag_cmd);
  flag_cmd->add_option("--k", order, "order k in 0..d-1")->required();
  flag_cmd->add_option("--u", direction, "unit direction, comma separated")->required();
  flag_cmd->add_option("--frame", frame, "orthonormal frame vector of U (repeat d-1-k times)");

  CLI11_PARSE(app, argc, argv);

  try {
    excset::ExperimentConfig config = excset::load_config(config_path);
    if (seed) config.seed = *seed;
    std::cout << std::setprecision(17);

    if (*predict_cmd) {
      std::cout << excset::predict(config) << '\n';
      return 0;
    }
    if (*simulate_cmd) {
      if (!config.grid) throw excset::ConfigError("simulate needs a grid section");
      const excset::GridSpec grid{config.dim(), config.grid->n, config.grid->h};
      const excset::FieldSample sample = excset::simulate(config.model, grid, config.seed);
      excset::write_raw_sample(sample, config.model, out_stem);
      std::cout << "wrote " << out_stem << ".bin and " << out_stem << ".hdr (" << sample.values.size()
                << " values, torus " << sample.embedding_points << ", clipped mass " << sample.clipped_mass << ")\n";
      return 0;
    }
    if (*validate_cmd) {
      const excset::ValidationReport report = excset::run_validation(config, threads);
      write_text(report_path, excset::to_json(report).dump(2) + "\n");
      if (!chi_path.empty()) write_text(chi_path, excset::chi_table(report));
      return report.accepted ? 0 : kExitRejected;
    }
    if (*density_cmd) {
      std::cout << excset::to_json(excset::density_report(config, flags)).dump(2) << '\n';
      return 0;
    }
    if (*flag_cmd) {
      const excset::Vector u = parse_vector(direction);
      excset::Matrix f(u.size(), static_cast<Eigen::Index>(frame.size()));
      for (std::size_t i = 0; i < frame.size(); ++i) {
        const excset::Vector v = parse_vector(frame[i]);
        if (v.size() != u.size()) throw excset::ConfigError("frame vector has the wrong dimension");
        f.col(static_cast<Eigen::Index>(i)) = v;
      }
      const excset::Flag flag(u, excset::Subspace(f));
      std::cout << excset::flag_density(config.excursion(), order, flag) << '\n';
      return 0;
    }
  } catch (const excset::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const excset::DimensionError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const excset::EmbeddingNotPD& e) {
    std::cerr << "embedding error: " << e.what() << '\n';
    return kExitEmbedding;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
