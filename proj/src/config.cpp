#include "excset/config.hpp"

#include <cmath>
#include <fstream>
#include <set>

#include "excset/errors.hpp"

namespace excset {

namespace {

using json = nlohmann::ordered_json;

void reject_unknown(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
  if (!obj.is_object()) throw ConfigError(where + " must be an object");
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.count(key)) throw ConfigError("unknown key '" + (where.empty() ? key : where + "." + key) + "'");
  }
}

const json& require(const json& obj, const std::string& key, const std::string& where) {
  if (!obj.contains(key)) throw ConfigError("missing key '" + where + "." + key + "'");
  return obj.at(key);
}

double number(const json& v, const std::string& name) {
  if (!v.is_number()) throw ConfigError("'" + name + "' must be a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw ConfigError("'" + name + "' must be finite");
  return x;
}

long long integer(const json& v, const std::string& name) {
  if (!v.is_number_integer()) throw ConfigError("'" + name + "' must be an integer");
  return v.get<long long>();
}

Vector vector_of(const json& v, const std::string& name) {
  if (!v.is_array() || v.empty()) throw ConfigError("'" + name + "' must be a non-empty list of numbers");
  Vector out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) out[static_cast<Eigen::Index>(i)] = number(v[i], name);
  return out;
}

WindowConfig parse_window(const json& w) {
  reject_unknown(w, {"kind", "generators", "side", "radius"}, "window");
  const json& kind = require(w, "kind", "window");
  if (!kind.is_string()) throw ConfigError("'window.kind' must be a string");
  WindowConfig out;
  const std::string k = kind.get<std::string>();
  auto only = [&](const std::string& key) {
    for (const char* other : {"generators", "side", "radius"})
      if (other != key && w.contains(other)) throw ConfigError("window.kind '" + k + "' does not take window." + other);
  };
  if (k == "zonotope") {
    out.kind = WindowKind::Zonotope;
    only("generators");
    const json& g = require(w, "generators", "window");
    if (!g.is_array() || g.empty()) throw ConfigError("'window.generators' must be a non-empty list of vectors");
    for (const json& v : g) out.generators.push_back(vector_of(v, "window.generators"));
  } else if (k == "cube") {
    out.kind = WindowKind::Cube;
    only("side");
    out.side = number(require(w, "side", "window"), "window.side");
    if (!(out.side > 0.0)) throw ConfigError("'window.side' must be positive");
  } else if (k == "ball") {
    out.kind = WindowKind::Ball;
    only("radius");
    out.radius = number(require(w, "radius", "window"), "window.radius");
    if (!(out.radius > 0.0)) throw ConfigError("'window.radius' must be positive");
  } else {
    throw ConfigError("unknown window.kind '" + k + "' (expected zonotope, cube or ball)");
  }
  return out;
}

CovarianceModel parse_model(const json& m, const WindowConfig& window) {
  reject_unknown(m, {"family", "sigma2", "ell", "A", "dim"}, "model");
  const json& family = require(m, "family", "model");
  if (!family.is_string()) throw ConfigError("'model.family' must be a string");
  const double sigma2 = number(require(m, "sigma2", "model"), "model.sigma2");
  std::optional<int> dim;
  if (m.contains("dim")) {
    const long long v = integer(m.at("dim"), "model.dim");
    if (v < 1 || v > 16) throw ConfigError("'model.dim' must lie in 1..16");
    dim = static_cast<int>(v);
  }
  if (window.kind == WindowKind::Zonotope) {
    const int wd = static_cast<int>(window.generators.front().size());
    if (dim && *dim != wd) throw ConfigError("model.dim disagrees with the dimension of window.generators");
    dim = wd;
  }

  const std::string f = family.get<std::string>();
  if (f == "squared_exponential_isotropic") {
    if (m.contains("A")) throw ConfigError("isotropic model does not take model.A");
    if (!dim) throw ConfigError("model.dim is required for isotropic models with cube or ball windows");
    return CovarianceModel::isotropic(*dim, sigma2, number(require(m, "ell", "model"), "model.ell"));
  }
  if (f == "squared_exponential_anisotropic") {
    if (m.contains("ell")) throw ConfigError("anisotropic model does not take model.ell");
    const Vector flat = vector_of(require(m, "A", "model"), "model.A");
    const auto d = static_cast<Eigen::Index>(std::llround(std::sqrt(static_cast<double>(flat.size()))));
    if (d * d != flat.size()) throw ConfigError("'model.A' must hold d*d entries (row-major)");
    if (dim && *dim != d) throw ConfigError("model.A disagrees with the model dimension");
    Matrix A(d, d);
    for (Eigen::Index i = 0; i < d; ++i)
      for (Eigen::Index j = 0; j < d; ++j) A(i, j) = flat[i * d + j];
    return CovarianceModel::anisotropic(sigma2, A);
  }
  throw ConfigError("unknown model.family '" + f +
                    "' (expected squared_exponential_isotropic or squared_exponential_anisotropic)");
}

}  // namespace

Mode parse_mode(const std::string& name) {
  if (name == "predict") return Mode::Predict;
  if (name == "simulate") return Mode::Simulate;
  if (name == "validate") return Mode::Validate;
  if (name == "density") return Mode::Density;
  throw ConfigError("unknown mode '" + name + "'");
}

std::string to_string(Mode mode) {
  switch (mode) {
    case Mode::Predict: return "predict";
    case Mode::Simulate: return "simulate";
    case Mode::Validate: return "validate";
    case Mode::Density: return "density";
  }
  return "unknown";
}

std::string to_string(WindowKind kind) {
  switch (kind) {
    case WindowKind::Zonotope: return "zonotope";
    case WindowKind::Cube: return "cube";
    case WindowKind::Ball: return "ball";
  }
  return "unknown";
}

Zonotope ExperimentConfig::zonotope() const {
  switch (window.kind) {
    case WindowKind::Zonotope: return Zonotope(window.generators);
    case WindowKind::Cube: return Zonotope::cube(dim(), window.side);
    case WindowKind::Ball: break;
  }
  throw ConfigError("ball windows have no zonotope representation");
}

double ExperimentConfig::window_extent() const {
  switch (window.kind) {
    case WindowKind::Cube: return window.side;
    case WindowKind::Ball: return 2.0 * window.radius;
    case WindowKind::Zonotope: {
      const Zonotope z = zonotope();
      return (z.upper_corner() - z.lower_corner()).maxCoeff();
    }
  }
  return 0.0;
}

ExperimentConfig parse_config(const json& doc) {
  reject_unknown(doc, {"model", "alpha", "window", "grid", "mc", "mode"}, "");
  WindowConfig window = parse_window(require(doc, "window", "config"));
  CovarianceModel model = parse_model(require(doc, "model", "config"), window);

  const double alpha = number(require(doc, "alpha", "config"), "alpha");
  ExperimentConfig cfg{.model = std::move(model),
                       .alpha = alpha,
                       .window = std::move(window),
                       .grid = std::nullopt,
                       .replications = 0,
                       .seed = 0,
                       .mode = Mode::Predict,
                       .source = {}};
  if (cfg.window.kind == WindowKind::Zonotope) (void)cfg.zonotope();  // validates generators
  if (cfg.window.kind == WindowKind::Ball && !cfg.model.is_isotropic()) {
    throw ConfigError("ball windows need an isotropic model (kinematic formula)");
  }

  if (doc.contains("grid")) {
    const json& g = doc.at("grid");
    reject_unknown(g, {"n", "h", "window_points"}, "grid");
    GridConfig grid;
    const long long n = integer(require(g, "n", "grid"), "grid.n");
    if (n < 8 || n > (1 << 14)) throw ConfigError("'grid.n' must lie in 8..16384");
    grid.n = static_cast<int>(n);
    grid.h = number(require(g, "h", "grid"), "grid.h");
    if (!(grid.h > 0.0)) throw ConfigError("'grid.h' must be positive");
    if (g.contains("window_points")) {
      const long long w = integer(g.at("window_points"), "grid.window_points");
      if (w < 2 || w > n) throw ConfigError("'grid.window_points' must lie in 2..grid.n");
      grid.window_points = static_cast<int>(w);
    }
    cfg.grid = grid;
  }
  if (doc.contains("mc")) {
    const json& mc = doc.at("mc");
    reject_unknown(mc, {"replications", "seed"}, "mc");
    if (mc.contains("replications")) {
      const long long r = integer(mc.at("replications"), "mc.replications");
      if (r < 0 || r > 1000000) throw ConfigError("'mc.replications' must lie in 0..1000000");
      cfg.replications = static_cast<int>(r);
    }
    if (mc.contains("seed")) {
      const json& s = mc.at("seed");
      if (!s.is_number_unsigned() && !(s.is_number_integer() && s.get<long long>() >= 0)) {
        throw ConfigError("'mc.seed' must be a non-negative integer");
      }
      cfg.seed = s.get<std::uint64_t>();
    }
  }
  if (doc.contains("mode")) {
    if (!doc.at("mode").is_string()) throw ConfigError("'mode' must be a string");
    cfg.mode = parse_mode(doc.at("mode").get<std::string>());
  }
  cfg.source = doc;
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config " + path.string() + " is not valid JSON: " + e.what());
  }
  return parse_config(doc);
}

}  // namespace excset
