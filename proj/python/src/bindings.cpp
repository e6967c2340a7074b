#include <pybind11/eigen.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "excset/errors.hpp"
#include "excset/euler_characteristic.hpp"
#include "excset/excursion_densities.hpp"
#include "excset/field_simulator.hpp"
#include "excset/harness.hpp"
#include "excset/special_functions.hpp"
#include "excset/zonotope.hpp"

namespace py = pybind11;
using namespace excset;

namespace {

Subspace subspace_from(const Matrix& frame, int d) {
  if (frame.size() == 0) return Subspace::trivial(d);
  return Subspace::span_of(frame);
}

ExperimentConfig config_from(const std::string& text) {
  nlohmann::ordered_json doc;
  try {
    doc = nlohmann::ordered_json::parse(text);
  } catch (const nlohmann::ordered_json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  return parse_config(doc);
}

py::array_t<double> as_array(const FieldSample& s) {
  std::vector<py::ssize_t> shape(s.grid.dim, s.grid.points_per_axis);
  py::array_t<double> out(shape);
  std::copy(s.values.begin(), s.values.end(), out.mutable_data());
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Mean Euler characteristics and curvature densities of Gaussian excursion sets";
  m.attr("__version__") = version_string();

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<DimensionError>(m, "DimensionError", PyExc_ValueError);
  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<ConvergenceError>(m, "ConvergenceError", PyExc_RuntimeError);
  py::register_exception<EmbeddingNotPD>(m, "EmbeddingNotPD", PyExc_RuntimeError);

  m.def("hermite", &hermite, py::arg("n"), py::arg("t"));
  m.def("gaussian_tail", &gaussian_tail, py::arg("t"));
  m.def("sphere_surface", &sphere_surface, py::arg("k"));
  m.def("beta_const", &beta_const, py::arg("d"), py::arg("k"));
  m.def("gamma_const", &gamma_const, py::arg("d"), py::arg("k"));
  m.def("f_kl", &f_kl, py::arg("theta"), py::arg("d"), py::arg("k"), py::arg("l"), py::arg("abs_tol") = 1e-10);

  py::class_<CovarianceModel>(m, "CovarianceModel")
      .def_static("isotropic", &CovarianceModel::isotropic, py::arg("dim"), py::arg("variance"),
                  py::arg("length_scale"))
      .def_static("anisotropic", &CovarianceModel::anisotropic, py::arg("variance"), py::arg("shape"))
      .def_property_readonly("dim", &CovarianceModel::dim)
      .def_property_readonly("variance", &CovarianceModel::variance)
      .def_property_readonly("is_isotropic", &CovarianceModel::is_isotropic)
      .def_property_readonly("shape", &CovarianceModel::shape)
      .def_property_readonly("lambda_matrix", &CovarianceModel::lambda_matrix)
      .def_property_readonly("correlation_length", &CovarianceModel::correlation_length)
      .def("covariance", py::overload_cast<const Vector&>(&CovarianceModel::covariance, py::const_), py::arg("x"))
      .def("spectral_density", &CovarianceModel::spectral_density, py::arg("w"));

  m.def(
      "lambda_bracket", [](const Matrix& L, const Matrix& frame) { return lambda_bracket(L, subspace_from(frame, L.rows())); },
      py::arg("L"), py::arg("frame"), "det of L compressed to the span of the frame's columns");
  m.def(
      "eigen_expansion", [](const Matrix& L, const Matrix& frame) { return eigen_expansion(L, subspace_from(frame, L.rows())); },
      py::arg("L"), py::arg("frame"));
  m.def("wedge_norm_sq", &wedge_norm_sq, py::arg("vectors"));

  m.def(
      "flag_density",
      [](const CovarianceModel& model, double alpha, int k, const Vector& u, const Matrix& frame) {
        const Vector unit = u / u.norm();
        return flag_density(ExcursionSpec(model, alpha), k, Flag(unit, subspace_from(frame, model.dim())));
      },
      py::arg("model"), py::arg("alpha"), py::arg("k"), py::arg("u"), py::arg("frame"));
  m.def(
      "curvature_density_iso",
      [](const CovarianceModel& model, double alpha, int k) { return curvature_density_iso(ExcursionSpec(model, alpha), k); },
      py::arg("model"), py::arg("alpha"), py::arg("k"));
  m.def(
      "curvature_density",
      [](const CovarianceModel& model, double alpha, int k) {
        const DensityEstimate e = curvature_density_aniso(ExcursionSpec(model, alpha), k);
        return py::make_tuple(e.value, e.error);
      },
      py::arg("model"), py::arg("alpha"), py::arg("k"), "(value, error) by quadrature over the sphere");
  m.def(
      "volume_density", [](const CovarianceModel& model, double alpha) { return volume_density(ExcursionSpec(model, alpha)); },
      py::arg("model"), py::arg("alpha"));

  py::class_<Zonotope>(m, "Zonotope")
      .def(py::init<Matrix>(), py::arg("generators"), "generators as the columns of a d x m array")
      .def_static("cube", &Zonotope::cube, py::arg("dim"), py::arg("side"))
      .def_property_readonly("dim", &Zonotope::dim)
      .def_property_readonly("generators", &Zonotope::generators)
      .def("contains", &Zonotope::contains, py::arg("x"), py::arg("tol") = 1e-12);

  auto faces = [](const std::vector<ZonotopeFace>& fs) {
    py::list out;
    for (const ZonotopeFace& f : fs) {
      out.append(py::dict(py::arg("subset") = f.subset, py::arg("dim") = f.dim, py::arg("volume") = f.volume,
                          py::arg("frame") = f.span.frame()));
    }
    return out;
  };
  m.def("faces_at_origin", [faces](const Zonotope& z, int j) { return faces(faces_at_origin(z, j)); }, py::arg("zonotope"),
        py::arg("j"));
  m.def("face_classes", [faces](const Zonotope& z, int j) { return faces(face_classes(z, j)); }, py::arg("zonotope"),
        py::arg("j"));
  m.def(
      "expected_euler_zonotope",
      [](const CovarianceModel& model, double alpha, const Zonotope& z) {
        return expected_euler_zonotope(ExcursionSpec(model, alpha), z);
      },
      py::arg("model"), py::arg("alpha"), py::arg("zonotope"));
  m.def(
      "expected_euler_pkf_iso",
      [](const CovarianceModel& model, double alpha, const std::vector<double>& volumes) {
        return expected_euler_pkf_iso(ExcursionSpec(model, alpha), volumes);
      },
      py::arg("model"), py::arg("alpha"), py::arg("intrinsic_volumes"));
  m.def("intrinsic_volumes_box", [](const std::vector<double>& sides) { return intrinsic_volumes_box(sides); },
        py::arg("sides"));
  m.def("intrinsic_volumes_ball", &intrinsic_volumes_ball, py::arg("d"), py::arg("r"));

  m.def(
      "simulate",
      [](const CovarianceModel& model, int n, double h, std::uint64_t seed) {
        return as_array(simulate(model, GridSpec{model.dim(), n, h}, seed));
      },
      py::arg("model"), py::arg("n"), py::arg("h"), py::arg("seed"), "one field on an n^d grid of spacing h");
  m.def(
      "euler_char",
      [](py::array_t<std::uint8_t, py::array::c_style | py::array::forcecast> mask) {
        std::vector<int> shape(mask.shape(), mask.shape() + mask.ndim());
        std::vector<std::uint8_t> data(mask.data(), mask.data() + mask.size());
        return euler_char(BinaryGrid(std::move(shape), std::move(data)));
      },
      py::arg("mask"));

  m.def("_predict", [](const std::string& config) { return predict(config_from(config)); }, py::arg("config"));
  m.def(
      "_run_validation",
      [](const std::string& config, int threads) {
        const ExperimentConfig cfg = config_from(config);
        ValidationReport r;
        {
          py::gil_scoped_release release;
          r = run_validation(cfg, threads);
        }
        return to_json(r).dump();
      },
      py::arg("config"), py::arg("threads") = 1);
  m.def(
      "_density_report",
      [](const std::string& config, std::size_t flags) { return to_json(density_report(config_from(config), flags)).dump(); },
      py::arg("config"), py::arg("flags") = 100000);
}
