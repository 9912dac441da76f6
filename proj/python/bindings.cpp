#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <cstring>

#include "grayenh/basis.hpp"
#include "grayenh/enhancer.hpp"
#include "grayenh/error.hpp"
#include "grayenh/gray_image.hpp"
#include "grayenh/image_stats.hpp"
#include "grayenh/pgm.hpp"
#include "grayenh/pl_transform.hpp"

namespace py = pybind11;
using namespace grayenh;

namespace {

GrayImage image_from_array(py::array_t<double, py::array::c_style | py::array::forcecast> a,
                           double gray_max) {
  if (a.ndim() != 2) throw py::value_error("expected a 2-D array (height, width)");
  const auto height = static_cast<std::size_t>(a.shape(0));
  const auto width = static_cast<std::size_t>(a.shape(1));
  std::vector<double> pixels(a.data(), a.data() + a.size());
  return GrayImage(width, height, std::move(pixels), gray_max);
}

py::array_t<double> image_to_array(const GrayImage& image) {
  py::array_t<double> a({image.height(), image.width()});
  std::memcpy(a.mutable_data(), image.pixels().data(), image.area() * sizeof(double));
  return a;
}

std::vector<double> to_vector(std::span<const double> s) { return {s.begin(), s.end()}; }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Gray-level enhancement with lambda-weighted Bernstein means";

  static py::exception<Error> error_type(m, "GrayEnhError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::set_error(error_type, e.what());
    }
  });

  py::class_<LambdaParams>(m, "LambdaParams")
      .def(py::init([](int k, double lambda, double gray_max) {
             LambdaParams p{k, lambda, gray_max};
             p.validate();
             return p;
           }),
           py::arg("k") = 4, py::arg("lambda_") = 2.0, py::arg("gray_max") = kDefaultGrayMax)
      .def_readwrite("k", &LambdaParams::k)
      .def_readwrite("lambda_", &LambdaParams::lambda)
      .def_readwrite("gray_max", &LambdaParams::gray_max);

  py::class_<GrayImage>(m, "GrayImage")
      .def(py::init(&image_from_array), py::arg("pixels"), py::arg("gray_max") = kDefaultGrayMax)
      .def_property_readonly("width", &GrayImage::width)
      .def_property_readonly("height", &GrayImage::height)
      .def_property_readonly("gray_max", &GrayImage::gray_max)
      .def_property_readonly("pixels", &image_to_array)
      .def("min_level", &GrayImage::min_level)
      .def("max_level", &GrayImage::max_level);

  m.def("bernstein", &bernstein, py::arg("i"), py::arg("params"), py::arg("t"));
  m.def("lambda_row", &lambda_row, py::arg("params"), py::arg("t"));

  py::class_<ImageStats>(m, "ImageStats")
      .def_readonly("means", &ImageStats::means)
      .def_readonly("bins", &ImageStats::bins)
      .def_readonly("accumulated", &ImageStats::accumulated)
      .def_readonly("min_level", &ImageStats::min_level)
      .def_readonly("max_level", &ImageStats::max_level);

  m.def("compute_stats", &compute_stats, py::arg("image"), py::arg("params"),
        py::arg("threads") = 1u);
  m.def("uniform_reference", &uniform_reference, py::arg("params"),
        py::arg("samples") = kDefaultQuadratureSamples);

  m.def("solve_coefficients",
        [](const std::vector<double>& v, const std::vector<double>& f) {
          return solve_coefficients(v, f);
        },
        py::arg("breakpoints"), py::arg("node_values"));

  py::class_<PiecewiseLinearTransform>(m, "PiecewiseLinearTransform")
      .def(py::init<std::vector<double>, std::vector<double>, double>(), py::arg("breakpoints"),
           py::arg("node_values"), py::arg("gray_max") = kDefaultGrayMax)
      .def_static("identity", &PiecewiseLinearTransform::identity,
                  py::arg("gray_max") = kDefaultGrayMax)
      .def("evaluate", &PiecewiseLinearTransform::evaluate, py::arg("v"))
      .def("__call__", &PiecewiseLinearTransform::evaluate, py::arg("v"))
      .def_property_readonly("breakpoints",
                             [](const PiecewiseLinearTransform& t) { return to_vector(t.breakpoints()); })
      .def_property_readonly("node_values",
                             [](const PiecewiseLinearTransform& t) { return to_vector(t.node_values()); })
      .def_property_readonly("coefficients",
                             [](const PiecewiseLinearTransform& t) { return to_vector(t.coefficients()); })
      .def_property_readonly("gray_max", &PiecewiseLinearTransform::gray_max);

  m.def("apply_to_image", &apply_to_image, py::arg("transform"), py::arg("image"));

  py::class_<EnhancementConfig>(m, "EnhancementConfig")
      .def(py::init([](int k, double lambda, double epsilon, int max_iterations,
                       std::size_t samples, unsigned threads) {
             EnhancementConfig c;
             c.params = {k, lambda, kDefaultGrayMax};
             c.epsilon = epsilon;
             c.max_iterations = max_iterations;
             c.quadrature_samples = samples;
             c.threads = threads;
             c.validate();
             return c;
           }),
           py::arg("k") = 4, py::arg("lambda_") = 2.0, py::arg("epsilon") = 0.5,
           py::arg("max_iterations") = 50, py::arg("quadrature_samples") = kDefaultQuadratureSamples,
           py::arg("threads") = 1u)
      .def_readwrite("params", &EnhancementConfig::params)
      .def_readwrite("epsilon", &EnhancementConfig::epsilon)
      .def_readwrite("max_iterations", &EnhancementConfig::max_iterations)
      .def_readwrite("quadrature_samples", &EnhancementConfig::quadrature_samples)
      .def_readwrite("threads", &EnhancementConfig::threads);

  py::class_<StepParameters>(m, "StepParameters")
      .def_readonly("alphas", &StepParameters::alphas)
      .def_readonly("beta", &StepParameters::beta);

  py::class_<TraceEntry>(m, "TraceEntry")
      .def_readonly("iteration", &TraceEntry::iteration)
      .def_readonly("distance", &TraceEntry::distance)
      .def_readonly("breakpoints", &TraceEntry::breakpoints)
      .def_readonly("node_values", &TraceEntry::node_values);

  py::class_<EnhancementResult>(m, "EnhancementResult")
      .def_readonly("enhanced", &EnhancementResult::enhanced)
      .def_readonly("stages", &EnhancementResult::stages)
      .def_readonly("trace", &EnhancementResult::trace)
      .def_readonly("converged", &EnhancementResult::converged)
      .def_readonly("initial_stats", &EnhancementResult::initial_stats)
      .def_readonly("final_stats", &EnhancementResult::final_stats)
      .def_readonly("reference_stats", &EnhancementResult::reference_stats);

  m.def("step_parameters", &step_parameters, py::arg("stats_l"), py::arg("stats_u"),
        py::arg("gray_max"));
  m.def("node_values", &node_values, py::arg("step"), py::arg("stats_u"), py::arg("gray_max"));
  m.def("build_step_transform", &build_step_transform, py::arg("image"), py::arg("stats_l"),
        py::arg("stats_u"), py::arg("params"));
  m.def("enhance", &enhance, py::arg("image"), py::arg("config"),
        py::call_guard<py::gil_scoped_release>());
  m.def("export_lut",
        py::overload_cast<const EnhancementResult&, std::size_t>(&export_lut),
        py::arg("result"), py::arg("levels") = 256);

  m.def("read_pgm", [](py::bytes data) {
    const std::string s = data;
    return read_pgm(std::span(reinterpret_cast<const std::uint8_t*>(s.data()), s.size()));
  });
  m.def("write_pgm", [](const GrayImage& image) {
    const auto bytes = write_pgm(image);
    return py::bytes(reinterpret_cast<const char*>(bytes.data()), bytes.size());
  });
  m.def("read_pgm_file", &read_pgm_file, py::arg("path"));
  m.def("write_pgm_file", &write_pgm_file, py::arg("path"), py::arg("image"));
  m.attr("BETA_FORMULA") = std::string(kBetaFormulaTag);
}
