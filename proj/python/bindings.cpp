#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "kontact/double_kcontact.hpp"
#include "kontact/errors.hpp"
#include "kontact/scalar_field.hpp"
#include "kontact/suite.hpp"

namespace py = pybind11;

namespace {

kontact::SuiteConfig make_config(const std::string& manifold, std::size_t samples, std::uint64_t seed,
                                 double exclusion, const std::map<std::string, double>& tol) {
  kontact::SuiteConfig config;
  config.manifold = kontact::parse_manifold(manifold);
  config.samples = samples;
  config.seed = seed;
  config.exclusion = exclusion;
  config.tol_overrides = tol;
  return config;
}

kontact::SpherePoint to_point(const std::string& manifold, const std::vector<double>& coords) {
  if (static_cast<int>(coords.size()) != kontact::manifold_dim(kontact::parse_manifold(manifold)) + 1) {
    throw kontact::UsageError("point has the wrong number of coordinates for " + manifold);
  }
  return kontact::SpherePoint(Eigen::Map<const kontact::Vec>(coords.data(), static_cast<Eigen::Index>(coords.size())));
}

}  // namespace

PYBIND11_MODULE(_kontact, m) {
  m.doc() = "Residual checks for double K-contact structures on round spheres.";

  // Translators run most-recent first, so the base class is registered first.
  auto& error = py::register_exception<kontact::Error>(m, "KontactError");
  py::register_exception<kontact::UsageError>(m, "UsageError", PyExc_ValueError);
  py::register_exception<kontact::RegularityError>(m, "RegularityError", error.ptr());

  py::class_<kontact::ResidualReport>(m, "ResidualReport")
      .def_readonly("check_name", &kontact::ResidualReport::check_name)
      .def_readonly("count", &kontact::ResidualReport::count)
      .def_readonly("skipped", &kontact::ResidualReport::skipped)
      .def_readonly("flagged", &kontact::ResidualReport::flagged)
      .def_readonly("max", &kontact::ResidualReport::max)
      .def_readonly("mean", &kontact::ResidualReport::mean)
      .def_readonly("tolerance", &kontact::ResidualReport::tolerance)
      .def_readonly("passed", &kontact::ResidualReport::pass)
      .def_readonly("provenance", &kontact::ResidualReport::provenance)
      .def_readonly("diagnostics", &kontact::ResidualReport::diagnostics)
      .def("__repr__", [](const kontact::ResidualReport& r) {
        return "<ResidualReport " + r.check_name + (r.pass ? " pass" : " FAIL") + ">";
      });

  m.def(
      "run_suite",
      [](const std::string& manifold, std::size_t samples, std::uint64_t seed, double exclusion,
         const std::map<std::string, double>& tol) {
        const auto config = make_config(manifold, samples, seed, exclusion, tol);
        py::gil_scoped_release release;
        return kontact::run_suite(config);
      },
      py::arg("manifold"), py::arg("samples") = 500, py::arg("seed") = 42, py::arg("exclusion") = 0.9,
      py::arg("tol") = std::map<std::string, double>{});

  m.def(
      "report_json",
      [](const std::string& manifold, std::size_t samples, std::uint64_t seed, double exclusion,
         const std::map<std::string, double>& tol) {
        const auto config = make_config(manifold, samples, seed, exclusion, tol);
        py::gil_scoped_release release;
        return kontact::reports_to_json(config, kontact::run_suite(config));
      },
      py::arg("manifold"), py::arg("samples") = 500, py::arg("seed") = 42, py::arg("exclusion") = 0.9,
      py::arg("tol") = std::map<std::string, double>{});

  m.def("describe_json", [](const std::string& manifold) { return kontact::describe(kontact::parse_manifold(manifold)); },
        py::arg("manifold"));

  m.def(
      "energy_json",
      [](const std::string& manifold, const std::string& field, std::size_t samples, std::uint64_t seed,
         double exclusion) {
        const auto mf = kontact::parse_manifold(manifold);
        py::gil_scoped_release release;
        return kontact::energy_report(mf, field, samples, seed, exclusion);
      },
      py::arg("manifold"), py::arg("field") = "reeb", py::arg("samples") = 10000, py::arg("seed") = 42,
      py::arg("exclusion") = 0.9);

  m.def("reeb_energy_closed_form", &kontact::reeb_energy_closed_form, py::arg("dim"));

  m.def(
      "angle_function",
      [](const std::string& manifold, const std::vector<double>& point) {
        const auto d = kontact::shipped_pair(kontact::parse_manifold(manifold));
        return d.angle_function()(to_point(manifold, point));
      },
      py::arg("manifold"), py::arg("point"));

  m.def(
      "laplacian_of_angle_function",
      [](const std::string& manifold, const std::vector<double>& point) {
        const auto d = kontact::shipped_pair(kontact::parse_manifold(manifold));
        return kontact::laplacian(d.angle_function(), to_point(manifold, point));
      },
      py::arg("manifold"), py::arg("point"));
}
