#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "spinor_forge/clifford.hpp"
#include "spinor_forge/config.hpp"
#include "spinor_forge/matrix_rep.hpp"
#include "spinor_forge/metric_dsl.hpp"
#include "spinor_forge/report.hpp"
#include "spinor_forge/spacetimes.hpp"

namespace py = pybind11;
using namespace spinor_forge;

namespace {

Multivector from_list(Signature sig, const std::vector<double>& c) { return Multivector(sig, c); }

std::vector<double> to_list(const Multivector& m) {
  const auto span = m.coefficients();
  return {span.begin(), span.end()};
}

std::vector<std::vector<std::complex<double>>> to_rows(const C2Matrix& m) {
  return {{m(0, 0), m(0, 1)}, {m(1, 0), m(1, 1)}};
}

}  // namespace

PYBIND11_MODULE(_spinor_forge, m) {
  m.doc() = "Clifford algebras, spinor ideals and spacetime frame checks";
  m.attr("__version__") = tool_version();
  m.attr("SCHEMA_VERSION") = kSchemaVersion;

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<dsl::ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<dsl::DomainError>(m, "DomainError", PyExc_ArithmeticError);

  m.def(
      "geometric_product",
      [](int p, int q, const std::vector<double>& a, const std::vector<double>& b) {
        const Signature sig(p, q);
        return to_list(from_list(sig, a) * from_list(sig, b));
      },
      py::arg("p"), py::arg("q"), py::arg("a"), py::arg("b"),
      "Product in Cl(p,q); coefficients are indexed by blade bitmask.");

  m.def(
      "sta_element",
      [](const std::string& name, int index) {
        if (name == "m") return to_list(sta::m(index));
        if (name == "m_up") return to_list(sta::m_up(index));
        if (name == "sigma") return to_list(sta::sigma(index));
        if (name == "sigma_up") return to_list(sta::sigma_up(index));
        if (name == "pseudoscalar") return to_list(sta::pseudoscalar());
        if (name == "e_plus") return to_list(sta::e_plus());
        throw py::value_error("unknown element '" + name + "'");
      },
      py::arg("name"), py::arg("index") = 0);

  m.def(
      "rep", [](const std::vector<double>& even) { return to_rows(rep(from_list(sta::signature(), even))); },
      py::arg("even"), "2x2 complex matrix image of an even element of Cl(1,3).");

  m.def("quaternion_orientation_sign", &quaternion_orientation_sign);

  m.def(
      "eval_expression",
      [](const std::string& source, const std::array<double, 4>& x) { return dsl::eval(dsl::parse(source), x); },
      py::arg("source"), py::arg("x"));
  m.def(
      "print_expression", [](const std::string& source) { return dsl::print(dsl::parse(source)); },
      py::arg("source"));

  m.def("builtin_spacetimes", &builtin_spacetime_names);

  m.def(
      "selftest_json",
      [](std::uint64_t seed, bool inject_fault) {
        RunConfig cfg;
        cfg.command = "selftest";
        cfg.seed = seed;
        cfg.inject_fault = inject_fault;
        py::gil_scoped_release release;
        const CommandResult r = cmd_algebra_selftest(cfg);
        return std::make_pair(dump_json(r.document), r.exit_code);
      },
      py::arg("seed") = 1, py::arg("inject_fault") = false);

  m.def(
      "report_json",
      [](const std::string& spacetime, const std::string& tetrad, double mass, int points, std::uint64_t seed,
         double tol_alg, double tol_geo, const std::string& config) {
        RunConfig cfg;
        cfg.command = "report";
        cfg.spacetime = spacetime;
        cfg.tetrad = tetrad;
        cfg.mass = mass;
        cfg.points = points;
        cfg.seed = seed;
        cfg.tol.alg = tol_alg;
        cfg.tol.geo = tol_geo;
        cfg.config_path = config;
        py::gil_scoped_release release;
        const CommandResult r = cmd_report(cfg);
        return std::make_pair(dump_json(r.document), r.exit_code);
      },
      py::arg("spacetime") = "minkowski", py::arg("tetrad") = "default", py::arg("mass") = 1.0,
      py::arg("points") = 64, py::arg("seed") = 1, py::arg("tol_alg") = 1e-9, py::arg("tol_geo") = 1e-5,
      py::arg("config") = "");
}
