#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "wicklab/cli_docs.h"
#include "wicklab/errors.h"
#include "wicklab/experiments.h"
#include "wicklab/heisenberg.h"
#include "wicklab/quantize.h"
#include "wicklab/symbols.h"
#include "wicklab/version.h"

namespace py = pybind11;
using namespace wicklab;

namespace {

PolySymbol sym(const std::string& text, int n) { return parse_symbol(text, n); }

// Experiment config from a plain dict, through the same parser as config files.
ExperimentConfig config_from_dict(const std::string& name, const py::dict& d) {
  const py::module_ json = py::module_::import("json");
  Json doc = Json::parse(py::str(json.attr("dumps")(d)).cast<std::string>());
  doc["schema"] = kConfigSchema;
  doc["experiment"] = name;
  return parse_config(doc);
}

py::object to_py(const Json& j) {
  const py::module_ json = py::module_::import("json");
  return json.attr("loads")(j.dump());
}

}  // namespace

PYBIND11_MODULE(_wicklab, m) {
  m.doc() = "Truncated Bargmann-Fock quantization lab";
  m.attr("__version__") = version_string();

  py::register_exception<UsageError>(m, "UsageError", PyExc_ValueError);
  py::register_exception<ResourceError>(m, "ResourceError", PyExc_MemoryError);
  py::register_exception<QuadratureError>(m, "QuadratureError", PyExc_ArithmeticError);
  py::register_exception<AccuracyError>(m, "AccuracyError", PyExc_ArithmeticError);

  m.def(
      "basis",
      [](int n, int N) {
        std::vector<std::vector<int>> out;
        for (const auto& a : enumerate_basis({n, N})) out.push_back(a.exponents());
        return out;
      },
      py::arg("n"), py::arg("degree_max"));

  m.def(
      "normalize_symbol", [](const std::string& s, int n) { return format_symbol(sym(s, n)); }, py::arg("symbol"),
      py::arg("n") = 0);
  m.def(
      "wick_transform", [](const std::string& s, int n) { return format_symbol(wick_transform(sym(s, n))); },
      py::arg("symbol"), py::arg("n") = 0);
  m.def(
      "antiwick_transform", [](const std::string& s, int n) { return format_symbol(antiwick_transform(sym(s, n))); },
      py::arg("symbol"), py::arg("n") = 0);
  m.def(
      "compose_antiwick",
      [](const std::string& b, const std::string& a, int n) {
        return format_symbol(compose_antiwick(sym(b, n), sym(a, n)));
      },
      py::arg("b"), py::arg("a"), py::arg("n") = 0);

  m.def(
      "antiwick_quantize",
      [](const std::string& s, int N, int n) {
        const PolySymbol b = sym(s, n);
        return antiwick_quantize_poly(b, {b.n(), N}).op.matrix();
      },
      py::arg("symbol"), py::arg("degree_max"), py::arg("n") = 0);
  m.def(
      "wick_quantize",
      [](const std::string& s, int N, int n) {
        const PolySymbol f = sym(s, n);
        return wick_quantize(f, {f.n(), N}).matrix();
      },
      py::arg("symbol"), py::arg("degree_max"), py::arg("n") = 0);
  m.def(
      "radial_power_spectrum",
      [](int n, double theta, int N) { return radial_spectrum(RadialSymbol::power(n, theta), N, 1e-12).eigenvalues; },
      py::arg("n"), py::arg("theta"), py::arg("degree_max"));
  m.def(
      "radial_bump_spectrum",
      [](int n, double support_t, int N) {
        return radial_spectrum(RadialSymbol::bump(n, support_t), N, 1e-12).eigenvalues;
      },
      py::arg("n"), py::arg("support_t"), py::arg("degree_max"));

  m.def(
      "translation",
      [](const std::vector<cplx>& Y, int N) { return translation_op(Y, {int(Y.size()), N}).matrix(); },
      py::arg("Y"), py::arg("degree_max"));
  m.def(
      "group_law_defect",
      [](const std::vector<cplx>& Y1, const std::vector<cplx>& Y2, int N, int block, bool flip) {
        return group_law_defect(Y1, Y2, {int(Y1.size()), N}, block, flip);
      },
      py::arg("Y1"), py::arg("Y2"), py::arg("degree_max"), py::arg("block"), py::arg("flip_sigma") = false);

  m.def(
      "zone_planner",
      [](double lambda, double d, double C, double c0, double C0) {
        const ZoneReport r = zone_planner({lambda, d, C, c0, C0});
        py::dict out;
        out["disjoint"] = r.ec_e2_disjoint;
        out["second_regime"] = r.second_regime;
        out["lhs"] = r.lhs;
        out["rhs"] = r.rhs;
        out["C1"] = r.C1;
        return out;
      },
      py::arg("Lambda"), py::arg("d"), py::arg("C") = 1.0, py::arg("c0") = 1.0, py::arg("C0") = 2.0);

  m.def(
      "run_experiment",
      [](const std::string& name, const py::dict& cfg) { return to_py(run_experiment(config_from_dict(name, cfg)).to_json()); },
      py::arg("name"), py::arg("config") = py::dict());
  m.def("repro_index", &repro_index);
  m.def("experiment_names", &experiment_names);
}
