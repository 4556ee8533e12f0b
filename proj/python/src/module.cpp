#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "semisym/analysis.hpp"
#include "semisym/corpus.hpp"
#include "semisym/report.hpp"
#include "semisym/spinor.hpp"

namespace py = pybind11;
using namespace semisym;

namespace {

const SamplePoint& find_point(const MetricFile& f, const std::string& name) {
  for (const auto& p : f.field.points())
    if (p.name == name) return p;
  throw py::key_error("no point named '" + name + "'");
}

NullRotation rotation_kind(const std::string& kind) {
  if (kind == "k") return NullRotation::AboutK;
  if (kind == "l") return NullRotation::AboutL;
  if (kind == "boost") return NullRotation::BoostSpin;
  throw py::value_error("rotation kind must be 'k', 'l' or 'boost'");
}

std::string analyze_json(const MetricFile& f, double tol, std::uint64_t seed, bool cross_validate,
                         std::optional<std::string> point) {
  AnalysisOptions opt;
  opt.tolerance.tol = tol;
  opt.seed = seed;
  opt.cross_validate = cross_validate;
  opt.point = std::move(point);
  return report_json(run_analysis(f, opt)).dump();
}

py::dict np_dict(const NPData& np) {
  py::dict d;
  d["psi"] = np.psi;
  d["phi"] = np.phi;
  d["R"] = np.R;
  return d;
}

}  // namespace

PYBIND11_MODULE(_semisym, m) {
  m.doc() = "Curvature, Newman-Penrose data and semi-symmetry checks";

  auto base = py::register_exception<MetricFileError>(m, "MetricFileError", PyExc_ValueError);
  py::register_exception<InvalidTetradError>(m, "InvalidTetradError", PyExc_ValueError);
  py::register_exception<MissingTetradError>(m, "MissingTetradError", PyExc_ValueError);
  py::register_exception<DegenerateMetricError>(m, "DegenerateMetricError", PyExc_ValueError);
  py::register_exception<TheoremViolationError>(m, "TheoremViolationError", PyExc_RuntimeError);
  py::register_exception<ParseError>(m, "ExpressionParseError", base.ptr());

  py::class_<MetricFile>(m, "MetricFile")
      .def_readonly("name", &MetricFile::name)
      .def_readonly("declared_static", &MetricFile::declared_static)
      .def_readonly("expect", &MetricFile::expect)
      .def_property_readonly("coordinates", [](const MetricFile& f) { return f.field.scope().coordinates(); })
      .def_property_readonly("points",
                             [](const MetricFile& f) {
                               py::dict d;
                               for (const auto& p : f.field.points()) d[py::str(p.name)] = p.coords;
                               return d;
                             })
      .def("__repr__", [](const MetricFile& f) { return "<MetricFile " + f.name + ">"; });

  m.def("load_metric_file", &load_metric_file, py::arg("path"),
        "Load a metric file, or a built-in entry given as 'corpus:NAME'.");
  m.def("parse_metric_file", &parse_metric_file, py::arg("text"), py::arg("name") = "metric");
  m.def("corpus_names", [] {
    std::vector<std::string> out;
    for (const auto& e : builtin_corpus()) out.emplace_back(e.name);
    return out;
  });

  m.def("analyze_json", &analyze_json, py::arg("file"), py::arg("tol") = 1e-9, py::arg("seed") = 0,
        py::arg("cross_validate") = false, py::arg("point") = std::nullopt,
        py::call_guard<py::gil_scoped_release>());

  m.def("np_scalars", [](const MetricFile& f, const std::string& point) {
    const SamplePoint& p = find_point(f, point);
    return np_dict(np_scalars(curvature(f.field, p), tetrad_at(f.field, p)));
  }, py::arg("file"), py::arg("point"), "NP scalars in the declared tetrad.");

  m.def("petrov_type", [](const WeylScalars& psi, double tol) { return std::string(to_string(petrov_classify(psi, tol))); },
        py::arg("psi"), py::arg("tol") = 1e-9);
  m.def("petrov_type_by_roots",
        [](const WeylScalars& psi, double gap) { return std::string(to_string(petrov_classify_by_roots(psi, gap))); },
        py::arg("psi"), py::arg("gap") = 1e-3);
  m.def("pnd_multiplicities", &pnd_multiplicities, py::arg("psi"), py::arg("gap") = 1e-3);
  m.def("null_rotate",
        [](const WeylScalars& psi, Complex param, const std::string& kind) {
          return null_rotate(psi, param, rotation_kind(kind));
        },
        py::arg("psi"), py::arg("param"), py::arg("kind"));

  m.def("weyl_condition_1", [](const WeylScalars& psi, double R) { return check_weyl_condition_1(weyl_spinor(psi), R); },
        py::arg("psi"), py::arg("R"));
  m.def("contracted_condition",
        [](const WeylScalars& psi, double R) { return check_contracted_condition(weyl_spinor(psi), R); },
        py::arg("psi"), py::arg("R"));
  m.def("weyl_condition_2",
        [](const WeylScalars& psi, const PhiMatrix& phi) {
          return check_weyl_condition_2(weyl_spinor(psi), ricci_spinor(phi));
        },
        py::arg("psi"), py::arg("phi"));
  m.def("ricci_commutator",
        [](const WeylScalars& psi, const PhiMatrix& phi, double R) {
          return check_ricci_commutator(weyl_spinor(psi), ricci_spinor(phi), R);
        },
        py::arg("psi"), py::arg("phi"), py::arg("R"));
  m.def("condition_data", [](const std::string& branch, double amplitude) {
    if (branch != "N" && branch != "D") throw py::value_error("branch must be 'N' or 'D'");
    const ConditionData d = make_condition_data(branch == "N" ? ConditionBranch::N : ConditionBranch::D, amplitude);
    NPData np;
    np.psi = weyl_scalars(d.psi);
    np.phi = ricci_scalars(d.phi);
    np.R = d.R;
    return np_dict(np);
  }, py::arg("branch"), py::arg("amplitude") = 1.0);
}
