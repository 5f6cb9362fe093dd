#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "fredsing/classify.hpp"
#include "fredsing/commands.hpp"
#include "fredsing/config.hpp"
#include "fredsing/errors.hpp"
#include "fredsing/gallery.hpp"
#include "fredsing/report.hpp"

namespace py = pybind11;
using namespace fredsing;

namespace {

using Command = int (*)(const AnalysisConfig&, const OutputOptions&, std::ostream&, std::ostream&);

// Runs a command on a JSON config; returns (exit code, report text, diagnostics).
py::tuple run(Command cmd, const std::string& config_json) {
  const AnalysisConfig config = parse_config(nlohmann::ordered_json::parse(config_json));
  std::ostringstream out, err;
  int code = 0;
  {
    py::gil_scoped_release release;
    code = cmd(config, OutputOptions{true, false}, out, err);
  }
  return py::make_tuple(code, out.str(), err.str());
}

}  // namespace

PYBIND11_MODULE(_fredsing, m) {
  m.doc() = "Classification of simple singularities of smooth maps R^n -> R^n";

  py::register_exception<Error>(m, "FredsingError", PyExc_RuntimeError);

  m.def("gallery_names", &gallery_names);
  m.def("gallery_catalogue", &gallery_catalogue);
  m.def("gallery_fixtures", [](const std::string& name, const GalleryParams& params) {
    const GalleryEntry e = gallery_map(name, params);
    py::list out;
    for (const GalleryFixture& f : e.expected)
      out.append(py::make_tuple(f.description, f.point, to_string(f.expected)));
    return out;
  }, py::arg("name"), py::arg("params") = GalleryParams{});

  m.def("classify_gallery_point",
        [](const std::string& name, const GalleryParams& params, const Eigen::VectorXd& point, int k_cap,
           const std::string& route) {
          const GalleryEntry e = gallery_map(name, params);
          ClassifyOptions opt;
          opt.k_cap = k_cap;
          opt.route = parse_route(route);
          return to_json(classify_point(e.model, point, opt)).dump();
        },
        py::arg("name"), py::arg("params"), py::arg("point"), py::arg("k_cap") = kDefaultKCap,
        py::arg("route") = "both");

  m.def("run_classify", [](const std::string& c) { return run(&cmd_classify, c); });
  m.def("run_verify", [](const std::string& c) { return run(&cmd_verify, c); });
  m.def("run_strata", [](const std::string& c) { return run(&cmd_strata, c); });
  m.def("run_bvp", [](const std::string& c) { return run(&cmd_bvp, c); });

  m.attr("EXIT_DECISIVE") = kExitDecisive;
  m.attr("EXIT_ERROR") = kExitError;
  m.attr("EXIT_INDETERMINATE") = kExitIndeterminate;
  m.attr("EXIT_CHECK_FAILED") = kExitCheckFailed;
  m.attr("CONFIG_SCHEMA") = kConfigSchema;
  m.attr("REPORT_SCHEMA") = kReportSchema;
}
