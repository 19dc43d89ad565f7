#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdint>
#include <string>
#include <vector>

#include "slotsim/engine.hpp"
#include "slotsim/error.hpp"
#include "slotsim/metrics.hpp"
#include "slotsim/output.hpp"
#include "slotsim/protocol.hpp"
#include "slotsim/scenario.hpp"

namespace py = pybind11;
using namespace slotsim;

PYBIND11_MODULE(_slotsim, m) {
  m.doc() = "Discrete-event simulator of beacon-synchronized slotted radio networks";
  m.attr("__version__") = "1.0.0";

  py::register_exception<Error>(m, "SimError", PyExc_RuntimeError);
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

  m.def(
      "list_presets", [] { return preset_names(); },
      "Names of the bundled scenarios");

  m.def(
      "preset_text", [](const std::string& name) { return preset_text(name); },
      py::arg("name"), "JSON text of a bundled scenario");

  m.def(
      "run_preset",
      [](const std::string& name, std::uint64_t seed) {
        Scenario sc = load_preset(name);
        if (seed != 0) sc.seed = seed;
        return report_json_text(run_scenario(sc));
      },
      py::arg("name"), py::arg("seed") = 0, py::call_guard<py::gil_scoped_release>(),
      "Run a bundled scenario (seed 0 keeps the preset's own); returns the report as JSON text");

  m.def(
      "run_scenario_json",
      [](const std::string& text, bool strict) {
        LoadResult r = load_scenario_text(text, strict);
        return report_json_text(run_scenario(r.scenario));
      },
      py::arg("text"), py::arg("strict") = false, py::call_guard<py::gil_scoped_release>(),
      "Run a scenario given as JSON text; returns the report as JSON text");

  m.def(
      "validate_scenario_json",
      [](const std::string& text, bool strict) { return load_scenario_text(text, strict).warnings; },
      py::arg("text"), py::arg("strict") = false,
      "Validate scenario JSON; returns warnings, raises ConfigError on errors");

  m.def(
      "normalize_scenario_json",
      [](const std::string& text) { return dump_scenario(load_scenario_text(text).scenario); },
      py::arg("text"), "Normalized scenario JSON with every field materialized");

  m.def(
      "percentile",
      [](std::vector<std::int64_t> samples, double p) {
        return percentile(std::move(samples), p);
      },
      py::arg("samples"), py::arg("p"), "Nearest-rank percentile, p in (0, 100]");

  m.def(
      "ptp_update",
      [](std::int64_t t1, std::int64_t s00k, std::int64_t sijl, std::int64_t t02) {
        const PtpResult r = ptp_update(t1, s00k, sijl, t02);
        py::dict out;
        out["d_raw"] = r.d_raw;
        out["d_est"] = r.d_est;
        out["o_est"] = r.o_est;
        return out;
      },
      py::arg("t1"), py::arg("s00k"), py::arg("sijl"), py::arg("t02"),
      "One delay/offset update from a beacon measurement and an echoed arrival");

  m.def("parse_duration", &parse_duration, py::arg("text"),
        "Duration text with ns/us/ms/s suffix to nanoseconds");
}
