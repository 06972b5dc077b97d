#include "vfa/cli.hpp"
#include "vfa/reconstruct.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;

namespace {

vfa::PresentationPtr presentation(const std::string& preset, vfa::Weight max_weight) {
  auto P = vfa::builtin_presentation(preset, max_weight);
  if (!P) throw vfa::Error("unknown presentation \"" + preset + "\"");
  return P;
}

}  // namespace

PYBIND11_MODULE(_vfa, m) {
  m.doc() = "Jet vertex algebras and locally constant factorization algebras on C";
  py::register_exception<vfa::Error>(m, "VfaError", PyExc_ValueError);

  m.def(
      "weight_dimensions",
      [](std::vector<std::string> gens, const std::vector<std::string>& rels, vfa::Weight max_weight) {
        return vfa::AlgebraPresentation::parse(std::move(gens), rels, max_weight).weight_dimensions();
      },
      py::arg("generators"), py::arg("relations") = std::vector<std::string>{}, py::arg("max_weight"));

  m.def(
      "mode",
      [](const std::string& a, const std::string& b, int n, const std::string& preset, vfa::Weight max_weight) {
        vfa::VertexAlgebra V(presentation(preset, max_weight));
        const auto& P = V.presentation();
        return P.str(V.mode(P.parse_element(a), P.parse_element(b), n));
      },
      py::arg("a"), py::arg("b"), py::arg("n"), py::arg("preset") = "jet-x", py::arg("max_weight") = 6);

  m.def(
      "reconstructed_mode",
      [](const std::string& a, const std::string& b, int n, const std::string& preset, vfa::Weight max_weight) {
        vfa::VertexAlgebra V(presentation(preset, max_weight));
        const auto& P = V.presentation();
        return P.str(vfa::mode_of(P.parse_element(a), P.parse_element(b), n, V));
      },
      py::arg("a"), py::arg("b"), py::arg("n"), py::arg("preset") = "jet-x", py::arg("max_weight") = 6);

  m.def(
      "run_command_json",
      [](const std::string& command, const std::string& params) {
        vfa::Json p = params.empty() ? vfa::Json::object() : vfa::Json::parse(params);
        py::gil_scoped_release release;
        return vfa::run_command(command, p).dump();
      },
      py::arg("command"), py::arg("params") = "{}");

  m.def("presets", &vfa::builtin_presentation_names);
}
