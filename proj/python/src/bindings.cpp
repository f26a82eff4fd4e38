#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "soergel/cancel.hpp"
#include "soergel/verify.hpp"

namespace py = pybind11;
using namespace soergel;

namespace {

CoxeterPtr group(const std::string& type) { return CoxeterSystem::build(type); }

RunOptions options(int jobs, double timeout) {
  RunOptions o;
  o.jobs = jobs;
  o.timeout_per_cell = timeout;
  o.timing = false;
  return o;
}

IntRange range(std::pair<int, int> r) {
  if (r.first > r.second) throw std::invalid_argument("empty range");
  return {r.first, r.second};
}

}  // namespace

PYBIND11_MODULE(_soergel, m) {
  m.doc() = "Exact Soergel bimodule and Rouquier complex computations (reports as JSON text)";

  py::register_exception<Timeout>(m, "Timeout");

  py::class_<CoxeterSystem, std::shared_ptr<CoxeterSystem>>(m, "CoxeterSystem")
      .def(py::init([](const std::string& type) { return std::const_pointer_cast<CoxeterSystem>(group(type)); }),
           py::arg("type"))
      .def_property_readonly("type", &CoxeterSystem::type_name)
      .def_property_readonly("rank", &CoxeterSystem::rank)
      .def("__len__", &CoxeterSystem::size)
      .def("name", &CoxeterSystem::name)
      .def("length", &CoxeterSystem::length)
      .def("parse", [](const CoxeterSystem& w, const std::string& s) { return w.parse(s); })
      .def("bruhat_leq", &CoxeterSystem::bruhat_leq)
      .def("elements", [](const CoxeterSystem& w) { return w.bruhat_enumeration(); });

  m.def("graded_dim", &graded_dim, py::arg("nvars"), py::arg("degree"), "dimension of the degree-d part of R");

  m.def(
      "rouquier_formula",
      [](const std::string& type, const std::string& x, const std::string& y, std::pair<int, int> i_range,
         std::pair<int, int> d_range, int jobs, double timeout) {
        auto w = group(type);
        py::gil_scoped_release release;
        return rouquier_formula_report(*w, parse_elements(*w, x), parse_elements(*w, y), range(i_range),
                                       range(d_range), options(jobs, timeout))
            .to_json();
      },
      py::arg("type"), py::arg("x") = "all", py::arg("y") = "all", py::arg("i_range") = std::pair{-4, 4},
      py::arg("d_range") = std::pair{-2, 12}, py::arg("jobs") = 1, py::arg("timeout_per_cell") = 0.0);

  m.def(
      "delta_exact",
      [](const std::string& type, const std::string& ws, const std::string& complex, const std::string& side) {
        auto w = group(type);
        std::optional<Side> sd;
        if (side == "delta") sd = Side::Delta;
        else if (side == "nabla") sd = Side::Nabla;
        else if (!side.empty()) throw std::invalid_argument("side must be 'delta' or 'nabla'");
        if (complex != "F" && complex != "E") throw std::invalid_argument("complex must be 'F' or 'E'");
        py::gil_scoped_release release;
        return delta_exact_report(*w, parse_elements(*w, ws), complex == "F" ? Augmentation::F : Augmentation::E, sd,
                                  options(1, 0))
            .to_json();
      },
      py::arg("type"), py::arg("w") = "all", py::arg("complex") = "F", py::arg("side") = "");

  m.def(
      "almostsplit",
      [](const std::string& type, const std::string& x) {
        auto w = group(type);
        py::gil_scoped_release release;
        return almostsplit_report(*w, parse_elements(*w, x), options(1, 0)).to_json();
      },
      py::arg("type"), py::arg("x") = "all");

  m.def(
      "cohomology",
      [](const std::string& type, const std::string& word) {
        auto w = group(type);
        py::gil_scoped_release release;
        return cohomology_report(*w, BraidWord::parse(word, w->rank()), options(1, 0)).to_json();
      },
      py::arg("type"), py::arg("word"));

  m.def(
      "characters",
      [](const std::string& type, const std::string& word) {
        auto w = group(type);
        std::vector<int> letters;
        for (auto [s, e] : BraidWord::parse(word, w->rank()).letters) {
          if (e != 1) throw std::invalid_argument("characters takes a word without inverses");
          letters.push_back(s);
        }
        py::gil_scoped_release release;
        return characters_report(*w, letters).to_json();
      },
      py::arg("type"), py::arg("word"));

  m.def(
      "homdim",
      [](const std::string& type, const std::string& a, const std::string& b, std::pair<int, int> i_range,
         std::pair<int, int> d_range) {
        auto w = group(type);
        py::gil_scoped_release release;
        return homdim_report(*w, a, b, range(i_range), range(d_range), options(1, 0)).to_json();
      },
      py::arg("type"), py::arg("a"), py::arg("b"), py::arg("i_range") = std::pair{-4, 4},
      py::arg("d_range") = std::pair{-2, 12});
}
