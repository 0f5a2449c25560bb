// Copyright 2026 The gme-maps Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "gme/detector.hpp"
#include "gme/io.hpp"

namespace py = pybind11;

namespace {

py::object to_py(const gme::io::json& doc) { return py::module_::import("json").attr("loads")(doc.dump()); }

gme::MpOperator on_map_dims(const gme::GmeMap& m, const gme::Matrix& rho) { return {m.dims, rho}; }

}  // namespace

PYBIND11_MODULE(_core, mod) {
  mod.doc() = "Lifted positive maps for genuine multipartite entanglement detection";

  py::register_exception<gme::Error>(mod, "GmeError", PyExc_ValueError);

  // states
  mod.def("ghz", [](int n, int d) { return gme::ghz(n, d).amplitudes(); }, py::arg("n"), py::arg("d") = 2);
  mod.def("w_state", [](int n) { return gme::w_state(n).amplitudes(); }, py::arg("n"));
  mod.def(
      "ppt_family",
      [](double l1, std::optional<double> l2, std::optional<double> l3) {
        return gme::ppt_family({l1, l2.value_or(l1), l3.value_or(l1)}).matrix();
      },
      py::arg("lambda1"), py::arg("lambda2") = py::none(), py::arg("lambda3") = py::none());
  mod.def(
      "depolarized",
      [](const gme::Matrix& rho, double p) {
        const auto side = static_cast<int>(rho.rows());
        return gme::depolarized(gme::MpOperator(gme::SiteDims{side}, rho), p).matrix();
      },
      py::arg("rho"), py::arg("p"));
  mod.def(
      "partial_transpose",
      [](const gme::Matrix& rho, const std::vector<int>& dims, const std::vector<int>& parties) {
        const gme::SiteDims sd(dims);
        return gme::partial_transpose({sd, rho}, gme::PartySubset(parties, sd.parties())).matrix();
      },
      py::arg("rho"), py::arg("dims"), py::arg("parties"));
  mod.def(
      "bipartitions",
      [](int n) {
        std::vector<std::vector<int>> out;
        for (const auto& a : gme::bipartitions(n)) out.push_back(a.members());
        return out;
      },
      py::arg("n"));

  // maps
  py::class_<gme::GmeMap>(mod, "GmeMap")
      .def_readonly("label", &gme::GmeMap::label)
      .def_property_readonly("dims", [](const gme::GmeMap& m) { return m.dims.values(); })
      .def_property_readonly("claims",
                             [](const gme::GmeMap& m) {
                               py::dict out;
                               for (const auto& c : m.claims) out[py::str(c.key)] = c.value;
                               return out;
                             })
      .def("apply", [](const gme::GmeMap& m, const gme::Matrix& rho) { return gme::apply(m.expr, rho); })
      .def("dual_apply", [](const gme::GmeMap& m, const gme::Matrix& s) { return gme::apply(gme::dual(m.expr), s); })
      .def("to_json", [](const gme::GmeMap& m) { return to_py(gme::io::to_json(m.expr)); })
      .def("__repr__", [](const gme::GmeMap& m) { return "<GmeMap " + m.label + " on " + m.dims.to_string() + ">"; });

  mod.def("catalog_ids", &gme::catalog_ids);
  mod.def("catalog_map", &gme::catalog_map, py::arg("id"), py::arg("n") = 3, py::arg("d") = 2);
  mod.def(
      "phi_T", [](int n, int d, std::optional<double> c) { return gme::phi_T(n, d, c); }, py::arg("n") = 3,
      py::arg("d") = 2, py::arg("compensation") = py::none());
  mod.def(
      "witness_to_map",
      [](const gme::Matrix& w, const std::vector<int>& dims) { return gme::witness_to_map({gme::SiteDims(dims), w}); },
      py::arg("w"), py::arg("dims"));
  mod.def(
      "map_to_witness",
      [](const gme::GmeMap& m, const gme::Vector& psi) { return gme::map_to_witness(m, {m.dims, psi}).matrix(); },
      py::arg("map"), py::arg("psi"));
  mod.def(
      "map_from_json",
      [](const py::object& doc, const std::vector<int>& dims) {
        const auto text = py::module_::import("json").attr("dumps")(doc).cast<std::string>();
        const gme::MapExpr expr = gme::io::map_from_json(gme::io::json::parse(text));
        const gme::SiteDims sd(dims);
        if (sd.total() != expr.dim()) throw gme::Error("map_from_json: dims do not match the map dimension");
        return gme::GmeMap{expr, sd, "json", {}};
      },
      py::arg("doc"), py::arg("dims"));

  mod.def(
      "estimate_mu",
      [](const std::string& primitive, int d, int samples, std::uint64_t seed, int companion) {
        gme::MapExpr m = primitive == "transpose"     ? gme::transpose_map(static_cast<std::size_t>(d))
                         : primitive == "reduction"   ? gme::reduction_map(d)
                         : primitive == "breuer-hall" ? gme::breuer_hall_map(d)
                         : primitive == "choi"        ? gme::choi_map(d)
                         : primitive == "identity"    ? gme::identity_map(static_cast<std::size_t>(d))
                                                      : throw gme::Error("unknown primitive '" + primitive + "'");
        return to_py(gme::io::to_json(gme::estimate_mu(m, samples, seed, companion)));
      },
      py::arg("primitive"), py::arg("d"), py::arg("samples") = 1000, py::arg("seed") = 0, py::arg("companion") = 0);

  // detection
  mod.def(
      "detect",
      [](const gme::GmeMap& m, const gme::Matrix& rho, double tol) {
        return to_py(gme::io::to_json(gme::detect(m, on_map_dims(m, rho), tol)));
      },
      py::arg("map"), py::arg("rho"), py::arg("tol") = gme::kDefaultTolerance);
  mod.def(
      "noise_threshold",
      [](const gme::GmeMap& m, const gme::Matrix& target, double tol) {
        const gme::Matrix rho = target.cols() == 1 ? gme::Matrix(target * target.adjoint() / target.squaredNorm()) : target;
        return to_py(gme::io::to_json(gme::noise_threshold(m, on_map_dims(m, rho), tol)));
      },
      py::arg("map"), py::arg("target"), py::arg("tol") = gme::kDefaultTolerance);
  mod.def(
      "lambda_scan",
      [](const gme::GmeMap& m, const std::vector<double>& grid, double noise, double tol, int threads) {
        return to_py(gme::io::to_json(gme::lambda_scan(m, grid, noise, tol, threads)));
      },
      py::arg("map"), py::arg("grid"), py::arg("noise") = 0.0, py::arg("tol") = gme::kDefaultTolerance,
      py::arg("threads") = 1);
  mod.def(
      "verify_biseparable_positivity",
      [](const gme::GmeMap& m, std::size_t samples, int mixtures, std::uint64_t seed, double tol, int threads) {
        gme::VerifyReport r;
        {
          py::gil_scoped_release release;
          r = gme::verify_biseparable_positivity(m, samples, mixtures, seed, tol, threads);
        }
        return to_py(gme::io::to_json(r));
      },
      py::arg("map"), py::arg("samples") = 1000, py::arg("mixtures") = 4, py::arg("seed") = 0,
      py::arg("tol") = gme::kDefaultTolerance, py::arg("threads") = 1);
  mod.def(
      "ppt_check",
      [](const gme::Matrix& rho, const std::vector<int>& dims) {
        return to_py(gme::io::to_json(gme::ppt_check({gme::SiteDims(dims), rho})));
      },
      py::arg("rho"), py::arg("dims"));
}
