// Copyright 2026 The Regulus Authors
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

// Python module regulus._core.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>

#include "regulus/fejer.hpp"
#include "regulus/minnorm.hpp"
#include "regulus/runner.hpp"
#include "regulus/spaces.hpp"
#include "regulus/trees.hpp"

namespace py = pybind11;

namespace {

using regulus::Nat;
using regulus::Rational;

py::object to_fraction(const Rational& q) {
  static py::object fraction = py::module_::import("fractions").attr("Fraction");
  return fraction(py::int_(py::str(q.numerator().get_str())), py::int_(py::str(q.denominator().get_str())));
}

Rational from_fraction(const py::handle& value) {
  const py::object f = py::module_::import("fractions").attr("Fraction")(value);
  return Rational::parse(py::str(f.attr("numerator")).cast<std::string>() + "/" +
                         py::str(f.attr("denominator")).cast<std::string>());
}

std::optional<regulus::ProblemKind> kind_arg(const std::optional<std::string>& kind) {
  if (!kind) return std::nullopt;
  const auto parsed = regulus::parse_problem_kind(*kind);
  if (!parsed) throw regulus::ParseError("unknown problem kind '" + *kind + "'");
  return parsed;
}

regulus::RunOptions run_options(std::optional<Nat> depth, const std::optional<std::string>& out, bool verify) {
  regulus::RunOptions options;
  options.depth = depth;
  options.verify = verify;
  if (out) {
    if (*out == "csv") {
      options.format = regulus::OutputFormat::kCsv;
    } else if (*out == "json") {
      options.format = regulus::OutputFormat::kJson;
    } else {
      throw regulus::ParseError("out must be csv or json");
    }
  }
  return options;
}

regulus::BinaryTree described_tree(Nat depth, const std::string& bitmap, const std::string& tail) {
  const std::string text = "[tree]\ndepth = " + std::to_string(depth) + "\nbitmap = " + bitmap + "\ntail = " + tail + "\n";
  return regulus::build_tree(regulus::ProblemSpec::parse(text, regulus::ProblemKind::kLeftmost));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Certified zero finding, minimal-norm zeros, leftmost tree paths and Fejer rates.";

  auto base = py::register_exception<regulus::Error>(m, "RegulusError", PyExc_RuntimeError);
  py::register_exception<regulus::ParseError>(m, "ParseError", base.ptr());
  py::register_exception<regulus::SearchExhausted>(m, "SearchExhausted", base.ptr());
  py::register_exception<regulus::EmptyAdmissibleSet>(m, "EmptyAdmissibleSet", base.ptr());
  py::register_exception<regulus::NoBranchAtDepth>(m, "NoBranchAtDepth", base.ptr());
  py::register_exception<regulus::EvaluatorNotConvergent>(m, "EvaluatorNotConvergent", base.ptr());
  py::register_exception<regulus::GridTooCoarse>(m, "GridTooCoarse", base.ptr());

  py::class_<regulus::RunResult>(m, "RunResult")
      .def_property_readonly("kind", [](const regulus::RunResult& r) { return std::string(to_string(r.kind)); })
      .def_readonly("depth", &regulus::RunResult::depth)
      .def_readonly("table", &regulus::RunResult::table)
      .def_readonly("certificate", &regulus::RunResult::certificate)
      .def_readonly("divergences", &regulus::RunResult::divergences)
      .def_property_readonly("exit_code", &regulus::RunResult::exit_code);

  m.def(
      "run",
      [](const std::string& text, std::optional<std::string> kind, std::optional<Nat> depth,
         std::optional<std::string> out, bool verify) {
        const regulus::ProblemSpec spec = regulus::ProblemSpec::parse(text, kind_arg(kind));
        const regulus::RunOptions options = run_options(depth, out, verify);
        py::gil_scoped_release release;
        return regulus::run(spec, options);
      },
      py::arg("text"), py::kw_only(), py::arg("kind") = py::none(), py::arg("depth") = py::none(),
      py::arg("out") = py::none(), py::arg("verify") = false,
      "Runs a problem given as problem-file text.");
  m.def(
      "run_file",
      [](const std::string& path, std::optional<std::string> kind, std::optional<Nat> depth,
         std::optional<std::string> out, bool verify) {
        const regulus::ProblemSpec spec = regulus::ProblemSpec::load(path, kind_arg(kind));
        const regulus::RunOptions options = run_options(depth, out, verify);
        py::gil_scoped_release release;
        return regulus::run(spec, options);
      },
      py::arg("path"), py::kw_only(), py::arg("kind") = py::none(), py::arg("depth") = py::none(),
      py::arg("out") = py::none(), py::arg("verify") = false);

  m.def("exit_code_for", [](const std::string& name) {
    if (name == "SearchExhausted") return int{regulus::kExitSearchExhausted};
    if (name == "EmptyAdmissibleSet") return int{regulus::kExitEmptyAdmissibleSet};
    if (name == "NoBranchAtDepth") return int{regulus::kExitNoBranchAtDepth};
    if (name == "ParseError") return int{regulus::kExitParse};
    return int{regulus::kExitFailure};
  });

  m.def("dyadic_point", [](Nat i) { return to_fraction(regulus::dyadic_point(i)); }, py::arg("index"));
  m.def("dyadic_index", [](const py::object& x) { return regulus::dyadic_index(from_fraction(x)); }, py::arg("x"));
  m.def(
      "hilbert_uniqueness_modulus",
      [](Nat norm_bound, Nat k) { return regulus::hilbert_uniqueness_modulus(norm_bound)(k); },
      py::arg("norm_bound"), py::arg("k"));

  m.def(
      "leftmost_iteration",
      [](Nat depth, const std::string& bitmap, const std::string& tail, Nat k) {
        return regulus::leftmost_iteration(described_tree(depth, bitmap, tail), k).to_string();
      },
      py::arg("depth"), py::arg("bitmap"), py::arg("tail"), py::arg("k"));
  m.def(
      "brute_tree_modulus",
      [](Nat depth, const std::string& bitmap, const std::string& tail, Nat truncation_depth) {
        const regulus::TreeRegularityModulus rho =
            regulus::brute_tree_modulus(described_tree(depth, bitmap, tail), truncation_depth);
        std::vector<Nat> values;
        for (Nat k = 0; k <= truncation_depth; ++k) values.push_back(rho(k));
        return values;
      },
      py::arg("depth"), py::arg("bitmap"), py::arg("tail"), py::arg("truncation_depth"),
      "Values rho(0..truncation_depth) of the least tree modulus seen from that depth.");

  m.def(
      "fixture_iterates",
      [](Nat count) {
        const regulus::ExactIteration it{regulus::MonotoneSequenceFixture{}};
        py::list out;
        for (Nat n = 0; n < count; ++n) out.append(to_fraction(it.x(n)));
        return out;
      },
      py::arg("count"), "Exact iterates x_0 .. x_{count-1} of the default monotone-sequence fixture.");
  m.def(
      "fixture_residuals",
      [](Nat count) {
        const regulus::ExactIteration it{regulus::MonotoneSequenceFixture{}};
        py::list out;
        for (Nat n = 0; n < count; ++n) out.append(to_fraction(it.residual(n)));
        return out;
      },
      py::arg("count"));

  m.def(
      "decimal", [](const py::object& q, int digits) { return regulus::decimal(from_fraction(q), digits); },
      py::arg("q"), py::arg("digits") = 12);
}
