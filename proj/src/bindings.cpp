// Python bindings: a thin, JSON-string-oriented veneer over the C++ core.
// Documents cross the boundary in the same formats the CLI reads and writes,
// so everything stays exact (rational coordinates as "p/q" strings).

#include "augmatch/compiler.hpp"
#include "augmatch/cubic.hpp"
#include "augmatch/formula.hpp"
#include "augmatch/gadgets.hpp"
#include "augmatch/instance.hpp"
#include "augmatch/json_io.hpp"
#include "augmatch/solver.hpp"
#include "augmatch/svg.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace py = pybind11;
using namespace augmatch;

namespace {

const char* decision_name(Decision d) {
  switch (d) {
    case Decision::Augmentable: return "AUGMENTABLE";
    case Decision::NotAugmentable: return "NOT_AUGMENTABLE";
    case Decision::Timeout: return "TIMEOUT";
  }
  return "?";
}

SearchLimits make_limits(std::uint64_t max_nodes, std::uint64_t max_time_ms) {
  SearchLimits l;
  l.max_nodes = max_nodes;
  l.max_time_ms = max_time_ms;
  return l;
}

py::dict result_dict(const SolveResult& r) {
  py::dict d;
  d["decision"] = decision_name(r.decision);
  d["witness"] = r.witness ? py::object(py::str(augmentation_to_json(*r.witness)))
                           : py::object(py::none());
  d["nodes"] = r.stats.nodes_explored;
  d["elapsed_ms"] = r.stats.elapsed_ms;
  return d;
}

std::vector<Pt> to_points(const std::vector<std::pair<long long, long long>>& raw) {
  std::vector<Pt> pts;
  pts.reserve(raw.size());
  for (const auto& [x, y] : raw) pts.push_back(Pt{Rat(x), Rat(y)});
  return pts;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() =
      "Geometric matching-augmentation workbench: formula-to-instance compiler, "
      "exact solvers, verifiers, and constructive matchers.";

  // ---- formulas ----------------------------------------------------------
  m.def(
      "parse_formula",
      [](const std::string& text) { return serialize_formula(parse_formula(text)); },
      py::arg("text"), "Parse a formula document and return its canonical serialization.");
  m.def(
      "random_formula",
      [](int n, int m_, std::uint64_t seed) { return serialize_formula(random_formula(n, m_, seed)); },
      py::arg("variables"), py::arg("clauses"), py::arg("seed"),
      "Deterministic random formula, serialized.");
  m.def(
      "brute_force_assignments",
      [](const std::string& text) {
        std::vector<std::vector<bool>> out;
        for (const Assignment& a : brute_force_1in3(parse_formula(text))) out.push_back(a.values);
        return out;
      },
      py::arg("text"), "All satisfying assignments under exactly-one-true semantics.");
  m.def(
      "satisfies",
      [](const std::string& text, const std::vector<bool>& values) {
        Assignment a;
        a.values = values;
        return satisfies_1in3(parse_formula(text), a);
      },
      py::arg("text"), py::arg("values"), "Exactly-one-true check for one assignment.");

  // ---- compile / solve / verify ------------------------------------------
  m.def(
      "compile_formula",
      [](const std::string& text) {
        CompiledInstance ci = compile(parse_formula(text));
        return py::make_tuple(instance_to_json(ci.instance), provenance_to_json(ci));
      },
      py::arg("text"), "Compile a formula; returns (instance_json, provenance_json).");
  m.def(
      "solve",
      [](const std::string& instance_json, std::uint64_t max_nodes, std::uint64_t max_time_ms,
         bool uncolored) {
        MatchingInstance inst = instance_from_json(instance_json);
        if (uncolored && inst.mode == Mode::Colored) inst = erase_colors(inst);
        return result_dict(solve_augmentation(inst, make_limits(max_nodes, max_time_ms)));
      },
      py::arg("instance_json"), py::arg("max_nodes") = std::numeric_limits<std::uint64_t>::max(),
      py::arg("max_time_ms") = std::numeric_limits<std::uint64_t>::max(),
      py::arg("uncolored") = false,
      "Decide augmentability; returns {'decision', 'witness', 'nodes', 'elapsed_ms'}.");
  m.def(
      "verify",
      [](const std::string& instance_json, const std::string& augmentation_json,
         const std::string& geom) {
        VerifyOptions opts;
        if (geom == "off")
          opts.geometry = GeomCheck::Off;
        else if (geom == "sweep")
          opts.geometry = GeomCheck::Sweep;
        else if (geom == "quadratic")
          opts.geometry = GeomCheck::Quadratic;
        else
          throw std::invalid_argument("geom must be off, quadratic, or sweep");
        auto v = verify_augmentation(instance_from_json(instance_json),
                                     augmentation_from_json(augmentation_json), opts);
        return v ? py::object(py::str(v->code + ": " + v->message)) : py::object(py::none());
      },
      py::arg("instance_json"), py::arg("augmentation_json"), py::arg("geom") = "quadratic",
      "None when the witness checks out, else 'code: message'.");
  m.def(
      "validate_instance",
      [](const std::string& instance_json) {
        auto v = validate_instance(instance_from_json(instance_json));
        return v ? py::object(py::str(v->code + ": " + v->message)) : py::object(py::none());
      },
      py::arg("instance_json"), "None when well formed, else 'code: message'.");
  m.def(
      "extract_assignment",
      [](const std::string& provenance_json, const std::string& instance_json,
         const std::string& witness_json) {
        CompiledInstance ci =
            provenance_from_json(provenance_json, instance_from_json(instance_json));
        return extract_assignment(ci, augmentation_from_json(witness_json)).values;
      },
      py::arg("provenance_json"), py::arg("instance_json"), py::arg("witness_json"),
      "Read the variable assignment off a perfect-matching witness.");
  m.def(
      "erase_colors",
      [](const std::string& instance_json) {
        return instance_to_json(erase_colors(instance_from_json(instance_json)));
      },
      py::arg("instance_json"), "Colored instance -> uncolored copy, as JSON.");

  // ---- gadgets -------------------------------------------------------------
  m.def(
      "gadget_blueprint",
      [](const std::string& kind, const std::string& params) {
        return blueprint_to_json(blueprint(gadget_kind_from_string(kind), params));
      },
      py::arg("kind"), py::arg("params") = "",
      "Blueprint JSON (vertices, edges, ports, contract) for one gadget kind.");
  m.def(
      "gadget_contract_report",
      [](const std::string& kind, const std::string& params, bool uncolored) {
        GadgetBlueprint bp = blueprint(gadget_kind_from_string(kind), params);
        ContractReport rep = uncolored ? check_contract_uncolored(bp) : check_contract(bp);
        return py::make_tuple(rep.ok, rep.counterexamples);
      },
      py::arg("kind"), py::arg("params") = "", py::arg("uncolored") = false,
      "(ok, counterexamples) from exhaustive contract certification.");

  // ---- constructive matchers ----------------------------------------------
  m.def(
      "sweep_matching",
      [](const std::vector<std::pair<long long, long long>>& points) {
        return sweep_perfect_matching(to_points(points));
      },
      py::arg("points"),
      "Non-crossing perfect matching of an even general-position point set "
      "(index pairs).");
  m.def(
      "min_length_matching",
      [](const std::vector<std::pair<long long, long long>>& reds,
         const std::vector<std::pair<long long, long long>>& blues) {
        return min_length_bichromatic(to_points(reds), to_points(blues));
      },
      py::arg("reds"), py::arg("blues"),
      "Minimum-total-length red-blue perfect matching (index pairs).");

  // ---- degree-3 pipeline ----------------------------------------------------
  m.def(
      "transform_to_cubic",
      [](const std::string& instance_json) {
        return pslg_to_json(transform_to_cubic(instance_from_json(instance_json)));
      },
      py::arg("instance_json"), "Uncolored instance -> degree-constrained graph JSON.");
  m.def(
      "solve_cubic",
      [](const std::string& pslg_json, std::uint64_t max_nodes, std::uint64_t max_time_ms) {
        return result_dict(
            solve_cubic_augmentation(pslg_from_json(pslg_json), make_limits(max_nodes, max_time_ms)));
      },
      py::arg("pslg_json"), py::arg("max_nodes") = std::numeric_limits<std::uint64_t>::max(),
      py::arg("max_time_ms") = std::numeric_limits<std::uint64_t>::max(),
      "Complete a plane graph to degree 3 everywhere; same result shape as solve().");
  m.def(
      "verify_cubic",
      [](const std::string& pslg_json, const std::vector<std::pair<int, int>>& added) {
        CubicReport rep = verify_cubic(pslg_from_json(pslg_json), added);
        std::vector<std::string> msgs;
        msgs.reserve(rep.violations.size());
        for (const Violation& v : rep.violations) msgs.push_back(v.code + ": " + v.message);
        return py::make_tuple(rep.ok, msgs);
      },
      py::arg("pslg_json"), py::arg("added"), "(ok, violation messages).");

  // ---- rendering -----------------------------------------------------------
  m.def(
      "render_svg",
      [](const std::string& instance_json, const std::optional<std::string>& provenance_json,
         const std::string& scale, bool show_colors) {
        RenderOptions opts;
        opts.scale = rat_from_string(scale);
        opts.show_colors = show_colors;
        opts.show_provenance = provenance_json.has_value();
        return render_svg(instance_from_json(instance_json), provenance_json, opts);
      },
      py::arg("instance_json"), py::arg("provenance_json") = std::nullopt,
      py::arg("scale") = "1", py::arg("show_colors") = true,
      "Deterministic SVG text for an instance.");
}
