// Command-line front door for the matching-augmentation workbench.
//
// Exit codes, stable across all subcommands:
//   0  decision AUGMENTABLE / everything checked out
//   1  decision NOT_AUGMENTABLE / a check rejected its input
//   2  decision TIMEOUT
//   3+ error (bad file, bad flags, invalid input document)
//
// Decisions and reports go to stdout; progress and statistics go to stderr,
// so stdout is byte-deterministic for identical inputs, flags, and seeds.

#include "augmatch/compiler.hpp"
#include "augmatch/cubic.hpp"
#include "augmatch/formula.hpp"
#include "augmatch/gadgets.hpp"
#include "augmatch/instance.hpp"
#include "augmatch/json_io.hpp"
#include "augmatch/solver.hpp"
#include "augmatch/svg.hpp"

#include "CLI11.hpp"

#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace augmatch;

constexpr int kExitAugmentable = 0;
constexpr int kExitNotAugmentable = 1;
constexpr int kExitTimeout = 2;
constexpr int kExitError = 3;

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "' for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void spill(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << content;
  if (!out) throw std::runtime_error("failed writing '" + path + "'");
}

const char* decision_name(Decision d) {
  switch (d) {
    case Decision::Augmentable: return "AUGMENTABLE";
    case Decision::NotAugmentable: return "NOT_AUGMENTABLE";
    case Decision::Timeout: return "TIMEOUT";
  }
  return "?";
}

int decision_exit(Decision d) {
  switch (d) {
    case Decision::Augmentable: return kExitAugmentable;
    case Decision::NotAugmentable: return kExitNotAugmentable;
    case Decision::Timeout: return kExitTimeout;
  }
  return kExitError;
}

const char* formula_error_name(FormulaError::Kind k) {
  switch (k) {
    case FormulaError::Kind::Syntax: return "SyntaxError";
    case FormulaError::Kind::Arity: return "ArityError";
    case FormulaError::Kind::Range: return "RangeError";
    case FormulaError::Kind::TooLarge: return "TooLargeError";
  }
  return "FormulaError";
}

std::string assignment_line(const Assignment& a) {
  std::ostringstream out;
  out << "assignment:";
  for (std::size_t i = 0; i < a.values.size(); ++i)
    out << " " << (i + 1) << "=" << (a.values[i] ? "true" : "false");
  return out.str();
}

std::string assignment_json(const Assignment& a) {
  std::ostringstream out;
  out << "{\"values\": [";
  for (std::size_t i = 0; i < a.values.size(); ++i)
    out << (i ? ", " : "") << (a.values[i] ? "true" : "false");
  out << "]}\n";
  return out.str();
}

struct SolveFlags {
  std::uint64_t max_nodes = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t max_time_ms = std::numeric_limits<std::uint64_t>::max();
  SearchLimits limits() const { return SearchLimits{max_nodes, max_time_ms}; }
};

void add_limit_flags(CLI::App* cmd, SolveFlags& f) {
  cmd->add_option("--max-nodes", f.max_nodes, "Search node budget");
  cmd->add_option("--max-time-ms", f.max_time_ms, "Wall-clock budget in milliseconds");
}

// ---------------------------------------------------------------- compile --

int cmd_compile(const std::string& formula_path, const std::string& out_instance,
                const std::string& out_provenance) {
  Formula f;
  try {
    f = parse_formula(slurp(formula_path));
  } catch (const FormulaError& e) {
    std::cout << formula_error_name(e.kind) << ": " << e.what() << "\n";
    return kExitError;
  }
  CompiledInstance ci = compile(f);
  spill(out_instance, instance_to_json(ci.instance));
  spill(out_provenance, provenance_to_json(ci));

  std::map<GadgetKind, int> by_kind;
  for (GadgetKind k : ci.gadget_kinds) ++by_kind[k];
  std::cout << "variables " << f.num_variables << "\n";
  std::cout << "clauses " << f.clauses.size() << "\n";
  for (const auto& [k, cnt] : by_kind) std::cout << to_string(k) << " gadgets " << cnt << "\n";
  std::cout << "vertices " << ci.instance.vertices.size() << "\n";
  std::cout << "mandatory edges " << ci.instance.mandatory_edges.size() << "\n";
  return kExitAugmentable;
}

// ------------------------------------------------------------------ solve --

int cmd_solve(const std::string& instance_path, const SolveFlags& flags, bool uncolored,
              const std::string& witness_path, const std::string& assignment_path,
              const std::string& provenance_path) {
  MatchingInstance inst = instance_from_json(slurp(instance_path));
  if (uncolored && inst.mode == Mode::Colored) inst = erase_colors(inst);
  if (auto v = validate_instance(inst)) {
    std::cout << "invalid instance: " << v->code << ": " << v->message << "\n";
    return kExitError;
  }
  SolveResult r = solve_augmentation(inst, flags.limits());
  std::cout << decision_name(r.decision) << "\n";
  std::cerr << "nodes " << r.stats.nodes_explored << ", ms " << r.stats.elapsed_ms << "\n";
  if (r.decision == Decision::Augmentable) {
    if (!witness_path.empty()) spill(witness_path, augmentation_to_json(*r.witness));
    if (!provenance_path.empty()) {
      CompiledInstance ci = provenance_from_json(slurp(provenance_path), inst);
      Assignment a = extract_assignment(ci, *r.witness);
      std::cout << assignment_line(a) << "\n";
      if (!assignment_path.empty()) spill(assignment_path, assignment_json(a));
    }
  }
  return decision_exit(r.decision);
}

// ----------------------------------------------------------------- verify --

int cmd_verify(const std::string& instance_path, const std::string& augmentation_path,
               const std::string& geom) {
  MatchingInstance inst = instance_from_json(slurp(instance_path));
  if (auto v = validate_instance(inst)) {
    std::cout << "invalid instance: " << v->code << ": " << v->message << "\n";
    return kExitError;
  }
  Augmentation aug = augmentation_from_json(slurp(augmentation_path));
  VerifyOptions opts;
  if (geom == "off")
    opts.geometry = GeomCheck::Off;
  else if (geom == "quadratic")
    opts.geometry = GeomCheck::Quadratic;
  else if (geom == "sweep")
    opts.geometry = GeomCheck::Sweep;
  else {
    std::cout << "unknown geometry mode '" << geom << "'\n";
    return kExitError;
  }
  if (auto v = verify_augmentation(inst, aug, opts)) {
    std::cout << "REJECTED " << v->code << ": " << v->message << "\n";
    return kExitNotAugmentable;
  }
  std::cout << "OK\n";
  return kExitAugmentable;
}

// -------------------------------------------------------------- roundtrip --

int cmd_roundtrip(int n, int m, int count, std::uint64_t seed) {
  if (n < 1 || n > 24) {
    std::cout << "variable count must be between 1 and 24\n";
    return kExitError;
  }
  if (m < 0 || count < 1) {
    std::cout << "clause count must be >= 0 and case count >= 1\n";
    return kExitError;
  }
  int failures = 0;
  for (int i = 0; i < count; ++i) {
    Formula f = random_formula(n, m, seed + static_cast<std::uint64_t>(i));
    bool oracle_sat = !brute_force_1in3(f).empty();
    CompiledInstance ci = compile(f);
    SolveResult r = solve_augmentation(ci.instance);
    bool solver_sat = r.decision == Decision::Augmentable;
    bool ok = solver_sat == oracle_sat;
    bool assignment_ok = true;
    if (ok && solver_sat) {
      Assignment a = extract_assignment(ci, *r.witness);
      assignment_ok = satisfies_1in3(f, a);
      ok = assignment_ok;
    }
    std::cout << "case " << i << ": oracle=" << (oracle_sat ? "sat" : "unsat")
              << " solver=" << decision_name(r.decision)
              << (solver_sat ? (assignment_ok ? " assignment=ok" : " assignment=BAD") : "")
              << (ok ? " PASS" : " FAIL") << "\n";
    if (!ok) ++failures;
  }
  std::cout << "passed " << (count - failures) << "/" << count << "\n";
  return failures == 0 ? kExitAugmentable : kExitError;
}

// ----------------------------------------------------------- gadget-check --

int cmd_gadget_check(const std::string& kind_name, const std::string& params) {
  std::vector<std::pair<GadgetKind, std::string>> roster;
  if (!kind_name.empty()) {
    roster.emplace_back(gadget_kind_from_string(kind_name), params);
  } else {
    roster = {
        {GadgetKind::Lane, "cells=1"},       {GadgetKind::Lane, "cells=2"},
        {GadgetKind::Lane, "turn=left"},     {GadgetKind::Lane, "turn=right"},
        {GadgetKind::Variable, ""},          {GadgetKind::Clause, ""},
        {GadgetKind::Multiplier, ""},        {GadgetKind::Junction, ""},
        {GadgetKind::Basin, "form=pair"},    {GadgetKind::Basin, "form=trio"},
        {GadgetKind::Basin, "pairs=2"},
    };
  }
  int bad = 0;
  for (const auto& [kind, p] : roster) {
    GadgetBlueprint bp = blueprint(kind, p);
    ContractReport colored = check_contract(bp);
    ContractReport plain = check_contract_uncolored(bp);
    bool ok = colored.ok && plain.ok;
    std::cout << bp.label << (p.empty() ? "" : " [" + p + "]") << ": "
              << (ok ? "OK" : "COUNTEREXAMPLE") << " (rows=" << bp.contract.size() << ")\n";
    for (const std::string& c : colored.counterexamples) std::cout << "  colored: " << c << "\n";
    for (const std::string& c : plain.counterexamples) std::cout << "  uncolored: " << c << "\n";
    if (!ok) ++bad;
  }
  std::cout << (bad == 0 ? "all contracts hold" : "contract violations found") << "\n";
  return bad == 0 ? kExitAugmentable : kExitNotAugmentable;
}

// -------------------------------------------------------- cubic transform --

int cmd_cubic_transform(const std::string& instance_path, const std::string& out_path,
                        bool uncolored) {
  MatchingInstance inst = instance_from_json(slurp(instance_path));
  if (uncolored && inst.mode == Mode::Colored) inst = erase_colors(inst);
  Pslg g = transform_to_cubic(inst);
  spill(out_path, pslg_to_json(g));
  std::cout << "vertices " << g.vertices.size() << "\n";
  std::cout << "edges " << g.edges.size() << "\n";
  return kExitAugmentable;
}

// ------------------------------------------------------------ cubic solve --

int cmd_cubic_solve(const std::string& pslg_path, const SolveFlags& flags,
                    const std::string& witness_path) {
  Pslg g = pslg_from_json(slurp(pslg_path));
  SolveResult r = solve_cubic_augmentation(g, flags.limits());
  std::cout << decision_name(r.decision) << "\n";
  std::cerr << "nodes " << r.stats.nodes_explored << ", ms " << r.stats.elapsed_ms << "\n";
  if (r.decision == Decision::Augmentable && !witness_path.empty())
    spill(witness_path, augmentation_to_json(*r.witness));
  return decision_exit(r.decision);
}

// ----------------------------------------------------------------- render --

int cmd_render(const std::string& instance_path, const std::string& svg_out,
               const std::string& provenance_path, const std::string& highlight_path,
               const std::string& scale, bool no_colors) {
  MatchingInstance inst = instance_from_json(slurp(instance_path));
  if (auto v = validate_instance(inst)) {
    std::cout << "invalid instance: " << v->code << ": " << v->message << "\n";
    return kExitError;
  }
  RenderOptions opts;
  opts.scale = rat_from_string(scale);
  opts.show_colors = !no_colors;
  std::optional<std::string> prov;
  if (!provenance_path.empty()) {
    prov = slurp(provenance_path);
    opts.show_provenance = true;
  }
  if (!highlight_path.empty())
    opts.highlight = augmentation_from_json(slurp(highlight_path)).added_edges;
  spill(svg_out, render_svg(inst, prov, opts));
  std::cout << "wrote " << svg_out << "\n";
  return kExitAugmentable;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Geometric matching-augmentation workbench"};
  app.require_subcommand(1);

  // compile
  std::string formula_path, out_instance = "instance.json", out_provenance = "provenance.json";
  CLI::App* compile_cmd =
      app.add_subcommand("compile", "Compile a formula file into a matching instance");
  compile_cmd->add_option("formula", formula_path, "Formula file")->required();
  compile_cmd->add_option("-o,--out", out_instance, "Instance JSON output path");
  compile_cmd->add_option("-p,--provenance", out_provenance, "Provenance JSON output path");

  // solve
  std::string solve_instance, solve_witness, solve_assignment, solve_provenance;
  SolveFlags solve_flags;
  bool solve_uncolored = false;
  CLI::App* solve_cmd = app.add_subcommand("solve", "Decide augmentability of an instance");
  solve_cmd->add_option("instance", solve_instance, "Instance JSON")->required();
  add_limit_flags(solve_cmd, solve_flags);
  solve_cmd->add_flag("--uncolored", solve_uncolored, "Erase colors before solving");
  solve_cmd->add_option("--witness", solve_witness, "Witness JSON output path");
  solve_cmd->add_option("--assignment", solve_assignment, "Assignment JSON output path");
  solve_cmd->add_option("--provenance", solve_provenance,
                        "Provenance sidecar; prints the extracted assignment");

  // verify
  std::string verify_instance, verify_augmentation_path, verify_geom = "quadratic";
  CLI::App* verify_cmd = app.add_subcommand("verify", "Check a witness against an instance");
  verify_cmd->add_option("instance", verify_instance, "Instance JSON")->required();
  verify_cmd->add_option("augmentation", verify_augmentation_path, "Augmentation JSON")
      ->required();
  verify_cmd->add_option("--geom", verify_geom, "Geometry check: off, quadratic, sweep");

  // roundtrip
  int rt_n = 3, rt_m = 2, rt_count = 50;
  std::uint64_t rt_seed = 1;
  CLI::App* rt_cmd =
      app.add_subcommand("roundtrip", "Random formulas: compile+solve versus the oracle");
  rt_cmd->add_option("-n,--variables", rt_n, "Variables per formula");
  rt_cmd->add_option("-m,--clauses", rt_m, "Clauses per formula");
  rt_cmd->add_option("-c,--count", rt_count, "Number of cases");
  rt_cmd->add_option("--seed", rt_seed, "Base seed");

  // gadget-check
  std::string gc_kind, gc_params;
  CLI::App* gc_cmd = app.add_subcommand("gadget-check", "Certify gadget contracts");
  gc_cmd->add_option("--kind", gc_kind, "One kind (lane, variable, clause, ...)");
  gc_cmd->add_option("--params", gc_params, "Factory parameters, e.g. cells=2");

  // cubic-transform
  std::string ct_instance, ct_out = "cubic.json";
  bool ct_uncolored = false;
  CLI::App* ct_cmd =
      app.add_subcommand("cubic-transform", "Degree-constrained reformulation of an instance");
  ct_cmd->add_option("instance", ct_instance, "Instance JSON")->required();
  ct_cmd->add_option("-o,--out", ct_out, "Graph JSON output path");
  ct_cmd->add_flag("--uncolored", ct_uncolored, "Erase colors before transforming");

  // cubic-solve
  std::string cs_pslg, cs_witness;
  SolveFlags cs_flags;
  CLI::App* cs_cmd = app.add_subcommand("cubic-solve", "Complete a graph to degree 3 everywhere");
  cs_cmd->add_option("graph", cs_pslg, "Graph JSON")->required();
  add_limit_flags(cs_cmd, cs_flags);
  cs_cmd->add_option("--witness", cs_witness, "Witness JSON output path");

  // render
  std::string rd_instance, rd_svg = "out.svg", rd_prov, rd_highlight, rd_scale = "1";
  bool rd_no_colors = false;
  CLI::App* rd_cmd = app.add_subcommand("render", "Draw an instance as SVG");
  rd_cmd->add_option("instance", rd_instance, "Instance JSON")->required();
  rd_cmd->add_option("--svg-out", rd_svg, "SVG output path");
  rd_cmd->add_option("--provenance", rd_prov, "Provenance sidecar; draws gadget boxes");
  rd_cmd->add_option("--highlight", rd_highlight, "Augmentation JSON drawn dashed");
  rd_cmd->add_option("--scale", rd_scale, "Units per pixel (rational, e.g. 2 or 3/2)");
  rd_cmd->add_flag("--no-colors", rd_no_colors, "Draw every vertex as a plain dot");

  CLI11_PARSE(app, argc, argv);

  try {
    if (compile_cmd->parsed()) return cmd_compile(formula_path, out_instance, out_provenance);
    if (solve_cmd->parsed())
      return cmd_solve(solve_instance, solve_flags, solve_uncolored, solve_witness,
                       solve_assignment, solve_provenance);
    if (verify_cmd->parsed())
      return cmd_verify(verify_instance, verify_augmentation_path, verify_geom);
    if (rt_cmd->parsed()) return cmd_roundtrip(rt_n, rt_m, rt_count, rt_seed);
    if (gc_cmd->parsed()) return cmd_gadget_check(gc_kind, gc_params);
    if (ct_cmd->parsed()) return cmd_cubic_transform(ct_instance, ct_out, ct_uncolored);
    if (cs_cmd->parsed()) return cmd_cubic_solve(cs_pslg, cs_flags, cs_witness);
    if (rd_cmd->parsed())
      return cmd_render(rd_instance, rd_svg, rd_prov, rd_highlight, rd_scale, rd_no_colors);
  } catch (const FormulaError& e) {
    std::cout << formula_error_name(e.kind) << ": " << e.what() << "\n";
    return kExitError;
  } catch (const std::exception& e) {
    std::cout << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
