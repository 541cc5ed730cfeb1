#include "augmatch/compiler.hpp"

#include "augmatch/formula.hpp"
#include "augmatch/json_io.hpp"
#include "augmatch/solver.hpp"

#include "doctest.h"

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

using namespace augmatch;

namespace {

Literal L(int var, bool neg = false) { return Literal{var, neg}; }

Formula single_clause_xyz() {
  Formula f;
  f.num_variables = 3;
  f.clauses = {Clause{L(1), L(2), L(3)}};
  return f;
}

int count_kind(const std::vector<GadgetKind>& kinds, GadgetKind k) {
  return static_cast<int>(std::count(kinds.begin(), kinds.end(), k));
}

int count_kind(const LayoutPlan& plan, GadgetKind k) {
  int n = 0;
  for (const PlacedGadget& g : plan.gadgets)
    if (g.kind == k) ++n;
  return n;
}

struct Box {
  long long x0, y0, x1, y1;
};

Box placed_box(const PlacedGadget& g) {
  long long w = g.width, h = g.height;
  if (g.placement.rot % 2 == 1) std::swap(w, h);
  return Box{g.placement.tx, g.placement.ty, g.placement.tx + w, g.placement.ty + h};
}

bool boxes_overlap(const Box& a, const Box& b) {
  return a.x0 < b.x1 && b.x0 < a.x1 && a.y0 < b.y1 && b.y0 < a.y1;
}

}  // namespace

TEST_CASE("plan_layout: single clause uses the minimal roster") {
  LayoutPlan plan = plan_layout(single_clause_xyz());
  CHECK(count_kind(plan, GadgetKind::Variable) == 3);
  CHECK(count_kind(plan, GadgetKind::Multiplier) == 0);
  CHECK(count_kind(plan, GadgetKind::Clause) == 1);
  CHECK(count_kind(plan, GadgetKind::Basin) == 1);
  CHECK(plan.basin_roster.size() == 1);
  CHECK(plan.lanes.size() == 6);
  CHECK(plan.literal_lanes.size() == 6);
  for (const auto& [code, routes] : plan.literal_lanes) CHECK(routes.size() == 1);
  std::size_t lanes = plan.lanes.size();
  CHECK(plan.junction_sites.size() <= lanes * (lanes - 1) / 2);
}

TEST_CASE("plan_layout: repeated literals get multipliers, unused variables get pairs") {
  Formula f;
  f.num_variables = 5;
  f.clauses = {Clause{L(1), L(2), L(3)}, Clause{L(1), L(4), L(5)}};
  LayoutPlan plan = plan_layout(f);
  CHECK(count_kind(plan, GadgetKind::Variable) == 5);
  CHECK(count_kind(plan, GadgetKind::Multiplier) == 1);
  CHECK(count_kind(plan, GadgetKind::Clause) == 2);
  CHECK(count_kind(plan, GadgetKind::Basin) == 2);
  CHECK(plan.lanes.size() == 12);

  Formula g;
  g.num_variables = 4;
  g.clauses = {Clause{L(1), L(2), L(3)}};
  LayoutPlan plan2 = plan_layout(g);
  CHECK(count_kind(plan2, GadgetKind::Basin) == 2);  // one trio, one pair
  std::set<std::string> labels;
  for (int idx : plan2.basin_roster)
    labels.insert(plan2.gadgets[static_cast<size_t>(idx)].label);
  CHECK(labels == std::set<std::string>{"basin-pair", "basin-trio"});
  CHECK(plan2.lanes.size() == 8);
}

TEST_CASE("plan_layout: gadget boxes are pairwise interior-disjoint") {
  Formula f;
  f.num_variables = 4;
  f.clauses = {Clause{L(1), L(2), L(3)}, Clause{L(2, true), L(3), L(4)}};
  LayoutPlan plan = plan_layout(f);
  std::vector<Box> boxes;
  for (const PlacedGadget& g : plan.gadgets) boxes.push_back(placed_box(g));
  for (std::size_t i = 0; i < boxes.size(); ++i)
    for (std::size_t j = i + 1; j < boxes.size(); ++j) {
      INFO(plan.gadgets[i].label, " at (", boxes[i].x0, ",", boxes[i].y0, ") vs ",
           plan.gadgets[j].label, " at (", boxes[j].x0, ",", boxes[j].y0, ")");
      CHECK_FALSE(boxes_overlap(boxes[i], boxes[j]));
    }
}

TEST_CASE("compile: the instance is valid, balanced, and leak-free") {
  CompiledInstance ci = compile(single_clause_xyz());
  auto v = validate_instance(ci.instance);
  if (v) INFO(v->code, ": ", v->message);
  REQUIRE_FALSE(v.has_value());

  auto [crosses, circles] = color_counts(ci.instance);
  CHECK(crosses == circles);

  // Every cross a basin holds frees one circle elsewhere: cross count inside
  // basins equals total circles minus crosses outside basins.
  long long basin_cross = 0, outside_cross = 0;
  for (const Vertex& vx : ci.instance.vertices) {
    if (vx.color != Color::Cross) continue;
    GadgetKind k = ci.gadget_kinds[static_cast<size_t>(
        ci.vertex_gadget[static_cast<size_t>(vx.id)])];
    (k == GadgetKind::Basin ? basin_cross : outside_cross) += 1;
  }
  CHECK(basin_cross == circles - outside_cross);

  LeakReport leaks = check_leaks(ci);
  for (std::size_t i = 0; i < leaks.leaks.size() && i < 10; ++i) INFO(leaks.leaks[i]);
  CHECK(leaks.ok);

  CHECK(ci.vertex_gadget.size() == ci.instance.vertices.size());
  CHECK(ci.num_variables == 3);
  CHECK(ci.variable_ports.size() == 3);
}

TEST_CASE("compile: byte-identical output on repeated runs") {
  Formula f;
  f.num_variables = 4;
  f.clauses = {Clause{L(1), L(2, true), L(3)}, Clause{L(2), L(3), L(4)}};
  CompiledInstance a = compile(f);
  CompiledInstance b = compile(f);
  CHECK(instance_to_json(a.instance) == instance_to_json(b.instance));
  CHECK(provenance_to_json(a) == provenance_to_json(b));
}

TEST_CASE("compile + solve: single clause is augmentable with a one-hot assignment") {
  Formula f = single_clause_xyz();
  CompiledInstance ci = compile(f);
  SolveResult r = solve_augmentation(ci.instance);
  REQUIRE(r.decision == Decision::Augmentable);
  REQUIRE(r.witness.has_value());
  CHECK_FALSE(verify_augmentation(ci.instance, *r.witness).has_value());
  Assignment a = extract_assignment(ci, *r.witness);
  CHECK(satisfies_1in3(f, a));
  int trues = 0;
  for (bool bval : a.values) trues += bval ? 1 : 0;
  CHECK(trues == 1);
}

TEST_CASE("compile + solve: pinning variables walks the whole one-hot solution set") {
  Formula f = single_clause_xyz();
  CompiledInstance ci = compile(f);
  // Pinning the designated pair as mandatory forces that variable TRUE.
  for (int k = 1; k <= 3; ++k) {
    MatchingInstance pinned = ci.instance;
    pinned.mandatory_edges.push_back(ci.variable_ports.at(k));
    REQUIRE_FALSE(validate_instance(pinned).has_value());
    CHECK(solve_augmentation(pinned).decision == Decision::Augmentable);
  }
  for (int k = 1; k <= 3; ++k)
    for (int j = k + 1; j <= 3; ++j) {
      MatchingInstance pinned = ci.instance;
      pinned.mandatory_edges.push_back(ci.variable_ports.at(k));
      pinned.mandatory_edges.push_back(ci.variable_ports.at(j));
      CHECK(solve_augmentation(pinned).decision == Decision::NotAugmentable);
    }
}

TEST_CASE("compile + solve: contradictory clause is not augmentable") {
  Formula f;
  f.num_variables = 1;
  f.clauses = {Clause{L(1), L(1), L(1)}};
  CompiledInstance ci = compile(f);
  REQUIRE_FALSE(validate_instance(ci.instance).has_value());
  CHECK(solve_augmentation(ci.instance).decision == Decision::NotAugmentable);
}

TEST_CASE("compile + solve: empty formula compiles to a trivially augmentable instance") {
  Formula f;
  f.num_variables = 0;
  CompiledInstance ci = compile(f);
  SolveResult r = solve_augmentation(ci.instance);
  CHECK(r.decision == Decision::Augmentable);
  CHECK(extract_assignment(ci, *r.witness).values.empty());
}

TEST_CASE("compile + solve agrees with the exhaustive oracle on random formulas") {
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    Formula f = random_formula(4, 3, seed);
    std::vector<Assignment> sols = brute_force_1in3(f);
    CompiledInstance ci = compile(f);
    SolveResult r = solve_augmentation(ci.instance);
    INFO("seed ", seed, ": ", serialize_formula(f));
    REQUIRE(r.decision != Decision::Timeout);
    CHECK((r.decision == Decision::Augmentable) == !sols.empty());
    if (r.decision == Decision::Augmentable) {
      Assignment a = extract_assignment(ci, *r.witness);
      CHECK(satisfies_1in3(f, a));
    }
  }
}

TEST_CASE("provenance sidecar round-trips") {
  Formula f;
  f.num_variables = 4;
  f.clauses = {Clause{L(1), L(2), L(3)}};
  CompiledInstance ci = compile(f);
  std::string pj = provenance_to_json(ci);
  CompiledInstance back = provenance_from_json(pj, ci.instance);
  CHECK(back.num_variables == ci.num_variables);
  CHECK(back.vertex_gadget == ci.vertex_gadget);
  CHECK(back.gadget_kinds == ci.gadget_kinds);
  CHECK(back.gadget_labels == ci.gadget_labels);
  CHECK(back.variable_ports == ci.variable_ports);
  REQUIRE(back.lane_literal.size() == ci.lane_literal.size());
  for (const auto& [route, lit] : ci.lane_literal) {
    CHECK(back.lane_literal.at(route).var == lit.var);
    CHECK(back.lane_literal.at(route).neg == lit.neg);
  }
  CHECK(provenance_to_json(back) == pj);

  CHECK_THROWS_AS((void)provenance_from_json("{", ci.instance), std::invalid_argument);
  CHECK_THROWS_AS((void)provenance_from_json("{}", ci.instance), std::invalid_argument);
}

TEST_CASE("extract_assignment uses exactly the designated pairs") {
  CompiledInstance ci = compile(single_clause_xyz());
  Augmentation aug;
  aug.added_edges.push_back(ci.variable_ports.at(2));
  Assignment a = extract_assignment(ci, aug);
  REQUIRE(a.values.size() == 3);
  CHECK_FALSE(a.values[0]);
  CHECK(a.values[1]);
  CHECK_FALSE(a.values[2]);
}
