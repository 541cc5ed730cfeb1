#pragma once

#include "augmatch/formula.hpp"
#include "augmatch/gadgets.hpp"
#include "augmatch/instance.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace augmatch {

// Everything is laid out on a 16-unit grid: one variable band per variable
// (its gadget chain plus a private stack of track rows), a consumer strip at
// the bottom (one clause gadget and one absorber trio per clause, one
// absorber pair per unused variable), and one track row plus one drop column
// per routed signal. Crossings between a drop column and a deeper track row
// get a junction, so there is at most one junction per lane pair.

struct PlacedGadget {
  GadgetKind kind = GadgetKind::Lane;
  std::string label;
  Placement placement;
  long long width = 0, height = 0;  // local blueprint box, before rotation
};

struct RoutePlan {
  int route_id = -1;
  Literal literal;           // signal the lane carries
  std::vector<Pt> polyline;  // coarse waypoints along lane axes
};

struct LayoutPlan {
  std::vector<PlacedGadget> gadgets;
  std::vector<RoutePlan> lanes;
  std::vector<Pt> junction_sites;  // southwest corner of each junction cell
  std::map<int, std::vector<int>> literal_lanes;  // literal code -> route ids
  std::vector<int> basin_roster;                  // indices into gadgets
};

// Literal code used as a map key: 2*(var-1) + (negated ? 1 : 0).
inline int literal_code(const Literal& l) { return 2 * (l.var - 1) + (l.neg ? 1 : 0); }

class CompileError : public std::runtime_error {
 public:
  enum class Kind { LayoutOverflow };
  CompileError(Kind k, const std::string& msg) : std::runtime_error(msg), kind(k) {}
  Kind kind;
};

struct CompiledInstance {
  MatchingInstance instance;  // colored
  int num_variables = 0;

  // Per vertex: which placed gadget produced it.
  std::vector<int> vertex_gadget;
  std::vector<GadgetKind> gadget_kinds;    // per placed gadget
  std::vector<std::string> gadget_labels;  // per placed gadget

  // Designated free pair per variable (circle id, cross id); the pair is
  // matched to one another exactly in the TRUE branch.
  std::map<int, std::pair<int, int>> variable_ports;
  std::map<int, Literal> lane_literal;  // route id -> carried literal

  // Cross-gadget candidate edges the layout intends (global id pairs, one per
  // abutting port cut). Everything else crossing a gadget boundary is a leak.
  std::vector<std::pair<int, int>> sanctioned_cuts;
};

LayoutPlan plan_layout(const Formula& f);
CompiledInstance compile(const Formula& f);  // throws CompileError

// Reads the assignment back from a perfect-matching witness.
Assignment extract_assignment(const CompiledInstance& ci, const Augmentation& aug);

// Sidecar metadata: gadget roster, per-vertex ownership, designated variable
// pairs, and the literal carried by each lane.
std::string provenance_to_json(const CompiledInstance& ci);

// Rebuilds the metadata fields of a CompiledInstance from the sidecar (the
// instance itself is supplied by the caller, usually read from its own file).
// sanctioned_cuts is not part of the sidecar and stays empty. Throws
// std::invalid_argument on malformed documents.
CompiledInstance provenance_from_json(const std::string& text, MatchingInstance instance);

struct LeakReport {
  bool ok = true;
  std::vector<std::string> leaks;
};

// Audits the compiled instance: every geometrically legal candidate edge must
// stay inside one gadget or be a sanctioned port cut.
LeakReport check_leaks(const CompiledInstance& ci);

}  // namespace augmatch
