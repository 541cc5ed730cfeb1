#pragma once

#include "augmatch/instance.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace augmatch {

enum class GadgetKind { Lane, Variable, Clause, Multiplier, Junction, Basin };
enum class PortDir { In, Out };
enum class Signal : int { False = 0, True = 1 };

// A port is one open mouth of a gadget box. Its first boundary vertex sits
// two units inside the box edge on the port axis; the matching partner across
// the cut sits two units outside, so abutting boxes connect by a length-4
// candidate edge. Signal TRUE = that cut edge is used.
struct Port {
  std::string name;
  std::vector<int> boundary_vertices;  // local vertex ids; [0] owns the cut
  PortDir dir = PortDir::In;
  int out_x = 0, out_y = 0;  // outward unit vector, axis aligned
};

struct ContractRow {
  std::uint32_t in_mask = 0;  // bit k = k-th IN port (in port order) is TRUE
  bool exists = false;
  // Per OUT port (in port order): the signal every completion must produce;
  // disengaged = unconstrained.
  std::vector<std::optional<Signal>> out;
};

struct GadgetBlueprint {
  GadgetKind kind = GadgetKind::Lane;
  std::string label;
  std::vector<Vertex> vertices;  // local ids 0..k-1, integer coordinates
  std::vector<std::pair<int, int>> mandatory_edges;
  std::vector<Port> ports;
  std::vector<ContractRow> contract;  // 2^(#IN) rows, ascending in_mask
  long long width = 0, height = 0;    // bounding box [0,width] x [0,height]

  std::vector<int> in_ports() const;   // indices into ports, In only, in order
  std::vector<int> out_ports() const;  // indices into ports, Out only, in order
  MatchingInstance as_instance() const;
};

class GadgetError : public std::runtime_error {
 public:
  enum class Kind { BadParams, TooLarge };
  GadgetError(Kind k, const std::string& msg) : std::runtime_error(msg), kind(k) {}
  Kind kind;
};

// Factories. All blueprints are certified by tests via check_contract; the
// contract tables, not the coordinates, are the interface.
GadgetBlueprint make_lane_straight(int cells);  // cells >= 1
GadgetBlueprint make_lane_turn_left();          // enters west, exits north
GadgetBlueprint make_lane_turn_right();         // enters west, exits south
GadgetBlueprint make_variable();
GadgetBlueprint make_clause();
GadgetBlueprint make_multiplier();
GadgetBlueprint make_junction();
GadgetBlueprint make_basin_pair();          // absorbs one complementary lane pair
GadgetBlueprint make_basin_trio();          // absorbs a clause's complement bundle
GadgetBlueprint make_basin(int pair_units);  // pair_units >= 0 side-by-side pairs

// Dispatcher used by the CLI: params like "cells=4", "turn=left", "pairs=2",
// "form=trio"; empty string selects each kind's default. Throws BadParams.
GadgetBlueprint blueprint(GadgetKind kind, const std::string& params);

const char* to_string(GadgetKind k);
GadgetKind gadget_kind_from_string(const std::string& name);  // BadParams on unknown

struct Completion {
  std::vector<std::pair<int, int>> internal_edges;  // local vertex id pairs
  std::uint32_t out_mask = 0;  // bit k = k-th OUT port reads TRUE
};

// All perfect matchings of the blueprint's free vertices consistent with the
// pinned IN signals. Each neighbor structure beyond a port is modeled by one
// virtual partner vertex across the cut: IN TRUE forces the cut edge, IN
// FALSE removes the virtual vertex, and unpinned ports leave it optional.
// Guard: at most 40 free vertices (TooLarge).
std::vector<Completion> enumerate_completions(const GadgetBlueprint& g,
                                              const std::map<std::string, Signal>& boundary);

struct ContractReport {
  bool ok = true;
  std::vector<std::string> counterexamples;
};

// Certifies the contract table by exhaustive enumeration over all IN rows:
// existence must match, and every completion must produce the forced OUT
// signals. check_contract_uncolored repeats the audit with colors erased.
ContractReport check_contract(const GadgetBlueprint& g);
ContractReport check_contract_uncolored(const GadgetBlueprint& g);

struct Placement {
  long long tx = 0, ty = 0;
  int rot = 0;  // counterclockwise quarter turns, 0..3
};

// Rigid motion of a local point: rotate within the blueprint box (so the box
// stays in the first quadrant), then translate.
Pt placed_point(const Placement& pl, const GadgetBlueprint& g, const Pt& local);
std::pair<int, int> placed_outward(const Placement& pl, int out_x, int out_y);

struct GadgetInstance {
  std::shared_ptr<const GadgetBlueprint> bp;
  Placement placement;
  int first_global_id = 0;

  int global_id(int local_id) const { return first_global_id + local_id; }
  Pt global_pos(int local_id) const;
  void emit(std::vector<Vertex>& vertices, std::vector<std::pair<int, int>>& edges) const;
};

GadgetInstance place(std::shared_ptr<const GadgetBlueprint> bp, const Placement& pl,
                     int first_global_id);

// Instance JSON of the local box plus "ports" and "contract" arrays.
std::string blueprint_to_json(const GadgetBlueprint& g);

}  // namespace augmatch
