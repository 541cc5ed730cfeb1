#pragma once

#include "augmatch/instance.hpp"
#include "augmatch/solver.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace augmatch {

// A plane straight-line graph: uncolored vertices plus a set of edges whose
// closed segments are pairwise disjoint except at shared endpoints.
struct Pslg {
  std::vector<Vertex> vertices;            // colors disengaged
  std::vector<std::pair<int, int>> edges;  // vertex ids
};

// First defect found, nullopt when g is well formed: unique ids, unique
// positions, colorless vertices, edges over existing distinct endpoints, no
// repeated unordered pair, and no two edges conflicting beyond a shared
// endpoint.
std::optional<Violation> validate_pslg(const Pslg& g);

// Degree of every vertex of g (id order of g.vertices).
std::vector<int> pslg_degrees(const Pslg& g);

// A reusable attachment graph in local coordinates: a valid PSLG in which
// every vertex except `anchor` has degree exactly 3 and the anchor has degree
// 2, and in which every non-anchor vertex lies strictly inside the open cone
// at the anchor around `cone_axis` with the given half angle. Consequently
// the whole graph minus the anchor stays inside that cone, and one further
// edge at the anchor makes all degrees 3.
struct CubicGadget {
  Pslg graph;
  int anchor = 0;
  Dir cone_axis;
  Rat cone_half_angle_deg;
};

// The fixed five-vertex gadget used by transform_to_cubic. Its certificate
// (degrees, planarity, cone containment) is re-checked by tests.
CubicGadget build_cubic_gadget();

class CubicError : public std::runtime_error {
 public:
  enum class Kind { NoFreeCone };
  CubicError(Kind k, const std::string& msg) : std::runtime_error(msg), kind(k) {}
  Kind kind;
};

// Degree-constrained reformulation of an uncolored augmentation instance.
// Every vertex is replaced by a copy of build_cubic_gadget() whose anchor
// sits exactly at the original position; mandatory edges are kept verbatim
// between anchors. Each copy is scaled by a power of two so it fits inside a
// disc around its anchor of radius at most one quarter of the distance to the
// nearest other original vertex, and rotated so the gadget cone points into
// an angular gap free of directions toward all other original vertices (the
// mandatory partner, if any, is one of those). The output admits a cubic
// completion iff the input admits a perfect augmentation, and any completion
// edge joins two anchors.
//
// Ids: the i-th input vertex (input order) owns output ids 5*i .. 5*i+4 with
// its anchor at 5*i. Throws std::invalid_argument when the input is colored
// or fails validate_instance, CubicError(NoFreeCone) when some vertex has no
// wide-enough empty angular gap.
Pslg transform_to_cubic(const MatchingInstance& inst);

// Anchor id owned by the i-th input vertex in transform_to_cubic output.
inline int cubic_anchor_id(int input_index) { return 5 * input_index; }

// Decides whether edges can be added to g -- each a straight segment between
// existing vertices, no repeated pair, conflicts only at shared endpoints --
// so that every vertex ends with degree exactly 3. Exhaustive and
// deterministic: branches on the lowest-id deficient vertex over its legal
// partners, prunes on degree-sum parity and local feasibility. Augmentable
// results carry added edges that already passed verify_cubic. Vertices of
// degree above 3 make the answer NotAugmentable immediately (edges are never
// removed). Throws SolverInputError(InvalidPslg) when g fails validate_pslg.
SolveResult solve_cubic_augmentation(const Pslg& g, const SearchLimits& limits = {});

// Report of verify_cubic: ok iff the union of g.edges and added is a PSLG
// whose every vertex has degree exactly 3. Violations use the codes
// UnknownVertex / SelfLoop (malformed added edge), DuplicateEdge (repeated
// unordered pair within the union), DegreeViolation (vertex with final degree
// != 3), and CrossingViolation (two segments of the union conflicting beyond
// a shared endpoint). All violations are collected, not just the first.
struct CubicReport {
  bool ok = false;
  std::vector<Violation> violations;
};
CubicReport verify_cubic(const Pslg& g, const std::vector<std::pair<int, int>>& added);

// Deterministic JSON: {"vertices":[{"id","x","y"}...], "edges":[[a,b]...]}
// with coordinates in canonical "numerator/denominator" form; byte-identical
// round trips.
std::string pslg_to_json(const Pslg& g);
Pslg pslg_from_json(const std::string& text);

}  // namespace augmatch
