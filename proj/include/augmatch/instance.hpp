#pragma once

#include "augmatch/geom.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace augmatch {

enum class Color { Cross, Circle };
enum class Mode { Colored, Uncolored };

struct Vertex {
  int id = 0;
  Pt pos;
  std::optional<Color> color;  // engaged iff the instance is colored
};

// A partially matched point set: the mandatory edges form a matching (degree
// at most one) of pairwise non-conflicting straight segments. The question an
// augmentation answers is whether the matching extends to a perfect one.
struct MatchingInstance {
  Mode mode = Mode::Colored;
  std::vector<Vertex> vertices;
  std::vector<std::pair<int, int>> mandatory_edges;  // vertex ids
};

struct Augmentation {
  std::vector<std::pair<int, int>> added_edges;  // vertex ids
};

// First violation found; code is a stable machine-readable identifier.
struct Violation {
  std::string code;
  std::string message;
  std::vector<int> ids;  // offending vertex ids or edge indices, code-specific
};

// Structural and geometric well-formedness of an instance: unique ids, unique
// positions, color discipline for the mode, mandatory edges forming a
// matching over existing vertices, colored edges joining cross to circle, and
// mandatory segments pairwise conflict free.
std::optional<Violation> validate_instance(const MatchingInstance& inst);

enum class GeomCheck {
  Off,        // combinatorial checks only
  Quadratic,  // exact pairwise segment conflicts, O(E^2)
  Sweep,      // exact plane-sweep conflict detection, O(E log E)
};

struct VerifyOptions {
  GeomCheck geometry = GeomCheck::Quadratic;
};

// Checks that mandatory + added is a perfect matching of the whole vertex set
// (codes: NotPerfect, DegreeViolation), added edges respect colors in colored
// mode (ColorViolation), and, per options, that all segments are pairwise
// conflict free (CrossingViolation). Assumes the instance itself validates.
std::optional<Violation> verify_augmentation(const MatchingInstance& inst,
                                             const Augmentation& aug,
                                             const VerifyOptions& opts = {});

// Colored -> uncolored copy (positions and edges kept); throws
// std::logic_error when the input is already uncolored.
MatchingInstance erase_colors(const MatchingInstance& inst);

// (cross count, circle count); zeros for uncolored instances.
std::pair<std::size_t, std::size_t> color_counts(const MatchingInstance& inst);

// Ids of vertices not covered by a mandatory edge, ascending.
std::vector<int> free_vertex_ids(const MatchingInstance& inst);

}  // namespace augmatch
