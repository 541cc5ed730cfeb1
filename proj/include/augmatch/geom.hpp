#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace augmatch {

// Exact rational coordinate. All predicates in this module are exact; there is
// no floating-point path anywhere a sign decision is made.
using Rat = boost::multiprecision::cpp_rational;

struct Pt {
  Rat x, y;
  bool operator==(const Pt& o) const { return x == o.x && y == o.y; }
  bool operator!=(const Pt& o) const { return !(*this == o); }
};

// Lexicographic (x, then y) order.
bool lex_less(const Pt& a, const Pt& b);

// Straight segment; construction sites must guarantee a != b.
struct Seg {
  Pt a, b;
};

// Raised by segments_conflict when the two segments share an endpoint
// position: matching edges are vertex-disjoint, so that is a caller bug.
class SharedEndpointError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Sign of the signed area of triangle pqr: +1 left turn, 0 collinear, -1 right.
int orient(const Pt& p, const Pt& q, const Pt& r);

// p lies on the closed segment s.
bool point_on_segment(const Pt& p, const Seg& s);
// p lies on s but is not one of its endpoints.
bool point_strictly_inside(const Pt& p, const Seg& s);

// True iff the closed segments share at least one point (proper crossing,
// endpoint touching, collinear overlap). Requires the four endpoints to be
// pairwise distinct; throws SharedEndpointError otherwise.
bool segments_conflict(const Seg& s1, const Seg& s2);

// Conflict test for general graph edges: sharing one endpoint is legal contact
// unless the segments also overlap collinearly beyond the shared point.
// Identical segments conflict. No exception is thrown.
bool segments_conflict_shared_ok(const Seg& s1, const Seg& s2);

// An exact rational unit vector: x^2 + y^2 == 1.
struct Dir {
  Rat x, y;
};

// A direction d such that the open cone at `center` around d with the given
// half angle (degrees) contains no ray from center to a point of `others`;
// nullopt when no wide-enough angular gap exists. Rays are ordered exactly;
// the half-angle clearance itself is decided in 100-digit floating point with
// a documented guard (see cone_is_clear).
std::optional<Dir> free_direction(const Pt& center, const std::vector<Pt>& others,
                                  const Rat& half_angle_degrees);

// Recheck helper: true iff every ray center->others keeps an angular distance
// of at least half_angle_degrees from d. Angles between exact rational rays
// are compared in 100-digit floating point; inputs at workbench scale keep
// margins astronomically above that precision, and free_direction only
// returns directions that pass this very check.
bool cone_is_clear(const Pt& center, const Dir& d, const std::vector<Pt>& others,
                   const Rat& half_angle_degrees);

// Canonical "numerator/denominator" serialization, bit-exact round trip.
std::string rat_to_string(const Rat& v);
Rat rat_from_string(const std::string& s);

// True when both coordinates are integers of magnitude <= 1e9; fills x and y.
// Callers use this to route batched work onto machine-integer fast paths whose
// predicates stay exact in 128-bit arithmetic.
bool coords_as_ints(const Pt& p, long long& x, long long& y);

// Finds some conflicting pair among segments whose endpoints are pairwise
// distinct across segments (indices into the input), or nullopt when the set
// is conflict free. Plane sweep; O(k log k) comparisons on conflict-free sets.
std::optional<std::pair<int, int>> find_conflict_sweep(const std::vector<Seg>& segs);

// Same question answered by exhaustive pairwise testing; O(k^2).
std::optional<std::pair<int, int>> find_conflict_quadratic(const std::vector<Seg>& segs);

}  // namespace augmatch
