#pragma once

#include "augmatch/geom.hpp"
#include "augmatch/instance.hpp"

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

namespace augmatch {

// Backtracking core shared by the instance solver, the gadget certification
// oracle, and the enumeration APIs. Works on an explicit list of unmatched
// vertices addressed by local index; callers map ids.
//
// Vertices with required=false are allowed to stay single in a solution (used
// to model the first vertex of a neighboring structure a boundary vertex may
// or may not pair with); they never force anything and are never branched on.
struct MatchProblem {
  std::vector<Pt> pos;                      // all positions pairwise distinct
  std::vector<std::optional<Color>> color;  // same length as pos
  std::vector<bool> required;               // same length as pos
  std::vector<Seg> blockers;                // fixed segments candidates must avoid
  std::vector<std::pair<int, int>> forced;  // edges present in every solution
  // Candidates longer than this are not generated; 0 keeps every pair. Forced
  // edges are exempt. Callers only set a cap where layout geometry bounds the
  // length of any non-conflicting edge (see solve_augmentation).
  Rat max_edge_length2 = 0;
  // Optional per-vertex restriction: -1 leaves the vertex unrestricted, any
  // other value is the only local index it may pair with. Used for virtual
  // partner vertices, which stand for one specific neighbor channel. Empty
  // means no restrictions.
  std::vector<int> only_partner;
};

enum class RunStatus { Exhausted, Stopped, NodeLimit, TimeLimit };

struct RunStats {
  std::uint64_t nodes = 0;
  double elapsed_ms = 0.0;
};

struct RunLimits {
  std::uint64_t max_nodes = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t max_time_ms = std::numeric_limits<std::uint64_t>::max();
};

class Matcher {
 public:
  explicit Matcher(MatchProblem problem);

  // Legal candidate edges (local index pairs, first < second).
  const std::vector<std::pair<int, int>>& candidates() const { return cand_ends_; }

  // Receives each solution as ascending (u, v) local pairs covering every
  // required vertex; return false to stop the search.
  using SolutionFn = std::function<bool(const std::vector<std::pair<int, int>>&)>;

  struct RunResult {
    RunStatus status = RunStatus::Exhausted;
    RunStats stats;
  };

  // Deterministic depth-first search: branch on the lowest-index unmatched
  // required vertex, try partners in increasing index order, propagate
  // single-candidate vertices to fixpoint between decisions.
  RunResult run(const RunLimits& limits, const SolutionFn& on_solution);

 private:
  struct Search;
  MatchProblem p_;
  int n_ = 0;
  bool build_unsat_ = false;
  std::vector<std::pair<int, int>> cand_ends_;
  std::vector<std::vector<int>> cands_of_;    // per vertex, sorted by partner
  std::vector<std::vector<int>> conflicts_;   // per candidate, geometric only
  std::vector<int> forced_cids_;

  void build_candidates();
  void build_conflicts();
};

}  // namespace augmatch
