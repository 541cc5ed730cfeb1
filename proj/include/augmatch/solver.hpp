#pragma once

#include "augmatch/instance.hpp"

#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

namespace augmatch {

enum class Decision { Augmentable, NotAugmentable, Timeout };

struct SearchLimits {
  std::uint64_t max_nodes = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t max_time_ms = std::numeric_limits<std::uint64_t>::max();
};

struct SolveStats {
  std::uint64_t nodes_explored = 0;
  double elapsed_ms = 0.0;
};

struct SolveResult {
  Decision decision = Decision::NotAugmentable;
  std::optional<Augmentation> witness;  // present iff Augmentable; re-verified
  SolveStats stats;
};

class SolverInputError : public std::invalid_argument {
 public:
  enum class Kind { OddCount, CollinearTriple, SizeMismatch, TooLarge, InvalidInstance, InvalidPslg };
  SolverInputError(Kind k, const std::string& msg) : std::invalid_argument(msg), kind(k) {}
  Kind kind;
  std::optional<Violation> violation;  // engaged for InvalidInstance
};

// Decides whether the mandatory matching extends to a perfect matching of all
// vertices; Augmentable results carry a witness that has already passed
// verify_augmentation. NotAugmentable is reported only after the search space
// is exhausted (or a counting bound proves emptiness). Deterministic.
SolveResult solve_augmentation(const MatchingInstance& inst, const SearchLimits& limits = {});

// Pairs the lexicographically sorted points consecutively: a perfect
// non-crossing matching for any point set in general position. Returns index
// pairs into the input. Throws OddCount / CollinearTriple.
std::vector<std::pair<int, int>> sweep_perfect_matching(const std::vector<Pt>& points);

// Minimum total Euclidean length perfect red-blue matching via an exact
// assignment optimization; the optimum is non-crossing in general position
// (asserted on the result). Returns (red index, blue index) pairs. Requires
// equal sizes at most 64; throws SizeMismatch / TooLarge.
std::vector<std::pair<int, int>> min_length_bichromatic(const std::vector<Pt>& reds,
                                                        const std::vector<Pt>& blues);

// All perfect augmentations (each verified), capped in count; requires at
// most 30 free vertices (TooLarge).
std::vector<Augmentation> enumerate_all_augmentations(const MatchingInstance& inst,
                                                      std::size_t cap);

}  // namespace augmatch
