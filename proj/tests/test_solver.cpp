#include "augmatch/solver.hpp"

#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

using namespace augmatch;

namespace {

Pt P(long long x, long long y) { return Pt{Rat(x), Rat(y)}; }

Vertex V(int id, long long x, long long y, std::optional<Color> c) {
  return Vertex{id, Pt{Rat(x), Rat(y)}, c};
}

// Random points with pairwise distinct positions and no three collinear,
// built with plain integer arithmetic (coordinates are small).
std::vector<std::pair<long long, long long>> general_position_points(std::size_t n,
                                                                     std::mt19937_64& rng,
                                                                     long long box) {
  std::uniform_int_distribution<long long> coord(0, box);
  std::vector<std::pair<long long, long long>> pts;
  while (pts.size() < n) {
    std::pair<long long, long long> p{coord(rng), coord(rng)};
    bool ok = std::find(pts.begin(), pts.end(), p) == pts.end();
    for (std::size_t i = 0; ok && i < pts.size(); ++i)
      for (std::size_t j = i + 1; ok && j < pts.size(); ++j) {
        long long cross = (pts[j].first - pts[i].first) * (p.second - pts[i].second) -
                          (pts[j].second - pts[i].second) * (p.first - pts[i].first);
        if (cross == 0) ok = false;
      }
    if (ok) pts.push_back(p);
  }
  return pts;
}

double seg_length(const Pt& a, const Pt& b) {
  double dx = Rat(a.x - b.x).convert_to<double>();
  double dy = Rat(a.y - b.y).convert_to<double>();
  return std::sqrt(dx * dx + dy * dy);
}

}  // namespace

TEST_CASE("solve_augmentation: empty instance is augmentable with an empty witness") {
  MatchingInstance inst;
  inst.mode = Mode::Colored;
  SolveResult r = solve_augmentation(inst);
  CHECK(r.decision == Decision::Augmentable);
  REQUIRE(r.witness.has_value());
  CHECK(r.witness->added_edges.empty());
}

TEST_CASE("solve_augmentation: two opposite-colored points pair up") {
  MatchingInstance inst;
  inst.mode = Mode::Colored;
  inst.vertices = {V(0, 0, 0, Color::Cross), V(1, 4, 0, Color::Circle)};
  SolveResult r = solve_augmentation(inst);
  CHECK(r.decision == Decision::Augmentable);
  REQUIRE(r.witness.has_value());
  REQUIRE(r.witness->added_edges.size() == 1);
  auto [a, b] = r.witness->added_edges[0];
  CHECK(std::minmax(a, b) == std::minmax(0, 1));
}

TEST_CASE("solve_augmentation: mandatory edge blocks the only candidate") {
  MatchingInstance inst;
  inst.mode = Mode::Colored;
  inst.vertices = {V(0, 0, 0, Color::Circle), V(1, 2, 0, Color::Cross),
                   V(2, 1, 1, Color::Cross), V(3, 1, -1, Color::Circle)};
  inst.mandatory_edges = {{2, 3}};
  CHECK(solve_augmentation(inst).decision == Decision::NotAugmentable);
}

TEST_CASE("solve_augmentation: counting bounds answer without search") {
  SUBCASE("odd vertex count") {
    MatchingInstance inst;
    inst.mode = Mode::Uncolored;
    inst.vertices = {V(0, 0, 0, {}), V(1, 4, 0, {}), V(2, 8, 1, {})};
    SolveResult r = solve_augmentation(inst);
    CHECK(r.decision == Decision::NotAugmentable);
    CHECK(r.stats.nodes_explored == 0);
  }
  SUBCASE("unequal free colors") {
    MatchingInstance inst;
    inst.mode = Mode::Colored;
    inst.vertices = {V(0, 0, 0, Color::Cross), V(1, 4, 0, Color::Cross),
                     V(2, 8, 1, Color::Circle), V(3, 12, 0, Color::Cross)};
    SolveResult r = solve_augmentation(inst);
    CHECK(r.decision == Decision::NotAugmentable);
    CHECK(r.stats.nodes_explored == 0);
  }
}

TEST_CASE("solve_augmentation: invalid instances are rejected") {
  MatchingInstance inst;
  inst.mode = Mode::Uncolored;
  inst.vertices = {V(0, 0, 0, {}), V(1, 0, 0, {})};  // duplicate position
  CHECK_THROWS_AS((void)solve_augmentation(inst), SolverInputError);
  try {
    (void)solve_augmentation(inst);
  } catch (const SolverInputError& e) {
    CHECK(e.kind == SolverInputError::Kind::InvalidInstance);
    REQUIRE(e.violation.has_value());
    CHECK(e.violation->code == "DuplicatePosition");
  }
}

TEST_CASE("solve_augmentation: deterministic witness, node budget yields TIMEOUT") {
  // 120 far-apart islands of one cross and one circle each; easy to solve,
  // large enough to engage the spatial index and to exceed a 3-node budget.
  MatchingInstance inst;
  inst.mode = Mode::Colored;
  int id = 0;
  for (int k = 0; k < 240; ++k) {
    long long bx = 40 * (k % 16), by = 40 * (k / 16);
    inst.vertices.push_back(V(id++, bx, by, Color::Cross));
    inst.vertices.push_back(V(id++, bx + 3, by + 1, Color::Circle));
  }
  SolveResult r1 = solve_augmentation(inst);
  SolveResult r2 = solve_augmentation(inst);
  CHECK(r1.decision == Decision::Augmentable);
  REQUIRE(r1.witness.has_value());
  REQUIRE(r2.witness.has_value());
  CHECK(r1.witness->added_edges == r2.witness->added_edges);
  CHECK_FALSE(verify_augmentation(inst, *r1.witness).has_value());

  SearchLimits tiny;
  tiny.max_nodes = 3;
  CHECK(solve_augmentation(inst, tiny).decision == Decision::Timeout);
}

TEST_CASE("sweep_perfect_matching: pinned examples") {
  std::vector<Pt> pts = {P(0, 0), P(1, 5), P(2, 1), P(3, 4)};
  auto m = sweep_perfect_matching(pts);
  REQUIRE(m.size() == 2);
  CHECK(m[0] == std::pair<int, int>{0, 1});
  CHECK(m[1] == std::pair<int, int>{2, 3});

  std::vector<Pt> two = {P(9, 9), P(1, 2)};
  auto m2 = sweep_perfect_matching(two);
  REQUIRE(m2.size() == 1);
  CHECK(std::minmax(m2[0].first, m2[0].second) == std::minmax(0, 1));
}

TEST_CASE("sweep_perfect_matching: error kinds") {
  try {
    (void)sweep_perfect_matching({P(0, 0), P(1, 1), P(2, 3)});
    FAIL("odd count accepted");
  } catch (const SolverInputError& e) {
    CHECK(e.kind == SolverInputError::Kind::OddCount);
  }
  try {
    (void)sweep_perfect_matching({P(0, 0), P(1, 1), P(2, 2), P(5, 0)});
    FAIL("collinear triple accepted");
  } catch (const SolverInputError& e) {
    CHECK(e.kind == SolverInputError::Kind::CollinearTriple);
  }
}

TEST_CASE("sweep_perfect_matching: random sets verify as perfect non-crossing matchings") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 12; ++trial) {
    std::size_t n = 2 * (4 + trial * 2);
    auto raw = general_position_points(n, rng, 1000);
    std::vector<Pt> pts;
    MatchingInstance wrapper;
    wrapper.mode = Mode::Uncolored;
    for (std::size_t i = 0; i < raw.size(); ++i) {
      pts.push_back(P(raw[i].first, raw[i].second));
      wrapper.vertices.push_back(V(static_cast<int>(i), raw[i].first, raw[i].second, {}));
    }
    auto m = sweep_perfect_matching(pts);
    REQUIRE(m.size() == n / 2);
    Augmentation aug;
    for (auto [a, b] : m) aug.added_edges.emplace_back(a, b);
    CHECK_FALSE(verify_augmentation(wrapper, aug).has_value());
  }
}

TEST_CASE("min_length_bichromatic: pinned example avoids the crossing pairing") {
  std::vector<Pt> reds = {P(0, 0), P(4, 0)};
  std::vector<Pt> blues = {P(1, 1), P(3, 1)};
  auto m = min_length_bichromatic(reds, blues);
  REQUIRE(m.size() == 2);
  std::vector<int> blue_of(2, -1);
  for (auto [r, b] : m) blue_of[static_cast<size_t>(r)] = b;
  CHECK(blue_of[0] == 0);
  CHECK(blue_of[1] == 1);
}

TEST_CASE("min_length_bichromatic: single pair and error kinds") {
  auto one = min_length_bichromatic({P(0, 0)}, {P(5, 5)});
  REQUIRE(one.size() == 1);
  CHECK(one[0] == std::pair<int, int>{0, 0});
  try {
    (void)min_length_bichromatic({P(0, 0)}, {P(1, 1), P(2, 3)});
    FAIL("size mismatch accepted");
  } catch (const SolverInputError& e) {
    CHECK(e.kind == SolverInputError::Kind::SizeMismatch);
  }
  std::vector<Pt> many_r, many_b;
  for (int i = 0; i < 65; ++i) {
    many_r.push_back(P(i, 0));
    many_b.push_back(P(i, 7));
  }
  try {
    (void)min_length_bichromatic(many_r, many_b);
    FAIL("over-limit size accepted");
  } catch (const SolverInputError& e) {
    CHECK(e.kind == SolverInputError::Kind::TooLarge);
  }
}

TEST_CASE("min_length_bichromatic: matches the factorial oracle at n = 5") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 20; ++trial) {
    auto raw = general_position_points(10, rng, 400);
    std::vector<Pt> reds, blues;
    for (int i = 0; i < 5; ++i) reds.push_back(P(raw[static_cast<size_t>(i)].first,
                                                 raw[static_cast<size_t>(i)].second));
    for (int i = 5; i < 10; ++i) blues.push_back(P(raw[static_cast<size_t>(i)].first,
                                                   raw[static_cast<size_t>(i)].second));
    auto m = min_length_bichromatic(reds, blues);
    double got = 0;
    for (auto [r, b] : m)
      got += seg_length(reds[static_cast<size_t>(r)], blues[static_cast<size_t>(b)]);
    std::vector<int> perm(5);
    std::iota(perm.begin(), perm.end(), 0);
    double best = 1e100;
    do {
      double tot = 0;
      for (int r = 0; r < 5; ++r)
        tot += seg_length(reds[static_cast<size_t>(r)], blues[static_cast<size_t>(perm[static_cast<size_t>(r)])]);
      best = std::min(best, tot);
    } while (std::next_permutation(perm.begin(), perm.end()));
    CHECK(got == doctest::Approx(best).epsilon(1e-9));
    // Non-crossing, by the exchange argument; asserted directly.
    for (std::size_t i = 0; i < m.size(); ++i)
      for (std::size_t j = i + 1; j < m.size(); ++j) {
        Seg si{reds[static_cast<size_t>(m[i].first)], blues[static_cast<size_t>(m[i].second)]};
        Seg sj{reds[static_cast<size_t>(m[j].first)], blues[static_cast<size_t>(m[j].second)]};
        CHECK_FALSE(segments_conflict(si, sj));
      }
  }
}

TEST_CASE("enumerate_all_augmentations: quadrilateral has the two non-crossing pairings") {
  MatchingInstance inst;
  inst.mode = Mode::Uncolored;
  inst.vertices = {V(0, 0, 0, {}), V(1, 4, 0, {}), V(2, 4, 4, {}), V(3, 0, 4, {})};
  auto all = enumerate_all_augmentations(inst, 100);
  CHECK(all.size() == 2);
  for (const Augmentation& aug : all) CHECK_FALSE(verify_augmentation(inst, aug).has_value());
  CHECK(enumerate_all_augmentations(inst, 1).size() == 1);
}

TEST_CASE("enumerate_all_augmentations: blocked instance yields nothing, guard throws") {
  MatchingInstance blocked;
  blocked.mode = Mode::Colored;
  blocked.vertices = {V(0, 0, 0, Color::Circle), V(1, 2, 0, Color::Cross),
                      V(2, 1, 1, Color::Cross), V(3, 1, -1, Color::Circle)};
  blocked.mandatory_edges = {{2, 3}};
  CHECK(enumerate_all_augmentations(blocked, 10).empty());

  MatchingInstance big;
  big.mode = Mode::Uncolored;
  for (int i = 0; i < 32; ++i) big.vertices.push_back(V(i, i, i * i, {}));
  CHECK_THROWS_AS((void)enumerate_all_augmentations(big, 10), SolverInputError);
}

TEST_CASE("solver and enumerator agree on random small instances") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 30; ++trial) {
    auto raw = general_position_points(8, rng, 60);
    MatchingInstance inst;
    inst.mode = Mode::Colored;
    for (int i = 0; i < 8; ++i)
      inst.vertices.push_back(
          V(i, raw[static_cast<size_t>(i)].first, raw[static_cast<size_t>(i)].second,
            i % 2 == 0 ? Color::Cross : Color::Circle));
    if (trial % 2 == 0) inst.mandatory_edges = {{0, 1}};
    SolveResult r = solve_augmentation(inst);
    auto all = enumerate_all_augmentations(inst, 10000);
    CHECK((r.decision == Decision::Augmentable) == !all.empty());
    if (r.decision == Decision::Augmentable)
      CHECK_FALSE(verify_augmentation(inst, *r.witness).has_value());
  }
}
