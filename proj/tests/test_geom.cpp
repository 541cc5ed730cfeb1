#include "augmatch/geom.hpp"

#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

using namespace augmatch;

namespace {

Pt P(long long x, long long y) { return Pt{Rat(x), Rat(y)}; }
Seg S(long long ax, long long ay, long long bx, long long by) { return Seg{P(ax, ay), P(bx, by)}; }

// Independent double-precision reference for segment intersection. On the
// small integer boxes used below every product fits a double exactly, so this
// oracle is itself exact and must agree with the rational predicate bit for
// bit.
int dsign(double v) { return v > 0 ? 1 : (v < 0 ? -1 : 0); }

int dorient(double ax, double ay, double bx, double by, double cx, double cy) {
  return dsign((bx - ax) * (cy - ay) - (by - ay) * (cx - ax));
}

bool don_segment(double px, double py, double ax, double ay, double bx, double by) {
  if (dorient(ax, ay, bx, by, px, py) != 0) return false;
  return std::min(ax, bx) <= px && px <= std::max(ax, bx) && std::min(ay, by) <= py &&
         py <= std::max(ay, by);
}

bool dintersect(double ax, double ay, double bx, double by, double cx, double cy, double dx,
                double dy) {
  int d1 = dorient(cx, cy, dx, dy, ax, ay);
  int d2 = dorient(cx, cy, dx, dy, bx, by);
  int d3 = dorient(ax, ay, bx, by, cx, cy);
  int d4 = dorient(ax, ay, bx, by, dx, dy);
  if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0)))
    return true;
  if (d1 == 0 && don_segment(ax, ay, cx, cy, dx, dy)) return true;
  if (d2 == 0 && don_segment(bx, by, cx, cy, dx, dy)) return true;
  if (d3 == 0 && don_segment(cx, cy, ax, ay, bx, by)) return true;
  if (d4 == 0 && don_segment(dx, dy, ax, ay, bx, by)) return true;
  return false;
}

}  // namespace

TEST_CASE("orient: pinned sign examples") {
  CHECK(orient(P(0, 0), P(1, 0), P(0, 1)) == 1);
  CHECK(orient(P(0, 0), P(1, 1), P(2, 2)) == 0);
  CHECK(orient(P(0, 0), P(0, 1), P(1, 0)) == -1);
}

TEST_CASE("orient: antisymmetric under swapping any two arguments") {
  std::mt19937_64 rng(42);
  std::uniform_int_distribution<long long> coord(-50, 50);
  for (int t = 0; t < 500; ++t) {
    Pt a = P(coord(rng), coord(rng));
    Pt b = P(coord(rng), coord(rng));
    Pt c = P(coord(rng), coord(rng));
    int s = orient(a, b, c);
    CHECK(orient(b, a, c) == -s);
    CHECK(orient(a, c, b) == -s);
    CHECK(orient(c, b, a) == -s);
  }
}

TEST_CASE("orient: exact far beyond double precision") {
  // (M,M), (2M,2M) and a point one unit off the diagonal: doubles round this
  // cross product to zero, the rational predicate must not.
  Rat big = Rat(boost::multiprecision::cpp_int(1) << 60);
  Pt a{big, big};
  Pt b{big * 2, big * 2};
  Pt c{big * 3, big * 3 + 1};
  CHECK(orient(a, b, c) == 1);
}

TEST_CASE("point_on_segment and point_strictly_inside") {
  Seg s = S(0, 0, 2, 2);
  CHECK(point_on_segment(P(1, 1), s));
  CHECK(point_strictly_inside(P(1, 1), s));
  CHECK(point_on_segment(P(0, 0), s));
  CHECK_FALSE(point_strictly_inside(P(0, 0), s));
  CHECK_FALSE(point_on_segment(P(3, 3), s));
  CHECK_FALSE(point_on_segment(P(1, 2), s));
}

TEST_CASE("segments_conflict: pinned examples") {
  CHECK(segments_conflict(S(0, 0, 2, 2), S(0, 2, 2, 0)));        // proper crossing at (1,1)
  CHECK_FALSE(segments_conflict(S(0, 0, 1, 0), S(0, 1, 1, 1)));  // parallel, disjoint
  CHECK(segments_conflict(S(0, 0, 2, 0), S(1, 0, 3, 1)));        // endpoint on interior
}

TEST_CASE("segments_conflict: collinear overlap counts as conflict") {
  CHECK(segments_conflict(S(0, 0, 4, 0), S(1, 0, 3, 0)));
  CHECK(segments_conflict(S(0, 0, 4, 0), S(3, 0, 6, 0)));
  CHECK_FALSE(segments_conflict(S(0, 0, 2, 0), S(3, 0, 6, 0)));  // collinear, separated
}

TEST_CASE("segments_conflict: shared endpoints are a caller bug") {
  CHECK_THROWS_AS((void)segments_conflict(S(0, 0, 2, 2), S(0, 0, 3, 1)), SharedEndpointError);
  CHECK_THROWS_AS((void)segments_conflict(S(0, 0, 2, 2), S(5, 5, 2, 2)), SharedEndpointError);
}

TEST_CASE("segments_conflict_shared_ok: endpoint contact is legal, overlap is not") {
  CHECK_FALSE(segments_conflict_shared_ok(S(0, 0, 2, 2), S(2, 2, 4, 1)));  // hinge
  CHECK(segments_conflict_shared_ok(S(0, 0, 2, 0), S(1, 0, 4, 0)));  // collinear overlap
  CHECK(segments_conflict_shared_ok(S(0, 0, 4, 0), S(2, 0, 6, 0)));  // overlap, shares no endpoint
  CHECK(segments_conflict_shared_ok(S(0, 0, 2, 0), S(0, 0, 2, 0)));  // identical
  CHECK(segments_conflict_shared_ok(S(0, 0, 4, 0), S(0, 0, 2, 0)));  // overlap beyond shared end
  CHECK(segments_conflict_shared_ok(S(0, 0, 2, 2), S(0, 2, 2, 0)));  // plain crossing
  CHECK_FALSE(segments_conflict_shared_ok(S(0, 0, 1, 0), S(0, 1, 1, 1)));
}

TEST_CASE("segments_conflict: symmetric and agreeing with the double oracle") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long long> coord(-10, 10);
  int checked = 0;
  while (checked < 10000) {
    long long ax = coord(rng), ay = coord(rng), bx = coord(rng), by = coord(rng);
    long long cx = coord(rng), cy = coord(rng), dx = coord(rng), dy = coord(rng);
    // The exact predicate requires pairwise distinct endpoints.
    std::vector<std::pair<long long, long long>> pts = {{ax, ay}, {bx, by}, {cx, cy}, {dx, dy}};
    std::sort(pts.begin(), pts.end());
    if (std::adjacent_find(pts.begin(), pts.end()) != pts.end()) continue;
    ++checked;
    Seg s1 = S(ax, ay, bx, by), s2 = S(cx, cy, dx, dy);
    bool exact = segments_conflict(s1, s2);
    CHECK(segments_conflict(s2, s1) == exact);
    bool oracle = dintersect(static_cast<double>(ax), static_cast<double>(ay),
                             static_cast<double>(bx), static_cast<double>(by),
                             static_cast<double>(cx), static_cast<double>(cy),
                             static_cast<double>(dx), static_cast<double>(dy));
    REQUIRE(exact == oracle);
  }
}

TEST_CASE("free_direction: single blocked ray leaves the opposite side open") {
  std::vector<Pt> others = {P(1, 0)};
  auto d = free_direction(P(0, 0), others, Rat(10));
  REQUIRE(d.has_value());
  CHECK(cone_is_clear(P(0, 0), *d, others, Rat(10)));
  CHECK(d->x < 0);  // the widest gap faces away from (1,0)
  CHECK(d->x * d->x + d->y * d->y == 1);
}

TEST_CASE("free_direction: four axis rays leave diagonal cones") {
  std::vector<Pt> others = {P(1, 0), P(0, 1), P(-1, 0), P(0, -1)};
  auto d = free_direction(P(0, 0), others, Rat(10));
  REQUIRE(d.has_value());
  CHECK(cone_is_clear(P(0, 0), *d, others, Rat(10)));
  CHECK(d->x != 0);
  CHECK(d->y != 0);
}

TEST_CASE("free_direction: 720 narrow rays admit no 1-degree cone") {
  std::vector<Pt> others;
  others.reserve(720);
  const double pi = 3.14159265358979323846;
  for (int k = 0; k < 720; ++k) {
    double ang = pi * static_cast<double>(k) / 360.0;
    others.push_back(P(std::llround(1e6 * std::cos(ang)), std::llround(1e6 * std::sin(ang))));
  }
  CHECK_FALSE(free_direction(P(0, 0), others, Rat(1)).has_value());
}

TEST_CASE("cone_is_clear: direct checks") {
  CHECK(cone_is_clear(P(0, 0), Dir{Rat(1), Rat(0)}, {P(-5, 0)}, Rat(90)));
  CHECK_FALSE(cone_is_clear(P(0, 0), Dir{Rat(1), Rat(0)}, {P(5, 1)}, Rat(45)));
}

TEST_CASE("rational strings: canonical form and exact round trip") {
  CHECK(rat_to_string(Rat(3)) == "3/1");
  CHECK(rat_to_string(Rat(-7) / 2) == "-7/2");
  CHECK(rat_from_string("4/6") == Rat(2) / 3);
  CHECK(rat_from_string("7") == Rat(7));
  CHECK(rat_from_string("-7/2") == Rat(-7) / 2);
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<long long> num(-1'000'000, 1'000'000);
  std::uniform_int_distribution<long long> den(1, 1'000'000);
  for (int t = 0; t < 200; ++t) {
    Rat v = Rat(num(rng)) / den(rng);
    std::string s = rat_to_string(v);
    CHECK(rat_from_string(s) == v);
    CHECK(rat_to_string(rat_from_string(s)) == s);
  }
  CHECK_THROWS_AS((void)rat_from_string("1/0"), std::invalid_argument);
  CHECK_THROWS_AS((void)rat_from_string("abc"), std::invalid_argument);
  CHECK_THROWS_AS((void)rat_from_string(""), std::invalid_argument);
}

TEST_CASE("conflict finders: sweep agrees with quadratic") {
  SUBCASE("known conflict-free family") {
    std::vector<Seg> segs;
    for (int i = 0; i < 40; ++i) segs.push_back(S(0, 2 * i, 37, 2 * i));
    CHECK_FALSE(find_conflict_sweep(segs).has_value());
    CHECK_FALSE(find_conflict_quadratic(segs).has_value());
    segs.push_back(S(5, -1, 5, 100));  // crosses every horizontal
    CHECK(find_conflict_sweep(segs).has_value());
    CHECK(find_conflict_quadratic(segs).has_value());
  }
  SUBCASE("random differential") {
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<long long> coord(0, 60);
    for (int trial = 0; trial < 120; ++trial) {
      std::vector<std::pair<long long, long long>> pts;
      while (pts.size() < 16) {
        std::pair<long long, long long> p{coord(rng), coord(rng)};
        if (std::find(pts.begin(), pts.end(), p) == pts.end()) pts.push_back(p);
      }
      std::vector<Seg> segs;
      for (size_t i = 0; i + 1 < pts.size(); i += 2)
        segs.push_back(S(pts[i].first, pts[i].second, pts[i + 1].first, pts[i + 1].second));
      bool sweep_hit = find_conflict_sweep(segs).has_value();
      bool quad_hit = find_conflict_quadratic(segs).has_value();
      REQUIRE(sweep_hit == quad_hit);
      if (quad_hit) {
        auto [i, j] = *find_conflict_sweep(segs);
        REQUIRE(i != j);
        CHECK(segments_conflict(segs[static_cast<size_t>(i)], segs[static_cast<size_t>(j)]));
      }
    }
  }
}

TEST_CASE("lex_less orders by x then y") {
  CHECK(lex_less(P(0, 5), P(1, 0)));
  CHECK(lex_less(P(1, 0), P(1, 2)));
  CHECK_FALSE(lex_less(P(1, 2), P(1, 2)));
}
