#include "augmatch/instance.hpp"
#include "augmatch/json_io.hpp"

#include "doctest.h"

#include <string>

using namespace augmatch;

namespace {

Vertex V(int id, long long x, long long y, std::optional<Color> c) {
  return Vertex{id, Pt{Rat(x), Rat(y)}, c};
}

MatchingInstance two_point_pair() {
  MatchingInstance inst;
  inst.mode = Mode::Colored;
  inst.vertices = {V(0, 0, 0, Color::Cross), V(1, 4, 0, Color::Circle)};
  inst.mandatory_edges = {{0, 1}};
  return inst;
}

}  // namespace

TEST_CASE("validate_instance: well-formed two-point pair") {
  CHECK_FALSE(validate_instance(two_point_pair()).has_value());
}

TEST_CASE("validate_instance: violation codes") {
  SUBCASE("degree two") {
    MatchingInstance inst;
    inst.mode = Mode::Uncolored;
    inst.vertices = {V(1, 0, 0, {}), V(2, 4, 0, {}), V(3, 8, 0, {})};
    inst.mandatory_edges = {{1, 2}, {2, 3}};
    auto v = validate_instance(inst);
    REQUIRE(v.has_value());
    CHECK(v->code == "DegreeViolation");
    CHECK(v->ids == std::vector<int>{2});
  }
  SUBCASE("crossing mandatory edges") {
    MatchingInstance inst;
    inst.mode = Mode::Uncolored;
    inst.vertices = {V(0, 0, 0, {}), V(1, 4, 4, {}), V(2, 0, 4, {}), V(3, 4, 0, {})};
    inst.mandatory_edges = {{0, 1}, {2, 3}};
    auto v = validate_instance(inst);
    REQUIRE(v.has_value());
    CHECK(v->code == "CrossingViolation");
  }
  SUBCASE("duplicate id") {
    MatchingInstance inst;
    inst.mode = Mode::Uncolored;
    inst.vertices = {V(7, 0, 0, {}), V(7, 1, 1, {})};
    auto v = validate_instance(inst);
    REQUIRE(v.has_value());
    CHECK(v->code == "DuplicateId");
  }
  SUBCASE("duplicate position") {
    MatchingInstance inst;
    inst.mode = Mode::Uncolored;
    inst.vertices = {V(0, 2, 3, {}), V(1, 2, 3, {})};
    auto v = validate_instance(inst);
    REQUIRE(v.has_value());
    CHECK(v->code == "DuplicatePosition");
  }
  SUBCASE("mode discipline") {
    MatchingInstance inst;
    inst.mode = Mode::Colored;
    inst.vertices = {V(0, 0, 0, Color::Cross), V(1, 4, 0, {})};
    auto v = validate_instance(inst);
    REQUIRE(v.has_value());
    CHECK(v->code == "ModeViolation");
    inst.mode = Mode::Uncolored;
    auto w = validate_instance(inst);
    REQUIRE(w.has_value());
    CHECK(w->code == "ModeViolation");
  }
  SUBCASE("edge names a missing vertex") {
    MatchingInstance inst;
    inst.mode = Mode::Uncolored;
    inst.vertices = {V(0, 0, 0, {}), V(1, 4, 0, {})};
    inst.mandatory_edges = {{0, 9}};
    auto v = validate_instance(inst);
    REQUIRE(v.has_value());
    CHECK(v->code == "UnknownVertex");
  }
  SUBCASE("self loop") {
    MatchingInstance inst;
    inst.mode = Mode::Uncolored;
    inst.vertices = {V(0, 0, 0, {}), V(1, 4, 0, {})};
    inst.mandatory_edges = {{1, 1}};
    auto v = validate_instance(inst);
    REQUIRE(v.has_value());
    CHECK(v->code == "SelfLoop");
  }
  SUBCASE("same-colored mandatory edge") {
    MatchingInstance inst;
    inst.mode = Mode::Colored;
    inst.vertices = {V(0, 0, 0, Color::Cross), V(1, 4, 0, Color::Cross)};
    inst.mandatory_edges = {{0, 1}};
    auto v = validate_instance(inst);
    REQUIRE(v.has_value());
    CHECK(v->code == "ColorViolation");
  }
}

TEST_CASE("verify_augmentation: pinned examples") {
  SUBCASE("two points, one added pair") {
    MatchingInstance inst;
    inst.mode = Mode::Colored;
    inst.vertices = {V(0, 0, 0, Color::Cross), V(1, 4, 0, Color::Circle)};
    CHECK_FALSE(verify_augmentation(inst, Augmentation{{{0, 1}}}).has_value());
  }
  SUBCASE("added edge crossing a mandatory edge") {
    MatchingInstance inst;
    inst.mode = Mode::Uncolored;
    inst.vertices = {V(0, 1, 1, {}), V(1, 1, -1, {}), V(2, 0, 0, {}), V(3, 2, 0, {})};
    inst.mandatory_edges = {{0, 1}};
    auto v = verify_augmentation(inst, Augmentation{{{2, 3}}});
    REQUIRE(v.has_value());
    CHECK(v->code == "CrossingViolation");
    SUBCASE("geometry check can be switched off") {
      VerifyOptions opts;
      opts.geometry = GeomCheck::Off;
      CHECK_FALSE(verify_augmentation(inst, Augmentation{{{2, 3}}}, opts).has_value());
    }
    SUBCASE("sweep finds it too") {
      VerifyOptions opts;
      opts.geometry = GeomCheck::Sweep;
      auto w = verify_augmentation(inst, Augmentation{{{2, 3}}}, opts);
      REQUIRE(w.has_value());
      CHECK(w->code == "CrossingViolation");
    }
  }
  SUBCASE("vertex left unmatched") {
    MatchingInstance inst;
    inst.mode = Mode::Uncolored;
    inst.vertices = {V(0, 0, 0, {}), V(1, 4, 0, {}), V(2, 8, 0, {}), V(3, 12, 0, {})};
    auto v = verify_augmentation(inst, Augmentation{{{0, 1}}});
    REQUIRE(v.has_value());
    CHECK(v->code == "NotPerfect");
  }
  SUBCASE("vertex matched twice") {
    MatchingInstance inst;
    inst.mode = Mode::Uncolored;
    inst.vertices = {V(0, 0, 0, {}), V(1, 4, 0, {}), V(2, 8, 0, {})};
    auto v = verify_augmentation(inst, Augmentation{{{0, 1}, {1, 2}}});
    REQUIRE(v.has_value());
    CHECK(v->code == "DegreeViolation");
  }
  SUBCASE("same-colored added edge") {
    MatchingInstance inst;
    inst.mode = Mode::Colored;
    inst.vertices = {V(0, 0, 0, Color::Cross), V(1, 4, 0, Color::Cross)};
    auto v = verify_augmentation(inst, Augmentation{{{0, 1}}});
    REQUIRE(v.has_value());
    CHECK(v->code == "ColorViolation");
  }
}

TEST_CASE("erase_colors keeps geometry and edges, drops colors") {
  MatchingInstance inst = two_point_pair();
  MatchingInstance plain = erase_colors(inst);
  CHECK(plain.mode == Mode::Uncolored);
  REQUIRE(plain.vertices.size() == 2);
  CHECK(plain.vertices[0].pos == inst.vertices[0].pos);
  CHECK_FALSE(plain.vertices[0].color.has_value());
  CHECK(plain.mandatory_edges == inst.mandatory_edges);
  CHECK_THROWS_AS((void)erase_colors(plain), std::logic_error);
}

TEST_CASE("color_counts") {
  CHECK(color_counts(two_point_pair()) == std::pair<std::size_t, std::size_t>{1, 1});
  MatchingInstance empty;
  CHECK(color_counts(empty) == std::pair<std::size_t, std::size_t>{0, 0});
  CHECK(color_counts(erase_colors(two_point_pair())) ==
        std::pair<std::size_t, std::size_t>{0, 0});
}

TEST_CASE("free_vertex_ids: ascending uncovered ids") {
  MatchingInstance inst;
  inst.mode = Mode::Uncolored;
  inst.vertices = {V(5, 0, 0, {}), V(2, 4, 0, {}), V(9, 8, 0, {}), V(4, 12, 0, {})};
  inst.mandatory_edges = {{5, 2}};
  CHECK(free_vertex_ids(inst) == std::vector<int>{4, 9});
}

TEST_CASE("instance JSON: byte-exact round trip") {
  MatchingInstance inst;
  inst.mode = Mode::Colored;
  inst.vertices = {V(0, 0, 0, Color::Cross), V(1, 4, 0, Color::Circle)};
  inst.vertices.push_back(Vertex{2, Pt{Rat(3) / 4, Rat(-7) / 2}, Color::Cross});
  inst.vertices.push_back(Vertex{3, Pt{Rat(100), Rat(100)}, Color::Circle});
  inst.mandatory_edges = {{0, 1}};
  std::string text = instance_to_json(inst);
  MatchingInstance back = instance_from_json(text);
  CHECK(back.mode == inst.mode);
  REQUIRE(back.vertices.size() == inst.vertices.size());
  for (size_t i = 0; i < back.vertices.size(); ++i) {
    CHECK(back.vertices[i].id == inst.vertices[i].id);
    CHECK(back.vertices[i].pos == inst.vertices[i].pos);
    CHECK(back.vertices[i].color == inst.vertices[i].color);
  }
  CHECK(back.mandatory_edges == inst.mandatory_edges);
  CHECK(instance_to_json(back) == text);

  MatchingInstance plain = erase_colors(inst);
  std::string plain_text = instance_to_json(plain);
  CHECK(instance_to_json(instance_from_json(plain_text)) == plain_text);
}

TEST_CASE("instance JSON: malformed documents are rejected") {
  CHECK_THROWS_AS((void)instance_from_json("not json"), std::invalid_argument);
  CHECK_THROWS_AS((void)instance_from_json("{}"), std::invalid_argument);
  CHECK_THROWS_AS(
      (void)instance_from_json(
          R"({"mode":"colored","vertices":[{"id":0,"x":"0/1","y":"0/1","color":"green"}],"edges":[]})"),
      std::invalid_argument);
}

TEST_CASE("augmentation JSON round trip") {
  Augmentation aug{{{0, 1}, {2, 3}}};
  std::string text = augmentation_to_json(aug);
  Augmentation back = augmentation_from_json(text);
  CHECK(back.added_edges == aug.added_edges);
  CHECK(augmentation_to_json(back) == text);
}
