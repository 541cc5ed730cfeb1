#include "augmatch/formula.hpp"

#include "doctest.h"

#include <cstdint>
#include <string>

using namespace augmatch;

TEST_CASE("parse_formula: direct parse") {
  Formula f = parse_formula("p o3s 3 1\n1 2 3 0\n");
  CHECK(f.num_variables == 3);
  REQUIRE(f.clauses.size() == 1);
  CHECK(f.clauses[0][0] == Literal{1, false});
  CHECK(f.clauses[0][1] == Literal{2, false});
  CHECK(f.clauses[0][2] == Literal{3, false});
}

TEST_CASE("parse_formula: repeated variable inside a clause is allowed") {
  Formula f = parse_formula("p o3s 2 1\n1 -2 2 0\n");
  REQUIRE(f.clauses.size() == 1);
  CHECK(f.clauses[0][0] == Literal{1, false});
  CHECK(f.clauses[0][1] == Literal{2, true});
  CHECK(f.clauses[0][2] == Literal{2, false});
}

TEST_CASE("parse_formula: comments and blank lines are skipped") {
  Formula f = parse_formula("# preamble\np o3s 2 2\n\n# middle\n1 2 -1 0\n-2 -2 -2 0\n");
  CHECK(f.num_variables == 2);
  CHECK(f.clauses.size() == 2);
}

TEST_CASE("parse_formula: error kinds") {
  auto kind_of = [](const std::string& text) {
    try {
      parse_formula(text);
    } catch (const FormulaError& e) {
      return e.kind;
    }
    FAIL("expected a parse failure");
    return FormulaError::Kind::Syntax;
  };
  CHECK(kind_of("p o3s 2 1\n1 2 0\n") == FormulaError::Kind::Arity);      // two literals
  CHECK(kind_of("p o3s 2 1\n1 2 3 4 0\n") == FormulaError::Kind::Arity);  // four literals
  CHECK(kind_of("p o3s 2 1\n1 2 3 0\n") == FormulaError::Kind::Range);    // variable 3 > 2
  CHECK(kind_of("nonsense\n") == FormulaError::Kind::Syntax);
  CHECK(kind_of("p cnf 2 1\n1 2 -1 0\n") == FormulaError::Kind::Syntax);  // wrong tag
  CHECK(kind_of("p o3s 2 1\n1 2 -1\n") == FormulaError::Kind::Syntax);    // missing terminator
  CHECK(kind_of("") == FormulaError::Kind::Syntax);
}

TEST_CASE("serialize then parse is the identity") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    Formula f = random_formula(4, 3, seed);
    CHECK(parse_formula(serialize_formula(f)) == f);
  }
  Formula empty;
  empty.num_variables = 2;
  CHECK(parse_formula(serialize_formula(empty)) == empty);
}

TEST_CASE("brute_force_1in3: one plain clause has the three one-hot assignments") {
  Formula f = parse_formula("p o3s 3 1\n1 2 3 0\n");
  auto sols = brute_force_1in3(f);
  REQUIRE(sols.size() == 3);
  for (const Assignment& a : sols) {
    int trues = (a.value(1) ? 1 : 0) + (a.value(2) ? 1 : 0) + (a.value(3) ? 1 : 0);
    CHECK(trues == 1);
    CHECK(satisfies_1in3(f, a));
  }
}

TEST_CASE("brute_force_1in3: x and not-x in one clause force the third literal false") {
  Formula f = parse_formula("p o3s 2 1\n1 -1 2 0\n");
  auto sols = brute_force_1in3(f);
  REQUIRE(sols.size() == 2);  // x1 free, x2 pinned false
  for (const Assignment& a : sols) CHECK_FALSE(a.value(2));
}

TEST_CASE("brute_force_1in3: clause (x,x,x) is unsatisfiable") {
  Formula f = parse_formula("p o3s 1 1\n1 1 1 0\n");
  CHECK(brute_force_1in3(f).empty());
}

TEST_CASE("brute_force_1in3: guard and re-check property") {
  Formula too_big;
  too_big.num_variables = 25;
  CHECK_THROWS_AS((void)brute_force_1in3(too_big), FormulaError);
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    Formula f = random_formula(4, 2, seed);
    auto sols = brute_force_1in3(f);
    CHECK(sols.size() <= 16);
    for (const Assignment& a : sols) {
      for (const Clause& cl : f.clauses) CHECK(clause_exactly_one(cl, a));
    }
  }
}

TEST_CASE("literal_value and clause_exactly_one") {
  Assignment a;
  a.values = {true, false};
  CHECK(literal_value(Literal{1, false}, a));
  CHECK_FALSE(literal_value(Literal{1, true}, a));
  CHECK(literal_value(Literal{2, true}, a));
  CHECK(clause_exactly_one({Literal{1, false}, Literal{2, false}, Literal{2, false}}, a));
  CHECK_FALSE(clause_exactly_one({Literal{1, false}, Literal{1, false}, Literal{2, false}}, a));
}

TEST_CASE("random_formula: deterministic per seed, literals in range") {
  CHECK(random_formula(3, 1, 1) == random_formula(3, 1, 1));
  CHECK(random_formula(3, 5, 1) == random_formula(3, 5, 1));
  Formula single = random_formula(1, 1, 77);
  for (const Literal& l : single.clauses.at(0)) CHECK(l.var == 1);
  Formula wide = random_formula(4, 8, 7);
  CHECK(wide.num_variables == 4);
  REQUIRE(wide.clauses.size() == 8);
  bool differs_somewhere = false;
  for (const Clause& cl : wide.clauses)
    for (const Literal& l : cl) {
      CHECK(l.var >= 1);
      CHECK(l.var <= 4);
      if (l.var != wide.clauses[0][0].var || l.neg != wide.clauses[0][0].neg)
        differs_somewhere = true;
    }
  CHECK(differs_somewhere);  // sanity: the generator is not constant
  CHECK_FALSE(random_formula(4, 8, 7) == random_formula(4, 8, 8));
}
