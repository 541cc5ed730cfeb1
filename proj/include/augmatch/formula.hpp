#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace augmatch {

struct Literal {
  int var = 1;  // 1-based variable index
  bool neg = false;
  bool operator==(const Literal& o) const { return var == o.var && neg == o.neg; }
};

using Clause = std::array<Literal, 3>;

// A conjunction of three-literal clauses under exactly-one-true semantics.
// Clauses may repeat variables; every literal occurrence is handled on its own.
struct Formula {
  int num_variables = 0;
  std::vector<Clause> clauses;
  bool operator==(const Formula& o) const {
    return num_variables == o.num_variables && clauses == o.clauses;
  }
};

struct Assignment {
  std::vector<bool> values;  // values[v-1] is the value of variable v
  bool value(int var) const { return values.at(static_cast<size_t>(var) - 1); }
  bool operator==(const Assignment& o) const { return values == o.values; }
};

class FormulaError : public std::runtime_error {
 public:
  enum class Kind { Syntax, Arity, Range, TooLarge };
  FormulaError(Kind k, const std::string& msg) : std::runtime_error(msg), kind(k) {}
  Kind kind;
};

// Text format: header line "p o3s <num_variables> <num_clauses>", then one
// clause per line as three nonzero integers terminated by 0; '#' starts a
// comment line.
Formula parse_formula(std::istream& in);
Formula parse_formula(const std::string& text);
std::string serialize_formula(const Formula& f);

bool literal_value(const Literal& lit, const Assignment& a);
bool clause_exactly_one(const Clause& cl, const Assignment& a);
bool satisfies_1in3(const Formula& f, const Assignment& a);

// Exhaustive ground-truth oracle; guard num_variables <= 24 (TooLarge).
std::vector<Assignment> brute_force_1in3(const Formula& f);

// Deterministic generator: m clauses of 3 uniformly chosen literals over n
// variables; identical (n, m, seed) yields identical formulas.
Formula random_formula(int n, int m, std::uint64_t seed);

}  // namespace augmatch
