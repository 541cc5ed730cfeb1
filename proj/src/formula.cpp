#include "augmatch/formula.hpp"

#include <random>
#include <sstream>

namespace augmatch {

namespace {

using Kind = FormulaError::Kind;

[[noreturn]] void fail(Kind k, const std::string& msg) { throw FormulaError(k, msg); }

// Strips a trailing comment and returns the non-comment prefix of a line.
std::string strip_comment(const std::string& line) {
  auto pos = line.find('#');
  return pos == std::string::npos ? line : line.substr(0, pos);
}

bool blank(const std::string& s) {
  return s.find_first_not_of(" \t\r\n") == std::string::npos;
}

}  // namespace

Formula parse_formula(std::istream& in) {
  Formula f;
  std::string line;
  bool header_seen = false;
  int clauses_expected = 0;
  while (std::getline(in, line)) {
    std::string body = strip_comment(line);
    if (blank(body)) continue;
    std::istringstream ls(body);
    if (!header_seen) {
      std::string p, tag;
      if (!(ls >> p >> tag) || p != "p" || tag != "o3s") {
        fail(Kind::Syntax, "expected header 'p o3s <vars> <clauses>', got: " + line);
      }
      if (!(ls >> f.num_variables >> clauses_expected)) {
        fail(Kind::Syntax, "header missing variable/clause counts: " + line);
      }
      if (f.num_variables < 0 || clauses_expected < 0) {
        fail(Kind::Syntax, "negative counts in header: " + line);
      }
      std::string extra;
      if (ls >> extra) fail(Kind::Syntax, "trailing tokens in header: " + line);
      header_seen = true;
      continue;
    }
    std::vector<long long> nums;
    long long x = 0;
    while (ls >> x) nums.push_back(x);
    if (!ls.eof()) fail(Kind::Syntax, "non-integer token in clause line: " + line);
    if (nums.empty()) continue;
    if (nums.back() != 0) fail(Kind::Syntax, "clause line not terminated by 0: " + line);
    nums.pop_back();
    if (nums.size() != 3) {
      fail(Kind::Arity, "clause must have exactly 3 literals, got " +
                            std::to_string(nums.size()) + ": " + line);
    }
    Clause cl;
    for (int i = 0; i < 3; ++i) {
      long long lit = nums[static_cast<size_t>(i)];
      if (lit == 0) fail(Kind::Syntax, "literal 0 inside clause: " + line);
      long long v = lit < 0 ? -lit : lit;
      if (v > f.num_variables) {
        fail(Kind::Range, "variable " + std::to_string(v) + " out of range 1.." +
                              std::to_string(f.num_variables));
      }
      cl[static_cast<size_t>(i)] = Literal{static_cast<int>(v), lit < 0};
    }
    f.clauses.push_back(cl);
  }
  if (!header_seen) fail(Kind::Syntax, "missing header line");
  if (static_cast<int>(f.clauses.size()) != clauses_expected) {
    fail(Kind::Syntax, "header announced " + std::to_string(clauses_expected) +
                           " clauses, found " + std::to_string(f.clauses.size()));
  }
  return f;
}

Formula parse_formula(const std::string& text) {
  std::istringstream in(text);
  return parse_formula(in);
}

std::string serialize_formula(const Formula& f) {
  std::ostringstream out;
  out << "p o3s " << f.num_variables << ' ' << f.clauses.size() << '\n';
  for (const Clause& cl : f.clauses) {
    for (int i = 0; i < 3; ++i) {
      const Literal& l = cl[static_cast<size_t>(i)];
      out << (l.neg ? -l.var : l.var) << ' ';
    }
    out << "0\n";
  }
  return out.str();
}

bool literal_value(const Literal& lit, const Assignment& a) {
  bool v = a.value(lit.var);
  return lit.neg ? !v : v;
}

bool clause_exactly_one(const Clause& cl, const Assignment& a) {
  int t = 0;
  for (const Literal& l : cl) t += literal_value(l, a) ? 1 : 0;
  return t == 1;
}

bool satisfies_1in3(const Formula& f, const Assignment& a) {
  if (static_cast<int>(a.values.size()) != f.num_variables) return false;
  for (const Clause& cl : f.clauses) {
    if (!clause_exactly_one(cl, a)) return false;
  }
  return true;
}

std::vector<Assignment> brute_force_1in3(const Formula& f) {
  if (f.num_variables > 24) {
    fail(Kind::TooLarge, "brute force supports at most 24 variables, got " +
                             std::to_string(f.num_variables));
  }
  std::vector<Assignment> sat;
  const int n = f.num_variables;
  const std::uint64_t total = 1ull << n;
  for (std::uint64_t bits = 0; bits < total; ++bits) {
    Assignment a;
    a.values.resize(static_cast<size_t>(n));
    for (int v = 0; v < n; ++v) a.values[static_cast<size_t>(v)] = (bits >> v) & 1;
    if (satisfies_1in3(f, a)) sat.push_back(std::move(a));
  }
  return sat;
}

Formula random_formula(int n, int m, std::uint64_t seed) {
  if (n < 1) throw FormulaError(Kind::Range, "need at least one variable");
  if (m < 0) throw FormulaError(Kind::Range, "negative clause count");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pick_var(1, n);
  std::uniform_int_distribution<int> pick_sign(0, 1);
  Formula f;
  f.num_variables = n;
  f.clauses.reserve(static_cast<size_t>(m));
  for (int c = 0; c < m; ++c) {
    Clause cl;
    for (int i = 0; i < 3; ++i) {
      cl[static_cast<size_t>(i)] = Literal{pick_var(rng), pick_sign(rng) == 1};
    }
    f.clauses.push_back(cl);
  }
  return f;
}

}  // namespace augmatch
