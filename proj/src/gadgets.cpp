#include "augmatch/gadgets.hpp"

#include "augmatch/json_io.hpp"
#include "augmatch/matcher.hpp"

#include <nlohmann/json.hpp>

#include <bit>
#include <algorithm>
#include <cassert>
#include <sstream>

namespace augmatch {

namespace {

// Accumulates a blueprint. Wall edges are pre-matched cross/circle pairs; the
// remaining vertices are the free payload the contract talks about.
struct Builder {
  GadgetBlueprint g;

  int add(long long x, long long y, Color c) {
    int id = static_cast<int>(g.vertices.size());
    g.vertices.push_back(Vertex{id, Pt{Rat(x), Rat(y)}, c});
    return id;
  }
  int circ(long long x, long long y) { return add(x, y, Color::Circle); }
  int cross(long long x, long long y) { return add(x, y, Color::Cross); }

  void wall(long long x1, long long y1, long long x2, long long y2) {
    int a = add(x1, y1, Color::Cross);
    int b = add(x2, y2, Color::Circle);
    g.mandatory_edges.emplace_back(a, b);
  }

  void in(std::string name, int vid, int ox, int oy) {
    g.ports.push_back(Port{std::move(name), {vid}, PortDir::In, ox, oy});
  }
  void out(std::string name, int vid, int ox, int oy) {
    g.ports.push_back(Port{std::move(name), {vid}, PortDir::Out, ox, oy});
  }
};

ContractRow row(std::uint32_t mask, bool exists, std::vector<std::optional<Signal>> out) {
  ContractRow r;
  r.in_mask = mask;
  r.exists = exists;
  r.out = std::move(out);
  return r;
}

// One IN, one OUT, signal copied through.
void pass_through_contract(GadgetBlueprint& g) {
  g.contract = {row(0, true, {Signal::False}), row(1, true, {Signal::True})};
}

constexpr std::optional<Signal> kAny = std::nullopt;

}  // namespace

std::vector<int> GadgetBlueprint::in_ports() const {
  std::vector<int> r;
  for (size_t i = 0; i < ports.size(); ++i)
    if (ports[i].dir == PortDir::In) r.push_back(static_cast<int>(i));
  return r;
}

std::vector<int> GadgetBlueprint::out_ports() const {
  std::vector<int> r;
  for (size_t i = 0; i < ports.size(); ++i)
    if (ports[i].dir == PortDir::Out) r.push_back(static_cast<int>(i));
  return r;
}

MatchingInstance GadgetBlueprint::as_instance() const {
  MatchingInstance inst;
  inst.mode = Mode::Colored;
  inst.vertices = vertices;
  inst.mandatory_edges = mandatory_edges;
  return inst;
}

GadgetBlueprint make_lane_straight(int cells) {
  if (cells < 1 || cells > 100000)
    throw GadgetError(GadgetError::Kind::BadParams, "lane cells must be in [1, 100000]");
  Builder b;
  b.g.kind = GadgetKind::Lane;
  b.g.label = "lane-straight-" + std::to_string(cells);
  int first = -1, last = -1;
  for (int i = 0; i < cells; ++i) {
    long long x0 = 16LL * i;
    int c1 = b.circ(x0 + 2, 8);
    b.cross(x0 + 6, 8);
    b.circ(x0 + 10, 8);
    int x2 = b.cross(x0 + 14, 8);
    if (i == 0) first = c1;
    last = x2;
  }
  for (int i = 0; i < cells; ++i) {
    long long x0 = 16LL * i;
    b.wall(x0 + 2, 4, x0 + 14, 4);
    b.wall(x0 + 2, 12, x0 + 14, 12);
    if (i > 0) {
      b.wall(x0, 3, x0, 7);
      b.wall(x0, 9, x0, 13);
    }
  }
  const long long w = 16LL * cells;
  b.wall(1, 1, 1, 7);
  b.wall(1, 9, 1, 15);
  b.wall(w - 1, 1, w - 1, 7);
  b.wall(w - 1, 9, w - 1, 15);
  b.wall(2, 15, w - 2, 15);
  b.wall(2, 1, w - 2, 1);
  b.in("in", first, -1, 0);
  b.out("out", last, 1, 0);
  pass_through_contract(b.g);
  b.g.width = w;
  b.g.height = 16;
  return std::move(b.g);
}

GadgetBlueprint make_lane_turn_left() {
  Builder b;
  b.g.kind = GadgetKind::Lane;
  b.g.label = "lane-turn-left";
  int c_in = b.circ(2, 8);
  b.cross(6, 8);
  b.circ(8, 10);
  int x_out = b.cross(8, 14);
  b.wall(7, 10, 7, 14);  // forces the elbow to switch rails with the signal
  b.wall(5, 9, 5, 14);   // keeps shallow intruders from the west off the elbow
  b.wall(1, 1, 1, 7);
  b.wall(1, 9, 1, 15);
  b.wall(2, 15, 7, 15);
  b.wall(9, 15, 14, 15);
  b.wall(2, 1, 14, 1);
  b.wall(15, 1, 15, 15);
  b.in("in", c_in, -1, 0);
  b.out("out", x_out, 0, 1);
  pass_through_contract(b.g);
  b.g.width = 16;
  b.g.height = 16;
  return std::move(b.g);
}

GadgetBlueprint make_lane_turn_right() {
  Builder b;
  b.g.kind = GadgetKind::Lane;
  b.g.label = "lane-turn-right";
  int c_in = b.circ(2, 8);
  b.cross(6, 8);
  b.circ(8, 6);
  int x_out = b.cross(8, 2);
  b.wall(7, 2, 7, 6);
  b.wall(5, 2, 5, 7);    // keeps shallow intruders from the west off the elbow
  b.wall(1, 1, 1, 7);
  b.wall(1, 9, 1, 15);
  b.wall(2, 1, 7, 1);
  b.wall(9, 1, 14, 1);
  b.wall(2, 15, 14, 15);
  b.wall(15, 1, 15, 15);
  b.in("in", c_in, -1, 0);
  b.out("out", x_out, 0, -1);
  pass_through_contract(b.g);
  b.g.width = 16;
  b.g.height = 16;
  return std::move(b.g);
}

GadgetBlueprint make_variable() {
  Builder b;
  b.g.kind = GadgetKind::Variable;
  b.g.label = "variable";
  int v = b.circ(8, 8);
  int xx = b.cross(8, 2);    // released south when the variable is TRUE
  int xn = b.cross(14, 8);   // released east when the variable is FALSE
  (void)v;
  b.wall(2, 15, 14, 15);
  b.wall(1, 1, 1, 15);
  b.wall(15, 1, 15, 7);
  b.wall(15, 9, 15, 15);
  b.wall(2, 1, 7, 1);
  b.wall(9, 1, 14, 1);
  b.out("x", xx, 0, -1);
  b.out("not_x", xn, 1, 0);
  // Both polarities occur; the two completions couple the outputs to opposite
  // signals, which tests certify separately since a per-port table cannot
  // express the coupling.
  b.g.contract = {row(0, true, {kAny, kAny})};
  b.g.width = 16;
  b.g.height = 16;
  return std::move(b.g);
}

GadgetBlueprint make_multiplier() {
  Builder b;
  b.g.kind = GadgetKind::Multiplier;
  b.g.label = "multiplier";
  int c1 = b.circ(2, 8);
  b.cross(6, 8);
  b.circ(10, 8);
  b.cross(12, 4);
  b.circ(22, 4);
  int xa = b.cross(30, 8);
  int xn = b.cross(8, 2);
  int xb = b.cross(24, 2);
  b.circ(15, 7);  // switch vertex feeding whichever south port the chain frees
  b.wall(2, 15, 30, 15);
  b.wall(1, 1, 1, 7);
  b.wall(1, 9, 1, 15);
  b.wall(31, 1, 31, 7);
  b.wall(31, 9, 31, 15);
  b.wall(2, 1, 7, 1);
  b.wall(9, 1, 23, 1);
  b.wall(25, 1, 30, 1);
  b.wall(5, 3, 5, 7);
  b.wall(7, 3, 7, 6);
  b.wall(9, 3, 9, 6);
  b.wall(11, 2, 11, 4);
  b.wall(13, 6, 13, 9);
  b.wall(14, 5, 14, 6);
  b.wall(17, 6, 17, 10);
  b.wall(18, 2, 18, 3);
  b.wall(20, 5, 20, 7);
  b.wall(27, 4, 27, 6);
  b.in("in", c1, -1, 0);
  b.out("same_a", xa, 1, 0);
  b.out("same_b", xb, 0, -1);
  b.out("neg", xn, 0, -1);
  b.g.contract = {row(0, true, {Signal::False, Signal::False, Signal::True}),
                  row(1, true, {Signal::True, Signal::True, Signal::False})};
  b.g.width = 32;
  b.g.height = 16;
  return std::move(b.g);
}

GadgetBlueprint make_clause() {
  Builder b;
  b.g.kind = GadgetKind::Clause;
  b.g.label = "clause";
  int p1 = b.circ(8, 30);
  int p2 = b.circ(24, 30);
  int p3 = b.circ(40, 30);
  b.cross(8, 22);
  b.cross(24, 22);
  b.cross(40, 22);
  b.circ(24, 12);  // collector: exactly one entry chain can reach it
  b.wall(2, 31, 7, 31);
  b.wall(9, 31, 23, 31);
  b.wall(25, 31, 39, 31);
  b.wall(41, 31, 46, 31);
  b.wall(16, 25, 16, 30);
  b.wall(32, 25, 32, 30);
  b.wall(16, 19, 16, 23);
  b.wall(32, 19, 32, 23);
  b.wall(1, 1, 1, 31);
  b.wall(47, 1, 47, 31);
  b.wall(2, 1, 46, 1);
  b.in("in1", p1, 0, 1);
  b.in("in2", p2, 0, 1);
  b.in("in3", p3, 0, 1);
  for (std::uint32_t m = 0; m < 8; ++m)
    b.g.contract.push_back(row(m, std::popcount(m) == 1, {}));
  b.g.width = 48;
  b.g.height = 32;
  return std::move(b.g);
}

GadgetBlueprint make_junction() {
  Builder b;
  b.g.kind = GadgetKind::Junction;
  b.g.label = "junction";
  int cl = b.circ(2, 8);
  b.cross(4, 8);
  b.circ(4, 12);
  b.cross(6, 12);
  b.circ(10, 12);
  b.cross(12, 12);
  b.circ(12, 8);
  int xr = b.cross(14, 8);
  int ci2 = b.circ(8, 14);
  b.cross(8, 10);
  b.circ(8, 6);
  int xo2 = b.cross(8, 2);
  b.wall(1, 1, 1, 7);
  b.wall(1, 9, 1, 15);
  b.wall(15, 1, 15, 7);
  b.wall(15, 9, 15, 15);
  b.wall(2, 15, 7, 15);
  b.wall(9, 15, 14, 15);
  b.wall(2, 1, 7, 1);
  b.wall(9, 1, 14, 1);
  b.wall(3, 6, 3, 7);
  b.wall(3, 9, 3, 10);
  b.wall(13, 6, 13, 7);
  b.wall(13, 9, 13, 10);
  b.wall(6, 13, 7, 13);
  b.wall(9, 13, 10, 13);
  b.wall(6, 3, 7, 3);
  b.wall(9, 3, 10, 3);
  b.wall(5, 9, 5, 10);
  b.wall(6, 5, 6, 7);
  b.wall(7, 4, 7, 7);
  b.wall(7, 9, 7, 11);
  b.wall(9, 6, 9, 7);
  b.wall(9, 9, 9, 11);
  b.wall(10, 9, 10, 11);
  b.wall(11, 6, 11, 7);
  b.wall(11, 9, 11, 11);
  b.in("h_in", cl, -1, 0);
  b.in("v_in", ci2, 0, 1);
  b.out("h_out", xr, 1, 0);
  b.out("v_out", xo2, 0, -1);
  for (std::uint32_t m = 0; m < 4; ++m)
    b.g.contract.push_back(row(
        m, true,
        {(m & 1u) ? Signal::True : Signal::False, (m & 2u) ? Signal::True : Signal::False}));
  b.g.width = 16;
  b.g.height = 16;
  return std::move(b.g);
}

namespace {

// One absorber unit: two north mouths feeding a single cross, so exactly one
// of the two incoming signals must be FALSE (kept inside) per unit.
void emit_pair_unit(Builder& b, long long dx, int unit, bool with_sides) {
  int a = b.circ(dx + 8, 14);
  int c = b.circ(dx + 24, 14);
  b.cross(dx + 16, 8);
  b.wall(dx + 2, 15, dx + 7, 15);
  b.wall(dx + 9, 15, dx + 23, 15);
  b.wall(dx + 25, 15, dx + 30, 15);
  b.wall(dx + 16, 12, dx + 16, 14);
  if (with_sides) {
    b.wall(dx + 1, 1, dx + 1, 15);
    b.wall(dx + 31, 1, dx + 31, 15);
  }
  b.wall(dx + 2, 1, dx + 30, 1);
  b.in("in" + std::to_string(2 * unit), a, 0, 1);
  b.in("in" + std::to_string(2 * unit + 1), c, 0, 1);
}

}  // namespace

GadgetBlueprint make_basin_pair() {
  GadgetBlueprint g = make_basin(1);
  g.label = "basin-pair";
  return g;
}

GadgetBlueprint make_basin(int pair_units) {
  if (pair_units < 0 || pair_units > 4)
    throw GadgetError(GadgetError::Kind::BadParams, "basin pair units must be in [0, 4]");
  Builder b;
  b.g.kind = GadgetKind::Basin;
  b.g.label = "basin-" + std::to_string(pair_units);
  for (int u = 0; u < pair_units; ++u) emit_pair_unit(b, 32LL * u, u, true);
  std::uint32_t rows = 1u << (2 * pair_units);
  for (std::uint32_t m = 0; m < rows; ++m) {
    bool ok = true;
    for (int u = 0; u < pair_units; ++u) {
      std::uint32_t two = (m >> (2 * u)) & 3u;
      if (two != 1u && two != 2u) ok = false;  // each unit needs exactly one TRUE
    }
    b.g.contract.push_back(row(m, ok, {}));
  }
  b.g.width = 32LL * pair_units;
  b.g.height = 16;
  return std::move(b.g);
}

GadgetBlueprint make_basin_trio() {
  Builder b;
  b.g.kind = GadgetKind::Basin;
  b.g.label = "basin-trio";
  int p1 = b.circ(8, 14);
  int p2 = b.circ(24, 14);
  int p3 = b.circ(40, 14);
  b.cross(24, 6);
  b.wall(2, 15, 7, 15);
  b.wall(9, 15, 23, 15);
  b.wall(25, 15, 39, 15);
  b.wall(41, 15, 46, 15);
  b.wall(16, 12, 16, 14);
  b.wall(32, 12, 32, 14);
  b.wall(1, 1, 1, 15);
  b.wall(47, 1, 47, 15);
  b.wall(2, 1, 46, 1);
  b.in("in0", p1, 0, 1);
  b.in("in1", p2, 0, 1);
  b.in("in2", p3, 0, 1);
  for (std::uint32_t m = 0; m < 8; ++m)
    b.g.contract.push_back(row(m, std::popcount(m) == 2, {}));
  b.g.width = 48;
  b.g.height = 16;
  return std::move(b.g);
}

namespace {

std::map<std::string, std::string> parse_params(const std::string& params) {
  std::map<std::string, std::string> kv;
  std::string token;
  std::stringstream ss(params);
  while (std::getline(ss, token, ',')) {
    size_t b0 = token.find_first_not_of(" \t");
    if (b0 == std::string::npos) continue;
    size_t b1 = token.find_last_not_of(" \t");
    token = token.substr(b0, b1 - b0 + 1);
    size_t eq = token.find('=');
    if (eq == std::string::npos)
      throw GadgetError(GadgetError::Kind::BadParams, "expected key=value, got '" + token + "'");
    kv[token.substr(0, eq)] = token.substr(eq + 1);
  }
  return kv;
}

int parse_int(const std::string& s, const std::string& what) {
  try {
    size_t used = 0;
    int v = std::stoi(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw GadgetError(GadgetError::Kind::BadParams, "bad integer for " + what + ": '" + s + "'");
  }
}

}  // namespace

GadgetBlueprint blueprint(GadgetKind kind, const std::string& params) {
  auto kv = parse_params(params);
  auto reject_unknown = [&](std::initializer_list<const char*> allowed) {
    for (const auto& [k, v] : kv) {
      bool ok = false;
      for (const char* a : allowed)
        if (k == a) ok = true;
      if (!ok) throw GadgetError(GadgetError::Kind::BadParams, "unknown parameter '" + k + "'");
    }
  };
  switch (kind) {
    case GadgetKind::Lane: {
      reject_unknown({"cells", "turn"});
      if (kv.count("turn")) {
        if (kv.count("cells"))
          throw GadgetError(GadgetError::Kind::BadParams, "turn and cells are exclusive");
        if (kv["turn"] == "left") return make_lane_turn_left();
        if (kv["turn"] == "right") return make_lane_turn_right();
        throw GadgetError(GadgetError::Kind::BadParams, "turn must be left or right");
      }
      int cells = kv.count("cells") ? parse_int(kv["cells"], "cells") : 1;
      return make_lane_straight(cells);
    }
    case GadgetKind::Variable:
      reject_unknown({});
      return make_variable();
    case GadgetKind::Clause:
      reject_unknown({});
      return make_clause();
    case GadgetKind::Multiplier:
      reject_unknown({});
      return make_multiplier();
    case GadgetKind::Junction:
      reject_unknown({});
      return make_junction();
    case GadgetKind::Basin: {
      reject_unknown({"pairs", "form"});
      if (kv.count("form")) {
        if (kv["form"] == "trio") return make_basin_trio();
        if (kv["form"] == "pair") return make_basin_pair();
        throw GadgetError(GadgetError::Kind::BadParams, "form must be trio or pair");
      }
      int pairs = kv.count("pairs") ? parse_int(kv["pairs"], "pairs") : 1;
      return make_basin(pairs);
    }
  }
  throw GadgetError(GadgetError::Kind::BadParams, "unknown gadget kind");
}

std::vector<Completion> enumerate_completions(const GadgetBlueprint& g,
                                              const std::map<std::string, Signal>& boundary) {
  for (const auto& [name, sig] : boundary) {
    (void)sig;
    bool found = false;
    for (const Port& p : g.ports)
      if (p.name == name) {
        if (p.dir != PortDir::In)
          throw GadgetError(GadgetError::Kind::BadParams,
                            "port '" + name + "' is not an IN port");
        found = true;
      }
    if (!found)
      throw GadgetError(GadgetError::Kind::BadParams, "unknown port '" + name + "'");
  }

  std::vector<char> covered(g.vertices.size(), 0);
  for (const auto& [a, b] : g.mandatory_edges) {
    covered[static_cast<size_t>(a)] = 1;
    covered[static_cast<size_t>(b)] = 1;
  }

  MatchProblem mp;
  std::vector<int> pidx(g.vertices.size(), -1);
  std::vector<int> real_local;
  for (size_t i = 0; i < g.vertices.size(); ++i) {
    if (covered[i]) continue;
    pidx[i] = static_cast<int>(mp.pos.size());
    real_local.push_back(static_cast<int>(i));
    mp.pos.push_back(g.vertices[i].pos);
    mp.color.push_back(g.vertices[i].color);
    mp.required.push_back(true);
    mp.only_partner.push_back(-1);
  }
  int n_real = static_cast<int>(mp.pos.size());
  if (n_real > 40)
    throw GadgetError(GadgetError::Kind::TooLarge, "more than 40 free vertices");

  for (const auto& [a, b] : g.mandatory_edges)
    mp.blockers.push_back(
        Seg{g.vertices[static_cast<size_t>(a)].pos, g.vertices[static_cast<size_t>(b)].pos});

  // Port index -> problem index of its virtual partner (or -1 when removed).
  std::vector<int> virt(g.ports.size(), -1);
  for (size_t k = 0; k < g.ports.size(); ++k) {
    const Port& p = g.ports[k];
    int b_local = p.boundary_vertices.at(0);
    int b_prob = pidx[static_cast<size_t>(b_local)];
    if (b_prob < 0)
      throw GadgetError(GadgetError::Kind::BadParams,
                        "port boundary vertex is wall-covered: " + p.name);
    std::optional<Signal> pin;
    if (auto it = boundary.find(p.name); it != boundary.end()) pin = it->second;
    if (p.dir == PortDir::In && pin && *pin == Signal::False) continue;

    const Pt& bp = g.vertices[static_cast<size_t>(b_local)].pos;
    Pt vp{bp.x + Rat(4 * p.out_x), bp.y + Rat(4 * p.out_y)};
    int v_prob = static_cast<int>(mp.pos.size());
    mp.pos.push_back(vp);
    std::optional<Color> vc;
    if (auto bc = g.vertices[static_cast<size_t>(b_local)].color)
      vc = (*bc == Color::Cross) ? Color::Circle : Color::Cross;
    mp.color.push_back(vc);
    mp.required.push_back(false);
    mp.only_partner.push_back(b_prob);
    virt[k] = v_prob;
    if (p.dir == PortDir::In && pin && *pin == Signal::True)
      mp.forced.emplace_back(b_prob, v_prob);
  }

  std::vector<int> out_bit(g.ports.size(), -1);
  {
    int bit = 0;
    for (size_t k = 0; k < g.ports.size(); ++k)
      if (g.ports[k].dir == PortDir::Out) out_bit[k] = bit++;
  }
  std::vector<int> port_of_prob(mp.pos.size(), -1);
  for (size_t k = 0; k < g.ports.size(); ++k)
    if (virt[k] >= 0) port_of_prob[static_cast<size_t>(virt[k])] = static_cast<int>(k);

  std::vector<Completion> res;
  Matcher m(std::move(mp));
  auto rr = m.run(RunLimits{}, [&](const std::vector<std::pair<int, int>>& pairs) {
    Completion c;
    for (const auto& [u, v] : pairs) {
      if (u < n_real && v < n_real) {
        c.internal_edges.emplace_back(real_local[static_cast<size_t>(u)],
                                      real_local[static_cast<size_t>(v)]);
      } else {
        int virt_side = (u >= n_real) ? u : v;
        int k = port_of_prob[static_cast<size_t>(virt_side)];
        if (k >= 0 && out_bit[static_cast<size_t>(k)] >= 0)
          c.out_mask |= 1u << out_bit[static_cast<size_t>(k)];
      }
    }
    res.push_back(std::move(c));
    return true;
  });
  assert(rr.status == RunStatus::Exhausted);
  (void)rr;
  return res;
}

namespace {

ContractReport check_contract_impl(const GadgetBlueprint& g) {
  ContractReport rep;
  auto fail = [&rep](const std::string& s) {
    rep.ok = false;
    rep.counterexamples.push_back(s);
  };
  auto ins = g.in_ports();
  auto outs = g.out_ports();
  if (g.contract.size() != (1u << ins.size())) {
    fail(g.label + ": contract table has " + std::to_string(g.contract.size()) +
         " rows, expected " + std::to_string(1u << ins.size()));
    return rep;
  }
  for (const ContractRow& r : g.contract) {
    std::map<std::string, Signal> b;
    for (size_t k = 0; k < ins.size(); ++k)
      b[g.ports[static_cast<size_t>(ins[k])].name] =
          ((r.in_mask >> k) & 1u) ? Signal::True : Signal::False;
    auto comps = enumerate_completions(g, b);
    std::string where = g.label + " row mask=" + std::to_string(r.in_mask);
    if (r.exists && comps.empty()) {
      fail(where + ": expected a completion, found none");
      continue;
    }
    if (!r.exists && !comps.empty()) {
      fail(where + ": expected no completion, found " + std::to_string(comps.size()));
      continue;
    }
    if (!r.exists) continue;
    if (r.out.size() != outs.size()) {
      fail(where + ": row lists " + std::to_string(r.out.size()) + " out signals, gadget has " +
           std::to_string(outs.size()));
      continue;
    }
    for (const Completion& c : comps) {
      for (size_t k = 0; k < outs.size(); ++k) {
        if (!r.out[k]) continue;
        bool want = (*r.out[k] == Signal::True);
        bool got = ((c.out_mask >> k) & 1u) != 0;
        if (want != got)
          fail(where + ": out port '" + g.ports[static_cast<size_t>(outs[k])].name + "' read " +
               (got ? "T" : "F") + ", expected " + (want ? "T" : "F"));
      }
    }
  }
  return rep;
}

}  // namespace

ContractReport check_contract(const GadgetBlueprint& g) { return check_contract_impl(g); }

ContractReport check_contract_uncolored(const GadgetBlueprint& g) {
  GadgetBlueprint u = g;
  for (Vertex& v : u.vertices) v.color.reset();
  return check_contract_impl(u);
}

Pt placed_point(const Placement& pl, const GadgetBlueprint& g, const Pt& local) {
  Rat w(g.width), h(g.height);
  Rat rx, ry;
  switch (pl.rot & 3) {
    case 0: rx = local.x; ry = local.y; break;
    case 1: rx = h - local.y; ry = local.x; break;
    case 2: rx = w - local.x; ry = h - local.y; break;
    default: rx = local.y; ry = w - local.x; break;
  }
  return Pt{rx + Rat(pl.tx), ry + Rat(pl.ty)};
}

std::pair<int, int> placed_outward(const Placement& pl, int out_x, int out_y) {
  switch (pl.rot & 3) {
    case 0: return {out_x, out_y};
    case 1: return {-out_y, out_x};
    case 2: return {-out_x, -out_y};
    default: return {out_y, -out_x};
  }
}

Pt GadgetInstance::global_pos(int local_id) const {
  return placed_point(placement, *bp, bp->vertices[static_cast<size_t>(local_id)].pos);
}

void GadgetInstance::emit(std::vector<Vertex>& vertices,
                          std::vector<std::pair<int, int>>& edges) const {
  for (const Vertex& v : bp->vertices)
    vertices.push_back(Vertex{global_id(v.id), global_pos(v.id), v.color});
  for (const auto& [a, b] : bp->mandatory_edges)
    edges.emplace_back(global_id(a), global_id(b));
}

GadgetInstance place(std::shared_ptr<const GadgetBlueprint> bp, const Placement& pl,
                     int first_global_id) {
  GadgetInstance gi;
  gi.bp = std::move(bp);
  gi.placement = pl;
  gi.first_global_id = first_global_id;
  return gi;
}

const char* to_string(GadgetKind k) {
  switch (k) {
    case GadgetKind::Lane: return "lane";
    case GadgetKind::Variable: return "variable";
    case GadgetKind::Clause: return "clause";
    case GadgetKind::Multiplier: return "multiplier";
    case GadgetKind::Junction: return "junction";
    case GadgetKind::Basin: return "basin";
  }
  return "?";
}

GadgetKind gadget_kind_from_string(const std::string& name) {
  for (GadgetKind k : {GadgetKind::Lane, GadgetKind::Variable, GadgetKind::Clause,
                       GadgetKind::Multiplier, GadgetKind::Junction, GadgetKind::Basin})
    if (name == to_string(k)) return k;
  throw GadgetError(GadgetError::Kind::BadParams, "unknown gadget kind '" + name + "'");
}

std::string blueprint_to_json(const GadgetBlueprint& g) {
  nlohmann::ordered_json j;
  j["kind"] = to_string(g.kind);
  j["label"] = g.label;
  j["width"] = g.width;
  j["height"] = g.height;
  j["vertices"] = nlohmann::ordered_json::array();
  for (const Vertex& v : g.vertices) {
    nlohmann::ordered_json vj;
    vj["id"] = v.id;
    vj["x"] = rat_to_string(v.pos.x);
    vj["y"] = rat_to_string(v.pos.y);
    if (v.color)
      vj["color"] = (*v.color == Color::Cross) ? "cross" : "circle";
    else
      vj["color"] = nullptr;
    j["vertices"].push_back(std::move(vj));
  }
  j["edges"] = nlohmann::ordered_json::array();
  for (const auto& [a, b] : g.mandatory_edges) j["edges"].push_back({a, b});
  j["ports"] = nlohmann::ordered_json::array();
  for (const Port& p : g.ports) {
    nlohmann::ordered_json pj;
    pj["name"] = p.name;
    pj["dir"] = (p.dir == PortDir::In) ? "in" : "out";
    pj["boundary"] = p.boundary_vertices;
    pj["outward"] = {p.out_x, p.out_y};
    j["ports"].push_back(std::move(pj));
  }
  j["contract"] = nlohmann::ordered_json::array();
  auto outs = g.out_ports();
  for (const ContractRow& r : g.contract) {
    nlohmann::ordered_json rj;
    rj["in_mask"] = r.in_mask;
    rj["exists"] = r.exists;
    rj["out"] = nlohmann::ordered_json::array();
    for (size_t k = 0; k < r.out.size() && k < outs.size(); ++k) {
      nlohmann::ordered_json oj;
      oj["port"] = g.ports[static_cast<size_t>(outs[k])].name;
      oj["signal"] = !r.out[k] ? "any" : (*r.out[k] == Signal::True ? "true" : "false");
      rj["out"].push_back(std::move(oj));
    }
    j["contract"].push_back(std::move(rj));
  }
  return j.dump(2) + "\n";
}

}  // namespace augmatch
