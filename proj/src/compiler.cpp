#include "augmatch/compiler.hpp"

#include "augmatch/matcher.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cassert>
#include <deque>
#include <memory>
#include <set>
#include <sstream>

namespace augmatch {

namespace {

constexpr long long kCell = 16;
constexpr long long kCoordBound = 1LL << 20;

struct Supply {
  Literal lit;
  int exit_col = 0;  // global cell column of the south exit
  int turn_row = 0;  // track row (global row index) assigned to this lane
  int gadget = -1;   // placed gadget emitting the signal
  int port = -1;     // port index within that gadget's blueprint
  int cons_col = -1;
  int cons_gadget = -1, cons_port = -1;
  int route_id = -1;
};

struct Demand {
  Literal lit;
  int gadget = -1, port = -1;
  int col = 0;
};

struct Emitter {
  LayoutPlan plan;
  CompiledInstance out;
  std::vector<GadgetInstance> placed;
  long long h_rows = 0;  // total rows including the 2-row consumer strip

  long long y_top(long long row) const { return (h_rows - row) * kCell; }

  int emit(const std::shared_ptr<const GadgetBlueprint>& bp, long long col, long long row,
           int rot) {
    Placement pl;
    pl.tx = col * kCell;
    pl.ty = y_top(row) - ((rot % 2 == 0) ? bp->height : bp->width);
    pl.rot = rot;
    return emit_at(bp, pl);
  }

  int emit_at(const std::shared_ptr<const GadgetBlueprint>& bp, const Placement& pl) {
    int gidx = static_cast<int>(placed.size());
    GadgetInstance gi = place(bp, pl, static_cast<int>(out.instance.vertices.size()));
    gi.emit(out.instance.vertices, out.instance.mandatory_edges);
    for (size_t i = 0; i < bp->vertices.size(); ++i) out.vertex_gadget.push_back(gidx);
    out.gadget_kinds.push_back(bp->kind);
    out.gadget_labels.push_back(bp->label);
    plan.gadgets.push_back(PlacedGadget{bp->kind, bp->label, pl, bp->width, bp->height});
    placed.push_back(std::move(gi));
    return gidx;
  }

  int port_gid(int gadget, int port) const {
    const GadgetInstance& gi = placed[static_cast<size_t>(gadget)];
    return gi.global_id(gi.bp->ports[static_cast<size_t>(port)].boundary_vertices[0]);
  }
};

struct BuildResult {
  LayoutPlan plan;
  CompiledInstance out;
};

BuildResult build(const Formula& f) {
  const int n = f.num_variables;
  const int m = static_cast<int>(f.clauses.size());

  std::vector<int> occ(static_cast<size_t>(n) + 1, 0);
  for (const Clause& c : f.clauses)
    for (const Literal& l : c) occ[static_cast<size_t>(l.var)]++;

  std::vector<int> K(static_cast<size_t>(n) + 1, 0), band_row(static_cast<size_t>(n) + 1, 0);
  std::vector<int> unused;
  long long row_cursor = 0;
  int max_band_cols = 0;
  for (int v = 1; v <= n; ++v) {
    if (occ[static_cast<size_t>(v)] == 0) unused.push_back(v);
    K[static_cast<size_t>(v)] = std::max(occ[static_cast<size_t>(v)], 1) - 1;
    band_row[static_cast<size_t>(v)] = static_cast<int>(row_cursor);
    row_cursor += 1 + (2 * K[static_cast<size_t>(v)] + 2);
    max_band_cols = std::max(max_band_cols, 2 + 2 * K[static_cast<size_t>(v)]);
  }
  const long long total_rows = row_cursor;
  const int u = static_cast<int>(unused.size());
  const long long x0_col = max_band_cols + 2;
  const long long width = std::max<long long>(x0_col * kCell + 112LL * m + 48LL * u,
                                              (max_band_cols + 1) * kCell);
  const long long height = (total_rows + 2) * kCell;
  if (width > kCoordBound || height > kCoordBound)
    throw CompileError(CompileError::Kind::LayoutOverflow,
                       "layout exceeds the coordinate bound");

  Emitter em;
  em.h_rows = total_rows + 2;
  em.out.num_variables = n;
  em.out.instance.mode = Mode::Colored;

  auto share = [](GadgetBlueprint g) {
    return std::make_shared<const GadgetBlueprint>(std::move(g));
  };
  auto bp_var = share(make_variable());
  auto bp_mult = share(make_multiplier());
  auto bp_junction = share(make_junction());
  auto bp_clause = share(make_clause());
  auto bp_trio = share(make_basin_trio());
  auto bp_pair = share(make_basin_pair());
  auto bp_cell = share(make_lane_straight(1));
  auto bp_turn_left = share(make_lane_turn_left());
  auto bp_turn_right = share(make_lane_turn_right());

  // ---- Variable bands ------------------------------------------------------
  std::vector<Supply> supplies;
  std::map<int, std::deque<int>> queue;  // literal code -> supply indices
  auto add_supply = [&](Literal lit, int exit_col, int gadget, const char* port_name,
                        int band_top_row, int band_cols) {
    const auto& ports = em.placed[static_cast<size_t>(gadget)].bp->ports;
    int port = -1;
    for (size_t k = 0; k < ports.size(); ++k)
      if (ports[k].name == port_name) port = static_cast<int>(k);
    assert(port >= 0);
    Supply s;
    s.lit = lit;
    s.exit_col = exit_col;
    s.turn_row = band_top_row + 1 + (band_cols - 1 - exit_col);
    s.gadget = gadget;
    s.port = port;
    queue[literal_code(lit)].push_back(static_cast<int>(supplies.size()));
    supplies.push_back(s);
  };

  for (int v = 1; v <= n; ++v) {
    int row = band_row[static_cast<size_t>(v)];
    int kk = K[static_cast<size_t>(v)];
    int band_cols = 2 + 2 * kk;
    int g_var = em.emit(bp_var, 0, row, 0);
    {
      const GadgetInstance& gi = em.placed[static_cast<size_t>(g_var)];
      em.out.variable_ports[v] = {gi.global_id(0), gi.global_id(2)};
    }
    add_supply(Literal{v, false}, 0, g_var, "x", row, band_cols);
    int chain_out = em.port_gid(g_var, 1);  // not_x port, carries the negation
    for (int j = 1; j <= kk; ++j) {
      int g_m = em.emit(bp_mult, 1 + 2 * (j - 1), row, 0);
      em.out.sanctioned_cuts.emplace_back(chain_out, em.port_gid(g_m, 0));
      add_supply(Literal{v, false}, 2 * j - 1, g_m, "neg", row, band_cols);
      add_supply(Literal{v, true}, 2 * j, g_m, "same_b", row, band_cols);
      chain_out = em.port_gid(g_m, 1);  // same_a
    }
    int g_t = em.emit(bp_turn_right, 1 + 2 * kk, row, 0);
    em.out.sanctioned_cuts.emplace_back(chain_out, em.port_gid(g_t, 0));
    add_supply(Literal{v, true}, 1 + 2 * kk, g_t, "out", row, band_cols);
  }

  // ---- Consumer strip ------------------------------------------------------
  std::vector<Demand> demands;
  auto neg_of = [](Literal l) { return Literal{l.var, !l.neg}; };
  for (int j = 0; j < m; ++j) {
    long long base_col = x0_col + 7LL * j;
    int g_c = em.emit(bp_clause, base_col, total_rows, 0);
    for (int t = 0; t < 3; ++t)
      demands.push_back(
          Demand{f.clauses[static_cast<size_t>(j)][static_cast<size_t>(t)], g_c, t,
                 static_cast<int>(base_col) + t});
    Placement pl;
    pl.tx = (base_col + 4) * kCell;
    pl.ty = kCell;  // top edge flush with the strip top
    pl.rot = 0;
    int g_t = em.emit_at(bp_trio, pl);
    em.plan.basin_roster.push_back(g_t);
    for (int t = 0; t < 3; ++t)
      demands.push_back(
          Demand{neg_of(f.clauses[static_cast<size_t>(j)][static_cast<size_t>(t)]), g_t, t,
                 static_cast<int>(base_col) + 4 + t});
  }
  for (int t = 0; t < u; ++t) {
    long long base_col = x0_col + 7LL * m + 3LL * t;
    Placement pl;
    pl.tx = base_col * kCell;
    pl.ty = kCell;
    pl.rot = 0;
    int g_p = em.emit_at(bp_pair, pl);
    em.plan.basin_roster.push_back(g_p);
    int v = unused[static_cast<size_t>(t)];
    demands.push_back(Demand{Literal{v, false}, g_p, 0, static_cast<int>(base_col)});
    demands.push_back(Demand{Literal{v, true}, g_p, 1, static_cast<int>(base_col) + 1});
  }

  // ---- Lane assignment (FIFO per literal) ----------------------------------
  assert(demands.size() == supplies.size());
  for (size_t r = 0; r < demands.size(); ++r) {
    const Demand& d = demands[r];
    auto& q = queue[literal_code(d.lit)];
    assert(!q.empty());
    Supply& s = supplies[static_cast<size_t>(q.front())];
    q.pop_front();
    s.cons_col = d.col;
    s.cons_gadget = d.gadget;
    s.cons_port = d.port;
    s.route_id = static_cast<int>(r);
    em.out.lane_literal[s.route_id] = s.lit;
    em.plan.literal_lanes[literal_code(s.lit)].push_back(s.route_id);
  }

  // ---- Junctions: drop column of s crosses the deeper track row of t iff
  // t's row extends past s's column, i.e. t turns further east. -------------
  std::map<std::pair<int, int>, int> junction_at;  // (col, row) -> gadget idx
  for (const Supply& s : supplies) {
    for (const Supply& t : supplies) {
      if (t.turn_row > s.turn_row && t.cons_col > s.cons_col) {
        auto key = std::make_pair(s.cons_col, t.turn_row);
        if (!junction_at.count(key)) {
          int g = em.emit(bp_junction, key.first, key.second, 0);
          junction_at[key] = g;
          em.plan.junction_sites.push_back(
              Pt{Rat(key.first * kCell), Rat(em.y_top(key.second) - kCell)});
        }
      }
    }
  }

  // ---- Route cells ---------------------------------------------------------
  std::vector<const Supply*> by_route(supplies.size(), nullptr);
  for (const Supply& s : supplies) by_route[static_cast<size_t>(s.route_id)] = &s;
  for (const Supply* sp : by_route) {
    const Supply& s = *sp;
    int band_bottom_row = s.turn_row;  // rows between band and turn get drops
    int band_top = 0;
    {
      // Recover the band row from the emitting gadget placement: the exit is
      // always on the band row of its variable.
      const Placement& pl = em.plan.gadgets[static_cast<size_t>(s.gadget)].placement;
      band_top = static_cast<int>(em.h_rows - (pl.ty + kCell) / kCell);
    }
    int prev_out = em.port_gid(s.gadget, s.port);
    auto link_in = [&](int gadget, int port) {
      em.out.sanctioned_cuts.emplace_back(prev_out, em.port_gid(gadget, port));
    };
    for (int r = band_top + 1; r < s.turn_row; ++r) {
      int g = em.emit(bp_cell, s.exit_col, r, 3);
      link_in(g, 0);
      prev_out = em.port_gid(g, 1);
    }
    {
      int g = em.emit(bp_turn_left, s.exit_col, band_bottom_row, 3);
      link_in(g, 0);
      prev_out = em.port_gid(g, 1);
    }
    for (int c = s.exit_col + 1; c < s.cons_col; ++c) {
      auto it = junction_at.find({c, s.turn_row});
      if (it != junction_at.end()) {
        link_in(it->second, 0);                       // h_in
        prev_out = em.port_gid(it->second, 2);        // h_out
      } else {
        int g = em.emit(bp_cell, c, s.turn_row, 0);
        link_in(g, 0);
        prev_out = em.port_gid(g, 1);
      }
    }
    {
      int g = em.emit(bp_turn_right, s.cons_col, s.turn_row, 0);
      link_in(g, 0);
      prev_out = em.port_gid(g, 1);
    }
    for (long long r = s.turn_row + 1; r < total_rows; ++r) {
      auto it = junction_at.find({s.cons_col, static_cast<int>(r)});
      if (it != junction_at.end()) {
        link_in(it->second, 1);                       // v_in
        prev_out = em.port_gid(it->second, 3);        // v_out
      } else {
        int g = em.emit(bp_cell, s.cons_col, r, 3);
        link_in(g, 0);
        prev_out = em.port_gid(g, 1);
      }
    }
    link_in(s.cons_gadget, s.cons_port);

    RoutePlan rp;
    rp.route_id = s.route_id;
    rp.literal = s.lit;
    Rat ex(s.exit_col * kCell + 8), cx(s.cons_col * kCell + 8);
    Rat band_bottom_y(em.y_top(band_top) - kCell);
    Rat row_axis(em.y_top(s.turn_row) - 8);
    Rat strip_top(2 * kCell);
    rp.polyline = {Pt{ex, band_bottom_y}, Pt{ex, row_axis}, Pt{cx, row_axis},
                   Pt{cx, strip_top}};
    em.plan.lanes.push_back(std::move(rp));
  }

  // ---- Seam grout ------------------------------------------------------------
  // Gadget boxes tile a 16-unit grid. Every grid line between boxes (and across
  // the open areas around them) is filled with wall segments, leaving two-unit
  // slits only where a sanctioned chain cut crosses, so that the sole
  // bichromatic sightlines between different gadgets are the sanctioned ones.
  {
    const int grout_idx = static_cast<int>(em.placed.size());
    em.out.gadget_kinds.push_back(GadgetKind::Lane);
    em.out.gadget_labels.push_back("grout");
    auto to_ll = [](const Rat& r) {
      return boost::multiprecision::numerator(r).convert_to<long long>();
    };  // layout coordinates are integral

    struct Rect {
      long long x0, y0, x1, y1;
    };
    std::vector<Rect> rects;
    for (const PlacedGadget& pg : em.plan.gadgets) {
      long long w = (pg.placement.rot % 2 == 0) ? pg.width : pg.height;
      long long h = (pg.placement.rot % 2 == 0) ? pg.height : pg.width;
      rects.push_back(Rect{pg.placement.tx, pg.placement.ty, pg.placement.tx + w,
                           pg.placement.ty + h});
    }
    struct CutSeg {
      long long x0, y0, x1, y1;
    };
    std::vector<CutSeg> cuts;
    for (auto [a, b] : em.out.sanctioned_cuts) {
      const Pt& pa = em.out.instance.vertices[static_cast<size_t>(a)].pos;
      const Pt& pb = em.out.instance.vertices[static_cast<size_t>(b)].pos;
      cuts.push_back(CutSeg{to_ll(pa.x), to_ll(pa.y), to_ll(pb.x), to_ll(pb.y)});
    }

    auto wall = [&](long long x1, long long y1, long long x2, long long y2) {
      int a = static_cast<int>(em.out.instance.vertices.size());
      em.out.instance.vertices.push_back(Vertex{a, Pt{Rat(x1), Rat(y1)}, Color::Cross});
      int b = static_cast<int>(em.out.instance.vertices.size());
      em.out.instance.vertices.push_back(Vertex{b, Pt{Rat(x2), Rat(y2)}, Color::Circle});
      em.out.instance.mandatory_edges.emplace_back(a, b);
      em.out.vertex_gadget.push_back(grout_idx);
      em.out.vertex_gadget.push_back(grout_idx);
    };
    using Hole = std::pair<long long, long long>;
    auto emit_line = [&](bool vertical, long long line, long long lo, long long hi,
                         std::vector<Hole> holes) {
      std::sort(holes.begin(), holes.end());
      long long cur = lo;
      holes.emplace_back(hi, hi);
      for (const Hole& h : holes) {
        if (h.first - cur >= 1) {
          if (vertical)
            wall(line, cur, line, h.first);
          else
            wall(cur, line, h.first, line);
        }
        cur = std::max(cur, h.second);
      }
    };

    for (long long X = kCell; X < width; X += kCell) {
      std::vector<Hole> holes;
      for (const Rect& r : rects)
        if (r.x0 < X && X < r.x1) holes.emplace_back(r.y0, r.y1);
      for (const CutSeg& c : cuts)
        if (c.y0 == c.y1 && std::min(c.x0, c.x1) < X && X < std::max(c.x0, c.x1))
          holes.emplace_back(c.y0 - 1, c.y0 + 1);
      emit_line(true, X, 0, height, std::move(holes));
    }
    for (long long Y = kCell; Y < height; Y += kCell) {
      std::vector<Hole> holes;
      for (const Rect& r : rects)
        if (r.y0 < Y && Y < r.y1) holes.emplace_back(r.x0, r.x1);
      for (const CutSeg& c : cuts)
        if (c.x0 == c.x1 && std::min(c.y0, c.y1) < Y && Y < std::max(c.y0, c.y1))
          holes.emplace_back(c.x0 - 1, c.x0 + 1);
      for (long long X = 0; X <= width; X += kCell) holes.emplace_back(X - 1, X + 1);
      emit_line(false, Y, 0, width, std::move(holes));
    }
  }

  BuildResult br;
  br.plan = std::move(em.plan);
  br.out = std::move(em.out);
  return br;
}

}  // namespace

LayoutPlan plan_layout(const Formula& f) { return build(f).plan; }

CompiledInstance compile(const Formula& f) { return build(f).out; }

Assignment extract_assignment(const CompiledInstance& ci, const Augmentation& aug) {
  std::set<std::pair<int, int>> added;
  for (auto [a, b] : aug.added_edges) {
    if (a > b) std::swap(a, b);
    added.insert({a, b});
  }
  Assignment as;
  as.values.assign(static_cast<size_t>(ci.num_variables), false);
  for (const auto& [var, ports] : ci.variable_ports) {
    auto [a, b] = ports;
    if (a > b) std::swap(a, b);
    as.values[static_cast<size_t>(var - 1)] = added.count({a, b}) > 0;
  }
  return as;
}

std::string provenance_to_json(const CompiledInstance& ci) {
  nlohmann::ordered_json j;
  j["num_variables"] = ci.num_variables;
  j["gadgets"] = nlohmann::ordered_json::array();
  for (size_t g = 0; g < ci.gadget_kinds.size(); ++g) {
    nlohmann::ordered_json gj;
    gj["kind"] = to_string(ci.gadget_kinds[g]);
    gj["label"] = ci.gadget_labels[g];
    j["gadgets"].push_back(std::move(gj));
  }
  j["vertex_gadget"] = ci.vertex_gadget;
  j["variable_ports"] = nlohmann::ordered_json::object();
  for (const auto& [var, ports] : ci.variable_ports)
    j["variable_ports"][std::to_string(var)] = {ports.first, ports.second};
  j["lane_literal"] = nlohmann::ordered_json::object();
  for (const auto& [route, lit] : ci.lane_literal)
    j["lane_literal"][std::to_string(route)] = {lit.var, lit.neg};
  return j.dump(2) + "\n";
}

CompiledInstance provenance_from_json(const std::string& text, MatchingInstance instance) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("provenance: parse failure: ") + e.what());
  }
  try {
    CompiledInstance ci;
    ci.instance = std::move(instance);
    ci.num_variables = j.at("num_variables").get<int>();
    for (const auto& gj : j.at("gadgets")) {
      ci.gadget_kinds.push_back(gadget_kind_from_string(gj.at("kind").get<std::string>()));
      ci.gadget_labels.push_back(gj.at("label").get<std::string>());
    }
    ci.vertex_gadget = j.at("vertex_gadget").get<std::vector<int>>();
    for (const auto& [key, val] : j.at("variable_ports").items())
      ci.variable_ports[std::stoi(key)] = {val.at(0).get<int>(), val.at(1).get<int>()};
    for (const auto& [key, val] : j.at("lane_literal").items())
      ci.lane_literal[std::stoi(key)] = Literal{val.at(0).get<int>(), val.at(1).get<bool>()};
    return ci;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("provenance: bad document: ") + e.what());
  }
}

LeakReport check_leaks(const CompiledInstance& ci) {
  LeakReport rep;
  const MatchingInstance& inst = ci.instance;
  std::vector<char> covered(inst.vertices.size(), 0);
  for (auto [a, b] : inst.mandatory_edges) {
    covered[static_cast<size_t>(a)] = 1;
    covered[static_cast<size_t>(b)] = 1;
  }
  MatchProblem mp;
  std::vector<int> ids;
  for (const Vertex& v : inst.vertices) {
    if (covered[static_cast<size_t>(v.id)]) continue;
    ids.push_back(v.id);
    mp.pos.push_back(v.pos);
    mp.color.push_back(v.color);
    mp.required.push_back(true);
  }
  for (auto [a, b] : inst.mandatory_edges)
    mp.blockers.push_back(
        Seg{inst.vertices[static_cast<size_t>(a)].pos, inst.vertices[static_cast<size_t>(b)].pos});

  std::set<std::pair<int, int>> sanctioned;
  for (auto [a, b] : ci.sanctioned_cuts) {
    if (a > b) std::swap(a, b);
    sanctioned.insert({a, b});
  }

  Matcher matcher(std::move(mp));
  for (const auto& [ui, vi] : matcher.candidates()) {
    int a = ids[static_cast<size_t>(ui)], b = ids[static_cast<size_t>(vi)];
    if (ci.vertex_gadget[static_cast<size_t>(a)] == ci.vertex_gadget[static_cast<size_t>(b)])
      continue;
    auto key = std::minmax(a, b);
    if (sanctioned.count({key.first, key.second})) continue;
    std::ostringstream os;
    os << "leak: " << a << " (" << rat_to_string(inst.vertices[static_cast<size_t>(a)].pos.x)
       << "," << rat_to_string(inst.vertices[static_cast<size_t>(a)].pos.y) << ", gadget "
       << ci.gadget_labels[static_cast<size_t>(ci.vertex_gadget[static_cast<size_t>(a)])]
       << ") -- " << b << " ("
       << rat_to_string(inst.vertices[static_cast<size_t>(b)].pos.x) << ","
       << rat_to_string(inst.vertices[static_cast<size_t>(b)].pos.y) << ", gadget "
       << ci.gadget_labels[static_cast<size_t>(ci.vertex_gadget[static_cast<size_t>(b)])] << ")";
    rep.ok = false;
    rep.leaks.push_back(os.str());
  }
  return rep;
}

}  // namespace augmatch
