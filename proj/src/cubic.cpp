#include "augmatch/cubic.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <chrono>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <utility>

namespace augmatch {

namespace {

using Json = nlohmann::ordered_json;

Violation viol(std::string code, std::string message, std::vector<int> ids) {
  Violation v;
  v.code = std::move(code);
  v.message = std::move(message);
  v.ids = std::move(ids);
  return v;
}

Rat dist2(const Pt& a, const Pt& b) {
  Rat dx = a.x - b.x, dy = a.y - b.y;
  return dx * dx + dy * dy;
}

// Exact squared distance from p to the closed segment s.
Rat point_segment_dist2(const Pt& p, const Seg& s) {
  Rat dx = s.b.x - s.a.x, dy = s.b.y - s.a.y;
  Rat px = p.x - s.a.x, py = p.y - s.a.y;
  Rat t_num = px * dx + py * dy;
  Rat t_den = dx * dx + dy * dy;  // > 0: segment endpoints are distinct
  if (t_num <= 0) return px * px + py * py;
  if (t_num >= t_den) return dist2(p, s.b);
  Rat cr = dx * py - dy * px;
  return cr * cr / t_den;
}

std::pair<int, int> norm_pair(int a, int b) { return a < b ? std::make_pair(a, b) : std::make_pair(b, a); }

std::map<int, int> index_by_id(const std::vector<Vertex>& vs) {
  std::map<int, int> idx;
  for (std::size_t i = 0; i < vs.size(); ++i) idx.emplace(vs[i].id, static_cast<int>(i));
  return idx;
}

}  // namespace

std::optional<Violation> validate_pslg(const Pslg& g) {
  std::map<int, int> idx;
  for (std::size_t i = 0; i < g.vertices.size(); ++i) {
    const Vertex& v = g.vertices[i];
    if (!idx.emplace(v.id, static_cast<int>(i)).second)
      return viol("DuplicateId", "vertex id used twice", {v.id});
    if (v.color)
      return viol("ModeViolation", "graph vertex carries a color", {v.id});
  }
  std::vector<int> order(g.vertices.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return lex_less(g.vertices[static_cast<size_t>(a)].pos, g.vertices[static_cast<size_t>(b)].pos);
  });
  for (std::size_t i = 1; i < order.size(); ++i) {
    const Vertex& a = g.vertices[static_cast<size_t>(order[i - 1])];
    const Vertex& b = g.vertices[static_cast<size_t>(order[i])];
    if (a.pos == b.pos)
      return viol("DuplicatePosition", "two vertices share a position", {a.id, b.id});
  }
  std::set<std::pair<int, int>> seen;
  for (const auto& [a, b] : g.edges) {
    if (!idx.count(a)) return viol("UnknownVertex", "edge names a missing vertex id", {a});
    if (!idx.count(b)) return viol("UnknownVertex", "edge names a missing vertex id", {b});
    if (a == b) return viol("SelfLoop", "edge joins a vertex to itself", {a});
    if (!seen.insert(norm_pair(a, b)).second)
      return viol("DuplicateEdge", "unordered vertex pair joined twice", {a, b});
  }
  std::vector<Seg> segs;
  segs.reserve(g.edges.size());
  for (const auto& [a, b] : g.edges)
    segs.push_back(Seg{g.vertices[static_cast<size_t>(idx[a])].pos,
                       g.vertices[static_cast<size_t>(idx[b])].pos});
  for (std::size_t i = 0; i < segs.size(); ++i)
    for (std::size_t j = i + 1; j < segs.size(); ++j)
      if (segments_conflict_shared_ok(segs[i], segs[j]))
        return viol("CrossingViolation", "two edges conflict beyond a shared endpoint",
                    {g.edges[i].first, g.edges[i].second, g.edges[j].first, g.edges[j].second});
  return std::nullopt;
}

std::vector<int> pslg_degrees(const Pslg& g) {
  std::map<int, int> idx = index_by_id(g.vertices);
  std::vector<int> deg(g.vertices.size(), 0);
  for (const auto& [a, b] : g.edges) {
    auto ia = idx.find(a), ib = idx.find(b);
    if (ia != idx.end()) ++deg[static_cast<size_t>(ia->second)];
    if (ib != idx.end()) ++deg[static_cast<size_t>(ib->second)];
  }
  return deg;
}

CubicGadget build_cubic_gadget() {
  CubicGadget g;
  auto add = [&g](int id, long long x, long long y) {
    g.graph.vertices.push_back(Vertex{id, Pt{Rat(x), Rat(y)}, std::nullopt});
  };
  // Anchor on top; the body (a kite over a central spine) hangs below it,
  // within atan(1/3) ~ 18.44 degrees of straight down, strictly inside the
  // declared 20 degree cone.
  add(0, 0, 5);    // anchor, degree 2
  add(1, -1, 2);   // left shoulder
  add(2, 1, 2);    // right shoulder
  add(3, 0, 1);    // upper spine
  add(4, 0, -1);   // lower spine
  g.graph.edges = {{0, 1}, {0, 2}, {1, 3}, {3, 2}, {2, 4}, {4, 1}, {3, 4}};
  g.anchor = 0;
  g.cone_axis = Dir{Rat(0), Rat(-1)};
  g.cone_half_angle_deg = Rat(20);
  return g;
}

Pslg transform_to_cubic(const MatchingInstance& inst) {
  if (inst.mode != Mode::Uncolored)
    throw std::invalid_argument("transform_to_cubic: instance must be uncolored");
  if (auto v = validate_instance(inst))
    throw std::invalid_argument("transform_to_cubic: invalid instance: " + v->message);

  const CubicGadget gadget = build_cubic_gadget();
  const int n = static_cast<int>(inst.vertices.size());
  std::map<int, int> idx = index_by_id(inst.vertices);

  // The local gadget fits in a closed disc of radius 6 around its anchor, so
  // a copy scaled by s reaches at most 6*s from the original vertex. Keeping
  // 6*s at or below a quarter of the clearance m (nearest other vertex or
  // nearest mandatory segment not incident to the vertex) makes distinct
  // copies disjoint and keeps copies away from far mandatory segments:
  // (6*s)^2 <= m^2/16, i.e. s^2 <= m^2/576.
  Pslg out;
  out.vertices.reserve(static_cast<size_t>(n) * gadget.graph.vertices.size());
  for (int i = 0; i < n; ++i) {
    const Pt& c = inst.vertices[static_cast<size_t>(i)].pos;
    const int my_id = inst.vertices[static_cast<size_t>(i)].id;

    std::optional<Rat> m2;
    auto shrink = [&m2](const Rat& d2) {
      if (!m2 || d2 < *m2) m2 = d2;
    };
    std::vector<Pt> others;
    others.reserve(static_cast<size_t>(n) - 1);
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      others.push_back(inst.vertices[static_cast<size_t>(j)].pos);
      shrink(dist2(c, others.back()));
    }
    for (const auto& [a, b] : inst.mandatory_edges) {
      if (a == my_id || b == my_id) continue;
      Seg s{inst.vertices[static_cast<size_t>(idx[a])].pos,
            inst.vertices[static_cast<size_t>(idx[b])].pos};
      Rat d2 = point_segment_dist2(c, s);
      if (d2 == 0)
        throw std::invalid_argument(
            "transform_to_cubic: vertex lies on a mandatory segment it does not belong to");
      shrink(d2);
    }
    // Also stay clear of every segment between two other original vertices:
    // then a copy can neither block a completion edge the original instance
    // allowed nor be hit by one. A vertex exactly on such a segment rules the
    // segment out in both problems (its own edges would always conflict), so
    // zero-distance pairs are skipped rather than shrunk toward nothing.
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      for (int k = j + 1; k < n; ++k) {
        if (k == i) continue;
        Seg s{inst.vertices[static_cast<size_t>(j)].pos,
              inst.vertices[static_cast<size_t>(k)].pos};
        Rat d2 = point_segment_dist2(c, s);
        if (d2 > 0) shrink(d2);
      }
    }

    Rat s(1);
    if (m2)
      while (s * s * 576 > *m2) s /= 2;

    std::optional<Dir> dir;
    // The copy body spans atan(1/3) ~ 18.44 degrees around the axis; any
    // clearance at or above 18.5 degrees keeps it strictly inside an
    // obstacle-free cone. Prefer the full 20 degrees, then narrow.
    for (const Rat& half : {Rat(20), Rat(19), Rat(37) / 2}) {
      dir = free_direction(c, others, half);
      if (dir) break;
    }
    if (!dir) {
      std::ostringstream msg;
      msg << "transform_to_cubic: no free cone at vertex " << my_id;
      throw CubicError(CubicError::Kind::NoFreeCone, msg.str());
    }

    // Rotation taking the local axis (0,-1) to dir, then scale by s and
    // translate the anchor onto c.
    const Rat& dx = dir->x;
    const Rat& dy = dir->y;
    for (const Vertex& lv : gadget.graph.vertices) {
      Rat lx = lv.pos.x;
      Rat ly = lv.pos.y - 5;  // anchor-centered local frame
      Pt p{c.x + s * (-dy * lx - dx * ly), c.y + s * (dx * lx - dy * ly)};
      out.vertices.push_back(Vertex{5 * i + lv.id, p, std::nullopt});
    }
    for (const auto& [a, b] : gadget.graph.edges) out.edges.emplace_back(5 * i + a, 5 * i + b);
  }
  for (const auto& [a, b] : inst.mandatory_edges)
    out.edges.emplace_back(5 * idx[a], 5 * idx[b]);
  return out;
}

SolveResult solve_cubic_augmentation(const Pslg& g, const SearchLimits& limits) {
  if (auto v = validate_pslg(g)) {
    SolverInputError err(SolverInputError::Kind::InvalidPslg, "pslg: " + v->message);
    err.violation = *v;
    throw err;
  }
  const auto t0 = std::chrono::steady_clock::now();
  auto elapsed_ms = [&t0] {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
        .count();
  };
  SolveResult res;
  auto finish = [&](Decision d) {
    res.decision = d;
    res.stats.elapsed_ms = elapsed_ms();
    return res;
  };

  const int n = static_cast<int>(g.vertices.size());
  std::vector<int> def(static_cast<size_t>(n));
  {
    std::vector<int> deg = pslg_degrees(g);
    int total = 0;
    for (int i = 0; i < n; ++i) {
      def[static_cast<size_t>(i)] = 3 - deg[static_cast<size_t>(i)];
      if (def[static_cast<size_t>(i)] < 0) return finish(Decision::NotAugmentable);
      total += def[static_cast<size_t>(i)];
    }
    // Every added edge lowers the total deficiency by exactly two.
    if (total % 2 != 0) return finish(Decision::NotAugmentable);
    if (total == 0) {
      res.witness = Augmentation{};
      return finish(Decision::Augmentable);
    }
  }

  std::map<int, int> idx = index_by_id(g.vertices);
  std::set<std::pair<int, int>> base;
  std::vector<Seg> base_segs;
  base_segs.reserve(g.edges.size());
  for (const auto& [a, b] : g.edges) {
    base.insert(norm_pair(idx[a], idx[b]));
    base_segs.push_back(Seg{g.vertices[static_cast<size_t>(idx[a])].pos,
                            g.vertices[static_cast<size_t>(idx[b])].pos});
  }

  // Static legality of an index pair: distinct deficient endpoints, not an
  // existing edge, no vertex of the graph on the closed segment (each vertex
  // must end at degree 3, and an edge from a vertex inside the segment would
  // always conflict with it), and no conflict with an existing edge beyond a
  // shared endpoint.
  auto pos = [&g](int i) -> const Pt& { return g.vertices[static_cast<size_t>(i)].pos; };
  std::vector<std::vector<char>> legal(static_cast<size_t>(n),
                                       std::vector<char>(static_cast<size_t>(n), 0));
  for (int i = 0; i < n; ++i) {
    if (def[static_cast<size_t>(i)] == 0) continue;
    for (int j = i + 1; j < n; ++j) {
      if (def[static_cast<size_t>(j)] == 0) continue;
      if (base.count({i, j})) continue;
      Seg s{pos(i), pos(j)};
      bool ok = true;
      for (int w = 0; w < n && ok; ++w) {
        if (w == i || w == j) continue;
        if (point_on_segment(pos(w), s)) ok = false;
      }
      for (std::size_t e = 0; e < base_segs.size() && ok; ++e)
        if (segments_conflict_shared_ok(s, base_segs[e])) ok = false;
      if (ok) legal[static_cast<size_t>(i)][static_cast<size_t>(j)] = 1;
    }
  }

  std::vector<std::pair<int, int>> added;
  std::vector<Seg> added_segs;
  std::set<std::pair<int, int>> added_set;
  std::uint64_t nodes = 0;
  bool out_of_budget = false;

  // Branches on the lowest-index deficient vertex v. Consecutive branches at
  // the same v take partners in strictly increasing order, so every edge set
  // is generated once. Once def[v] reaches zero it never becomes positive
  // again, hence all edges at v are chosen while v is the branch vertex.
  auto dfs = [&](auto&& self, int prev_v, int prev_w) -> bool {
    int v = -1;
    for (int i = 0; i < n; ++i)
      if (def[static_cast<size_t>(i)] > 0) {
        v = i;
        break;
      }
    if (v < 0) return true;
    for (int w = (v == prev_v ? prev_w + 1 : 0); w < n; ++w) {
      if (w == v || def[static_cast<size_t>(w)] == 0) continue;
      auto [lo, hi] = norm_pair(v, w);
      if (!legal[static_cast<size_t>(lo)][static_cast<size_t>(hi)]) continue;
      if (added_set.count({lo, hi})) continue;
      Seg s{pos(v), pos(w)};
      bool clash = false;
      for (const Seg& t : added_segs)
        if (segments_conflict_shared_ok(s, t)) {
          clash = true;
          break;
        }
      if (clash) continue;
      ++nodes;
      if (nodes > limits.max_nodes ||
          ((nodes & 1023u) == 0 && elapsed_ms() > static_cast<double>(limits.max_time_ms))) {
        out_of_budget = true;
        return false;
      }
      added.emplace_back(v, w);
      added_segs.push_back(s);
      added_set.insert({lo, hi});
      --def[static_cast<size_t>(v)];
      --def[static_cast<size_t>(w)];
      if (self(self, v, w)) return true;
      ++def[static_cast<size_t>(v)];
      ++def[static_cast<size_t>(w)];
      added_set.erase({lo, hi});
      added_segs.pop_back();
      added.pop_back();
      if (out_of_budget) return false;
    }
    return false;
  };

  bool found = dfs(dfs, -1, -1);
  res.stats.nodes_explored = nodes;
  if (out_of_budget) return finish(Decision::Timeout);
  if (!found) return finish(Decision::NotAugmentable);

  Augmentation aug;
  aug.added_edges.reserve(added.size());
  for (const auto& [i, j] : added) {
    int a = g.vertices[static_cast<size_t>(i)].id;
    int b = g.vertices[static_cast<size_t>(j)].id;
    aug.added_edges.push_back(a < b ? std::make_pair(a, b) : std::make_pair(b, a));
  }
  CubicReport check = verify_cubic(g, aug.added_edges);
  if (!check.ok)
    throw std::logic_error("solve_cubic_augmentation: witness failed verification: " +
                           (check.violations.empty() ? std::string("?")
                                                     : check.violations.front().message));
  res.witness = std::move(aug);
  return finish(Decision::Augmentable);
}

CubicReport verify_cubic(const Pslg& g, const std::vector<std::pair<int, int>>& added) {
  CubicReport rep;
  std::map<int, int> idx = index_by_id(g.vertices);

  // The union of existing and added edges, as index pairs; malformed entries
  // are reported and skipped.
  std::vector<std::pair<int, int>> uni;
  std::vector<std::pair<int, int>> uni_ids;
  auto ingest = [&](const std::vector<std::pair<int, int>>& edges) {
    for (const auto& [a, b] : edges) {
      auto ia = idx.find(a), ib = idx.find(b);
      if (ia == idx.end() || ib == idx.end()) {
        rep.violations.push_back(
            viol("UnknownVertex", "edge names a missing vertex id", {ia == idx.end() ? a : b}));
        continue;
      }
      if (a == b) {
        rep.violations.push_back(viol("SelfLoop", "edge joins a vertex to itself", {a}));
        continue;
      }
      uni.push_back(norm_pair(ia->second, ib->second));
      uni_ids.emplace_back(a, b);
    }
  };
  ingest(g.edges);
  ingest(added);

  std::set<std::pair<int, int>> seen;
  for (std::size_t e = 0; e < uni.size(); ++e)
    if (!seen.insert(uni[e]).second)
      rep.violations.push_back(viol("DuplicateEdge", "unordered vertex pair joined twice",
                                    {uni_ids[e].first, uni_ids[e].second}));

  std::vector<int> deg(g.vertices.size(), 0);
  for (const auto& [i, j] : uni) {
    ++deg[static_cast<size_t>(i)];
    ++deg[static_cast<size_t>(j)];
  }
  for (std::size_t i = 0; i < g.vertices.size(); ++i)
    if (deg[i] != 3)
      rep.violations.push_back(
          viol("DegreeViolation", "vertex degree is " + std::to_string(deg[i]) + ", not 3",
               {g.vertices[i].id}));

  auto pos = [&g](int i) -> const Pt& { return g.vertices[static_cast<size_t>(i)].pos; };
  for (std::size_t e1 = 0; e1 < uni.size(); ++e1)
    for (std::size_t e2 = e1 + 1; e2 < uni.size(); ++e2) {
      if (uni[e1] == uni[e2]) continue;  // already a DuplicateEdge
      Seg s1{pos(uni[e1].first), pos(uni[e1].second)};
      Seg s2{pos(uni[e2].first), pos(uni[e2].second)};
      if (segments_conflict_shared_ok(s1, s2))
        rep.violations.push_back(
            viol("CrossingViolation", "two edges conflict beyond a shared endpoint",
                 {uni_ids[e1].first, uni_ids[e1].second, uni_ids[e2].first, uni_ids[e2].second}));
    }

  rep.ok = rep.violations.empty();
  return rep;
}

std::string pslg_to_json(const Pslg& g) {
  Json j;
  Json vs = Json::array();
  for (const Vertex& v : g.vertices) {
    Json jv;
    jv["id"] = v.id;
    jv["x"] = rat_to_string(v.pos.x);
    jv["y"] = rat_to_string(v.pos.y);
    vs.push_back(std::move(jv));
  }
  j["vertices"] = std::move(vs);
  Json es = Json::array();
  for (const auto& [a, b] : g.edges) es.push_back(Json::array({a, b}));
  j["edges"] = std::move(es);
  return j.dump(2) + "\n";
}

Pslg pslg_from_json(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("json: parse failure: ") + e.what());
  }
  try {
    Pslg g;
    for (const Json& jv : j.at("vertices")) {
      Vertex v;
      v.id = jv.at("id").get<int>();
      v.pos.x = rat_from_string(jv.at("x").get<std::string>());
      v.pos.y = rat_from_string(jv.at("y").get<std::string>());
      g.vertices.push_back(std::move(v));
    }
    for (const Json& je : j.at("edges")) {
      if (!je.is_array() || je.size() != 2)
        throw std::invalid_argument("json: edge must be a two-element array");
      g.edges.emplace_back(je[0].get<int>(), je[1].get<int>());
    }
    return g;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("json: bad graph document: ") + e.what());
  }
}

}  // namespace augmatch
