#include "augmatch/instance.hpp"

#include <algorithm>
#include <unordered_map>

namespace augmatch {

namespace {

// Maps vertex ids to vector indices; ids equal to positions get a fast path.
struct IdIndex {
  bool dense = false;
  int n = 0;
  std::unordered_map<int, int> map;

  explicit IdIndex(const std::vector<Vertex>& vs) {
    n = static_cast<int>(vs.size());
    dense = true;
    for (int i = 0; i < n; ++i) {
      if (vs[static_cast<size_t>(i)].id != i) {
        dense = false;
        break;
      }
    }
    if (!dense) {
      map.reserve(vs.size() * 2);
      for (int i = 0; i < n; ++i) map.emplace(vs[static_cast<size_t>(i)].id, i);
    }
  }

  // -1 when the id does not exist.
  int lookup(int id) const {
    if (dense) return id >= 0 && id < n ? id : -1;
    auto it = map.find(id);
    return it == map.end() ? -1 : it->second;
  }
};

Violation make_violation(std::string code, std::string msg, std::vector<int> ids = {}) {
  return Violation{std::move(code), std::move(msg), std::move(ids)};
}

}  // namespace

std::optional<Violation> validate_instance(const MatchingInstance& inst) {
  const auto& vs = inst.vertices;
  const int n = static_cast<int>(vs.size());

  {
    std::vector<int> ids;
    ids.reserve(vs.size());
    for (const Vertex& v : vs) ids.push_back(v.id);
    std::sort(ids.begin(), ids.end());
    for (size_t i = 1; i < ids.size(); ++i) {
      if (ids[i] == ids[i - 1])
        return make_violation("DuplicateId", "vertex id used twice", {ids[i]});
    }
  }

  {
    // Integer coordinates (the common case) sort on long long pairs; anything
    // else falls back to exact rational comparisons.
    bool ints_ok = true;
    std::vector<std::pair<long long, long long>> ipos(vs.size());
    for (size_t i = 0; i < vs.size() && ints_ok; ++i) {
      ints_ok = coords_as_ints(vs[i].pos, ipos[i].first, ipos[i].second);
    }
    std::vector<int> order(vs.size());
    for (int i = 0; i < n; ++i) order[static_cast<size_t>(i)] = i;
    if (ints_ok) {
      std::sort(order.begin(), order.end(),
                [&](int a, int b) { return ipos[static_cast<size_t>(a)] < ipos[static_cast<size_t>(b)]; });
      for (size_t i = 1; i < order.size(); ++i) {
        if (ipos[static_cast<size_t>(order[i - 1])] == ipos[static_cast<size_t>(order[i])])
          return make_violation("DuplicatePosition", "two vertices share a position",
                                {vs[static_cast<size_t>(order[i - 1])].id,
                                 vs[static_cast<size_t>(order[i])].id});
      }
    } else {
      std::sort(order.begin(), order.end(), [&](int a, int b) {
        return lex_less(vs[static_cast<size_t>(a)].pos, vs[static_cast<size_t>(b)].pos);
      });
      for (size_t i = 1; i < order.size(); ++i) {
        const Vertex& a = vs[static_cast<size_t>(order[i - 1])];
        const Vertex& b = vs[static_cast<size_t>(order[i])];
        if (a.pos == b.pos)
          return make_violation("DuplicatePosition", "two vertices share a position",
                                {a.id, b.id});
      }
    }
  }

  for (const Vertex& v : vs) {
    bool has = v.color.has_value();
    if (inst.mode == Mode::Colored && !has)
      return make_violation("ModeViolation", "colored instance has an uncolored vertex",
                            {v.id});
    if (inst.mode == Mode::Uncolored && has)
      return make_violation("ModeViolation", "uncolored instance has a colored vertex",
                            {v.id});
  }

  IdIndex index(vs);
  std::vector<int> degree(vs.size(), 0);
  for (const auto& [a, b] : inst.mandatory_edges) {
    int ia = index.lookup(a), ib = index.lookup(b);
    if (ia < 0 || ib < 0)
      return make_violation("UnknownVertex", "mandatory edge names a missing vertex id",
                            {ia < 0 ? a : b});
    if (a == b) return make_violation("SelfLoop", "mandatory edge joins a vertex to itself", {a});
    if (++degree[static_cast<size_t>(ia)] > 1)
      return make_violation("DegreeViolation", "vertex covered by two mandatory edges", {a});
    if (++degree[static_cast<size_t>(ib)] > 1)
      return make_violation("DegreeViolation", "vertex covered by two mandatory edges", {b});
    if (inst.mode == Mode::Colored) {
      const auto& ca = vs[static_cast<size_t>(ia)].color;
      const auto& cb = vs[static_cast<size_t>(ib)].color;
      if (*ca == *cb)
        return make_violation("ColorViolation", "mandatory edge joins same-colored vertices",
                              {a, b});
    }
  }

  {
    std::vector<Seg> segs;
    segs.reserve(inst.mandatory_edges.size());
    for (const auto& [a, b] : inst.mandatory_edges) {
      segs.push_back(Seg{vs[static_cast<size_t>(index.lookup(a))].pos,
                         vs[static_cast<size_t>(index.lookup(b))].pos});
    }
    auto hit = segs.size() > 1000 ? find_conflict_sweep(segs) : find_conflict_quadratic(segs);
    if (hit) {
      const auto& e1 = inst.mandatory_edges[static_cast<size_t>(hit->first)];
      const auto& e2 = inst.mandatory_edges[static_cast<size_t>(hit->second)];
      return make_violation("CrossingViolation", "two mandatory segments conflict",
                            {e1.first, e1.second, e2.first, e2.second});
    }
  }

  return std::nullopt;
}

std::optional<Violation> verify_augmentation(const MatchingInstance& inst,
                                             const Augmentation& aug,
                                             const VerifyOptions& opts) {
  const auto& vs = inst.vertices;
  IdIndex index(vs);
  std::vector<int> degree(vs.size(), 0);

  for (const auto& [a, b] : inst.mandatory_edges) {
    int ia = index.lookup(a), ib = index.lookup(b);
    if (ia >= 0) ++degree[static_cast<size_t>(ia)];
    if (ib >= 0) ++degree[static_cast<size_t>(ib)];
  }
  for (const auto& [a, b] : aug.added_edges) {
    int ia = index.lookup(a), ib = index.lookup(b);
    if (ia < 0 || ib < 0)
      return make_violation("UnknownVertex", "added edge names a missing vertex id",
                            {ia < 0 ? a : b});
    if (a == b)
      return make_violation("DegreeViolation", "added edge joins a vertex to itself", {a});
    ++degree[static_cast<size_t>(ia)];
    ++degree[static_cast<size_t>(ib)];
    if (inst.mode == Mode::Colored) {
      const auto& ca = vs[static_cast<size_t>(ia)].color;
      const auto& cb = vs[static_cast<size_t>(ib)].color;
      if (ca && cb && *ca == *cb)
        return make_violation("ColorViolation", "added edge joins same-colored vertices",
                              {a, b});
    }
  }

  for (size_t i = 0; i < vs.size(); ++i) {
    if (degree[i] > 1)
      return make_violation("DegreeViolation", "vertex covered by more than one edge",
                            {vs[i].id});
  }
  for (size_t i = 0; i < vs.size(); ++i) {
    if (degree[i] == 0)
      return make_violation("NotPerfect", "vertex left unmatched", {vs[i].id});
  }

  if (opts.geometry != GeomCheck::Off) {
    std::vector<Seg> segs;
    std::vector<std::pair<int, int>> owners;
    segs.reserve(inst.mandatory_edges.size() + aug.added_edges.size());
    owners.reserve(segs.capacity());
    auto push = [&](const std::pair<int, int>& e) {
      segs.push_back(Seg{vs[static_cast<size_t>(index.lookup(e.first))].pos,
                         vs[static_cast<size_t>(index.lookup(e.second))].pos});
      owners.push_back(e);
    };
    for (const auto& e : inst.mandatory_edges) push(e);
    for (const auto& e : aug.added_edges) push(e);
    auto hit = opts.geometry == GeomCheck::Sweep ? find_conflict_sweep(segs)
                                                 : find_conflict_quadratic(segs);
    if (hit) {
      const auto& e1 = owners[static_cast<size_t>(hit->first)];
      const auto& e2 = owners[static_cast<size_t>(hit->second)];
      return make_violation("CrossingViolation", "two matching segments conflict",
                            {e1.first, e1.second, e2.first, e2.second});
    }
  }

  return std::nullopt;
}

MatchingInstance erase_colors(const MatchingInstance& inst) {
  if (inst.mode == Mode::Uncolored)
    throw std::logic_error("erase_colors: instance is already uncolored");
  MatchingInstance out;
  out.mode = Mode::Uncolored;
  out.vertices.reserve(inst.vertices.size());
  for (const Vertex& v : inst.vertices) out.vertices.push_back(Vertex{v.id, v.pos, std::nullopt});
  out.mandatory_edges = inst.mandatory_edges;
  return out;
}

std::pair<std::size_t, std::size_t> color_counts(const MatchingInstance& inst) {
  std::size_t cross = 0, circle = 0;
  for (const Vertex& v : inst.vertices) {
    if (!v.color) continue;
    (*v.color == Color::Cross ? cross : circle) += 1;
  }
  return {cross, circle};
}

std::vector<int> free_vertex_ids(const MatchingInstance& inst) {
  IdIndex index(inst.vertices);
  std::vector<int> degree(inst.vertices.size(), 0);
  for (const auto& [a, b] : inst.mandatory_edges) {
    int ia = index.lookup(a), ib = index.lookup(b);
    if (ia >= 0) ++degree[static_cast<size_t>(ia)];
    if (ib >= 0) ++degree[static_cast<size_t>(ib)];
  }
  std::vector<int> out;
  for (size_t i = 0; i < inst.vertices.size(); ++i) {
    if (degree[i] == 0) out.push_back(inst.vertices[i].id);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace augmatch
