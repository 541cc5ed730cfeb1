#include "augmatch/geom.hpp"

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <set>
#include <utility>

namespace augmatch {

namespace mp = boost::multiprecision;
using BF = mp::cpp_bin_float_100;

bool lex_less(const Pt& a, const Pt& b) {
  if (a.x != b.x) return a.x < b.x;
  return a.y < b.y;
}

namespace {

bool fits_small(const Rat& v, long long& out) {
  if (mp::denominator(v) != 1) return false;
  const auto& num = mp::numerator(v);
  if (num > 1000000000 || num < -1000000000) return false;
  out = num.convert_to<long long>();
  return true;
}

int sign_of(const Rat& v) { return v.sign(); }

BF to_bf(const Rat& v) {
  return BF(mp::numerator(v)) / BF(mp::denominator(v));
}

}  // namespace

int orient(const Pt& p, const Pt& q, const Pt& r) {
  long long px, py, qx, qy, rx, ry;
  if (fits_small(p.x, px) && fits_small(p.y, py) && fits_small(q.x, qx) &&
      fits_small(q.y, qy) && fits_small(r.x, rx) && fits_small(r.y, ry)) {
    // Entries bounded by 2e9, so the products fit comfortably in 128 bits.
    __int128 cross = (__int128)(qx - px) * (ry - py) - (__int128)(qy - py) * (rx - px);
    return cross > 0 ? 1 : cross < 0 ? -1 : 0;
  }
  Rat cross = (q.x - p.x) * (r.y - p.y) - (q.y - p.y) * (r.x - p.x);
  return sign_of(cross);
}

namespace {

bool in_box(const Pt& p, const Seg& s) {
  const Rat& lox = s.a.x < s.b.x ? s.a.x : s.b.x;
  const Rat& hix = s.a.x < s.b.x ? s.b.x : s.a.x;
  const Rat& loy = s.a.y < s.b.y ? s.a.y : s.b.y;
  const Rat& hiy = s.a.y < s.b.y ? s.b.y : s.a.y;
  return lox <= p.x && p.x <= hix && loy <= p.y && p.y <= hiy;
}

bool conflict_core(const Seg& s1, const Seg& s2) {
  int d1 = orient(s2.a, s2.b, s1.a);
  int d2 = orient(s2.a, s2.b, s1.b);
  int d3 = orient(s1.a, s1.b, s2.a);
  int d4 = orient(s1.a, s1.b, s2.b);
  if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) &&
      ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0)))
    return true;
  if (d1 == 0 && in_box(s1.a, s2)) return true;
  if (d2 == 0 && in_box(s1.b, s2)) return true;
  if (d3 == 0 && in_box(s2.a, s1)) return true;
  if (d4 == 0 && in_box(s2.b, s1)) return true;
  return false;
}

}  // namespace

bool point_on_segment(const Pt& p, const Seg& s) {
  return orient(s.a, s.b, p) == 0 && in_box(p, s);
}

bool point_strictly_inside(const Pt& p, const Seg& s) {
  return point_on_segment(p, s) && p != s.a && p != s.b;
}

bool segments_conflict(const Seg& s1, const Seg& s2) {
  if (s1.a == s2.a || s1.a == s2.b || s1.b == s2.a || s1.b == s2.b)
    throw SharedEndpointError("segments_conflict: segments share an endpoint");
  return conflict_core(s1, s2);
}

bool segments_conflict_shared_ok(const Seg& s1, const Seg& s2) {
  bool aa = s1.a == s2.a, ab = s1.a == s2.b, ba = s1.b == s2.a, bb = s1.b == s2.b;
  int shared = (aa || ab ? 1 : 0) + (ba || bb ? 1 : 0);
  if (shared == 2) return true;  // identical (possibly reversed) segments
  if (shared == 1) {
    Pt p = (aa || ab) ? s1.a : s1.b;
    Pt q = (aa || ab) ? s1.b : s1.a;
    Pt r = aa || ba ? s2.b : s2.a;
    if (orient(p, q, r) != 0) return false;
    Rat dot = (q.x - p.x) * (r.x - p.x) + (q.y - p.y) * (r.y - p.y);
    return dot > 0;  // same ray out of p: overlap beyond the contact point
  }
  return conflict_core(s1, s2);
}

// ---------------------------------------------------------------------------
// Directions and cones.

namespace {

struct RawDir {
  Rat x, y;  // not normalized
};

// 0 for the upper half-turn (angle in [0, pi)), 1 for the lower ([pi, 2pi)).
int half_of(const RawDir& d) {
  int sy = d.y.sign();
  if (sy > 0) return 0;
  if (sy < 0) return 1;
  return d.x.sign() > 0 ? 0 : 1;
}

bool angle_less(const RawDir& a, const RawDir& b) {
  int ha = half_of(a), hb = half_of(b);
  if (ha != hb) return ha < hb;
  Rat cross = a.x * b.y - a.y * b.x;
  return cross > 0;
}

bool same_direction(const RawDir& a, const RawDir& b) {
  if (half_of(a) != half_of(b)) return false;
  Rat cross = a.x * b.y - a.y * b.x;
  return cross == 0;
}

BF bf_pi() { return boost::math::constants::pi<BF>(); }

// Angle of d in [0, 2pi).
BF angle_of(const RawDir& d) {
  BF a = atan2(to_bf(d.y), to_bf(d.x));
  if (a < 0) a += 2 * bf_pi();
  return a;
}

// Exact rational unit vector close (within ~2^-40 radians) to the given angle.
Dir snap_unit(const BF& angle) {
  BF c = cos(angle), s = sin(angle);
  bool flip = c < BF(-0.5);
  if (flip) {
    c = -c;
    s = -s;
  }
  BF t = s / (1 + c);  // tan(half-angle), |t| <= ~1.8 here
  mp::cpp_int scale = mp::cpp_int(1) << 40;
  mp::cpp_int p = round(t * BF(scale)).convert_to<mp::cpp_int>();
  Rat tr(p, scale);
  Rat denom = 1 + tr * tr;
  Dir d{(1 - tr * tr) / denom, (2 * tr) / denom};
  if (flip) {
    d.x = -d.x;
    d.y = -d.y;
  }
  return d;
}

BF theta_radians(const Rat& half_angle_degrees) {
  return to_bf(half_angle_degrees) * bf_pi() / 180;
}

// Angular distance in [0, pi] between two exact rays, evaluated in BF.
BF angle_between(const RawDir& a, const RawDir& b) {
  BF cross = to_bf(a.x * b.y - a.y * b.x);
  BF dot = to_bf(a.x * b.x + a.y * b.y);
  return atan2(fabs(cross), dot);
}

// Precision guard for angle comparisons: rays come from workbench-scale
// rational points, whose pairwise angles are either equal (handled exactly)
// or separated far above this threshold; 100-digit evaluation leaves a margin
// of many orders of magnitude.
const double kAngleGuard = 1e-30;

std::vector<RawDir> dedup_rays(const Pt& center, const std::vector<Pt>& others) {
  std::vector<RawDir> rays;
  rays.reserve(others.size());
  for (const Pt& o : others) rays.push_back(RawDir{o.x - center.x, o.y - center.y});
  std::sort(rays.begin(), rays.end(), angle_less);
  std::vector<RawDir> out;
  for (auto& r : rays)
    if (out.empty() || !same_direction(out.back(), r)) out.push_back(std::move(r));
  return out;
}

}  // namespace

bool cone_is_clear(const Pt& center, const Dir& d, const std::vector<Pt>& others,
                   const Rat& half_angle_degrees) {
  BF theta = theta_radians(half_angle_degrees);
  RawDir dd{d.x, d.y};
  for (const Pt& o : others) {
    RawDir r{o.x - center.x, o.y - center.y};
    if (angle_between(dd, r) < theta - BF(kAngleGuard)) return false;
  }
  return true;
}

std::optional<Dir> free_direction(const Pt& center, const std::vector<Pt>& others,
                                  const Rat& half_angle_degrees) {
  std::vector<RawDir> rays = dedup_rays(center, others);
  if (rays.empty()) return std::nullopt;  // precondition: others non-empty
  BF theta = theta_radians(half_angle_degrees);
  BF two_pi = 2 * bf_pi();
  // The snap step moves the bisector by at most ~2^-40 radians; demand that
  // much slack on each side of the gap.
  BF snap_slack = BF(1) / BF(mp::cpp_int(1) << 38);

  size_t k = rays.size();
  BF best_gap = -1;
  BF best_mid = 0;
  for (size_t i = 0; i < k; ++i) {
    BF a0 = angle_of(rays[i]);
    BF a1 = (i + 1 < k) ? angle_of(rays[i + 1]) : angle_of(rays[0]) + two_pi;
    BF gap = a1 - a0;
    if (gap > best_gap) {
      best_gap = gap;
      best_mid = a0 + gap / 2;
    }
  }
  if (best_gap < 2 * theta + 2 * snap_slack) return std::nullopt;
  Dir d = snap_unit(best_mid);
  if (!cone_is_clear(center, d, others, half_angle_degrees)) return std::nullopt;
  return d;
}

// ---------------------------------------------------------------------------
// Batch conflict detection.

namespace {

std::pair<int, int> ordered(int i, int j) { return i < j ? std::make_pair(i, j) : std::make_pair(j, i); }

// Whole-batch integer mirror of the rational machinery below. When every
// endpoint is an integer of magnitude <= 1e9 the sweep runs on long long
// coordinates with __int128 predicates (all intermediates stay well inside
// 128 bits); the event order and comparator semantics are identical, so the
// two paths return the same pair. Anything else falls back to exact Rat.
struct SegInts {
  bool ok = false;
  std::vector<long long> ax, ay, bx, by;  // normalized: (ax,ay) lex <= (bx,by)
};

SegInts to_seg_ints(const std::vector<Seg>& segs) {
  SegInts si;
  si.ax.resize(segs.size());
  si.ay.resize(segs.size());
  si.bx.resize(segs.size());
  si.by.resize(segs.size());
  for (size_t k = 0; k < segs.size(); ++k) {
    long long pax, pay, pbx, pby;
    if (!fits_small(segs[k].a.x, pax) || !fits_small(segs[k].a.y, pay) ||
        !fits_small(segs[k].b.x, pbx) || !fits_small(segs[k].b.y, pby))
      return si;
    if (pax < pbx || (pax == pbx && pay <= pby)) {
      si.ax[k] = pax, si.ay[k] = pay, si.bx[k] = pbx, si.by[k] = pby;
    } else {
      si.ax[k] = pbx, si.ay[k] = pby, si.bx[k] = pax, si.by[k] = pay;
    }
  }
  si.ok = true;
  return si;
}

int sgn_i128(__int128 v) { return v > 0 ? 1 : v < 0 ? -1 : 0; }

int orient_ii(long long px, long long py, long long qx, long long qy, long long rx,
              long long ry) {
  return sgn_i128((__int128)(qx - px) * (ry - py) - (__int128)(qy - py) * (rx - px));
}

bool in_box_ii(long long px, long long py, long long ax, long long ay, long long bx,
               long long by) {
  return std::min(ax, bx) <= px && px <= std::max(ax, bx) && std::min(ay, by) <= py &&
         py <= std::max(ay, by);
}

bool conflict_core_ii(long long ax, long long ay, long long bx, long long by, long long cx,
                      long long cy, long long dx, long long dy) {
  int d1 = orient_ii(cx, cy, dx, dy, ax, ay);
  int d2 = orient_ii(cx, cy, dx, dy, bx, by);
  int d3 = orient_ii(ax, ay, bx, by, cx, cy);
  int d4 = orient_ii(ax, ay, bx, by, dx, dy);
  if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) &&
      ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0)))
    return true;
  if (d1 == 0 && in_box_ii(ax, ay, cx, cy, dx, dy)) return true;
  if (d2 == 0 && in_box_ii(bx, by, cx, cy, dx, dy)) return true;
  if (d3 == 0 && in_box_ii(cx, cy, ax, ay, bx, by)) return true;
  if (d4 == 0 && in_box_ii(dx, dy, ax, ay, bx, by)) return true;
  return false;
}

struct IntSweepState {
  const SegInts* s;
  long long cur_x;
};

// Same order as SweepCmp: y at the current abscissa as an exact fraction
// (numerator ay*dx + dy*(x-ax), denominator dx > 0; verticals use their lower
// end over 1), then slope with verticals greatest, then index.
struct IntSweepCmp {
  IntSweepState* st;

  static void key(const SegInts& s, size_t i, long long x, __int128& num, long long& den) {
    long long dx = s.bx[i] - s.ax[i];
    if (dx == 0) {
      num = s.ay[i];
      den = 1;
      return;
    }
    num = (__int128)s.ay[i] * dx + (__int128)(s.by[i] - s.ay[i]) * (x - s.ax[i]);
    den = dx;
  }

  bool operator()(int i, int j) const {
    if (i == j) return false;
    const SegInts& s = *st->s;
    size_t si = static_cast<size_t>(i), sj = static_cast<size_t>(j);
    __int128 ni, nj;
    long long di, dj;
    key(s, si, st->cur_x, ni, di);
    key(s, sj, st->cur_x, nj, dj);
    __int128 lhs = ni * dj, rhs = nj * di;
    if (lhs != rhs) return lhs < rhs;
    bool iv = s.ax[si] == s.bx[si], jv = s.ax[sj] == s.bx[sj];
    if (iv != jv) return jv;  // non-vertical sorts below vertical
    if (!iv) {
      __int128 cross = (__int128)(s.by[si] - s.ay[si]) * (s.bx[sj] - s.ax[sj]) -
                       (__int128)(s.by[sj] - s.ay[sj]) * (s.bx[si] - s.ax[si]);
      if (cross != 0) return cross < 0;
    }
    return i < j;
  }
};

std::optional<std::pair<int, int>> find_conflict_sweep_int(const SegInts& si, int k) {
  struct Event {
    int type;  // 0 insert, 1 delete
    int idx;
  };
  std::vector<Event> events;
  events.reserve(2 * static_cast<size_t>(k));
  for (int i = 0; i < k; ++i) events.push_back({0, i}), events.push_back({1, i});
  std::sort(events.begin(), events.end(), [&](const Event& e1, const Event& e2) {
    size_t i1 = static_cast<size_t>(e1.idx), i2 = static_cast<size_t>(e2.idx);
    long long x1 = e1.type == 0 ? si.ax[i1] : si.bx[i1];
    long long x2 = e2.type == 0 ? si.ax[i2] : si.bx[i2];
    if (x1 != x2) return x1 < x2;
    if (e1.type != e2.type) return e1.type < e2.type;  // inserts first
    long long y1 = e1.type == 0 ? si.ay[i1] : si.by[i1];
    long long y2 = e2.type == 0 ? si.ay[i2] : si.by[i2];
    if (y1 != y2) return y1 < y2;
    return e1.idx < e2.idx;
  });

  auto hit = [&](int a, int b) {
    size_t sa = static_cast<size_t>(a), sb = static_cast<size_t>(b);
    return conflict_core_ii(si.ax[sa], si.ay[sa], si.bx[sa], si.by[sa], si.ax[sb], si.ay[sb],
                            si.bx[sb], si.by[sb]);
  };

  IntSweepState st{&si, 0};
  std::set<int, IntSweepCmp> status{IntSweepCmp{&st}};
  std::vector<std::optional<std::set<int, IntSweepCmp>::iterator>> where(
      static_cast<size_t>(k));

  for (const Event& e : events) {
    size_t se = static_cast<size_t>(e.idx);
    st.cur_x = e.type == 0 ? si.ax[se] : si.bx[se];
    if (e.type == 0) {
      auto it = status.insert(e.idx).first;
      where[se] = it;
      if (it != status.begin()) {
        int p = *std::prev(it);
        if (hit(p, e.idx)) return ordered(p, e.idx);
      }
      auto nx = std::next(it);
      if (nx != status.end()) {
        if (hit(*nx, e.idx)) return ordered(*nx, e.idx);
      }
    } else {
      auto it = *where[se];
      auto nx = std::next(it);
      if (it != status.begin() && nx != status.end()) {
        int p = *std::prev(it);
        int n = *nx;
        if (hit(p, n)) return ordered(p, n);
      }
      status.erase(it);
      where[se].reset();
    }
  }
  return std::nullopt;
}

// Sweep-line y key of segment s at abscissa x; verticals use their lower end
// (they are only active at a single event abscissa).
Rat sweep_y(const Seg& s, const Rat& x) {
  if (s.a.x == s.b.x) return s.a.y < s.b.y ? s.a.y : s.b.y;
  return s.a.y + (s.b.y - s.a.y) * (x - s.a.x) / (s.b.x - s.a.x);
}

// Compares slopes with verticals greatest; both inputs oriented left-to-right.
int slope_cmp(const Pt& al, const Pt& ar, const Pt& bl, const Pt& br) {
  bool av = al.x == ar.x, bv = bl.x == br.x;
  if (av && bv) return 0;
  if (av) return 1;
  if (bv) return -1;
  Rat cross = (ar.y - al.y) * (br.x - bl.x) - (br.y - bl.y) * (ar.x - al.x);
  return cross.sign();
}

struct SweepState {
  const std::vector<Seg>* segs;        // normalized left-to-right
  Rat cur_x;
};

// Strict weak order on active segment indices: y at the current abscissa,
// then slope, then index. This is a total order for any fixed abscissa; it
// matches the geometric vertical order everywhere left of the first conflict,
// which is all the sweep needs for detection.
struct SweepCmp {
  SweepState* st;
  bool operator()(int i, int j) const {
    if (i == j) return false;
    const Seg& a = (*st->segs)[static_cast<size_t>(i)];
    const Seg& b = (*st->segs)[static_cast<size_t>(j)];
    Rat ya = sweep_y(a, st->cur_x);
    Rat yb = sweep_y(b, st->cur_x);
    if (ya != yb) return ya < yb;
    int sc = slope_cmp(a.a, a.b, b.a, b.b);
    if (sc != 0) return sc < 0;
    return i < j;
  }
};

}  // namespace

std::optional<std::pair<int, int>> find_conflict_sweep(const std::vector<Seg>& segs) {
  const int k = static_cast<int>(segs.size());
  if (k < 2) return std::nullopt;
  {
    SegInts si = to_seg_ints(segs);
    if (si.ok) return find_conflict_sweep_int(si, k);
  }
  std::vector<Seg> norm;
  norm.reserve(segs.size());
  for (const Seg& s : segs) {
    norm.push_back(lex_less(s.a, s.b) ? s : Seg{s.b, s.a});
  }

  struct Event {
    int type;  // 0 insert, 1 delete
    int idx;
  };
  std::vector<Event> events;
  events.reserve(2 * segs.size());
  for (int i = 0; i < k; ++i) events.push_back({0, i}), events.push_back({1, i});
  std::sort(events.begin(), events.end(), [&](const Event& e1, const Event& e2) {
    const Seg& s1 = norm[static_cast<size_t>(e1.idx)];
    const Seg& s2 = norm[static_cast<size_t>(e2.idx)];
    const Pt& p1 = e1.type == 0 ? s1.a : s1.b;
    const Pt& p2 = e2.type == 0 ? s2.a : s2.b;
    if (p1.x != p2.x) return p1.x < p2.x;
    if (e1.type != e2.type) return e1.type < e2.type;  // inserts first
    if (p1.y != p2.y) return p1.y < p2.y;
    return e1.idx < e2.idx;
  });

  SweepState st{&norm, Rat(0)};
  std::set<int, SweepCmp> status{SweepCmp{&st}};
  std::vector<std::optional<std::set<int, SweepCmp>::iterator>> where(segs.size());

  for (const Event& e : events) {
    const Seg& s = norm[static_cast<size_t>(e.idx)];
    st.cur_x = e.type == 0 ? s.a.x : s.b.x;
    if (e.type == 0) {
      auto it = status.insert(e.idx).first;
      where[static_cast<size_t>(e.idx)] = it;
      if (it != status.begin()) {
        int p = *std::prev(it);
        if (conflict_core(norm[static_cast<size_t>(p)], s)) return ordered(p, e.idx);
      }
      auto nx = std::next(it);
      if (nx != status.end()) {
        if (conflict_core(norm[static_cast<size_t>(*nx)], s)) return ordered(*nx, e.idx);
      }
    } else {
      auto it = *where[static_cast<size_t>(e.idx)];
      auto nx = std::next(it);
      if (it != status.begin() && nx != status.end()) {
        int p = *std::prev(it);
        int n = *nx;
        if (conflict_core(norm[static_cast<size_t>(p)], norm[static_cast<size_t>(n)]))
          return ordered(p, n);
      }
      status.erase(it);
      where[static_cast<size_t>(e.idx)].reset();
    }
  }
  return std::nullopt;
}

std::optional<std::pair<int, int>> find_conflict_quadratic(const std::vector<Seg>& segs) {
  const int k = static_cast<int>(segs.size());
  {
    SegInts si = to_seg_ints(segs);
    if (si.ok) {
      for (int i = 0; i < k; ++i) {
        size_t a = static_cast<size_t>(i);
        long long alox = si.ax[a], ahix = si.bx[a];  // normalized: ax <= bx
        long long aloy = std::min(si.ay[a], si.by[a]), ahiy = std::max(si.ay[a], si.by[a]);
        for (int j = i + 1; j < k; ++j) {
          size_t b = static_cast<size_t>(j);
          if (si.bx[b] < alox || si.ax[b] > ahix || std::max(si.ay[b], si.by[b]) < aloy ||
              std::min(si.ay[b], si.by[b]) > ahiy)
            continue;
          if (conflict_core_ii(si.ax[a], si.ay[a], si.bx[a], si.by[a], si.ax[b], si.ay[b],
                               si.bx[b], si.by[b]))
            return std::make_pair(i, j);
        }
      }
      return std::nullopt;
    }
  }
  for (int i = 0; i < k; ++i) {
    const Seg& a = segs[static_cast<size_t>(i)];
    Rat alox = a.a.x < a.b.x ? a.a.x : a.b.x, ahix = a.a.x < a.b.x ? a.b.x : a.a.x;
    Rat aloy = a.a.y < a.b.y ? a.a.y : a.b.y, ahiy = a.a.y < a.b.y ? a.b.y : a.a.y;
    for (int j = i + 1; j < k; ++j) {
      const Seg& b = segs[static_cast<size_t>(j)];
      if ((b.a.x < alox && b.b.x < alox) || (b.a.x > ahix && b.b.x > ahix) ||
          (b.a.y < aloy && b.b.y < aloy) || (b.a.y > ahiy && b.b.y > ahiy))
        continue;
      if (conflict_core(a, b)) return std::make_pair(i, j);
    }
  }
  return std::nullopt;
}

std::string rat_to_string(const Rat& v) {
  return mp::numerator(v).str() + "/" + mp::denominator(v).str();
}

Rat rat_from_string(const std::string& s) {
  auto is_integer = [](const std::string& part) {
    size_t i = (!part.empty() && (part[0] == '-' || part[0] == '+')) ? 1 : 0;
    if (i >= part.size()) return false;
    return std::all_of(part.begin() + static_cast<std::ptrdiff_t>(i), part.end(),
                       [](unsigned char c) { return std::isdigit(c) != 0; });
  };
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) {
      if (!is_integer(s)) throw std::invalid_argument("not an integer");
      return Rat(mp::cpp_int(s));
    }
    std::string ns = s.substr(0, slash), ds = s.substr(slash + 1);
    if (!is_integer(ns) || !is_integer(ds)) throw std::invalid_argument("not a fraction");
    mp::cpp_int num(ns);
    mp::cpp_int den(ds);
    if (den == 0) throw std::invalid_argument("zero denominator");
    return Rat(num, den);
  } catch (const std::exception&) {
    throw std::invalid_argument("bad rational literal: " + s);
  }
}

}  // namespace augmatch
