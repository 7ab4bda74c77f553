#include "sosdimer/tiling.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <stdexcept>

namespace sosdimer {

// --- TorusTiling ------------------------------------------------------------

TorusTiling::TorusTiling(TorusGeometry geom, HeightGrid heights)
    : geom_(geom), h_(std::move(heights)) {
  if (h_.rows() != geom_.N() || h_.cols() != geom_.N())
    throw std::invalid_argument("TorusTiling: bad grid shape");
  if (h_(0, 0) != 0) throw std::invalid_argument("TorusTiling: not rooted");
  if (!is_valid_heights(geom_, h_))
    throw std::invalid_argument("TorusTiling: heights not a monotone tiling");
}

bool TorusTiling::is_valid_heights(const TorusGeometry& g,
                                   const HeightGrid& h) {
  const int N = g.N();
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) {
      int e1 = (i + 1 < N ? h(i + 1, j) : h(0, j) - g.drop1()) - h(i, j);
      int e2 = (j + 1 < N ? h(i, j + 1) : h(i, 0) - g.drop2()) - h(i, j);
      if (e1 < -1 || e1 > 0 || e2 < -1 || e2 > 0) return false;
    }
  return true;
}

int TorusTiling::height(Vec2 face) const {
  auto w = geom_.wrap(face);
  return h_(w.face.x, w.face.y) + w.height_offset;
}

LozengeCounts TorusTiling::counts() const {
  const int N = geom_.N();
  LozengeCounts c{static_cast<long long>(N) * N, 0, 0};
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) {
      c.b += h_(i, j) - height({i + 1, j});
      c.c += h_(i, j) - height({i, j + 1});
    }
  return c;
}

std::vector<Plaquette> TorusTiling::plaquettes() const {
  const int N = geom_.N();
  std::vector<Plaquette> out;
  out.reserve(static_cast<std::size_t>(counts().total()));
  auto canon = [&](Plaquette p) {
    if (p.anchor.x >= N) {
      p.anchor.x -= N;
      p.anchor.z += geom_.drop1();
    }
    if (p.anchor.y >= N) {
      p.anchor.y -= N;
      p.anchor.z += geom_.drop2();
    }
    return p;
  };
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) {
      out.push_back({PlaqOrientation::Horizontal, {i, j, h_(i, j)}});
      int n1 = height({i + 1, j}), n2 = height({i, j + 1});
      for (int w = n1; w < h_(i, j); ++w)
        out.push_back(canon({PlaqOrientation::VerticalB, {i + 1, j, w}}));
      for (int w = n2; w < h_(i, j); ++w)
        out.push_back(canon({PlaqOrientation::VerticalC, {i, j + 1, w}}));
    }
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<TorusTiling> TorusTiling::flip(Vec2 face, int dir) const {
  if (dir != 1 && dir != -1) return std::nullopt;
  auto w = geom_.wrap(face);
  HeightGrid h = h_;
  h(w.face.x, w.face.y) += dir;
  if (!is_valid_heights(geom_, h)) return std::nullopt;
  if (h(0, 0) != 0) h -= h(0, 0);
  return TorusTiling(geom_, std::move(h));
}

std::vector<TorusTiling> enumerate_torus_tilings(const TorusGeometry& g,
                                                 std::size_t cap) {
  const int N = g.N();
  HeightGrid h(N, N);
  std::vector<TorusTiling> out;
  // Faces in lexicographic order; h(i,j) is constrained from (i-1,j) and
  // (i,j-1), and the wrap constraints close each row/column.
  std::function<void(int)> rec = [&](int idx) {
    if (idx == N * N) {
      if (TorusTiling::is_valid_heights(g, h)) {
        if (out.size() >= cap)
          throw std::runtime_error("enumerate_torus_tilings: cap exceeded");
        out.emplace_back(g, h);
      }
      return;
    }
    int i = idx / N, j = idx % N;
    if (i == 0 && j == 0) {
      h(0, 0) = 0;
      rec(idx + 1);
      return;
    }
    int lo = std::numeric_limits<int>::min(), hi = std::numeric_limits<int>::max();
    if (i > 0) { lo = std::max(lo, h(i - 1, j) - 1); hi = std::min(hi, h(i - 1, j)); }
    if (j > 0) { lo = std::max(lo, h(i, j - 1) - 1); hi = std::min(hi, h(i, j - 1)); }
    for (int v = lo; v <= hi; ++v) {
      h(i, j) = v;
      // close the row when j == N-1: gradient to (i,0) across the seam
      if (j == N - 1) {
        int e2 = (h(i, 0) - g.drop2()) - v;
        if (e2 < -1 || e2 > 0) continue;
      }
      if (i == N - 1) {
        int e1 = (h(0, j) - g.drop1()) - v;
        if (e1 < -1 || e1 > 0) continue;
      }
      rec(idx + 1);
    }
  };
  rec(0);
  std::sort(out.begin(), out.end(), [](const TorusTiling& s, const TorusTiling& t) {
    const auto &a = s.heights(), &b = t.heights();
    for (int i = 0; i < a.rows(); ++i)
      for (int j = 0; j < a.cols(); ++j)
        if (a(i, j) != b(i, j)) return a(i, j) < b(i, j);
    return false;
  });
  return out;
}

// --- HeightRegion ------------------------------------------------------------

HeightRegion::HeightRegion(std::vector<Vec2> free_faces,
                           std::vector<std::pair<Vec2, int>> boundary)
    : free_(std::move(free_faces)), boundary_(std::move(boundary)) {
  std::sort(free_.begin(), free_.end());
  for (auto& f : free_) free_set_.insert(f);
  if (free_set_.size() != free_.size())
    throw std::invalid_argument("HeightRegion: duplicate free face");
  for (auto& [f, z] : boundary_) {
    if (free_set_.count(f))
      throw std::invalid_argument("HeightRegion: boundary face is free");
    if (!boundary_map_.emplace(f, z).second)
      throw std::invalid_argument("HeightRegion: duplicate boundary face");
  }
}

std::optional<int> HeightRegion::boundary_height(Vec2 f) const {
  auto it = boundary_map_.find(f);
  if (it == boundary_map_.end()) return std::nullopt;
  return it->second;
}

HeightRegion HeightRegion::hexagon(int a, int b, int c) {
  std::vector<Vec2> free;
  std::vector<std::pair<Vec2, int>> bdry;
  for (int i = 0; i < a; ++i)
    for (int j = 0; j < b; ++j) free.push_back({i, j});
  for (int j = -1; j <= b; ++j) {
    bdry.push_back({{-1, j}, c});
    bdry.push_back({{a, j}, 0});
  }
  for (int i = 0; i < a; ++i) {
    bdry.push_back({{i, -1}, c});
    bdry.push_back({{i, b}, 0});
  }
  return HeightRegion(std::move(free), std::move(bdry));
}

FacePatch region_patch(const HeightRegion& r, const RegionTiling& t) {
  FacePatch p;
  for (std::size_t k = 0; k < r.free_faces().size(); ++k)
    p.heights.push_back({r.free_faces()[k], t.heights[k]});
  for (auto& [f, z] : r.boundary()) p.heights.push_back({f, z});
  return p;
}

std::vector<Plaquette> region_plaquettes(const HeightRegion& r,
                                         const RegionTiling& t) {
  auto all = surface_plaquettes(region_patch(r, t));
  std::vector<Plaquette> out;
  auto touches_free = [&](const Plaquette& p) {
    switch (p.orientation) {
      case PlaqOrientation::Horizontal:
        return r.is_free({p.anchor.x, p.anchor.y});
      case PlaqOrientation::VerticalB:
        // wall between (x-1,y) and (x,y)
        return r.is_free({p.anchor.x - 1, p.anchor.y}) ||
               r.is_free({p.anchor.x, p.anchor.y});
      default:
        return r.is_free({p.anchor.x, p.anchor.y - 1}) ||
               r.is_free({p.anchor.x, p.anchor.y});
    }
  };
  for (auto& p : all)
    if (touches_free(p)) out.push_back(p);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<TriFace> region_triangles(const HeightRegion& r) {
  auto ext = extremal_tilings(r);
  if (!ext.consistent)
    throw std::invalid_argument("region_triangles: inconsistent boundary");
  std::vector<TriFace> out;
  for (auto& p : region_plaquettes(r, ext.max)) {
    auto [bl, wh] = project_111_faces(p);
    out.push_back(bl);
    out.push_back(wh);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<HexEdge> region_lozenges(const HeightRegion& r,
                                     const RegionTiling& t) {
  std::vector<HexEdge> out;
  for (auto& p : region_plaquettes(r, t)) out.push_back(project_111(p));
  std::sort(out.begin(), out.end());
  return out;
}

Extremals extremal_tilings(const HeightRegion& r) {
  const auto& free = r.free_faces();
  const int n = static_cast<int>(free.size());
  const int INF = std::numeric_limits<int>::max() / 4;
  std::unordered_map<Vec2, int, Vec2Hash> index;
  for (int k = 0; k < n; ++k) index[free[k]] = k;

  auto relax = [&](bool maximal) {
    std::vector<int> v(n, maximal ? INF : -INF);
    bool changed = true;
    while (changed) {
      changed = false;
      for (int k = 0; k < n; ++k) {
        Vec2 f = free[k];
        // monotone: h(f) <= h(f - e) and h(f) >= h(f + e)
        for (Vec2 d : {Vec2{-1, 0}, Vec2{0, -1}, Vec2{1, 0}, Vec2{0, 1}}) {
          Vec2 g = f + d;
          bool upper = (d.x < 0 || d.y < 0);
          int gv;
          if (auto it = index.find(g); it != index.end())
            gv = v[it->second];
          else if (auto bh = r.boundary_height(g))
            gv = *bh;
          else
            continue;
          if (maximal && upper && v[k] > gv) { v[k] = gv; changed = true; }
          if (!maximal && !upper && v[k] < gv) { v[k] = gv; changed = true; }
        }
      }
    }
    return v;
  };
  Extremals out;
  out.max.heights = relax(true);
  out.min.heights = relax(false);
  // Consistency: both fills finite, monotone against every present neighbor,
  // and max >= min.
  auto valid = [&](const std::vector<int>& v) {
    for (int k = 0; k < n; ++k) {
      if (v[k] >= INF || v[k] <= -INF) return false;
      Vec2 f = free[k];
      for (Vec2 d : {Vec2{1, 0}, Vec2{0, 1}}) {
        auto chk = [&](Vec2 a, Vec2 b) {
          // requires h(a) >= h(b) when both present, a = b - d
          std::optional<int> ha, hb;
          if (auto it = index.find(a); it != index.end()) ha = v[it->second];
          else if (auto bh = r.boundary_height(a)) ha = *bh;
          if (auto it = index.find(b); it != index.end()) hb = v[it->second];
          else if (auto bh = r.boundary_height(b)) hb = *bh;
          return !(ha && hb) || *ha >= *hb;
        };
        if (!chk(f, f + d)) return false;
        if (!chk(f - d, f)) return false;
      }
    }
    return true;
  };
  out.consistent = valid(out.max.heights) && valid(out.min.heights);
  for (int k = 0; k < n && out.consistent; ++k)
    if (out.max.heights[k] < out.min.heights[k]) out.consistent = false;
  return out;
}

RegionEnumeration enumerate_tilings(const HeightRegion& r, std::size_t cap,
                                    std::size_t count_cap) {
  auto ext = extremal_tilings(r);
  RegionEnumeration out;
  if (!ext.consistent) {
    out.consistent = false;
    return out;
  }
  if (region_plaquettes(r, ext.max).size() > cap)
    throw std::runtime_error("enumerate_tilings: region cap exceeded");

  const auto& free = r.free_faces();
  const int n = static_cast<int>(free.size());
  std::unordered_map<Vec2, int, Vec2Hash> index;
  for (int k = 0; k < n; ++k) index[free[k]] = k;
  std::vector<int> v(n, 0);
  // free_ is sorted lexicographically, so (i-1,j) and (i,j-1) precede (i,j).
  std::function<void(int)> rec = [&](int k) {
    if (k == n) {
      out.tilings.push_back({v});
      if (out.tilings.size() > count_cap)
        throw std::runtime_error("enumerate_tilings: count cap exceeded");
      return;
    }
    Vec2 f = free[k];
    int lo = ext.min.heights[k], hi = ext.max.heights[k];
    auto bound = [&](Vec2 g, bool upper) {
      std::optional<int> gv;
      if (auto it = index.find(g); it != index.end()) {
        if (it->second < k) gv = v[it->second];
      } else if (auto bh = r.boundary_height(g))
        gv = *bh;
      if (gv) {
        if (upper) hi = std::min(hi, *gv);
        else lo = std::max(lo, *gv);
      }
    };
    bound(f + Vec2{-1, 0}, true);
    bound(f + Vec2{0, -1}, true);
    bound(f + Vec2{1, 0}, false);
    bound(f + Vec2{0, 1}, false);
    for (int z = lo; z <= hi; ++z) {
      v[k] = z;
      rec(k + 1);
    }
  };
  rec(0);
  std::sort(out.tilings.begin(), out.tilings.end());
  return out;
}

std::vector<std::vector<HexEdge>> enumerate_matchings(
    const std::vector<TriFace>& region, std::size_t count_cap) {
  std::vector<Vec2> whites;
  std::unordered_set<Vec2, Vec2Hash> blacks;
  for (auto& f : region) {
    Vec2 hex = cell_to_hex(f.cell);
    if (f.black) blacks.insert(hex);
    else whites.push_back(hex);
  }
  std::vector<std::vector<HexEdge>> out;
  if (whites.size() != blacks.size()) return out;
  std::sort(whites.begin(), whites.end());
  std::unordered_set<Vec2, Vec2Hash> used;
  std::vector<HexEdge> cur;
  std::function<void(std::size_t)> rec = [&](std::size_t k) {
    if (k == whites.size()) {
      auto m = cur;
      std::sort(m.begin(), m.end());
      out.push_back(std::move(m));
      if (out.size() > count_cap)
        throw std::runtime_error("enumerate_matchings: count cap exceeded");
      return;
    }
    Vec2 w = whites[k];
    for (LozengeType t : {LozengeType::A, LozengeType::B, LozengeType::C}) {
      HexEdge e{w, t};
      Vec2 b = e.black();
      if (!blacks.count(b) || used.count(b)) continue;
      used.insert(b);
      cur.push_back(e);
      rec(k + 1);
      cur.pop_back();
      used.erase(b);
    }
  };
  rec(0);
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<RegionTiling> flip(const HeightRegion& r, const RegionTiling& t,
                                 Vec2 face, int dir) {
  if (dir != 1 && dir != -1) return std::nullopt;
  auto it = std::lower_bound(r.free_faces().begin(), r.free_faces().end(), face);
  if (it == r.free_faces().end() || *it != face) return std::nullopt;
  std::size_t k = static_cast<std::size_t>(it - r.free_faces().begin());
  RegionTiling next = t;
  next.heights[k] += dir;
  int z = next.heights[k];
  auto height_at = [&](Vec2 g) -> std::optional<int> {
    auto jt = std::lower_bound(r.free_faces().begin(), r.free_faces().end(), g);
    if (jt != r.free_faces().end() && *jt == g)
      return next.heights[jt - r.free_faces().begin()];
    return r.boundary_height(g);
  };
  for (Vec2 d : {Vec2{1, 0}, Vec2{0, 1}}) {
    if (auto hv = height_at(face + d); hv && z < *hv) return std::nullopt;
    if (auto hv = height_at(face - d); hv && z > *hv) return std::nullopt;
  }
  return next;
}

double macmahon_box_count(int a, int b, int c) {
  double r = 1.0;
  for (int i = 1; i <= a; ++i)
    for (int j = 1; j <= b; ++j)
      for (int k = 1; k <= c; ++k)
        r *= static_cast<double>(i + j + k - 1) / (i + j + k - 2);
  return r;
}

// --- Level lines ------------------------------------------------------------

Step LatticePath::step(std::size_t i) const {
  Vec2 d = pts[(i + 1) % pts.size()] - pts[i];
  if (d == Vec2{-1, 0}) return Step::NE;
  if (d == Vec2{0, 1}) return Step::SE;
  if (d == Vec2{1, 0}) return Step::SW;
  return Step::NW;
}

namespace {

// Oriented boundary edge of the level set, keyed by its source corner.
struct OrientedEdge {
  Vec2 from, to;
  friend bool operator==(const OrientedEdge&, const OrientedEdge&) = default;
  friend auto operator<=>(const OrientedEdge&, const OrientedEdge&) = default;
};

}  // namespace

LevelDecomposition level_lines(
    const std::unordered_map<Vec2, int, Vec2Hash>& heights, int k) {
  auto in = [&](Vec2 f) -> int {
    auto it = heights.find(f);
    if (it == heights.end()) return -1;  // absent
    return it->second >= k ? 1 : 0;
  };
  // Oriented edges with A_k = {h >= k} on the North (left) side.
  std::vector<OrientedEdge> edges;
  for (auto& [f, z] : heights) {
    (void)z;
    // edge between f and f+e2 (corner edge (i,j+1)-(i+1,j+1)):
    //   f in A, f+e2 not: NE step (i+1,j+1) -> (i,j+1)
    //   f not, f+e2 in A: SW step (i,j+1) -> (i+1,j+1)
    Vec2 g = f + Vec2{0, 1};
    if (in(f) >= 0 && in(g) >= 0 && in(f) != in(g)) {
      Vec2 a{f.x, f.y + 1}, b{f.x + 1, f.y + 1};
      if (in(f) == 1) edges.push_back({b, a});
      else edges.push_back({a, b});
    }
    // edge between f and f+e1 (corner edge (i+1,j)-(i+1,j+1)):
    //   f in A, f+e1 not: SE step (i+1,j) -> (i+1,j+1)
    //   f not, f+e1 in A: NW step (i+1,j+1) -> (i+1,j)
    g = f + Vec2{1, 0};
    if (in(f) >= 0 && in(g) >= 0 && in(f) != in(g)) {
      Vec2 a{f.x + 1, f.y}, b{f.x + 1, f.y + 1};
      if (in(f) == 1) edges.push_back({a, b});
      else edges.push_back({b, a});
    }
  }
  std::map<Vec2, std::vector<OrientedEdge>> by_source;
  for (auto& e : edges) by_source[e.from].push_back(e);

  // Successor with the NE splitting rule at saddles: the continuation keeps
  // the same A_k face on the left where two choices exist; concretely, after
  // an SE step entering a saddle pick NE (hug the North face), after a NW
  // step pick SW, after a NE step pick SE, and after a SW step pick NW.
  auto pick = [&](const OrientedEdge& cur) -> std::optional<OrientedEdge> {
    auto it = by_source.find(cur.to);
    if (it == by_source.end() || it->second.empty()) return std::nullopt;
    auto& cands = it->second;
    if (cands.size() == 1) return cands[0];
    Vec2 d = cur.to - cur.from;
    Vec2 want;
    if (d == Vec2{0, 1}) want = {-1, 0};       // SE -> NE
    else if (d == Vec2{0, -1}) want = {1, 0};  // NW -> SW
    else if (d == Vec2{-1, 0}) want = {0, 1};  // NE -> SE
    else want = {0, -1};                       // SW -> NW
    for (auto& c : cands)
      if (c.to - c.from == want) return c;
    return cands[0];
  };

  std::set<std::pair<Vec2, Vec2>> unused;
  for (auto& e : edges) unused.insert({e.from, e.to});
  auto take = [&](const OrientedEdge& e) {
    unused.erase({e.from, e.to});
    auto& v = by_source[e.from];
    v.erase(std::find_if(v.begin(), v.end(),
                         [&](const OrientedEdge& x) { return x == e; }));
  };

  LevelDecomposition out;
  // Open lines first: start from edges whose source has no incoming edge
  // among the unused ones.
  auto trace = [&](OrientedEdge start) {
    LatticePath path;
    path.pts.push_back(start.from);
    OrientedEdge cur = start;
    while (true) {
      take(cur);
      path.pts.push_back(cur.to);
      if (cur.to == path.pts.front()) {
        path.closed = true;
        path.pts.pop_back();
        break;
      }
      auto nxt = pick(cur);
      if (!nxt || !unused.count({nxt->from, nxt->to})) break;
      cur = *nxt;
    }
    return path;
  };

  while (!unused.empty()) {
    // count incoming unused edges per corner
    std::map<Vec2, int> indeg;
    for (auto& [a, b] : unused) indeg[b]++;
    std::optional<OrientedEdge> start;
    for (auto& [a, b] : unused)
      if (indeg.find(a) == indeg.end()) {
        start = OrientedEdge{a, b};
        break;
      }
    if (start) {
      out.lines.push_back(trace(*start));
    } else {
      auto [a, b] = *unused.begin();
      out.loops.push_back(trace({a, b}));
    }
  }
  return out;
}

std::unordered_map<Vec2, int, Vec2Hash> heights_from_levels(
    const std::vector<Vec2>& window,
    const std::vector<std::pair<int, LevelDecomposition>>& levels, int base) {
  std::unordered_set<Vec2, Vec2Hash> faces(window.begin(), window.end());
  std::unordered_map<Vec2, int, Vec2Hash> h;
  for (auto& f : window) h[f] = base;
  for (auto& [k, dec] : levels) {
    (void)k;
    // Mark the faces adjacent to each path edge: North side is in A_k.
    std::unordered_map<Vec2, int, Vec2Hash> side;  // 1 in A_k, 0 not
    std::set<std::pair<Vec2, Vec2>> cut;           // separating face pairs
    auto handle = [&](const LatticePath& p) {
      std::size_t nsteps = p.length();
      for (std::size_t i = 0; i < nsteps; ++i) {
        Vec2 a = p.pts[i], b = p.pts[(i + 1) % p.pts.size()];
        Vec2 d = b - a;
        Vec2 north, south;
        if (d == Vec2{-1, 0}) { north = {a.x - 1, a.y - 1}; south = {a.x - 1, a.y}; }
        else if (d == Vec2{1, 0}) { north = {a.x, a.y - 1}; south = {a.x, a.y}; }
        else if (d == Vec2{0, 1}) { north = {a.x - 1, a.y}; south = {a.x, a.y}; }
        else { north = {a.x - 1, a.y - 1}; south = {a.x, a.y - 1}; }
        side[north] = 1;
        side[south] = 0;
        Vec2 lo = std::min(north, south), hi = std::max(north, south);
        cut.insert({lo, hi});
      }
    };
    for (auto& p : dec.lines) handle(p);
    for (auto& p : dec.loops) handle(p);
    // Flood fill the rest across non-separating adjacencies.
    std::queue<Vec2> q;
    for (auto& [f, s] : side)
      if (faces.count(f)) q.push(f);
    while (!q.empty()) {
      Vec2 f = q.front();
      q.pop();
      for (Vec2 d : {Vec2{1, 0}, Vec2{-1, 0}, Vec2{0, 1}, Vec2{0, -1}}) {
        Vec2 g = f + d;
        if (!faces.count(g) || side.count(g)) continue;
        Vec2 lo = std::min(f, g), hi = std::max(f, g);
        if (cut.count({lo, hi})) continue;
        side[g] = side[f];
        q.push(g);
      }
    }
    for (auto& f : window)
      if (side.count(f) && side[f] == 1) h[f] += 1;
  }
  return h;
}

}  // namespace sosdimer
