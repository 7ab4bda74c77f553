#include "sosdimer/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_map>
#include <unordered_set>

namespace sosdimer {

TorusGeometry::TorusGeometry(int N, double theta1, double theta2)
    : n_(N), theta1_(theta1), theta2_(theta2) {
  if (N < 2) throw std::invalid_argument("TorusGeometry: N must be >= 2");
  if (theta1 < 0 || theta2 < 0)
    throw std::invalid_argument("TorusGeometry: slope must be nonnegative");
  d1_ = static_cast<int>(std::floor(theta1 * N));
  d2_ = static_cast<int>(std::floor(theta2 * N));
}

TorusGeometry::Wrapped TorusGeometry::wrap(Vec2 face) const {
  auto div_floor = [](int a, int b) {
    int q = a / b, r = a % b;
    if (r != 0 && ((r < 0) != (b < 0))) --q;
    return q;
  };
  int k1 = div_floor(face.x, n_);
  int k2 = div_floor(face.y, n_);
  // h(x + k1*N, y + k2*N) = h(x,y) - k1*d1 - k2*d2, so the value at the
  // original coordinate is the reduced value minus the drops.
  return {{face.x - k1 * n_, face.y - k2 * n_}, -k1 * d1_ - k2 * d2_};
}

int TorusGeometry::face_index(Vec2 face) const { return face.x * n_ + face.y; }

Vec2 TorusGeometry::face_at(int index) const {
  return {index / n_, index % n_};
}

std::array<Vec3, 4> Plaquette::corners() const {
  const Vec3 v = anchor;
  switch (orientation) {
    case PlaqOrientation::Horizontal:
      return {v, v + Vec3{1, 0, 0}, v + Vec3{0, 1, 0}, v + Vec3{1, 1, 0}};
    case PlaqOrientation::VerticalB:
      return {v, v + Vec3{0, 1, 0}, v + Vec3{0, 0, 1}, v + Vec3{0, 1, 1}};
    default:
      return {v, v + Vec3{1, 0, 0}, v + Vec3{0, 0, 1}, v + Vec3{1, 0, 1}};
  }
}

std::array<std::pair<Vec3, Vec3>, 4> Plaquette::edges() const {
  auto c = corners();
  auto mk = [](Vec3 a, Vec3 b) {
    return a < b ? std::make_pair(a, b) : std::make_pair(b, a);
  };
  // corners() lists {v, v+u, v+w, v+u+w}; the edges are the four sides.
  return {mk(c[0], c[1]), mk(c[0], c[2]), mk(c[1], c[3]), mk(c[2], c[3])};
}

HexEdge project_111(const Plaquette& p) {
  const int a = p.anchor.x - p.anchor.z;
  const int b = p.anchor.y - p.anchor.z;
  switch (p.orientation) {
    case PlaqOrientation::Horizontal:
      // covers T_B(a,b) and T_W(a,b)
      return {cell_to_hex({a, b}), LozengeType::A};
    case PlaqOrientation::VerticalB:
      // covers T_B(a-1,b) and T_W(a-1,b-1)
      return {cell_to_hex({a - 1, b - 1}), LozengeType::B};
    default:
      // covers T_B(a-1,b-1) and T_W(a,b-1)
      return {cell_to_hex({a, b - 1}), LozengeType::C};
  }
}

TriTorus::TriTorus(const TorusGeometry& g) {
  v1_ = {g.N() + g.drop1(), g.drop1()};
  v2_ = {g.drop2(), g.N() + g.drop2()};
  det_ = static_cast<long long>(v1_.x) * v2_.y -
         static_cast<long long>(v1_.y) * v2_.x;
}

Vec2 TriTorus::canonical(Vec2 cell) const {
  // Solve cell = c1*v1 + c2*v2 over the rationals and reduce by the floors.
  double c1 = (static_cast<double>(cell.x) * v2_.y -
               static_cast<double>(cell.y) * v2_.x) /
              static_cast<double>(det_);
  double c2 = (static_cast<double>(v1_.x) * cell.y -
               static_cast<double>(v1_.y) * cell.x) /
              static_cast<double>(det_);
  int k1 = static_cast<int>(std::floor(c1 + 1e-12));
  int k2 = static_cast<int>(std::floor(c2 + 1e-12));
  Vec2 r{cell.x - k1 * v1_.x - k2 * v2_.x, cell.y - k1 * v1_.y - k2 * v2_.y};
  // Guard against boundary rounding.
  for (int round = 0; round < 2; ++round) {
    double d1 = (static_cast<double>(r.x) * v2_.y -
                 static_cast<double>(r.y) * v2_.x) /
                static_cast<double>(det_);
    double d2 = (static_cast<double>(v1_.x) * r.y -
                 static_cast<double>(v1_.y) * r.x) /
                static_cast<double>(det_);
    if (d1 >= 1.0) r = r - v1_;
    if (d1 < 0.0) r = r + v1_;
    if (d2 >= 1.0) r = r - v2_;
    if (d2 < 0.0) r = r + v2_;
  }
  return r;
}

std::vector<Plaquette> surface_plaquettes(const FacePatch& patch) {
  std::unordered_map<Vec2, int, Vec2Hash> h;
  h.reserve(patch.heights.size());
  for (auto& [f, z] : patch.heights) {
    if (!h.emplace(f, z).second)
      throw std::invalid_argument("surface_plaquettes: duplicate face");
  }
  std::vector<Plaquette> out;
  out.reserve(patch.heights.size() * 2);
  for (auto& [f, z] : patch.heights) {
    out.push_back({PlaqOrientation::Horizontal, {f.x, f.y, z}});
    auto wall = [&](Vec2 nbr, PlaqOrientation orient, Vec3 base) {
      auto it = h.find(nbr);
      if (it == h.end()) return;
      int lo = std::min(z, it->second), hi = std::max(z, it->second);
      for (int w = lo; w < hi; ++w)
        out.push_back({orient, {base.x, base.y, w}});
    };
    // wall toward +e1 spans e2,e3 (VerticalB); toward +e2 spans e1,e3.
    wall(f + Vec2{1, 0}, PlaqOrientation::VerticalB, {f.x + 1, f.y, 0});
    wall(f + Vec2{0, 1}, PlaqOrientation::VerticalC, {f.x, f.y + 1, 0});
  }
  return out;
}

std::vector<std::pair<Vec2, int>> heights_p001(
    const std::vector<Plaquette>& surface, Vec2 root) {
  std::unordered_map<Vec2, std::vector<int>, Vec2Hash> cols;
  for (auto& p : surface)
    if (p.orientation == PlaqOrientation::Horizontal)
      cols[{p.anchor.x, p.anchor.y}].push_back(p.anchor.z);
  auto it = cols.find(root);
  if (it == cols.end() || it->second.size() != 1)
    throw std::invalid_argument("heights_p001: root face not uniquely covered");
  int shift = it->second.front();
  std::vector<std::pair<Vec2, int>> out;
  out.reserve(cols.size());
  for (auto& [f, zs] : cols) {
    if (zs.size() != 1)
      throw std::invalid_argument("heights_p001: column covered twice");
    out.push_back({f, zs.front() - shift});
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::pair<Vec2, int>> heights_p111(
    const std::vector<Plaquette>& surface) {
  // Collect corners, shift so that (0,0,0) is a corner, then project.
  std::unordered_set<Vec3, Vec3Hash> corners;
  for (auto& p : surface)
    for (auto& c : p.corners()) corners.insert(c);
  if (corners.empty()) return {};
  // Pin: translate vertically so some corner on the line x=y=z' ... the
  // tiling-convention pinning asks for (0,0,0) itself to be a corner. Find
  // the corner with cell (0,0) and shift by its height.
  std::optional<int> pin;
  for (auto& c : corners)
    if (c.x - c.z == 0 && c.y - c.z == 0) {
      if (!pin || c.z < *pin) pin = c.z;
    }
  if (!pin)
    throw std::invalid_argument("heights_p111: no corner projects onto origin");
  std::unordered_map<Vec2, std::vector<int>, Vec2Hash> proj;
  for (auto& c : corners)
    proj[{c.x - c.z, c.y - c.z}].push_back(c.z - *pin);
  std::vector<std::pair<Vec2, int>> out;
  out.reserve(proj.size());
  for (auto& [v, zs] : proj) {
    if (zs.size() != 1)
      throw std::invalid_argument(
          "heights_p111: overhang (spike) under the 111 projection");
    out.push_back({v, zs.front()});
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<int> p111_diagonal_profile(const std::vector<int>& p001, int k_lo,
                                       int k_hi, int right_floor) {
  const int m = static_cast<int>(p001.size());
  if (m == 0) throw std::invalid_argument("p111_diagonal_profile: empty");
  for (int j = 0; j + 1 < m; ++j)
    if (p001[j] < p001[j + 1])
      throw std::invalid_argument("p111_diagonal_profile: not monotone");
  auto value = [&](int j) {
    if (j < 0) return std::numeric_limits<int>::max();  // wall on the left
    if (j >= m) return right_floor;
    return p001[j];
  };
  int lowest = std::min(right_floor, p001.back());
  std::vector<int> out;
  out.reserve(k_hi - k_lo + 1);
  for (int k = k_hi; k >= k_lo; --k) {
    // value(l-k) is nonincreasing in l, so the condition is monotone in l.
    int l = std::min(lowest, std::min(0, k)) - 1;
    while (value(l - k) > l) ++l;
    out.push_back(l);
  }
  return out;
}

}  // namespace sosdimer
