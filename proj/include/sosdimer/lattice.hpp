#ifndef SOSDIMER_LATTICE_HPP
#define SOSDIMER_LATTICE_HPP

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace sosdimer {

// Small integer vectors. Heights live in Eigen arrays; lattice coordinates
// are used as hash keys, so they are plain structs.
struct Vec2 {
  int x = 0, y = 0;
  friend bool operator==(const Vec2&, const Vec2&) = default;
  friend auto operator<=>(const Vec2&, const Vec2&) = default;
  Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
};

struct Vec3 {
  int x = 0, y = 0, z = 0;
  friend bool operator==(const Vec3&, const Vec3&) = default;
  friend auto operator<=>(const Vec3&, const Vec3&) = default;
  Vec3 operator+(Vec3 o) const { return {x + o.x, y + o.y, z + o.z}; }
  Vec3 operator-(Vec3 o) const { return {x - o.x, y - o.y, z - o.z}; }
};

inline std::size_t hash_combine(std::size_t h, std::size_t v) {
  return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

struct Vec2Hash {
  std::size_t operator()(const Vec2& v) const {
    return hash_combine(std::hash<int>{}(v.x), std::hash<int>{}(v.y));
  }
};
struct Vec3Hash {
  std::size_t operator()(const Vec3& v) const {
    std::size_t h = hash_combine(std::hash<int>{}(v.x), std::hash<int>{}(v.y));
    return hash_combine(h, std::hash<int>{}(v.z));
  }
};

// N x N torus of P001 faces with slope (theta1, theta2). The floors
// d_i = floor(theta_i * N) are the height drops per period; they are computed
// once here and all modular arithmetic goes through this class.
class TorusGeometry {
 public:
  TorusGeometry(int N, double theta1, double theta2);

  int N() const { return n_; }
  double theta1() const { return theta1_; }
  double theta2() const { return theta2_; }
  int drop1() const { return d1_; }
  int drop2() const { return d2_; }
  bool degenerate_slope() const { return d1_ == 0 || d2_ == 0; }
  int num_faces() const { return n_ * n_; }

  // Reduces a face coordinate into [0,N)^2 and accumulates the height offset
  // implied by eq-style periodic boundary conditions: the returned offset is
  // what must be added to the field value at the reduced face to obtain the
  // value at the original coordinate.
  struct Wrapped {
    Vec2 face;
    int height_offset;
  };
  Wrapped wrap(Vec2 face) const;

  int face_index(Vec2 face) const;  // face must be in [0,N)^2
  Vec2 face_at(int index) const;

 private:
  int n_;
  double theta1_, theta2_;
  int d1_, d2_;
};

// A plaquette of Z^3. Horizontal faces have opposing corners
// (x,y,z) and (x+1,y+1,z). VerticalB faces (type-b lozenges, walls between
// columns differing in x1) have corners (x,y,z) and (x,y+1,z+1); VerticalC
// faces (type-c lozenges, x2-direction walls) have corners (x,y,z) and
// (x+1,y,z+1).
enum class PlaqOrientation : std::uint8_t { Horizontal, VerticalB, VerticalC };

enum class LozengeType : std::uint8_t { A, B, C };

struct Plaquette {
  PlaqOrientation orientation = PlaqOrientation::Horizontal;
  Vec3 anchor;

  friend bool operator==(const Plaquette&, const Plaquette&) = default;
  friend auto operator<=>(const Plaquette&, const Plaquette&) = default;

  std::array<Vec3, 4> corners() const;
  // The four lattice edges of the plaquette as sorted vertex pairs.
  std::array<std::pair<Vec3, Vec3>, 4> edges() const;
};

struct PlaquetteHash {
  std::size_t operator()(const Plaquette& p) const {
    std::size_t h = Vec3Hash{}(p.anchor);
    return hash_combine(h, static_cast<std::size_t>(p.orientation));
  }
};

// Triangular-lattice cells. The plane x1+x2+x3=0 is parameterized by the
// oblique coordinates (a,b) = (x-z, y-z) of projected Z^3 vertices. The two
// triangles of the unit cell based at v are
//   T_B(v) = {v, v+e1, v+e1+e2},   T_W(v) = {v, v+e2, v+e1+e2}.
struct TriFace {
  Vec2 cell;
  bool black = true;  // true: T_B, false: T_W
  friend bool operator==(const TriFace&, const TriFace&) = default;
  friend auto operator<=>(const TriFace&, const TriFace&) = default;
};

struct TriFaceHash {
  std::size_t operator()(const TriFace& f) const {
    return hash_combine(Vec2Hash{}(f.cell), f.black ? 1u : 2u);
  }
};

// Hexagonal-lattice vertices carry their own coordinates: the white vertex n
// and black vertex n are the two triangles of the type-a lozenge at n, and the
// black neighbors of white n are at n (type a), n+(1,0) (type b) and
// n+(0,1) (type c). The cell map between the two systems is A(n) = (-n2, n1).
inline Vec2 hex_to_cell(Vec2 n) { return {-n.y, n.x}; }
inline Vec2 cell_to_hex(Vec2 ab) { return {ab.y, -ab.x}; }

inline TriFace black_triangle(Vec2 n) { return {hex_to_cell(n), true}; }
inline TriFace white_triangle(Vec2 n) { return {hex_to_cell(n), false}; }

struct HexEdge {
  Vec2 white;
  LozengeType type = LozengeType::A;
  friend bool operator==(const HexEdge&, const HexEdge&) = default;
  friend auto operator<=>(const HexEdge&, const HexEdge&) = default;
  Vec2 black() const {
    switch (type) {
      case LozengeType::A: return white;
      case LozengeType::B: return white + Vec2{1, 0};
      default: return white + Vec2{0, 1};
    }
  }
};

struct HexEdgeHash {
  std::size_t operator()(const HexEdge& e) const {
    return hash_combine(Vec2Hash{}(e.white), static_cast<std::size_t>(e.type));
  }
};

// Orthogonal projection onto the x1+x2+x3=0 plane: each plaquette covers one
// black and one white triangle, and the lozenge type equals the plaquette
// orientation.
HexEdge project_111(const Plaquette& p);
inline std::pair<TriFace, TriFace> project_111_faces(const Plaquette& p) {
  HexEdge e = project_111(p);
  return {black_triangle(e.black()), white_triangle(e.white)};
}

inline LozengeType lozenge_type(PlaqOrientation o) {
  switch (o) {
    case PlaqOrientation::Horizontal: return LozengeType::A;
    case PlaqOrientation::VerticalB: return LozengeType::B;
    default: return LozengeType::C;
  }
}

// Triangular torus induced by a slope-(d1,d2) SOS torus: cells modulo the
// lattice spanned by (N+d1, d1) and (d2, N+d2). Canonical representatives are
// used for partition/disjointness checks.
class TriTorus {
 public:
  explicit TriTorus(const TorusGeometry& g);
  long long num_cells() const { return det_; }
  Vec2 canonical(Vec2 cell) const;
  TriFace canonical(TriFace f) const { return {canonical(f.cell), f.black}; }

 private:
  Vec2 v1_, v2_;
  long long det_;
};

// --- Height conventions -------------------------------------------------

enum class HeightConvention { P001, P111 };

// Plaquette set of a finite SOS surface given by P001 heights on a window of
// faces; walls are produced toward +e1/+e2 neighbors present in the window.
// Heights at faces absent from `heights` contribute nothing.
struct FacePatch {
  // (face, height) pairs; faces must be distinct.
  std::vector<std::pair<Vec2, int>> heights;
};

std::vector<Plaquette> surface_plaquettes(const FacePatch& patch);

// P001 heights of a surface given as plaquettes: the height of the unique
// horizontal plaquette of each column, shifted so the root face sits at 0.
// Throws if some column has no horizontal face or several.
std::vector<std::pair<Vec2, int>> heights_p001(
    const std::vector<Plaquette>& surface, Vec2 root);

// P111 heights on projected vertices: for each vertex v of T in the image of
// the surface's corner set, the third coordinate of the unique surface corner
// projecting to v. Throws (reports overhangs/spikes) when not unique.
// The root shift makes (0,0,0) a corner of the surface before reading
// heights, i.e. the returned map satisfies the tiling-convention pinning.
std::vector<std::pair<Vec2, int>> heights_p111(
    const std::vector<Plaquette>& surface);

// Diagonal staircase relation between the two conventions: given a monotone
// nonincreasing sequence p001[j] (faces along the main diagonal, a wall to the
// left of index 0, flat floor at `right_floor` past the last index), the
// tiling-convention height at o + k*e_up is
//   p111(k) = min{ l : p001(l - k) <= l }.
// Returns the profile for k = k_hi down to k_lo.
std::vector<int> p111_diagonal_profile(const std::vector<int>& p001, int k_lo,
                                       int k_hi, int right_floor = 0);

}  // namespace sosdimer

#endif
