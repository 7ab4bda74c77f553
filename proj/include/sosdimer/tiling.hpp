#ifndef SOSDIMER_TILING_HPP
#define SOSDIMER_TILING_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "sosdimer/lattice.hpp"

namespace sosdimer {

using HeightGrid = Eigen::Array<int, Eigen::Dynamic, Eigen::Dynamic>;

struct LozengeCounts {
  long long a = 0, b = 0, c = 0;
  long long total() const { return a + b + c; }
  friend bool operator==(const LozengeCounts&, const LozengeCounts&) = default;
};

// --- Torus tilings --------------------------------------------------------

// A tiling of the slope-(d1,d2) torus: a monotone height field rooted at
// h(0,0) = 0 whose gradients are in {-1,0} toward +e1/+e2 (wrap edges
// slope-adjusted). Every column carries exactly one horizontal face, so the
// lozenge counts are (N^2, N*d1, N*d2).
class TorusTiling {
 public:
  TorusTiling(TorusGeometry geom, HeightGrid heights);

  const TorusGeometry& geometry() const { return geom_; }
  const HeightGrid& heights() const { return h_; }
  int height(Vec2 face) const;  // arbitrary coordinates, wrap-adjusted

  LozengeCounts counts() const;
  std::vector<Plaquette> plaquettes() const;  // canonical fundamental domain

  // Rotates the hexagon of lozenges at `face` when possible: the height at
  // one column changes by +1 or -1 (dir). Result is re-rooted. Returns
  // nullopt when the flip is not legal.
  std::optional<TorusTiling> flip(Vec2 face, int dir) const;

  friend bool operator==(const TorusTiling& s, const TorusTiling& t) {
    return (s.h_ == t.h_).all();
  }

  static bool is_valid_heights(const TorusGeometry& g, const HeightGrid& h);

 private:
  TorusGeometry geom_;
  HeightGrid h_;
};

struct TorusTilingHash {
  std::size_t operator()(const TorusTiling& t) const {
    std::size_t h = 0;
    const auto& a = t.heights();
    for (int i = 0; i < a.rows(); ++i)
      for (int j = 0; j < a.cols(); ++j)
        h = hash_combine(h, std::hash<int>{}(a(i, j)));
    return h;
  }
};

// All rooted tilings of the slope sector, canonical (lexicographic height)
// order. Throws when the count would exceed `cap`.
std::vector<TorusTiling> enumerate_torus_tilings(const TorusGeometry& g,
                                                 std::size_t cap = 2'000'000);

// --- Finite height regions -------------------------------------------------

// A finite tiling problem in the P001 picture: a window of faces, a free
// subset, and boundary heights on the remaining faces. Monotone fills of the
// free set with the given boundary correspond to the lozenge tilings of a
// fixed region of the triangular lattice.
class HeightRegion {
 public:
  // boundary: heights on the non-free faces (must surround the free set so
  // that every free face has a <=-comparable boundary face in each cone).
  HeightRegion(std::vector<Vec2> free_faces,
               std::vector<std::pair<Vec2, int>> boundary);

  const std::vector<Vec2>& free_faces() const { return free_; }
  const std::vector<std::pair<Vec2, int>>& boundary() const {
    return boundary_;
  }
  bool is_free(Vec2 f) const { return free_set_.count(f) > 0; }
  std::optional<int> boundary_height(Vec2 f) const;

  // a x b window with boundary forcing heights in [0,c]: tilings are the
  // plane partitions in an a x b x c box, i.e. the lozenge tilings of the
  // hexagon with side lengths a,b,c.
  static HeightRegion hexagon(int a, int b, int c);

 private:
  std::vector<Vec2> free_;
  std::unordered_set<Vec2, Vec2Hash> free_set_;
  std::vector<std::pair<Vec2, int>> boundary_;
  std::unordered_map<Vec2, int, Vec2Hash> boundary_map_;
};

// A monotone fill of a HeightRegion.
struct RegionTiling {
  std::vector<int> heights;  // indexed like region.free_faces()
  friend bool operator==(const RegionTiling&, const RegionTiling&) = default;
  friend auto operator<=>(const RegionTiling&, const RegionTiling&) = default;
};

// The full height map (free faces + boundary) of a fill.
FacePatch region_patch(const HeightRegion& r, const RegionTiling& t);
// Plaquettes of the fill that are not frozen by the boundary: horizontal
// faces over free columns plus walls on edges touching a free face.
std::vector<Plaquette> region_plaquettes(const HeightRegion& r,
                                         const RegionTiling& t);
// The triangles of T tiled by the non-frozen plaquettes; independent of the
// fill, this is the region of the triangular lattice the problem tiles.
std::vector<TriFace> region_triangles(const HeightRegion& r);

struct RegionEnumeration {
  std::vector<RegionTiling> tilings;  // canonical lexicographic order
  bool consistent = true;             // false: boundary admits no tiling
};

// Exhaustive oracle: all monotone fills, by column DFS with monotonicity
// pruning. Throws when the region exceeds `cap` lozenges.
RegionEnumeration enumerate_tilings(const HeightRegion& r,
                                    std::size_t cap = 60,
                                    std::size_t count_cap = 5'000'000);

// Independent oracle: perfect matchings of the bipartite triangle-adjacency
// graph of a set of triangles. Returns matchings as sorted HexEdge lists.
std::vector<std::vector<HexEdge>> enumerate_matchings(
    const std::vector<TriFace>& region, std::size_t count_cap = 5'000'000);

// Lozenges of a fill (its non-frozen plaquettes projected to T).
std::vector<HexEdge> region_lozenges(const HeightRegion& r,
                                     const RegionTiling& t);

// Extremal tilings by monotone closure (no enumeration).
struct Extremals {
  RegionTiling max, min;
  bool consistent = true;
};
Extremals extremal_tilings(const HeightRegion& r);

// Hexagon flip on a fill: rotate around the interior face when legal.
std::optional<RegionTiling> flip(const HeightRegion& r, const RegionTiling& t,
                                 Vec2 face, int dir);

// Number of boxed plane partitions (MacMahon), as a double.
double macmahon_box_count(int a, int b, int c);

// --- Level lines -----------------------------------------------------------

// Lattice directions in the rotated frame used by the level-line machinery:
// a +e1 step of Z^2 is SW, +e2 is SE, -e1 is NE, -e2 is NW.
enum class Step : std::uint8_t { NE, SE, SW, NW };
inline Vec2 step_vec(Step s) {
  switch (s) {
    case Step::NE: return {-1, 0};
    case Step::SE: return {0, 1};
    case Step::SW: return {1, 0};
    default: return {0, -1};
  }
}
inline bool monotone_step(Step s) { return s == Step::NE || s == Step::SE; }

// An oriented path of dual-lattice corners.
struct LatticePath {
  std::vector<Vec2> pts;  // consecutive points differ by a unit step
  bool closed = false;    // loop: last step returns to pts.front()
  std::size_t length() const {
    return pts.empty() ? 0 : pts.size() - 1 + (closed ? 1 : 0);
  }
  Step step(std::size_t i) const;
};

// Level-k set of a height function given on a window of faces (heights
// outside the map are treated as "absent": boundary edges of the window are
// not part of the level set). Decomposes {h >= k | h < k} boundary edges into
// open lines (boundary to boundary) and loops via the NE splitting rule,
// oriented with {h >= k} on the North (left) side going W to E.
struct LevelDecomposition {
  std::vector<LatticePath> lines;
  std::vector<LatticePath> loops;
};
LevelDecomposition level_lines(
    const std::unordered_map<Vec2, int, Vec2Hash>& heights, int k);

// Reconstruction: heights from the level decompositions for every level in
// (base, top]. The window must be edge-connected. Property-check helper.
std::unordered_map<Vec2, int, Vec2Hash> heights_from_levels(
    const std::vector<Vec2>& window,
    const std::vector<std::pair<int, LevelDecomposition>>& levels, int base);

}  // namespace sosdimer

#endif
