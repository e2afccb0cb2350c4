#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "betti/complex.hpp"
#include "betti/geometry.hpp"
#include "betti/point_set.hpp"

namespace betti {

/// Delaunay triangulation of a finite point set in the plane or in space.
///
/// Cells containing the vertex at infinity (kInfinity) close the convex hull:
/// a ghost cell is oriented as if the infinite vertex were a point far beyond
/// its hull facet. neighbors[i] is the cell across the facet opposite
/// vertices[i].
template <int D>
class Triangulation {
 public:
  struct Cell {
    std::array<std::int32_t, D + 1> vertices;
    std::array<std::int32_t, D + 1> neighbors;
  };

  /// Builds the triangulation. `keys` give the symbolic-perturbation priority
  /// of each point (distinct; smaller = perturbed more). The insertion order
  /// is a biased randomized order drawn from `seed`; the result does not
  /// depend on it.
  Triangulation(std::vector<Vec<D>> points, std::vector<std::uint64_t> keys,
                std::uint64_t seed);

  const std::vector<Vec<D>>& points() const { return points_; }
  const std::vector<Cell>& cells() const { return cells_; }
  bool alive(std::size_t c) const { return alive_[c] != 0; }
  bool is_ghost(std::size_t c) const {
    for (const auto v : cells_[c].vertices)
      if (v == kInfinity) return true;
    return false;
  }
  std::size_t num_finite_cells() const;

  /// Index in cells_[n].neighbors that points back to c.
  int mirror_index(std::int32_t c, std::int32_t n) const;

 private:
  std::int32_t new_cell(const Cell& cell);
  void kill_cell(std::int32_t c);
  void init_simplex(const std::array<std::int32_t, D + 1>& vs);
  void insert(std::int32_t q);
  std::int32_t locate(std::int32_t q);
  bool in_conflict(std::int32_t c, std::int32_t q) const;
  int orient_with(const Cell& cell, int i, std::int32_t q) const;

  std::vector<Vec<D>> points_;
  std::vector<std::uint64_t> keys_;
  std::vector<Cell> cells_;
  std::vector<std::uint8_t> alive_;
  std::vector<std::int32_t> free_;
  std::vector<std::uint32_t> stamp_;
  std::uint32_t generation_ = 0;
  std::int32_t last_ = 0;
  std::uint64_t walk_state_ = 0x9e3779b97f4a7c15ULL;

  // Scratch buffers reused across insertions.
  std::vector<std::int32_t> cavity_;
  std::vector<std::pair<std::int32_t, int>> boundary_;
  std::vector<std::int32_t> created_;
};

/// Delaunay complex of a point set (d = 2 or 3). The result is a plain
/// complex with hull markers on its (d-1)-simplices; vertex labels are the
/// point set's labels. Throws GeometryError("degenerate input") when all
/// points lie on a common hyperplane.
SimplicialComplex build_delaunay(const PointSet& points, std::uint64_t seed = 0);

/// Deterministic Fisher-Yates shuffle driven by a 64-bit seed.
void seeded_shuffle(std::vector<std::int32_t>& v, std::uint64_t seed);

}  // namespace betti
