#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "betti/complex.hpp"
#include "betti/point_set.hpp"

namespace betti {

/// The canonical periodic complex failed a label or manifold-count check.
/// count() is the offending count (or the index at which the check failed).
class PeriodicIntegrityError : public std::runtime_error {
 public:
  PeriodicIntegrityError(const std::string& detail, std::size_t count)
      : std::runtime_error("periodic integrity failure: " + detail + " (count " +
                           std::to_string(count) + ")"),
        count_(count) {}
  std::size_t count() const { return count_; }

 private:
  std::size_t count_;
};

enum class Translation {
  kHalf,  // one copy per combination of axes, shifted toward the far half: 2^d N points
  kFull,  // every shift in {-1,0,1}^d: 3^d N points
};

/// Original points plus translated copies. Copies share the original's label;
/// offsets[i] is the integer shift that produced point i.
struct TranslatedPoints {
  PointSet points;
  std::vector<std::array<std::int8_t, 3>> offsets;
  Translation mode = Translation::kHalf;
};

/// Rounds a coordinate in [0,1) down to the 2^-52 grid, where shifts by
/// +-1 are exact.
double snap_to_grid(double x);

/// Makes the translated copies. Coordinates must lie in [0,1); they are
/// snapped to the 2^-52 grid first. Throws std::invalid_argument("empty point
/// set") for N = 0.
TranslatedPoints translate_points(const PointSet& points, Translation mode = Translation::kHalf);

/// Triangulates the translated points and keeps one representative per
/// translation orbit (the simplex whose vertex centroid lies in [0,1)^d).
/// Runs the integrity checks and records the largest canonical top-cell
/// circumradius; does not judge whether that radius is small enough.
SimplicialComplex canonicalize(const TranslatedPoints& translated, std::uint64_t seed = 0);

/// Periodic Delaunay complex of points on the flat unit torus. Uses the
/// half-cube copies when every canonical circumradius is below 1/4 and the
/// complex passes its checks; otherwise rebuilds from the full 3^d copies
/// (recorded in full_translation), which is valid below radius 1/2.
SimplicialComplex build_periodic(const PointSet& points, std::uint64_t seed = 0);

}  // namespace betti
