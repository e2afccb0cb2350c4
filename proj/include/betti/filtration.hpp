#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "betti/complex.hpp"

namespace betti {

/// Squared alpha-thresholds per simplex, indexed like the complex's tables.
/// Simplices touching the vertex at infinity get +infinity.
struct Thresholds {
  std::array<std::vector<double>, 4> radius_sq;

  double alpha(int k, std::size_t i) const { return std::sqrt(radius_sq[k][i]); }
};

/// Vertices 0; top cells their circumradius; a lower simplex its own smallest
/// circumradius unless some cofacet vertex lies strictly inside that sphere,
/// in which case the smallest threshold among its cofacets. Values are then
/// clamped so no face exceeds a cofacet (guards against rounding).
Thresholds alpha_thresholds(const SimplicialComplex& complex);

struct FiltrationEntry {
  double radius_sq;
  std::int32_t index;
  std::int8_t dim;
};

/// Simplices in filtration order: by threshold, then dimension, then the
/// sorted tuple of vertex labels. Thresholds equal to within a relative 1e-12
/// are merged to one value before sorting.
struct Filtration {
  std::vector<FiltrationEntry> order;
  std::array<std::vector<std::int32_t>, 4> position;  // [dim][index] -> position in order

  std::size_t size() const { return order.size(); }
  double alpha(std::size_t p) const { return std::sqrt(order[p].radius_sq); }
};

/// Throws std::logic_error("threshold monotonicity violated") if a face would
/// follow one of its cofaces.
Filtration build_filtration(const SimplicialComplex& complex, const Thresholds& thresholds);

/// Diagnostic dump: one line "dim alpha v0,v1,..." per simplex in order, with
/// vertex labels (the vertex at infinity prints as "inf").
void write_filtration(std::ostream& out, const SimplicialComplex& complex, const Filtration& f);

}  // namespace betti
