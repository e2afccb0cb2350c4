#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "betti/geometry.hpp"

namespace betti {

/// Geometric index of the vertex at infinity in sphere-augmented complexes.
inline constexpr std::int32_t kInfinity = -1;
/// Cofacet apex that is not expressed in the simplex's own frame.
inline constexpr std::int32_t kNoApex = -2;

enum class Topology { kSphere, kTorus };

std::string to_string(Topology t);
Topology topology_from_string(const std::string& s);

/// All simplices of one dimension, with their cofacets.
///
/// Vertices are geometric point indices into SimplicialComplex::coords (or
/// kInfinity). For each cofacet we also store the apex: the cofacet's vertex
/// that is not in this simplex, expressed in this simplex's frame. For periodic
/// complexes the frame matters because a cofacet's stored representative may
/// be a translate of the copy that actually touches this simplex.
struct SimplexTable {
  int dim = 0;
  std::vector<std::int32_t> vertices;
  std::vector<std::int32_t> cofacet_offsets{0};
  std::vector<std::int32_t> cofacets;
  std::vector<std::int32_t> apexes;

  std::size_t size() const { return vertices.size() / static_cast<std::size_t>(dim + 1); }

  std::span<const std::int32_t> simplex(std::size_t i) const {
    return {vertices.data() + i * (dim + 1), static_cast<std::size_t>(dim + 1)};
  }
  std::span<const std::int32_t> cofacets_of(std::size_t i) const {
    return {cofacets.data() + cofacet_offsets[i],
            static_cast<std::size_t>(cofacet_offsets[i + 1] - cofacet_offsets[i])};
  }
  std::span<const std::int32_t> apexes_of(std::size_t i) const {
    return {apexes.data() + cofacet_offsets[i],
            static_cast<std::size_t>(cofacet_offsets[i + 1] - cofacet_offsets[i])};
  }
};

/// A simplicial complex over labelled points, either a plain Delaunay complex
/// (optionally coned to the sphere) or the canonical part of a periodic one.
struct SimplicialComplex {
  int dim = 0;
  Topology topology = Topology::kSphere;
  // Number of distinct vertex labels, excluding the vertex at infinity.
  std::int32_t num_labels = 0;
  bool has_infinity = false;

  std::vector<double> coords;             // dim per geometric point
  std::vector<std::int32_t> point_label;  // label per geometric point

  std::array<SimplexTable, 4> tables;      // index = simplex dimension
  std::vector<std::uint8_t> hull_facet;    // per (dim-1)-simplex

  // Periodic construction provenance.
  bool full_translation = false;
  double max_circumradius = 0.0;

  std::size_t count(int k) const { return tables[k].size(); }

  /// Label of a geometric vertex; the vertex at infinity gets num_labels.
  std::int32_t label(std::int32_t v) const { return v == kInfinity ? num_labels : point_label[v]; }

  bool at_infinity(int k, std::size_t i) const {
    if (!has_infinity) return false;
    for (const auto v : tables[k].simplex(i))
      if (v == kInfinity) return true;
    return false;
  }

  template <int D>
  Vec<D> point(std::int32_t v) const {
    Vec<D> p;
    for (int c = 0; c < D; ++c) p[c] = coords[static_cast<std::size_t>(v) * D + c];
    return p;
  }

  /// Sorted vertex labels of simplex i of dimension k.
  std::vector<std::int32_t> label_tuple(int k, std::size_t i) const;
};

/// Adds a vertex at infinity and cones it over every hull simplex, turning a
/// Delaunay complex of a point set into a triangulated d-sphere.
SimplicialComplex augment_with_infinity(const SimplicialComplex& complex);

}  // namespace betti
