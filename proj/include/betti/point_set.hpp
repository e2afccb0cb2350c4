#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "betti/geometry.hpp"

namespace betti {

/// Labelled points in the unit d-cube, stored flat (dim coordinates each).
struct PointSet {
  int dim = 0;
  std::vector<double> coords;
  std::vector<std::int32_t> labels;
  // Generator provenance; zero for points read from a file.
  std::uint64_t master_seed = 0;
  std::uint64_t stream_index = 0;

  std::size_t size() const { return labels.size(); }
  bool empty() const { return labels.empty(); }

  template <int D>
  Vec<D> point(std::size_t i) const {
    Vec<D> p;
    for (int c = 0; c < D; ++c) p[c] = coords[i * D + c];
    return p;
  }

  void push_back(std::span<const double> x, std::int32_t label) {
    coords.insert(coords.end(), x.begin(), x.end());
    labels.push_back(label);
  }
};

}  // namespace betti
