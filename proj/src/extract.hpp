// Turns a Triangulation into a SimplicialComplex. Shared by the plain
// Delaunay builder (every finite simplex kept) and the periodic module (only
// simplices whose centroid lies in the fundamental domain are kept, and
// simplices are identified up to integer translation).
#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "betti/complex.hpp"
#include "betti/delaunay.hpp"

namespace betti::detail {

class ExtractError : public std::runtime_error {
 public:
  ExtractError(const std::string& what, std::size_t count)
      : std::runtime_error(what), count_(count) {}
  std::size_t count() const { return count_; }

 private:
  std::size_t count_;
};

struct PointFrames {
  std::vector<std::int32_t> label;                // per geometric point
  std::vector<std::array<std::int8_t, 3>> offset;  // integer translation per point
  // Coordinates scaled by 2^52 (exact for points on the 2^-52 grid); only
  // needed when `periodic` is set.
  std::vector<std::array<std::int64_t, 3>> fixed;
  bool periodic = false;
};

template <int D>
using OrbitKey = std::array<std::uint64_t, D + 1>;

template <int D>
struct OrbitKeyHash {
  std::size_t operator()(const OrbitKey<D>& k) const {
    std::uint64_t h = 0x243f6a8885a308d3ULL;
    for (const auto x : k) {
      h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
      h *= 0xff51afd7ed558ccdULL;
    }
    return static_cast<std::size_t>(h ^ (h >> 33));
  }
};

template <int D>
class Extractor {
 public:
  Extractor(const Triangulation<D>& tri, const PointFrames& frames)
      : tri_(tri), frames_(frames) {}

  SimplicialComplex run() {
    SimplicialComplex out;
    out.dim = D;
    const auto& pts = tri_.points();
    out.coords.reserve(pts.size() * D);
    for (const auto& p : pts) out.coords.insert(out.coords.end(), p.begin(), p.end());
    out.point_label = frames_.label;
    std::int32_t max_label = -1;
    for (const auto l : frames_.label) max_label = std::max(max_label, l);
    out.num_labels = max_label + 1;
    out.topology = frames_.periodic ? Topology::kTorus : Topology::kSphere;
    for (int k = 0; k <= D; ++k) out.tables[k].dim = k;

    build_top(out);
    build_facets(out);
    if constexpr (D == 3) build_edges(out);
    build_vertices(out);
    return out;
  }

 private:
  bool canonical(std::span<const std::int32_t> vs) const {
    if (!frames_.periodic) return true;
    const std::int64_t scale = static_cast<std::int64_t>(vs.size()) << 52;
    for (int c = 0; c < D; ++c) {
      std::int64_t s = 0;
      for (const auto v : vs) s += frames_.fixed[v][c];
      if (s < 0 || s >= scale) return false;
    }
    return true;
  }

  OrbitKey<D> orbit_key(std::span<const std::int32_t> vs) const {
    std::size_t anchor = 0;
    auto less = [&](std::int32_t a, std::int32_t b) {
      if (frames_.label[a] != frames_.label[b]) return frames_.label[a] < frames_.label[b];
      return frames_.offset[a] < frames_.offset[b];
    };
    for (std::size_t i = 1; i < vs.size(); ++i)
      if (less(vs[i], vs[anchor])) anchor = i;
    OrbitKey<D> key;
    key.fill(~std::uint64_t{0});
    for (std::size_t i = 0; i < vs.size(); ++i) {
      std::uint64_t code = 0;
      for (int c = D - 1; c >= 0; --c) {
        const int rel = frames_.offset[vs[i]][c] - frames_.offset[vs[anchor]][c];
        code = code * 5 + static_cast<std::uint64_t>(rel + 2);
      }
      key[i] = static_cast<std::uint64_t>(frames_.label[vs[i]]) * 128 + code;
    }
    std::sort(key.begin(), key.begin() + static_cast<std::ptrdiff_t>(vs.size()));
    return key;
  }

  std::int32_t lookup(const std::unordered_map<OrbitKey<D>, std::int32_t, OrbitKeyHash<D>>& map,
                      std::span<const std::int32_t> vs, const char* what) const {
    const auto it = map.find(orbit_key(vs));
    if (it == map.end()) throw ExtractError(std::string("missing ") + what, 0);
    return it->second;
  }

  void build_top(SimplicialComplex& out) {
    auto& top = out.tables[D];
    const auto& cells = tri_.cells();
    cell_top_.assign(cells.size(), -1);
    for (std::size_t c = 0; c < cells.size(); ++c) {
      if (!tri_.alive(c) || tri_.is_ghost(c)) continue;
      const auto& vs = cells[c].vertices;
      if (!canonical(vs)) continue;
      const auto id = static_cast<std::int32_t>(top.size());
      top.vertices.insert(top.vertices.end(), vs.begin(), vs.end());
      top.cofacet_offsets.push_back(0);
      cell_top_[c] = id;
      if (frames_.periodic && !top_keys_.emplace(orbit_key(vs), id).second)
        throw ExtractError("duplicate top cell orbit", top.size());
    }
  }

  std::int32_t top_id(std::int32_t c) const {
    if (cell_top_[c] >= 0) return cell_top_[c];
    if (!frames_.periodic) throw ExtractError("internal: finite cell without id", 0);
    return lookup(top_keys_, tri_.cells()[c].vertices, "top cell orbit");
  }

  void build_facets(SimplicialComplex& out) {
    auto& facets = out.tables[D - 1];
    const auto& cells = tri_.cells();
    std::vector<std::int32_t> f(D);
    for (std::size_t cu = 0; cu < cells.size(); ++cu) {
      if (!tri_.alive(cu) || tri_.is_ghost(cu)) continue;
      const auto c = static_cast<std::int32_t>(cu);
      for (int i = 0; i <= D; ++i) {
        const std::int32_t n = cells[c].neighbors[i];
        const bool ghost = tri_.is_ghost(n);
        if (!ghost && n < c) continue;
        for (int j = 0, t = 0; j <= D; ++j)
          if (j != i) f[t++] = cells[c].vertices[j];
        if (!canonical(f)) continue;
        const auto id = static_cast<std::int32_t>(facets.size());
        facets.vertices.insert(facets.vertices.end(), f.begin(), f.end());
        facets.cofacets.push_back(top_id(c));
        facets.apexes.push_back(cells[c].vertices[i]);
        if (ghost) {
          if (frames_.periodic) throw ExtractError("canonical facet on the hull", facets.size());
          out.hull_facet.push_back(1);
        } else {
          const int m = tri_.mirror_index(c, n);
          facets.cofacets.push_back(top_id(n));
          facets.apexes.push_back(cells[n].vertices[m]);
          out.hull_facet.push_back(0);
        }
        facets.cofacet_offsets.push_back(static_cast<std::int32_t>(facets.cofacets.size()));
        if (D == 3 && !facet_keys_.emplace(orbit_key(f), id).second)
          throw ExtractError("duplicate facet orbit", facets.size());
      }
    }
  }

  void build_edges(SimplicialComplex& out) {
    auto& edges = out.tables[1];
    const auto& cells = tri_.cells();
    struct Incidence {
      std::int32_t a, b, w0, w1;
    };
    std::vector<Incidence> inc;
    static constexpr int kPairs[6][4] = {{0, 1, 2, 3}, {0, 2, 1, 3}, {0, 3, 1, 2},
                                         {1, 2, 0, 3}, {1, 3, 0, 2}, {2, 3, 0, 1}};
    for (std::size_t c = 0; c < cells.size(); ++c) {
      if (!tri_.alive(c) || tri_.is_ghost(c)) continue;
      const auto& v = cells[c].vertices;
      for (const auto& p : kPairs) {
        std::int32_t a = v[p[0]], b = v[p[1]];
        if (a > b) std::swap(a, b);
        const std::array<std::int32_t, 2> e{a, b};
        if (!canonical(e)) continue;
        inc.push_back({a, b, v[p[2]], v[p[3]]});
      }
    }
    std::sort(inc.begin(), inc.end(), [](const Incidence& x, const Incidence& y) {
      return x.a != y.a ? x.a < y.a : x.b < y.b;
    });
    std::vector<std::int32_t> apex;
    for (std::size_t s = 0; s < inc.size();) {
      std::size_t e = s;
      apex.clear();
      while (e < inc.size() && inc[e].a == inc[s].a && inc[e].b == inc[s].b) {
        apex.push_back(inc[e].w0);
        apex.push_back(inc[e].w1);
        ++e;
      }
      std::sort(apex.begin(), apex.end());
      apex.erase(std::unique(apex.begin(), apex.end()), apex.end());
      edges.vertices.push_back(inc[s].a);
      edges.vertices.push_back(inc[s].b);
      for (const auto w : apex) {
        const std::array<std::int32_t, 3> t{inc[s].a, inc[s].b, w};
        edges.cofacets.push_back(lookup(facet_keys_, t, "triangle orbit"));
        edges.apexes.push_back(w);
      }
      edges.cofacet_offsets.push_back(static_cast<std::int32_t>(edges.cofacets.size()));
      s = e;
    }
  }

  void build_vertices(SimplicialComplex& out) {
    auto& verts = out.tables[0];
    const auto n = static_cast<std::int32_t>(frames_.label.size());
    std::vector<std::int32_t> vertex_of_label(out.num_labels, -1);
    for (std::int32_t p = 0; p < n; ++p) {
      const std::array<std::int32_t, 1> v{p};
      if (!canonical(v)) continue;
      if (vertex_of_label[frames_.label[p]] >= 0)
        throw ExtractError("label appears twice among canonical vertices", verts.size());
      vertex_of_label[frames_.label[p]] = static_cast<std::int32_t>(verts.vertices.size());
      verts.vertices.push_back(p);
    }
    for (std::size_t l = 0; l < vertex_of_label.size(); ++l)
      if (vertex_of_label[l] < 0) throw ExtractError("label missing among canonical vertices", l);

    // Vertex cofacets (edges). The apex is only meaningful when the edge's
    // representative actually touches the canonical copy of the vertex.
    const auto& edges = out.tables[1];
    std::vector<std::int32_t> count(verts.vertices.size() + 1, 0);
    for (std::size_t e = 0; e < edges.size(); ++e)
      for (const auto v : edges.simplex(e)) ++count[vertex_of_label[frames_.label[v]] + 1];
    for (std::size_t i = 1; i < count.size(); ++i) count[i] += count[i - 1];
    verts.cofacet_offsets = count;
    verts.cofacets.assign(count.back(), 0);
    verts.apexes.assign(count.back(), kNoApex);
    std::vector<std::int32_t> fill(count.begin(), count.end() - 1);
    for (std::size_t e = 0; e < edges.size(); ++e) {
      const auto s = edges.simplex(e);
      for (int t = 0; t < 2; ++t) {
        const auto vid = vertex_of_label[frames_.label[s[t]]];
        const auto slot = fill[vid]++;
        verts.cofacets[slot] = static_cast<std::int32_t>(e);
        if (verts.vertices[vid] == s[t]) verts.apexes[slot] = s[1 - t];
      }
    }
  }

  const Triangulation<D>& tri_;
  const PointFrames& frames_;
  std::vector<std::int32_t> cell_top_;
  std::unordered_map<OrbitKey<D>, std::int32_t, OrbitKeyHash<D>> top_keys_;
  std::unordered_map<OrbitKey<D>, std::int32_t, OrbitKeyHash<D>> facet_keys_;
};

}  // namespace betti::detail
