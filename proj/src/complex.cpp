#include "betti/complex.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <utility>

namespace betti {

std::string to_string(Topology t) { return t == Topology::kTorus ? "torus" : "sphere"; }

Topology topology_from_string(const std::string& s) {
  if (s == "torus") return Topology::kTorus;
  if (s == "sphere") return Topology::kSphere;
  throw std::invalid_argument("unknown topology '" + s + "' (expected torus or sphere)");
}

std::vector<std::int32_t> SimplicialComplex::label_tuple(int k, std::size_t i) const {
  std::vector<std::int32_t> out;
  for (const auto v : tables[k].simplex(i)) out.push_back(label(v));
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

using Tuple = std::vector<std::int32_t>;

Tuple sorted_tuple(std::span<const std::int32_t> s) {
  Tuple t(s.begin(), s.end());
  std::sort(t.begin(), t.end());
  return t;
}

}  // namespace

SimplicialComplex augment_with_infinity(const SimplicialComplex& in) {
  if (in.has_infinity) throw std::invalid_argument("complex already has a vertex at infinity");
  if (in.topology != Topology::kSphere)
    throw std::invalid_argument("only plain complexes can be coned to the sphere");
  const int d = in.dim;
  SimplicialComplex out = in;
  out.has_infinity = true;

  // Hull faces of every dimension below d, and their indices in `in`.
  std::array<std::set<Tuple>, 4> hull;
  const auto& facets = in.tables[d - 1];
  for (std::size_t f = 0; f < facets.size(); ++f) {
    if (!in.hull_facet[f]) continue;
    const auto vs = sorted_tuple(facets.simplex(f));
    const int m = static_cast<int>(vs.size());
    for (int mask = 1; mask < (1 << m); ++mask) {
      Tuple sub;
      for (int j = 0; j < m; ++j)
        if (mask & (1 << j)) sub.push_back(vs[j]);
      hull[sub.size() - 1].insert(sub);
    }
  }
  std::array<std::map<Tuple, std::int32_t>, 4> original;
  for (int k = 0; k < d; ++k)
    for (std::size_t i = 0; i < in.tables[k].size(); ++i) {
      auto t = sorted_tuple(in.tables[k].simplex(i));
      if (hull[k].count(t)) original[k].emplace(std::move(t), static_cast<std::int32_t>(i));
    }

  // Per-simplex cofacet lists, starting from the existing ones.
  std::array<std::vector<std::vector<std::pair<std::int32_t, std::int32_t>>>, 4> adj;
  for (int k = 0; k <= d; ++k) {
    const auto& t = in.tables[k];
    adj[k].resize(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) {
      const auto cf = t.cofacets_of(i);
      const auto ap = t.apexes_of(i);
      for (std::size_t j = 0; j < cf.size(); ++j) adj[k][i].emplace_back(cf[j], ap[j]);
    }
  }

  // New simplices: the vertex at infinity and the cone over every hull face.
  const auto inf_id = static_cast<std::int32_t>(out.tables[0].size());
  out.tables[0].vertices.push_back(kInfinity);
  adj[0].emplace_back();
  std::array<std::map<Tuple, std::int32_t>, 4> cone;  // by dimension of the cone
  for (int k = 0; k < d; ++k)
    for (const auto& g : hull[k]) {
      auto& table = out.tables[k + 1];
      const auto id = static_cast<std::int32_t>(table.size());
      table.vertices.insert(table.vertices.end(), g.begin(), g.end());
      table.vertices.push_back(kInfinity);
      adj[k + 1].emplace_back();
      cone[k + 1].emplace(g, id);
      if (k + 1 == d - 1) out.hull_facet.push_back(0);
    }

  for (const auto& v : hull[0]) adj[0][inf_id].emplace_back(cone[1].at(v), v[0]);
  for (int k = 0; k < d; ++k)
    for (const auto& g : hull[k]) {
      const auto it = original[k].find(g);
      if (it == original[k].end()) throw std::logic_error("hull face missing from complex");
      adj[k][it->second].emplace_back(cone[k + 1].at(g), kInfinity);
    }
  for (int k = 1; k < d; ++k)
    for (const auto& h : hull[k]) {
      const auto top = cone[k + 1].at(h);
      for (std::size_t j = 0; j < h.size(); ++j) {
        Tuple g = h;
        g.erase(g.begin() + static_cast<std::ptrdiff_t>(j));
        adj[k][cone[k].at(g)].emplace_back(top, h[j]);
      }
    }

  for (int k = 0; k <= d; ++k) {
    auto& t = out.tables[k];
    t.cofacet_offsets.assign(1, 0);
    t.cofacets.clear();
    t.apexes.clear();
    for (const auto& list : adj[k]) {
      for (const auto& [c, a] : list) {
        t.cofacets.push_back(c);
        t.apexes.push_back(a);
      }
      t.cofacet_offsets.push_back(static_cast<std::int32_t>(t.cofacets.size()));
    }
  }
  return out;
}

}  // namespace betti
