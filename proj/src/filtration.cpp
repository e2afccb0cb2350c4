#include "betti/filtration.hpp"

#include <algorithm>
#include <cstdio>
#include <limits>
#include <numeric>
#include <ostream>
#include <stdexcept>

namespace betti {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kTieTolerance = 1e-12;

template <int D>
Thresholds thresholds_impl(const SimplicialComplex& k) {
  Thresholds t;
  for (int dim = 0; dim <= D; ++dim) t.radius_sq[dim].assign(k.count(dim), 0.0);

  std::vector<Vec<D>> pts;
  for (std::size_t i = 0; i < k.count(D); ++i) {
    if (k.at_infinity(D, i)) {
      t.radius_sq[D][i] = kInf;
      continue;
    }
    pts.clear();
    for (const auto v : k.tables[D].simplex(i)) pts.push_back(k.point<D>(v));
    t.radius_sq[D][i] = circumsphere<D>(pts).radius_sq;
  }

  for (int dim = D - 1; dim >= 0; --dim) {
    const auto& table = k.tables[dim];
    const auto& up = t.radius_sq[dim + 1];
    for (std::size_t i = 0; i < table.size(); ++i) {
      double cof_min = kInf;
      for (const auto c : table.cofacets_of(i)) cof_min = std::min(cof_min, up[c]);
      if (k.at_infinity(dim, i)) {
        t.radius_sq[dim][i] = kInf;
        continue;
      }
      if (dim == 0) continue;
      pts.clear();
      for (const auto v : table.simplex(i)) pts.push_back(k.point<D>(v));
      bool attached = false;
      for (const auto a : table.apexes_of(i)) {
        if (a < 0) continue;  // vertex at infinity
        if (in_smallest_circumsphere<D>(pts, k.point<D>(a)) > 0) {
          attached = true;
          break;
        }
      }
      const double own = attached ? cof_min : circumsphere<D>(pts).radius_sq;
      t.radius_sq[dim][i] = std::min(own, cof_min);
    }
  }
  return t;
}

// Sorted labels of a simplex, padded; used only to break exact ties.
std::array<std::int32_t, 4> tie_key(const SimplicialComplex& k, int dim, std::int32_t i) {
  std::array<std::int32_t, 4> key;
  key.fill(-1);
  const auto s = k.tables[dim].simplex(i);
  for (std::size_t j = 0; j < s.size(); ++j) key[j] = k.label(s[j]);
  std::sort(key.begin(), key.begin() + static_cast<std::ptrdiff_t>(s.size()));
  return key;
}

}  // namespace

Thresholds alpha_thresholds(const SimplicialComplex& complex) {
  if (complex.dim == 2) return thresholds_impl<2>(complex);
  if (complex.dim == 3) return thresholds_impl<3>(complex);
  throw std::invalid_argument("alpha_thresholds: dimension must be 2 or 3");
}

Filtration build_filtration(const SimplicialComplex& k, const Thresholds& t) {
  Filtration f;
  const int d = k.dim;
  std::size_t total = 0;
  for (int dim = 0; dim <= d; ++dim) total += k.count(dim);
  f.order.reserve(total);
  for (int dim = 0; dim <= d; ++dim) {
    if (t.radius_sq[dim].size() != k.count(dim))
      throw std::invalid_argument("thresholds do not match the complex");
    for (std::size_t i = 0; i < k.count(dim); ++i)
      f.order.push_back({t.radius_sq[dim][i], static_cast<std::int32_t>(i), static_cast<std::int8_t>(dim)});
  }

  // Merge near-equal values onto the first value of their cluster. The map is
  // monotone, so face <= coface survives.
  std::vector<std::size_t> idx(f.order.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(),
            [&](std::size_t a, std::size_t b) { return f.order[a].radius_sq < f.order[b].radius_sq; });
  double leader = -1.0;
  for (const auto j : idx) {
    double& v = f.order[j].radius_sq;
    if (leader >= 0.0 && v != kInf && v - leader <= kTieTolerance * v)
      v = leader;
    else
      leader = v;
  }

  std::sort(f.order.begin(), f.order.end(), [&](const FiltrationEntry& a, const FiltrationEntry& b) {
    if (a.radius_sq != b.radius_sq) return a.radius_sq < b.radius_sq;
    if (a.dim != b.dim) return a.dim < b.dim;
    const auto ka = tie_key(k, a.dim, a.index), kb = tie_key(k, b.dim, b.index);
    if (ka != kb) return ka < kb;
    return a.index < b.index;
  });

  for (int dim = 0; dim <= d; ++dim) f.position[dim].assign(k.count(dim), -1);
  for (std::size_t p = 0; p < f.order.size(); ++p)
    f.position[f.order[p].dim][f.order[p].index] = static_cast<std::int32_t>(p);

  for (int dim = 0; dim < d; ++dim)
    for (std::size_t i = 0; i < k.count(dim); ++i)
      for (const auto c : k.tables[dim].cofacets_of(i))
        if (f.position[dim][i] > f.position[dim + 1][c])
          throw std::logic_error("threshold monotonicity violated");
  return f;
}

void write_filtration(std::ostream& out, const SimplicialComplex& k, const Filtration& f) {
  char buf[32];
  for (const auto& e : f.order) {
    const double a = std::sqrt(e.radius_sq);
    if (std::isinf(a))
      out << static_cast<int>(e.dim) << " inf ";
    else {
      std::snprintf(buf, sizeof buf, "%.9g", a);
      out << static_cast<int>(e.dim) << ' ' << buf << ' ';
    }
    const auto labels = k.label_tuple(e.dim, static_cast<std::size_t>(e.index));
    for (std::size_t j = 0; j < labels.size(); ++j) {
      if (j) out << ',';
      if (k.has_infinity && labels[j] == k.num_labels)
        out << "inf";
      else
        out << labels[j];
    }
    out << '\n';
  }
}

}  // namespace betti
