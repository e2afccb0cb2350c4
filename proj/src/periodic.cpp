#include "betti/periodic.hpp"

#include <cmath>

#include "betti/delaunay.hpp"
#include "extract.hpp"

namespace betti {

namespace {

constexpr double kGrid = 4503599627370496.0;  // 2^52

// Perturbation key of a copy: label-major, then the shift in base 3.
std::uint64_t copy_key(std::int32_t label, const std::array<std::int8_t, 3>& off, int d) {
  std::uint64_t code = 0;
  for (int c = d - 1; c >= 0; --c) code = code * 3 + static_cast<std::uint64_t>(off[c] + 1);
  return static_cast<std::uint64_t>(label) * 32 + code;
}

template <int D>
SimplicialComplex canonical(const TranslatedPoints& tp, std::uint64_t seed) {
  const auto& ps = tp.points;
  const std::size_t n = ps.size();
  std::vector<Vec<D>> pts(n);
  std::vector<std::uint64_t> keys(n);
  detail::PointFrames frames;
  frames.periodic = true;
  frames.label = ps.labels;
  frames.offset = tp.offsets;
  frames.fixed.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    pts[i] = ps.point<D>(i);
    keys[i] = copy_key(ps.labels[i], tp.offsets[i], D);
    std::array<std::int64_t, 3> f{0, 0, 0};
    for (int c = 0; c < D; ++c) f[c] = static_cast<std::int64_t>(pts[i][c] * kGrid);
    frames.fixed[i] = f;
  }

  const Triangulation<D> tri(std::move(pts), std::move(keys), seed);
  SimplicialComplex k;
  try {
    k = detail::Extractor<D>(tri, frames).run();
  } catch (const detail::ExtractError& e) {
    throw PeriodicIntegrityError(e.what(), e.count());
  }
  k.full_translation = tp.mode == Translation::kFull;

  const std::size_t v = k.count(0), e = k.count(1), f = k.count(2);
  if (v != static_cast<std::size_t>(k.num_labels)) throw PeriodicIntegrityError("vertex count", v);
  if constexpr (D == 2) {
    if (e != 3 * v) throw PeriodicIntegrityError("edge count E != 3N", e);
    if (f != 2 * v) throw PeriodicIntegrityError("triangle count F != 2N", f);
  } else {
    const std::size_t t = k.count(3);
    if (f != 2 * t) throw PeriodicIntegrityError("triangle count F != 2T", f);
    if (e != v + t) throw PeriodicIntegrityError("edge count E != N + T", e);
  }
  const auto& facets = k.tables[D - 1];
  for (std::size_t i = 0; i < facets.size(); ++i)
    if (facets.cofacets_of(i).size() != 2) throw PeriodicIntegrityError("facet cofacets", i);

  double rmax = 0.0;
  std::array<Vec<D>, D + 1> s;
  for (std::size_t c = 0; c < k.count(D); ++c) {
    const auto vs = k.tables[D].simplex(c);
    for (int i = 0; i <= D; ++i) s[i] = k.point<D>(vs[i]);
    rmax = std::max(rmax, circumsphere<D>(std::span<const Vec<D>>(s)).radius);
  }
  k.max_circumradius = rmax;
  return k;
}

}  // namespace

double snap_to_grid(double x) { return std::floor(x * kGrid) / kGrid; }

TranslatedPoints translate_points(const PointSet& points, Translation mode) {
  if (points.empty()) throw std::invalid_argument("empty point set");
  const int d = points.dim;
  if (d != 2 && d != 3) throw std::invalid_argument("periodic complexes need d = 2 or 3");
  TranslatedPoints out;
  out.mode = mode;
  out.points.dim = d;
  out.points.master_seed = points.master_seed;
  out.points.stream_index = points.stream_index;

  const int copies = mode == Translation::kHalf ? (1 << d) : (d == 2 ? 9 : 27);
  out.points.coords.reserve(points.size() * copies * d);
  out.points.labels.reserve(points.size() * copies);
  out.offsets.reserve(points.size() * copies);
  std::array<double, 3> x{};
  std::array<double, 3> y{};
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (int c = 0; c < d; ++c) {
      const double v = points.coords[i * d + c];
      if (!(v >= 0.0 && v < 1.0))
        throw std::invalid_argument("coordinate outside [0,1) at point " + std::to_string(i));
      x[c] = snap_to_grid(v);
    }
    for (int m = 0; m < copies; ++m) {
      std::array<std::int8_t, 3> off{0, 0, 0};
      int code = m;
      for (int c = 0; c < d; ++c) {
        if (mode == Translation::kHalf) {
          if (m & (1 << c)) off[c] = x[c] < 0.5 ? 1 : -1;
        } else {
          off[c] = static_cast<std::int8_t>(code % 3 - 1);
          code /= 3;
        }
        y[c] = x[c] + off[c];
      }
      out.points.push_back(std::span<const double>(y.data(), d), points.labels[i]);
      out.offsets.push_back(off);
    }
  }
  return out;
}

SimplicialComplex canonicalize(const TranslatedPoints& translated, std::uint64_t seed) {
  if (translated.points.dim == 2) return canonical<2>(translated, seed);
  if (translated.points.dim == 3) return canonical<3>(translated, seed);
  throw std::invalid_argument("periodic complexes need d = 2 or 3");
}

SimplicialComplex build_periodic(const PointSet& points, std::uint64_t seed) {
  const auto half = translate_points(points, Translation::kHalf);
  try {
    auto k = canonicalize(half, seed);
    if (k.max_circumradius < 0.25) return k;
  } catch (const PeriodicIntegrityError&) {
    // fall through to the full construction
  } catch (const GeometryError&) {
  }
  auto k = canonicalize(translate_points(points, Translation::kFull), seed);
  if (!(k.max_circumradius < 0.5))
    throw PeriodicIntegrityError("circumradius too large for the translated copies",
                                 k.count(k.dim));
  return k;
}

}  // namespace betti
