#include "betti/delaunay.hpp"

#include <algorithm>
#include <limits>
#include <random>

#include "extract.hpp"

namespace betti {

void seeded_shuffle(std::vector<std::int32_t>& v, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  for (std::size_t i = v.size(); i > 1; --i) {
    const std::size_t j = rng() % i;
    std::swap(v[i - 1], v[j]);
  }
}

namespace {

std::uint64_t spread2(std::uint64_t x) {
  x &= 0xffffffffULL;
  x = (x | (x << 16)) & 0x0000ffff0000ffffULL;
  x = (x | (x << 8)) & 0x00ff00ff00ff00ffULL;
  x = (x | (x << 4)) & 0x0f0f0f0f0f0f0f0fULL;
  x = (x | (x << 2)) & 0x3333333333333333ULL;
  x = (x | (x << 1)) & 0x5555555555555555ULL;
  return x;
}

std::uint64_t spread3(std::uint64_t x) {
  x &= 0x1fffffULL;
  x = (x | (x << 32)) & 0x1f00000000ffffULL;
  x = (x | (x << 16)) & 0x1f0000ff0000ffULL;
  x = (x | (x << 8)) & 0x100f00f00f00f00fULL;
  x = (x | (x << 4)) & 0x10c30c30c30c30c3ULL;
  x = (x | (x << 2)) & 0x1249249249249249ULL;
  return x;
}

// Biased randomized insertion order: a random permutation split into rounds
// of doubling size, each round sorted along a Morton curve.
template <int D>
std::vector<std::int32_t> brio_order(const std::vector<Vec<D>>& pts, std::uint64_t seed) {
  std::vector<std::int32_t> order(pts.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<std::int32_t>(i);
  seeded_shuffle(order, seed);
  if (pts.empty()) return order;

  Vec<D> lo = pts[0], hi = pts[0];
  for (const auto& p : pts)
    for (int c = 0; c < D; ++c) {
      lo[c] = std::min(lo[c], p[c]);
      hi[c] = std::max(hi[c], p[c]);
    }
  constexpr double kCells = D == 2 ? 4294967295.0 : 2097151.0;
  std::vector<std::uint64_t> code(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    std::uint64_t m = 0;
    for (int c = 0; c < D; ++c) {
      const double w = hi[c] > lo[c] ? (pts[i][c] - lo[c]) / (hi[c] - lo[c]) : 0.0;
      const auto g = static_cast<std::uint64_t>(w * kCells);
      m |= (D == 2 ? spread2(g) : spread3(g)) << c;
    }
    code[i] = m;
  }
  std::size_t end = order.size();
  while (end > 0) {
    const std::size_t start = end <= 64 ? 0 : end / 2;
    std::sort(order.begin() + static_cast<std::ptrdiff_t>(start),
              order.begin() + static_cast<std::ptrdiff_t>(end),
              [&](std::int32_t a, std::int32_t b) {
                return code[a] != code[b] ? code[a] < code[b] : a < b;
              });
    end = start;
  }
  return order;
}

}  // namespace

template <int D>
Triangulation<D>::Triangulation(std::vector<Vec<D>> points, std::vector<std::uint64_t> keys,
                                std::uint64_t seed)
    : points_(std::move(points)), keys_(std::move(keys)) {
  if (points_.size() != keys_.size()) throw std::invalid_argument("keys/points size mismatch");
  const auto order = brio_order<D>(points_, seed);

  // First D+1 affinely independent points in insertion order.
  std::array<std::int32_t, D + 1> init;
  init.fill(-1);
  std::vector<std::uint8_t> used(points_.size(), 0);
  int found = 0;
  for (const auto q : order) {
    if (found == 0) {
      init[found++] = q;
    } else if (found == 1) {
      if (points_[q] != points_[init[0]]) init[found++] = q;
    } else if constexpr (D == 2) {
      if (orient2d(points_[init[0]], points_[init[1]], points_[q]) != 0) init[found++] = q;
    } else {
      if (found == 2) {
        const auto& a = points_[init[0]];
        const auto& b = points_[init[1]];
        const auto& c = points_[q];
        // Non-collinear iff some coordinate projection has nonzero area.
        if (orient2d({a[0], a[1]}, {b[0], b[1]}, {c[0], c[1]}) != 0 ||
            orient2d({a[0], a[2]}, {b[0], b[2]}, {c[0], c[2]}) != 0 ||
            orient2d({a[1], a[2]}, {b[1], b[2]}, {c[1], c[2]}) != 0)
          init[found++] = q;
      } else if (orient3d(points_[init[0]], points_[init[1]], points_[init[2]], points_[q]) != 0) {
        init[found++] = q;
      }
    }
    if (found == D + 1) break;
  }
  if (found < D + 1) throw GeometryError("degenerate input");
  for (const auto v : init) used[v] = 1;
  init_simplex(init);
  for (const auto q : order)
    if (!used[q]) insert(q);
}

template <int D>
std::int32_t Triangulation<D>::new_cell(const Cell& cell) {
  if (!free_.empty()) {
    const auto c = free_.back();
    free_.pop_back();
    cells_[c] = cell;
    alive_[c] = 1;
    stamp_[c] = 0;
    return c;
  }
  cells_.push_back(cell);
  alive_.push_back(1);
  stamp_.push_back(0);
  return static_cast<std::int32_t>(cells_.size() - 1);
}

template <int D>
void Triangulation<D>::kill_cell(std::int32_t c) {
  alive_[c] = 0;
  free_.push_back(c);
}

template <int D>
std::size_t Triangulation<D>::num_finite_cells() const {
  std::size_t n = 0;
  for (std::size_t c = 0; c < cells_.size(); ++c)
    if (alive(c) && !is_ghost(c)) ++n;
  return n;
}

template <int D>
int Triangulation<D>::mirror_index(std::int32_t c, std::int32_t n) const {
  for (int i = 0; i <= D; ++i)
    if (cells_[n].neighbors[i] == c) return i;
  throw std::logic_error("triangulation: broken adjacency");
}

namespace {

template <int D>
struct FacetRef {
  std::array<std::int32_t, D> key;
  std::int32_t cell;
  int index;
};

template <int D>
std::array<std::int32_t, D> facet_key(const std::array<std::int32_t, D + 1>& vs, int skip) {
  std::array<std::int32_t, D> k;
  for (int j = 0, t = 0; j <= D; ++j)
    if (j != skip) k[t++] = vs[j];
  std::sort(k.begin(), k.end());
  return k;
}

// Pairs up facets with equal vertex sets and links the two cells.
template <int D, class Cells>
void link_facets(std::vector<FacetRef<D>>& refs, Cells& cells) {
  std::sort(refs.begin(), refs.end(),
            [](const FacetRef<D>& a, const FacetRef<D>& b) { return a.key < b.key; });
  for (std::size_t i = 0; i + 1 < refs.size(); i += 2) {
    if (refs[i].key != refs[i + 1].key) throw std::logic_error("triangulation: unmatched facet");
    cells[refs[i].cell].neighbors[refs[i].index] = refs[i + 1].cell;
    cells[refs[i + 1].cell].neighbors[refs[i + 1].index] = refs[i].cell;
  }
  if (refs.size() % 2 != 0) throw std::logic_error("triangulation: unmatched facet");
}

}  // namespace

template <int D>
void Triangulation<D>::init_simplex(const std::array<std::int32_t, D + 1>& vs) {
  Cell base;
  base.vertices = vs;
  base.neighbors.fill(-1);
  std::array<Vec<D>, D + 1> s;
  for (int i = 0; i <= D; ++i) s[i] = points_[vs[i]];
  if (orient<D>(s) < 0) std::swap(base.vertices[0], base.vertices[1]);
  std::vector<std::int32_t> ids{new_cell(base)};
  for (int i = 0; i <= D; ++i) {
    Cell g = base;
    g.vertices[i] = kInfinity;
    const int j = (i + 1) % (D + 1), k = (i + 2) % (D + 1);
    std::swap(g.vertices[j], g.vertices[k]);
    ids.push_back(new_cell(g));
  }
  std::vector<FacetRef<D>> refs;
  for (const auto c : ids)
    for (int i = 0; i <= D; ++i) refs.push_back({facet_key<D>(cells_[c].vertices, i), c, i});
  link_facets<D>(refs, cells_);
  last_ = ids[0];
}

template <int D>
int Triangulation<D>::orient_with(const Cell& cell, int i, std::int32_t q) const {
  std::array<Vec<D>, D + 1> s;
  for (int j = 0; j <= D; ++j) s[j] = j == i ? points_[q] : points_[cell.vertices[j]];
  return orient<D>(s);
}

template <int D>
std::int32_t Triangulation<D>::locate(std::int32_t q) {
  std::int32_t c = last_;
  std::int32_t prev = -1;
  while (true) {
    if (is_ghost(c)) return c;
    walk_state_ ^= walk_state_ << 13;
    walk_state_ ^= walk_state_ >> 7;
    walk_state_ ^= walk_state_ << 17;
    const int start = static_cast<int>(walk_state_ % (D + 1));
    bool moved = false;
    for (int t = 0; t <= D; ++t) {
      const int i = (start + t) % (D + 1);
      const auto n = cells_[c].neighbors[i];
      if (n == prev) continue;
      if (orient_with(cells_[c], i, q) < 0) {
        prev = c;
        c = n;
        moved = true;
        break;
      }
    }
    if (!moved) return c;
  }
}

template <int D>
bool Triangulation<D>::in_conflict(std::int32_t c, std::int32_t q) const {
  const Cell& cell = cells_[c];
  int inf = -1;
  for (int i = 0; i <= D; ++i)
    if (cell.vertices[i] == kInfinity) inf = i;
  if (inf < 0) {
    std::array<Vec<D>, D + 1> s;
    std::array<std::uint64_t, D + 1> k;
    for (int i = 0; i <= D; ++i) {
      s[i] = points_[cell.vertices[i]];
      k[i] = keys_[cell.vertices[i]];
    }
    return in_sphere_perturbed<D>(s, k, points_[q], keys_[q]) > 0;
  }
  const int o = orient_with(cell, inf, q);
  if (o != 0) return o > 0;
  // q lies in the hyperplane of the hull facet: in conflict iff it is inside
  // the facet's circumsphere within that hyperplane. Lift the facet with an
  // auxiliary point off the hyperplane; the sphere through the facet and that
  // point meets the hyperplane in exactly the facet's circumsphere.
  std::array<Vec<D>, D + 1> s;
  std::array<std::uint64_t, D + 1> k;
  int t = 0;
  for (int i = 0; i <= D; ++i) {
    if (i == inf) continue;
    s[t] = points_[cell.vertices[i]];
    k[t] = keys_[cell.vertices[i]];
    ++t;
  }
  k[D] = std::numeric_limits<std::uint64_t>::max();
  for (int axis = 0; axis < D; ++axis) {
    s[D] = s[0];
    s[D][axis] += 1.0;
    if (orient<D>(s) != 0) return in_sphere_perturbed<D>(s, k, points_[q], keys_[q]) > 0;
  }
  throw std::logic_error("triangulation: flat hull facet");
}

template <int D>
void Triangulation<D>::insert(std::int32_t q) {
  const auto c0 = locate(q);
  if (!is_ghost(c0))
    for (const auto v : cells_[c0].vertices)
      if (points_[v] == points_[q]) throw GeometryError("duplicate point");

  generation_ += 1;
  const std::uint32_t inside = 2 * generation_, outside = 2 * generation_ + 1;
  cavity_.clear();
  boundary_.clear();
  cavity_.push_back(c0);
  stamp_[c0] = inside;
  for (std::size_t idx = 0; idx < cavity_.size(); ++idx) {
    const auto c = cavity_[idx];
    for (int i = 0; i <= D; ++i) {
      const auto n = cells_[c].neighbors[i];
      if (stamp_[n] == inside) continue;
      if (stamp_[n] != outside && in_conflict(n, q)) {
        stamp_[n] = inside;
        cavity_.push_back(n);
      } else {
        stamp_[n] = outside;
        boundary_.emplace_back(c, i);
      }
    }
  }

  created_.clear();
  thread_local std::vector<FacetRef<D>> refs;
  refs.clear();
  for (const auto& [c, i] : boundary_) {
    Cell nc = cells_[c];
    const auto outer = nc.neighbors[i];
    nc.vertices[i] = q;
    nc.neighbors.fill(-1);
    nc.neighbors[i] = outer;
    const auto id = new_cell(nc);
    const int m = mirror_index(c, outer);
    cells_[outer].neighbors[m] = id;
    created_.push_back(id);
    for (int j = 0; j <= D; ++j)
      if (j != i) refs.push_back({facet_key<D>(cells_[id].vertices, j), id, j});
  }
  link_facets<D>(refs, cells_);
  for (const auto c : cavity_) kill_cell(c);
  for (const auto c : created_)
    if (!is_ghost(c)) {
      last_ = c;
      break;
    }
  if (is_ghost(last_) || !alive(last_))
    throw std::logic_error("triangulation: no finite cell after insertion");
}

template class Triangulation<2>;
template class Triangulation<3>;

namespace {

template <int D>
SimplicialComplex build(const PointSet& points, std::uint64_t seed) {
  if (points.size() < static_cast<std::size_t>(D + 1)) throw GeometryError("degenerate input");
  std::vector<Vec<D>> pts(points.size());
  std::vector<std::uint64_t> keys(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    pts[i] = points.point<D>(i);
    keys[i] = static_cast<std::uint64_t>(points.labels[i]);
  }
  const Triangulation<D> tri(std::move(pts), std::move(keys), seed);
  detail::PointFrames frames;
  frames.label = points.labels;
  frames.offset.assign(points.size(), {0, 0, 0});
  return detail::Extractor<D>(tri, frames).run();
}

}  // namespace

SimplicialComplex build_delaunay(const PointSet& points, std::uint64_t seed) {
  if (points.dim == 2) return build<2>(points, seed);
  if (points.dim == 3) return build<3>(points, seed);
  throw std::invalid_argument("build_delaunay: dimension must be 2 or 3");
}

}  // namespace betti
