#include "betti/betti.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "betti/analytic.hpp"
#include "betti/union_find.hpp"

namespace betti {

MarkedFiltration mark_filtration(const SimplicialComplex& k, Filtration filtration) {
  MarkedFiltration mf;
  mf.dim = k.dim;
  mf.topology = k.topology;
  mf.has_infinity = k.has_infinity;
  mf.num_labels = k.num_labels;
  const int d = k.dim;
  const auto& order = filtration.order;
  mf.marks.assign(order.size(), -1);
  const bool closed = k.topology == Topology::kTorus || k.has_infinity;

  // Vertex ids by label (the vertex at infinity has label num_labels).
  std::vector<std::int32_t> vertex_of_label(static_cast<std::size_t>(k.num_labels) + 1, -1);
  for (std::size_t i = 0; i < k.count(0); ++i)
    vertex_of_label[k.label(k.tables[0].simplex(i)[0])] = static_cast<std::int32_t>(i);

  UnionFind uf(k.count(0));
  for (std::size_t p = 0; p < order.size(); ++p) {
    const auto& e = order[p];
    if (e.dim == 0) {
      mf.marks[p] = 1;
    } else if (e.dim == 1) {
      const auto s = k.tables[1].simplex(e.index);
      const auto a = vertex_of_label[k.label(s[0])], b = vertex_of_label[k.label(s[1])];
      mf.marks[p] = uf.unite(a, b) ? -1 : 1;
    }
  }

  // Last top cell (and in 2D the last triangle, which is the same thing).
  std::size_t last_top = order.size();
  for (std::size_t p = order.size(); p-- > 0;)
    if (order[p].dim == d) {
      last_top = p;
      break;
    }
  if (closed && last_top < order.size()) {
    mf.marks[last_top] = 1;
    mf.a_priori_marks = 1;
  }

  if (d == 3) {
    // Reverse pass over the dual graph: nodes are tetrahedra plus one
    // exterior node for plain complexes.
    const auto& tri = k.tables[2];
    const auto exterior = static_cast<std::int32_t>(k.count(3));
    UnionFind dual(k.count(3) + 1);
    for (std::size_t p = order.size(); p-- > 0;) {
      if (order[p].dim != 2) continue;
      const auto cof = tri.cofacets_of(order[p].index);
      std::int32_t a, b;
      if (cof.size() == 2) {
        a = cof[0];
        b = cof[1];
      } else if (cof.size() == 1 && !closed) {
        a = cof[0];
        b = exterior;
      } else {
        throw std::runtime_error("non-manifold input");
      }
      mf.marks[p] = dual.unite(a, b) ? 1 : -1;
    }
  } else if (d == 2) {
    for (std::size_t i = 0; i < k.count(1); ++i) {
      const auto n = k.tables[1].cofacets_of(i).size();
      if (n == 0 || n > 2 || (closed && n != 2)) throw std::runtime_error("non-manifold input");
    }
  }
  mf.filtration = std::move(filtration);
  return mf;
}

std::int64_t StepFunction::at(double a) const {
  const auto it = std::upper_bound(alpha.begin(), alpha.end(), a);
  if (it == alpha.begin()) return 0;
  return value[static_cast<std::size_t>(it - alpha.begin()) - 1];
}

std::array<std::int64_t, 4> BettiSignature::at(double a) const {
  std::array<std::int64_t, 4> out{};
  for (int k = 0; k <= dim; ++k) out[k] = beta[k].at(a);
  return out;
}

std::int64_t BettiSignature::euler_at(double a) const {
  const auto b = at(a);
  return b[0] - b[1] + b[2] - b[3];
}

BettiSignature signature(const MarkedFiltration& mf) {
  BettiSignature sig;
  sig.dim = mf.dim;
  sig.topology = mf.topology;
  sig.num_points = mf.num_labels;
  const auto& order = mf.filtration.order;
  std::array<std::int64_t, 4> running{};
  for (std::size_t p = 0; p < order.size();) {
    const double r2 = order[p].radius_sq;
    std::size_t q = p;
    for (; q < order.size() && order[q].radius_sq == r2; ++q) {
      const int k = order[q].dim;
      if (mf.marks[q] > 0)
        running[k] += 1;
      else
        running[k - 1] -= 1;
    }
    const double a = std::sqrt(r2);
    for (int k = 0; k <= mf.dim; ++k) {
      auto& f = sig.beta[k];
      const std::int64_t prev = f.value.empty() ? 0 : f.value.back();
      if (running[k] != prev) {
        f.alpha.push_back(a);
        f.value.push_back(running[k]);
      }
    }
    p = q;
  }
  return sig;
}

std::size_t euler_violations(const MarkedFiltration& mf, const BettiSignature& sig) {
  const auto& order = mf.filtration.order;
  std::size_t bad = 0;
  std::int64_t chi = 0;
  for (std::size_t p = 0; p < order.size();) {
    const double r2 = order[p].radius_sq;
    std::size_t q = p;
    for (; q < order.size() && order[q].radius_sq == r2; ++q) chi += order[q].dim % 2 == 0 ? 1 : -1;
    if (sig.euler_at(std::sqrt(r2)) != chi) ++bad;
    p = q;
  }
  return bad;
}

std::int64_t betti0_1d(std::vector<double> points, double alpha) {
  if (points.empty()) return 0;
  std::sort(points.begin(), points.end());
  std::int64_t gaps = 0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const double next = i + 1 < points.size() ? points[i + 1] : points[0] + 1.0;
    if (next - points[i] > 2 * alpha) ++gaps;
  }
  return std::max<std::int64_t>(gaps, 1);
}

TorusReport torus_correction_report(const MarkedFiltration& mf, const BettiSignature& sig,
                                    double alpha) {
  if (mf.topology != Topology::kTorus)
    throw std::invalid_argument("torus_correction_report needs a torus filtration");
  TorusReport r;
  r.computed = sig.at(alpha);
  if (mf.dim == 2) {
    r.state = "inactive";
    r.note = "2D torus: marks are exact; the full complex gives (1,2,1)";
    return r;
  }
  const auto& order = mf.filtration.order;
  const double a2 = alpha * alpha;
  bool any_triangle = false;
  for (const auto& e : order)
    if (e.dim == 2 && e.radius_sq <= a2) {
      any_triangle = true;
      break;
    }
  if (!any_triangle) {
    r.state = "inactive";
    r.note = "no triangles yet, so no 2-cycles can be missed";
  } else if (!order.empty() && order.back().radius_sq <= a2) {
    r.state = "active";
    r.note = "full complex: true (b0,b1,b2,b3) = (1,3,3,1); computed b1 and b2 are 3 lower";
  } else {
    r.state = "unknown";
    r.note =
        "expected true b1 and b2 exceed computed ones by 3 once the uncovered phase stops "
        "spanning the torus (eta above about 3.5032); not determined per instance";
  }
  return r;
}

void write_signature_csv(std::ostream& out, const BettiSignature& sig,
                         const std::vector<double>& alphas) {
  out << "alpha,eta,beta0,beta1,beta2\n";
  char buf[64];
  const double omega = unit_ball_volume(sig.dim);
  for (const double a : alphas) {
    const auto b = sig.at(a);
    const double eta = omega * std::pow(a, sig.dim) * sig.lambda;
    std::snprintf(buf, sizeof buf, "%.9g,%.9g,", a, eta);
    out << buf << b[0] << ',' << b[1] << ',' << b[2] << '\n';
  }
}

}  // namespace betti
