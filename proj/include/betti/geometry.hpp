#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <stdexcept>

namespace betti {

template <int D>
using Vec = std::array<double, D>;

class GeometryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Exact sign of det[b-a, c-a]. +1 for a counter-clockwise triangle.
int orient2d(const Vec<2>& a, const Vec<2>& b, const Vec<2>& c);

/// Exact sign of det[b-a, c-a, d-a]. +1 for the standard simplex
/// (0,0,0),(1,0,0),(0,1,0),(0,0,1).
int orient3d(const Vec<3>& a, const Vec<3>& b, const Vec<3>& c, const Vec<3>& d);

/// Exact circumcircle test: +1 if q is strictly inside the circle through
/// a, b, c, 0 if on it, -1 outside. Independent of the triangle's orientation.
/// Throws GeometryError("flat simplex") for collinear a, b, c.
int in_circle(const Vec<2>& a, const Vec<2>& b, const Vec<2>& c, const Vec<2>& q);

/// Exact circumsphere test, same conventions as in_circle.
int in_sphere(const Vec<3>& a, const Vec<3>& b, const Vec<3>& c, const Vec<3>& d,
              const Vec<3>& q);

template <int D>
int orient(const std::array<Vec<D>, D + 1>& s) {
  if constexpr (D == 2) {
    return orient2d(s[0], s[1], s[2]);
  } else {
    return orient3d(s[0], s[1], s[2], s[3]);
  }
}

template <int D>
int in_sphere(const std::array<Vec<D>, D + 1>& s, const Vec<D>& q) {
  if constexpr (D == 2) {
    return in_circle(s[0], s[1], s[2], q);
  } else {
    return in_sphere(s[0], s[1], s[2], s[3], q);
  }
}

/// Circumsphere test with symbolic perturbation. Never returns 0.
///
/// Each point carries a priority key (smaller key = larger perturbation). The
/// perturbation raises every lifted point |p|^2 by an infinitesimal that
/// decreases with priority, so exact ties are broken the same way for every
/// query and the resulting triangulation is unique. Keys must be distinct.
template <int D>
int in_sphere_perturbed(const std::array<Vec<D>, D + 1>& s,
                        const std::array<std::uint64_t, D + 1>& keys, const Vec<D>& q,
                        std::uint64_t qkey);

template <int D>
struct Circumsphere {
  Vec<D> center{};
  double radius = 0.0;
  double radius_sq = 0.0;
};

/// Smallest sphere through the k+1 vertices (k <= D); its centre lies in their
/// affine hull. Falls back to exact rational arithmetic when the Gram system is
/// ill-conditioned. Throws GeometryError("degenerate simplex") if the vertices
/// are affinely dependent.
template <int D>
Circumsphere<D> circumsphere(std::span<const Vec<D>> vertices);

/// Exact test of p against the smallest circumsphere of `face`:
/// +1 strictly inside, 0 on the sphere, -1 outside.
template <int D>
int in_smallest_circumsphere(std::span<const Vec<D>> face, const Vec<D>& p);

/// Squared Euclidean distance.
template <int D>
inline double distance_sq(const Vec<D>& a, const Vec<D>& b) {
  double s = 0.0;
  for (int i = 0; i < D; ++i) {
    const double t = a[i] - b[i];
    s += t * t;
  }
  return s;
}

}  // namespace betti
