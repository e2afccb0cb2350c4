#include "betti/geometry.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <numeric>

namespace betti {

namespace {

// Stage-A error bounds of Shewchuk's adaptive predicates. They are valid for
// the exact evaluation order used below; anything inside the bound is
// recomputed in rational arithmetic.
constexpr double kEps = 0x1p-53;
constexpr double kCcwBound = (3.0 + 16.0 * kEps) * kEps;
constexpr double kO3dBound = (7.0 + 56.0 * kEps) * kEps;
constexpr double kIccBound = (10.0 + 96.0 * kEps) * kEps;
constexpr double kIspBound = (16.0 + 224.0 * kEps) * kEps;

int sign_of(double v) { return (v > 0.0) - (v < 0.0); }
int sign_of(const mpq_class& v) { return sgn(v); }

// (a-c) x (b-c); positive for counter-clockwise a, b, c.
int orient2d_exact(const Vec<2>& a, const Vec<2>& b, const Vec<2>& c) {
  const mpq_class acx = mpq_class(a[0]) - c[0];
  const mpq_class bcx = mpq_class(b[0]) - c[0];
  const mpq_class acy = mpq_class(a[1]) - c[1];
  const mpq_class bcy = mpq_class(b[1]) - c[1];
  return sign_of(acx * bcy - acy * bcx);
}

// det[a-d; b-d; c-d]; this is the negative of orient3d's convention.
template <typename T>
T orient3d_det(const T& adx, const T& ady, const T& adz, const T& bdx, const T& bdy,
               const T& bdz, const T& cdx, const T& cdy, const T& cdz) {
  return adz * (bdx * cdy - cdx * bdy) + bdz * (cdx * ady - adx * cdy) +
         cdz * (adx * bdy - bdx * ady);
}

int orient3d_lower_exact(const Vec<3>& a, const Vec<3>& b, const Vec<3>& c, const Vec<3>& d) {
  const mpq_class adx = mpq_class(a[0]) - d[0], ady = mpq_class(a[1]) - d[1],
                  adz = mpq_class(a[2]) - d[2];
  const mpq_class bdx = mpq_class(b[0]) - d[0], bdy = mpq_class(b[1]) - d[1],
                  bdz = mpq_class(b[2]) - d[2];
  const mpq_class cdx = mpq_class(c[0]) - d[0], cdy = mpq_class(c[1]) - d[1],
                  cdz = mpq_class(c[2]) - d[2];
  return sign_of(orient3d_det(adx, ady, adz, bdx, bdy, bdz, cdx, cdy, cdz));
}

// Shewchuk's orient3d sign: positive when d lies below the plane of the
// counter-clockwise triangle a, b, c.
int orient3d_lower(const Vec<3>& a, const Vec<3>& b, const Vec<3>& c, const Vec<3>& d) {
  const double adx = a[0] - d[0], bdx = b[0] - d[0], cdx = c[0] - d[0];
  const double ady = a[1] - d[1], bdy = b[1] - d[1], cdy = c[1] - d[1];
  const double adz = a[2] - d[2], bdz = b[2] - d[2], cdz = c[2] - d[2];

  const double bdxcdy = bdx * cdy, cdxbdy = cdx * bdy;
  const double cdxady = cdx * ady, adxcdy = adx * cdy;
  const double adxbdy = adx * bdy, bdxady = bdx * ady;

  const double det =
      adz * (bdxcdy - cdxbdy) + bdz * (cdxady - adxcdy) + cdz * (adxbdy - bdxady);
  const double permanent = (std::abs(bdxcdy) + std::abs(cdxbdy)) * std::abs(adz) +
                           (std::abs(cdxady) + std::abs(adxcdy)) * std::abs(bdz) +
                           (std::abs(adxbdy) + std::abs(bdxady)) * std::abs(cdz);
  const double errbound = kO3dBound * permanent;
  if (det > errbound || -det > errbound) return sign_of(det);
  return orient3d_lower_exact(a, b, c, d);
}

int incircle_exact(const Vec<2>& a, const Vec<2>& b, const Vec<2>& c, const Vec<2>& d) {
  const mpq_class adx = mpq_class(a[0]) - d[0], ady = mpq_class(a[1]) - d[1];
  const mpq_class bdx = mpq_class(b[0]) - d[0], bdy = mpq_class(b[1]) - d[1];
  const mpq_class cdx = mpq_class(c[0]) - d[0], cdy = mpq_class(c[1]) - d[1];
  const mpq_class alift = adx * adx + ady * ady;
  const mpq_class blift = bdx * bdx + bdy * bdy;
  const mpq_class clift = cdx * cdx + cdy * cdy;
  return sign_of(alift * (bdx * cdy - cdx * bdy) + blift * (cdx * ady - adx * cdy) +
                 clift * (adx * bdy - bdx * ady));
}

// Positive when d is inside the circle through counter-clockwise a, b, c.
int incircle_raw(const Vec<2>& a, const Vec<2>& b, const Vec<2>& c, const Vec<2>& d) {
  const double adx = a[0] - d[0], bdx = b[0] - d[0], cdx = c[0] - d[0];
  const double ady = a[1] - d[1], bdy = b[1] - d[1], cdy = c[1] - d[1];

  const double bdxcdy = bdx * cdy, cdxbdy = cdx * bdy;
  const double alift = adx * adx + ady * ady;
  const double cdxady = cdx * ady, adxcdy = adx * cdy;
  const double blift = bdx * bdx + bdy * bdy;
  const double adxbdy = adx * bdy, bdxady = bdx * ady;
  const double clift = cdx * cdx + cdy * cdy;

  const double det =
      alift * (bdxcdy - cdxbdy) + blift * (cdxady - adxcdy) + clift * (adxbdy - bdxady);
  const double permanent = (std::abs(bdxcdy) + std::abs(cdxbdy)) * alift +
                           (std::abs(cdxady) + std::abs(adxcdy)) * blift +
                           (std::abs(adxbdy) + std::abs(bdxady)) * clift;
  const double errbound = kIccBound * permanent;
  if (det > errbound || -det > errbound) return sign_of(det);
  return incircle_exact(a, b, c, d);
}

template <typename T>
T insphere_det(const T& aex, const T& aey, const T& aez, const T& bex, const T& bey,
               const T& bez, const T& cex, const T& cey, const T& cez, const T& dex,
               const T& dey, const T& dez) {
  const T ab = aex * bey - bex * aey;
  const T bc = bex * cey - cex * bey;
  const T cd = cex * dey - dex * cey;
  const T da = dex * aey - aex * dey;
  const T ac = aex * cey - cex * aey;
  const T bd = bex * dey - dex * bey;

  const T abc = aez * bc - bez * ac + cez * ab;
  const T bcd = bez * cd - cez * bd + dez * bc;
  const T cda = cez * da + dez * ac + aez * cd;
  const T dab = dez * ab + aez * bd + bez * da;

  const T alift = aex * aex + aey * aey + aez * aez;
  const T blift = bex * bex + bey * bey + bez * bez;
  const T clift = cex * cex + cey * cey + cez * cez;
  const T dlift = dex * dex + dey * dey + dez * dez;

  return (dlift * abc - clift * dab) + (blift * cda - alift * bcd);
}

int insphere_exact(const Vec<3>& a, const Vec<3>& b, const Vec<3>& c, const Vec<3>& d,
                   const Vec<3>& e) {
  auto diff = [&](const Vec<3>& p, int i) -> mpq_class { return mpq_class(p[i]) - e[i]; };
  return sign_of(insphere_det(diff(a, 0), diff(a, 1), diff(a, 2), diff(b, 0), diff(b, 1),
                              diff(b, 2), diff(c, 0), diff(c, 1), diff(c, 2), diff(d, 0),
                              diff(d, 1), diff(d, 2)));
}

// Positive when e is inside the sphere through a, b, c, d, given
// orient3d_lower(a, b, c, d) > 0.
int insphere_raw(const Vec<3>& a, const Vec<3>& b, const Vec<3>& c, const Vec<3>& d,
                 const Vec<3>& e) {
  const double aex = a[0] - e[0], bex = b[0] - e[0], cex = c[0] - e[0], dex = d[0] - e[0];
  const double aey = a[1] - e[1], bey = b[1] - e[1], cey = c[1] - e[1], dey = d[1] - e[1];
  const double aez = a[2] - e[2], bez = b[2] - e[2], cez = c[2] - e[2], dez = d[2] - e[2];

  const double aexbey = aex * bey, bexaey = bex * aey;
  const double bexcey = bex * cey, cexbey = cex * bey;
  const double cexdey = cex * dey, dexcey = dex * cey;
  const double dexaey = dex * aey, aexdey = aex * dey;
  const double aexcey = aex * cey, cexaey = cex * aey;
  const double bexdey = bex * dey, dexbey = dex * bey;

  const double ab = aexbey - bexaey;
  const double bc = bexcey - cexbey;
  const double cd = cexdey - dexcey;
  const double da = dexaey - aexdey;
  const double ac = aexcey - cexaey;
  const double bd = bexdey - dexbey;

  const double abc = aez * bc - bez * ac + cez * ab;
  const double bcd = bez * cd - cez * bd + dez * bc;
  const double cda = cez * da + dez * ac + aez * cd;
  const double dab = dez * ab + aez * bd + bez * da;

  const double alift = aex * aex + aey * aey + aez * aez;
  const double blift = bex * bex + bey * bey + bez * bez;
  const double clift = cex * cex + cey * cey + cez * cez;
  const double dlift = dex * dex + dey * dey + dez * dez;

  const double det = (dlift * abc - clift * dab) + (blift * cda - alift * bcd);

  const double aezp = std::abs(aez), bezp = std::abs(bez), cezp = std::abs(cez),
               dezp = std::abs(dez);
  const double aexbeyp = std::abs(aexbey), bexaeyp = std::abs(bexaey);
  const double bexceyp = std::abs(bexcey), cexbeyp = std::abs(cexbey);
  const double cexdeyp = std::abs(cexdey), dexceyp = std::abs(dexcey);
  const double dexaeyp = std::abs(dexaey), aexdeyp = std::abs(aexdey);
  const double aexceyp = std::abs(aexcey), cexaeyp = std::abs(cexaey);
  const double bexdeyp = std::abs(bexdey), dexbeyp = std::abs(dexbey);
  const double permanent =
      ((cexdeyp + dexceyp) * bezp + (dexbeyp + bexdeyp) * cezp + (bexceyp + cexbeyp) * dezp) *
          alift +
      ((dexaeyp + aexdeyp) * cezp + (aexceyp + cexaeyp) * dezp + (cexdeyp + dexceyp) * aezp) *
          blift +
      ((aexbeyp + bexaeyp) * dezp + (bexdeyp + dexbeyp) * aezp + (dexaeyp + aexdeyp) * bezp) *
          clift +
      ((bexceyp + cexbeyp) * aezp + (cexaeyp + aexceyp) * bezp + (aexbeyp + bexaeyp) * cezp) *
          dlift;
  const double errbound = kIspBound * permanent;
  if (det > errbound || -det > errbound) return sign_of(det);
  return insphere_exact(a, b, c, d, e);
}

// ---------------------------------------------------------------------------
// Circumspheres

template <int D>
Circumsphere<D> circumsphere_exact(std::span<const Vec<D>> v) {
  const int k = static_cast<int>(v.size()) - 1;
  std::vector<std::array<mpq_class, D>> u(k);
  for (int i = 0; i < k; ++i)
    for (int c = 0; c < D; ++c) u[i][c] = mpq_class(v[i + 1][c]) - v[0][c];

  // Gram system G x = b with G_ij = u_i . u_j and b_i = |u_i|^2 / 2.
  std::vector<std::vector<mpq_class>> g(k, std::vector<mpq_class>(k + 1));
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) {
      mpq_class s = 0;
      for (int c = 0; c < D; ++c) s += u[i][c] * u[j][c];
      g[i][j] = s;
    }
    mpq_class s = 0;
    for (int c = 0; c < D; ++c) s += u[i][c] * u[i][c];
    g[i][k] = s / 2;
  }
  for (int col = 0; col < k; ++col) {
    int pivot = -1;
    for (int r = col; r < k; ++r)
      if (sgn(g[r][col]) != 0) {
        pivot = r;
        break;
      }
    if (pivot < 0) throw GeometryError("degenerate simplex");
    std::swap(g[col], g[pivot]);
    for (int r = 0; r < k; ++r) {
      if (r == col || sgn(g[r][col]) == 0) continue;
      const mpq_class f = g[r][col] / g[col][col];
      for (int c = col; c <= k; ++c) g[r][c] -= f * g[col][c];
    }
  }
  std::array<mpq_class, D> off;
  for (int c = 0; c < D; ++c) off[c] = 0;
  for (int i = 0; i < k; ++i) {
    const mpq_class x = g[i][k] / g[i][i];
    for (int c = 0; c < D; ++c) off[c] += x * u[i][c];
  }
  mpq_class r2 = 0;
  for (int c = 0; c < D; ++c) r2 += off[c] * off[c];

  Circumsphere<D> out;
  for (int c = 0; c < D; ++c) out.center[c] = mpq_class(off[c] + v[0][c]).get_d();
  out.radius_sq = r2.get_d();
  out.radius = std::sqrt(out.radius_sq);
  return out;
}

// Floating-point circumsphere; `ill_conditioned` is set when the Gram
// determinant is tiny relative to the product of its diagonal.
template <int D>
Circumsphere<D> circumsphere_float(std::span<const Vec<D>> v, bool& ill_conditioned) {
  const int k = static_cast<int>(v.size()) - 1;
  Circumsphere<D> out;
  out.center = v[0];
  ill_conditioned = false;
  if (k == 0) return out;

  std::array<Vec<D>, D> u{};
  for (int i = 0; i < k; ++i)
    for (int c = 0; c < D; ++c) u[i][c] = v[i + 1][c] - v[0][c];

  double g[D][D + 1];
  double diag_product = 1.0;
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) {
      double s = 0.0;
      for (int c = 0; c < D; ++c) s += u[i][c] * u[j][c];
      g[i][j] = s;
    }
    g[i][k] = 0.5 * g[i][i];
    diag_product *= g[i][i];
  }

  // Gaussian elimination with partial pivoting; the pivot product is det(G).
  double det = 1.0;
  for (int col = 0; col < k; ++col) {
    int pivot = col;
    for (int r = col + 1; r < k; ++r)
      if (std::abs(g[r][col]) > std::abs(g[pivot][col])) pivot = r;
    if (pivot != col)
      for (int c = 0; c <= k; ++c) std::swap(g[col][c], g[pivot][c]);
    det *= g[col][col];
    if (g[col][col] == 0.0) {
      ill_conditioned = true;
      return out;
    }
    for (int r = col + 1; r < k; ++r) {
      const double f = g[r][col] / g[col][col];
      for (int c = col; c <= k; ++c) g[r][c] -= f * g[col][c];
    }
  }
  if (!(std::abs(det) > 1e-8 * diag_product)) {
    ill_conditioned = true;
    return out;
  }
  double x[D];
  for (int i = k - 1; i >= 0; --i) {
    double s = g[i][k];
    for (int j = i + 1; j < k; ++j) s -= g[i][j] * x[j];
    x[i] = s / g[i][i];
  }
  Vec<D> off{};
  for (int i = 0; i < k; ++i)
    for (int c = 0; c < D; ++c) off[c] += x[i] * u[i][c];
  double r2 = 0.0;
  for (int c = 0; c < D; ++c) {
    out.center[c] = v[0][c] + off[c];
    r2 += off[c] * off[c];
  }
  out.radius_sq = r2;
  out.radius = std::sqrt(r2);
  return out;
}

template <int D>
int in_smallest_exact(std::span<const Vec<D>> v, const Vec<D>& p) {
  const int k = static_cast<int>(v.size()) - 1;
  std::vector<std::array<mpq_class, D>> u(k);
  for (int i = 0; i < k; ++i)
    for (int c = 0; c < D; ++c) u[i][c] = mpq_class(v[i + 1][c]) - v[0][c];
  std::vector<std::vector<mpq_class>> g(k, std::vector<mpq_class>(k + 1));
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) {
      mpq_class s = 0;
      for (int c = 0; c < D; ++c) s += u[i][c] * u[j][c];
      g[i][j] = s;
    }
    mpq_class s = 0;
    for (int c = 0; c < D; ++c) s += u[i][c] * u[i][c];
    g[i][k] = s / 2;
  }
  for (int col = 0; col < k; ++col) {
    int pivot = -1;
    for (int r = col; r < k; ++r)
      if (sgn(g[r][col]) != 0) {
        pivot = r;
        break;
      }
    if (pivot < 0) throw GeometryError("degenerate simplex");
    std::swap(g[col], g[pivot]);
    for (int r = 0; r < k; ++r) {
      if (r == col || sgn(g[r][col]) == 0) continue;
      const mpq_class f = g[r][col] / g[col][col];
      for (int c = col; c <= k; ++c) g[r][c] -= f * g[col][c];
    }
  }
  std::array<mpq_class, D> off;
  for (int c = 0; c < D; ++c) off[c] = 0;
  for (int i = 0; i < k; ++i) {
    const mpq_class x = g[i][k] / g[i][i];
    for (int c = 0; c < D; ++c) off[c] += x * u[i][c];
  }
  // |p - center|^2 - r^2 with center = v0 + off and r^2 = |off|^2.
  mpq_class s = 0;
  for (int c = 0; c < D; ++c) {
    const mpq_class w = mpq_class(p[c]) - v[0][c];
    s += w * w - 2 * w * off[c];
  }
  return -sgn(s);
}

}  // namespace

int orient2d(const Vec<2>& a, const Vec<2>& b, const Vec<2>& c) {
  const double detleft = (a[0] - c[0]) * (b[1] - c[1]);
  const double detright = (a[1] - c[1]) * (b[0] - c[0]);
  const double det = detleft - detright;
  const double errbound = kCcwBound * (std::abs(detleft) + std::abs(detright));
  if (det > errbound || -det > errbound) return sign_of(det);
  return orient2d_exact(a, b, c);
}

int orient3d(const Vec<3>& a, const Vec<3>& b, const Vec<3>& c, const Vec<3>& d) {
  return -orient3d_lower(a, b, c, d);
}

int in_circle(const Vec<2>& a, const Vec<2>& b, const Vec<2>& c, const Vec<2>& q) {
  const int o = orient2d(a, b, c);
  if (o == 0) throw GeometryError("flat simplex");
  return o * incircle_raw(a, b, c, q);
}

int in_sphere(const Vec<3>& a, const Vec<3>& b, const Vec<3>& c, const Vec<3>& d,
              const Vec<3>& q) {
  const int o = orient3d_lower(a, b, c, d);
  if (o == 0) throw GeometryError("flat simplex");
  return o * insphere_raw(a, b, c, d, q);
}

template <int D>
int in_sphere_perturbed(const std::array<Vec<D>, D + 1>& s,
                        const std::array<std::uint64_t, D + 1>& keys, const Vec<D>& q,
                        std::uint64_t qkey) {
  const int exact = in_sphere<D>(s, q);
  if (exact != 0) return exact;

  const int base = orient<D>(s);
  std::array<int, D + 2> order;
  std::iota(order.begin(), order.end(), 0);
  auto key_of = [&](int i) { return i == D + 1 ? qkey : keys[i]; };
  std::sort(order.begin(), order.end(), [&](int x, int y) { return key_of(x) < key_of(y); });

  for (const int i : order) {
    if (i == D + 1) return -1;  // raising q pushes it outside
    std::array<Vec<D>, D + 1> t = s;
    t[i] = q;
    // Sign of q's barycentric coordinate for vertex i.
    const int bary = orient<D>(t) * base;
    if (bary != 0) return bary;
  }
  return -1;  // unreachable: q's own term is always nonzero
}

template <int D>
Circumsphere<D> circumsphere(std::span<const Vec<D>> vertices) {
  if (vertices.empty() || static_cast<int>(vertices.size()) > D + 1)
    throw GeometryError("circumsphere: expected 1..D+1 vertices");
  bool ill = false;
  const Circumsphere<D> fast = circumsphere_float<D>(vertices, ill);
  if (!ill) return fast;
  return circumsphere_exact<D>(vertices);
}

template <int D>
int in_smallest_circumsphere(std::span<const Vec<D>> face, const Vec<D>& p) {
  if (static_cast<int>(face.size()) == D + 1) {
    std::array<Vec<D>, D + 1> s;
    std::copy(face.begin(), face.end(), s.begin());
    return in_sphere<D>(s, p);
  }
  bool ill = false;
  const Circumsphere<D> cs = circumsphere_float<D>(face, ill);
  if (!ill) {
    const double d2 = distance_sq<D>(p, cs.center);
    const double margin = cs.radius_sq - d2;
    if (std::abs(margin) > 1e-9 * (cs.radius_sq + d2)) return margin > 0.0 ? 1 : -1;
  }
  return in_smallest_exact<D>(face, p);
}

template int in_sphere_perturbed<2>(const std::array<Vec<2>, 3>&,
                                    const std::array<std::uint64_t, 3>&, const Vec<2>&,
                                    std::uint64_t);
template int in_sphere_perturbed<3>(const std::array<Vec<3>, 4>&,
                                    const std::array<std::uint64_t, 4>&, const Vec<3>&,
                                    std::uint64_t);
template Circumsphere<2> circumsphere<2>(std::span<const Vec<2>>);
template Circumsphere<3> circumsphere<3>(std::span<const Vec<3>>);
template int in_smallest_circumsphere<2>(std::span<const Vec<2>>, const Vec<2>&);
template int in_smallest_circumsphere<3>(std::span<const Vec<3>>, const Vec<3>&);

}  // namespace betti
