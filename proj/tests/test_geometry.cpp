#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>
#include <gmpxx.h>

#include <cmath>
#include <random>
#include <vector>

#include "betti/geometry.hpp"

using namespace betti;

namespace {

int sgn(const mpq_class& x) { return x > 0 ? 1 : (x < 0 ? -1 : 0); }

// Reference determinants evaluated directly in rationals, written out
// independently of the library's expansions.
int ref_orient2d(const Vec<2>& a, const Vec<2>& b, const Vec<2>& c) {
  const mpq_class ux = mpq_class(b[0]) - a[0], uy = mpq_class(b[1]) - a[1];
  const mpq_class vx = mpq_class(c[0]) - a[0], vy = mpq_class(c[1]) - a[1];
  return sgn(ux * vy - uy * vx);
}

mpq_class det3(const mpq_class m[3][3]) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
         m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

int ref_orient3d(const Vec<3>& a, const Vec<3>& b, const Vec<3>& c, const Vec<3>& d) {
  mpq_class m[3][3];
  const Vec<3>* r[3] = {&b, &c, &d};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m[i][j] = mpq_class((*r[i])[j]) - a[j];
  return sgn(det3(m));
}

// Sign of |q - centre|^2 < R^2, with the centre solved exactly.
int ref_in_circle(const Vec<2>& a, const Vec<2>& b, const Vec<2>& c, const Vec<2>& q) {
  // Lifted determinant, normalized by orientation.
  const Vec<2>* p[3] = {&a, &b, &c};
  mpq_class m[3][3];
  for (int i = 0; i < 3; ++i) {
    const mpq_class x = mpq_class((*p[i])[0]) - q[0], y = mpq_class((*p[i])[1]) - q[1];
    m[i][0] = x;
    m[i][1] = y;
    m[i][2] = x * x + y * y;
  }
  return sgn(det3(m)) * ref_orient2d(a, b, c);
}

double jitter(std::mt19937_64& rng, double x) {
  // Perturb by a few ulps, or not at all.
  const int k = static_cast<int>(rng() % 7) - 3;
  for (int i = 0; i < std::abs(k); ++i) x = std::nextafter(x, k > 0 ? 2.0 : -2.0);
  return x;
}

}  // namespace

TEST_CASE("orient examples") {
  CHECK(orient2d({0, 0}, {1, 0}, {0, 1}) == 1);
  CHECK(orient2d({0, 0}, {1, 0}, {2, 0}) == 0);
  CHECK(orient3d({0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}) == 1);
  CHECK(orient3d({0, 0, 0}, {0, 1, 0}, {1, 0, 0}, {0, 0, 1}) == -1);
}

TEST_CASE("in_circle examples") {
  CHECK(in_circle({0, 0}, {1, 0}, {0, 1}, {1, 1}) == 0);
  CHECK(in_circle({0, 0}, {1, 0}, {0, 1}, {0.5, 0.5}) == 1);
  CHECK(in_circle({0, 0}, {1, 0}, {0, 1}, {2, 2}) == -1);
  // Orientation of the triangle does not matter.
  CHECK(in_circle({0, 0}, {0, 1}, {1, 0}, {0.5, 0.5}) == 1);
  CHECK_THROWS_WITH_AS(in_circle({0, 0}, {1, 0}, {2, 0}, {0.5, 0.5}), "flat simplex",
                       GeometryError);
}

TEST_CASE("in_sphere examples") {
  const Vec<3> a{0, 0, 0}, b{1, 0, 0}, c{0, 1, 0}, d{0, 0, 1};
  CHECK(in_sphere(a, b, c, d, {0.25, 0.25, 0.25}) == 1);
  CHECK(in_sphere(a, b, c, d, {1, 1, 1}) == 0);
  CHECK(in_sphere(a, c, b, d, {1, 1, 1.0001}) == -1);
  CHECK_THROWS_AS(in_sphere(a, b, c, {1, 1, 0}, {0.2, 0.2, 0.2}), GeometryError);
}

TEST_CASE("predicates agree with rational evaluation on near-degenerate inputs") {
  std::mt19937_64 rng(12345);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int zeros = 0;
  for (int t = 0; t < 100000; ++t) {
    // Points on a common line or circle, then nudged by a few ulps.
    // Dyadic inputs keep the unperturbed point exactly on the line.
    auto dy = [&] { return std::floor(u(rng) * 1024) / 1024; };
    const Vec<2> a{dy(), dy()}, b{dy(), dy()};
    const double s = std::floor(u(rng) * 24 - 8) / 8;
    Vec<2> c{a[0] + s * (b[0] - a[0]), a[1] + s * (b[1] - a[1])};
    c = {jitter(rng, c[0]), jitter(rng, c[1])};
    const int o = orient2d(a, b, c);
    REQUIRE(o == ref_orient2d(a, b, c));
    zeros += o == 0;

    const double th[4] = {u(rng) * 6.283, u(rng) * 6.283, u(rng) * 6.283, u(rng) * 6.283};
    const Vec<2> ctr{u(rng), u(rng)};
    const double r = 0.1 + u(rng);
    Vec<2> p[4];
    for (int i = 0; i < 4; ++i)
      p[i] = {jitter(rng, ctr[0] + r * std::cos(th[i])), jitter(rng, ctr[1] + r * std::sin(th[i]))};
    if (ref_orient2d(p[0], p[1], p[2]) != 0) REQUIRE(in_circle(p[0], p[1], p[2], p[3]) ==
                                                     ref_in_circle(p[0], p[1], p[2], p[3]));
  }
  CHECK(zeros > 0);

  for (int t = 0; t < 100000; ++t) {
    const Vec<3> a{u(rng), u(rng), u(rng)}, b{u(rng), u(rng), u(rng)}, c{u(rng), u(rng), u(rng)};
    const double s = u(rng), w = u(rng);
    Vec<3> d;
    for (int i = 0; i < 3; ++i) d[i] = jitter(rng, a[i] + s * (b[i] - a[i]) + w * (c[i] - a[i]));
    REQUIRE(orient3d(a, b, c, d) == ref_orient3d(a, b, c, d));
  }
}

TEST_CASE("in_sphere agrees with rational evaluation on near-cospherical inputs") {
  std::mt19937_64 rng(777);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int t = 0; t < 20000; ++t) {
    // Small integer-ish coordinates make exact cosphericity common.
    Vec<3> p[5];
    for (auto& x : p)
      for (auto& c : x) c = static_cast<double>(static_cast<int>(u(rng) * 3));
    if (ref_orient3d(p[0], p[1], p[2], p[3]) == 0) continue;
    // Solve for the centre exactly (Cramer) and compare squared distances.
    mpq_class m[3][3], rhs[3];
    for (int i = 0; i < 3; ++i) {
      rhs[i] = 0;
      for (int j = 0; j < 3; ++j) {
        m[i][j] = 2 * (mpq_class(p[i + 1][j]) - p[0][j]);
        rhs[i] += mpq_class(p[i + 1][j]) * p[i + 1][j] - mpq_class(p[0][j]) * p[0][j];
      }
    }
    const mpq_class den = det3(m);
    mpq_class ctr[3];
    for (int c = 0; c < 3; ++c) {
      mpq_class mc[3][3];
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) mc[i][j] = j == c ? rhs[i] : m[i][j];
      ctr[c] = det3(mc) / den;
    }
    mpq_class r2 = 0, q2 = 0;
    for (int j = 0; j < 3; ++j) {
      r2 += (p[0][j] - ctr[j]) * (p[0][j] - ctr[j]);
      q2 += (p[4][j] - ctr[j]) * (p[4][j] - ctr[j]);
    }
    const int expect = sgn(r2 - q2);
    REQUIRE(in_sphere(p[0], p[1], p[2], p[3], p[4]) == expect);
  }
}

TEST_CASE("circumsphere examples") {
  const double h = std::sqrt(3.0) / 2;
  const std::vector<Vec<2>> tri{{0, 0}, {1, 0}, {0.5, h}};
  CHECK(circumsphere<2>(tri).radius == doctest::Approx(1 / std::sqrt(3.0)).epsilon(1e-12));

  const std::vector<Vec<3>> edge{{0, 0, 0}, {1, 0, 0}};
  const auto e = circumsphere<3>(edge);
  CHECK(e.radius == doctest::Approx(0.5));
  CHECK(e.center[0] == doctest::Approx(0.5));
  CHECK(std::abs(e.center[1]) < 1e-15);

  const std::vector<Vec<3>> tet{{0, 0, 0}, {1, 0, 0}, {0.5, h, 0}, {0.5, h / 3, std::sqrt(2.0 / 3.0)}};
  CHECK(circumsphere<3>(tet).radius == doctest::Approx(std::sqrt(6.0) / 4).epsilon(1e-12));

  const std::vector<Vec<3>> flat{{0, 0, 0}, {1, 0, 0}, {2, 0, 0}};
  CHECK_THROWS_WITH_AS(circumsphere<3>(flat), "degenerate simplex", GeometryError);
}

TEST_CASE("circumsphere: rigid-motion invariance and face monotonicity") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int t = 0; t < 2000; ++t) {
    std::vector<Vec<3>> s(4);
    for (auto& p : s) p = {u(rng), u(rng), u(rng)};
    const double r = circumsphere<3>(s).radius;

    const double a = u(rng) * 6.283, b = u(rng) * 6.283;
    std::vector<Vec<3>> m(4);
    for (int i = 0; i < 4; ++i) {
      const auto& p = s[i];
      const double x = std::cos(a) * p[0] - std::sin(a) * p[1];
      const double y = std::sin(a) * p[0] + std::cos(a) * p[1];
      m[i] = {x + 0.3, std::cos(b) * y - std::sin(b) * p[2] - 0.7,
              std::sin(b) * y + std::cos(b) * p[2] + 2.0};
    }
    CHECK(circumsphere<3>(m).radius == doctest::Approx(r).epsilon(1e-9));

    for (int skip = 0; skip < 4; ++skip) {
      std::vector<Vec<3>> f;
      for (int i = 0; i < 4; ++i)
        if (i != skip) f.push_back(s[i]);
      CHECK(circumsphere<3>(f).radius <= r * (1 + 1e-12));
    }
  }
}

TEST_CASE("smallest circumsphere membership") {
  const std::vector<Vec<2>> edge{{0, 0}, {1, 0}};
  CHECK(in_smallest_circumsphere<2>(edge, {0.5, 0.4}) == 1);
  CHECK(in_smallest_circumsphere<2>(edge, {0.5, 0.5}) == 0);
  CHECK(in_smallest_circumsphere<2>(edge, {0.5, 0.6}) == -1);
  const std::vector<Vec<3>> tri{{0, 0, 0}, {1, 0, 0}, {0, 1, 0}};
  CHECK(in_smallest_circumsphere<3>(tri, {0.5, 0.5, 0.7}) == 1);
  CHECK(in_smallest_circumsphere<3>(tri, {0.5, 0.5, 0.71}) == -1);
}

TEST_CASE("perturbed in_sphere breaks ties consistently") {
  const std::array<Vec<2>, 3> s{Vec<2>{0, 0}, Vec<2>{1, 0}, Vec<2>{0, 1}};
  const std::array<std::uint64_t, 3> k{0, 1, 2};
  const Vec<2> q{1, 1};
  const int r = in_sphere_perturbed<2>(s, k, q, 3);
  CHECK(r != 0);
  // Flipping the roles (q into the triangle, a vertex out) gives the
  // complementary answer: exactly one of the two diagonals of the square wins.
  const std::array<Vec<2>, 3> s2{Vec<2>{1, 0}, Vec<2>{0, 1}, Vec<2>{1, 1}};
  const std::array<std::uint64_t, 3> k2{1, 2, 3};
  CHECK(in_sphere_perturbed<2>(s2, k2, Vec<2>{0, 0}, 0) == r);
  CHECK(in_sphere_perturbed<2>(s, k, Vec<2>{0.5, 0.5}, 3) == 1);
}
