#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "betti/periodic.hpp"

using namespace betti;

namespace {

PointSet random_points(int d, int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  PointSet ps;
  ps.dim = d;
  std::vector<double> x(d);
  for (int i = 0; i < n; ++i) {
    for (auto& c : x) c = static_cast<double>(rng() >> 12) * 0x1p-52;
    ps.push_back(x, i);
  }
  return ps;
}

// Canonical simplices as sorted (label, shift relative to the smallest
// vertex) tuples; independent of which translate represents each simplex.
std::vector<std::vector<long>> orbits(const SimplicialComplex& k, const PointSet& base, int dim) {
  std::vector<std::vector<long>> out;
  const int d = k.dim;
  for (std::size_t i = 0; i < k.count(dim); ++i) {
    std::vector<std::vector<long>> verts;
    for (const auto v : k.tables[dim].simplex(i)) {
      const auto l = k.point_label[v];
      std::vector<long> e{l};
      for (int c = 0; c < d; ++c)
        e.push_back(std::lround(k.coords[v * d + c] - base.coords[l * d + c]));
      verts.push_back(e);
    }
    std::sort(verts.begin(), verts.end());
    std::vector<long> key;
    for (const auto& e : verts) {
      key.push_back(e[0]);
      for (int c = 1; c <= d; ++c) key.push_back(e[c] - verts[0][c]);
    }
    out.push_back(key);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::vector<std::int32_t>> label_tuples(const SimplicialComplex& k, int dim) {
  std::vector<std::vector<std::int32_t>> out;
  for (std::size_t i = 0; i < k.count(dim); ++i) out.push_back(k.label_tuple(dim, i));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("half-cube translation of a single point") {
  PointSet ps;
  ps.dim = 2;
  ps.push_back(std::vector<double>{0.25, 0.25}, 0);
  const auto t = translate_points(ps);
  REQUIRE(t.points.size() == 4);
  std::vector<std::vector<double>> got;
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(t.points.labels[i] == 0);
    got.push_back({t.points.coords[2 * i], t.points.coords[2 * i + 1]});
  }
  std::sort(got.begin(), got.end());
  const std::vector<std::vector<double>> want{{0.25, 0.25}, {0.25, 1.25}, {1.25, 0.25}, {1.25, 1.25}};
  CHECK(got == want);

  PointSet hi;
  hi.dim = 2;
  hi.push_back(std::vector<double>{0.75, 0.1}, 0);
  const auto th = translate_points(hi);
  CHECK(th.points.coords[2] == doctest::Approx(-0.25));  // mask 1: x shifted down
  CHECK(th.points.coords[5] == doctest::Approx(1.1));    // mask 2: y shifted up
}

TEST_CASE("translation sizes and labels") {
  const auto ps = random_points(3, 100, 4);
  const auto t = translate_points(ps);
  CHECK(t.points.size() == 800);
  std::vector<int> count(100, 0);
  for (const auto l : t.points.labels) ++count[l];
  CHECK(std::all_of(count.begin(), count.end(), [](int c) { return c == 8; }));
  CHECK(translate_points(ps, Translation::kFull).points.size() == 2700);

  PointSet empty;
  empty.dim = 2;
  CHECK_THROWS_WITH(translate_points(empty), "empty point set");
  PointSet bad;
  bad.dim = 2;
  bad.push_back(std::vector<double>{0.5, 1.0}, 0);
  CHECK_THROWS(translate_points(bad));
}

TEST_CASE("closed-manifold counts") {
  for (const int n : {50, 120, 400}) {
    const auto k2 = build_periodic(random_points(2, n, n));
    CHECK(k2.count(0) == static_cast<std::size_t>(n));
    CHECK(k2.count(1) == static_cast<std::size_t>(3 * n));
    CHECK(k2.count(2) == static_cast<std::size_t>(2 * n));
    CHECK(k2.topology == Topology::kTorus);

    const auto k3 = build_periodic(random_points(3, n, n + 1));
    CHECK(k3.count(0) == static_cast<std::size_t>(n));
    CHECK(k3.count(2) == 2 * k3.count(3));
    CHECK(k3.count(1) == k3.count(0) + k3.count(3));
    for (std::size_t f = 0; f < k3.count(2); ++f) CHECK(k3.tables[2].cofacets_of(f).size() == 2);
  }
}

TEST_CASE("canonical vertex labels biject with the input") {
  const auto k = build_periodic(random_points(2, 80, 9));
  std::vector<std::int32_t> labels;
  for (std::size_t i = 0; i < k.count(0); ++i) labels.push_back(k.label_tuple(0, i)[0]);
  std::sort(labels.begin(), labels.end());
  for (int i = 0; i < 80; ++i) CHECK(labels[i] == i);
}

TEST_CASE("half-cube complex equals the full-translation reference") {
  std::mt19937_64 rng(2024);
  int half_used = 0;
  for (int t = 0; t < 20; ++t) {
    const int d = 2 + t % 2;
    const int n = 50 + static_cast<int>(rng() % 451);
    const auto ps = random_points(d, n, rng());
    const auto built = build_periodic(ps);
    const auto full = canonicalize(translate_points(ps, Translation::kFull));
    CHECK(full.full_translation);
    CHECK(full.max_circumradius < 0.5);
    half_used += built.full_translation ? 0 : 1;
    for (int k = 0; k <= d; ++k) CHECK(orbits(built, ps, k) == orbits(full, ps, k));
  }
  // Small 3D instances may need the fallback; most should not.
  CHECK(half_used >= 15);
}

TEST_CASE("large circumspheres force the full construction") {
  // Three points leave huge empty circles on the torus.
  PointSet ps;
  ps.dim = 2;
  ps.push_back(std::vector<double>{0.1, 0.2}, 0);
  ps.push_back(std::vector<double>{0.6, 0.55}, 1);
  ps.push_back(std::vector<double>{0.3, 0.8}, 2);
  try {
    const auto k = build_periodic(ps);
    CHECK(k.full_translation);
  } catch (const PeriodicIntegrityError& e) {
    CHECK(std::string(e.what()).find("periodic integrity failure") == 0);
  }
}

TEST_CASE("independent of the fundamental domain's origin") {
  std::mt19937_64 rng(77);
  for (const int d : {2, 3}) {
    const auto ps = random_points(d, 150, 31 + d);
    const auto ref = build_periodic(ps);
    for (int r = 0; r < 10; ++r) {
      PointSet shifted = ps;
      std::vector<double> s(d);
      for (auto& c : s) c = static_cast<double>(rng() >> 12) * 0x1p-52;
      for (std::size_t i = 0; i < ps.size(); ++i)
        for (int c = 0; c < d; ++c) {
          double x = ps.coords[i * d + c] + s[c];
          if (x >= 1.0) x -= 1.0;
          shifted.coords[i * d + c] = x;
        }
      const auto k = build_periodic(shifted);
      for (int dim = 0; dim <= d; ++dim) CHECK(label_tuples(k, dim) == label_tuples(ref, dim));
    }
  }
}

TEST_CASE("centroid on the far face is excluded") {
  // A lattice-like set where some edge midpoints land exactly on x = 1 and
  // x = 0: only the x = 0 representative is kept, so counts still close up.
  PointSet ps;
  ps.dim = 2;
  int l = 0;
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j)
      ps.push_back(std::vector<double>{i / 8.0 + (j % 2) / 16.0, j / 8.0 + i / 256.0}, l++);
  const auto k = build_periodic(ps);
  CHECK(k.count(1) == 3 * 64);
  CHECK(k.count(2) == 2 * 64);
}
