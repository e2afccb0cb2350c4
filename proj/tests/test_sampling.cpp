#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <boost/math/distributions/chi_squared.hpp>
#include <cmath>
#include <stdexcept>

#include "betti/sampling.hpp"

using namespace betti;

TEST_CASE("Poisson counts") {
  auto rng = make_rng({1, 0});
  for (int i = 0; i < 100; ++i) CHECK(sample_count(0.0, rng) == 0);
  CHECK_THROWS_WITH_AS(sample_count(-1.0, rng), "Poisson mean must be nonnegative", std::invalid_argument);

  {
    double s = 0, s2 = 0;
    const int n = 1000000;
    for (int i = 0; i < n; ++i) {
      const double x = static_cast<double>(sample_count(4.0, rng));
      s += x;
      s2 += x * x;
    }
    const double mean = s / n, var = s2 / n - mean * mean;
    CHECK(std::abs(mean - 4) < 0.01);
    CHECK(std::abs(var - 4) < 0.05);
  }
  {
    double s = 0;
    const int n = 10000;
    for (int i = 0; i < n; ++i) s += static_cast<double>(sample_count(1e5, rng));
    CHECK(std::abs(s / n - 1e5) < 50);
  }
  // Inversion must not underflow just below the cutoff.
  double s = 0;
  for (int i = 0; i < 2000; ++i) s += static_cast<double>(sample_count(900.0, rng));
  CHECK(std::abs(s / 2000 - 900) < 5 * std::sqrt(900.0 / 2000));
}

TEST_CASE("uniform points") {
  auto rng = make_rng({2, 0});
  CHECK(sample_points(0, 2, rng).empty());

  const auto ps = sample_points(10000, 2, rng);
  REQUIRE(ps.size() == 10000);
  for (int c = 0; c < 2; ++c) {
    double m = 0;
    for (std::size_t i = 0; i < ps.size(); ++i) m += ps.coords[i * 2 + c];
    CHECK(std::abs(m / 1e4 - 0.5) < 0.015);
  }
  for (const double x : ps.coords) CHECK((x >= 0.0 && x < 1.0));
  for (std::size_t i = 0; i < ps.size(); ++i) CHECK(ps.labels[i] == static_cast<std::int32_t>(i));
}

TEST_CASE("chi-square uniformity on 10x10 bins") {
  auto rng = make_rng({3, 0});
  const int n = 100000;
  const auto ps = sample_points(n, 2, rng);
  std::vector<int> bins(100, 0);
  for (int i = 0; i < n; ++i)
    ++bins[static_cast<int>(ps.coords[2 * i] * 10) * 10 + static_cast<int>(ps.coords[2 * i + 1] * 10)];
  double chi2 = 0;
  for (const int b : bins) chi2 += (b - 1000.0) * (b - 1000.0) / 1000.0;
  const double crit = boost::math::quantile(boost::math::chi_squared(99), 1 - 1e-3);
  CHECK(chi2 < crit);
}

TEST_CASE("determinism and stream independence") {
  const auto a = sample_poisson(500, 3, {42, 7});
  const auto b = sample_poisson(500, 3, {42, 7});
  CHECK(a.coords == b.coords);
  CHECK(a.labels == b.labels);
  CHECK(a.master_seed == 42);
  CHECK(a.stream_index == 7);
  CHECK(sample_poisson(500, 3, {42, 8}).coords != a.coords);
  CHECK(sample_poisson(500, 3, {43, 7}).coords != a.coords);

  // Same stream drawn after others gives the same result.
  for (int s = 0; s < 7; ++s) (void)sample_poisson(500, 3, {42, static_cast<std::uint64_t>(s)});
  CHECK(sample_poisson(500, 3, {42, 7}).coords == a.coords);

  auto r1 = make_rng({9, 9});
  auto r2 = make_rng({9, 9});
  for (int i = 0; i < 100; ++i) CHECK(standard_normal(r1) == standard_normal(r2));
}
