#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "betti/analytic.hpp"

using namespace betti;
namespace c = betti::constants;

TEST_CASE("unit ball volumes and eta") {
  CHECK(unit_ball_volume(1) == 2.0);
  CHECK(unit_ball_volume(2) == doctest::Approx(c::kPi));
  CHECK(unit_ball_volume(3) == doctest::Approx(4 * c::kPi / 3));
  CHECK(eta_from_alpha(2, 0.1, 100) == doctest::Approx(c::kPi));
  CHECK(alpha_from_eta(3, eta_from_alpha(3, 0.07, 1000), 1000) == doctest::Approx(0.07));
}

TEST_CASE("Euler characteristic densities") {
  CHECK(euler_density(2, 0) == 1.0);
  CHECK(euler_density(2, 1) == 0.0);
  CHECK(euler_density(3, 1) == doctest::Approx(-0.39524).epsilon(1e-4));
  CHECK(euler_density(3, 1) == doctest::Approx((3 * c::kPi * c::kPi / 32 - 2) / std::exp(1.0)));
  CHECK(euler_density(1, 0.5) == doctest::Approx(std::exp(-0.5)));
}

TEST_CASE("beta0 series") {
  CHECK(beta0_series(2).coefficients == std::vector<double>{1, -2, 1.5641, -0.6878, 0.2197});
  CHECK(beta0_series(3).coefficients == std::vector<double>{1, -4, 5, -2.7431, 1.3646});
  CHECK(beta0_series(2, 0.0) == 1.0);
  CHECK(beta0_series(2, 0.1) == doctest::Approx(1 - 0.2 + 0.015641 - 0.0006878 + 0.00002197));
}

TEST_CASE("cluster tables sum to the beta0 series") {
  for (const int d : {2, 3}) {
    std::vector<double> sum(5, 0.0);
    for (int k = 1; k <= 5; ++k) {
      const auto row = rho_k_series(d, k);
      REQUIRE(row.coefficients.size() == 5);
      // Row k starts at eta^(k-1).
      for (int j = 0; j < k - 1; ++j) CHECK(row.coefficients[j] == 0.0);
      CHECK(row.coefficients[k - 1] != 0.0);
      for (int j = 0; j < 5; ++j) sum[j] += row.coefficients[j];
    }
    const auto b = beta0_series(d).coefficients;
    for (int j = 0; j < 5; ++j) CHECK(sum[j] == doctest::Approx(b[j]).epsilon(2e-4).scale(1));
  }
  CHECK(rho_k_series(2, 2).coefficients == std::vector<double>{0, 2, -11.3079, 32.2915, -62.0415});
  CHECK(rho_k_series(3, 3).coefficients == std::vector<double>{0, 0, 22, -359.4203, 2959.1209});
  CHECK(rho_k_series(2, 1)(0.0) == 1.0);
  CHECK_THROWS_WITH_AS(rho_k_series(2, 6), "not tabulated", std::invalid_argument);
  CHECK_THROWS_AS(rho_k_series(2, 0), std::invalid_argument);
}

TEST_CASE("leading-order Betti terms") {
  CHECK(betti_leading(2, 1, 0.1) == doctest::Approx(0.000640));
  CHECK(betti_leading(3, 1, 0.1) == doctest::Approx(0.005747));
  CHECK(betti_leading(3, 2, 0.1) == doctest::Approx(1.5e-5));
  CHECK_THROWS_WITH_AS(betti_leading(2, 2, 0.1), "no asymptotic available", std::invalid_argument);
  CHECK_THROWS_AS(betti_leading_order(3, 0), std::invalid_argument);
}

TEST_CASE("consistency with the Euler expansions") {
  // eta^2 coefficients of exp(-eta) (1 - eta) and exp(-eta) (1 - 3 eta + 3 pi^2/32 eta^2).
  const double chi2 = 0.5 + 1.0;
  const double chi3 = 0.5 + 3.0 + 3 * c::kPi * c::kPi / 32;
  CHECK(std::abs(beta0_series(2).coefficients[2] - chi2 - 0.0641) <= 0.0002);
  CHECK(std::abs(beta0_series(3).coefficients[2] - chi3 - 0.5747) <= 0.001);
  CHECK(std::abs(std::sqrt(3.0) * c::kA / 64 * (4 - c::kPi * c::kPi / 4) - 0.5747) <= 0.0001);

  // The same checks numerically: (beta0 - chi) / eta^2 as eta -> 0.
  const double eta = 1e-3;
  CHECK((beta0_series(2, eta) - euler_density(2, eta)) / (eta * eta) == doctest::Approx(0.0641).epsilon(0.02));
  CHECK((beta0_series(3, eta) - euler_density(3, eta)) / (eta * eta) == doctest::Approx(0.5747).epsilon(0.02));
}

TEST_CASE("named constants") {
  CHECK(c::kTheta0 == doctest::Approx(std::acos(1.0 / 3.0)).epsilon(1e-15));
  CHECK(c::kA == doctest::Approx(8 * std::sqrt(3.0)).epsilon(1e-5));
  // Each tetrahedron has 4 faces, each shared by 2 cells.
  CHECK(c::kFaceIntensity3d == doctest::Approx(2 * c::kTetIntensity3d));
  CHECK(c::kFaceIntensity3d == doctest::Approx(48 * c::kPi * c::kPi / 35));
  const auto all = c::all();
  CHECK(all.size() >= 9);
  for (const auto& n : all) {
    CHECK(std::isfinite(n.value));
    CHECK(std::string(n.source).size() > 0);
  }
}
