#include "betti/analytic.hpp"

#include <cmath>
#include <stdexcept>

namespace betti {

using constants::kPi;

double SeriesExpansion::operator()(double eta) const {
  double s = 0.0;
  for (std::size_t j = coefficients.size(); j-- > 0;) s = s * eta + coefficients[j];
  return s;
}

namespace constants {

std::vector<Named> all() {
  return {
      {"omega_1", unit_ball_volume(1), "length of the unit interval [-1,1]"},
      {"omega_2", unit_ball_volume(2), "area of the unit disc"},
      {"omega_3", unit_ball_volume(3), "volume of the unit ball"},
      {"eta_c_2d", kEtaC2d, "continuum percolation threshold of discs"},
      {"eta_1_3d", kEta1, "percolation threshold of the covered phase, balls"},
      {"eta_2_3d", kEta2, "percolation threshold of the uncovered phase, balls"},
      {"lambda2_2d_over_lambda", kTriangleIntensity2d, "Delaunay triangles per point, 2D"},
      {"lambda2_3d_over_lambda", kFaceIntensity3d, "Delaunay faces per point, 3D (48 pi^2/35)"},
      {"lambda3_3d_over_lambda", kTetIntensity3d, "Delaunay tetrahedra per point, 3D (24 pi^2/35)"},
      {"theta_0", kTheta0, "arccos(1/3), minimum largest face-normal/vertex angle"},
      {"A", kA, "constant in the closed-form 3D beta1 coefficient, 8 sqrt(3)"},
  };
}

}  // namespace constants

double unit_ball_volume(int d) {
  switch (d) {
    case 1:
      return 2.0;
    case 2:
      return kPi;
    case 3:
      return 4.0 * kPi / 3.0;
    default:
      throw std::invalid_argument("dimension must be 1, 2 or 3");
  }
}

double eta_from_alpha(int d, double alpha, double lambda) {
  return unit_ball_volume(d) * std::pow(alpha, d) * lambda;
}

double alpha_from_eta(int d, double eta, double lambda) {
  return std::pow(eta / (unit_ball_volume(d) * lambda), 1.0 / d);
}

double euler_density(int d, double eta) {
  switch (d) {
    case 1:
      return std::exp(-eta);
    case 2:
      return (1.0 - eta) * std::exp(-eta);
    case 3:
      return (1.0 - 3.0 * eta + 3.0 * kPi * kPi / 32.0 * eta * eta) * std::exp(-eta);
    default:
      throw std::invalid_argument("dimension must be 1, 2 or 3");
  }
}

SeriesExpansion beta0_series(int d) {
  if (d == 2)
    return {{1.0, -2.0, 1.5641, -0.6878, 0.2197}, "eta < 0.5", "sum of the tabulated k-mer densities, discs"};
  if (d == 3)
    return {{1.0, -4.0, 5.0, -2.7431, 1.3646}, "eta < 0.3", "sum of the tabulated k-mer densities, balls"};
  throw std::invalid_argument("beta0 series needs d = 2 or 3");
}

double beta0_series(int d, double eta) { return beta0_series(d)(eta); }

SeriesExpansion rho_k_series(int d, int k) {
  static const std::vector<std::vector<double>> disc = {
      {1, -4, 8, -10.6667, 10.6667},
      {0, 2, -11.3079, 32.2915, -62.0415},
      {0, 0, 4.8720, -35.3346, 129.6895},
      {0, 0, 0, 13.022, -114.823},
      {0, 0, 0, 0, 36.728},
  };
  static const std::vector<std::vector<double>> ball = {
      {1, -8, 32, -85.3333, 170.6667},
      {0, 4, -49, 302.2238, -1250.5030},
      {0, 0, 22, -359.4203, 2959.1209},
      {0, 0, 0, 139.7867, -2842.60},
      {0, 0, 0, 0, 964.68},
  };
  if (k < 1 || k > 5) throw std::invalid_argument("not tabulated");
  if (d == 2) return {disc[k - 1], "eta -> 0", "k-mer density expansion for discs (published table)"};
  if (d == 3) return {ball[k - 1], "eta -> 0", "k-mer density expansion for balls (published table)"};
  throw std::invalid_argument("not tabulated");
}

LeadingOrder betti_leading_order(int d, int k) {
  if (d == 2 && k == 1) return {0.0640, 2};
  if (d == 3 && k == 1) return {0.5747, 2};
  if (d == 3 && k == 2) return {0.015, 3};
  throw std::invalid_argument("no asymptotic available");
}

double betti_leading(int d, int k, double eta) {
  const auto l = betti_leading_order(d, k);
  return l.coefficient * std::pow(eta, l.power);
}

}  // namespace betti
