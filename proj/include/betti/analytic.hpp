#pragma once

#include <string>
#include <vector>

namespace betti {

/// Polynomial in the reduced density eta, valid as eta -> 0.
struct SeriesExpansion {
  std::vector<double> coefficients;  // of eta^0, eta^1, ...
  std::string validity;
  std::string provenance;

  double operator()(double eta) const;
};

namespace constants {

inline constexpr double kPi = 3.14159265358979323846;

/// Critical density for percolation of the covered phase, 2D.
inline constexpr double kEtaC2d = 1.1280586;
/// 3D: covered phase percolates above eta_1 ...
inline constexpr double kEta1 = 0.341889;
/// ... and the uncovered phase stops percolating above eta_2.
inline constexpr double kEta2 = 3.5032;
/// Intensities of Poisson-Delaunay cells relative to the point intensity.
inline constexpr double kTriangleIntensity2d = 2.0;
inline constexpr double kFaceIntensity3d = 48.0 * kPi * kPi / 35.0;
inline constexpr double kTetIntensity3d = 24.0 * kPi * kPi / 35.0;
/// Smallest possible largest face-normal/vertex angle of a tetrahedron.
inline const double kTheta0 = 1.2309594173407747;  // arccos(1/3)
/// Constant of the closed-form 3D beta1 coefficient (equals 8 sqrt(3)).
inline constexpr double kA = 13.8564;

struct Named {
  const char* name;
  double value;
  const char* source;
};

/// Every constant above with a short description of where it comes from.
std::vector<Named> all();

}  // namespace constants

/// Volume of the unit ball: 2, pi, 4 pi / 3 for d = 1, 2, 3.
double unit_ball_volume(int d);

/// eta = omega_d alpha^d lambda and its inverse.
double eta_from_alpha(int d, double alpha, double lambda);
double alpha_from_eta(int d, double eta, double lambda);

/// Expected Euler characteristic per point of the Boolean model:
/// d = 1: exp(-eta) with eta = 2 alpha lambda; d = 2: (1 - eta) exp(-eta);
/// d = 3: (1 - 3 eta + 3 pi^2/32 eta^2) exp(-eta).
double euler_density(int d, double eta);

/// Truncated low-density expansion of E beta0 / lambda (d = 2 or 3).
SeriesExpansion beta0_series(int d);
double beta0_series(int d, double eta);

/// Tabulated expansion of rho_k / lambda, the density of k-mers
/// (1 <= k <= 5). Throws std::invalid_argument("not tabulated") otherwise.
SeriesExpansion rho_k_series(int d, int k);

struct LeadingOrder {
  double coefficient;
  int power;
};

/// Leading small-eta term of E beta_k / lambda for (d,k) in
/// {(2,1), (3,1), (3,2)}; otherwise throws
/// std::invalid_argument("no asymptotic available").
LeadingOrder betti_leading_order(int d, int k);
double betti_leading(int d, int k, double eta);

}  // namespace betti
