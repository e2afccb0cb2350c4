#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

namespace betti {

/// A probability density on [lo, hi], either closed form or a normalized
/// histogram.
struct AngleDensity {
  std::string name;
  double lo = 0.0;
  double hi = 0.0;
  std::function<double(double)> closed_form;  // empty for histograms
  std::vector<double> edges;                  // histogram bin edges
  std::vector<double> densities;              // one per bin

  double operator()(double x) const;
  bool is_histogram() const { return !closed_form; }
};

/// Named closed-form densities: fmax_phi_2d (largest angle of a
/// Poisson-Delaunay triangle), fmax_phi_3d_face (largest angle of a typical
/// face of a 3D cell), f_typical_theta (face-normal/vertex angle), f_R_2d and
/// f_R_3d (circumradius at intensity lambda). Throws std::invalid_argument for
/// other names.
AngleDensity closed_form_density(const std::string& name, double lambda = 1.0);

/// Adaptive Gauss-Kronrod quadrature. Throws std::runtime_error naming the
/// achieved error when abs_tol is not reached.
double integrate(const std::function<double(double)>& f, double a, double b, double abs_tol = 1e-10);

/// Coefficients of eta^2 .. eta^J of the probability that a 2D cell leaves an
/// empty-triangle loop. 2 <= J <= 6.
std::vector<double> p_triangle_series_2d(int max_order);

struct Triangle3dCoefficient {
  double closed = 0.0;               // from the constant A
  double numeric = 0.0;              // limit of the triple integral
  double slope = 0.0;                // free log-log slope of P(eta)
  std::vector<double> etas;          // where P was evaluated
  std::vector<double> probabilities; // P(eta)
  double relative_difference = 0.0;
};

/// Probability that a typical face of a 3D cell leaves an empty-triangle loop
/// at reduced density eta.
double p_triangle_3d(double eta);

/// eta^2 coefficient of E beta1 / lambda in 3D, two ways. Throws
/// std::runtime_error("asymptotics mismatch") when they differ by over 1%.
Triangle3dCoefficient p_triangle_coeff_3d();

struct PdcSamples {
  std::size_t points = 0;           // points generated
  std::size_t interior_points = 0;  // points at least `margin` from the boundary
  std::vector<double> radius;       // per kept tetrahedron
  std::vector<double> theta;        // 4 per tetrahedron
  std::vector<double> center;       // 3 per tetrahedron
  double margin = 0.0;
  double half_width = 1.0;

  std::size_t size() const { return radius.size(); }
  double theta_max(std::size_t t) const;
};

/// Tetrahedra of the Delaunay complex of n uniform points in [-1,1]^3 whose
/// circumcentres are at least `margin` from the boundary, with their
/// circumradii and face-normal/vertex angles. Throws std::invalid_argument
/// for n < 10^4 or a bad margin, std::runtime_error when fewer than 1000
/// tetrahedra survive.
PdcSamples sample_pdc(std::size_t n_points, double margin, std::mt19937_64& rng);

/// Closed-form CDF of f_typical_theta.
double typical_theta_cdf(double theta);

/// Kolmogorov-Smirnov distance between the sampled typical angles and the
/// closed form.
double ks_typical_theta(const PdcSamples& s);

/// Normalized histogram of the largest angle per tetrahedron on
/// [arccos(1/3), pi] with the given bin width. Throws
/// std::runtime_error("invalid sample") if a sample falls below arccos(1/3).
AngleDensity fmax_theta_histogram(const PdcSamples& s, double bin_width);

struct Beta2Coefficient {
  double integral = 0.0;          // of f_max (sin^-9 - 1) over [theta0, pi/2]
  double integral_direct = 0.0;   // the same as a sample mean, no binning
  double coefficient = 0.0;       // (24 pi^2 / 35) * integral / 6
  double split_a = 0.0;           // integral from each half of the sample
  double split_b = 0.0;
  double split_relative = 0.0;    // |a - b| / mean
};

/// eta^3 coefficient of E beta2 / lambda from the empirical f_max.
Beta2Coefficient beta2_coeff_3d(const PdcSamples& s, double bin_width);

}  // namespace betti
