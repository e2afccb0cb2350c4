#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "betti/complex.hpp"
#include "betti/filtration.hpp"

namespace betti {

/// Filtration with a +1/-1 mark per position: +1 if the simplex creates a
/// cycle of its own dimension, -1 if it kills one of the dimension below.
struct MarkedFiltration {
  Filtration filtration;
  std::vector<std::int8_t> marks;  // by filtration position
  int dim = 0;
  Topology topology = Topology::kSphere;
  bool has_infinity = false;
  std::int32_t num_labels = 0;
  // Marks fixed by convention rather than computed (the last top cell, and
  // the last triangle in 2D closed complexes).
  int a_priori_marks = 0;
};

/// Marks every simplex. Vertices +1; edges by a forward union-find over
/// vertices; (d-1)-simplices in 3D by a reverse union-find over the dual graph
/// of top cells (plus an exterior node for hull facets of plain complexes);
/// top cells -1 except the last one of a closed complex (torus or coned to
/// the sphere). In 2D the same holds for triangles. Throws
/// std::runtime_error("non-manifold input") when a (d-1)-simplex does not
/// have the expected cofacets.
MarkedFiltration mark_filtration(const SimplicialComplex& complex, Filtration filtration);

/// Integer-valued right-continuous step function of alpha.
struct StepFunction {
  std::vector<double> alpha;         // breakpoints, increasing
  std::vector<std::int64_t> value;   // value on [alpha[i], alpha[i+1])

  /// Value at a (0 before the first breakpoint).
  std::int64_t at(double a) const;
};

struct BettiSignature {
  int dim = 0;
  Topology topology = Topology::kSphere;
  std::int64_t num_points = 0;
  double lambda = 0.0;
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
  std::array<StepFunction, 4> beta;  // k = 0..dim

  std::array<std::int64_t, 4> at(double a) const;
  std::int64_t euler_at(double a) const;
};

/// Running Betti numbers from the marks, one pass. Breakpoints are stored
/// only where a value changes.
BettiSignature signature(const MarkedFiltration& mf);

/// Checks that the alternating sum of Betti numbers equals the alternating
/// simplex count at every threshold. Returns the number of violations.
std::size_t euler_violations(const MarkedFiltration& mf, const BettiSignature& sig);

/// Components of the union of radius-alpha intervals around points on the
/// circle of circumference 1: the number of gaps longer than 2 alpha, or 1 if
/// there is none. 0 for no points.
std::int64_t betti0_1d(std::vector<double> points, double alpha);

struct TorusReport {
  std::array<std::int64_t, 4> computed{};
  std::string state;  // "inactive", "active" or "unknown"
  std::string note;
};

/// Computed Betti numbers on the torus at alpha plus the known relation to the
/// true ones. The dual union-find cannot see the three toroidal 2-cycles, so
/// once the complex wraps around the torus the computed beta1 and beta2 are
/// both 3 below the true values. "active" means the relation certainly
/// applies (the full complex), "inactive" that it certainly does not (no
/// triangles yet, or 2D), "unknown" otherwise.
TorusReport torus_correction_report(const MarkedFiltration& mf, const BettiSignature& sig,
                                    double alpha);

/// Writes "alpha,eta,beta0,beta1,beta2" rows for each alpha of the grid, with
/// eta = omega_d alpha^d lambda.
void write_signature_csv(std::ostream& out, const BettiSignature& sig,
                         const std::vector<double>& alphas);

}  // namespace betti
