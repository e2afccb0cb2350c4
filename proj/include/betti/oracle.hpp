#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "betti/complex.hpp"

namespace betti {

using LabelTuple = std::vector<std::int32_t>;

/// Betti numbers over GF(2) of a complex given as sorted label tuples per
/// dimension (index 0 = vertices). Faces are found by tuple lookup; the
/// complex must be closed under faces.
std::array<std::int64_t, 4> gf2_betti(const std::array<std::vector<LabelTuple>, 4>& simplices);

/// Betti numbers over GF(2) of the subcomplex of simplices with
/// keep[k][i] set, using the complex's cofacet tables as the boundary
/// relation (works for periodic complexes, where label tuples may repeat).
std::array<std::int64_t, 4> gf2_betti_from_cofacets(
    const SimplicialComplex& complex, const std::array<std::vector<std::uint8_t>, 4>& keep);

struct OracleReport {
  int instances = 0;
  std::size_t thresholds_checked = 0;
  std::size_t mismatches = 0;
  std::size_t euler_violations = 0;
  std::string first_mismatch;  // empty if none
};

/// Random small instances in [0,1)^d, coned to the sphere: compares the
/// incremental Betti numbers with the GF(2) ones at every distinct
/// threshold. Instance sizes are drawn from [d+2, max_n].
OracleReport run_oracle_suite(int d, int instances, int max_n, std::uint64_t seed);

}  // namespace betti
