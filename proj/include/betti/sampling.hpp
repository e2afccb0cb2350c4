#pragma once

#include <cstdint>
#include <random>

#include "betti/point_set.hpp"

namespace betti {

/// Identifies one realization: the same spec always gives the same stream,
/// and stream i is reachable without drawing streams 0..i-1.
struct RngSpec {
  std::uint64_t master_seed = 0;
  std::uint64_t stream_index = 0;
};

/// Generator for a realization; its seed mixes both fields through splitmix64.
std::mt19937_64 make_rng(const RngSpec& spec);

/// Uniform double in [0,1) on the 2^-52 grid.
double uniform01(std::mt19937_64& rng);

/// Standard normal deviate (Box-Muller).
double standard_normal(std::mt19937_64& rng);

/// Poisson(lambda) count: exact inversion for lambda <= 1000, otherwise a
/// Normal(lambda, sqrt(lambda)) draw rounded to the nearest integer and
/// clamped at 0. Throws std::invalid_argument for lambda < 0.
std::int64_t sample_count(double lambda, std::mt19937_64& rng);

/// n i.i.d. uniform points in [0,1)^d labelled 0..n-1.
PointSet sample_points(std::int64_t n, int d, std::mt19937_64& rng);

/// One realization: count then points, with the spec recorded in the set.
PointSet sample_poisson(double lambda, int d, const RngSpec& spec);

}  // namespace betti
