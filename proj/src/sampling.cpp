#include "betti/sampling.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace betti {

namespace {

std::uint64_t splitmix64(std::uint64_t& x) {
  std::uint64_t z = (x += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

constexpr double kTwoPi = 6.283185307179586476925;

}  // namespace

std::mt19937_64 make_rng(const RngSpec& spec) {
  std::uint64_t state = spec.master_seed;
  const std::uint64_t a = splitmix64(state);
  state ^= spec.stream_index * 0xd1342543de82ef95ULL;
  const std::uint64_t b = splitmix64(state);
  std::seed_seq seq{static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(a >> 32),
                    static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32),
                    static_cast<std::uint32_t>(spec.stream_index),
                    static_cast<std::uint32_t>(spec.stream_index >> 32)};
  return std::mt19937_64(seq);
}

double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 12) * 0x1p-52; }

double standard_normal(std::mt19937_64& rng) {
  double u = uniform01(rng);
  while (u == 0.0) u = uniform01(rng);
  const double v = uniform01(rng);
  return std::sqrt(-2.0 * std::log(u)) * std::cos(kTwoPi * v);
}

std::int64_t sample_count(double lambda, std::mt19937_64& rng) {
  if (!(lambda >= 0.0)) throw std::invalid_argument("Poisson mean must be nonnegative");
  if (lambda == 0.0) return 0;
  if (lambda > 1000.0) {
    const double x = std::round(lambda + std::sqrt(lambda) * standard_normal(rng));
    return x < 0.0 ? 0 : static_cast<std::int64_t>(x);
  }
  // Inversion, with the pmf carried in log space so large lambda does not
  // underflow exp(-lambda).
  const double u = uniform01(rng);
  const double log_lambda = std::log(lambda);
  double log_p = -lambda;
  double cdf = std::exp(log_p);
  std::int64_t n = 0;
  while (cdf <= u) {
    ++n;
    log_p += log_lambda - std::log(static_cast<double>(n));
    const double p = std::exp(log_p);
    cdf += p;
    if (p == 0.0 && static_cast<double>(n) > lambda) break;  // u within rounding of 1
  }
  return n;
}

PointSet sample_points(std::int64_t n, int d, std::mt19937_64& rng) {
  if (n < 0) throw std::invalid_argument("point count must be nonnegative");
  if (d < 1 || d > 3) throw std::invalid_argument("dimension must be 1, 2 or 3");
  PointSet ps;
  ps.dim = d;
  ps.coords.resize(static_cast<std::size_t>(n) * d);
  ps.labels.resize(static_cast<std::size_t>(n));
  for (std::int64_t i = 0; i < n; ++i) {
    for (int c = 0; c < d; ++c) ps.coords[i * d + c] = uniform01(rng);
    ps.labels[i] = static_cast<std::int32_t>(i);
  }
  return ps;
}

PointSet sample_poisson(double lambda, int d, const RngSpec& spec) {
  auto rng = make_rng(spec);
  const auto n = sample_count(lambda, rng);
  auto ps = sample_points(n, d, rng);
  ps.master_seed = spec.master_seed;
  ps.stream_index = spec.stream_index;
  return ps;
}

}  // namespace betti
