#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "betti/complex.hpp"

namespace betti {

struct ExperimentConfig {
  int d = 2;
  double lambda = 1e4;
  int realizations = 200;
  std::uint64_t seed = 1;
  double eta_min = 1e-2;
  double eta_max = 10.0;
  int eta_points = 60;
  Topology topology = Topology::kTorus;
  std::string out;
  int threads = 0;  // 0: one per hardware thread

  /// Log-spaced grid from eta_min to eta_max, preceded by eta = 0.
  std::vector<double> eta_grid() const;
  /// Throws std::invalid_argument describing the first bad field.
  void validate() const;
};

/// Sets one field from its config-file key (d, lambda, realizations, seed,
/// eta_min, eta_max, eta_points, topology, out, threads). Throws
/// std::invalid_argument for unknown keys or unparsable values.
void set_config_value(ExperimentConfig& config, const std::string& key, const std::string& value);

/// Reads flat "key = value" lines; '#' starts a comment.
ExperimentConfig read_config(std::istream& in, ExperimentConfig base = {});

/// A realization failed; what() names its index and seed.
class RealizationError : public std::runtime_error {
 public:
  RealizationError(const std::string& what, int index) : std::runtime_error(what), index_(index) {}
  int index() const { return index_; }

 private:
  int index_;
};

/// Betti numbers of one realization at every grid point.
struct RealizationResult {
  std::int64_t num_points = 0;
  std::vector<std::array<std::int64_t, 4>> beta;  // per grid point
};

/// Runs one realization (stream `index` of the config's seed). Throws
/// RealizationError when the Euler identity fails at any threshold.
RealizationResult run_realization(const ExperimentConfig& config, int index,
                                  const std::vector<double>& alphas);

struct AggregateResult {
  ExperimentConfig config;
  std::vector<double> eta;
  std::vector<double> alpha;
  std::array<std::vector<double>, 4> beta_mean;  // of beta_k / lambda
  std::array<std::vector<double>, 4> beta_sem;
  std::vector<double> chi_mean;
  std::vector<double> chi_sem;
  int realizations = 0;
  double mean_points = 0.0;
};

/// All realizations on a worker pool, aggregated in realization order so the
/// result does not depend on scheduling. `progress` (optional) is called with
/// the number of completed realizations.
AggregateResult run_experiment(const ExperimentConfig& config,
                               const std::function<void(int)>& progress = {});

/// Aggregates given realizations (in the order given).
AggregateResult aggregate(const ExperimentConfig& config, const std::vector<double>& eta,
                          const std::vector<RealizationResult>& results);

/// Columns: eta, alpha, then mean and sem of beta_k / lambda for k < d, chi
/// mean and sem, and the closed-form chi / lambda.
void write_aggregate_csv(std::ostream& out, const AggregateResult& result);

struct LeadingFit {
  double slope = 0.0;
  double prefactor = 0.0;
  double residual = 0.0;  // root-mean-square residual in log space
  int points = 0;
};

/// Least-squares line through (log eta, log mean beta_k / lambda) on the grid
/// points inside [eta_lo, eta_hi]. Throws std::invalid_argument("window too
/// low") if a mean there is not positive, or if fewer than 4 points remain.
LeadingFit fit_leading_order(const AggregateResult& result, int k, double eta_lo, double eta_hi);

}  // namespace betti
