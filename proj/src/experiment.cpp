#include "betti/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <istream>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include "betti/analytic.hpp"
#include "betti/betti.hpp"
#include "betti/delaunay.hpp"
#include "betti/filtration.hpp"
#include "betti/periodic.hpp"
#include "betti/sampling.hpp"

namespace betti {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <typename T>
T parse_number(const std::string& key, const std::string& value) {
  std::istringstream is(value);
  T x{};
  is >> x;
  if (!is || !(is >> std::ws).eof()) throw std::invalid_argument("bad value for " + key + ": '" + value + "'");
  return x;
}

}  // namespace

std::vector<double> ExperimentConfig::eta_grid() const {
  std::vector<double> g{0.0};
  if (eta_points == 1) {
    g.push_back(eta_min);
    return g;
  }
  const double a = std::log(eta_min), b = std::log(eta_max);
  for (int i = 0; i < eta_points; ++i) g.push_back(std::exp(a + (b - a) * i / (eta_points - 1)));
  return g;
}

void ExperimentConfig::validate() const {
  if (d != 2 && d != 3) throw std::invalid_argument("d must be 2 or 3");
  if (!(lambda > 0)) throw std::invalid_argument("lambda must be positive");
  if (realizations < 1) throw std::invalid_argument("realizations must be at least 1");
  if (!(eta_min > 0) || !(eta_max > eta_min) || eta_points < 1)
    throw std::invalid_argument("eta grid must be strictly increasing and positive");
  if (threads < 0) throw std::invalid_argument("threads must be nonnegative");
}

void set_config_value(ExperimentConfig& c, const std::string& key, const std::string& value) {
  if (key == "d") c.d = parse_number<int>(key, value);
  else if (key == "lambda") c.lambda = parse_number<double>(key, value);
  else if (key == "realizations") c.realizations = parse_number<int>(key, value);
  else if (key == "seed") c.seed = parse_number<std::uint64_t>(key, value);
  else if (key == "eta_min") c.eta_min = parse_number<double>(key, value);
  else if (key == "eta_max") c.eta_max = parse_number<double>(key, value);
  else if (key == "eta_points") c.eta_points = parse_number<int>(key, value);
  else if (key == "threads") c.threads = parse_number<int>(key, value);
  else if (key == "out") c.out = value;
  else if (key == "topology") {
    try {
      c.topology = topology_from_string(value);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad value for topology: '" + value + "'");
    }
  } else {
    throw std::invalid_argument("unknown config key: " + key);
  }
}

ExperimentConfig read_config(std::istream& in, ExperimentConfig base) {
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line.substr(0, line.find('#')));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line " + std::to_string(lineno) + ": expected key = value");
    set_config_value(base, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return base;
}

RealizationResult run_realization(const ExperimentConfig& config, int index,
                                  const std::vector<double>& alphas) {
  const RngSpec spec{config.seed, static_cast<std::uint64_t>(index)};
  RealizationResult r;
  try {
    auto rng = make_rng(spec);
    const auto n = sample_count(config.lambda, rng);
    auto ps = sample_points(n, config.d, rng);
    r.num_points = n;
    if (n == 0) {
      r.beta.assign(alphas.size(), {});
      return r;
    }
    const std::uint64_t build_seed = rng();
    const SimplicialComplex k = config.topology == Topology::kTorus
                                    ? build_periodic(ps, build_seed)
                                    : augment_with_infinity(build_delaunay(ps, build_seed));
    const auto mf = mark_filtration(k, build_filtration(k, alpha_thresholds(k)));
    auto sig = signature(mf);
    const auto bad = euler_violations(mf, sig);
    if (bad != 0) throw std::runtime_error("Euler identity violated at " + std::to_string(bad) + " thresholds");
    r.beta.reserve(alphas.size());
    for (const double a : alphas) r.beta.push_back(sig.at(a));
  } catch (const std::exception& e) {
    std::ostringstream os;
    os << "realization " << index << " (seed " << config.seed << ", stream " << index << "): " << e.what();
    throw RealizationError(os.str(), index);
  }
  return r;
}

AggregateResult aggregate(const ExperimentConfig& config, const std::vector<double>& eta,
                          const std::vector<RealizationResult>& results) {
  AggregateResult a;
  a.config = config;
  a.eta = eta;
  a.realizations = static_cast<int>(results.size());
  const double om = unit_ball_volume(config.d);
  for (const double e : eta) a.alpha.push_back(std::pow(e / (om * config.lambda), 1.0 / config.d));
  const std::size_t g = eta.size();
  const double n = static_cast<double>(results.size());
  auto stats = [&](auto value, std::vector<double>& mean, std::vector<double>& sem) {
    mean.assign(g, 0.0);
    sem.assign(g, 0.0);
    for (std::size_t i = 0; i < g; ++i) {
      double s = 0.0;
      for (const auto& r : results) s += value(r, i);
      const double m = s / n;
      double ss = 0.0;
      for (const auto& r : results) {
        const double d = value(r, i) - m;
        ss += d * d;
      }
      mean[i] = m;
      sem[i] = results.size() > 1 ? std::sqrt(ss / (n - 1) / n) : 0.0;
    }
  };
  for (int k = 0; k <= config.d; ++k)
    stats([&](const RealizationResult& r, std::size_t i) { return static_cast<double>(r.beta[i][k]) / config.lambda; },
          a.beta_mean[k], a.beta_sem[k]);
  stats(
      [&](const RealizationResult& r, std::size_t i) {
        std::int64_t chi = 0;
        for (int k = 0; k <= config.d; ++k) chi += (k % 2 ? -1 : 1) * r.beta[i][k];
        return static_cast<double>(chi) / config.lambda;
      },
      a.chi_mean, a.chi_sem);
  double pts = 0.0;
  for (const auto& r : results) pts += static_cast<double>(r.num_points);
  a.mean_points = pts / n;
  return a;
}

AggregateResult run_experiment(const ExperimentConfig& config, const std::function<void(int)>& progress) {
  config.validate();
  const auto eta = config.eta_grid();
  const double om = unit_ball_volume(config.d);
  std::vector<double> alphas;
  for (const double e : eta) alphas.push_back(std::pow(e / (om * config.lambda), 1.0 / config.d));

  const int r = config.realizations;
  std::vector<RealizationResult> results(static_cast<std::size_t>(r));
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(r));
  std::atomic<int> next{0}, done{0};
  std::atomic<bool> failed{false};
  std::mutex progress_mutex;
  auto worker = [&] {
    for (int i = next++; i < r && !failed; i = next++) {
      try {
        results[i] = run_realization(config, i, alphas);
      } catch (...) {
        errors[i] = std::current_exception();
        failed = true;
      }
      const int c = ++done;
      if (progress) {
        std::lock_guard<std::mutex> lock(progress_mutex);
        progress(c);
      }
    }
  };
  int threads = config.threads > 0 ? config.threads : static_cast<int>(std::thread::hardware_concurrency());
  threads = std::clamp(threads, 1, r);
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return aggregate(config, eta, results);
}

void write_aggregate_csv(std::ostream& out, const AggregateResult& a) {
  const int d = a.config.d;
  out << "eta,alpha";
  for (int k = 0; k < d; ++k) out << ",beta" << k << "_mean,beta" << k << "_sem";
  out << ",chi_mean,chi_theory\n";
  char buf[64];
  auto put = [&](double x) {
    std::snprintf(buf, sizeof buf, "%.9g", x);
    out << buf;
  };
  for (std::size_t i = 0; i < a.eta.size(); ++i) {
    put(a.eta[i]);
    out << ',';
    put(a.alpha[i]);
    for (int k = 0; k < d; ++k) {
      out << ',';
      put(a.beta_mean[k][i]);
      out << ',';
      put(a.beta_sem[k][i]);
    }
    out << ',';
    put(a.chi_mean[i]);
    out << ',';
    put(euler_density(d, a.eta[i]));
    out << '\n';
  }
}

LeadingFit fit_leading_order(const AggregateResult& a, int k, double eta_lo, double eta_hi) {
  if (k < 0 || k > a.config.d) throw std::invalid_argument("no such Betti number");
  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < a.eta.size(); ++i) {
    if (a.eta[i] < eta_lo || a.eta[i] > eta_hi) continue;
    if (!(a.beta_mean[k][i] > 0)) throw std::invalid_argument("window too low");
    xs.push_back(std::log(a.eta[i]));
    ys.push_back(std::log(a.beta_mean[k][i]));
  }
  if (xs.size() < 4) throw std::invalid_argument("window too low: fewer than 4 grid points");
  const double n = static_cast<double>(xs.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i], sy += ys[i], sxx += xs[i] * xs[i], sxy += xs[i] * ys[i];
  }
  LeadingFit f;
  f.points = static_cast<int>(xs.size());
  f.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  const double intercept = (sy - f.slope * sx) / n;
  f.prefactor = std::exp(intercept);
  double rss = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double e = ys[i] - (intercept + f.slope * xs[i]);
    rss += e * e;
  }
  f.residual = std::sqrt(rss / n);
  return f;
}

}  // namespace betti
