#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "betti/analytic.hpp"
#include "betti/experiment.hpp"

using namespace betti;

namespace {

ExperimentConfig small(int d, int r, int threads = 1) {
  ExperimentConfig c;
  c.d = d;
  c.lambda = d == 2 ? 1000 : 300;
  c.realizations = r;
  c.seed = 17;
  c.eta_points = 12;
  c.threads = threads;
  return c;
}

std::string csv(const AggregateResult& a) {
  std::ostringstream os;
  write_aggregate_csv(os, a);
  return os.str();
}

}  // namespace

TEST_CASE("config parsing") {
  std::istringstream in(
      "# desk run\n d = 3\nlambda=2e4\nrealizations = 7 # trailing\nseed=99\neta_min=0.05\neta_max=4\n"
      "eta_points=9\ntopology=sphere\nout=x.csv\n");
  const auto c = read_config(in);
  CHECK(c.d == 3);
  CHECK(c.lambda == 2e4);
  CHECK(c.realizations == 7);
  CHECK(c.seed == 99);
  CHECK(c.eta_min == 0.05);
  CHECK(c.eta_max == 4);
  CHECK(c.eta_points == 9);
  CHECK(c.topology == Topology::kSphere);
  CHECK(c.out == "x.csv");
  const auto g = c.eta_grid();
  REQUIRE(g.size() == 10);
  CHECK(g[0] == 0.0);
  CHECK(g[1] == doctest::Approx(0.05));
  CHECK(g.back() == doctest::Approx(4));
  CHECK(std::is_sorted(g.begin(), g.end()));

  std::istringstream bad("colour = red\n");
  CHECK_THROWS_AS(read_config(bad), std::invalid_argument);
  std::istringstream bad2("d = two\n");
  CHECK_THROWS_AS(read_config(bad2), std::invalid_argument);
  ExperimentConfig v;
  v.lambda = -1;
  CHECK_THROWS_AS(v.validate(), std::invalid_argument);
  v = {};
  v.eta_max = v.eta_min;
  CHECK_THROWS_AS(v.validate(), std::invalid_argument);
}

TEST_CASE("deterministic and independent of worker count") {
  for (const int d : {2, 3}) {
    const auto a = csv(run_experiment(small(d, 6, 1)));
    const auto b = csv(run_experiment(small(d, 6, 3)));
    const auto c = csv(run_experiment(small(d, 6, 1)));
    CHECK(a == b);
    CHECK(a == c);
    auto other = small(d, 6, 1);
    other.seed = 18;
    CHECK(csv(run_experiment(other)) != a);
  }
}

TEST_CASE("aggregate identities") {
  const auto cfg = small(2, 30);
  const auto eta = cfg.eta_grid();
  std::vector<double> alphas;
  for (const double e : eta) alphas.push_back(alpha_from_eta(2, e, cfg.lambda));
  std::vector<RealizationResult> rs;
  for (int i = 0; i < cfg.realizations; ++i) rs.push_back(run_realization(cfg, i, alphas));
  const auto a = aggregate(cfg, eta, rs);

  // At eta = 0 every point is its own component.
  CHECK(std::abs(a.beta_mean[0][0] - 1) < 3 * a.beta_sem[0][0]);
  CHECK(a.beta_mean[0][0] == doctest::Approx(a.mean_points / cfg.lambda));
  for (std::size_t i = 0; i < eta.size(); ++i)
    CHECK(a.chi_mean[i] == doctest::Approx(a.beta_mean[0][i] - a.beta_mean[1][i] + a.beta_mean[2][i]).epsilon(1e-12));
  // Largest eta: one component.
  CHECK(a.beta_mean[0].back() * cfg.lambda == doctest::Approx(1.0));

  auto rev = rs;
  std::reverse(rev.begin(), rev.end());
  const auto b = aggregate(cfg, eta, rev);
  for (int k = 0; k < 3; ++k)
    for (std::size_t i = 0; i < eta.size(); ++i) CHECK(b.beta_mean[k][i] == doctest::Approx(a.beta_mean[k][i]).epsilon(1e-12));

  // Standard errors shrink like 1/sqrt(R).
  std::vector<RealizationResult> half(rs.begin(), rs.begin() + 15);
  const auto h = aggregate(cfg, eta, half);
  double ratio = 0;
  int n = 0;
  for (std::size_t i = 1; i < eta.size(); ++i)
    if (a.beta_sem[0][i] > 0) ratio += h.beta_sem[0][i] / a.beta_sem[0][i], ++n;
  CHECK(ratio / n == doctest::Approx(std::sqrt(2.0)).epsilon(0.2));
}

TEST_CASE("CSV columns") {
  const auto a2 = run_experiment(small(2, 2));
  const auto s2 = csv(a2);
  CHECK(s2.substr(0, s2.find('\n')) == "eta,alpha,beta0_mean,beta0_sem,beta1_mean,beta1_sem,chi_mean,chi_theory");
  CHECK(std::count(s2.begin(), s2.end(), '\n') == 14);
  const auto s3 = csv(run_experiment(small(3, 2)));
  CHECK(s3.substr(0, s3.find('\n')) ==
        "eta,alpha,beta0_mean,beta0_sem,beta1_mean,beta1_sem,beta2_mean,beta2_sem,chi_mean,chi_theory");
}

TEST_CASE("realization failures carry provenance") {
  // Sphere mode needs d+1 affinely independent points; at lambda = 1 some
  // streams draw fewer.
  ExperimentConfig c;
  c.d = 3;
  c.lambda = 1.5;
  c.topology = Topology::kSphere;
  c.realizations = 30;
  c.seed = 5;
  c.threads = 1;
  try {
    (void)run_experiment(c);
    FAIL("expected a failure");
  } catch (const RealizationError& e) {
    const std::string w = e.what();
    CHECK(w.find("realization " + std::to_string(e.index())) != std::string::npos);
    CHECK(w.find("seed 5") != std::string::npos);
  }
}

TEST_CASE("leading-order fit") {
  AggregateResult a;
  a.config.d = 2;
  for (int i = 0; i < 10; ++i) {
    const double e = 0.05 * std::pow(1.3, i);
    a.eta.push_back(e);
    a.beta_mean[1].push_back(0.064 * e * e);
  }
  const auto f = fit_leading_order(a, 1, 0.05, 0.3);
  CHECK(f.slope == doctest::Approx(2.0));
  CHECK(f.prefactor == doctest::Approx(0.064));
  CHECK(f.residual < 1e-12);
  CHECK(f.points == 7);

  a.beta_mean[1][2] = 0;
  CHECK_THROWS_WITH_AS(fit_leading_order(a, 1, 0.05, 0.3), "window too low", std::invalid_argument);
  CHECK_THROWS_AS(fit_leading_order(a, 1, 0.4, 0.5), std::invalid_argument);
}
