#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include "betti/analytic.hpp"
#include "betti/betti.hpp"
#include "betti/delaunay.hpp"
#include "betti/experiment.hpp"
#include "betti/filtration.hpp"
#include "betti/io.hpp"
#include "betti/oracle.hpp"
#include "betti/pdc.hpp"
#include "betti/periodic.hpp"
#include "betti/sampling.hpp"

using namespace betti;

namespace {

// Output goes to the named file, or stdout for "" or "-".
class Output {
 public:
  explicit Output(const std::string& path) {
    if (path.empty() || path == "-") return;
    file_ = std::make_unique<std::ofstream>(path);
    if (!*file_) throw std::runtime_error("cannot write " + path);
  }
  std::ostream& get() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

std::string g9(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", x);
  return buf;
}

struct SimulateArgs {
  std::string config_file;
  ExperimentConfig cfg;
  std::string topology = "torus";
  bool quiet = false;
};

int run_simulate(SimulateArgs& a, const CLI::App& sub) {
  ExperimentConfig cfg;
  if (!a.config_file.empty()) {
    std::ifstream f(a.config_file);
    if (!f) throw std::runtime_error("cannot open " + a.config_file);
    cfg = read_config(f);
  }
  // Flags given on the command line override the file.
  if (sub.count("-d")) cfg.d = a.cfg.d;
  if (sub.count("--lambda")) cfg.lambda = a.cfg.lambda;
  if (sub.count("-R")) cfg.realizations = a.cfg.realizations;
  if (sub.count("--seed")) cfg.seed = a.cfg.seed;
  if (sub.count("--eta-min")) cfg.eta_min = a.cfg.eta_min;
  if (sub.count("--eta-max")) cfg.eta_max = a.cfg.eta_max;
  if (sub.count("--eta-points")) cfg.eta_points = a.cfg.eta_points;
  if (sub.count("--threads")) cfg.threads = a.cfg.threads;
  if (sub.count("-o")) cfg.out = a.cfg.out;
  if (sub.count("--topology")) cfg.topology = topology_from_string(a.topology);
  cfg.validate();

  const auto result = run_experiment(cfg, [&](int done) {
    if (!a.quiet) std::cerr << "\rrealizations " << done << "/" << cfg.realizations << std::flush;
  });
  if (!a.quiet) std::cerr << '\n';
  Output out(cfg.out);
  write_aggregate_csv(out.get(), result);
  return 0;
}

struct AnalyticArgs {
  int d = 2;
  double eta_min = 0.0;
  double eta_max = 10.0;
  int points = 200;
  std::string out;
  bool constants = false;
};

int run_analytic(const AnalyticArgs& a) {
  Output out(a.out);
  auto& os = out.get();
  if (a.constants) {
    os << "name,value,source\n";
    for (const auto& c : constants::all()) os << c.name << ',' << g9(c.value) << ",\"" << c.source << "\"\n";
    return 0;
  }
  if (a.d < 1 || a.d > 3) throw std::invalid_argument("d must be 1, 2 or 3");
  if (!(a.eta_max > a.eta_min) || a.eta_min < 0 || a.points < 2) throw std::invalid_argument("bad eta range");
  auto leading = [&](int k, double eta) -> double {
    try {
      return betti_leading(a.d, k, eta);
    } catch (const std::invalid_argument&) {
      return NAN;
    }
  };
  os << "eta,chi_over_lambda,beta0_series,beta1_leading,beta2_leading\n";
  for (int i = 0; i < a.points; ++i) {
    const double eta = a.eta_min + (a.eta_max - a.eta_min) * i / (a.points - 1);
    const double b0 = a.d == 1 ? NAN : beta0_series(a.d, eta);
    os << g9(eta) << ',' << g9(euler_density(a.d, eta)) << ',' << g9(b0) << ',' << g9(leading(1, eta)) << ','
       << g9(leading(2, eta)) << '\n';
  }
  return 0;
}

struct PdcArgs {
  std::size_t points = 1000000;
  double margin = 0.2;
  double bin_degrees = 0.5;
  std::uint64_t seed = 1;
  std::string out;
  bool quadrature_only = false;
};

int run_pdc(const PdcArgs& a) {
  const auto s2 = p_triangle_series_2d(4);
  std::cout << "2D empty-triangle probability: " << g9(s2[0]) << " eta^2 " << g9(s2[1]) << " eta^3 + "
            << g9(s2[2]) << " eta^4\n";
  std::cout << "2D E beta1 / lambda leading coefficient (2 x eta^2 term): " << g9(2 * s2[0]) << '\n';
  const auto t3 = p_triangle_coeff_3d();
  std::cout << "3D E beta1 / lambda eta^2 coefficient: closed " << g9(t3.closed) << ", numeric " << g9(t3.numeric)
            << " (slope " << g9(t3.slope) << "), relative difference " << g9(t3.relative_difference) << '\n';
  if (a.quadrature_only) return 0;

  auto rng = make_rng({a.seed, 0});
  const auto s = sample_pdc(a.points, a.margin, rng);
  const double bin = a.bin_degrees * constants::kPi / 180;
  const auto h = fmax_theta_histogram(s, bin);
  const auto b = beta2_coeff_3d(s, bin);
  std::cout << "tetrahedra kept: " << s.size() << " (per interior point " << g9(double(s.size()) / double(s.interior_points))
            << ", expected " << g9(constants::kTetIntensity3d) << ")\n";
  std::cout << "typical angle KS distance: " << g9(ks_typical_theta(s)) << " over " << s.theta.size() << " angles\n";
  std::cout << "I = integral of f_max (sin^-9 - 1): " << g9(b.integral) << " (direct mean " << g9(b.integral_direct)
            << "; halves " << g9(b.split_a) << ", " << g9(b.split_b) << ")\n";
  std::cout << "I / 6 = " << g9(b.integral / 6) << "; compare the printed area 0.0023\n";
  std::cout << "E beta2 / lambda eta^3 coefficient (24 pi^2 / 35) I / 6 = " << g9(b.coefficient)
            << "; compare the printed 0.015\n";
  if (!a.out.empty()) {
    Output out(a.out);
    out.get() << "theta_lo,theta_hi,density\n";
    for (std::size_t i = 0; i < h.densities.size(); ++i)
      out.get() << g9(h.edges[i]) << ',' << g9(h.edges[i + 1]) << ',' << g9(h.densities[i]) << '\n';
  }
  return 0;
}

struct VerifyArgs {
  int instances = 50;
  int max_n = 25;
  std::uint64_t seed = 3;
  int d = 0;  // 0: both
  int sweep = 4;
};

int run_verify(const VerifyArgs& a) {
  bool ok = true;
  for (const int d : {2, 3}) {
    if (a.d != 0 && a.d != d) continue;
    const auto r = run_oracle_suite(d, a.instances, a.max_n, a.seed);
    std::cout << "oracle d=" << d << ": " << r.instances << " instances, " << r.thresholds_checked << " thresholds, "
              << r.mismatches << " mismatches, " << r.euler_violations << " Euler violations\n";
    if (!r.first_mismatch.empty()) std::cout << "  first mismatch: " << r.first_mismatch << '\n';
    ok = ok && r.mismatches == 0 && r.euler_violations == 0;

    // Euler identity on larger instances in both topologies.
    for (const auto topo : {Topology::kTorus, Topology::kSphere}) {
      ExperimentConfig c;
      c.d = d;
      c.lambda = 500;
      c.seed = a.seed;
      c.topology = topo;
      c.eta_points = 8;
      std::size_t bad = 0;
      for (int i = 0; i < a.sweep; ++i) {
        try {
          (void)run_realization(c, i, {0.0});
        } catch (const RealizationError& e) {
          std::cout << "  " << e.what() << '\n';
          ++bad;
        }
      }
      std::cout << "Euler sweep d=" << d << ' ' << to_string(topo) << ": " << a.sweep << " realizations, " << bad
                << " failures\n";
      ok = ok && bad == 0;
    }
  }
  std::cout << (ok ? "verify: ok\n" : "verify: FAILED\n");
  return ok ? 0 : 1;
}

struct PlotArgs {
  std::string csv;
  std::string out;
  bool log = false, log_x = false, log_y = false;
  std::string x;
  std::vector<std::string> y;
  std::string title;
};

int run_plot(const PlotArgs& a) {
  std::ifstream in(a.csv);
  if (!in) throw std::runtime_error("cannot open " + a.csv);
  const auto table = read_csv(in);
  PlotOptions o;
  o.log_x = a.log || a.log_x;
  o.log_y = a.log || a.log_y;
  o.x_column = a.x;
  o.y_columns = a.y;
  o.title = a.title;
  std::string path = a.out;
  if (path.empty()) {
    path = a.csv;
    const auto dot = path.rfind('.');
    path = (dot == std::string::npos ? path : path.substr(0, dot)) + ".svg";
  }
  Output out(path);
  write_svg_plot(out.get(), table, o);
  return 0;
}

struct SignatureArgs {
  std::string points;
  std::string topology = "sphere";
  double alpha_max = 0.0;
  int grid = 200;
  std::string out;
  std::string dump;
};

int run_signature(const SignatureArgs& a) {
  const auto topo = topology_from_string(a.topology);
  const auto ps = read_points_file(a.points, topo == Topology::kTorus);
  if (ps.dim != 2 && ps.dim != 3) throw std::invalid_argument("signature needs 2D or 3D points");
  const auto k = topo == Topology::kTorus ? build_periodic(ps) : augment_with_infinity(build_delaunay(ps));
  const auto f = build_filtration(k, alpha_thresholds(k));
  if (!a.dump.empty()) {
    Output d(a.dump);
    write_filtration(d.get(), k, f);
  }
  const auto mf = mark_filtration(k, f);
  auto sig = signature(mf);
  sig.lambda = static_cast<double>(ps.size());
  double top = a.alpha_max;
  if (!(top > 0))
    for (std::size_t p = f.size(); p-- > 0;)
      if (std::isfinite(f.order[p].radius_sq)) {
        top = 1.05 * f.alpha(p);
        break;
      }
  std::vector<double> alphas;
  for (int i = 0; i < a.grid; ++i) alphas.push_back(top * i / std::max(1, a.grid - 1));
  Output out(a.out);
  write_signature_csv(out.get(), sig, alphas);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Betti numbers of random alpha shapes"};
  app.require_subcommand(1);

  SimulateArgs sim;
  auto* s = app.add_subcommand("simulate", "Monte Carlo means of Betti numbers on an eta grid");
  s->add_option("--config", sim.config_file, "key = value config file");
  s->add_option("-d", sim.cfg.d, "dimension (2 or 3)");
  s->add_option("--lambda", sim.cfg.lambda, "point intensity");
  s->add_option("-R,--realizations", sim.cfg.realizations, "number of realizations");
  s->add_option("--seed", sim.cfg.seed, "master seed");
  s->add_option("--eta-min", sim.cfg.eta_min);
  s->add_option("--eta-max", sim.cfg.eta_max);
  s->add_option("--eta-points", sim.cfg.eta_points);
  s->add_option("--topology", sim.topology, "torus or sphere")->check(CLI::IsMember({"torus", "sphere"}));
  s->add_option("--threads", sim.cfg.threads, "worker threads (0: all cores)");
  s->add_option("-o,--out", sim.cfg.out, "output CSV (default stdout)");
  s->add_flag("-q,--quiet", sim.quiet, "no progress output");

  AnalyticArgs an;
  auto* a = app.add_subcommand("analytic", "Reference curves as CSV");
  a->add_option("-d", an.d, "dimension (1, 2 or 3)");
  a->add_option("--eta-min", an.eta_min);
  a->add_option("--eta-max", an.eta_max);
  a->add_option("--points", an.points);
  a->add_option("-o,--out", an.out);
  a->add_flag("--constants", an.constants, "print the named constants instead");

  PdcArgs pd;
  auto* p = app.add_subcommand("pdc", "Poisson-Delaunay cell statistics and quadratures");
  p->add_option("-n,--points", pd.points, "points in [-1,1]^3");
  p->add_option("--margin", pd.margin);
  p->add_option("--bin-width", pd.bin_degrees, "histogram bin width in degrees");
  p->add_option("--seed", pd.seed);
  p->add_option("-o,--out", pd.out, "f_max histogram CSV");
  p->add_flag("--quadrature-only", pd.quadrature_only);

  VerifyArgs ve;
  auto* v = app.add_subcommand("verify", "GF(2) oracle and Euler identity checks");
  v->add_option("--instances", ve.instances);
  v->add_option("--max-n", ve.max_n);
  v->add_option("--seed", ve.seed);
  v->add_option("-d", ve.d, "2 or 3 (default both)");
  v->add_option("--sweep", ve.sweep, "realizations per topology in the Euler sweep");

  PlotArgs pl;
  auto* g = app.add_subcommand("plot", "CSV to SVG line chart");
  g->add_option("csv", pl.csv)->required();
  g->add_option("-o,--out", pl.out, "SVG path (default: CSV path with .svg)");
  g->add_flag("--log", pl.log, "log-log axes");
  g->add_flag("--logx", pl.log_x);
  g->add_flag("--logy", pl.log_y);
  g->add_option("-x", pl.x, "abscissa column");
  g->add_option("-y", pl.y, "ordinate columns");
  g->add_option("--title", pl.title);

  SignatureArgs sg;
  auto* sn = app.add_subcommand("signature", "Betti signature of one point set");
  sn->add_option("points", sg.points)->required();
  sn->add_option("--topology", sg.topology)->check(CLI::IsMember({"torus", "sphere"}));
  sn->add_option("--alpha-max", sg.alpha_max);
  sn->add_option("--grid", sg.grid);
  sn->add_option("-o,--out", sg.out);
  sn->add_option("--dump-filtration", sg.dump);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    std::cerr << app.help();
    return 2;
  }

  try {
    if (*s) return run_simulate(sim, *s);
    if (*a) return run_analytic(an);
    if (*p) return run_pdc(pd);
    if (*v) return run_verify(ve);
    if (*g) return run_plot(pl);
    if (*sn) return run_signature(sg);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what();
    if (*p) std::cerr << " [seed " << pd.seed << "]";
    std::cerr << '\n';
    return 1;
  }
  return 2;
}
