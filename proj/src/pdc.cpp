#include "betti/pdc.hpp"

#include <algorithm>
#include <array>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "betti/analytic.hpp"
#include "betti/delaunay.hpp"
#include "betti/sampling.hpp"

namespace betti {

namespace {

using constants::kPi;

double fmax_phi_2d(double phi) {
  if (phi < kPi / 3 || phi > kPi) return 0.0;
  if (phi < kPi / 2)
    return 2 / kPi * ((3 * phi - kPi) * std::sin(2 * phi) - std::cos(2 * phi) + std::cos(4 * phi));
  return 4 / kPi * (std::sin(phi) + (kPi - phi) * std::cos(phi)) * std::sin(phi);
}

double fmax_phi_3d_face(double phi) {
  if (phi < kPi / 3 || phi > kPi) return 0.0;
  const double s = std::sin(phi), c = std::cos(phi), s2 = s * s;
  if (phi < kPi / 2)
    return 8 / (kPi * kPi) * s2 * ((3 * phi - kPi) * (3 - 2 * s2) - (9 - 16 * s2 * s2) * s * c);
  return 8 / (kPi * kPi) * s2 * ((kPi - phi) * (3 - 2 * s2) + 3 * c * s);
}

double f_typical_theta(double t) {
  if (t < 0 || t > kPi) return 0.0;
  const double s = std::sin(t), c = 1 + std::cos(t);
  return 105.0 / 128.0 * s * s * s * s * s * c * c;
}

// CDF of the 3D circumradius in units where 4/3 pi lambda = 1, as a function
// of x = r^3: the regularized incomplete gamma P(3, x).
double radius_cdf_3d(double x) { return boost::math::gamma_p(3.0, x); }

// radius_cdf_3d(hi) - radius_cdf_3d(lo) without cancellation in either tail.
double radius_mass_3d(double lo, double hi) {
  if (lo > 2.0) return boost::math::gamma_q(3.0, lo) - boost::math::gamma_q(3.0, hi);
  return radius_cdf_3d(hi) - radius_cdf_3d(lo);
}

// Gauss-Kronrod with a relative target; the error estimate is returned so
// callers can judge it against the whole integral rather than one piece.
double gk(const std::function<double(double)>& f, double a, double b, double rel_tol, double& err) {
  double e = 0.0;
  const double v = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, 15, rel_tol, &e);
  err += e;
  return v;
}

void check_converged(double value, double err, double rel_tol, double a, double b, double abs_tol = 0.0) {
  if (err > rel_tol * std::abs(value) && err > abs_tol) {
    std::ostringstream os;
    os << "quadrature did not converge on [" << a << ", " << b << "]: achieved error " << err
       << " vs " << rel_tol * std::abs(value);
    throw std::runtime_error(os.str());
  }
}

// 105/128 * integral of (1-u)^2 (1+u)^4 from u to 1.
double typical_tail(double u) {
  // (1-u)^2 (1+u)^4 expanded in powers of u.
  std::array<double, 7> p{1.0};
  auto mul = [&](double c0, double c1) {
    std::array<double, 7> q{};
    for (int i = 0; i < 7; ++i) {
      q[i] += c0 * p[i];
      if (i + 1 < 7) q[i + 1] += c1 * p[i];
    }
    p = q;
  };
  for (int i = 0; i < 2; ++i) mul(1, -1);
  for (int i = 0; i < 4; ++i) mul(1, 1);
  auto antider = [&](double x) {
    double s = 0.0, xp = x;
    for (int i = 0; i < 7; ++i, xp *= x) s += p[i] * xp / (i + 1);
    return s;
  };
  return 105.0 / 128.0 * (antider(1.0) - antider(u));
}

}  // namespace

double AngleDensity::operator()(double x) const {
  if (closed_form) return closed_form(x);
  if (edges.empty() || x < edges.front() || x >= edges.back()) return 0.0;
  const auto it = std::upper_bound(edges.begin(), edges.end(), x);
  return densities[static_cast<std::size_t>(it - edges.begin()) - 1];
}

AngleDensity closed_form_density(const std::string& name, double lambda) {
  AngleDensity d;
  d.name = name;
  if (name == "fmax_phi_2d") {
    d.lo = kPi / 3, d.hi = kPi, d.closed_form = fmax_phi_2d;
  } else if (name == "fmax_phi_3d_face") {
    d.lo = kPi / 3, d.hi = kPi, d.closed_form = fmax_phi_3d_face;
  } else if (name == "f_typical_theta") {
    d.lo = 0, d.hi = kPi, d.closed_form = f_typical_theta;
  } else if (name == "f_R_2d") {
    d.lo = 0, d.hi = INFINITY;
    d.closed_form = [lambda](double r) {
      const double pl = kPi * lambda;
      return r < 0 ? 0.0 : 2 * pl * pl * r * r * r * std::exp(-pl * r * r);
    };
  } else if (name == "f_R_3d") {
    d.lo = 0, d.hi = INFINITY;
    d.closed_form = [lambda](double r) {
      const double r3 = r * r * r;
      return r < 0 ? 0.0
                   : 32 * kPi * kPi * kPi * lambda * lambda * lambda / 9 * r3 * r3 * r * r *
                         std::exp(-4 * kPi * lambda / 3 * r3);
    };
  } else {
    throw std::invalid_argument("unknown density: " + name);
  }
  return d;
}

double integrate(const std::function<double(double)>& f, double a, double b, double abs_tol) {
  double err = 0.0;
  double v = 0.0;
  if (std::isinf(b))
    v = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, 20, 1e-12, &err);
  else
    v = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, 20, 1e-12, &err);
  if (!(err <= abs_tol)) {
    std::ostringstream os;
    os << "quadrature did not converge on [" << a << ", " << b << "]: achieved error " << err
       << " > " << abs_tol;
    throw std::runtime_error(os.str());
  }
  return v;
}

std::vector<double> p_triangle_series_2d(int max_order) {
  if (max_order < 2 || max_order > 6) throw std::invalid_argument("series order must be in [2, 6]");
  std::vector<double> out;
  double factorial = 1.0;
  for (int j = 2; j <= max_order; ++j) {
    factorial = std::tgamma(j + 1.0);
    const double integral = integrate(
        [j](double phi) { return (1 - std::pow(std::sin(phi), -2 * j)) * fmax_phi_2d(phi); },
        kPi / 3, kPi / 2, 1e-8);
    const double sign = (j % 2 == 0) ? -1.0 : 1.0;  // (-1)^(j-1)
    out.push_back(sign * (j - 1) / factorial * integral);
  }
  return out;
}

double p_triangle_3d(double eta) {
  if (!(eta > 0)) throw std::invalid_argument("eta must be positive");
  // Units with 4/3 pi lambda = 1, so eta = alpha^3. The rho integral is done
  // in closed form: integral of f_R(rho / sin t) / sin t over
  // [alpha, alpha / sin phi] equals the radius CDF between alpha / sin t and
  // alpha / (sin t sin phi).
  const double alpha = std::cbrt(eta);
  auto inner = [&](double phi) {
    const double sp = std::sin(phi);
    auto g = [&](double t) {
      const double st = std::sin(t);
      if (st <= 0) return 0.0;
      const double lo = alpha / st, hi = lo / sp;
      return f_typical_theta(t) * radius_mass_3d(lo * lo * lo, hi * hi * hi);
    };
    // The weight concentrates where sin t is comparable to alpha.
    double sum = 0.0, err = 0.0;
    const std::array<double, 6> cuts{0.0, alpha / 4, alpha, 4 * alpha, kPi / 2, kPi};
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) sum += gk(g, cuts[i], cuts[i + 1], 1e-10, err);
    // P itself is about 0.04 eta^2, which sets the absolute scale.
    check_converged(sum, err, 1e-8, 0.0, kPi, 1e-10 * eta * eta);
    return fmax_phi_3d_face(phi) * sum;
  };
  double err = 0.0;
  const double p = gk(inner, kPi / 3, kPi / 2, 1e-9, err);
  check_converged(p, err, 1e-7, kPi / 3, kPi / 2);
  return p;
}

Triangle3dCoefficient p_triangle_coeff_3d() {
  Triangle3dCoefficient r;
  r.closed = std::sqrt(3.0) * constants::kA / 64 * (4 - kPi * kPi / 4);
  r.etas = {1e-2, std::pow(10.0, -2.5), 1e-3};
  double sx = 0, sy = 0, sxx = 0, sxy = 0, intercept2 = 0;
  for (const double e : r.etas) {
    const double p = p_triangle_3d(e);
    r.probabilities.push_back(p);
    const double x = std::log(e), y = std::log(p);
    sx += x, sy += y, sxx += x * x, sxy += x * y;
    intercept2 += y - 2 * x;
  }
  const double n = static_cast<double>(r.etas.size());
  r.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  // Intercept of the fit with the slope held at its asymptotic value 2.
  r.numeric = constants::kFaceIntensity3d * std::exp(intercept2 / n);
  r.relative_difference = std::abs(r.numeric - r.closed) / r.closed;
  if (r.relative_difference > 0.01) {
    std::ostringstream os;
    os << "asymptotics mismatch: closed " << r.closed << " vs numeric " << r.numeric;
    throw std::runtime_error(os.str());
  }
  return r;
}

double PdcSamples::theta_max(std::size_t t) const {
  return *std::max_element(theta.begin() + static_cast<std::ptrdiff_t>(4 * t),
                           theta.begin() + static_cast<std::ptrdiff_t>(4 * t + 4));
}

PdcSamples sample_pdc(std::size_t n_points, double margin, std::mt19937_64& rng) {
  if (n_points < 10000) throw std::invalid_argument("sample_pdc needs at least 10^4 points");
  if (!(margin > 0 && margin < 1)) throw std::invalid_argument("margin must be in (0, 1)");
  PdcSamples s;
  s.points = n_points;
  s.margin = margin;
  const double inner = 1 - margin;

  std::vector<Vec<3>> pts(n_points);
  std::vector<std::uint64_t> keys(n_points);
  for (std::size_t i = 0; i < n_points; ++i) {
    bool in = true;
    for (auto& c : pts[i]) {
      c = 2 * uniform01(rng) - 1;
      in = in && std::abs(c) <= inner;
    }
    s.interior_points += in;
    keys[i] = i;
  }
  const Triangulation<3> tri(std::move(pts), std::move(keys), rng());
  const auto& p = tri.points();

  for (std::size_t c = 0; c < tri.cells().size(); ++c) {
    if (!tri.alive(c) || tri.is_ghost(c)) continue;
    const auto& vs = tri.cells()[c].vertices;
    const std::array<Vec<3>, 4> x{p[vs[0]], p[vs[1]], p[vs[2]], p[vs[3]]};
    const auto cs = circumsphere<3>(std::span<const Vec<3>>(x));
    bool keep = true;
    for (const double v : cs.center) keep = keep && std::abs(v) <= inner;
    if (!keep) continue;
    s.radius.push_back(cs.radius);
    s.center.insert(s.center.end(), cs.center.begin(), cs.center.end());
    for (int i = 0; i < 4; ++i) {
      const Vec<3>& a = x[(i + 1) % 4];
      const Vec<3>& b = x[(i + 2) % 4];
      const Vec<3>& d = x[(i + 3) % 4];
      Vec<3> u{}, v{}, n{};
      for (int k = 0; k < 3; ++k) u[k] = b[k] - a[k], v[k] = d[k] - a[k];
      n = {u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]};
      const double len = std::sqrt(n[0] * n[0] + n[1] * n[1] + n[2] * n[2]);
      double away = 0.0, along = 0.0;
      for (int k = 0; k < 3; ++k) {
        away += n[k] * (x[i][k] - a[k]);
        along += n[k] * (a[k] - cs.center[k]);
      }
      // Outward normal points away from the opposite vertex.
      const double cosine = std::clamp((away > 0 ? -along : along) / (len * cs.radius), -1.0, 1.0);
      s.theta.push_back(std::acos(cosine));
    }
  }
  if (s.size() < 1000) throw std::runtime_error("too few tetrahedra survive the margin");
  return s;
}

double typical_theta_cdf(double theta) {
  if (theta <= 0) return 0.0;
  if (theta >= kPi) return 1.0;
  return typical_tail(std::cos(theta));
}

double ks_typical_theta(const PdcSamples& s) {
  std::vector<double> t = s.theta;
  std::sort(t.begin(), t.end());
  const double n = static_cast<double>(t.size());
  double d = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    const double f = typical_theta_cdf(t[i]);
    d = std::max({d, std::abs(static_cast<double>(i + 1) / n - f), std::abs(f - static_cast<double>(i) / n)});
  }
  return d;
}

AngleDensity fmax_theta_histogram(const PdcSamples& s, double bin_width) {
  if (!(bin_width > 0)) throw std::invalid_argument("bin width must be positive");
  const double theta0 = constants::kTheta0;
  AngleDensity h;
  h.name = "fmax_theta";
  h.lo = theta0;
  h.hi = kPi;
  for (double e = theta0; e < kPi; e += bin_width) h.edges.push_back(e);
  h.edges.push_back(kPi);
  std::vector<std::size_t> counts(h.edges.size() - 1, 0);
  for (std::size_t t = 0; t < s.size(); ++t) {
    const double m = s.theta_max(t);
    if (m < theta0 - 1e-9 || m > kPi) throw std::runtime_error("invalid sample");
    auto b = static_cast<std::size_t>(std::upper_bound(h.edges.begin(), h.edges.end(), m) - h.edges.begin());
    b = std::clamp<std::size_t>(b, 1, counts.size()) - 1;
    ++counts[b];
  }
  const double n = static_cast<double>(s.size());
  for (std::size_t b = 0; b < counts.size(); ++b)
    h.densities.push_back(static_cast<double>(counts[b]) / (n * (h.edges[b + 1] - h.edges[b])));
  return h;
}

namespace {

double weight_integral(const AngleDensity& h) {
  double sum = 0.0;
  for (std::size_t b = 0; b + 1 < h.edges.size(); ++b) {
    const double lo = h.edges[b], hi = std::min(h.edges[b + 1], kPi / 2);
    if (hi <= lo || h.densities[b] == 0.0) continue;
    sum += h.densities[b] *
           integrate([](double t) { return std::pow(std::sin(t), -9) - 1; }, lo, hi, 1e-9);
  }
  return sum;
}

PdcSamples subset(const PdcSamples& s, bool positive_x) {
  PdcSamples out;
  for (std::size_t t = 0; t < s.size(); ++t) {
    if ((s.center[3 * t] >= 0) != positive_x) continue;
    out.radius.push_back(s.radius[t]);
    out.theta.insert(out.theta.end(), s.theta.begin() + static_cast<std::ptrdiff_t>(4 * t),
                     s.theta.begin() + static_cast<std::ptrdiff_t>(4 * t + 4));
  }
  return out;
}

}  // namespace

Beta2Coefficient beta2_coeff_3d(const PdcSamples& s, double bin_width) {
  Beta2Coefficient r;
  r.integral = weight_integral(fmax_theta_histogram(s, bin_width));
  double direct = 0.0;
  for (std::size_t t = 0; t < s.size(); ++t) {
    const double m = s.theta_max(t);
    if (m < kPi / 2) direct += std::pow(std::sin(m), -9) - 1;
  }
  r.integral_direct = direct / static_cast<double>(s.size());
  r.coefficient = constants::kTetIntensity3d * r.integral / 6;
  // Halves split by the sign of the circumcentre's x coordinate.
  r.split_a = weight_integral(fmax_theta_histogram(subset(s, false), bin_width));
  r.split_b = weight_integral(fmax_theta_histogram(subset(s, true), bin_width));
  r.split_relative = std::abs(r.split_a - r.split_b) / (0.5 * (r.split_a + r.split_b));
  return r;
}

}  // namespace betti
