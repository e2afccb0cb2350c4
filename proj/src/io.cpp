#include "betti/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace betti {

namespace {

bool parse_double(const std::string& tok, double& x) {
  if (tok.empty()) return false;
  char* end = nullptr;
  x = std::strtod(tok.c_str(), &end);
  return end == tok.c_str() + tok.size();
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(line);
  while (std::getline(is, cur, sep)) {
    const auto b = cur.find_first_not_of(" \t\r");
    const auto e = cur.find_last_not_of(" \t\r");
    out.push_back(b == std::string::npos ? std::string() : cur.substr(b, e - b + 1));
  }
  return out;
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (const char c : s) {
    if (c == '<') out += "&lt;";
    else if (c == '>') out += "&gt;";
    else if (c == '&') out += "&amp;";
    else out += c;
  }
  return out;
}

// Roughly five round tick values covering [lo, hi].
std::vector<double> linear_ticks(double lo, double hi) {
  const double span = hi - lo;
  const double raw = span / 5;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  double step = mag;
  for (const double m : {1.0, 2.0, 5.0, 10.0})
    if (m * mag >= raw) {
      step = m * mag;
      break;
    }
  std::vector<double> t;
  for (double v = std::ceil(lo / step) * step; v <= hi + 1e-9 * span; v += step) t.push_back(std::abs(v) < 1e-12 * step ? 0.0 : v);
  return t;
}

}  // namespace

PointSet read_points(std::istream& in, bool unit_cube) {
  PointSet ps;
  std::string line;
  int lineno = 0;
  std::vector<double> row;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    row.clear();
    std::istringstream is(line);
    std::string tok;
    while (is >> tok) {
      double x = 0;
      if (!parse_double(tok, x) || !std::isfinite(x))
        throw ParseError("line " + std::to_string(lineno) + ": not a number: '" + tok + "'", lineno);
      if (unit_cube && !(x >= 0.0 && x < 1.0))
        throw ParseError("line " + std::to_string(lineno) + ": coordinate " + tok + " outside [0,1)", lineno);
      row.push_back(x);
    }
    if (ps.dim == 0) {
      if (row.size() < 1 || row.size() > 3)
        throw ParseError("line " + std::to_string(lineno) + ": expected 1 to 3 coordinates", lineno);
      ps.dim = static_cast<int>(row.size());
    } else if (static_cast<int>(row.size()) != ps.dim) {
      throw ParseError("line " + std::to_string(lineno) + ": expected " + std::to_string(ps.dim) +
                           " coordinates, found " + std::to_string(row.size()),
                       lineno);
    }
    ps.push_back(row, static_cast<std::int32_t>(ps.size()));
  }
  if (ps.empty()) throw ParseError("no points", lineno);
  return ps;
}

PointSet read_points_file(const std::string& path, bool unit_cube) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path);
  return read_points(f, unit_cube);
}

void write_points(std::ostream& out, const PointSet& ps) {
  char buf[32];
  for (std::size_t i = 0; i < ps.size(); ++i) {
    for (int c = 0; c < ps.dim; ++c) {
      std::snprintf(buf, sizeof buf, "%.17g", ps.coords[i * ps.dim + c]);
      out << (c ? " " : "") << buf;
    }
    out << '\n';
  }
}

std::size_t CsvTable::index(const std::string& name) const {
  const auto it = std::find(columns.begin(), columns.end(), name);
  if (it == columns.end()) throw std::invalid_argument("no column named " + name);
  return static_cast<std::size_t>(it - columns.begin());
}

CsvTable read_csv(std::istream& in) {
  CsvTable t;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    auto fields = split(line, ',');
    if (t.columns.empty()) {
      t.columns = fields;
      continue;
    }
    if (fields.size() != t.columns.size())
      throw ParseError("line " + std::to_string(lineno) + ": expected " + std::to_string(t.columns.size()) + " fields",
                       lineno);
    std::vector<double> row;
    for (const auto& f : fields) {
      double x = 0;
      if (!parse_double(f, x)) throw ParseError("line " + std::to_string(lineno) + ": not a number: '" + f + "'", lineno);
      row.push_back(x);
    }
    t.rows.push_back(std::move(row));
  }
  if (t.columns.empty()) throw ParseError("empty CSV", lineno);
  return t;
}

void write_svg_plot(std::ostream& out, const CsvTable& table, const PlotOptions& opt) {
  const std::size_t xi = opt.x_column.empty() ? 0 : table.index(opt.x_column);
  std::vector<std::size_t> ys;
  if (opt.y_columns.empty()) {
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
      const auto& n = table.columns[i];
      if (i != xi && !(n.size() > 4 && n.compare(n.size() - 4, 4, "_sem") == 0)) ys.push_back(i);
    }
  } else {
    for (const auto& n : opt.y_columns) ys.push_back(table.index(n));
  }
  if (ys.empty()) throw std::invalid_argument("nothing to plot");

  auto usable = [](double v, bool log) { return std::isfinite(v) && (!log || v > 0); };
  double x0 = INFINITY, x1 = -INFINITY, y0 = INFINITY, y1 = -INFINITY;
  for (const auto& r : table.rows) {
    if (!usable(r[xi], opt.log_x)) continue;
    for (const auto c : ys) {
      if (!usable(r[c], opt.log_y)) continue;
      x0 = std::min(x0, r[xi]), x1 = std::max(x1, r[xi]);
      y0 = std::min(y0, r[c]), y1 = std::max(y1, r[c]);
    }
  }
  if (!(x0 <= x1)) throw std::invalid_argument("no plottable points");
  auto tr = [](double v, bool log) { return log ? std::log10(v) : v; };
  double ax0 = tr(x0, opt.log_x), ax1 = tr(x1, opt.log_x), ay0 = tr(y0, opt.log_y), ay1 = tr(y1, opt.log_y);
  if (opt.log_x) ax0 = std::floor(ax0), ax1 = std::ceil(ax1);
  if (opt.log_y) ay0 = std::floor(ay0), ay1 = std::ceil(ay1);
  if (ax1 == ax0) ax1 = ax0 + 1;
  if (ay1 == ay0) ay0 -= 0.5, ay1 += 0.5;

  const double left = 70, right = 160, top = 40, bottom = 50;
  const double pw = opt.width - left - right, ph = opt.height - top - bottom;
  auto px = [&](double v) { return left + (tr(v, opt.log_x) - ax0) / (ax1 - ax0) * pw; };
  auto py = [&](double v) { return top + ph - (tr(v, opt.log_y) - ay0) / (ay1 - ay0) * ph; };

  static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf"};
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << opt.width << "\" height=\""
      << opt.height << "\" font-family=\"sans-serif\" font-size=\"12\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (!opt.title.empty())
    out << "<text x=\"" << left + pw / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">" << escape(opt.title)
        << "</text>\n";
  out << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << pw << "\" height=\"" << ph
      << "\" fill=\"none\" stroke=\"black\"/>\n";

  auto ticks = [](double a0, double a1, bool log) {
    std::vector<double> t;
    if (log)
      for (double e = a0; e <= a1 + 1e-9; e += 1) t.push_back(std::pow(10.0, e));
    else
      t = linear_ticks(a0, a1);
    return t;
  };
  for (const double t : ticks(ax0, ax1, opt.log_x)) {
    const double x = px(t);
    out << "<line x1=\"" << x << "\" y1=\"" << top + ph << "\" x2=\"" << x << "\" y2=\"" << top + ph + 5
        << "\" stroke=\"black\"/><text x=\"" << x << "\" y=\"" << top + ph + 18 << "\" text-anchor=\"middle\">" << fmt(t)
        << "</text>\n";
  }
  for (const double t : ticks(ay0, ay1, opt.log_y)) {
    const double y = py(t);
    out << "<line x1=\"" << left - 5 << "\" y1=\"" << y << "\" x2=\"" << left << "\" y2=\"" << y
        << "\" stroke=\"black\"/><text x=\"" << left - 8 << "\" y=\"" << y + 4 << "\" text-anchor=\"end\">" << fmt(t)
        << "</text>\n";
  }
  out << "<text x=\"" << left + pw / 2 << "\" y=\"" << opt.height - 10 << "\" text-anchor=\"middle\">"
      << escape(table.columns[xi]) << (opt.log_x ? " (log)" : "") << "</text>\n";

  for (std::size_t s = 0; s < ys.size(); ++s) {
    const char* color = colors[s % 8];
    std::string pts;
    auto flush = [&] {
      if (!pts.empty())
        out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"" << pts << "\"/>\n";
      pts.clear();
    };
    for (const auto& r : table.rows) {
      if (!usable(r[xi], opt.log_x) || !usable(r[ys[s]], opt.log_y)) {
        flush();
        continue;
      }
      pts += fmt(px(r[xi])) + "," + fmt(py(r[ys[s]])) + " ";
    }
    flush();
    const double ly = top + 10 + 18 * static_cast<double>(s);
    out << "<line x1=\"" << left + pw + 10 << "\" y1=\"" << ly << "\" x2=\"" << left + pw + 30 << "\" y2=\"" << ly
        << "\" stroke=\"" << color << "\" stroke-width=\"2\"/><text x=\"" << left + pw + 35 << "\" y=\"" << ly + 4
        << "\">" << escape(table.columns[ys[s]]) << "</text>\n";
  }
  out << "</svg>\n";
}

}  // namespace betti
