#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "betti/point_set.hpp"

namespace betti {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, int line) : std::runtime_error(what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

/// One point per line, whitespace-separated coordinates; blank lines and
/// lines starting with '#' are skipped. Labels follow line order. With
/// unit_cube set every coordinate must lie in [0,1). Throws ParseError for
/// ragged rows, non-numeric fields, out-of-range coordinates, and
/// ParseError("no points") for an empty input.
PointSet read_points(std::istream& in, bool unit_cube = false);
PointSet read_points_file(const std::string& path, bool unit_cube = false);

/// Writes coordinates with 17 significant digits, so reading them back gives
/// the same doubles.
void write_points(std::ostream& out, const PointSet& points);

struct CsvTable {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  /// Index of a column; throws std::invalid_argument if absent.
  std::size_t index(const std::string& name) const;
};

/// Numeric CSV with a header row. "inf" and "nan" are accepted.
CsvTable read_csv(std::istream& in);

struct PlotOptions {
  bool log_x = false;
  bool log_y = false;
  std::string title;
  std::string x_column;                // default: first column
  std::vector<std::string> y_columns;  // default: every other column not ending in "_sem"
  int width = 720;
  int height = 480;
};

/// Static SVG line chart of CSV columns. In log mode nonpositive values break
/// the polyline instead of being drawn.
void write_svg_plot(std::ostream& out, const CsvTable& table, const PlotOptions& options);

}  // namespace betti
