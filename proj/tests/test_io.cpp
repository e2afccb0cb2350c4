#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "betti/io.hpp"
#include "betti/sampling.hpp"

using namespace betti;

TEST_CASE("reading points") {
  std::istringstream in("0.1 0.2\n0.3 0.4\n");
  const auto ps = read_points(in);
  CHECK(ps.dim == 2);
  CHECK(ps.size() == 2);
  CHECK(ps.coords == std::vector<double>{0.1, 0.2, 0.3, 0.4});
  CHECK(ps.labels == std::vector<std::int32_t>{0, 1});

  std::istringstream comments("# header\n\n0.5 0.5 0.5\n");
  CHECK(read_points(comments).dim == 3);
}

TEST_CASE("parse errors name the line") {
  std::istringstream ragged("0.1 0.2 0.3\n0.1 0.2\n");
  try {
    (void)read_points(ragged);
    FAIL("no error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
  std::istringstream word("0.1 0.2\n0.3 x\n0.1 0.1\n");
  try {
    (void)read_points(word);
    FAIL("no error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
  std::istringstream outside("0.1 0.2\n0.3 1.0\n");
  CHECK_NOTHROW((void)read_points(outside));
  std::istringstream outside2("0.1 0.2\n0.3 1.0\n");
  try {
    (void)read_points(outside2, true);
    FAIL("no error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
  std::istringstream empty("");
  CHECK_THROWS_WITH_AS(read_points(empty), "no points", ParseError);
}

TEST_CASE("round trip to 17 digits") {
  auto rng = make_rng({1, 2});
  const auto ps = sample_points(500, 3, rng);
  std::stringstream io;
  write_points(io, ps);
  const auto back = read_points(io, true);
  CHECK(back.coords == ps.coords);
}

TEST_CASE("CSV and SVG") {
  std::istringstream in("eta,a,a_sem,b\n0,1,0.1,0\n1,2,0.1,-1\n10,3,0.1,inf\n");
  const auto t = read_csv(in);
  CHECK(t.columns.size() == 4);
  CHECK(t.rows.size() == 3);
  CHECK(t.index("b") == 3);
  CHECK_THROWS_AS(t.index("c"), std::invalid_argument);

  std::ostringstream lin;
  write_svg_plot(lin, t, {});
  const auto s = lin.str();
  CHECK(s.find("<svg") != std::string::npos);
  CHECK(s.find(">a</text>") != std::string::npos);
  CHECK(s.find(">a_sem</text>") == std::string::npos);
  CHECK(s.find("</svg>") != std::string::npos);

  PlotOptions log;
  log.log_x = log.log_y = true;
  std::ostringstream lg;
  write_svg_plot(lg, t, log);
  CHECK(lg.str().find("(log)") != std::string::npos);
  CHECK(lg.str().find(">10</text>") != std::string::npos);

  std::istringstream bad("x,y\n1,2\n3\n");
  CHECK_THROWS_AS(read_csv(bad), ParseError);
}
