#include "doctest.h"

#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "cechx/io.hpp"
#include "support.hpp"

using namespace cechx;

namespace {

PointCloud parse(const std::string& text) {
  std::istringstream in(text);
  return parse_points(in);
}

int error_line(const std::string& text) {
  try {
    parse(text);
  } catch (const ParseError& e) {
    return e.line();
  }
  return -1;
}

}  // namespace

TEST_CASE("point files with comments, commas and blank lines") {
  const PointCloud c = parse("# header\n\n1 2\n3,4   # trailing\n  +5 , -6.5e0\n");
  REQUIRE(c.size() == 3);
  CHECK(c[0].id == 0);
  CHECK(c[2].id == 2);
  CHECK(c[1].coords == Vec{3.0, 4.0});
  CHECK(c[2].coords == Vec{5.0, -6.5});
  CHECK(parse("1\n2\n").size() == 2);
}

TEST_CASE("parse failures report the offending line") {
  CHECK(error_line("1 2\n3 x\n") == 2);
  CHECK(error_line("# c\n1 2\n\n3 4 5\n") == 4);
  CHECK(error_line("1 2\n3 nan\n") == 2);
  CHECK(error_line("1 2\n3 inf\n") == 2);
  CHECK(parse("1,,2\n")[0].coords == Vec{1.0, 2.0});
  CHECK(error_line("") == 0);
  CHECK(error_line("# only comments\n\n") == 0);
  CHECK(error_line("1 2\n") == -1);
  CHECK_THROWS_AS(read_points("/nonexistent/points.txt"), ParseError);
}

TEST_CASE("diagram json round trip") {
  PersistenceDiagram d;
  const double inf = std::numeric_limits<double>::infinity();
  d.dims = {{PersistencePoint{0.0, 0.5}, PersistencePoint{0.0, inf}},
            {PersistencePoint{1.0, 1.1547005383792515}}};
  const PersistenceDiagram back = diagram_from_json(diagram_to_json(d));
  CHECK(back == d);
  CHECK(diagram_to_json(d)[0]["points"][1][1] == "inf");
  const nlohmann::json single = diagram_to_json(d.dims[1], 1);
  const PersistenceDiagram one = diagram_from_json(single);
  REQUIRE(one.pmax() == 1);
  CHECK(one.at(0).empty());
  CHECK(one.at(1) == d.dims[1]);
  const nlohmann::json text = nlohmann::json::parse(diagram_to_json(d).dump());
  CHECK(diagram_from_json(text) == d);
  CHECK_THROWS_AS(diagram_from_json(nlohmann::json::parse(R"({"p": 0})")), ParseError);
  CHECK_THROWS_AS(diagram_from_json(nlohmann::json::parse(R"({"p": 0, "points": [[1]]})")),
                  ParseError);
}

TEST_CASE("filtration dump format") {
  Filtration f;
  f.entries = {{make_simplex({0}), 0.0}, {make_simplex({1}), 0.0}, {make_simplex({0, 1}), 0.1}};
  std::ostringstream out;
  write_filtration(out, f);
  std::istringstream lines(out.str());
  std::string line;
  std::vector<std::string> all;
  while (std::getline(lines, line)) all.push_back(line);
  REQUIRE(all.size() == 3);
  CHECK(all[0] == "0 ; 0");
  CHECK(all[2].rfind("0 1 ; ", 0) == 0);
  CHECK(std::stod(all[2].substr(6)) == 0.1);
}

TEST_CASE("well separated tuple json") {
  Cell a;
  a.height = -1;
  a.dim = 2;
  a.index[0] = 3;
  a.index[1] = -2;
  Cell b = a;
  b.index[0] = 7;
  const WST t{{a, b}, 2.5};
  const nlohmann::json j = wst_to_json(t);
  CHECK(j["k"] == 1);
  CHECK(j["rad"] == 2.5);
  CHECK(j["cells"][0] == nlohmann::json::array({-1, 3, -2}));
  CHECK(j["cells"][1][1] == 7);
}
