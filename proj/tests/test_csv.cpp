#include <doctest.h>

#include <sstream>

#include "casimir/csv.hpp"
#include "casimir/errors.hpp"

namespace csv = casimir::csv;

TEST_CASE("fixed scientific formatting with 12 significant digits") {
  CHECK(csv::format(1.0) == "1.00000000000e+00");
  CHECK(csv::format(-3.877e-4) == "-3.87700000000e-04");
  CHECK(csv::format(0.0) == "0.00000000000e+00");
  CHECK(csv::parse_double(csv::format(0.1234567890123), "x") == doctest::Approx(0.123456789012).epsilon(1e-12));
}

TEST_CASE("exact formatting round-trips") {
  for (double v : {0.1, 1.0 / 3.0, 9.17e6, 4.89, 1e-300}) {
    CHECK(csv::parse_double(csv::format_exact(v), "x") == v);
  }
}

TEST_CASE("parse_double is strict") {
  CHECK(csv::parse_double(" +2.5 ", "x") == 2.5);
  CHECK_THROWS_AS(csv::parse_double("2.5x", "x"), casimir::ValidationError);
  CHECK_THROWS_AS(csv::parse_double("", "x"), casimir::ValidationError);
  CHECK_THROWS_AS(csv::parse_double("nan", "x"), casimir::ValidationError);
  CHECK_THROWS_AS(csv::parse_double("inf", "x"), casimir::ValidationError);
}

TEST_CASE("numeric table reader") {
  std::istringstream in("\xEF\xBB\xBF# comment\na,b\n\n1,2\n# mid\n3, 4e1\n");
  const auto t = csv::read_numeric(in, {"a", "b"}, "t.csv");
  REQUIRE(t.rows.size() == 2);
  CHECK(t.rows[1][1] == 40.0);
  CHECK(t.line_numbers == std::vector<int>{4, 6});
}

TEST_CASE("numeric reader errors name the line") {
  std::istringstream bad_field("a,b\n1,2\n3,x\n");
  try {
    csv::read_numeric(bad_field, {"a", "b"}, "t.csv");
    FAIL("expected an error");
  } catch (const casimir::ValidationError& e) {
    CHECK(std::string(e.what()).find("t.csv:3") != std::string::npos);
  }
  std::istringstream bad_header("a,c\n1,2\n");
  CHECK_THROWS_AS(csv::read_numeric(bad_header, {"a", "b"}, "t.csv"), casimir::ValidationError);
  std::istringstream short_row("a,b\n1\n");
  CHECK_THROWS_AS(csv::read_numeric(short_row, {"a", "b"}, "t.csv"), casimir::ValidationError);
  std::istringstream empty("# nothing\n");
  CHECK_THROWS_AS(csv::read_numeric(empty, {"a", "b"}, "t.csv"), casimir::ValidationError);
}

TEST_CASE("record reader keeps text fields") {
  std::istringstream in("model,x\ndrude,1\nplasma,2\n# summary\n");
  const auto t = csv::read_records(in, "r");
  REQUIRE(t.rows.size() == 2);
  CHECK(t.rows[1][0] == "plasma");
  std::istringstream ragged("a,b\n1,2,3\n");
  CHECK_THROWS_AS(csv::read_records(ragged, "r"), casimir::ValidationError);
}
