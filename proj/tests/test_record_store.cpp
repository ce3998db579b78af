#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "dedup/record_store.hpp"
#include "support.hpp"

using namespace dedup;
using Catch::Matchers::ContainsSubstring;

TEST_CASE("toy file loads with explicit missing day", "[record_store]") {
  auto df = testing::toy_file();
  REQUIRE(record_count(df) == 5);
  REQUIRE(df.records[1].missing(df.field_index("day")));
  REQUIRE_FALSE(df.records[0].missing(df.field_index("day")));
  CHECK(df.records[0].integer(df.field_index("day")) == 29);
  CHECK(df.records[3].integer(df.field_index("month")) == 8);
  CHECK(df.records[3].text(df.field_index("given_name")) == "JULIAN ANDRES");
  for (std::size_t i = 0; i < df.r(); ++i) CHECK(df.records[i].id == i);
}

TEST_CASE("empty body is rejected", "[record_store]") {
  std::istringstream header_only("given_name,family_name,year,month,day,municipality\n");
  REQUIRE_THROWS_AS(read_delimited(header_only, testing::toy_schema()), DataError);
  std::istringstream header_only2("given_name,family_name,year,month,day,municipality\n");
  REQUIRE_THROWS_WITH(read_delimited(header_only2, testing::toy_schema()), ContainsSubstring("no records"));
  std::istringstream nothing("");
  REQUIRE_THROWS_AS(read_delimited(nothing, testing::toy_schema()), DataError);
}

TEST_CASE("single record file", "[record_store]") {
  std::istringstream in("given_name,family_name,year,month,day,municipality\nANA,PEREZ,1990,8,1,C\n");
  auto df = read_delimited(in, testing::toy_schema());
  CHECK(record_count(df) == 1);
  CHECK(df.records[0].integer(df.field_index("month")) == 8);
}

TEST_CASE("integer cells parse strictly with row and column in the error", "[record_store]") {
  std::istringstream in("given_name,family_name,year,month,day,municipality\nANA,PEREZ,1990,8x,1,C\n");
  try {
    read_delimited(in, testing::toy_schema());
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.row() == 1);
    CHECK(e.column() == "month");
  }
  CHECK_FALSE(parse_integer("1.5"));
  CHECK_FALSE(parse_integer(""));
  CHECK(parse_integer("-12") == -12);
}

TEST_CASE("schema problems are configuration errors", "[record_store]") {
  std::istringstream dup("given_name,given_name,family_name,year,month,day,municipality\nA,A,B,1,1,1,C\n");
  REQUIRE_THROWS_AS(read_delimited(dup, testing::toy_schema()), ConfigError);
  std::istringstream missing("given_name,year\nA,1\n");
  REQUIRE_THROWS_AS(read_delimited(missing, testing::toy_schema()), ConfigError);
  auto schema = testing::toy_schema();
  schema.push_back(schema.front());
  REQUIRE_THROWS_AS(validate_schema(schema), ConfigError);
}

TEST_CASE("extra header columns are ignored and order follows the schema", "[record_store]") {
  std::istringstream in("id,municipality,day,month,year,family_name,given_name\n7,b,5,8,1986, ramos   rojas ,julian\n");
  auto df = read_delimited(in, testing::toy_schema());
  CHECK(df.records[0].text(0) == "JULIAN");
  CHECK(df.records[0].text(1) == "RAMOS ROJAS");
  CHECK(df.records[0].text(5) == "B");
}

TEST_CASE("tab delimiter, empty cells and custom missing token", "[record_store]") {
  std::istringstream in("given_name\tfamily_name\tyear\tmonth\tday\tmunicipality\nA\t\t-\t3\t4\tX\n");
  auto df = read_delimited(in, testing::toy_schema(), '\t', "-");
  CHECK(df.records[0].missing(1));
  CHECK(df.records[0].missing(2));
  CHECK(df.records[0].integer(3) == 3);
}

TEST_CASE("all-missing record is still a record", "[record_store]") {
  std::istringstream in("given_name,family_name,year,month,day,municipality\nNA,NA,NA,NA,NA,NA\nA,B,1,2,3,C\n");
  auto df = read_delimited(in, testing::toy_schema());
  REQUIRE(df.r() == 2);
  for (std::size_t f = 0; f < df.schema.size(); ++f) CHECK(df.records[0].missing(f));
}

TEST_CASE("write and reload round-trips values and missingness", "[record_store]") {
  std::istringstream in(
      "given_name,family_name,year,month,day,municipality\n"
      "\"DE LA, CRUZ\",O'NEIL,1981,NA,29,SAN SALVADOR\n"
      "NA,\"QUOTE \"\"X\"\"\",NA,2,NA,NA\n");
  auto df = read_delimited(in, testing::toy_schema());
  CHECK(df.records[0].text(0) == "DE LA, CRUZ");
  CHECK(df.records[1].text(1) == "QUOTE \"X\"");
  std::ostringstream out;
  write_delimited(out, df);
  std::istringstream back(out.str());
  auto df2 = read_delimited(back, testing::toy_schema());
  REQUIRE(df2.r() == df.r());
  for (std::size_t i = 0; i < df.r(); ++i) CHECK(df2.records[i].values == df.records[i].values);
}

TEST_CASE("text normalization uppercases and collapses whitespace", "[record_store]") {
  CHECK(normalize_text("  julian \t andres ") == "JULIAN ANDRES");
  CHECK(normalize_text("") == "");
}

TEST_CASE("drop_incomplete removes rows and renumbers", "[record_store]") {
  auto df = testing::toy_file();
  CHECK(drop_incomplete(df, {"day"}) == 1);
  REQUIRE(df.r() == 4);
  for (std::size_t i = 0; i < df.r(); ++i) CHECK(df.records[i].id == i);
  CHECK(df.records[1].integer(df.field_index("month")) == 3);
  REQUIRE_THROWS_AS(drop_incomplete(df, {"nope"}), ConfigError);
}
