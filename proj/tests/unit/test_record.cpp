#include <doctest.h>

#include "qflag/error.hpp"
#include "qflag/record.hpp"
#include "qflag/verify.hpp"

using namespace qflag;

TEST_SUITE("record") {
  TEST_CASE("formats") {
    CHECK(parse_output_format("csv") == OutputFormat::Csv);
    CHECK_THROWS_AS(parse_output_format("xml"), ValidationError);
  }

  TEST_CASE("single value renders bare") {
    const Record r{"inv", {{"n", "10"}}, {"count"}, {{"47043"}}};
    CHECK(render(r, OutputFormat::Table) == "47043\n");
    CHECK(render(r, OutputFormat::Csv) == "count\n47043\n");
  }

  TEST_CASE("csv quoting and line endings") {
    const Record r{"verify", {}, {"check", "detail"}, {{"a", "x,y"}, {"b", "say \"hi\""}}};
    const std::string csv = render(r, OutputFormat::Csv);
    CHECK(csv == "check,detail\na,\"x,y\"\nb,\"say \"\"hi\"\"\"\n");
    CHECK(csv.find('\r') == std::string::npos);
  }

  TEST_CASE("table alignment") {
    const Record r{"invdist", {}, {"k", "count"}, {{"0", "1"}, {"10", "123"}}};
    CHECK(render(r, OutputFormat::Table) == "k   count\n0   1\n10  123\n");
  }

  TEST_CASE("json round trip keeps big integers exact") {
    const std::string huge = "123456789012345678901234567890123456789";
    const Record r{"qbinom", {{"n", "200"}, {"e", "100"}}, {"k", "coeff"}, {{"0", "1"}, {"1", huge}}};
    const std::string text = render(r, OutputFormat::Json);
    CHECK(text.find("\"" + huge + "\"") != std::string::npos);
    CHECK(parse_json_record(text) == r);
    CHECK_THROWS_AS(parse_json_record("{\"kind\": 3}"), ValidationError);
  }

  TEST_CASE("verification suites") {
    CHECK_THROWS_AS(run_verification("nope", 3), ValidationError);
    const auto serial = run_verification("all", 5, {}, 1);
    const auto parallel = run_verification("all", 5, {}, 4);
    REQUIRE(serial.size() == parallel.size());
    for (std::size_t i = 0; i < serial.size(); ++i) {
      CHECK(serial[i].name == parallel[i].name);
      CHECK(serial[i].passed);
      CHECK(parallel[i].passed);
    }
    for (const auto& suite : verification_suites()) CHECK_FALSE(run_verification(suite, 3).empty());
  }
}
