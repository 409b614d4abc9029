#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "test_support.hpp"

#include "mldcone/io.hpp"
#include "mldcone/mld.hpp"

#include <json.hpp>

#include <cstdio>
#include <fstream>

using namespace mldcone;
using test_support::p23_cone;
using test_support::rat;

TEST_CASE("cone serialization round trip") {
  FanoConeData cone = p23_cone();
  std::string text = cone_to_json(cone);
  FanoConeData back = cone_from_json(text);
  CHECK(back.name == cone.name);
  CHECK(back.r == cone.r);
  CHECK(back.dim == cone.dim);
  REQUIRE(back.charts.size() == 2);
  CHECK(back.charts[0].label() == "U0");
  CHECK(back.charts[1].factors()[0].order == 3);
  CHECK(back.charts[1].factors()[0].weights == std::vector<std::int64_t>{1, 1});
  // The certificate is not part of the interchange format.
  CHECK_FALSE(back.ambient_unimodular.has_value());

  // Fractional r and factorless charts survive the trip.
  FanoConeData frac;
  frac.name = "third";
  frac.r = rat(2, 3);
  frac.dim = 2;
  frac.charts.push_back(QuotientChart("T", 2, {}));
  FanoConeData frac_back = cone_from_json(cone_to_json(frac));
  CHECK(frac_back.r == rat(2, 3));
  REQUIRE(frac_back.charts.size() == 1);
  CHECK(frac_back.charts[0].trivial_group());
}

TEST_CASE("strict parsing names the offending field") {
  auto expect_error = [](const std::string& text, const std::string& needle) {
    try {
      cone_from_json(text);
      FAIL("no error for: " << text);
    } catch (const ParseError& e) {
      CHECK(std::string(e.what()).find(needle) != std::string::npos);
    }
  };

  expect_error("{", "cone input");
  expect_error("[1,2]", "expected an object");
  expect_error(R"({"r":"1","dim":2,"charts":[]})", "name");
  expect_error(R"({"name":"x","r":"1","dim":2,"charts":[],"extra":1})",
               "unknown field 'extra'");
  expect_error(R"({"name":"x","r":1,"dim":2,"charts":[]})", "'r'");
  expect_error(R"({"name":"x","r":"1/0","dim":2,"charts":[]})", "'r'");
  expect_error(R"({"name":"x","r":"1","dim":"2","charts":[]})", "'dim'");
  expect_error(R"({"name":"x","r":"1","dim":2,"charts":{}})", "charts");
  expect_error(
      R"({"name":"x","r":"1","dim":2,"charts":[{"label":"U","factors":[{"order":2,"weights":[1]}]}]})",
      "charts[0]");
  expect_error(
      R"({"name":"x","r":"1","dim":2,"charts":[{"label":"U","factors":[{"order":0,"weights":[1,1]}]}]})",
      "charts[0]");
  expect_error(
      R"({"name":"x","r":"1","dim":2,"charts":[{"label":"U","factors":[{"order":2,"weights":[1,1.5]}]}]})",
      "weights[1]");
  expect_error(
      R"({"name":"x","r":"1","dim":2,"charts":[{"label":"U","factors":[{"order":2,"wts":[1,1]}]}]})",
      "unknown field 'wts'");
}

TEST_CASE("cone files") {
  std::string path = "io_test_cone.json";
  {
    std::ofstream out(path, std::ios::binary);
    out << cone_to_json(p23_cone());
  }
  FanoConeData cone = load_cone_file(path);
  CHECK(cone.name == "P(2,3)");
  CHECK(mld_eq2(cone).value == Rat(2));
  std::remove(path.c_str());

  CHECK_THROWS_AS(load_cone_file("does_not_exist.json"), ParseError);
}

TEST_CASE("quotient shorthand") {
  FanoConeData a2 = parse_quotient_shorthand("3:1,2");
  CHECK(a2.name == "3:1,2");
  CHECK(a2.r == Rat(2));

  // Weights reduce into [0, m), so the name is canonical.
  CHECK(parse_quotient_shorthand("3:1,-1").name == "3:1,2");
  CHECK(parse_quotient_shorthand("3:1,5").name == "3:1,2");
  CHECK(parse_quotient_shorthand("1:0,0").r == Rat(2));

  CHECK_THROWS_AS(parse_quotient_shorthand("abc"), ParseError);
  CHECK_THROWS_AS(parse_quotient_shorthand("3"), ParseError);
  CHECK_THROWS_AS(parse_quotient_shorthand("3:"), ParseError);
  CHECK_THROWS_AS(parse_quotient_shorthand("3:1"), ParseError);
  CHECK_THROWS_AS(parse_quotient_shorthand("3:1,,2"), ParseError);
  CHECK_THROWS_AS(parse_quotient_shorthand("0:1,1"), ParseError);
  CHECK_THROWS_AS(parse_quotient_shorthand("3:1, 2"), ParseError);
  // Structurally fine but not isolated: a semantic failure, not a parse one.
  CHECK_THROWS_AS(parse_quotient_shorthand("4:1,2"), ValidationError);
}

TEST_CASE("element strings") {
  CHECK(exponents_str({}) == "e");
  CHECK(exponents_str({0, 0}) == "e");
  CHECK(exponents_str({1}) == "1");
  CHECK(exponents_str({1, 2}) == "1;2");
}

TEST_CASE("csv quoting") {
  CHECK(csv_quote("plain") == "plain");
  CHECK(csv_quote("P(2,3)") == "\"P(2,3)\"");
  CHECK(csv_quote("say \"hi\"") == "\"say \"\"hi\"\"\"");
  CHECK(csv_quote("two\nlines") == "\"two\nlines\"");
}

TEST_CASE("mld result serialization") {
  FanoConeData cone = p23_cone();
  MldResult result = mld_eq1(cone);

  std::string csv = mld_result_to_csv(cone, result);
  CHECK(csv ==
        "name,mld,witness_chart,witness_element,bound,ok\n"
        "\"P(2,3)\",2,U1,1,2,true\n");

  auto parsed = nlohmann::json::parse(mld_result_to_json(cone, result));
  CHECK(parsed["name"] == "P(2,3)");
  CHECK(parsed["r"] == "5");
  CHECK(parsed["mld"] == "2");
  CHECK(parsed["witness"]["chart"] == "U1");
  CHECK(parsed["witness"]["element"] == "1");
  REQUIRE(parsed["terms"].size() == 3);
  CHECK(parsed["terms"][0]["chart"] == "U0");
  CHECK(parsed["terms"][0]["value"] == "3");

  // The r-term witness serializes distinctly.
  FanoConeData bare;
  bare.name = "bare";
  bare.r = rat(7, 2);
  bare.dim = 3;
  MldResult bare_result = mld_eq2(bare);
  auto bare_json = nlohmann::json::parse(mld_result_to_json(bare, bare_result));
  CHECK(bare_json["witness"]["chart"] == "");
  CHECK(bare_json["witness"]["element"] == "r-term");
  CHECK(mld_result_to_csv(bare, bare_result) ==
        "name,mld,witness_chart,witness_element,bound,ok\n"
        "bare,7/2,,r-term,3,false\n");
}
