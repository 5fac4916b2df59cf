#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "bcint/problem.hpp"
#include "doctest.h"

using namespace bcint;

namespace {

json genus1() {
  std::ifstream in(std::string(BCINT_DATA_DIR) + "/genus1.json");
  return json::parse(in);
}

// exit status of the CLI on a problem written to a scratch file
int cli(const std::string& text, const std::string& args = "") {
  auto path = std::filesystem::temp_directory_path() / "bcint_cli_test.json";
  std::ofstream(path) << text;
  std::string cmd = std::string(BCINT_CLI) + " --input " + path.string() + " " + args + " >/dev/null 2>&1";
  int rc = std::system(cmd.c_str());
  std::filesystem::remove(path);
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

}  // namespace

TEST_CASE("field element expressions") {
  Field F(17, 2, 30);
  Padic a = Padic::pi(F);
  CHECK(parse_element(F, "a^2").equals(Padic(F, 17)));
  CHECK(parse_element(F, " a + 6 ").equals(a + Padic(F, 6)));
  CHECK(parse_element(F, "-3*(a-1)^2").equals(Padic(F, -3) * (a - Padic::one(F)).pow(2)));
  CHECK(parse_element(F, "20/7").equals(Padic(F, mpq_class(20, 7))));
  CHECK(parse_element(F, "a^-1").equals(a.inverse()));
  CHECK(parse_element(F, "12*17+8*17^2").equals(Padic(F, 12 * 17 + 8 * 289)));
  CHECK(parse_element(F, "123456789012345678901234567890").equals(Padic(F, mpz_class("123456789012345678901234567890"))));

  Field K(5, 2, {-2, 0, 1}, 20);
  Padic z = parse_element(K, "z");
  CHECK((z * z).equals(Padic(K, 2)));
  CHECK(parse_element(K, "(1+a)/2").equals((Padic::one(K) + Padic::pi(K)) / Padic(K, 2)));

  for (const char* bad : {"", "a+", "(a", "1/0", "x", "2**3", "a^b", "3 4"}) {
    INFO(bad);
    CHECK_THROWS_AS(parse_element(F, bad), SchemaError);
  }
}

TEST_CASE("value digits in pi and in p") {
  Field F(17, 2, 30);
  Padic v = parse_element(F, "12*17+8*17^2+15*17^3").with_prec(14);
  json j = value_json(v);
  CHECK(j["valuation"] == 2);
  CHECK(j["precision"] == 14);
  CHECK(j["digits_start"] == 0);
  CHECK(j["digits"] == json({0, 0, 12, 0, 8, 0, 15, 0, 0, 0, 0, 0, 0, 0}));
  CHECK(j["p_digits"] == json({0, 12, 8, 15, 0, 0, 0}));
  CHECK(j["p_precision"] == 7);

  // negative valuation starts the digit list below zero
  j = value_json(parse_element(F, "2*a^-1+3").with_prec(3));
  CHECK(j["digits_start"] == -1);
  CHECK(j["digits"] == json({2, 3, 0, 0}));
  CHECK(!j.contains("p_digits"));

  j = value_json(Padic::zero(F, 14));
  CHECK(j["valuation"].is_null());
  CHECK(j["value"] == "O(a^14)");

  IntegralValue iv{v, IntegralKind::Abelian, 14};
  j = value_json(iv);
  CHECK(j["kind"] == "abelian");
  CHECK(j["certified"] == 14);
}

TEST_CASE("problem schema errors") {
  json base = genus1();
  CHECK_NOTHROW(Problem{base});
  auto broken = [&](auto edit) {
    json j = base;
    edit(j);
    return j;
  };
  CHECK_THROWS_AS(Problem(json::array()), SchemaError);
  CHECK_THROWS_AS(Problem(broken([](json& j) { j.erase("precision"); })), SchemaError);
  CHECK_THROWS_AS(Problem(broken([](json& j) { j["precision"] = 0; })), SchemaError);
  CHECK_THROWS_AS(Problem(broken([](json& j) { j["field"]["p"] = 15; })), SchemaError);
  CHECK_THROWS_AS(Problem(broken([](json& j) { j.erase("curve"); })), SchemaError);
  CHECK_THROWS_AS(Problem(broken([](json& j) { j["curve"]["roots"] = {1, 2}; })), SchemaError);
  CHECK_THROWS_AS(Problem(broken([](json& j) { j["curve"]["f"] = {330, -90, 0, 1}; })), SchemaError);

  Problem P(base);
  CHECK_THROWS_AS(P.point("T"), SchemaError);
  CHECK_THROWS_AS(P.vertex("v9"), SchemaError);
  CHECK_THROWS_AS(P.step("e7+"), SchemaError);
  CHECK_THROWS_AS(P.form(json::array({1, 2})), SchemaError);
  CHECK_THROWS_AS(P.point(json{{"x", 7}, {"y", 5}}), MathError);
  CHECK_THROWS_AS(P.run("integrate"), SchemaError);

  CHECK(P.step("-e1+") == std::make_pair(P.step("e1+").first, -1));
  CHECK(P.vertex("v1") != P.vertex("v2"));

  Problem Q(broken([](json& j) { j["reference_points"]["edges"].erase(1); }));
  CHECK_THROWS_AS(Q.integrator(), SchemaError);

  // an override raises the cap along with the target
  Problem R(base, 20);
  CHECK(R.precision() == 20);
  CHECK(R.field().N >= 36);
}

TEST_CASE("cover and skeleton tasks") {
  Problem P(genus1());
  std::string dot;
  json c = P.run("cover", &dot);
  CHECK(c["nodes"].size() == 2);
  CHECK(c["nodes"][1]["parent"] == "U1");
  CHECK(dot.find("graph") != std::string::npos);
  json s = P.run("skeleton", &dot);
  CHECK(s["b1"] == 1);
  CHECK(s["edges"] == json({"e1+", "e1-"}));
}

TEST_CASE("genus 3 cover graph") {
  std::ifstream in(std::string(BCINT_DATA_DIR) + "/genus3.json");
  Problem P(json::parse(in));
  std::string dot;
  json c = P.run("cover", &dot);
  REQUIRE(c["nodes"].size() == 4);
  for (const char* edge : {"U1 -- U2 [label=\"odd\"]", "U1 -- U3 [label=\"odd\"]", "U2 -- U4 [label=\"even\"]"}) {
    INFO(edge);
    CHECK(dot.find(edge) != std::string::npos);
  }
  int genus = 0;
  for (const auto& n : c["nodes"]) genus += n["genus"].get<int>();
  json s = P.run("skeleton", &dot);
  CHECK(genus + s["b1"].get<int>() == 3);
}

TEST_CASE("command line exit codes") {
  std::string good = genus1().dump();
  CHECK(cli(good) == 0);
  CHECK(cli(good, "periods") == 0);
  CHECK(cli(good, "--task cover") == 0);
  CHECK(cli(good, "--precision 10") == 0);
  CHECK(cli("{ not json") == 2);
  CHECK(cli("") == 2);
  json j = genus1();
  j.erase("precision");
  CHECK(cli(j.dump()) == 2);
  j = genus1();
  j["points"]["S"]["y"] = 5;
  CHECK(cli(j.dump()) == 3);
  j = genus1();
  j["integrals"][0]["path"] = {"e1+", "e1+"};
  CHECK(cli(j.dump(), "bc-integrate") == 3);
  j = genus1();
  j["points"]["S"]["hint"] = "odd";
  j["points"]["S"].erase("y");
  CHECK(cli(j.dump()) == 2);
  CHECK(cli(good, "--task frobnicate") == 2);
  // a cap below the target cannot deliver the requested digits
  j = genus1();
  j["field"]["cap"] = 6;
  CHECK(cli(j.dump()) == 4);
}
