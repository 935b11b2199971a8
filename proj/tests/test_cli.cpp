#include "knperc/cli.hpp"

#include <doctest.h>
#include <json.hpp>

#include <cstdlib>
#include <sstream>

using knperc::cli::run;

namespace {

struct Outcome {
  int code = 0;
  std::string out;
  std::string err;
};

Outcome invoke(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

std::vector<std::string> data_lines(const std::string& text) {
  std::vector<std::string> out;
  for (auto& l : lines(text))
    if (!l.empty() && l[0] != '#') out.push_back(l);
  return out;
}

}  // namespace

TEST_CASE("estimate writes a header and one row per n") {
  const auto r = invoke({"estimate", "--variant", "ung", "--d", "2", "--k", "2", "--n", "3,5,7", "--trials", "50",
                         "--seed", "1"});
  REQUIRE(r.code == 0);
  const auto all = lines(r.out);
  REQUIRE(all.size() >= 2);
  CHECK(all[0].rfind("# knperc ", 0) == 0);
  CHECK(all[1].rfind("# config: ", 0) == 0);
  const auto rows = data_lines(r.out);
  REQUIRE(rows.size() == 4);
  CHECK(rows[0] == "variant,d,k,n,trials,seed,estimate,stderr");
  CHECK(rows[1].rfind("UnG,2,2,3,50,1,", 0) == 0);
  CHECK(rows[3].rfind("UnG,2,2,7,50,1,", 0) == 0);
  const auto config = nlohmann::json::parse(all[1].substr(std::string("# config: ").size()));
  CHECK(config["subcommand"] == "estimate");
  CHECK_FALSE(config.contains("workers"));
}

TEST_CASE("CSV output is identical for any worker count") {
  const std::vector<std::string> base{"proportion", "--variant", "dng", "--d", "2", "--k", "2", "--n", "4,8",
                                      "--trials", "40", "--seed", "3"};
  auto one = base, four = base;
  one.insert(one.end(), {"--workers", "1"});
  four.insert(four.end(), {"--workers", "4"});
  const auto a = invoke(one), b = invoke(four);
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
}

TEST_CASE("tau reports exact fractions") {
  const auto r = invoke({"tau", "--d", "5", "--cutoff", "5"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["artifact"] == "knperc");
  CHECK(j["pmf"][3]["p"] == "44/15625");
  CHECK(j["pmf"][5]["p"] == "12136/9765625");
}

TEST_CASE("bounds reports the coincidence table") {
  const auto r = invoke({"bounds", "--d", "4..7"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  REQUIRE(j["rows"].size() == 4);
  CHECK(j["rows"][0]["cdub"].get<double>() == doctest::Approx(0.693093).epsilon(1e-6));
  CHECK(j["rows"][3]["smallest_k"] == 3);
  const auto small = invoke({"bounds", "--d", "3"});
  CHECK(small.code == 2);
  const auto bng = invoke({"bounds", "--d", "2", "--bng"});
  CHECK(bng.code == 0);
}

TEST_CASE("other subcommands produce JSON") {
  for (const std::vector<std::string>& args :
       {std::vector<std::string>{"sample", "--variant", "ung", "--d", "2", "--k", "2", "--n", "4"},
        {"saw", "--d", "2", "--n-max", "8", "--circuits", "8"},
        {"peierls", "--closed-prob", "1/4"},
        {"dual", "--d", "2", "--k", "2"},
        {"couple", "--kind", "column", "--d", "2", "--k", "2", "--n", "4", "--trials", "5"},
        {"couple", "--kind", "monotone", "--variant", "ung", "--d", "2", "--k", "2", "--n", "4", "--trials", "5"},
        {"mass-transport", "--d", "2", "--k", "2", "--side", "5", "--trials", "10"},
        {"growth", "--d", "2", "--generations", "10", "--runs", "3"}}) {
    const auto r = invoke(args);
    CAPTURE(args[0]);
    CAPTURE(r.err);
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["config"]["subcommand"] == args[0]);
  }
}

TEST_CASE("validation errors exit with code 2") {
  CHECK(invoke({"estimate", "--variant", "ung", "--d", "2", "--k", "9", "--n", "3"}).code == 2);
  CHECK(invoke({"estimate", "--variant", "zzz", "--d", "2", "--k", "2", "--n", "3"}).code == 2);
  CHECK(invoke({"estimate", "--bogus"}).code == 2);
  CHECK(invoke({"dual", "--variant", "dng"}).code == 2);
  CHECK(invoke({"peierls", "--closed-prob", "1/2"}).code == 2);
  CHECK(invoke({"tau", "--d", "3", "--out", "/nonexistent-dir/x.json"}).code == 2);
  CHECK(invoke({}).code == 2);
}

TEST_CASE("budget overruns exit with code 3") {
  ::setenv("KNPERC_BUDGET", "100", 1);
  const auto r = invoke({"saw", "--d", "3", "--n-max", "12"});
  ::unsetenv("KNPERC_BUDGET");
  CHECK(r.code == 3);
  CHECK(r.err.find("budget") != std::string::npos);
}
