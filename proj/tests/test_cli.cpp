#include <gtest/gtest.h>

#include <cmath>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "nvol/cli.hpp"
#include "nvol/reproduce.hpp"

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = nvol::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

nlohmann::json run_json(std::vector<std::string> args) {
  args.push_back("--format");
  args.push_back("json");
  const auto o = run(args);
  EXPECT_EQ(o.code, 0) << o.err;
  auto j = nlohmann::json::parse(o.out);
  EXPECT_EQ(j["schema"], "nvol/1");
  return j;
}

}  // namespace

TEST(Cli, BoundDecimalWeight) {
  const auto j = run_json({"bound", "--poly", "x1*x2 + x3^2*x4 + x4^4", "--weight", "1,1,0.7320508,0.5358984"});
  EXPECT_EQ(j["command"], "bound");
  EXPECT_FALSE(j["exact"].get<bool>());
  EXPECT_NEAR(j["bound_numeric"].get<double>(), 10.392304, 1e-5);
}

TEST(Cli, BoundExactWeight) {
  const auto j = run_json({"bound", "--poly", "x1*x2 + x3^3 + x4^3", "--weight", "3,3,2,2"});
  EXPECT_TRUE(j["exact"].get<bool>());
  EXPECT_EQ(j["bound"], "32/3");
  EXPECT_EQ(j["v"], "6");
  const auto half = run_json({"bound", "--poly", "x1*x2 + x3^3 + x4^4", "--weight", "3/2,3/2,1,3/4"});
  EXPECT_EQ(half["bound"], "343/36");
}

TEST(Cli, ScreenV22) {
  const auto j = run_json({"screen", "--volume", "22"});
  EXPECT_EQ(j["liu_bound"], "297/32");
  const auto s = run_json({"screen", "--volume", "26", "--smoothable"});
  ASSERT_EQ(s["allowed"].size(), 1u);
  EXPECT_EQ(s["allowed"][0]["tag"], "cA1");
  const auto d = run_json({"screen", "--volume", "21.5"});
  EXPECT_EQ(d["volume"], "43/2");
}

TEST(Cli, ScreenTable) {
  const std::string path = ::testing::TempDir() + "/fanos.csv";
  std::ofstream(path) << "# family,volume\nV22,22\nP3,64\n";
  const auto j = run_json({"screen", "--table", path});
  ASSERT_EQ(j["rows"].size(), 2u);
  EXPECT_EQ(j["rows"][1]["report"]["liu_bound"], "27");
}

TEST(Cli, MinimizeK6) {
  const auto j = run_json({"minimize", "--poly", "x1*x2 + x3^3 + x4^6"});
  EXPECT_NEAR(j["value"].get<double>(), 9.0, 1e-6);
  EXPECT_EQ(j["status"], "converged");
  EXPECT_EQ(j["witness"].size(), 4u);
}

TEST(Cli, OracleAndPolyFile) {
  const std::string path = ::testing::TempDir() + "/a2.json";
  std::ofstream(path) << R"({"nvars": 4, "terms": [{"exp": [1,1,0,0], "coef": "1"},
    {"exp": [0,0,2,0], "coef": "1"}, {"exp": [0,0,0,3], "coef": "1"}]})";
  const auto j = run_json({"oracle", "--poly-file", path, "--denominator", "11"});
  EXPECT_EQ(j["value"], "125/9");
  EXPECT_EQ(j["witness"], nlohmann::json::array({"3/11", "3/11", "3/11", "2/11"}));
}

TEST(Cli, ClassifyCatalogMld) {
  EXPECT_TRUE(run_json({"classify", "--descriptor", "1/3(1,1,2)"})["volume_ge_9"].get<bool>());
  EXPECT_FALSE(run_json({"classify", "--descriptor", "cA3"})["volume_ge_9"].get<bool>());
  const auto cat = run_json({"catalog", "--filter", "E"});
  EXPECT_GE(cat["entries"].size(), 3u);
  const auto known = run_json({"catalog", "--known-volumes"});
  EXPECT_EQ(known["values"].size(), 10u);
  EXPECT_FALSE(known["exhaustive"].get<bool>());
  const auto mld = run_json({"mld", "--descriptor", "1/5(1,1,1)"});
  EXPECT_TRUE(mld["equality"].get<bool>());
  EXPECT_EQ(mld["mld"], "3/5");
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run({"bound", "--poly", "x1*x2 +", "--weight", "1,1,1,1"}).code, 2);
  EXPECT_EQ(run({"bound", "--poly", "x1*x2", "--weight", "1,1,1"}).code, 2);
  EXPECT_EQ(run({"bound", "--poly", "x1*x2", "--weight", "1,0,1,1"}).code, 2);
  EXPECT_EQ(run({"nonsense"}).code, 2);
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"screen", "--volume", "-1"}).code, 2);
  EXPECT_EQ(run({"classify", "--descriptor", "Q9"}).code, 2);
  EXPECT_EQ(run({"reproduce", "--section", "nope"}).code, 2);
  // computation errors
  const auto novalid = run({"minimize", "--poly", "x1*x2*x3", "--nvars", "3"});
  EXPECT_EQ(novalid.code, 1);
  EXPECT_NE(novalid.err.find("no-valid-weight"), std::string::npos) << novalid.err;
  EXPECT_EQ(run({"bound", "--poly", "x1*x2*x3", "--nvars", "3", "--weight", "1,1,1"}).code, 1);
  EXPECT_EQ(run({"mld", "--descriptor", "cA2"}).code, 1);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, TsvAndPretty) {
  const auto t = run({"bound", "--poly", "x1*x2 + x3^3 + x4^3", "--weight", "3,3,2,2", "--format", "tsv"});
  EXPECT_EQ(t.code, 0);
  EXPECT_EQ(t.out.substr(0, t.out.find('\n')), "v\tw_sum\tw_prod\tld_factor\tn\tbound\tbound_numeric");
  const auto p = run({"bound", "--poly", "x1*x2 + x3^3 + x4^3", "--weight", "3,3,2,2"});
  EXPECT_NE(p.out.find("32/3"), std::string::npos);
}

TEST(Reproduce, AdeSectionAlias) {
  const auto claims = nvol::reproduce(std::string("example-5.1"));
  EXPECT_EQ(claims.size(), 8u);
  for (const auto& c : claims) EXPECT_TRUE(c.pass) << c.id;
}

TEST(Reproduce, Thresholds) {
  const auto claims = nvol::reproduce(std::string("thresholds"));
  std::vector<std::string> expected;
  for (const auto& c : claims) {
    EXPECT_TRUE(c.pass && c.exact) << c.id;
    expected.push_back(c.expected);
  }
  EXPECT_EQ(expected, (std::vector<std::string>{"27/4", "8", "32/3", "9", "351/32", "297/32", "297/64"}));
}

TEST(Reproduce, FullSuiteAndIdsStable) {
  const auto o = run({"reproduce", "--format", "json"});
  EXPECT_EQ(o.code, 0) << o.out;
  const auto j = nlohmann::json::parse(o.out);
  EXPECT_TRUE(j["all_pass"].get<bool>());
  std::set<std::string> ids;
  for (const auto& c : j["claims"]) EXPECT_TRUE(ids.insert(c["id"].get<std::string>()).second) << c["id"];
  EXPECT_TRUE(ids.count("ade.dk-volume"));
  // determinism
  EXPECT_EQ(run({"reproduce", "--format", "json"}).out, o.out);
}
