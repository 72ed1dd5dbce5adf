// End-to-end runs through the command-line front end.

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "padist/commands.hpp"

namespace padist {
namespace {

namespace fs = std::filesystem;

struct Out {
  int rc;
  std::string out, err;
};

Out cli(std::vector<std::string> args) {
  std::ostringstream o, e;
  int rc = run_cli(args, o, e);
  return {rc, o.str(), e.str()};
}

std::string config(const std::string& name) { return std::string(PADIST_SOURCE_DIR) + "/configs/" + name; }

fs::path scratch(const std::string& name) {
  fs::path d = fs::temp_directory_path() / ("padist_it_" + name);
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string write(const fs::path& dir, const std::string& text) {
  fs::path p = dir / "job.json";
  std::ofstream(p) << text;
  return p.string();
}

TEST(Integration, ExampleConfigsPass) {
  for (const char* c : {"abelian.json", "heisenberg.json", "pro2.json", "o_additive.json"}) {
    Out r = cli({"run", "--config", config(c)});
    EXPECT_EQ(r.rc, 0) << c << "\n" << r.out << r.err;
    EXPECT_NE(r.out.find(" 0 failed"), std::string::npos) << c;
  }
}

TEST(Integration, ReportsAreByteIdentical) {
  fs::path d = scratch("bytes");
  const std::string a = (d / "a").string(), b = (d / "b").string();
  ASSERT_EQ(cli({"run", "--config", config("abelian.json"), "--out", a}).rc, 0);
  ASSERT_EQ(cli({"run", "--config", config("abelian.json"), "--out", b}).rc, 0);
  EXPECT_EQ(slurp(a + ".txt"), slurp(b + ".txt"));
  EXPECT_EQ(slurp(a + ".json"), slurp(b + ".json"));
  EXPECT_FALSE(slurp(a + ".txt").empty());
  // a different seed changes the sampled records
  ASSERT_EQ(cli({"run", "--config", config("abelian.json"), "--seed", "2", "--out", b}).rc, 0);
  EXPECT_NE(slurp(a + ".txt"), slurp(b + ".txt"));
}

TEST(Integration, StructuredMatchesText) {
  Out t = cli({"run", "--config", config("pro2.json")});
  Out s = cli({"run", "--config", config("pro2.json"), "--format", "structured"});
  ASSERT_EQ(s.rc, 0);
  nlohmann::json j = nlohmann::json::parse(s.out);
  EXPECT_EQ(j["config"]["field"], nlohmann::json::parse(R"({"e":1,"f":1,"p":2})"));
  const std::size_t n = j["records"].size();
  EXPECT_NE(t.out.find("summary: " + std::to_string(n) + " passed"), std::string::npos);
}

TEST(Integration, EmptySuiteList) {
  fs::path d = scratch("empty");
  Out r = cli({"run", "--config", write(d, R"({"field": 3, "suites": []})")});
  EXPECT_EQ(r.rc, 0);
  EXPECT_NE(r.out.find("summary: 0 passed, 0 failed, 0 skipped"), std::string::npos);
}

TEST(Integration, NormsOnAbelian) {
  Out r = cli({"run", "--config", config("abelian.json"), "--suite", "norms"});
  EXPECT_EQ(r.rc, 0);
  EXPECT_EQ(r.out.find("[FAIL]"), std::string::npos);
  EXPECT_EQ(r.out.find("[SKIP]"), std::string::npos);
}

TEST(Integration, UnknownGroup) {
  fs::path d = scratch("group");
  Out r = cli({"run", "--config", write(d, R"({"field": 3, "group": "sl2", "suites": ["norms"]})")});
  EXPECT_EQ(r.rc, 2);
  EXPECT_EQ(r.err.rfind("error: ConfigError", 0), 0u) << r.err;
  EXPECT_NE(r.err.find("/group"), std::string::npos);
  EXPECT_EQ(cli({"run", "--config", config("abelian.json"), "--suite", "nope"}).rc, 2);
}

TEST(Integration, FailureCarriesRepro) {
  fs::path d = scratch("fail");
  const std::string cfg =
      write(d, R"({"field": 3, "group": "heisenberg", "precision": {"M": 1}, "suites": ["pvaluation"]})");
  Out r = cli({"run", "--config", cfg});
  EXPECT_EQ(r.rc, 1);
  const auto at = r.out.find("repro: ");
  ASSERT_NE(at, std::string::npos) << r.out;
  std::string repro = r.out.substr(at + 7, r.out.find('\n', at) - at - 7);
  EXPECT_EQ(repro.rfind("padist run --config " + cfg + " --seed 1 --suite pvaluation --check '", 0), 0u) << repro;
  // replaying the named check alone reproduces exactly that failure
  const std::string id = repro.substr(repro.find("--check '") + 9, repro.size() - repro.find("--check '") - 10);
  Out one = cli({"run", "--config", cfg, "--suite", "pvaluation", "--check", id});
  EXPECT_EQ(one.rc, 1);
  EXPECT_NE(one.out.find("summary: 0 passed, 1 failed, 0 skipped"), std::string::npos) << one.out;
}

}  // namespace
}  // namespace padist
