#include "padist/suites.hpp"

#include <gtest/gtest.h>

namespace padist {
namespace {

using nlohmann::json;

Environment env_of(const std::string& text) { return make_environment(parse_config(json::parse(text))); }

TEST(Suites, EmptySelection) {
  Environment env = env_of(R"({"field": 3})");
  Report r = run_suites(env, {});
  EXPECT_TRUE(r.records.empty());
  EXPECT_TRUE(r.ok());
}

TEST(Suites, NormsOnAbelianPass) {
  Environment env = env_of(R"({"field": 3, "group": {"builtin": "abelian", "d": 2}, "truncation": 6,
                               "radii": ["3^-1/4", "3^-2/3"], "samples": 5})");
  Report r = run_suites(env, {"norms"});
  EXPECT_EQ(r.records.size(), 10u);
  EXPECT_TRUE(r.ok()) << r.text();
}

TEST(Suites, DeterministicForFixedSeed) {
  const char* cfg = R"({"field": 3, "group": "heisenberg", "truncation": 3, "radii": ["3^-1/2"],
                        "samples": 3, "seed": 9})";
  Report a = run_suites(env_of(cfg), {"pvaluation", "norms", "symbols"});
  Report b = run_suites(env_of(cfg), {"pvaluation", "norms", "symbols"});
  EXPECT_EQ(a.text(), b.text());
  EXPECT_EQ(a.structured().dump(), b.structured().dump());
  EXPECT_TRUE(a.ok()) << a.text();
}

TEST(Suites, OnlyFilterSelectsOneRecord) {
  Environment env = env_of(R"({"field": 3, "radii": ["3^-1/2"], "samples": 4})");
  SuiteOptions opt;
  opt.only = "norms/mul@3^-1/2#2";
  Report all = run_suites(env, {"norms"});
  Report one = run_suites(env, {"norms"}, opt);
  ASSERT_EQ(one.records.size(), 1u);
  EXPECT_EQ(one.records[0].input, all.records[2].input);
}

TEST(Suites, FailuresCarryRepro) {
  // M = 1 leaves no certified valuations for elements of P_2
  Environment env = env_of(R"({"field": 3, "group": "heisenberg", "precision": {"M": 1}, "samples": 20})");
  SuiteOptions opt;
  opt.repro_base = "padist run --config x.json --seed 1";
  Report r = run_suites(env, {"pvaluation"}, opt);
  bool any_fail = false;
  for (const auto& rec : r.records)
    if (rec.status == "fail") {
      any_fail = true;
      EXPECT_EQ(rec.repro, "padist run --config x.json --seed 1 --suite pvaluation --check '" + rec.id + "'");
      EXPECT_EQ(rec.error, "PrecisionExhausted");
    }
  EXPECT_TRUE(any_fail);
  EXPECT_FALSE(r.ok());
  for (const auto& rec : r.records)
    if (rec.status != "fail") EXPECT_TRUE(rec.repro.empty());
}

TEST(Suites, AllSuitesSmallConfig) {
  Environment env = env_of(R"({"field": {"p": 3, "f": 2}, "group": "o-additive", "truncation": 4,
                               "radii": ["3^-3/4", "3^-1/8"], "samples": 3, "precision": {"M_prime": 8}})");
  Report r = run_suites(env, {"pvaluation", "norms", "symbols", "quotient", "towers", "grading", "pro2"});
  EXPECT_TRUE(r.ok()) << r.text();
  EXPECT_GT(r.count("pass"), 10);
}

TEST(Suites, Pro2OnAbelianTwoGroup) {
  Environment env = env_of(R"({"field": 2, "group": {"builtin": "abelian", "d": 2}, "pro2_level": 4})");
  Report r = run_suites(env, {"pro2"});
  EXPECT_EQ(r.records.size(), 3u);  // (1,1), (1,2), (2,1)
  EXPECT_TRUE(r.ok()) << r.text();
}

}  // namespace
}  // namespace padist
