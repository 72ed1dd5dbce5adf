#pragma once

// Job configuration: a JSON document with keys field, group, truncation,
// precision, radii, suites, seed (and optional samples, pro2_level,
// cache_dir).  Every validation failure is a ConfigError naming the JSON
// pointer of the offending value.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "padist/distalg.hpp"
#include "padist/errors.hpp"
#include "padist/groups.hpp"

namespace padist {


struct GroupConfig {
  std::string kind = "abelian";  // abelian | heisenberg | o-additive | lattice
  int d = 1;
  int scale = 0;                 // o-additive: bracket scaling p^scale
  std::optional<LieLattice> lattice;
};

struct JobConfig {
  FieldSpec field;
  GroupConfig group;
  int N = 4;
  int M = 20;
  Rat Mprime = 10;
  std::vector<Radius> radii;
  std::vector<std::string> suites;
  std::uint64_t seed = 1;
  long samples = 20;
  int pro2_level = 5;
  std::string cache_dir;
};

extern const std::vector<std::string> kSuites;

JobConfig parse_config(const nlohmann::json& j);
JobConfig load_config(const std::string& path);
// Canonical echo: all defaults filled in, key order fixed.
nlohmann::json config_to_json(const JobConfig& c);

// Shared immutable objects for a job.
struct Environment {
  JobConfig config;
  FieldPtr K;
  GroupPtr G;
  AlgebraPtr A;
  std::optional<LGroupSpec> lspec;  // o-additive groups only
};

Environment make_environment(const JobConfig& c);

}  // namespace padist
