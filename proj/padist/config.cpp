#include "padist/config.hpp"

#include <fstream>

namespace padist {

using nlohmann::json;

const std::vector<std::string> kSuites = {"pvaluation", "norms", "symbols", "quotient", "towers", "grading", "pro2"};

namespace {

[[noreturn]] void fail(const std::string& ptr, const std::string& msg) { throw ConfigError(ptr + ": " + msg); }

long get_int(const json& j, const std::string& ptr, long lo, long hi) {
  if (!j.is_number_integer()) fail(ptr, "expected an integer");
  long v = j.get<long>();
  if (v < lo || v > hi) fail(ptr, "value " + std::to_string(v) + " outside [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  return v;
}

Rat get_rat(const json& j, const std::string& ptr) {
  try {
    if (j.is_number_integer()) return Rat(j.get<long>());
    if (j.is_string()) return parse_rat(j.get<std::string>());
  } catch (const Error&) {
  }
  fail(ptr, "expected an integer or a rational string");
}

void check_keys(const json& j, const std::string& ptr, const std::vector<std::string>& allowed) {
  if (!j.is_object()) fail(ptr.empty() ? "/" : ptr, "expected an object");
  for (const auto& [k, v] : j.items())
    if (std::find(allowed.begin(), allowed.end(), k) == allowed.end()) fail(ptr + "/" + k, "unknown key");
}

FieldSpec parse_field(const json& j) {
  FieldSpec s;
  if (j.is_number_integer()) {
    s.p = get_int(j, "/field", 2, 1000000);
    return s;
  }
  check_keys(j, "/field", {"p", "e", "f", "unram", "eis"});
  if (!j.contains("p")) fail("/field/p", "missing");
  s.p = get_int(j["p"], "/field/p", 2, 1000000);
  if (j.contains("e")) s.e = static_cast<int>(get_int(j["e"], "/field/e", 1, 64));
  if (j.contains("f")) s.f = static_cast<int>(get_int(j["f"], "/field/f", 1, 64));
  if (j.contains("unram")) {
    if (!j["unram"].is_array()) fail("/field/unram", "expected an array");
    for (std::size_t i = 0; i < j["unram"].size(); ++i)
      s.unram.push_back(get_int(j["unram"][i], "/field/unram/" + std::to_string(i), -1000000, 1000000));
  }
  if (j.contains("eis")) {
    if (!j["eis"].is_array()) fail("/field/eis", "expected an array");
    for (std::size_t i = 0; i < j["eis"].size(); ++i) {
      const std::string ptr = "/field/eis/" + std::to_string(i);
      if (!j["eis"][i].is_array()) fail(ptr, "expected an array of f integers");
      std::vector<long> c;
      for (std::size_t k = 0; k < j["eis"][i].size(); ++k)
        c.push_back(get_int(j["eis"][i][k], ptr + "/" + std::to_string(k), -1000000, 1000000));
      s.eis.push_back(c);
    }
  }
  return s;
}

GroupConfig parse_group(const json& j, long p) {
  GroupConfig g;
  if (j.is_string()) {
    g.kind = j.get<std::string>();
  } else {
    check_keys(j, "/group", {"builtin", "d", "scale", "lattice"});
    if (j.contains("builtin") && j.contains("lattice")) fail("/group", "give either builtin or lattice");
    if (j.contains("builtin")) {
      if (!j["builtin"].is_string()) fail("/group/builtin", "expected a string");
      g.kind = j["builtin"].get<std::string>();
    } else if (j.contains("lattice")) {
      g.kind = "lattice";
    }
    if (j.contains("d")) g.d = static_cast<int>(get_int(j["d"], "/group/d", 1, 12));
    if (j.contains("scale")) g.scale = static_cast<int>(get_int(j["scale"], "/group/scale", 0, 20));
    if (g.kind == "lattice") {
      const json& L = j["lattice"];
      check_keys(L, "/group/lattice", {"d", "brackets", "labels"});
      if (!L.contains("d")) fail("/group/lattice/d", "missing");
      g.d = static_cast<int>(get_int(L["d"], "/group/lattice/d", 1, 12));
      LieLattice lat = LieLattice::zero(p, g.d);
      if (L.contains("brackets")) {
        if (!L["brackets"].is_array()) fail("/group/lattice/brackets", "expected an array");
        for (std::size_t b = 0; b < L["brackets"].size(); ++b) {
          const std::string ptr = "/group/lattice/brackets/" + std::to_string(b);
          const json& e = L["brackets"][b];
          if (!e.is_array() || e.size() != 4) fail(ptr, "expected [i, j, k, c] meaning [X_i, X_j] += c X_k");
          int i = static_cast<int>(get_int(e[0], ptr + "/0", 1, g.d)) - 1;
          int jj = static_cast<int>(get_int(e[1], ptr + "/1", 1, g.d)) - 1;
          int k = static_cast<int>(get_int(e[2], ptr + "/2", 1, g.d)) - 1;
          Rat c = get_rat(e[3], ptr + "/3");
          lat.c(i, jj, k) += c;
          lat.c(jj, i, k) -= c;
        }
      }
      if (L.contains("labels")) {
        if (!L["labels"].is_array() || L["labels"].size() != static_cast<std::size_t>(g.d))
          fail("/group/lattice/labels", "expected d strings");
        for (std::size_t i = 0; i < L["labels"].size(); ++i) {
          if (!L["labels"][i].is_string()) fail("/group/lattice/labels/" + std::to_string(i), "expected a string");
          lat.labels[i] = L["labels"][i].get<std::string>();
        }
      }
      g.lattice = lat;
    }
  }
  if (g.kind == "heisenberg") g.d = 3;
  if (g.kind != "abelian" && g.kind != "heisenberg" && g.kind != "o-additive" && g.kind != "lattice")
    fail(j.is_string() ? "/group" : "/group/builtin", "unknown group '" + g.kind + "'");
  return g;
}

}  // namespace

JobConfig parse_config(const json& j) {
  check_keys(j, "", {"field", "group", "truncation", "precision", "radii", "suites", "seed", "samples", "pro2_level",
                     "cache_dir"});
  JobConfig c;
  if (!j.contains("field")) fail("/field", "missing");
  c.field = parse_field(j["field"]);
  if (j.contains("group")) c.group = parse_group(j["group"], c.field.p);
  if (j.contains("truncation")) c.N = static_cast<int>(get_int(j["truncation"], "/truncation", 1, 64));
  if (j.contains("precision")) {
    check_keys(j["precision"], "/precision", {"M", "M_prime"});
    if (j["precision"].contains("M")) c.M = static_cast<int>(get_int(j["precision"]["M"], "/precision/M", 1, 1000));
    if (j["precision"].contains("M_prime")) {
      c.Mprime = get_rat(j["precision"]["M_prime"], "/precision/M_prime");
      if (c.Mprime < 1) fail("/precision/M_prime", "must be >= 1");
    }
  }
  c.field.M = c.M;
  if (j.contains("radii")) {
    if (!j["radii"].is_array()) fail("/radii", "expected an array");
    for (std::size_t i = 0; i < j["radii"].size(); ++i) {
      const std::string ptr = "/radii/" + std::to_string(i);
      if (!j["radii"][i].is_string()) fail(ptr, "expected a string such as \"3^-1/4\"");
      long p = 0;
      try {
        c.radii.push_back(Radius::parse(j["radii"][i].get<std::string>(), &p));
      } catch (const Error& e) {
        fail(ptr, e.what());
      }
      if (p != 0 && p != c.field.p) fail(ptr, "radius base differs from the field prime");
    }
  }
  if (j.contains("suites")) {
    if (!j["suites"].is_array()) fail("/suites", "expected an array");
    for (std::size_t i = 0; i < j["suites"].size(); ++i) {
      const std::string ptr = "/suites/" + std::to_string(i);
      if (!j["suites"][i].is_string()) fail(ptr, "expected a string");
      std::string s = j["suites"][i].get<std::string>();
      if (std::find(kSuites.begin(), kSuites.end(), s) == kSuites.end()) fail(ptr, "unknown suite '" + s + "'");
      c.suites.push_back(s);
    }
  }
  if (j.contains("seed")) c.seed = static_cast<std::uint64_t>(get_int(j["seed"], "/seed", 0, 1L << 62));
  if (j.contains("samples")) c.samples = get_int(j["samples"], "/samples", 1, 100000);
  if (j.contains("pro2_level")) c.pro2_level = static_cast<int>(get_int(j["pro2_level"], "/pro2_level", 2, 8));
  if (j.contains("cache_dir")) {
    if (!j["cache_dir"].is_string()) fail("/cache_dir", "expected a string");
    c.cache_dir = j["cache_dir"].get<std::string>();
  }
  return c;
}

JobConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path + ": cannot open");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(path + ": " + e.what());
  }
  return parse_config(j);
}

json config_to_json(const JobConfig& c) {
  json j = json::object();
  json f = {{"p", c.field.p}, {"e", c.field.e}, {"f", c.field.f}};
  if (!c.field.unram.empty()) f["unram"] = c.field.unram;
  if (!c.field.eis.empty()) f["eis"] = c.field.eis;
  j["field"] = f;
  json g = {{"builtin", c.group.kind}, {"d", c.group.d}};
  if (c.group.kind == "o-additive") g["scale"] = c.group.scale;
  if (c.group.lattice) {
    g.erase("builtin");
    json br = json::array();
    const LieLattice& L = *c.group.lattice;
    for (int i = 0; i < L.d; ++i)
      for (int k = i + 1; k < L.d; ++k)
        for (int m = 0; m < L.d; ++m)
          if (L.c(i, k, m) != 0) br.push_back({i + 1, k + 1, m + 1, L.c(i, k, m).get_str()});
    g["lattice"] = {{"d", L.d}, {"brackets", br}, {"labels", L.labels}};
  }
  j["group"] = g;
  j["truncation"] = c.N;
  j["precision"] = {{"M", c.M}, {"M_prime", c.Mprime.get_str()}};
  json r = json::array();
  for (const auto& x : c.radii) r.push_back(x.str(c.field.p));
  j["radii"] = r;
  j["suites"] = c.suites;
  j["seed"] = c.seed;
  j["samples"] = c.samples;
  j["pro2_level"] = c.pro2_level;
  return j;
}

Environment make_environment(const JobConfig& c) {
  Environment env;
  env.config = c;
  FieldSpec fs = c.field;
  fs.M = c.M;
  try {
    env.K = make_field(fs);
  } catch (const Error& e) {
    throw ConfigError(std::string("/field: ") + e.what());
  }
  LieLattice L;
  std::vector<std::string> names;
  try {
    const GroupConfig& g = c.group;
    if (g.kind == "abelian") {
      L = abelian_lattice(fs.p, g.d);
    } else if (g.kind == "heisenberg") {
      L = heisenberg_lattice(fs.p);
    } else if (g.kind == "lattice") {
      L = *g.lattice;
      validate(L, c.M);
    } else {
      env.lspec = LGroupSpec::additive(env.K, g.d);
      L = scalar_restrict(*env.lspec, g.scale).lattice;
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(std::string("/group: ") + e.what());
  }
  env.G = std::make_shared<Group>(L, c.M);
  env.A = std::make_shared<Algebra>(env.K, structure_constants(env.G, c.N, c.cache_dir));
  return env;
}

}  // namespace padist
