#include "padist/commands.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <ostream>
#include <regex>

#include "padist/config.hpp"
#include "padist/quotient.hpp"
#include "padist/suites.hpp"
#include "padist/towers.hpp"

namespace padist {

namespace {

struct Opts {
  std::string config;
  long p = 0;
  int e = 1, f = 0;
  std::string group;
  int d = 0;
  int N = 6, M = 20;
  std::string mprime = "10";
  std::string radius, radius_kappa, delta;
  int m = 1;
  long samples = 20;
  std::uint64_t seed = 1;
  std::vector<std::string> exprs;
};

void add_common(CLI::App* c, Opts& o) {
  c->add_option("--config", o.config, "job configuration (JSON)");
  c->add_option("-p,--prime", o.p, "prime (else taken from the radius)");
  c->add_option("-f", o.f, "unramified degree of the coefficient field");
  c->add_option("-e", o.e, "ramification index of the coefficient field");
  c->add_option("-g,--group", o.group, "abelian | heisenberg | o-additive");
  c->add_option("-d", o.d, "dimension (default: largest generator index used)");
  c->add_option("-N,--truncation", o.N, "truncation degree");
  c->add_option("-M,--precision", o.M, "working precision");
  c->add_option("--mprime", o.mprime, "residual cutoff M'");
}

void add_radius(CLI::App* c, Opts& o) {
  c->add_option("-r,--radius", o.radius, "radius r, e.g. 3^-1/4");
  c->add_option("--rk", o.radius_kappa, "give r^kappa instead of r");
}

// Largest i in b<i> (or j in b<i>_<j>) over the expressions.
int infer_d(const std::vector<std::string>& exprs, bool additive) {
  int d = 1;
  const std::regex plain("b([0-9]+)(?![0-9_])"), pair("b[0-9]+_([0-9]+)");
  for (const auto& e : exprs)
    for (auto it = std::sregex_iterator(e.begin(), e.end(), additive ? pair : plain); it != std::sregex_iterator(); ++it)
      d = std::max(d, std::stoi((*it)[1]));
  return d;
}

struct Context {
  JobConfig cfg;
  std::optional<Radius> r;
};

Context context(const Opts& o, const std::string& default_group) {
  Context c;
  if (!o.config.empty()) c.cfg = load_config(o.config);
  long p = o.p;
  auto take = [&](long q) {
    if (q == 0) return;
    if (p != 0 && p != q) throw ConfigError("radius base " + std::to_string(q) + " differs from p = " + std::to_string(p));
    p = q;
  };
  std::optional<Rat> tk;
  if (!o.radius.empty()) {
    long q = 0;
    c.r = Radius::parse(o.radius, &q);
    take(q);
  } else if (!o.radius_kappa.empty()) {
    long q = 0;
    tk = Radius::parse(o.radius_kappa, &q).t;
    take(q);
  }
  if (p == 0) p = o.config.empty() ? 3 : c.cfg.field.p;
  if (!o.config.empty() && p != c.cfg.field.p) throw ConfigError("p = " + std::to_string(p) + " differs from the configured field");
  c.cfg.field.p = p;
  if (tk) c.r = Radius(*tk / (p == 2 ? 2 : 1));
  if (!o.group.empty() || o.config.empty()) c.cfg.group.kind = o.group.empty() ? default_group : o.group;
  const bool additive = c.cfg.group.kind == "o-additive";
  if (o.f > 0) c.cfg.field.f = o.f;
  else if (additive && o.config.empty()) c.cfg.field.f = 2;
  if (o.config.empty() || o.e != 1) c.cfg.field.e = o.e;
  if (o.d > 0) c.cfg.group.d = o.d;
  else if (o.config.empty()) c.cfg.group.d = infer_d(o.exprs, additive);
  if (c.cfg.group.kind == "heisenberg") c.cfg.group.d = 3;
  if (o.config.empty() || o.N != 6) c.cfg.N = o.N;
  if (o.config.empty() || o.M != 20) c.cfg.M = o.M;
  c.cfg.field.M = c.cfg.M;
  if (o.config.empty() || o.mprime != "10") c.cfg.Mprime = parse_rat(o.mprime);
  if (c.cfg.group.kind != "abelian" && c.cfg.group.kind != "heisenberg" && c.cfg.group.kind != "o-additive" &&
      c.cfg.group.kind != "lattice")
    throw ConfigError("/group: unknown group '" + c.cfg.group.kind + "'");
  return c;
}

const Radius& need_radius(const Context& c) {
  if (!c.r) throw ConfigError("this command needs -r or --rk");
  return *c.r;
}

std::shared_ptr<FFamily> family(const JobConfig& cfg) {
  if (cfg.group.kind != "o-additive") throw ConfigError("/group: quotient commands need the o-additive group");
  FieldSpec fs = cfg.field;
  return std::make_shared<FFamily>(LGroupSpec::additive(make_field(fs), cfg.group.d), cfg.N, cfg.group.scale,
                                   cfg.cache_dir);
}

std::string residual_str(const QExp& q) { return q.inf ? "inf" : q.str(); }

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"padist: p-adic distribution algebras of uniform pro-p groups"};
  app.require_subcommand(1);
  Opts o;

  // run
  std::vector<std::string> suites;
  std::string sc_cache, out_prefix, format = "text", only;
  std::optional<std::uint64_t> seed;
  auto* run = app.add_subcommand("run", "run verification suites from a job configuration");
  run->add_option("--config", o.config, "job configuration (JSON)")->required();
  run->add_option("--suite", suites, "suite to run (repeatable; overrides the configuration)");
  run->add_option("--seed", seed, "random seed (overrides the configuration)");
  run->add_option("--sc-cache", sc_cache, "structure-constant cache directory");
  run->add_option("--out", out_prefix, "write <prefix>.txt and <prefix>.json");
  run->add_option("--format", format, "stdout format")->check(CLI::IsMember({"text", "structured"}));
  run->add_option("--check", only, "keep only this record id");

  auto expr_cmd = [&](CLI::App* parent, const std::string& name, const std::string& help, int nexpr, bool radius) {
    auto* c = parent->add_subcommand(name, help);
    add_common(c, o);
    if (radius) add_radius(c, o);
    c->add_option("expr", o.exprs, "distribution expression")->required()->expected(nexpr);
    return c;
  };
  auto* norm = expr_cmd(&app, "norm", "norm exponent -log_p ||x||_r", 1, true);
  auto* mul = expr_cmd(&app, "mul", "product in the truncated algebra", 2, false);
  auto* symbol = expr_cmd(&app, "symbol", "principal symbol", 1, true);
  auto* canon = expr_cmd(&app, "canonicalize", "canonical b_1j-expansion (o-additive group)", 1, true);
  auto* dist = app.add_subcommand("dist", "distribution arithmetic");
  dist->require_subcommand(1);
  auto* dmul = expr_cmd(dist, "mul", "product", 2, false);
  auto* dnorm = expr_cmd(dist, "norm", "norm exponent", 1, true);
  auto* dsym = expr_cmd(dist, "symbol", "principal symbol", 1, true);
  auto* quo = app.add_subcommand("quotient", "locally L-analytic quotient");
  quo->require_subcommand(1);
  auto* qcan = expr_cmd(quo, "canonicalize", "canonical form with residual and pass count", 1, true);
  auto* qnorm = expr_cmd(quo, "norm", "quotient norm exponent", 1, true);
  auto* qcheck = quo->add_subcommand("check", "run the quotient checks at one radius");
  add_common(qcheck, o);
  add_radius(qcheck, o);
  qcheck->add_option("--samples", o.samples, "random samples per check");
  qcheck->add_option("--seed", o.seed, "random seed");
  auto* tow = app.add_subcommand("towers", "lower p-series subalgebras");
  tow->require_subcommand(1);
  std::vector<CLI::App*> tcmds;
  for (const char* n : {"restrict", "orth", "cosets", "transfer"}) {
    auto* c = tow->add_subcommand(n, std::string("towers ") + n);
    add_common(c, o);
    add_radius(c, o);
    c->add_option("-m,--level", o.m, "step m of the lower p-series");
    c->add_option("--samples", o.samples, "random samples");
    c->add_option("--seed", o.seed, "random seed");
    tcmds.push_back(c);
  }
  tcmds[3]->add_option("--delta", o.delta, "base radius delta");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 2;
  }

  try {
    if (run->parsed()) {
      JobConfig cfg = load_config(o.config);
      if (seed) cfg.seed = *seed;
      if (!sc_cache.empty()) cfg.cache_dir = sc_cache;
      if (run->count("--suite")) {
        for (const auto& s : suites)
          if (std::find(kSuites.begin(), kSuites.end(), s) == kSuites.end())
            throw ConfigError("--suite: unknown suite '" + s + "'");
        cfg.suites = suites;
      }
      Environment env = make_environment(cfg);
      SuiteOptions so;
      so.repro_base = "padist run --config " + o.config + " --seed " + std::to_string(cfg.seed);
      so.only = only;
      Report rep = run_suites(env, cfg.suites, so);
      if (!out_prefix.empty()) {
        std::ofstream(out_prefix + ".txt") << rep.text();
        std::ofstream(out_prefix + ".json") << rep.structured().dump(2) << "\n";
      }
      out << (format == "text" ? rep.text() : rep.structured().dump(2) + "\n");
      return rep.ok() ? 0 : 1;
    }

    auto simple = [&](const std::string& default_group) {
      Context c = context(o, default_group);
      return std::make_pair(c, make_environment(c.cfg));
    };
    if (norm->parsed() || dnorm->parsed()) {
      auto [c, env] = simple("abelian");
      out << "exponent " << env.A->norm_exponent(env.A->parse(o.exprs[0]), need_radius(c)).str() << "\n";
      return 0;
    }
    if (mul->parsed() || dmul->parsed()) {
      auto [c, env] = simple("abelian");
      out << env.A->str(env.A->mul(env.A->parse(o.exprs[0]), env.A->parse(o.exprs[1]))) << "\n";
      return 0;
    }
    if (symbol->parsed() || dsym->parsed()) {
      auto [c, env] = simple("abelian");
      out << env.A->principal_symbol(env.A->parse(o.exprs[0]), need_radius(c)).str() << "\n";
      return 0;
    }
    if (canon->parsed() || qcan->parsed() || qnorm->parsed()) {
      Context c = context(o, "o-additive");
      auto fam = family(c.cfg);
      const Algebra& A = fam->algebra();
      const Radius& r = need_radius(c);
      Dist x = A.parse(o.exprs[0]);
      if (qnorm->parsed()) {
        NormValue v = quotient_norm(*fam, x, r, c.cfg.Mprime);
        if (!v.certified) throw PrecisionExhausted("quotient norm " + v.q.str() + " not certified against residual " + v.tail.str());
        out << "exponent " << v.q.str() << "\n";
        return 0;
      }
      CanonicalForm cf = canonicalize(*fam, x, r, c.cfg.Mprime);
      out << "canonical " << A.str(cf.form) << "\n"
          << "residual " << residual_str(cf.residual) << "\n"
          << "passes " << cf.passes << "\n";
      return 0;
    }
    if (qcheck->parsed()) {
      Context c = context(o, "o-additive");
      c.cfg.radii = {need_radius(c)};
      c.cfg.samples = o.samples;
      c.cfg.seed = o.seed;
      Environment env = make_environment(c.cfg);
      Report rep = run_suites(env, {"quotient"}, {"padist quotient check -r " + c.r->str(c.cfg.field.p) + " --seed " + std::to_string(o.seed), ""});
      out << rep.text();
      return rep.ok() ? 0 : 1;
    }
    for (std::size_t k = 0; k < tcmds.size(); ++k) {
      if (!tcmds[k]->parsed()) continue;
      Context c = context(o, k == 3 ? "o-additive" : "abelian");
      Rng rng(o.seed);
      if (k == 0 || k == 1) {
        const Radius& r = need_radius(c);
        if (k == 1) c.cfg.N = std::max<int>(c.cfg.N, static_cast<int>(ipow(c.cfg.field.p, o.m).get_si()));
        Environment env = make_environment(c.cfg);
        if (k == 0) {
          RestrictionReport rep = restriction_check(*env.A, o.m, r, o.samples, rng);
          out << "restriction m = " << o.m << " at r = " << r.str(env.K->p()) << ": equal on " << rep.samples
              << " samples\n";
        } else {
          auto fam = mixed_family(*env.A, o.m);
          std::vector<Dist> T;
          for (const auto& x : fam) T.push_back(x.value);
          FrommerReport rep = frommer_orthogonality(*env.A, T, r, o.samples, rng);
          out << "orthogonal family of " << T.size() << (rep.bijective ? ", basis of the truncation" : "")
              << "; iota(alpha, beta) = p^m alpha + beta\n";
        }
        return 0;
      }
      if (k == 2) {
        Environment env = make_environment(c.cfg);
        CosetReport rep = coset_conditions(*env.G, lower_p_transversal(*env.G, o.m), rng, o.samples);
        out << "cosets of H^(" << o.m << "): t = " << rep.t << " (v_p(t) = " << rep.t_valuation << "), "
            << rep.products << " products, " << rep.inverses << " inverses, " << rep.normality_samples
            << " conjugations\n";
        return 0;
      }
      if (o.delta.empty()) throw ConfigError("towers transfer needs --delta");
      long q = 0;
      Radius delta = Radius::parse(o.delta, &q);
      if (q != 0 && q != c.cfg.field.p) throw ConfigError("delta base differs from p");
      FieldSpec fs = c.cfg.field;
      TransferReport rep = norm_transfer_check(LGroupSpec::additive(make_field(fs), c.cfg.group.d), c.cfg.group.scale,
                                               delta, o.m, o.samples, rng, 1, c.cfg.Mprime);
      out << "transfer level " << rep.level << " at r = " << rep.r.str(fs.p) << ": " << rep.samples << " samples, "
          << rep.sublattice << " on the b'_1j lattice exact; quotient offsets [" << rep.offset_min.get_str() << ", "
          << rep.offset_max.get_str() << "]\n";
      return 0;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

}  // namespace padist
