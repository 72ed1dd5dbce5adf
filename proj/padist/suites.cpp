#include "padist/suites.hpp"

#include <functional>

#include "padist/grading.hpp"
#include "padist/quotient.hpp"
#include "padist/sampling.hpp"
#include "padist/towers.hpp"

namespace padist {

namespace {

struct Outcome {
  std::string input, expected, computed;
  bool pass = true;
  bool skip = false;
};

std::uint64_t fnv(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) h = (h ^ c) * 1099511628211ULL;
  return h;
}

class Runner {
 public:
  Runner(const Environment& env, const SuiteOptions& opt) : env_(env), opt_(opt) {}

  // A stream of randomness private to one check id.
  Rng rng(const std::string& id) const {
    std::seed_seq s{static_cast<std::uint32_t>(env_.config.seed), static_cast<std::uint32_t>(env_.config.seed >> 32),
                    static_cast<std::uint32_t>(fnv(id)), static_cast<std::uint32_t>(fnv(id) >> 32)};
    return Rng(s);
  }

  void check(const std::string& suite, const std::string& id, const std::function<Outcome(Rng&)>& body) {
    const std::string full = suite + "/" + id;
    if (!opt_.only.empty() && opt_.only != full) return;
    Record rec;
    rec.suite = suite;
    rec.id = full;
    Rng r = rng(full);
    try {
      Outcome o = body(r);
      rec.input = o.input;
      rec.expected = o.expected;
      rec.computed = o.computed;
      rec.status = o.skip ? "skip" : o.pass ? "pass" : "fail";
    } catch (const Error& e) {
      rec.status = "fail";
      rec.error = e.kind();
      rec.computed = e.what();
    }
    if (rec.status == "fail") rec.repro = opt_.repro_base + " --suite " + suite + " --check '" + full + "'";
    report.records.push_back(std::move(rec));
  }

  Report report;

 private:
  const Environment& env_;
  const SuiteOptions& opt_;
};

Outcome compare(const std::string& input, const std::string& expected, const std::string& computed) {
  return {input, expected, computed, expected == computed, false};
}

Outcome skipped(const std::string& why) { return {"", "", why, true, true}; }

// The L-group used by quotient/towers/grading: the configured o-additive
// group, or the additive group of o = Z_p[w] (f = 2) in dimension 1.
LGroupSpec lgroup(const Environment& env, int* scale) {
  if (env.lspec) {
    *scale = env.config.group.scale;
    return *env.lspec;
  }
  FieldSpec s;
  s.p = env.K->p();
  s.f = 2;
  s.M = env.config.M;
  *scale = 0;
  return LGroupSpec::additive(make_field(s), 1);
}

std::string rs(const Environment& env, const Radius& r) { return r.str(env.K->p()); }

// ---------------------------------------------------------------------------

void pvaluation(Runner& run, const Environment& env) {
  const Group& G = *env.G;
  const long p = G.p(), S = env.config.samples;
  for (int i = 0; i < G.d(); ++i)
    run.check("pvaluation", "omega_generator#" + std::to_string(i + 1), [&](Rng&) {
      return compare("h" + std::to_string(i + 1), std::to_string(G.kappa()),
                     std::to_string(G.omega(G.unit_vec(i))));
    });
  auto rand_elem = [&](Rng& rng) {
    Vec x(G.d());
    for (auto& c : x) c = Rat(uniform(rng, -p * p, p * p)) * Rat(ipow(p, uniform(rng, 0, 2)));
    return x;
  };
  run.check("pvaluation", "axioms", [&](Rng& rng) {
    std::vector<std::pair<Vec, Vec>> pairs;
    for (long k = 0; k < S; ++k) pairs.emplace_back(rand_elem(rng), rand_elem(rng));
    PValuationReport rep = G.check_p_valuation(pairs);
    Outcome o = compare(std::to_string(S) + " random pairs", "0 violations",
                        std::to_string(rep.violations.size()) + " violations");
    if (!rep.ok()) o.computed += ": " + rep.violations.front();
    return o;
  });
  run.check("pvaluation", "first_kind_formula", [&](Rng& rng) {
    for (long k = 0; k < S; ++k) {
      Vec x = rand_elem(rng);
      if (G.is_identity(x)) continue;
      auto a = G.omega(x), b = G.omega_first_kind(x);
      if (a != b) return Outcome{"", std::to_string(a), std::to_string(b), false, false};
    }
    return compare(std::to_string(S) + " random elements", "agree", "agree");
  });
}

void norms(Runner& run, const Environment& env) {
  const Algebra& A = *env.A;
  for (const auto& r : env.config.radii)
    for (long k = 0; k < env.config.samples; ++k)
      run.check("norms", "mul@" + rs(env, r) + "#" + std::to_string(k), [&](Rng& rng) {
        Dist x = random_dist(A, rng, A.N() / 2), y = random_dist(A, rng, A.N() / 2);
        QExp lhs = A.norm_exponent(A.mul(x, y), r);
        QExp rhs = A.norm_exponent(x, r) + A.norm_exponent(y, r);
        return compare("(" + A.str(x) + ") * (" + A.str(y) + ")", rhs.str(), lhs.str());
      });
}

void symbols(Runner& run, const Environment& env) {
  const Algebra& A = *env.A;
  const long p = A.p();
  const int kappa = A.kappa();
  for (const auto& r : env.config.radii) {
    run.check("symbols", "dominant_index@" + rs(env, r), [&](Rng&) {
      LogIndex li = dominant_log_index(p, kappa, r);
      // over p-powers only: g_j = p^j s - j
      const Rat s = Rat(kappa) * r.t;
      Rat best = s;
      int h = 0, ties = 0;
      for (int j = 1; j < 64; ++j) {
        Rat g = Rat(ipow(p, j)) * s - j;
        if (g < best) {
          best = g;
          h = j;
          ties = 0;
        } else if (g == best) {
          ++ties;
        }
        if (Rat(ipow(p, j)) * s * (p - 1) >= 1 && g > best) break;
      }
      auto show = [](bool crit, int hh) { return crit ? std::string("critical") : "h=" + std::to_string(hh); };
      return compare("r^kappa = p^-" + s.get_str(), show(ties > 0, h), show(li.critical, li.h));
    });
    for (long k = 0; k < env.config.samples; ++k)
      run.check("symbols", "mul@" + rs(env, r) + "#" + std::to_string(k), [&](Rng& rng) {
        Dist x = random_dist(A, rng, A.N() / 2), y = random_dist(A, rng, A.N() / 2);
        Symbol lhs = A.principal_symbol(A.mul(x, y), r);
        Symbol rhs = A.principal_symbol(x, r) * A.principal_symbol(y, r);
        return compare("(" + A.str(x) + ") * (" + A.str(y) + ")", rhs.str(), lhs.str());
      });
    run.check("symbols", "log@" + rs(env, r), [&](Rng&) {
      LogIndex li = dominant_log_index(p, kappa, r);
      if (li.critical) return skipped("critical radius");
      const long ph = ipow(p, li.h).get_si();
      if (ph > A.N()) return skipped("needs N >= " + std::to_string(ph));
      const Field& K = A.field();
      RingPtr R = A.graded_ring(r);
      Exp a(A.d(), 0);
      a[0] = static_cast<int>(ph);
      Res c = K.r_pow(K.r_inv(sigma_p_unit(K)), Int(li.h));
      if (ph % 2 == 0) c = K.r_neg(c);
      Symbol want = Symbol::term(R, c, -static_cast<std::int64_t>(K.e()) * li.h, a);
      return compare("log(1+" + A.names()[0] + ")", want.str(),
                     A.principal_symbol(A.log_series(0), r).str());
    });
  }
}

void quotient(Runner& run, const Environment& env) {
  int scale = 0;
  const LGroupSpec spec = lgroup(env, &scale);
  std::shared_ptr<FFamily> fam;
  run.check("quotient", "build", [&](Rng&) {
    fam = std::make_shared<FFamily>(spec, env.config.N, scale, env.config.cache_dir);
    return compare(spec.L->describe() + ", d = " + std::to_string(spec.d), "F_1j = 0",
                   fam->F(1, 1).is_zero() ? "F_1j = 0" : "F_11 != 0");
  });
  if (!fam) return;
  const Algebra& A = fam->algebra();
  const Rat& Mp = env.config.Mprime;
  const long S = env.config.samples;
  for (const auto& r : env.config.radii) {
    const std::string at = "@" + rs(env, r);
    LogIndex li = dominant_log_index(fam->p(), fam->kappa(), r);
    for (const auto& [i, j] : fam->kernel())
      run.check("quotient", "f_symbol_" + std::to_string(i) + std::to_string(j) + at, [&, i = i, j = j](Rng&) {
        if (li.critical) return skipped("critical radius");
        const long ph = ipow(fam->p(), li.h).get_si();
        if (ph > A.N()) return skipped("needs N >= " + std::to_string(ph));
        Symbol s = f_symbol(*fam, i, j, r);
        return compare("F_" + std::to_string(i) + std::to_string(j) + ", sigma = " + s.str(),
                       "closed form, h = " + std::to_string(li.h), "closed form, h = " + std::to_string(li.h));
      });
    if (li.critical || li.h != 0) continue;
    run.check("quotient", "orthogonality" + at, [&](Rng& rng) {
      CheckReport rep = orthogonality_check(*fam, r, S, rng);
      return compare(std::to_string(S) + " random combinations", "ok", rep.ok ? "ok" : rep.witness);
    });
    for (const auto& [i, j] : fam->kernel())
      run.check("quotient", "canonicalize_F" + std::to_string(i) + std::to_string(j) + at, [&, i = i, j = j](Rng&) {
        CanonicalForm c = canonicalize(*fam, fam->F_trunc(i, j), r, Mp);
        std::string got = "form " + A.str(c.form) + ", residual " + (c.residual >= qexp(Mp) ? ">= M'" : c.residual.str());
        return compare("F_" + std::to_string(i) + std::to_string(j), "form 0, residual >= M'", got);
      });
    run.check("quotient", "idempotence" + at, [&](Rng& rng) {
      for (long k = 0; k < S; ++k) {
        Dist x = random_dist(A, rng, A.N());
        CanonicalForm c = canonicalize(*fam, x, r, Mp);
        CanonicalForm cc = canonicalize(*fam, c.form, r, Mp);
        if (A.str(cc.form) != A.str(c.form) || cc.passes != 0)
          return compare(A.str(x), A.str(c.form), A.str(cc.form));
      }
      return compare(std::to_string(S) + " random inputs", "fixed", "fixed");
    });
    run.check("quotient", "domain" + at, [&](Rng& rng) {
      CheckReport rep = domain_smoke_test(*fam, r, S, rng, A.N() / 2, Mp);
      return compare(std::to_string(S) + " canonical pairs", "multiplicative", rep.ok ? "multiplicative" : rep.witness);
    });
  }
  run.check("quotient", "gr_dimensions", [&](Rng&) {
    QuotientIsoReport rep = quotient_iso_check(A.field(), fam->n(), fam->d(), fam->vbar(), 5);
    std::string a, b;
    for (std::size_t k = 0; k < rep.quotient_dims.size(); ++k) {
      a += (k ? "," : "") + std::to_string(rep.target_dims[k]);
      b += (k ? "," : "") + std::to_string(rep.quotient_dims[k]);
    }
    return compare("X-degrees 0..5", a, b);
  });
}

void towers(Runner& run, const Environment& env) {
  const Algebra& A = *env.A;
  const Group& G = *env.G;
  const long p = A.p(), S = env.config.samples;
  const int kappa = A.kappa();
  for (const auto& r : env.config.radii) {
    const std::string at = "@" + rs(env, r);
    run.check("towers", "restriction" + at, [&](Rng& rng) {
      if (p > A.N()) return skipped("needs N >= p");
      if (!restriction_hypothesis(p, kappa, 1, r)) {
        RestrictionProbe pr = restriction_probe(A, 1, r);
        return compare("hypothesis fails; probe ||b'_1||_r", "|p| r^kappa = p^-" + pr.expected.str(),
                       "|p| r^kappa = p^-" + pr.actual.str());
      }
      RestrictionReport rep = restriction_check(A, 1, r, S, rng);
      return compare(std::to_string(S) + " b'-expansions, m = 1", "equal", rep.ok ? "equal" : rep.witness);
    });
    run.check("towers", "frommer" + at, [&](Rng& rng) {
      if (p > A.N()) return skipped("needs N >= p");
      if (!restriction_hypothesis(p, kappa, 1, r)) return skipped("r^{kappa(p-1)} <= p^-1");
      auto fam = mixed_family(A, 1);
      std::vector<Dist> T;
      for (const auto& x : fam) T.push_back(x.value);
      FrommerReport rep = frommer_orthogonality(A, T, r, S, rng);
      bool iota = true;
      for (std::size_t i = 0; i < fam.size(); ++i) {
        Exp g(A.d());
        for (int k = 0; k < A.d(); ++k) g[k] = static_cast<int>(p) * fam[i].alpha[k] + fam[i].beta[k];
        iota = iota && rep.index[i] == A.basis().find(g);
      }
      return compare("b'^alpha b^beta, m = 1", "orthogonal basis, iota = p alpha + beta",
                     std::string(rep.bijective ? "orthogonal basis" : "orthogonal, not a basis") +
                         (iota ? ", iota = p alpha + beta" : ", other iota"));
    });
    run.check("towers", "transfer" + at, [&](Rng& rng) {
      if (!(Rat(kappa) * r.t * (p - 1) > 1)) return skipped("not a valid delta");
      int scale = 0;
      LGroupSpec spec = lgroup(env, &scale);
      TransferReport rep = norm_transfer_check(spec, scale, r, 1, S, rng, 1, env.config.Mprime);
      return compare("delta = " + rs(env, r) + ", m = 1, level " + std::to_string(rep.level) + "; offsets [" +
                         rep.offset_min.get_str() + ", " + rep.offset_max.get_str() + "]",
                     "exact on b'_1j lattice", rep.ok ? "exact on b'_1j lattice" : "mismatch");
    });
  }
  run.check("towers", "cosets", [&](Rng& rng) {
    if (ipow(p, G.d()) > 729) return skipped("index p^d too large");
    CosetReport rep = coset_conditions(G, lower_p_transversal(G, 1), rng);
    return compare("lower p-series transversal, m = 1", "t = " + ipow(p, G.d()).get_str(),
                   "t = " + std::to_string(rep.t));
  });
}

void grading(Runner& run, const Environment& env) {
  int scale = 0;
  const LGroupSpec spec = lgroup(env, &scale);
  const FieldPtr K = spec.L;
  const int n = spec.n(), d = spec.d;
  const long p = K->p();
  const int kappa = p == 2 ? 2 : 1;
  std::vector<Res> vbar;
  for (int s = 0; s < n; ++s) vbar.push_back(s == 0 ? K->r_one() : s < K->f() ? K->r_pow(Scalar::w(*K).residue(), Int(s)) : K->r_zero());
  std::vector<std::string> names;
  for (int j = 1; j <= d; ++j)
    for (int i = 1; i <= n; ++i) names.push_back("X" + std::to_string(i) + std::to_string(j));
  for (const auto& r : env.config.radii)
    run.check("grading", "regular_sequence@" + rs(env, r), [&](Rng&) {
      LogIndex li = dominant_log_index(p, kappa, r);
      if (li.critical) return skipped("critical radius");
      if (li.h > 1) return skipped("h > 1");
      RingPtr R = GradedRing::make(K, n * d, Rat(kappa) * r.t, names);
      GradedIdealBasis fam = f_symbol_family(R, n, d, li.h, vbar);
      RegularSequenceReport rep = check_regular_sequence(fam, 4);
      return compare("h = " + std::to_string(li.h) + ", " + std::to_string(fam.gens.size()) + " symbols, " +
                         std::to_string(rep.orderings) + " orderings, X-degree <= 4",
                     "regular", rep.ok ? "regular" : rep.witness);
    });
  run.check("grading", "finite_rank", [&](Rng& rng) {
    const Field& k = *env.K;
    for (long t = 0; t < env.config.samples; ++t) {
      const int dd = static_cast<int>(uniform(rng, 1, 3));
      std::vector<UniPoly> ps;
      long want = 1;
      for (int j = 0; j < dd; ++j) {
        const int dg = static_cast<int>(uniform(rng, 1, 4));
        want *= dg;
        UniPoly u;
        u.var = j;
        u.coef.resize(dg + 1);
        for (int c = 0; c < dg; ++c)
          for (int w = -1; w <= 1; ++w)
            if (uniform(rng, 0, 2) == 0) u.coef[c][w] = k.r_elem(uniform(rng, 1, k.q() - 1));
        u.coef[dg][uniform(rng, -2, 2)] = k.r_elem(uniform(rng, 1, k.q() - 1));
        ps.push_back(u);
      }
      long got = finite_rank_quotient(k, ps).rank;
      if (got != want) return compare("sample " + std::to_string(t), std::to_string(want), std::to_string(got));
    }
    return compare(std::to_string(env.config.samples) + " random systems", "product of degrees",
                   "product of degrees");
  });
}

void pro2(Runner& run, const Environment& env) {
  const Group& G = *env.G;
  const int level = env.config.pro2_level;
  if (G.p() != 2) {
    run.check("pro2", "commutators", [&](Rng&) { return skipped("p != 2"); });
    return;
  }
  for (int i = 1; i + 2 <= level; ++i)
    for (int j = 1; i + j + 1 <= level; ++j)
      run.check("pro2", "commutator_" + std::to_string(i) + "_" + std::to_string(j), [&](Rng&) {
        CommutatorCheck c = check_powerful_commutator(G, level, i, j);
        return compare("[P_" + std::to_string(i) + ", P_" + std::to_string(j) + "] in G/P_" + std::to_string(level) +
                           ", " + std::to_string(c.pairs) + " pairs",
                       "<= P_" + std::to_string(i + j + 1), c.ok ? "<= P_" + std::to_string(i + j + 1) : c.witness);
      });
}

}  // namespace

Report run_suites(const Environment& env, const std::vector<std::string>& suites, const SuiteOptions& opt) {
  Runner run(env, opt);
  run.report.config = config_to_json(env.config);
  run.report.config["suites"] = suites;
  for (const auto& s : suites) {
    if (s == "pvaluation") pvaluation(run, env);
    else if (s == "norms") norms(run, env);
    else if (s == "symbols") symbols(run, env);
    else if (s == "quotient") quotient(run, env);
    else if (s == "towers") towers(run, env);
    else if (s == "grading") grading(run, env);
    else if (s == "pro2") pro2(run, env);
    else throw ConfigError("/suites: unknown suite '" + s + "'");
  }
  return run.report;
}

}  // namespace padist
