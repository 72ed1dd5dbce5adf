#include "padist/towers.hpp"

#include <set>

#include "padist/errors.hpp"

namespace padist {

Dist bprime(const Algebra& A, int i, int m) {
  const Int pm = ipow(A.p(), m);
  if (pm > A.N()) throw DegreeOverflow("b' at level " + std::to_string(m) + " needs N >= " + pm.get_str());
  Vec x = A.group().zero();
  x[i] = Rat(pm);
  return A.delta(x) - A.one();
}

Dist expand_bprime(const Algebra& A, const std::map<Exp, Scalar>& coeffs, int m) {
  std::vector<Dist> bp;
  for (int k = 0; k < A.d(); ++k) bp.push_back(bprime(A, k, m));
  Dist out = A.zero();
  for (const auto& [alpha, c] : coeffs) {
    Dist term = A.one();
    for (int k = 0; k < A.d(); ++k)
      for (int e = 0; e < alpha[k]; ++e) term = A.mul(term, bp[k], true);
    out = out + term.scale(c);
  }
  return out;
}

QExp intrinsic_norm(const Algebra& A, const std::map<Exp, Scalar>& coeffs, int m, const Radius& r) {
  QExp best = QExp::infinity();
  const Rat step = Rat(A.kappa()) * Rat(ipow(A.p(), m)) * r.t;
  for (const auto& [alpha, c] : coeffs)
    if (!c.is_zero()) best = std::min(best, c.abs_exponent() + qexp(step * degree(alpha)));
  return best;
}

bool restriction_hypothesis(long p, int kappa, int m, const Radius& r) {
  return Rat(kappa) * Rat(ipow(p, m) - 1) * r.t < 1;
}

RestrictionProbe restriction_probe(const Algebra& A, int m, const Radius& r) {
  RestrictionProbe pr;
  pr.actual = A.norm_exponent(bprime(A, 0, m), r);
  pr.expected = QExp::infinity();
  for (int j = 0; j <= m; ++j)
    pr.expected = std::min(pr.expected, qexp(Rat(m - j) + Rat(A.kappa()) * Rat(ipow(A.p(), j)) * r.t));
  return pr;
}

namespace {

std::map<Exp, Scalar> random_bprime_coeffs(const Algebra& A, Rng& rng, int m, int maxdeg,
                                           const std::vector<int>& vars) {
  const int top = std::min<long>(maxdeg, A.N() / ipow(A.p(), m).get_si());
  if (top < 0) throw DegreeOverflow("no b'-monomials fit below N");
  MonomialBasis B(A.d(), top);
  std::vector<int> pool;
  for (int i = 0; i < B.size(); ++i) {
    bool ok = true;
    for (int k = 0; k < A.d(); ++k)
      if (B.exp(i)[k] && std::find(vars.begin(), vars.end(), k) == vars.end()) ok = false;
    if (ok) pool.push_back(i);
  }
  std::map<Exp, Scalar> out;
  for (int i : pool)
    if (uniform(rng, 1, 3) == 1) out.emplace(B.exp(i), random_scalar(A.field(), rng, -1, 2));
  if (out.empty())
    out.emplace(B.exp(pool[uniform(rng, 0, static_cast<long>(pool.size()) - 1)]),
                random_scalar(A.field(), rng, -1, 2));
  return out;
}

std::string describe(const std::map<Exp, Scalar>& c) {
  std::string s;
  for (const auto& [a, x] : c) {
    s += (s.empty() ? "" : " + ") + x.str() + "*b'^(";
    for (std::size_t i = 0; i < a.size(); ++i) s += (i ? "," : "") + std::to_string(a[i]);
    s += ")";
  }
  return s;
}

}  // namespace

RestrictionReport restriction_check(const Algebra& A, int m, const Radius& r, long samples, Rng& rng, int maxdeg) {
  if (!restriction_hypothesis(A.p(), A.kappa(), m, r)) {
    RestrictionProbe pr = restriction_probe(A, m, r);
    throw HypothesisFailed("r^{kappa(p^m-1)} <= p^-1 at m = " + std::to_string(m) + ", r = " + r.str(A.p()) +
                           "; probe ||b'||_r exponent " + pr.actual.str() + ", expected " + pr.expected.str());
  }
  std::vector<int> all(A.d());
  for (int k = 0; k < A.d(); ++k) all[k] = k;
  RestrictionReport rep;
  for (long s = 0; s < samples; ++s) {
    auto c = random_bprime_coeffs(A, rng, m, maxdeg, all);
    QExp big = A.norm_exponent(expand_bprime(A, c, m), r);
    QExp own = intrinsic_norm(A, c, m, r);
    ++rep.samples;
    if (!(big == own)) {
      rep.ok = false;
      rep.witness = describe(c) + ": " + big.str() + " vs " + own.str();
      throw CounterexampleFound("norm does not restrict: " + rep.witness);
    }
  }
  return rep;
}

FrommerReport frommer_orthogonality(const Algebra& A, const std::vector<Dist>& T, const Radius& r, long trials,
                                    Rng& rng) {
  FrommerReport rep;
  std::vector<QExp> norms;
  std::set<int> seen;
  for (std::size_t i = 0; i < T.size(); ++i) {
    QExp q = A.norm_exponent(T[i], r);
    std::vector<int> at;
    for (const auto& [idx, c] : T[i].coeffs())
      if (A.term_exponent(idx, c, r) == q) at.push_back(idx);
    if (at.size() != 1)
      throw UniqueAttainmentFailed("element " + std::to_string(i) + " attains its norm at " +
                                   std::to_string(at.size()) + " indices");
    if (!seen.insert(at[0]).second)
      throw InjectivityFailed("element " + std::to_string(i) + " attains at index " + std::to_string(at[0]) +
                              " already taken");
    rep.index.push_back(at[0]);
    norms.push_back(q);
  }
  rep.bijective = static_cast<int>(seen.size()) == A.basis().size();
  for (long t = 0; t < trials; ++t) {
    Dist sum = A.zero();
    QExp best = QExp::infinity();
    for (std::size_t i = 0; i < T.size(); ++i) {
      if (uniform(rng, 0, 1)) continue;
      Scalar c = random_scalar(A.field(), rng, -1, 2);
      sum = sum + T[i].scale(c);
      best = std::min(best, c.abs_exponent() + norms[i]);
    }
    ++rep.trials;
    if (sum.finite_zero() && best.inf) continue;
    QExp got = A.norm_exponent(sum, r);
    if (!(got == best)) {
      rep.ok = false;
      throw CounterexampleFound("combination has norm exponent " + got.str() + ", expected " + best.str());
    }
  }
  return rep;
}

std::vector<MixedMonomial> mixed_family(const Algebra& A, int m) {
  const long pm = ipow(A.p(), m).get_si();
  std::vector<MixedMonomial> out;
  std::vector<Dist> bp;
  for (int k = 0; k < A.d(); ++k) bp.push_back(bprime(A, k, m));
  const MonomialBasis& B = A.basis();
  for (int i = 0; i < B.size(); ++i) {
    // gamma = p^m alpha + beta with beta < p^m is unique
    Exp alpha(A.d()), beta(A.d());
    for (int k = 0; k < A.d(); ++k) {
      alpha[k] = static_cast<int>(B.exp(i)[k] / pm);
      beta[k] = static_cast<int>(B.exp(i)[k] % pm);
    }
    Dist v = A.one();
    for (int k = 0; k < A.d(); ++k)
      for (int e = 0; e < alpha[k]; ++e) v = A.mul(v, bp[k], true);
    v = A.mul(v, A.monomial(beta, Scalar::one(A.field())), true);
    out.push_back({alpha, beta, v});
  }
  return out;
}

CosetSystem lower_p_transversal(const Group& G, int m) {
  const long pm = ipow(G.p(), m).get_si();
  CosetSystem C;
  C.m = m;
  Exp beta(G.d(), 0);
  for (;;) {
    Vec x(G.d());
    for (int k = 0; k < G.d(); ++k) x[k] = beta[k];
    C.reps.push_back(x);
    int k = G.d() - 1;
    while (k >= 0 && beta[k] == pm - 1) beta[k--] = 0;
    if (k < 0) break;
    ++beta[k];
  }
  return C;
}

namespace {

bool in_step(const Group& G, const Vec& x, int m) {
  for (const auto& c : x)
    if (c != 0 && vp(c, G.p()) < m) return false;
  return true;
}

std::vector<long> coset_key(const Group& G, const Vec& x, int m) {
  std::vector<long> k;
  for (const auto& c : x) k.push_back(mod_pk(c, G.p(), m).get_si());
  return k;
}

}  // namespace

CosetReport coset_conditions(const Group& G, const CosetSystem& C, Rng& rng, long normality_samples) {
  const int m = C.m;
  CosetReport rep;
  rep.t = static_cast<long>(C.reps.size());
  rep.t_valuation = vp(Int(rep.t), G.p());
  if (C.reps.empty() || !G.is_identity(C.reps[0])) throw ConditionFailed("first representative must be 1");
  if (Int(rep.t) != ipow(G.p(), static_cast<std::int64_t>(m) * G.d()))
    throw ConditionFailed("index " + std::to_string(rep.t) + " is not p^{md}");

  std::map<std::vector<long>, int> by_key;
  for (std::size_t i = 0; i < C.reps.size(); ++i) by_key.emplace(coset_key(G, C.reps[i], m), static_cast<int>(i));
  for (std::size_t i = 0; i < C.reps.size(); ++i)
    for (std::size_t j = i + 1; j < C.reps.size(); ++j)
      if (by_key.size() != C.reps.size() || in_step(G, G.mul(G.inv(C.reps[i]), C.reps[j]), m))
        throw ConditionFailed("distinct cosets: representatives " + std::to_string(i) + " and " +
                              std::to_string(j) + " coincide modulo H^(m)");

  auto find = [&](const Vec& y) {
    auto it = by_key.find(coset_key(G, y, m));
    if (it != by_key.end() && in_step(G, G.mul(G.inv(C.reps[it->second]), y), m)) return it->second;
    for (std::size_t k = 0; k < C.reps.size(); ++k)
      if (in_step(G, G.mul(G.inv(C.reps[k]), y), m)) return static_cast<int>(k);
    return -1;
  };

  const long pm = ipow(G.p(), m).get_si();
  for (long s = 0; s < normality_samples; ++s) {
    Vec h(G.d()), g(G.d());
    for (int k = 0; k < G.d(); ++k) {
      h[k] = Rat(pm * uniform(rng, -G.p() * G.p(), G.p() * G.p()));
      g[k] = Rat(uniform(rng, -G.p() * G.p(), G.p() * G.p()));
    }
    for (const Vec& x : {g, C.reps[static_cast<std::size_t>(s) % C.reps.size()]}) {
      ++rep.normality_samples;
      if (!in_step(G, G.mul(G.mul(x, h), G.inv(x)), m))
        throw ConditionFailed("normality: g h g^-1 leaves H^(m)");
    }
  }
  for (std::size_t i = 0; i < C.reps.size(); ++i) {
    for (std::size_t j = 0; j < C.reps.size(); ++j) {
      ++rep.products;
      if (find(G.mul(C.reps[i], C.reps[j])) < 0)
        throw ConditionFailed("products: g_" + std::to_string(i) + " g_" + std::to_string(j) + " in no coset");
    }
    ++rep.inverses;
    if (find(G.inv(C.reps[i])) < 0) throw ConditionFailed("inverses: g_" + std::to_string(i) + "^-1 in no coset");
  }
  return rep;
}

Radius s_delta(long p, int kappa, const Radius& delta, int m) {
  if (!(Rat(kappa) * delta.t * (p - 1) > 1))
    throw InvalidDelta("delta = " + delta.str(p) + " does not satisfy delta^kappa < p^{-1/(p-1)}");
  return Radius(delta.t / Rat(ipow(p, m)));
}

TransferReport norm_transfer_check(const LGroupSpec& spec, int scale, const Radius& delta, int m, long samples,
                                   Rng& rng, int maxdeg, const Rat& Mprime) {
  const long p = spec.L->p();
  const int kappa = p == 2 ? 2 : 1;
  TransferReport rep;
  rep.level = m + kappa - 1;
  rep.r = s_delta(p, kappa, delta, rep.level);
  if (!restriction_hypothesis(p, kappa, m, rep.r))
    throw HypothesisFailed("r^{kappa(p^m-1)} <= p^-1 at r = " + rep.r.str(p));
  if (p == 2) {
    // second step: s = r^{p^m} down one more level
    Radius s(rep.r.t * Rat(ipow(p, m)));
    if (!restriction_hypothesis(p, kappa, 1, s)) throw HypothesisFailed("s^{kappa(p-1)} <= p^-1 at s = " + s.str(p));
  }
  const int big_N = static_cast<int>(ipow(p, rep.level).get_si()) * maxdeg;
  FFamily big(spec, big_N, scale);
  FFamily small(spec, maxdeg, scale + rep.level);
  const Algebra& A = big.algebra();
  const Algebra& S = small.algebra();
  std::vector<int> all(A.d()), canon;
  for (int k = 0; k < A.d(); ++k) all[k] = k;
  for (int j = 1; j <= big.d(); ++j) canon.push_back(big.var(1, j));
  rep.offset_min = rep.offset_max = 0;
  for (long t = 0; t < samples; ++t) {
    const bool sub = t % 2 == 0;
    auto c = random_bprime_coeffs(A, rng, rep.level, maxdeg, sub ? canon : all);
    QExp a = A.norm_exponent(expand_bprime(A, c, rep.level), rep.r);
    QExp b = intrinsic_norm(A, c, rep.level, rep.r);
    Dist lam = S.zero();
    for (const auto& [alpha, x] : c) lam = lam + S.monomial(alpha, x);
    NormValue q = quotient_norm(small, lam, delta, Mprime);
    if (!q.certified) throw PrecisionExhausted("quotient norm not certified below M' = " + Mprime.get_str());
    ++rep.samples;
    if (!(a == b)) {
      rep.ok = false;
      throw CounterexampleFound("restriction to level " + std::to_string(rep.level) + " fails on " + describe(c) +
                                ": " + a.str() + " vs " + b.str());
    }
    Rat off = q.q.q - b.q;
    if (sub) {
      ++rep.sublattice;
      if (off != 0) {
        rep.ok = false;
        throw CounterexampleFound("quotient norm differs on the b'_1j lattice: " + describe(c));
      }
    }
    rep.offset_min = std::min(rep.offset_min, off);
    rep.offset_max = std::max(rep.offset_max, off);
  }
  return rep;
}

}  // namespace padist
