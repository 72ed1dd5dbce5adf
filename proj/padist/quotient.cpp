#include "padist/quotient.hpp"

#include <optional>

#include "padist/errors.hpp"

namespace padist {

namespace {

// v_s = w^a pi^b with s = b f + a.
Scalar basis_element(const Field& L, int s) {
  Scalar x = Scalar::pi(L).pow(s / L.f());
  return s % L.f() ? Scalar::w(L).pow(s % L.f()) * x : x;
}

}  // namespace

FFamily::FFamily(const LGroupSpec& spec, int N, int scale, const std::string& cache_dir) {
  const Field& L = *spec.L;
  Restriction R = scalar_restrict(spec, scale);
  n_ = R.n;
  d_ = R.d;
  auto G = std::make_shared<Group>(R.lattice, L.M());
  A_ = std::make_shared<Algebra>(spec.L, structure_constants(G, N, cache_dir));
  for (int s = 0; s < n_; ++s) v_.push_back(basis_element(L, s));

  F_.assign(n_ * d_, A_->zero());
  Ftr_.assign(n_ * d_, A_->zero());
  for (int j = 1; j <= d_; ++j) {
    Dist l1 = A_->log_series(var(1, j));
    for (int i = 2; i <= n_; ++i) {
      F_[var(i, j)] = A_->log_series(var(i, j)) - l1.scale(v(i));
      Ftr_[var(i, j)] = F_[var(i, j)].without_tail();
      kernel_.emplace_back(i, j);
    }
  }

  // Lie kernel: F_ij <-> e_ij - v_i e_1j in K (x) Lie(G_0), an ideal.
  const int D = n_ * d_;
  auto vec = [&](int i, int j) {
    std::vector<Scalar> x(D, Scalar::zero(L));
    x[var(i, j)] = Scalar::one(L);
    x[var(1, j)] = -v(i);
    return x;
  };
  for (std::size_t t = 0; t < kernel_.size(); ++t)
    for (std::size_t s = t + 1; s < kernel_.size(); ++s) {
      auto x = vec(kernel_[t].first, kernel_[t].second), y = vec(kernel_[s].first, kernel_[s].second);
      std::vector<Scalar> z(D, Scalar::zero(L));
      for (int a = 0; a < D; ++a)
        for (int b = 0; b < D; ++b) {
          if (x[a].is_zero() || y[b].is_zero()) continue;
          Scalar xy = x[a] * y[b];
          for (int k = 0; k < D; ++k)
            if (R.lattice.c(a, b, k) != 0) z[k] += xy.mul_rat(R.lattice.c(a, b, k));
        }
      LieRelation rel{static_cast<int>(t), static_cast<int>(s), {}};
      std::vector<Scalar> rest = z;
      for (std::size_t l = 0; l < kernel_.size(); ++l) {
        const auto [i, j] = kernel_[l];
        Scalar c = z[var(i, j)];
        if (c.is_zero()) continue;
        rel.coeffs.emplace_back(static_cast<int>(l), c);
        auto f = vec(i, j);
        for (int k = 0; k < D; ++k) rest[k] -= c * f[k];
      }
      for (const auto& r : rest)
        if (!r.is_zero()) throw CounterexampleFound("bracket of kernel generators left the kernel");
      lie_.push_back(std::move(rel));
    }
}

std::vector<Res> FFamily::vbar() const {
  std::vector<Res> out;
  for (const auto& x : v_) out.push_back(x.valuation() == 0 ? x.residue() : A_->field().r_zero());
  return out;
}

Symbol f_symbol(const FFamily& fam, int i, int j, const Radius& r) {
  if (i < 2 || i > fam.n() || j < 1 || j > fam.d()) throw DimensionMismatch("F_ij needs 2 <= i <= n, 1 <= j <= d");
  LogIndex li = dominant_log_index(fam.p(), fam.kappa(), r);
  if (li.critical) throw CriticalRadius("radius " + r.str(fam.p()) + " is critical");
  const Algebra& A = fam.algebra();
  Symbol s = A.principal_symbol(fam.F(i, j), r);
  GradedIdealBasis closed = f_symbol_family(A.graded_ring(r), fam.n(), fam.d(), li.h, fam.vbar());
  const auto& kern = fam.kernel();
  const auto at = std::find(kern.begin(), kern.end(), std::make_pair(i, j)) - kern.begin();
  if (!(s == closed.gens[at]))
    throw CounterexampleFound("symbol of F_" + std::to_string(i) + std::to_string(j) + " is " + s.str() +
                              ", closed form " + closed.gens[at].str());
  return s;
}

CheckReport orthogonality_check(const FFamily& fam, const Radius& r, long trials, Rng& rng) {
  if (dominant_log_index(fam.p(), fam.kappa(), r).critical)
    throw CriticalRadius("radius " + r.str(fam.p()) + " is critical");
  const Algebra& A = fam.algebra();
  CheckReport rep;
  for (long t = 0; t < trials; ++t) {
    Dist sum = A.zero();
    QExp best = QExp::infinity();
    std::string desc;
    for (const auto& [i, j] : fam.kernel()) {
      Scalar c = random_scalar(A.field(), rng, -1, 2);
      Dist term = fam.F(i, j).scale(c);
      best = std::min(best, A.norm_exponent(term, r));
      sum = sum + term;
      desc += " c" + std::to_string(i) + std::to_string(j) + "=" + c.str();
    }
    ++rep.trials;
    QExp got = A.norm_exponent(sum, r);
    if (!(got == best)) {
      rep.ok = false;
      rep.witness = "norm " + got.str() + " vs max " + best.str() + " at" + desc;
      throw CounterexampleFound("orthogonality fails: " + rep.witness);
    }
  }
  return rep;
}

std::map<Exp, Scalar> CanonicalForm::coeffs(const FFamily& fam) const {
  std::map<Exp, Scalar> out;
  const MonomialBasis& B = fam.algebra().basis();
  for (const auto& [idx, c] : form.coeffs()) {
    Exp beta(fam.d(), 0);
    for (int j = 1; j <= fam.d(); ++j) beta[j - 1] = B.exp(idx)[fam.var(1, j)];
    out.emplace(beta, c);
  }
  return out;
}

CanonicalForm canonicalize(const FFamily& fam, const Dist& lambda, const Radius& r, const Rat& Mprime) {
  LogIndex li = dominant_log_index(fam.p(), fam.kappa(), r);
  if (li.critical || li.h != 0)
    throw CriticalRadius("canonicalization needs r^kappa < p^{-1/(p-1)}; radius " + r.str(fam.p()) +
                         (li.critical ? " is critical" : " has h = " + std::to_string(li.h)));
  const Algebra& A = fam.algebra();
  const MonomialBasis& B = A.basis();
  const QExp cutoff = qexp(Mprime);

  auto first_noncanonical = [&](int idx) {
    const Exp& a = B.exp(idx);
    for (int k = 0; k < A.d(); ++k)
      if (a[k] > 0 && !fam.canonical_var(k)) return k;
    return -1;
  };
  auto level = [&](const Dist& x) {
    QExp s = QExp::infinity();
    for (const auto& [idx, c] : x.coeffs())
      if (first_noncanonical(idx) >= 0) s = std::min(s, A.term_exponent(idx, c, r));
    return s;
  };

  CanonicalForm out;
  const QExp input_tail = A.norm(lambda, r).tail;
  if (input_tail < cutoff) {
    Rat need = Mprime / (Rat(fam.kappa()) * r.t);
    Int n;
    mpz_cdiv_q(n.get_mpz_t(), need.get_num_mpz_t(), need.get_den_mpz_t());
    throw DegreeOverflow("input tail only bounded by exponent " + input_tail.str() + " < M' = " +
                         Mprime.get_str() + "; needs N >= " + n.get_str());
  }
  Dist cur = lambda.without_tail();
  std::optional<QExp> prev;
  for (;;) {
    QExp s = level(cur);
    if (s.inf || !(s < cutoff)) break;
    if (prev && !(*prev < s))
      throw CounterexampleFound("reduction did not raise the degree: " + prev->str() + " then " + s.str());
    // Rewrite every non-canonical term at level s; new terms at level s carry
    // fewer non-canonical factors, everything else lands strictly higher.
    for (long steps = 0;; ++steps) {
      if (steps > 100000) throw CounterexampleFound("reduction at level " + s.str() + " does not terminate");
      int idx = -1;
      for (const auto& [i, c] : cur.coeffs())
        if (first_noncanonical(i) >= 0 && A.term_exponent(i, c, r) == s) {
          idx = i;
          break;
        }
      if (idx < 0) break;
      const int k = first_noncanonical(idx);
      Exp rest = B.exp(idx);
      --rest[k];
      Dist mu = A.monomial(rest, cur.coeffs().at(idx));
      cur = cur - A.mul(fam.F_trunc(k), mu).without_tail();
    }
    out.levels.push_back(s.q);
    ++out.passes;
    prev = s;
  }
  out.residual = std::min(input_tail, level(cur));
  std::map<int, Scalar> keep;
  for (const auto& [idx, c] : cur.coeffs())
    if (first_noncanonical(idx) < 0) keep.emplace(idx, c);
  out.form = A.from_coeffs(keep);
  return out;
}

NormValue quotient_norm(const FFamily& fam, const Dist& lambda, const Radius& r, const Rat& Mprime) {
  CanonicalForm cf = canonicalize(fam, lambda, r, Mprime);
  NormValue v = fam.algebra().norm(cf.form, r);
  v.tail = cf.residual;
  v.certified = v.tail > v.q;
  return v;
}

CheckReport domain_smoke_test(const FFamily& fam, const Radius& r, long trials, Rng& rng, int maxdeg,
                              const Rat& Mprime) {
  const Algebra& A = fam.algebra();
  std::vector<int> canon;
  for (int j = 1; j <= fam.d(); ++j) canon.push_back(fam.var(1, j));
  auto qn = [&](const Dist& x) {
    NormValue v = quotient_norm(fam, x, r, Mprime);
    if (!v.certified) throw PrecisionExhausted("quotient norm not certified below M' = " + Mprime.get_str());
    return v.q;
  };
  CheckReport rep;
  for (long t = 0; t < trials; ++t) {
    Dist x = random_dist_in(A, rng, canon, maxdeg), y = random_dist_in(A, rng, canon, maxdeg);
    Dist xy = A.mul(x, y, true);
    ++rep.trials;
    QExp lhs = qn(xy), rhs = qn(x) + qn(y);
    if (!(lhs == rhs)) {
      rep.ok = false;
      rep.witness = "(" + A.str(x) + ") * (" + A.str(y) + "): " + lhs.str() + " vs " + rhs.str();
      throw CounterexampleFound("quotient norm not multiplicative: " + rep.witness);
    }
  }
  return rep;
}

}  // namespace padist
