#include "padist/groups.hpp"

#include <algorithm>
#include <sstream>

#include "padist/errors.hpp"

namespace padist {

LieLattice LieLattice::zero(long p, int d) {
  LieLattice L;
  L.p = p;
  L.d = d;
  L.n.assign(static_cast<std::size_t>(d) * d * d, Rat(0));
  for (int i = 0; i < d; ++i) L.labels.push_back("h" + std::to_string(i + 1));
  return L;
}

LieLattice LieLattice::step(int m) const {
  LieLattice r = *this;
  Rat s(ipow(p, m));
  for (auto& x : r.n) x *= s;
  return r;
}

LieLattice abelian_lattice(long p, int d) { return LieLattice::zero(p, d); }

LieLattice heisenberg_lattice(long p) {
  LieLattice L = LieLattice::zero(p, 3);
  Rat c(ipow(p, L.kappa()));
  L.c(0, 1, 2) = c;
  L.c(1, 0, 2) = -c;
  return L;
}

namespace {

// Row-reduce a set of vectors over Q; returns the rank.
int rank_q(std::vector<Vec> rows) {
  int rank = 0;
  if (rows.empty()) return 0;
  const int n = static_cast<int>(rows[0].size());
  for (int c = 0; c < n && rank < static_cast<int>(rows.size()); ++c) {
    int piv = -1;
    for (int r = rank; r < static_cast<int>(rows.size()); ++r)
      if (rows[r][c] != 0) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    std::swap(rows[piv], rows[rank]);
    for (int r = rank + 1; r < static_cast<int>(rows.size()); ++r) {
      if (rows[r][c] == 0) continue;
      Rat f = rows[r][c] / rows[rank][c];
      for (int k = c; k < n; ++k) rows[r][k] -= f * rows[rank][k];
    }
    ++rank;
  }
  return rank;
}

std::vector<Vec> basis_q(std::vector<Vec> rows) {
  std::vector<Vec> out;
  for (auto& r : rows) {
    out.push_back(r);
    if (rank_q(out) < static_cast<int>(out.size())) out.pop_back();
  }
  return out;
}

std::vector<Rat> bernoulli_over_factorial(int nmax) {
  // B_0..B_nmax via sum_{k<=n} C(n+1,k) B_k = 0.
  std::vector<Rat> B(nmax + 1);
  B[0] = 1;
  for (int n = 1; n <= nmax; ++n) {
    Rat s = 0;
    for (int k = 0; k < n; ++k) s += Rat(binom_int(n + 1, k)) * B[k];
    B[n] = -s / Rat(n + 1);
  }
  Int f = 1;
  for (int n = 1; n <= nmax; ++n) {
    f *= n;
    B[n] /= Rat(f);
  }
  return B;
}

std::uint64_t fnv(std::uint64_t h, const std::string& s) {
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  return h;
}

}  // namespace

void validate(const LieLattice& L, int M) {
  if (L.d < 1) throw InvalidLattice("dimension must be >= 1");
  Int pz = L.p;
  if (L.p < 2 || mpz_probab_prime_p(pz.get_mpz_t(), 30) == 0) throw InvalidLattice("p is not prime");
  if (static_cast<int>(L.n.size()) != L.d * L.d * L.d) throw InvalidLattice("structure constant table has wrong size");
  const int d = L.d;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k) {
        if (L.c(i, j, k) != -L.c(j, i, k))
          throw InvalidLattice("bracket is not antisymmetric at (" + std::to_string(i + 1) + "," +
                               std::to_string(j + 1) + ")");
        if (L.c(i, j, k) != 0 && vp(L.c(i, j, k), L.p) < L.kappa())
          throw NotPowerful("v_p of [X" + std::to_string(i + 1) + ",X" + std::to_string(j + 1) +
                            "] coefficient is below kappa = " + std::to_string(L.kappa()));
      }
  // Jacobi: [X_a,[X_b,X_c]] + cyclic = 0 mod p^M.
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b)
      for (int c = 0; c < d; ++c)
        for (int k = 0; k < d; ++k) {
          Rat s = 0;
          for (int m = 0; m < d; ++m) {
            s += L.c(b, c, m) * L.c(a, m, k);
            s += L.c(c, a, m) * L.c(b, m, k);
            s += L.c(a, b, m) * L.c(c, m, k);
          }
          if (s != 0 && vp(s, L.p) < M) throw InvalidLattice("Jacobi identity fails");
        }
}

Group::Group(LieLattice L, int M, int max_depth) : L_(std::move(L)), M_(M) {
  validate(L_, M_);
  const int d = L_.d;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        if (L_.c(i, j, k) != 0) terms_.push_back({i, j, k, L_.c(i, j, k)});

  // Lower central series over Q.
  std::vector<Vec> cur;
  for (int i = 0; i < d; ++i) cur.push_back(unit_vec(i));
  nil_class_ = 0;
  for (int step = 1; step <= d + 1; ++step) {
    std::vector<Vec> next;
    for (const auto& v : cur)
      for (int i = 0; i < d; ++i) next.push_back(bracket(unit_vec(i), v));
    next = basis_q(next);
    if (next.empty()) {
      nil_class_ = step;
      break;
    }
    cur = next;
  }
  exact_ = nil_class_ > 0;

  if (exact_) {
    depth_ = nil_class_;
  } else {
    // Degree-n part has n-1 brackets (valuation >= kappa each) and
    // coefficient denominators of valuation <= floor((n-1)/(p-1)).
    int n = 1;
    while (L_.kappa() * (n - 1) - (n - 1) / (L_.p - 1) < M_) {
      if (++n > max_depth)
        throw PrecisionExhausted("Hausdorff series needs more than " + std::to_string(max_depth) +
                                 " degrees to certify precision p^" + std::to_string(M_));
    }
    depth_ = n - 1;
  }
  bk_ = bernoulli_over_factorial(std::max(depth_, 2));

  std::uint64_t h = 1469598103934665603ULL;
  std::ostringstream os;
  os << L_.p << ':' << d << ':';
  for (const auto& x : L_.n) os << x.get_str() << ',';
  hash_ = fnv(h, os.str());
}

Vec Group::unit_vec(int i, const Rat& s) const {
  Vec v(L_.d);
  v[i] = s;
  return v;
}

Vec Group::bracket(const Vec& x, const Vec& y) const {
  Vec r(L_.d);
  for (const auto& t : terms_) {
    if (x[t.i] == 0 || y[t.j] == 0) continue;
    r[t.k] += t.c * x[t.i] * y[t.j];
  }
  return r;
}

Vec Group::reduce(Vec x) const {
  if (exact_) return x;
  for (auto& c : x) c = padic_reduce(c, L_.p, M_);
  return x;
}

bool Group::equal(const Vec& a, const Vec& b) const {
  for (int i = 0; i < L_.d; ++i) {
    if (exact_) {
      if (a[i] != b[i]) return false;
    } else if (a[i] != b[i] && vp(a[i] - b[i], L_.p) < M_) {
      return false;
    }
  }
  return true;
}

bool Group::is_identity(const Vec& x) const { return equal(x, zero()); }

Vec Group::bch(const Vec& x, const Vec& y) const {
  const int d = L_.d;
  Vec W(d), D(d);
  for (int i = 0; i < d; ++i) {
    W[i] = x[i] + y[i];
    D[i] = x[i] - y[i];
  }
  if (terms_.empty()) return reduce(W);
  // Working precision for intermediates in modular mode.
  const std::int64_t wprec = M_ + depth_;
  auto red = [&](Vec v) {
    if (!exact_)
      for (auto& c : v) c = padic_reduce(c, L_.p, wprec);
    return v;
  };
  const int T = depth_;
  std::vector<Vec> Z(T + 1, Vec(d));
  Z[1] = W;
  // Tq[q][m] = sum over k_1+..+k_q = m of [Z_k1,[..,[Z_kq, W]]].
  std::vector<std::vector<Vec>> Tq(T + 1, std::vector<Vec>(T + 1, Vec(d)));
  for (int n = 1; n < T; ++n) {
    // Fill Tq[*][n] now that Z_1..Z_n are known.
    Tq[1][n] = red(bracket(Z[n], W));
    for (int q = 2; q <= n; ++q) {
      Vec acc(d);
      for (int k = 1; k <= n - q + 1; ++k) {
        Vec b = bracket(Z[k], Tq[q - 1][n - k]);
        for (int i = 0; i < d; ++i) acc[i] += b[i];
      }
      Tq[q][n] = red(acc);
    }
    Vec next = bracket(D, Z[n]);
    for (auto& c : next) c /= 2;
    for (int q = 2; q <= n; q += 2) {
      if (bk_[q] == 0) continue;
      for (int i = 0; i < d; ++i) next[i] += bk_[q] * Tq[q][n][i];
    }
    for (auto& c : next) c /= (n + 1);
    Z[n + 1] = red(next);
  }
  Vec z(d);
  for (int n = 1; n <= T; ++n)
    for (int i = 0; i < d; ++i) z[i] += Z[n][i];
  return reduce(z);
}

Vec Group::to_first(const Vec& s) const {
  if (terms_.empty()) return reduce(s);
  Vec z = zero();
  for (int i = 0; i < L_.d; ++i) {
    if (s[i] == 0) continue;
    z = bch(z, unit_vec(i, s[i]));
  }
  return z;
}

Vec Group::to_second(const Vec& f) const {
  if (terms_.empty()) return reduce(f);
  Vec x = f;
  const int cap = exact_ ? nil_class_ + 2 : M_ + L_.d + 4;
  for (int it = 0; it < cap; ++it) {
    Vec back = to_first(x);
    bool done = true;
    for (int i = 0; i < L_.d; ++i) {
      Rat e = f[i] - back[i];
      if (e != 0 && (exact_ || vp(e, L_.p) < M_)) done = false;
      x[i] += e;
    }
    x = reduce(x);
    if (done) return x;
  }
  throw PrecisionExhausted("chart conversion did not converge");
}

Vec Group::mul(const Vec& x, const Vec& y) const {
  if (terms_.empty()) {
    Vec r(L_.d);
    for (int i = 0; i < L_.d; ++i) r[i] = x[i] + y[i];
    return reduce(r);
  }
  return to_second(bch(to_first(x), to_first(y)));
}

Vec Group::inv(const Vec& x) const { return pow(x, Rat(-1)); }

Vec Group::pow(const Vec& x, const Rat& lambda) const {
  if (vp(lambda, L_.p) < 0 && lambda != 0) throw NonUnit("exponent must lie in Z_p");
  Vec f = to_first(x);
  for (auto& c : f) c *= lambda;
  return to_second(reduce(f));
}

Vec Group::commutator(const Vec& x, const Vec& y) const {
  if (terms_.empty()) return zero();
  Vec a = to_first(x), b = to_first(y);
  Vec na = a, nb = b;
  for (auto& c : na) c = -c;
  for (auto& c : nb) c = -c;
  return to_second(bch(bch(na, nb), bch(a, b)));
}

GroupElement Group::convert(const GroupElement& g, GroupElement::Mode target) const {
  if (g.mode == target) return g;
  GroupElement r;
  r.mode = target;
  r.x = target == GroupElement::First ? to_first(g.x) : to_second(g.x);
  return r;
}

int Group::level(const Vec& s) const {
  std::int64_t v = kInf;
  for (const auto& c : s) v = std::min(v, vp(c, L_.p));
  if (v >= M_) throw PrecisionExhausted("all coordinates vanish modulo p^" + std::to_string(M_));
  if (v < 0) throw NonUnit("coordinates are not in Z_p");
  return static_cast<int>(v) + 1;
}

std::int64_t Group::omega(const Vec& s) const {
  if (exact_ && is_identity(s)) return kInf;
  return level(s) + kappa() - 1;
}

std::int64_t Group::omega_first_kind(const Vec& s) const {
  if (exact_ && is_identity(s)) return kInf;
  Vec f = to_first(s);
  std::int64_t v = kInf;
  for (const auto& c : f) v = std::min(v, vp(c, L_.p));
  if (v >= M_) throw PrecisionExhausted("all coordinates vanish modulo p^" + std::to_string(M_));
  return v + kappa();
}

namespace {

std::string vec_str(const Vec& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i].get_str();
  return s + ")";
}

std::string om_str(std::int64_t w) { return w == kInf ? "inf" : std::to_string(w); }

}  // namespace

PValuationReport Group::check_p_valuation(const std::vector<std::pair<Vec, Vec>>& pairs) const {
  PValuationReport rep;
  for (const auto& [g, h] : pairs) {
    const std::string tag = "g=" + vec_str(g) + " h=" + vec_str(h);
    std::int64_t wg = omega(g), wh = omega(h);
    // A product that vanishes to precision only certifies omega >= M + kappa.
    auto om_lower = [&](const Vec& x) {
      if (!exact_ && is_identity(x)) return static_cast<std::int64_t>(M_ + kappa());
      return omega(x);
    };
    std::int64_t cap = exact_ ? kInf : M_ + kappa();
    std::int64_t w1 = om_lower(mul(g, inv(h)));
    if (w1 < std::min({wg, wh, cap})) rep.violations.push_back("ultrametric: " + tag);
    std::int64_t w2 = om_lower(commutator(g, h));
    std::int64_t want = wg == kInf || wh == kInf ? kInf : wg + wh;
    if (w2 < std::min(want, cap))
      rep.violations.push_back("commutator: " + tag + " omega([g,h])=" + om_str(w2));
    for (const Vec* x : {&g, &h}) {
      std::int64_t wx = omega(*x);
      if (wx == kInf) continue;
      Vec xp = pow(*x, Rat(L_.p));
      if (wx + 1 - kappa() + 1 <= M_) {
        if (omega(xp) != wx + 1) rep.violations.push_back("p-power: " + vec_str(*x));
      }
      if (omega_first_kind(*x) != wx) rep.violations.push_back("eq2: " + vec_str(*x));
    }
    ++rep.checked;
  }
  return rep;
}

CommutatorCheck check_powerful_commutator(const Group& G, int level, int i, int j) {
  if (G.p() != 2) throw InvalidLattice("the commutator lemma is stated for p = 2");
  if (i < 1 || j < 1 || level < i + j + 1)
    throw InvalidLattice("quotient level must be at least i + j + 1");
  if (G.M() < i + j) throw PrecisionExhausted("working precision below i + j");
  const int d = G.d();
  const long p = G.p();
  const int target = i + j;  // P_{i+j+1} = exp(p^{i+j} L)
  // Transversals: p^{i-1} a, a mod p^{j+1}; p^{j-1} b, b mod p^{i+1}.
  auto enumerate = [&](int shift, int digits) {
    std::vector<Vec> out;
    long base = 1;
    for (int t = 0; t < digits; ++t) base *= p;
    long total = 1;
    for (int t = 0; t < d; ++t) total *= base;
    Rat sc(ipow(p, shift));
    for (long idx = 0; idx < total; ++idx) {
      Vec v(d);
      long r = idx;
      for (int t = 0; t < d; ++t) {
        v[t] = sc * Rat(r % base);
        r /= base;
      }
      out.push_back(v);
    }
    return out;
  };
  auto A = enumerate(i - 1, j + 1);
  auto B = enumerate(j - 1, i + 1);
  CommutatorCheck res;
  for (const auto& a : A) {
    Vec na = a;
    for (auto& c : na) c = -c;
    for (const auto& b : B) {
      Vec nb = b;
      for (auto& c : nb) c = -c;
      Vec cm = G.abelian() ? G.zero() : G.bch(G.bch(na, nb), G.bch(a, b));
      ++res.pairs;
      for (const auto& c : cm) {
        if (c != 0 && vp(c, p) < target) {
          res.ok = false;
          res.witness = "log g=" + vec_str(a) + " log h=" + vec_str(b) + " log[g,h]=" + vec_str(cm);
          throw CounterexampleFound("[P_" + std::to_string(i) + ",P_" + std::to_string(j) +
                                    "] not in P_" + std::to_string(i + j + 1) + ": " + res.witness);
        }
      }
    }
  }
  return res;
}

LGroupSpec LGroupSpec::additive(FieldPtr L, int d) {
  LGroupSpec s;
  s.L = std::move(L);
  s.d = d;
  s.c.assign(static_cast<std::size_t>(d) * d * d, std::vector<Rat>(s.L->dim()));
  return s;
}

Restriction scalar_restrict(const LGroupSpec& spec, int scale) {
  const Field& F = *spec.L;
  const int n = F.dim(), d = spec.d;
  if (static_cast<int>(spec.c.size()) != d * d * d)
    throw InvalidLattice("L-structure constant table has wrong size");
  Restriction R;
  R.n = n;
  R.d = d;
  R.lattice = LieLattice::zero(F.p(), n * d);
  R.lattice.labels.clear();
  for (int j = 1; j <= d; ++j)
    for (int i = 1; i <= n; ++i)
      R.lattice.labels.push_back("h" + std::to_string(i) + "_" + std::to_string(j));
  Rat sc(ipow(F.p(), scale));
  auto basis = [&](int s) {
    std::vector<Rat> v(n);
    v[s] = 1;
    return v;
  };
  for (int j = 0; j < d; ++j)
    for (int l = 0; l < d; ++l)
      for (int m = 0; m < d; ++m) {
        const auto& cm = spec.c[(j * d + l) * d + m];
        if (std::all_of(cm.begin(), cm.end(), [](const Rat& x) { return x == 0; })) continue;
        for (int i = 0; i < n; ++i)
          for (int k = 0; k < n; ++k) {
            std::vector<Rat> vv, prod;
            F.mul_coords(basis(i), basis(k), vv);
            F.mul_coords(vv, cm, prod);
            for (int s = 0; s < n; ++s)
              if (prod[s] != 0)
                R.lattice.c(j * n + i, l * n + k, m * n + s) += sc * prod[s];
          }
      }
  validate(R.lattice, F.M());
  return R;
}

}  // namespace padist
