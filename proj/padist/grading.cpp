#include "padist/grading.hpp"

#include <algorithm>
#include <functional>
#include <mutex>

#include "padist/errors.hpp"

namespace padist {

std::shared_ptr<const GradedRing> GradedRing::make(FieldPtr K, int nvars, Rat xdeg,
                                                   std::vector<std::string> names) {
  auto R = std::make_shared<GradedRing>();
  R->K = std::move(K);
  R->nvars = nvars;
  R->xdeg = std::move(xdeg);
  if (names.empty())
    for (int i = 0; i < nvars; ++i) names.push_back("X" + std::to_string(i + 1));
  if (static_cast<int>(names.size()) != nvars) throw DimensionMismatch("wrong number of variable names");
  R->names = std::move(names);
  return R;
}

QExp GradedRing::degree(std::int64_t w, const Exp& a) const {
  Rat q(w, K->e());
  q.canonicalize();
  return qexp(q + xdeg * padist::degree(a));
}

Symbol Symbol::term(RingPtr R, const Res& c, std::int64_t w, const Exp& a) {
  Symbol s(std::move(R));
  if (static_cast<int>(a.size()) != s.R_->nvars) throw DimensionMismatch("exponent vector has wrong length");
  s.add_term({w, a}, c);
  return s;
}

Symbol Symbol::var(RingPtr R, int i) {
  Exp a(R->nvars, 0);
  a[i] = 1;
  Res one = R->K->r_one();
  return term(std::move(R), one, 0, a);
}

Symbol Symbol::e0(RingPtr R, std::int64_t w) {
  Exp a(R->nvars, 0);
  Res one = R->K->r_one();
  return term(std::move(R), one, w, a);
}

void Symbol::add_term(const Key& k, const Res& c) {
  const Field& K = *R_->K;
  auto it = terms_.find(k);
  if (it == terms_.end()) {
    if (!K.r_is_zero(c)) terms_.emplace(k, c);
    return;
  }
  it->second = K.r_add(it->second, c);
  if (K.r_is_zero(it->second)) terms_.erase(it);
}

QExp Symbol::degree() const {
  if (terms_.empty()) throw ZeroDistribution("the zero symbol has no degree");
  const auto& k = terms_.begin()->first;
  return R_->degree(k.first, k.second);
}

bool Symbol::homogeneous() const {
  if (terms_.empty()) return true;
  QExp q = degree();
  for (const auto& [k, c] : terms_)
    if (!(R_->degree(k.first, k.second) == q)) return false;
  return true;
}

Symbol Symbol::operator+(const Symbol& o) const {
  if (o.is_zero()) return *this;
  if (is_zero()) return o;
  if (!(degree() == o.degree()))
    throw DegreeMismatch("cannot add symbols of degrees " + degree().str() + " and " + o.degree().str());
  Symbol r = *this;
  for (const auto& [k, c] : o.terms_) r.add_term(k, c);
  return r;
}

Symbol Symbol::operator-(const Symbol& o) const { return *this + o.scale(R_->K->r_neg(R_->K->r_one())); }

Symbol Symbol::scale(const Res& c) const {
  Symbol r(R_);
  for (const auto& [k, v] : terms_) r.add_term(k, R_->K->r_mul(v, c));
  return r;
}

Symbol Symbol::operator*(const Symbol& o) const {
  Symbol r(R_ ? R_ : o.R_);
  for (const auto& [k1, c1] : terms_)
    for (const auto& [k2, c2] : o.terms_) {
      Exp a = k1.second;
      for (std::size_t i = 0; i < a.size(); ++i) a[i] += k2.second[i];
      r.add_term({k1.first + k2.first, a}, R_->K->r_mul(c1, c2));
    }
  return r;
}

std::string Symbol::str() const {
  if (terms_.empty()) return "0";
  std::vector<std::pair<Key, Res>> v(terms_.begin(), terms_.end());
  std::stable_sort(v.begin(), v.end(), [](const auto& a, const auto& b) {
    if (a.first.second != b.first.second) return graded_lex_less(a.first.second, b.first.second);
    return a.first.first < b.first.first;
  });
  std::string out;
  const Field& K = *R_->K;
  for (const auto& [k, c] : v) {
    std::vector<std::string> parts;
    bool unit = c == K.r_one();
    if (!unit) {
      std::string cs = K.r_str(c);
      parts.push_back(cs.find('+') != std::string::npos ? "(" + cs + ")" : cs);
    }
    if (k.first != 0) parts.push_back(k.first == 1 ? "e0" : "e0^" + std::to_string(k.first));
    for (int i = 0; i < R_->nvars; ++i) {
      int a = k.second[i];
      if (a == 0) continue;
      parts.push_back(a == 1 ? R_->names[i] : R_->names[i] + "^" + std::to_string(a));
    }
    if (parts.empty()) parts.push_back("1");
    std::string t;
    for (std::size_t i = 0; i < parts.size(); ++i) t += (i ? " * " : "") + parts[i];
    out += (out.empty() ? "" : " + ") + t;
  }
  return out;
}

KPoly strip_units(const Symbol& s, std::int64_t* w) {
  if (s.is_zero()) throw ZeroDistribution("zero symbol");
  KPoly P;
  std::int64_t w0 = s.terms().begin()->first.first;
  for (const auto& [k, c] : s.terms()) {
    if (k.first != w0) throw DegreeMismatch("symbol is not of the form e0^w P(X)");
    P[k.second] = c;
  }
  int dg = degree(P.begin()->first);
  for (const auto& [a, c] : P)
    if (degree(a) != dg) throw DegreeMismatch("symbol is not X-homogeneous");
  if (w) *w = w0;
  return P;
}

// ---------------------------------------------------------------------------
// Sparse row echelon over k.

namespace {

using Row = std::vector<std::pair<int, Res>>;

class Echelon {
 public:
  explicit Echelon(const Field& K) : K_(K) {}

  // Returns true when r is independent of the rows inserted so far.
  bool insert(Row r) {
    while (!r.empty()) {
      auto it = piv_.find(r.front().first);
      if (it == piv_.end()) break;
      Res c = r.front().second;
      r = axpy(r, it->second, K_.r_neg(c));
    }
    if (r.empty()) return false;
    Res inv = K_.r_inv(r.front().second);
    for (auto& [col, v] : r) v = K_.r_mul(v, inv);
    int lead = r.front().first;
    piv_.emplace(lead, std::move(r));
    return true;
  }
  long rank() const { return static_cast<long>(piv_.size()); }

 private:
  Row axpy(const Row& a, const Row& b, const Res& c) const {
    Row out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
      if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
        out.push_back(a[i++]);
      } else if (i == a.size() || b[j].first < a[i].first) {
        out.push_back({b[j].first, K_.r_mul(c, b[j].second)});
        ++j;
      } else {
        Res v = K_.r_add(a[i].second, K_.r_mul(c, b[j].second));
        if (!K_.r_is_zero(v)) out.push_back({a[i].first, v});
        ++i;
        ++j;
      }
    }
    return out;
  }

  const Field& K_;
  std::map<int, Row> piv_;
};

struct Component {
  std::vector<Exp> mons;
  std::map<Exp, int> index;
};

const Component& component(int m, int delta) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, Component> memo;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(m, delta);
  auto it = memo.find(key);
  if (it != memo.end()) return it->second;
  Component c;
  Exp cur(m, 0);
  std::function<void(int, int)> rec = [&](int pos, int left) {
    if (pos == m - 1) {
      cur[pos] = left;
      c.mons.push_back(cur);
      return;
    }
    for (int a = left; a >= 0; --a) {
      cur[pos] = a;
      rec(pos + 1, left - a);
    }
  };
  rec(0, delta);
  for (int i = 0; i < static_cast<int>(c.mons.size()); ++i) c.index[c.mons[i]] = i;
  return memo.emplace(key, std::move(c)).first->second;
}

Row times_monomial(const KPoly& g, const Exp& mu, const Component& target) {
  Row r;
  for (const auto& [a, c] : g) {
    Exp s = a;
    for (std::size_t i = 0; i < s.size(); ++i) s[i] += mu[i];
    r.push_back({target.index.at(s), c});
  }
  std::sort(r.begin(), r.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  return r;
}

void insert_ideal(Echelon& E, int m, const std::vector<KPoly>& gens, int delta) {
  const Component& tgt = component(m, delta);
  for (const auto& g : gens) {
    int dg = degree(g.begin()->first);
    if (dg > delta) continue;
    for (const auto& mu : component(m, delta - dg).mons) E.insert(times_monomial(g, mu, tgt));
  }
}

}  // namespace

long ideal_component_dim(const Field& K, int m, const std::vector<KPoly>& gens, int delta) {
  Echelon E(K);
  insert_ideal(E, m, gens, delta);
  return E.rank();
}

GradedIdealBasis f_symbol_family(RingPtr R, int n, int d, int h, const std::vector<Res>& vbar) {
  const Field& K = *R->K;
  if (R->nvars != n * d) throw DimensionMismatch("ring must have n*d variables");
  if (static_cast<int>(vbar.size()) != n) throw DimensionMismatch("need n residues vbar_i");
  GradedIdealBasis fam;
  fam.h = h;
  long ph = 1;
  for (int t = 0; t < h; ++t) ph *= K.p();
  // eps^{-h} = ubar_p^{-h} e0^{-e h}
  Res u = K.r_pow(K.r_inv(sigma_p_unit(K)), Int(h));
  for (int j = 1; j <= d; ++j)
    for (int i = 2; i <= n; ++i) {
      Exp a(n * d, 0), b(n * d, 0);
      a[(j - 1) * n + (i - 1)] = static_cast<int>(ph);
      b[(j - 1) * n] = static_cast<int>(ph);
      Symbol s = Symbol::term(R, u, -static_cast<std::int64_t>(K.e()) * h, a) -
                 Symbol::term(R, K.r_mul(u, vbar[i - 1]), -static_cast<std::int64_t>(K.e()) * h, b);
      fam.gens.push_back(s);
    }
  return fam;
}

RegularSequenceReport check_regular_sequence(const GradedIdealBasis& fam, int D) {
  RegularSequenceReport rep;
  rep.degree_cap = D;
  const int t = static_cast<int>(fam.gens.size());
  if (t == 0) return rep;
  const RingPtr R = fam.gens[0].ring_ptr();
  const Field& K = *R->K;
  const int m = R->nvars;
  if (t > 12) throw DimensionMismatch("family too large for subset enumeration");
  std::vector<KPoly> P;
  std::vector<int> deg;
  for (const auto& s : fam.gens) {
    P.push_back(strip_units(s));
    deg.push_back(degree(P.back().begin()->first));
  }
  rep.orderings = 1;
  for (int i = 2; i <= t; ++i) rep.orderings *= i;
  std::map<std::pair<unsigned, int>, long> jdim;
  auto gens_of = [&](unsigned mask) {
    std::vector<KPoly> g;
    for (int i = 0; i < t; ++i)
      if (mask >> i & 1) g.push_back(P[i]);
    return g;
  };
  auto dimJ = [&](unsigned mask, int delta) {
    auto key = std::make_pair(mask, delta);
    auto it = jdim.find(key);
    if (it != jdim.end()) return it->second;
    long v = ideal_component_dim(K, m, gens_of(mask), delta);
    jdim[key] = v;
    return v;
  };
  for (int s = 0; s < t; ++s) {
    for (unsigned mask = 0; mask < (1u << t); ++mask) {
      if (mask >> s & 1) continue;
      auto gens = gens_of(mask);
      for (int delta = 0; delta + deg[s] <= D; ++delta) {
        const int dp = delta + deg[s];
        Echelon E(K);
        insert_ideal(E, m, gens, dp);
        long jd = E.rank();
        const Component& src = component(m, delta);
        const Component& tgt = component(m, dp);
        for (const auto& mu : src.mons) E.insert(times_monomial(P[s], mu, tgt));
        long expect = jd + static_cast<long>(src.mons.size()) - dimJ(mask, delta);
        ++rep.components;
        if (E.rank() != expect) {
          rep.ok = false;
          std::string S = "{";
          for (int i = 0; i < t; ++i)
            if (mask >> i & 1) S += (S.size() > 1 ? "," : "") + std::to_string(i + 1);
          rep.witness = "element " + std::to_string(s + 1) + " is a zero divisor modulo " + S +
                        "} in X-degree " + std::to_string(delta) + " (kernel dimension " +
                        std::to_string(expect - E.rank()) + ")";
          return rep;
        }
      }
    }
  }
  return rep;
}

QuotientIsoReport quotient_iso_check(const Field& K, int n, int d, const std::vector<Res>& vbar, int cap) {
  if (static_cast<int>(vbar.size()) != n) throw DimensionMismatch("need n residues vbar_i");
  const int m = n * d;
  std::vector<KPoly> gens;
  for (int j = 1; j <= d; ++j)
    for (int i = 2; i <= n; ++i) {
      Exp a(m, 0), b(m, 0);
      a[(j - 1) * n + (i - 1)] = 1;
      b[(j - 1) * n] = 1;
      KPoly g;
      g[a] = K.r_one();
      if (!K.r_is_zero(vbar[i - 1])) g[b] = K.r_neg(vbar[i - 1]);
      gens.push_back(g);
    }
  QuotientIsoReport rep;
  rep.degree_cap = cap;
  for (int delta = 0; delta <= cap; ++delta) {
    long total = static_cast<long>(component(m, delta).mons.size());
    long q = total - (gens.empty() ? 0 : ideal_component_dim(K, m, gens, delta));
    long target = binom_int(delta + d - 1, d - 1).get_si();
    rep.quotient_dims.push_back(q);
    rep.target_dims.push_back(target);
    if (q != target)
      throw DimensionMismatch("X-degree " + std::to_string(delta) + ": quotient has dimension " +
                              std::to_string(q) + ", expected " + std::to_string(target));
  }
  return rep;
}

UniPoly uni_from_symbol(const Symbol& s, int var) {
  UniPoly u;
  u.var = var;
  const Field& K = *s.ring().K;
  for (const auto& [k, c] : s.terms()) {
    for (int i = 0; i < static_cast<int>(k.second.size()); ++i)
      if (i != var && k.second[i] != 0) throw DimensionMismatch("symbol is not univariate");
    int a = k.second[var];
    if (static_cast<int>(u.coef.size()) <= a) u.coef.resize(a + 1);
    auto& l = u.coef[a];
    Res v = l.count(k.first) ? K.r_add(l[k.first], c) : c;
    if (K.r_is_zero(v))
      l.erase(k.first);
    else
      l[k.first] = v;
  }
  return u;
}

namespace {

Laurent l_mul(const Field& K, const Laurent& a, const Laurent& b) {
  Laurent r;
  for (const auto& [w1, c1] : a)
    for (const auto& [w2, c2] : b) {
      Res v = r.count(w1 + w2) ? K.r_add(r[w1 + w2], K.r_mul(c1, c2)) : K.r_mul(c1, c2);
      if (K.r_is_zero(v))
        r.erase(w1 + w2);
      else
        r[w1 + w2] = v;
    }
  return r;
}

void l_add_into(const Field& K, Laurent& a, const Laurent& b) {
  for (const auto& [w, c] : b) {
    Res v = a.count(w) ? K.r_add(a[w], c) : c;
    if (K.r_is_zero(v))
      a.erase(w);
    else
      a[w] = v;
  }
}

using LPoly = std::map<Exp, Laurent>;

void lp_add_term(const Field& K, LPoly& P, const Exp& a, const Laurent& c) {
  auto& slot = P[a];
  l_add_into(K, slot, c);
  if (slot.empty()) P.erase(a);
}

}  // namespace

FiniteRankReport finite_rank_quotient(const Field& K, const std::vector<UniPoly>& polys) {
  const int d = static_cast<int>(polys.size());
  if (d == 0) throw DimensionMismatch("no polynomials");
  std::vector<int> deg(d);
  std::vector<Laurent> lc_inv(d);
  for (int j = 0; j < d; ++j) {
    const UniPoly& P = polys[j];
    if (P.var != j) throw DimensionMismatch("polynomial " + std::to_string(j + 1) + " must be in X" + std::to_string(j + 1));
    int dg = P.degree();
    while (dg >= 0 && P.coef[dg].empty()) --dg;
    if (dg < 1) throw DegreeMismatch("polynomial " + std::to_string(j + 1) + " is constant");
    const Laurent& lc = P.coef[dg];
    if (lc.size() != 1) throw NonUnitLeading("leading coefficient of P" + std::to_string(j + 1) + " is not a unit of k[e0^{+-1}]");
    deg[j] = dg;
    lc_inv[j][-lc.begin()->first] = K.r_inv(lc.begin()->second);
  }
  FiniteRankReport rep;
  rep.rank = 1;
  for (int j = 0; j < d; ++j) rep.rank *= deg[j];
  // Leading monomials X_j^{deg_j} are pairwise coprime, so the P_j form a
  // Groebner basis and {X^beta : beta_j < deg_j} is a basis of the quotient.
  // Verify by reducing X^beta * P_j to zero for every basis monomial.
  auto reduce = [&](LPoly f) {
    for (;;) {
      auto it = std::find_if(f.begin(), f.end(), [&](const auto& t) {
        for (int j = 0; j < d; ++j)
          if (t.first[j] >= deg[j]) return true;
        return false;
      });
      if (it == f.end()) return f;
      Exp a = it->first;
      Laurent c = it->second;
      f.erase(it);
      int j = 0;
      while (a[j] < deg[j]) ++j;
      a[j] -= deg[j];
      // X_j^deg = -lc^{-1} sum_{k<deg} c_k X_j^k
      Laurent f0 = l_mul(K, c, lc_inv[j]);
      for (auto& [w, v] : f0) v = K.r_neg(v);
      for (int k = 0; k < deg[j]; ++k) {
        if (polys[j].coef[k].empty()) continue;
        Exp b = a;
        b[j] += k;
        lp_add_term(K, f, b, l_mul(K, f0, polys[j].coef[k]));
      }
      ++rep.reduced;
    }
  };
  Exp beta(d, 0);
  for (;;) {
    for (int j = 0; j < d; ++j) {
      LPoly f;
      for (int k = 0; k <= deg[j]; ++k) {
        if (polys[j].coef[k].empty()) continue;
        Exp b = beta;
        b[j] += k;
        lp_add_term(K, f, b, polys[j].coef[k]);
      }
      if (!reduce(f).empty()) throw DimensionMismatch("a multiple of P" + std::to_string(j + 1) + " does not reduce to zero");
    }
    int i = 0;
    while (i < d && ++beta[i] >= deg[i]) beta[i++] = 0;
    if (i == d) break;
  }
  return rep;
}

}  // namespace padist
