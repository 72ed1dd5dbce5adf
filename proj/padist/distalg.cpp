#include "padist/distalg.hpp"

#include <algorithm>
#include <cctype>

#include "padist/errors.hpp"
#include "padist/parse.hpp"

namespace padist {

Radius::Radius(Rat t_) : t(std::move(t_)) {
  t.canonicalize();
  if (t <= 0 || t >= 1) throw InvalidRadius("radius exponent " + t.get_str() + " is not in (0, 1)");
}

Radius Radius::parse(const std::string& text, long* p) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c)) && c != '(' && c != ')') s += c;
  long prime = 0;
  std::string e = s;
  auto caret = s.find('^');
  if (caret != std::string::npos) {
    std::string base = s.substr(0, caret);
    e = s.substr(caret + 1);
    if (base != "p") {
      if (base.empty() || !std::all_of(base.begin(), base.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
        throw InvalidRadius("bad radius '" + text + "'");
      prime = std::stol(base);
    }
    if (e.empty() || e[0] != '-') throw InvalidRadius("radius must be p^-a/b with 0 < a/b < 1: '" + text + "'");
    e = e.substr(1);
  }
  Rat t;
  try {
    t = parse_rat(e);
  } catch (const ParseError&) {
    throw InvalidRadius("bad radius '" + text + "'");
  }
  if (p) *p = prime;
  return Radius(t);
}

std::string Radius::str(long p) const { return std::to_string(p) + "^-" + t.get_str(); }

// ---------------------------------------------------------------------------

LogIndex dominant_log_index(long p, int kappa, const Radius& r) {
  const Rat s = Rat(kappa) * r.t;
  LogIndex out;
  Rat best;
  std::vector<long> argmin;
  long pj = 1;
  int j = 0;
  for (long k = 1;; ++k) {
    if (k == pj) {
      // Every k >= p^j has value >= min(p^j s - j, ...) once p^j s (p-1) >= 1.
      Rat lj = Rat(pj) * s - j;
      if (k > 1 && lj > best && Rat(pj) * s * (p - 1) >= 1) break;
      pj *= p;
      ++j;
      if (pj > (1L << 40)) throw PrecisionExhausted("log index search exceeded its cutoff");
    }
    Rat g = Rat(k) * s - vp(Int(k), p);
    ++out.checked;
    if (argmin.empty() || g < best) {
      best = g;
      argmin = {k};
    } else if (g == best) {
      argmin.push_back(k);
    }
  }
  out.value = best;
  if (argmin.size() > 1) {
    out.critical = true;
    return out;
  }
  long k = argmin[0];
  int h = 0;
  while (k % p == 0) {
    k /= p;
    ++h;
  }
  if (k != 1) throw CounterexampleFound("log maximizer is not a power of p");
  out.h = h;
  return out;
}

// ---------------------------------------------------------------------------

int Dist::max_degree() const {
  int m = -1;
  for (const auto& [i, c] : c_) m = std::max(m, A_->basis().degree(i));
  return m;
}

int Dist::min_degree() const {
  return c_.empty() ? -1 : A_->basis().degree(c_.begin()->first);
}

std::int64_t Dist::min_val() const {
  std::int64_t v = kInf;
  for (const auto& [i, c] : c_) v = std::min(v, c.val_lower());
  return v;
}

Scalar Dist::coeff(const Exp& a) const {
  int idx = A_->basis().find(a);
  auto it = c_.find(idx);
  return it == c_.end() ? Scalar::zero(A_->field()) : it->second;
}

Dist Dist::operator+(const Dist& o) const {
  Dist r = *this;
  for (const auto& [i, c] : o.c_) {
    auto it = r.c_.find(i);
    if (it == r.c_.end()) {
      r.c_.emplace(i, c);
    } else {
      it->second += c;
      if (it->second.is_zero()) r.c_.erase(it);
    }
  }
  r.tail_.insert(r.tail_.end(), o.tail_.begin(), o.tail_.end());
  r.truncated_ = truncated_ || o.truncated_;
  A_->prune(r.tail_);
  return r;
}

Dist Dist::operator-() const {
  Dist r = *this;
  for (auto& [i, c] : r.c_) c = -c;
  return r;
}

Dist Dist::operator-(const Dist& o) const { return *this + (-o); }

Dist Dist::operator*(const Dist& o) const { return A_->mul(*this, o); }

Dist Dist::scale(const Scalar& s) const {
  Dist r = *this;
  if (s.is_zero()) {
    r.c_.clear();
    r.tail_.clear();
    return r;
  }
  for (auto it = r.c_.begin(); it != r.c_.end();) {
    it->second = it->second * s;
    if (it->second.is_zero())
      it = r.c_.erase(it);
    else
      ++it;
  }
  std::int64_t v = s.valuation();
  for (auto& t : r.tail_) t.w += v;
  return r;
}

Dist Dist::without_tail() const {
  Dist r = *this;
  r.tail_.clear();
  r.truncated_ = false;
  return r;
}

std::string Dist::str() const { return A_->str(*this); }

// ---------------------------------------------------------------------------

Algebra::Algebra(FieldPtr K, StructurePtr sc, std::vector<std::string> names)
    : K_(std::move(K)), sc_(std::move(sc)), names_(std::move(names)) {
  if (K_->p() != sc_->group().p()) throw InvalidField("coefficient field and group have different primes");
  if (names_.empty()) {
    for (const auto& l : sc_->group().lattice().labels) {
      std::string n = l;
      if (!n.empty() && n[0] == 'h') n[0] = 'b';
      names_.push_back(n);
    }
  }
  if (static_cast<int>(names_.size()) != d()) throw DimensionMismatch("wrong number of generator names");
}

Dist Algebra::make() const {
  Dist r;
  r.A_ = this;
  return r;
}

Dist Algebra::zero() const { return make(); }
Dist Algebra::one() const { return scalar(Scalar::one(*K_)); }

Dist Algebra::scalar(const Scalar& s) const {
  Dist r = make();
  if (!s.is_zero()) r.c_.emplace(0, s);
  return r;
}

Dist Algebra::gen(int i) const {
  Exp a(d(), 0);
  a[i] = 1;
  return monomial(a, Scalar::one(*K_));
}

Dist Algebra::monomial(const Exp& a, const Scalar& s) const {
  int idx = basis().find(a);
  if (idx < 0) throw DegreeOverflow("monomial degree exceeds N = " + std::to_string(N()));
  Dist r = make();
  if (!s.is_zero()) r.c_.emplace(idx, s);
  return r;
}

Dist Algebra::from_coeffs(const std::map<int, Scalar>& c) const {
  Dist r = make();
  for (const auto& [i, s] : c)
    if (!s.is_zero()) r.c_.emplace(i, s);
  return r;
}

void Algebra::prune(std::vector<TailAtom>& tail) const {
  std::vector<TailAtom> out;
  for (const auto& t : tail) {
    bool dominated = false;
    for (const auto& o : out)
      if (o.logs == t.logs && o.w <= t.w && o.deg <= t.deg) dominated = true;
    if (dominated) continue;
    out.erase(std::remove_if(out.begin(), out.end(),
                             [&](const TailAtom& o) { return o.logs == t.logs && t.w <= o.w && t.deg <= o.deg; }),
              out.end());
    out.push_back(t);
  }
  tail = std::move(out);
}

Dist Algebra::mul(const Dist& a, const Dist& b, bool strict) const {
  Dist r = make();
  const bool both = !a.c_.empty() && !b.c_.empty();
  const int da = a.max_degree(), db = b.max_degree();
  if (both && da + db > N()) {
    if (strict)
      throw DegreeOverflow("product needs degree " + std::to_string(da + db) + " > N = " + std::to_string(N()));
    r.truncated_ = true;
  }
  r.truncated_ = r.truncated_ || a.truncated_ || b.truncated_;
  std::map<int, Scalar> acc;
  for (const auto& [ia, x] : a.c_)
    for (const auto& [ib, y] : b.c_) {
      Scalar xy = x * y;
      for (const auto& [g, c] : sc_->at(ia, ib)) {
        Scalar t = xy.mul_rat(c);
        auto it = acc.find(g);
        if (it == acc.end())
          acc.emplace(g, t);
        else
          it->second += t;
      }
    }
  for (auto& [g, s] : acc)
    if (!s.is_zero()) r.c_.emplace(g, std::move(s));
  // Terms of degree > N have Z_p structure constants, so their norm is at
  // least |d_alpha e_beta| r^{kappa(N+1)}.
  if (both && (!group().abelian() || da + db > N())) r.tail_.push_back({a.min_val() + b.min_val(), N() + 1, {}});
  auto shifted = [](TailAtom t, std::int64_t w, int deg) {
    t.w += w;
    t.deg += deg;
    return t;
  };
  if (!b.c_.empty())
    for (const auto& t : a.tail_) r.tail_.push_back(shifted(t, b.min_val(), b.min_degree()));
  if (!a.c_.empty())
    for (const auto& t : b.tail_) r.tail_.push_back(shifted(t, a.min_val(), a.min_degree()));
  for (const auto& t : a.tail_)
    for (const auto& u : b.tail_) {
      TailAtom m = shifted(t, u.w, u.deg);
      m.logs.insert(m.logs.end(), u.logs.begin(), u.logs.end());
      r.tail_.push_back(m);
    }
  prune(r.tail_);
  return r;
}

Dist Algebra::pow(const Dist& a, int k) const {
  if (k < 0) throw ParseError("negative power of a distribution");
  Dist r = one();
  for (int i = 0; i < k; ++i) r = mul(r, a);
  return r;
}

QExp Algebra::term_exponent(int idx, const Scalar& c, const Radius& r) const {
  return c.abs_exponent() + qexp(Rat(kappa() * basis().degree(idx)) * r.t);
}

namespace {

Rat log_part_min(long p, int e, int kappa, const LogPart& L, const Rat& t) {
  Rat s = Rat(L.wstep) / e + Rat(kappa * L.degstep) * t;
  if (s <= 0) throw PrecisionExhausted("log tail does not converge at this radius");
  Rat best;
  bool have = false;
  Int pj = 1;
  for (int j = 0;; ++j) {
    // smallest k > N divisible by p^j
    Int k = ((Int(L.N) + 1 + pj - 1) / pj) * pj;
    Rat v = Rat(k) * s - vp(k, p);
    if (!have || v < best) {
      best = v;
      have = true;
    }
    Rat lower = Rat(pj) * s - j;
    if (lower > best && Rat(pj) * s * (p - 1) >= 1) break;
    pj *= p;
  }
  return best;
}

}  // namespace

QExp Algebra::tail_bound(const TailAtom& t, const Radius& r) const {
  Rat q(t.w, K_->e());
  q.canonicalize();
  q += Rat(kappa() * t.deg) * r.t;
  for (const auto& L : t.logs) q += log_part_min(p(), K_->e(), kappa(), L, r.t);
  return qexp(q);
}

NormValue Algebra::norm(const Dist& a, const Radius& r) const {
  NormValue v{QExp::infinity(), QExp::infinity(), true};
  for (const auto& [i, c] : a.c_) v.q = std::min(v.q, term_exponent(i, c, r));
  for (const auto& t : a.tail_) v.tail = std::min(v.tail, tail_bound(t, r));
  v.certified = a.tail_.empty() || v.tail > v.q;
  return v;
}

QExp Algebra::norm_exponent(const Dist& a, const Radius& r) const {
  NormValue v = norm(a, r);
  if (!v.certified)
    throw PrecisionExhausted("norm not certified: finite part " + v.q.str() + ", tail bound " + v.tail.str() +
                             " (raise N)");
  return v.q;
}

RingPtr Algebra::graded_ring(const Radius& r) const {
  std::vector<std::string> xs;
  for (const auto& n : names_) {
    std::string x = "X";
    for (std::size_t i = 1; i < n.size(); ++i)
      if (n[i] != '_') x += n[i];
    xs.push_back(x);
  }
  return GradedRing::make(K_, d(), Rat(kappa()) * r.t, xs);
}

Symbol Algebra::principal_symbol(const Dist& a, const Radius& r) const {
  if (a.c_.empty()) throw ZeroDistribution("principal symbol of zero");
  QExp q = norm_exponent(a, r);
  RingPtr R = graded_ring(r);
  Symbol s(R);
  for (const auto& [i, c] : a.c_) {
    if (!(term_exponent(i, c, r) == q)) continue;
    s = s + Symbol::term(R, c.unit().residue(), c.valuation(), basis().exp(i));
  }
  return s;
}

Dist Algebra::delta(const Vec& x) const {
  if (static_cast<int>(x.size()) != d()) throw DimensionMismatch("group element has wrong dimension");
  bool finite = true;
  Rat total = 0;
  for (const auto& xi : x) {
    if (xi != 0 && vp(xi, p()) < 0) throw NonUnit("coordinates must lie in Z_p");
    if (xi.get_den() != 1 || xi < 0) finite = false;
    total += xi;
  }
  if (total > N()) finite = false;
  Dist r = make();
  for (int i = 0; i < basis().size(); ++i) {
    Rat c = 1;
    for (int k = 0; k < d() && c != 0; ++k) c *= binom(x[k], basis().exp(i)[k]);
    if (c != 0) r.c_.emplace(i, Scalar::from_rat(*K_, c));
  }
  if (!finite) {
    r.tail_.push_back({0, N() + 1, {}});
    r.truncated_ = true;
  }
  return r;
}

Dist Algebra::log_series(int i) const {
  Dist r = make();
  Exp a(d(), 0);
  for (int k = 1; k <= N(); ++k) {
    a[i] = k;
    r.c_.emplace(basis().find(a), Scalar::from_rat(*K_, Rat(k % 2 ? 1 : -1, k)));
  }
  r.tail_.push_back({0, 0, {LogPart{N(), 0, 1}}});
  r.truncated_ = true;
  return r;
}

Dist Algebra::log1p(const Dist& x) const {
  if (x.c_.count(0)) throw ParseError("log(1 + x) needs x without constant term");
  if (x.c_.empty() && x.tail_.empty()) return zero();
  if (x.tail_.empty() && x.c_.size() == 1) {
    const auto& [idx, c] = *x.c_.begin();
    const Exp& a = basis().exp(idx);
    if (basis().degree(idx) == 1 && c == Scalar::one(*K_))
      return log_series(static_cast<int>(std::find(a.begin(), a.end(), 1) - a.begin()));
  }
  Dist r = make();
  Dist xk = one();
  for (int k = 1; k <= N(); ++k) {
    xk = mul(xk, x);
    r = r + xk.scale(Scalar::from_rat(*K_, Rat(k % 2 ? 1 : -1, k)));
  }
  r.tail_.push_back({0, 0, {LogPart{N(), x.min_val(), x.min_degree()}}});
  r.truncated_ = true;
  prune(r.tail_);
  return r;
}

int Algebra::gen_index(const std::string& name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  return it == names_.end() ? -1 : static_cast<int>(it - names_.begin());
}

namespace {

bool pure_scalar(const Dist& a) {
  return a.tail().empty() && (a.coeffs().empty() || (a.coeffs().size() == 1 && a.coeffs().begin()->first == 0));
}

Dist eval(const Algebra& A, const Ast& t) {
  const Field& K = A.field();
  auto col = [&]() { return "column " + std::to_string(t.pos) + ": "; };
  switch (t.kind) {
    case Ast::Num:
      return A.scalar(Scalar::from_rat(K, t.num));
    case Ast::Sym: {
      int g = A.gen_index(t.name);
      if (g >= 0) return A.gen(g);
      if (t.name == "p" || t.name == "pi" || t.name == "w") {
        return A.scalar(parse_scalar(K, t.name));
      }
      throw ParseError(col() + "unknown name '" + t.name + "'");
    }
    case Ast::Add:
      return eval(A, t.kids[0]) + eval(A, t.kids[1]);
    case Ast::Sub:
      return eval(A, t.kids[0]) - eval(A, t.kids[1]);
    case Ast::Neg:
      return -eval(A, t.kids[0]);
    case Ast::Mul:
      return A.mul(eval(A, t.kids[0]), eval(A, t.kids[1]));
    case Ast::Div: {
      Dist den = eval(A, t.kids[1]);
      if (!pure_scalar(den)) throw ParseError(col() + "can only divide by a scalar");
      if (den.coeffs().empty()) throw DivisionByZero(col() + "division by zero");
      return eval(A, t.kids[0]).scale(den.coeffs().begin()->second.inv());
    }
    case Ast::Pow: {
      Dist base = eval(A, t.kids[0]);
      if (t.exponent < 0) {
        if (!pure_scalar(base)) throw ParseError(col() + "negative power of a non-scalar");
        if (base.coeffs().empty()) throw DivisionByZero(col() + "negative power of zero");
        return A.scalar(base.coeffs().begin()->second.pow(t.exponent));
      }
      if (t.exponent > 4 * A.N() + 64) throw ParseError(col() + "exponent too large");
      return A.pow(base, static_cast<int>(t.exponent));
    }
    case Ast::Call: {
      if (t.name != "log") throw ParseError(col() + "unknown function '" + t.name + "'");
      Dist x = eval(A, t.kids[0]) - A.one();
      if (x.coeffs().count(0)) throw ParseError(col() + "log needs an argument 1 + x with x of positive degree");
      return A.log1p(x);
    }
  }
  throw ParseError("bad expression");
}

}  // namespace

Dist Algebra::parse(const std::string& text) const { return eval(*this, parse_expr(text)); }

std::string Algebra::str(const Dist& a) const {
  if (a.c_.empty()) return "0";
  std::string out;
  for (const auto& [i, c] : a.c_) {
    std::string mono;
    const Exp& e = basis().exp(i);
    for (int k = 0; k < d(); ++k) {
      if (e[k] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += names_[k];
      if (e[k] > 1) mono += "^" + std::to_string(e[k]);
    }
    std::string cs = c.str();
    bool compound = cs.find(' ') != std::string::npos;
    bool neg = !compound && cs[0] == '-';
    if (neg) cs = cs.substr(1);
    if (compound) cs = "(" + cs + ")";
    std::string term;
    if (mono.empty())
      term = cs;
    else if (cs == "1")
      term = mono;
    else
      term = cs + "*" + mono;
    if (out.empty())
      out = neg ? "-" + term : term;
    else
      out += (neg ? " - " : " + ") + term;
  }
  return out;
}

}  // namespace padist
