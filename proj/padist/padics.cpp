#include "padist/padics.hpp"

#include <algorithm>
#include <sstream>

#include "padist/errors.hpp"
#include "padist/parse.hpp"

namespace padist {
namespace {

// Polynomials over F_p, low degree first.
using Poly = std::vector<long>;

long md(long a, long p) {
  a %= p;
  return a < 0 ? a + p : a;
}

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

Poly pmod(Poly a, const Poly& m, long p) {
  trim(a);
  long lead_inv = 1;
  {
    long l = m.back();
    // m is monic in every caller except gcd; invert by brute force
    for (long c = 1; c < p; ++c)
      if (md(l * c, p) == 1) lead_inv = c;
  }
  while (a.size() >= m.size()) {
    long c = md(a.back() * lead_inv, p);
    std::size_t sh = a.size() - m.size();
    for (std::size_t i = 0; i < m.size(); ++i) a[sh + i] = md(a[sh + i] - c * m[i], p);
    trim(a);
  }
  return a;
}

Poly pmul(const Poly& a, const Poly& b, long p) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = md(r[i + j] + a[i] * b[j], p);
  trim(r);
  return r;
}

Poly pgcd(Poly a, Poly b, long p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = pmod(a, b, p);
    a = b;
    b = r;
  }
  return a;
}

// x^(p^k) mod m
Poly frob_power(const Poly& m, long p, int k) {
  Poly x = {0, 1};
  Poly cur = pmod(x, m, p);
  for (int it = 0; it < k; ++it) {
    Poly res = {1};
    Poly base = cur;
    for (long e = p; e > 0; e >>= 1) {
      if (e & 1) res = pmod(pmul(res, base, p), m, p);
      base = pmod(pmul(base, base, p), m, p);
    }
    cur = res;
  }
  return cur;
}

// Rabin's irreducibility test for monic m of degree f.
bool irreducible_mod_p(const Poly& m, long p) {
  int f = static_cast<int>(m.size()) - 1;
  if (f <= 0) return false;
  if (f == 1) return true;
  Poly x = {0, 1};
  Poly full = frob_power(m, p, f);
  Poly diff = full;
  diff.resize(std::max<std::size_t>(diff.size(), 2), 0);
  diff[1] = md(diff[1] - 1, p);
  trim(diff);
  if (!diff.empty()) return false;
  for (int l = 2; l <= f; ++l) {
    if (f % l != 0) continue;
    bool prime = true;
    for (int q = 2; q * q <= l; ++q)
      if (l % q == 0) prime = false;
    if (!prime) continue;
    Poly g = frob_power(m, p, f / l);
    g.resize(std::max<std::size_t>(g.size(), 2), 0);
    g[1] = md(g[1] - 1, p);
    trim(g);
    Poly d = pgcd(m, g, p);
    if (d.size() != 1) return false;
  }
  return true;
}

std::vector<long> default_unram(long p, int f) {
  // First monic irreducible in lexicographic order of (c_0, ..., c_{f-1}).
  std::vector<long> c(f, 0);
  for (;;) {
    Poly m(c.begin(), c.end());
    m.push_back(1);
    if (c[0] != 0 && irreducible_mod_p(m, p)) return c;
    int i = 0;
    while (i < f && ++c[i] == p) c[i++] = 0;
    if (i == f) throw InvalidField("no irreducible polynomial found");
  }
}


}  // namespace

Field::Field(FieldSpec spec) : spec_(std::move(spec)) {
  Int pz = spec_.p;
  if (spec_.p < 2 || mpz_probab_prime_p(pz.get_mpz_t(), 30) == 0)
    throw InvalidField("p = " + std::to_string(spec_.p) + " is not prime");
  if (spec_.e < 1 || spec_.f < 1) throw InvalidField("e and f must be >= 1");
  if (spec_.M < 1) throw InvalidField("precision M must be >= 1");
  const long p = spec_.p;
  const int f = spec_.f;
  const int e = spec_.e;
  if (f == 1) {
    spec_.unram = {0};
  } else if (spec_.unram.empty()) {
    spec_.unram = default_unram(p, f);
  }
  if (static_cast<int>(spec_.unram.size()) != f)
    throw InvalidField("unramified polynomial must have f coefficients");
  pbar_.assign(f + 1, 0);
  for (int i = 0; i < f; ++i) pbar_[i] = md(spec_.unram[i], p);
  pbar_[f] = 1;
  if (f > 1 && !irreducible_mod_p(pbar_, p))
    throw InvalidField("unramified polynomial is reducible mod p");
  if (spec_.eis.empty()) {
    spec_.eis.assign(e, std::vector<long>(f, 0));
    spec_.eis[0][0] = -p;
  }
  if (static_cast<int>(spec_.eis.size()) != e)
    throw InvalidField("Eisenstein polynomial must have e coefficients");
  for (int i = 0; i < e; ++i) {
    auto& c = spec_.eis[i];
    c.resize(f, 0);
    for (long x : c)
      if (md(x, p) != 0) throw InvalidField("Eisenstein coefficients must be divisible by p");
  }
  std::int64_t v0 = kInf;
  for (long x : spec_.eis[0]) v0 = std::min(v0, vp(Int(x), p));
  if (v0 != 1) throw InvalidField("Eisenstein constant term must have valuation exactly 1");
  q_ = 1;
  for (int i = 0; i < f; ++i) q_ *= p;
}

std::string Field::describe() const {
  std::ostringstream os;
  if (spec_.e == 1 && spec_.f == 1) {
    os << "Q_" << spec_.p;
    return os.str();
  }
  os << "K(p=" << spec_.p << ", e=" << spec_.e << ", f=" << spec_.f << ")";
  return os.str();
}

Res Field::r_one() const {
  Res r(spec_.f, 0);
  r[0] = 1;
  return r;
}

Res Field::r_from(long c) const {
  Res r(spec_.f, 0);
  r[0] = md(c, spec_.p);
  return r;
}

bool Field::r_is_zero(const Res& a) const {
  return std::all_of(a.begin(), a.end(), [](long x) { return x == 0; });
}

Res Field::r_reduce(std::vector<long> a) const {
  for (auto& x : a) x = md(x, spec_.p);
  Poly r = pmod(a, pbar_, spec_.p);
  r.resize(spec_.f, 0);
  return r;
}

Res Field::r_add(const Res& a, const Res& b) const {
  Res r(spec_.f);
  for (int i = 0; i < spec_.f; ++i) r[i] = md(a[i] + b[i], spec_.p);
  return r;
}

Res Field::r_sub(const Res& a, const Res& b) const {
  Res r(spec_.f);
  for (int i = 0; i < spec_.f; ++i) r[i] = md(a[i] - b[i], spec_.p);
  return r;
}

Res Field::r_neg(const Res& a) const { return r_sub(r_zero(), a); }

Res Field::r_mul(const Res& a, const Res& b) const {
  if (spec_.f == 1) return {md(a[0] * b[0], spec_.p)};
  std::vector<long> r(2 * spec_.f - 1, 0);
  for (int i = 0; i < spec_.f; ++i)
    for (int j = 0; j < spec_.f; ++j) r[i + j] = md(r[i + j] + a[i] * b[j], spec_.p);
  return r_reduce(r);
}

Res Field::r_pow(const Res& a, Int n) const {
  Res r = r_one();
  Res b = a;
  while (n > 0) {
    if (mpz_odd_p(n.get_mpz_t())) r = r_mul(r, b);
    b = r_mul(b, b);
    n >>= 1;
  }
  return r;
}

Res Field::r_inv(const Res& a) const {
  if (r_is_zero(a)) throw DivisionByZero("inverse of 0 in the residue field");
  return r_pow(a, Int(q_ - 2));
}

Res Field::r_elem(long idx) const {
  Res r(spec_.f, 0);
  for (int i = 0; i < spec_.f; ++i) {
    r[i] = idx % spec_.p;
    idx /= spec_.p;
  }
  return r;
}

std::string Field::r_str(const Res& a) const {
  if (spec_.f == 1) return std::to_string(a[0]);
  std::string s;
  for (int i = 0; i < spec_.f; ++i) {
    if (a[i] == 0) continue;
    if (!s.empty()) s += "+";
    if (i == 0) {
      s += std::to_string(a[i]);
    } else {
      if (a[i] != 1) s += std::to_string(a[i]) + "*";
      s += i == 1 ? "w" : "w^" + std::to_string(i);
    }
  }
  return s.empty() ? "0" : s;
}

std::vector<Rat> Field::mulW(const Rat* a, const Rat* b) const {
  const int f = spec_.f;
  std::vector<Rat> r(2 * f - 1);
  for (int i = 0; i < f; ++i) {
    if (a[i] == 0) continue;
    for (int j = 0; j < f; ++j)
      if (b[j] != 0) r[i + j] += a[i] * b[j];
  }
  for (int k = 2 * f - 2; k >= f; --k) {
    if (r[k] == 0) continue;
    for (int i = 0; i < f; ++i)
      if (spec_.unram[i] != 0) r[k - f + i] -= r[k] * spec_.unram[i];
  }
  r.resize(f);
  return r;
}

void Field::mul_coords(const std::vector<Rat>& a, const std::vector<Rat>& b,
                       std::vector<Rat>& out) const {
  const int e = spec_.e, f = spec_.f;
  if (e == 1 && f == 1) {
    out.assign(1, a[0] * b[0]);
    return;
  }
  std::vector<Rat> t(static_cast<std::size_t>(2 * e - 1) * f);
  for (int i = 0; i < e; ++i) {
    for (int j = 0; j < e; ++j) {
      auto pr = mulW(&a[i * f], &b[j * f]);
      for (int k = 0; k < f; ++k) t[(i + j) * f + k] += pr[k];
    }
  }
  for (int k = 2 * e - 2; k >= e; --k) {
    bool nz = false;
    for (int a2 = 0; a2 < f; ++a2) nz = nz || t[k * f + a2] != 0;
    if (!nz) continue;
    std::vector<Rat> top(t.begin() + k * f, t.begin() + (k + 1) * f);
    for (int i = 0; i < e; ++i) {
      std::vector<Rat> ci(f);
      for (int a2 = 0; a2 < f; ++a2) ci[a2] = spec_.eis[i][a2];
      auto pr = mulW(top.data(), ci.data());
      for (int a2 = 0; a2 < f; ++a2) t[(k - e + i) * f + a2] -= pr[a2];
    }
    for (int a2 = 0; a2 < f; ++a2) t[k * f + a2] = 0;
  }
  t.resize(static_cast<std::size_t>(e) * f);
  out = std::move(t);
}

bool Field::inv_coords(const std::vector<Rat>& a, std::vector<Rat>& out) const {
  const int n = dim();
  if (n == 1) {
    if (a[0] == 0) return false;
    out.assign(1, Rat(1) / a[0]);
    return true;
  }
  // Column j of the matrix is a * basis_j; solve against the unit vector.
  std::vector<std::vector<Rat>> m(n, std::vector<Rat>(n + 1));
  for (int j = 0; j < n; ++j) {
    std::vector<Rat> bj(n), col;
    bj[j] = 1;
    mul_coords(a, bj, col);
    for (int i = 0; i < n; ++i) m[i][j] = col[i];
  }
  m[0][n] = 1;
  for (int c = 0; c < n; ++c) {
    int piv = -1;
    for (int r = c; r < n; ++r)
      if (m[r][c] != 0) {
        piv = r;
        break;
      }
    if (piv < 0) return false;
    std::swap(m[piv], m[c]);
    Rat inv = Rat(1) / m[c][c];
    for (int k = c; k <= n; ++k) m[c][k] *= inv;
    for (int r = 0; r < n; ++r) {
      if (r == c || m[r][c] == 0) continue;
      Rat fct = m[r][c];
      for (int k = c; k <= n; ++k) m[r][k] -= fct * m[c][k];
    }
  }
  out.resize(n);
  for (int i = 0; i < n; ++i) out[i] = m[i][n];
  return true;
}

std::int64_t Field::val_coords(const std::vector<Rat>& a) const {
  const int e = spec_.e, f = spec_.f;
  std::int64_t best = kInf;
  for (int b = 0; b < e; ++b) {
    std::int64_t v = kInf;
    for (int k = 0; k < f; ++k) v = std::min(v, vp(a[b * f + k], spec_.p));
    if (v != kInf) best = std::min(best, e * v + b);
  }
  return best;
}

FieldPtr make_field(FieldSpec spec) { return std::make_shared<const Field>(std::move(spec)); }

FieldPtr qp_field(long p, int M) {
  FieldSpec s;
  s.p = p;
  s.M = M;
  return make_field(s);
}

// ---------------------------------------------------------------------------

namespace {

std::int64_t sat_add(std::int64_t a, std::int64_t b) {
  if (a == kInf || b == kInf) return kInf;
  return a + b;
}

}  // namespace

Scalar Scalar::zero(const Field& F) {
  Scalar s;
  s.F_ = &F;
  return s;
}

Scalar Scalar::one(const Field& F) { return from_rat(F, Rat(1)); }

Scalar Scalar::from_rat(const Field& F, const Rat& q, std::int64_t prec) {
  Scalar s;
  s.F_ = &F;
  s.prec_ = prec;
  if (q != 0) {
    s.c_.assign(F.dim(), Rat(0));
    s.c_[0] = q;
  }
  return s;
}

Scalar Scalar::from_coords(const Field& F, std::vector<Rat> c, std::int64_t prec) {
  if (static_cast<int>(c.size()) != F.dim()) throw InvalidField("coordinate vector has wrong length");
  Scalar s;
  s.F_ = &F;
  s.c_ = std::move(c);
  s.prec_ = prec;
  s.normalize();
  return s;
}

Scalar Scalar::pi(const Field& F) {
  std::vector<Rat> c(F.dim());
  if (F.e() == 1) {
    // pi is the root of pi + eis_0(w); eis_0 = -p by default
    for (int k = 0; k < F.f(); ++k) c[k] = -F.spec().eis[0][k];
  } else {
    c[F.f()] = 1;
  }
  return from_coords(F, std::move(c));
}

Scalar Scalar::w(const Field& F) {
  if (F.f() < 2) throw ParseError("w is only defined when f > 1");
  std::vector<Rat> c(F.dim());
  c[1] = 1;
  return from_coords(F, std::move(c));
}

void Scalar::normalize() {
  vcache_ = kUnset;
  for (const auto& x : c_)
    if (x != 0) return;
  c_.clear();
}

std::int64_t Scalar::valuation() const {
  if (c_.empty()) {
    if (prec_ == kInf) return kInf;
    throw PrecisionExhausted("value vanishes to its precision pi^" + std::to_string(prec_));
  }
  if (vcache_ == kUnset) vcache_ = F_->val_coords(c_);
  if (vcache_ >= prec_)
    throw PrecisionExhausted("valuation not certified within precision pi^" + std::to_string(prec_));
  return vcache_;
}

std::int64_t Scalar::val_lower() const {
  if (c_.empty()) return prec_;
  if (vcache_ == kUnset) vcache_ = F_->val_coords(c_);
  return std::min(vcache_, prec_);
}

bool Scalar::certified() const {
  if (c_.empty()) return prec_ == kInf;
  if (vcache_ == kUnset) vcache_ = F_->val_coords(c_);
  return vcache_ < prec_;
}

QExp Scalar::abs_exponent() const { return val_to_exp(valuation(), F_->e()); }

Scalar Scalar::unit() const {
  std::int64_t v = valuation();
  if (v == kInf) throw NonUnit("zero has no unit part");
  Scalar pi_pow = pi(*F_).pow(-v);
  Scalar u = *this * pi_pow;
  return u;
}

Res Scalar::residue() const {
  std::int64_t v = valuation();
  if (v != 0) throw NonUnit("residue of an element of valuation " + (v == kInf ? std::string("inf") : std::to_string(v)));
  Res r(F_->f(), 0);
  for (int k = 0; k < F_->f(); ++k) r[k] = mod_pk(c_[k], F_->p(), 1).get_si();
  return r;
}

Scalar Scalar::operator-() const {
  Scalar s = *this;
  for (auto& x : s.c_) x = -x;
  return s;
}

Scalar Scalar::operator+(const Scalar& o) const {
  if (F_ == nullptr) return o;
  if (o.F_ == nullptr) return *this;
  Scalar s;
  s.F_ = F_;
  s.prec_ = std::min(prec_, o.prec_);
  if (c_.empty()) {
    s.c_ = o.c_;
  } else if (o.c_.empty()) {
    s.c_ = c_;
  } else {
    s.c_ = c_;
    for (std::size_t i = 0; i < c_.size(); ++i) s.c_[i] += o.c_[i];
  }
  s.normalize();
  return s;
}

Scalar Scalar::operator-(const Scalar& o) const { return *this + (-o); }

Scalar Scalar::operator*(const Scalar& o) const {
  if (F_ == nullptr || o.F_ == nullptr) throw InvalidField("arithmetic on an unbound scalar");
  Scalar s;
  s.F_ = F_;
  if (is_zero() || o.is_zero()) return s;
  s.prec_ = std::min(sat_add(val_lower(), o.prec_), sat_add(o.val_lower(), prec_));
  if (!c_.empty() && !o.c_.empty()) F_->mul_coords(c_, o.c_, s.c_);
  s.normalize();
  return s;
}

Scalar Scalar::mul_rat(const Rat& q) const {
  Scalar s;
  s.F_ = F_;
  if (q == 0 || is_zero()) return s;
  s.prec_ = prec_ == kInf ? kInf : prec_ + F_->e() * vp(q, F_->p());
  s.c_ = c_;
  for (auto& x : s.c_) x *= q;
  s.normalize();
  return s;
}

Scalar Scalar::inv() const {
  std::int64_t v = valuation();
  if (v == kInf) throw DivisionByZero("inverse of zero");
  Scalar s;
  s.F_ = F_;
  if (!F_->inv_coords(c_, s.c_)) throw DivisionByZero("singular element");
  s.prec_ = prec_ == kInf ? kInf : prec_ - 2 * v;
  s.normalize();
  return s;
}

Scalar Scalar::operator/(const Scalar& o) const { return *this * o.inv(); }

Scalar Scalar::pow(std::int64_t n) const {
  if (n < 0) return inv().pow(-n);
  Scalar r = one(*F_);
  Scalar b = *this;
  while (n > 0) {
    if (n & 1) r = r * b;
    n >>= 1;
    if (n > 0) b = b * b;
  }
  return r;
}

bool Scalar::operator==(const Scalar& o) const {
  return c_ == o.c_ && prec_ == o.prec_;
}

bool Scalar::eq_mod(const Scalar& o, std::int64_t absprec) const {
  std::vector<Rat> d(F_->dim());
  for (int i = 0; i < F_->dim(); ++i) {
    Rat a = c_.empty() ? Rat(0) : c_[i];
    Rat b = o.c_.empty() ? Rat(0) : o.c_[i];
    d[i] = a - b;
  }
  return F_->val_coords(d) >= absprec;
}

namespace {

std::string basis_name(const Field& F, int a, int b) {
  std::string s;
  if (a > 0) s += a == 1 ? "w" : "w^" + std::to_string(a);
  if (b > 0) {
    if (!s.empty()) s += "*";
    s += b == 1 ? "pi" : "pi^" + std::to_string(b);
  }
  (void)F;
  return s;
}

template <class Num>
void append_term(std::string& out, const Num& c, const std::string& basis) {
  bool neg = c < 0;
  Num a = neg ? Num(-c) : c;
  if (out.empty()) {
    if (neg) out += "-";
  } else {
    out += neg ? " - " : " + ";
  }
  if (basis.empty()) {
    out += a.get_str();
  } else {
    if (a != 1) out += a.get_str() + "*";
    out += basis;
  }
}

}  // namespace

std::string Scalar::str() const {
  if (c_.empty()) return prec_ == kInf ? "0" : "O(pi^" + std::to_string(prec_) + ")";
  std::string out;
  const int f = F_->f();
  for (int b = 0; b < F_->e(); ++b)
    for (int a = 0; a < f; ++a)
      if (c_[b * f + a] != 0) append_term(out, c_[b * f + a], basis_name(*F_, a, b));
  if (prec_ != kInf) out += " + O(pi^" + std::to_string(prec_) + ")";
  return out;
}

std::string Scalar::serialize(int M) const {
  std::int64_t v = valuation();
  if (v == kInf) return "0";
  Scalar u = unit();
  const int e = F_->e(), f = F_->f();
  std::string body;
  for (int b = 0; b < e; ++b) {
    std::int64_t k = (M - b + e - 1) / e;
    if (k <= 0) continue;
    for (int a = 0; a < f; ++a) {
      Int n = mod_pk(u.c_[b * f + a], F_->p(), k);
      if (n != 0) append_term(body, n, basis_name(*F_, a, b));
    }
  }
  return "pi^" + std::to_string(v) + " * (" + body + ")";
}


Scalar Scalar::deserialize(const Field& F, const std::string& text, int M) {
  Scalar s = parse_scalar(F, text);
  if (s.is_zero()) return s;
  s.prec_ = s.valuation() + M;
  return s;
}

namespace {

Scalar eval(const Ast& a, const Field& F) {
  switch (a.kind) {
    case Ast::Num:
      return Scalar::from_rat(F, a.num);
    case Ast::Sym:
      if (a.name == "p") return Scalar::from_rat(F, Rat(F.p()));
      if (a.name == "pi") return Scalar::pi(F);
      if (a.name == "w") {
        if (F.f() < 2)
          throw ParseError("column " + std::to_string(a.pos) + ": w needs an unramified part (f > 1)");
        return Scalar::w(F);
      }
      throw ParseError("column " + std::to_string(a.pos) + ": unknown scalar name '" + a.name + "'");
    case Ast::Add:
      return eval(a.kids[0], F) + eval(a.kids[1], F);
    case Ast::Sub:
      return eval(a.kids[0], F) - eval(a.kids[1], F);
    case Ast::Mul:
      return eval(a.kids[0], F) * eval(a.kids[1], F);
    case Ast::Div: {
      Scalar d = eval(a.kids[1], F);
      if (d.is_zero()) throw DivisionByZero("column " + std::to_string(a.pos) + ": division by zero");
      return eval(a.kids[0], F) / d;
    }
    case Ast::Neg:
      return -eval(a.kids[0], F);
    case Ast::Pow: {
      Scalar b = eval(a.kids[0], F);
      if (a.exponent < 0 && b.is_zero())
        throw DivisionByZero("column " + std::to_string(a.pos) + ": negative power of zero");
      return b.pow(a.exponent);
    }
    case Ast::Call:
      throw ParseError("column " + std::to_string(a.pos) + ": '" + a.name + "' is not a scalar function");
  }
  throw ParseError("bad expression");
}

}  // namespace

Scalar parse_scalar(const Field& F, const std::string& text) { return eval(parse_expr(text), F); }

Res sigma_p_unit(const Field& F) { return Scalar::from_rat(F, Rat(F.p())).unit().residue(); }

}  // namespace padist
