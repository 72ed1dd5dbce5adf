#include "padist/arith.hpp"

#include "padist/errors.hpp"

namespace padist {

std::int64_t vp(const Int& x, unsigned long p) {
  if (x == 0) return kInf;
  Int t = x;
  Int pp = p;
  return static_cast<std::int64_t>(mpz_remove(t.get_mpz_t(), t.get_mpz_t(), pp.get_mpz_t()));
}

std::int64_t vp(const Rat& x, unsigned long p) {
  if (x == 0) return kInf;
  return vp(Int(x.get_num()), p) - vp(Int(x.get_den()), p);
}

Int ipow(unsigned long p, std::int64_t k) {
  Int r;
  mpz_ui_pow_ui(r.get_mpz_t(), p, static_cast<unsigned long>(k));
  return r;
}

Rat rpow(const Rat& x, std::int64_t k) {
  Rat r(1);
  Rat b = k >= 0 ? x : Rat(1) / x;
  for (std::int64_t n = k >= 0 ? k : -k; n > 0; n >>= 1) {
    if (n & 1) r *= b;
    b *= b;
  }
  return r;
}

Int mod_pk(const Rat& q, unsigned long p, std::int64_t k) {
  Int m = ipow(p, k);
  Int den = q.get_den();
  Int inv;
  if (mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), m.get_mpz_t()) == 0) {
    if (k == 0) return 0;
    throw NonUnit("denominator of " + q.get_str() + " is divisible by p");
  }
  Int r = (Int(q.get_num()) * inv) % m;
  if (r < 0) r += m;
  return r;
}

Rat padic_reduce(const Rat& q, unsigned long p, std::int64_t prec) {
  if (q == 0) return q;
  std::int64_t v = vp(q, p);
  if (v >= prec) return Rat(0);
  std::int64_t s = v < 0 ? -v : 0;
  Rat a = q * Rat(ipow(p, s));
  Rat r(mod_pk(a, p, prec + s), ipow(p, s));
  r.canonicalize();
  return r;
}

Rat binom(const Rat& x, int k) {
  if (k < 0) return 0;
  Rat r(1);
  for (int i = 0; i < k; ++i) r *= (x - i);
  Int f = 1;
  for (int i = 2; i <= k; ++i) f *= i;
  r /= Rat(f);
  return r;
}

Int binom_int(long n, long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  Int r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

Rat parse_rat(const std::string& s) {
  Rat r;
  if (r.set_str(s, 10) != 0 || r.get_den() == 0) throw ParseError("bad rational '" + s + "'");
  r.canonicalize();
  return r;
}

std::string rat_str(const Rat& q) { return q.get_str(); }

}  // namespace padist
