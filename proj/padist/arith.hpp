#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

namespace padist {

using Int = mpz_class;
using Rat = mpq_class;

inline constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max();

std::int64_t vp(const Int& x, unsigned long p);
std::int64_t vp(const Rat& x, unsigned long p);
Int ipow(unsigned long p, std::int64_t k);
Rat rpow(const Rat& x, std::int64_t k);

// Image of a p-integral rational in [0, p^k).
Int mod_pk(const Rat& q, unsigned long p, std::int64_t k);

// Representative of q modulo p^prec Z_p with only p in the denominator.
// Keeps heights bounded in long p-adic computations.
Rat padic_reduce(const Rat& q, unsigned long p, std::int64_t prec);

// Generalized binomial coefficient x(x-1)...(x-k+1)/k!.
Rat binom(const Rat& x, int k);
Int binom_int(long n, long k);

Rat parse_rat(const std::string& s);
std::string rat_str(const Rat& q);

// An exponent q in |x| = p^{-q}; +inf encodes zero.
struct QExp {
  Rat q;
  bool inf = false;

  static QExp infinity() { return QExp{Rat(0), true}; }
  friend bool operator==(const QExp& a, const QExp& b) {
    return a.inf == b.inf && (a.inf || a.q == b.q);
  }
  friend bool operator<(const QExp& a, const QExp& b) {
    if (a.inf) return false;
    if (b.inf) return true;
    return a.q < b.q;
  }
  friend bool operator>(const QExp& a, const QExp& b) { return b < a; }
  friend bool operator<=(const QExp& a, const QExp& b) { return !(b < a); }
  friend bool operator>=(const QExp& a, const QExp& b) { return !(a < b); }
  friend QExp operator+(const QExp& a, const QExp& b) {
    if (a.inf || b.inf) return infinity();
    return QExp{a.q + b.q, false};
  }
  std::string str() const { return inf ? "inf" : rat_str(q); }
};

inline QExp qexp(const Rat& q) { return QExp{q, false}; }

}  // namespace padist
