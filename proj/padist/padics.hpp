#pragma once

// Coefficient field K: an Eisenstein extension of degree e over the
// unramified extension of Q_p of degree f.  Elements are stored exactly in
// the basis w^a pi^b (a < f, b < e) with rational coordinates, so valuations
// are read off coordinatewise.  An absolute precision tag marks values that
// are only known modulo pi^prec; exact values carry kInf.

#include <memory>
#include <string>
#include <vector>

#include "padist/arith.hpp"

namespace padist {

struct FieldSpec {
  long p = 3;
  int e = 1;
  int f = 1;
  // w^f + unram[f-1] w^{f-1} + ... + unram[0]; empty picks a default.
  std::vector<long> unram;
  // pi^e + eis[e-1] pi^{e-1} + ... + eis[0], each coefficient in Z[w]
  // given by its f coordinates; empty means pi^e - p.
  std::vector<std::vector<long>> eis;
  int M = 20;
};

using Res = std::vector<long>;  // element of k = F_p[w]/(P mod p)

class Field {
 public:
  explicit Field(FieldSpec spec);

  long p() const { return spec_.p; }
  int e() const { return spec_.e; }
  int f() const { return spec_.f; }
  int M() const { return spec_.M; }
  int dim() const { return spec_.e * spec_.f; }
  const FieldSpec& spec() const { return spec_; }
  std::string describe() const;

  // Residue field k.
  long q() const { return q_; }
  Res r_zero() const { return Res(spec_.f, 0); }
  Res r_one() const;
  Res r_from(long c) const;
  bool r_is_zero(const Res& a) const;
  Res r_add(const Res& a, const Res& b) const;
  Res r_sub(const Res& a, const Res& b) const;
  Res r_neg(const Res& a) const;
  Res r_mul(const Res& a, const Res& b) const;
  Res r_inv(const Res& a) const;
  Res r_pow(const Res& a, Int n) const;
  std::string r_str(const Res& a) const;
  // Enumerates k in a fixed order; index 0 is zero.
  Res r_elem(long idx) const;

  // Coordinate-level arithmetic used by Scalar.
  void mul_coords(const std::vector<Rat>& a, const std::vector<Rat>& b,
                  std::vector<Rat>& out) const;
  bool inv_coords(const std::vector<Rat>& a, std::vector<Rat>& out) const;
  std::int64_t val_coords(const std::vector<Rat>& a) const;

 private:
  std::vector<Rat> mulW(const Rat* a, const Rat* b) const;
  Res r_reduce(std::vector<long> a) const;

  FieldSpec spec_;
  long q_ = 0;
  std::vector<long> pbar_;  // P mod p, monic, low to high, length f+1
};

using FieldPtr = std::shared_ptr<const Field>;
FieldPtr make_field(FieldSpec spec);
FieldPtr qp_field(long p, int M = 20);

class Scalar {
 public:
  Scalar() = default;
  static Scalar zero(const Field& F);
  static Scalar one(const Field& F);
  static Scalar from_rat(const Field& F, const Rat& q, std::int64_t prec = kInf);
  static Scalar pi(const Field& F);
  static Scalar w(const Field& F);
  static Scalar from_coords(const Field& F, std::vector<Rat> c, std::int64_t prec = kInf);

  const Field* field() const { return F_; }
  const std::vector<Rat>& coords() const { return c_; }
  std::int64_t prec() const { return prec_; }
  bool exact() const { return prec_ == kInf; }

  bool is_zero() const { return c_.empty() && prec_ == kInf; }
  // Zero, or with every known digit zero.
  bool vanishes() const { return c_.empty(); }
  // Throws PrecisionExhausted when the valuation is not certified.
  std::int64_t valuation() const;
  // A certified lower bound; equals valuation() when that is certified.
  std::int64_t val_lower() const;
  bool certified() const;

  QExp abs_exponent() const;
  Res residue() const;
  Scalar unit() const;

  Scalar operator-() const;
  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const;
  Scalar operator*(const Scalar& o) const;
  Scalar operator/(const Scalar& o) const;
  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
  Scalar mul_rat(const Rat& q) const;
  Scalar inv() const;
  Scalar pow(std::int64_t n) const;

  // Exact equality of representation (including precision tags).
  bool operator==(const Scalar& o) const;
  bool operator!=(const Scalar& o) const { return !(*this == o); }
  // Agreement modulo pi^absprec.
  bool eq_mod(const Scalar& o, std::int64_t absprec) const;

  // Exact expression form, e.g. "3/2 + w*pi".
  std::string str() const;
  // Digit form "pi^v * (c_0 + c_1*w + ...)" with the unit reduced mod pi^M.
  std::string serialize(int M) const;
  static Scalar deserialize(const Field& F, const std::string& text, int M);

 private:
  void normalize();

  const Field* F_ = nullptr;
  std::vector<Rat> c_;
  std::int64_t prec_ = kInf;
  mutable std::int64_t vcache_ = kUnset;
  static constexpr std::int64_t kUnset = std::numeric_limits<std::int64_t>::min();
};

// |x| exponent helper used across modules: v/e as a rational.
inline QExp val_to_exp(std::int64_t v, int e) {
  if (v == kInf) return QExp::infinity();
  Rat q(v, e);
  q.canonicalize();
  return qexp(q);
}

// Evaluates an expression in p, pi, w and rationals.
Scalar parse_scalar(const Field& F, const std::string& text);

// sigma(p) = ubar_p * eps0^e; returns ubar_p.
Res sigma_p_unit(const Field& F);

}  // namespace padist
