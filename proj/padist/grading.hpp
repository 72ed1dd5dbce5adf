#pragma once

// The graded ring k[e0^{+-1}][X_1..X_m] of a norm filtration: e0 has degree
// 1/e and every X has the same degree xdeg = kappa * t.  Symbols are
// homogeneous elements; ideal questions are answered component by
// component with linear algebra over the residue field k.

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "padist/arith.hpp"
#include "padist/mahler.hpp"
#include "padist/padics.hpp"

namespace padist {

struct GradedRing {
  FieldPtr K;
  int nvars = 1;
  Rat xdeg;  // degree of each X
  std::vector<std::string> names;

  static std::shared_ptr<const GradedRing> make(FieldPtr K, int nvars, Rat xdeg,
                                                std::vector<std::string> names = {});
  QExp degree(std::int64_t w, const Exp& a) const;
};

using RingPtr = std::shared_ptr<const GradedRing>;

class Symbol {
 public:
  using Key = std::pair<std::int64_t, Exp>;  // (e0 exponent, X exponents)

  Symbol() = default;
  explicit Symbol(RingPtr R) : R_(std::move(R)) {}
  static Symbol term(RingPtr R, const Res& c, std::int64_t w, const Exp& a);
  static Symbol var(RingPtr R, int i);
  static Symbol e0(RingPtr R, std::int64_t w);

  const GradedRing& ring() const { return *R_; }
  RingPtr ring_ptr() const { return R_; }
  const std::map<Key, Res>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  // Degree of a nonzero symbol.
  QExp degree() const;
  bool homogeneous() const;

  Symbol operator+(const Symbol& o) const;  // DegreeMismatch
  Symbol operator-(const Symbol& o) const;
  Symbol operator*(const Symbol& o) const;
  Symbol scale(const Res& c) const;
  bool operator==(const Symbol& o) const { return terms_ == o.terms_; }

  // "e0^w * X1^a * X2^b + ..."
  std::string str() const;

 private:
  void add_term(const Key& k, const Res& c);

  RingPtr R_;
  std::map<Key, Res> terms_;
};

// Polynomials over k in m variables, one graded component at a time.
using KPoly = std::map<Exp, Res>;

// Writes a symbol as e0^w * unit * P(X) with P X-homogeneous over k.
// Throws DegreeMismatch if the symbol has another shape.
KPoly strip_units(const Symbol& s, std::int64_t* w = nullptr);

// Dimension over k of the degree-delta component of the ideal generated by
// gens in k[X_1..X_m] (gens X-homogeneous).
long ideal_component_dim(const Field& K, int m, const std::vector<KPoly>& gens, int delta);

struct RegularSequenceReport {
  bool ok = true;
  int degree_cap = 0;
  long components = 0;  // (subset, element, degree) triples checked
  long orderings = 0;   // generator orderings covered
  std::string witness;
};

// The family of symbols eps^{-h}(X_ij^{p^h} - vbar_i X_1j^{p^h}), i >= 2,
// over the ring with variables X_11..X_nd (index (j-1)n + (i-1)).
struct GradedIdealBasis {
  std::vector<Symbol> gens;
  int h = 0;
};

GradedIdealBasis f_symbol_family(RingPtr R, int n, int d, int h, const std::vector<Res>& vbar);

// Bounded certificate: every element is a nonzerodivisor modulo the ideal
// of every subset of the others, on X-degrees <= D.
RegularSequenceReport check_regular_sequence(const GradedIdealBasis& fam, int D);

struct QuotientIsoReport {
  int degree_cap = 0;
  std::vector<long> quotient_dims;  // dim of (R/J)_delta
  std::vector<long> target_dims;    // C(delta+d-1, d-1)
};

// X_ij -> vbar_i X_1j identifies k[X_11..X_nd]/(X_ij - vbar_i X_1j) with
// k[X_11..X_1d]; throws DimensionMismatch otherwise.
QuotientIsoReport quotient_iso_check(const Field& K, int n, int d, const std::vector<Res>& vbar,
                                     int cap);

// Laurent polynomials over k in e0, and univariate polynomials over them.
using Laurent = std::map<std::int64_t, Res>;
struct UniPoly {
  int var = 0;
  std::vector<Laurent> coef;  // coef[k] multiplies X_var^k
  int degree() const { return static_cast<int>(coef.size()) - 1; }
};

UniPoly uni_from_symbol(const Symbol& s, int var);

struct FiniteRankReport {
  long rank = 0;
  long reduced = 0;  // monomials reduced onto the basis during verification
};

// Rank of k[e0^{+-1}][X_1..X_d]/(P_1(X_1),..,P_d(X_d)) over k[e0^{+-1}].
FiniteRankReport finite_rank_quotient(const Field& K, const std::vector<UniPoly>& polys);

}  // namespace padist
