#pragma once

// The truncated model of D_r(H_0, K): finitely supported series
// sum_alpha d_alpha b^alpha with b_i = h_i - 1, kept to degree N, plus a
// symbolic tail whose norm is bounded for every radius at once.

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "padist/grading.hpp"
#include "padist/groups.hpp"
#include "padist/mahler.hpp"
#include "padist/padics.hpp"

namespace padist {

// r = p^{-t} with 0 < t < 1.
struct Radius {
  Rat t;

  explicit Radius(Rat t_);
  // "3^-1/4", "p^-1/4" or "1/4"; writes the prime (0 when absent) to *p.
  static Radius parse(const std::string& text, long* p = nullptr);
  std::string str(long p) const;
  bool operator==(const Radius& o) const { return t == o.t; }
  bool operator<(const Radius& o) const { return t > o.t; }  // r < r' iff t > t'
};

// min_{k > N} (k * step - v_p(k)) with step = wstep/e + kappa*degstep*t:
// the norm exponent of the terms x^k/k beyond N when |x| = p^{-step}.
struct LogPart {
  int N = 0;
  std::int64_t wstep = 0;
  int degstep = 1;
  bool operator==(const LogPart& o) const {
    return N == o.N && wstep == o.wstep && degstep == o.degstep;
  }
};

// A bound w/e + kappa*deg*t + sum of LogParts on the norm exponent of
// everything beyond the finite part.
struct TailAtom {
  std::int64_t w = 0;
  int deg = 0;
  std::vector<LogPart> logs;
};

struct NormValue {
  QExp q;          // exponent of the finite part
  QExp tail;       // certified lower bound on the tail exponent
  bool certified;  // tail strictly smaller than the finite part
};

class Algebra;

class Dist {
 public:
  Dist() = default;

  const Algebra& algebra() const { return *A_; }
  const std::map<int, Scalar>& coeffs() const { return c_; }
  const std::vector<TailAtom>& tail() const { return tail_; }
  bool truncated() const { return truncated_; }
  bool finite_zero() const { return c_.empty(); }
  bool is_zero() const { return c_.empty() && tail_.empty(); }
  int max_degree() const;  // -1 for zero
  int min_degree() const;
  std::int64_t min_val() const;  // min valuation over the support
  Scalar coeff(const Exp& a) const;

  Dist operator+(const Dist& o) const;
  Dist operator-(const Dist& o) const;
  Dist operator-() const;
  Dist operator*(const Dist& o) const;
  Dist scale(const Scalar& s) const;
  Dist without_tail() const;

  std::string str() const;

 private:
  friend class Algebra;
  const Algebra* A_ = nullptr;
  std::map<int, Scalar> c_;
  std::vector<TailAtom> tail_;
  bool truncated_ = false;
};

struct LogIndex {
  bool critical = false;
  int h = 0;
  Rat value;  // min over k of kappa*t*k - v_p(k)
  long checked = 0;  // values of k examined by brute force
};

// Maximizer of |1/k| s^k with s = r^kappa, by brute force over k with a
// cutoff past which no k can compete.
LogIndex dominant_log_index(long p, int kappa, const Radius& r);

class Algebra {
 public:
  Algebra(FieldPtr K, StructurePtr sc, std::vector<std::string> names = {});

  const Field& field() const { return *K_; }
  FieldPtr field_ptr() const { return K_; }
  const Group& group() const { return sc_->group(); }
  const StructureConstants& structure() const { return *sc_; }
  const MonomialBasis& basis() const { return sc_->basis(); }
  int N() const { return sc_->N(); }
  int d() const { return sc_->group().d(); }
  int kappa() const { return sc_->group().kappa(); }
  long p() const { return K_->p(); }
  const std::vector<std::string>& names() const { return names_; }

  Dist zero() const;
  Dist one() const;
  Dist scalar(const Scalar& s) const;
  Dist gen(int i) const;  // b_i
  Dist monomial(const Exp& a, const Scalar& s) const;
  Dist from_coeffs(const std::map<int, Scalar>& c) const;

  // Strict mode throws DegreeOverflow instead of truncating.
  Dist mul(const Dist& a, const Dist& b, bool strict = false) const;
  Dist pow(const Dist& a, int k) const;

  NormValue norm(const Dist& a, const Radius& r) const;
  // The finite-part exponent; throws PrecisionExhausted unless certified.
  QExp norm_exponent(const Dist& a, const Radius& r) const;
  QExp tail_bound(const TailAtom& t, const Radius& r) const;
  QExp term_exponent(int idx, const Scalar& c, const Radius& r) const;

  RingPtr graded_ring(const Radius& r) const;
  Symbol principal_symbol(const Dist& a, const Radius& r) const;

  // delta_g for g in second-kind coordinates.
  Dist delta(const Vec& x) const;
  // log(1 + b_i) to degree N with its tail.
  Dist log_series(int i) const;
  // log(1 + x) for x without constant term.
  Dist log1p(const Dist& x) const;

  // Text form "c * b1^a1 * b2^a2 + ..." with scalar syntax and log(...).
  Dist parse(const std::string& text) const;
  std::string str(const Dist& a) const;
  int gen_index(const std::string& name) const;  // -1 if unknown

  void prune(std::vector<TailAtom>& tail) const;

 private:
  Dist make() const;

  FieldPtr K_;
  StructurePtr sc_;
  std::vector<std::string> names_;
};

using AlgebraPtr = std::shared_ptr<const Algebra>;

}  // namespace padist
