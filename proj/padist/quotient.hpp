#pragma once

// The locally L-analytic quotient of D_r(G_0, K) for the scalar restriction
// G_0 of an L-group: the generators F_ij = log(1+b_ij) - v_i log(1+b_1j),
// their symbols, and reduction of a distribution to the canonical
// b_1j-expansion.  K is taken equal to L.

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "padist/distalg.hpp"
#include "padist/groups.hpp"
#include "padist/sampling.hpp"

namespace padist {

// [F_t, F_s] = sum_l c_l F_l in K (x) Lie(G_0), indices into FFamily::kernel().
struct LieRelation {
  int t = 0, s = 0;
  std::vector<std::pair<int, Scalar>> coeffs;
};

class FFamily {
 public:
  // scale multiplies the restricted bracket by p^scale; M is the group's
  // working precision.
  FFamily(const LGroupSpec& spec, int N, int scale = 0, const std::string& cache_dir = "");

  const Algebra& algebra() const { return *A_; }
  AlgebraPtr algebra_ptr() const { return A_; }
  int n() const { return n_; }
  int d() const { return d_; }
  long p() const { return A_->p(); }
  int kappa() const { return A_->kappa(); }
  // Generator index of b_ij (1-based i, j).
  int var(int i, int j) const { return (j - 1) * n_ + (i - 1); }
  bool canonical_var(int k) const { return k % n_ == 0; }

  const Scalar& v(int i) const { return v_[i - 1]; }
  std::vector<Res> vbar() const;
  // F_1j is zero.
  const Dist& F(int i, int j) const { return F_[var(i, j)]; }
  // Finite part, used by the reduction.
  const Dist& F_trunc(int i, int j) const { return Ftr_[var(i, j)]; }
  const Dist& F_trunc(int k) const { return Ftr_[k]; }
  // (i, j) with i >= 2, j-major: the order of f_symbol_family.
  const std::vector<std::pair<int, int>>& kernel() const { return kernel_; }
  const std::vector<LieRelation>& lie() const { return lie_; }

 private:
  AlgebraPtr A_;
  int n_ = 1, d_ = 1;
  std::vector<Scalar> v_;
  std::vector<Dist> F_, Ftr_;
  std::vector<std::pair<int, int>> kernel_;
  std::vector<LieRelation> lie_;
};

using FamilyPtr = std::shared_ptr<const FFamily>;

// Read off the truncated series and compared with the closed form at
// h = dominant log index.  Throws CriticalRadius, CounterexampleFound.
Symbol f_symbol(const FFamily& fam, int i, int j, const Radius& r);

struct CheckReport {
  long trials = 0;
  bool ok = true;
  std::string witness;
};

// ||sum c_ij F_ij|| = max ||c_ij F_ij|| for random c; throws CounterexampleFound.
CheckReport orthogonality_check(const FFamily& fam, const Radius& r, long trials, Rng& rng);

struct CanonicalForm {
  Dist form;       // supported on monomials in the b_1j
  QExp residual;   // certified bound on everything dropped
  int passes = 0;
  std::vector<Rat> levels;  // degree of the non-canonical part at each pass

  // beta in N^d -> d_beta for b_11^beta_1 ... b_1d^beta_d
  std::map<Exp, Scalar> coeffs(const FFamily& fam) const;
};

// Subtracts right multiples F_ij * mu until no non-canonical term of degree
// below M' is left.  Works in the degree <= N truncation.  Needs h = 0
// (CriticalRadius otherwise); DegreeOverflow when the input's own tail is
// too coarse for M'.
CanonicalForm canonicalize(const FFamily& fam, const Dist& lambda, const Radius& r, const Rat& Mprime);

// Norm of the canonical form, certified against the residual.
NormValue quotient_norm(const FFamily& fam, const Dist& lambda, const Radius& r, const Rat& Mprime);

// Quotient norm of products of random canonical elements of degree <= maxdeg.
CheckReport domain_smoke_test(const FFamily& fam, const Radius& r, long trials, Rng& rng, int maxdeg,
                              const Rat& Mprime);

}  // namespace padist
