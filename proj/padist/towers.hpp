#pragma once

// Lower p-series steps H^(m) (generators h_i^{p^m}) inside D_r(H): the
// b'-expansion, restriction of norms to the step, orthogonal systems,
// coset systems of H^(m) in H, and the radii delta_m = delta^{1/p^m}.

#include <string>
#include <vector>

#include "padist/distalg.hpp"
#include "padist/quotient.hpp"
#include "padist/sampling.hpp"

namespace padist {

// (1 + b_i)^{p^m} - 1; DegreeOverflow if p^m > N.
Dist bprime(const Algebra& A, int i, int m);

// sum_alpha d_alpha b'^alpha with ordered products b'_1^a1 ... b'_d^ad.
Dist expand_bprime(const Algebra& A, const std::map<Exp, Scalar>& coeffs, int m);

// sup |d_alpha| r'^{kappa |alpha|} with r' = r^{p^m}, as an exponent.
QExp intrinsic_norm(const Algebra& A, const std::map<Exp, Scalar>& coeffs, int m, const Radius& r);

// r^{kappa (p^m - 1)} > p^{-1}.
bool restriction_hypothesis(long p, int kappa, int m, const Radius& r);

struct RestrictionProbe {
  QExp actual;    // ||b'_1||_r
  QExp expected;  // min_j |binom(p^m, p^j)| r^{kappa p^j}; |p| r^kappa at m = 1 below the threshold
};
RestrictionProbe restriction_probe(const Algebra& A, int m, const Radius& r);

struct RestrictionReport {
  long samples = 0;
  bool ok = true;
  std::string witness;
};

// Compares ||expanded lambda||_r with the intrinsic norm on random
// b'-expansions of degree <= maxdeg in the b'.  HypothesisFailed (with the
// probe in the message) below the threshold; CounterexampleFound on mismatch.
RestrictionReport restriction_check(const Algebra& A, int m, const Radius& r, long samples, Rng& rng,
                                    int maxdeg = 2);

struct FrommerReport {
  std::vector<int> index;  // iota(T_i): basis index attaining the norm
  bool bijective = false;  // onto all basis indices of degree <= N
  long trials = 0;
  bool ok = true;
};

// Throws UniqueAttainmentFailed / InjectivityFailed when the criterion's
// hypotheses fail, CounterexampleFound if a sampled combination is not
// orthogonal.
FrommerReport frommer_orthogonality(const Algebra& A, const std::vector<Dist>& T, const Radius& r, long trials,
                                    Rng& rng);

struct MixedMonomial {
  Exp alpha, beta;
  Dist value;  // b'^alpha b^beta
};
// All b'^alpha b^beta with beta < p^m componentwise and p^m alpha + beta of
// degree <= N.
std::vector<MixedMonomial> mixed_family(const Algebra& A, int m);

struct CosetSystem {
  int m = 0;
  std::vector<Vec> reps;  // second-kind coordinates, reps[0] = identity
};

// {h^beta : beta < p^m componentwise}.
CosetSystem lower_p_transversal(const Group& G, int m);

struct CosetReport {
  long t = 0;
  std::int64_t t_valuation = 0;  // v_p(t); t is a unit in K only through char 0
  long normality_samples = 0;
  long products = 0;
  long inverses = 0;
};

// Normality of H^(m), pairwise distinct cosets, closure of the
// representatives under products and inverses modulo H^(m).  Throws
// ConditionFailed naming the violated clause.
CosetReport coset_conditions(const Group& G, const CosetSystem& C, Rng& rng, long normality_samples = 20);

// delta^{1/p^m}; InvalidDelta unless delta^kappa < p^{-1/(p-1)}.
Radius s_delta(long p, int kappa, const Radius& delta, int m);

struct TransferReport {
  int level = 0;       // m + kappa - 1
  Radius r{Rat(1, 2)}; // delta_{level}
  long samples = 0;
  long sublattice = 0;  // samples on the b'_1j monomials
  Rat offset_min, offset_max;  // quotient-norm exponent minus intrinsic
  bool ok = true;
};

// spec/scale give the L-group.  Samples are b'-expansions of degree <= maxdeg
// at level m + kappa - 1; the algebras are sized to hold them exactly.
TransferReport norm_transfer_check(const LGroupSpec& spec, int scale, const Radius& delta, int m, long samples,
                                   Rng& rng, int maxdeg, const Rat& Mprime);

}  // namespace padist
