#pragma once

// Uniform pro-p groups given by powerful Z_p-Lie lattices.  Points are
// coordinate vectors in Z_p^d, either of the first kind (log g) or of the
// second kind (g = h_1^{x_1} ... h_d^{x_d}, h_i = exp X_i).
//
// Nilpotent lattices are handled exactly over Q: the Hausdorff series is a
// finite sum.  Otherwise coordinates are kept modulo p^M and the series is
// cut at a certified depth.

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "padist/arith.hpp"
#include "padist/padics.hpp"

namespace padist {

using Vec = std::vector<Rat>;

struct LieLattice {
  long p = 3;
  int d = 0;
  // n[(i*d + j)*d + k]: coefficient of X_k in [X_i, X_j].
  std::vector<Rat> n;
  std::vector<std::string> labels;

  int kappa() const { return p == 2 ? 2 : 1; }
  const Rat& c(int i, int j, int k) const { return n[(i * d + j) * d + k]; }
  Rat& c(int i, int j, int k) { return n[(i * d + j) * d + k]; }

  static LieLattice zero(long p, int d);
  // Basis p^m X_i.
  LieLattice step(int m) const;
};

// Throws InvalidLattice (antisymmetry, Jacobi, integrality) or NotPowerful.
void validate(const LieLattice& L, int M);

LieLattice abelian_lattice(long p, int d);
// [X_1, X_2] = p^kappa X_3, all other brackets of basis elements zero.
LieLattice heisenberg_lattice(long p);

struct GroupElement {
  enum Mode { First, Second };
  Mode mode = Second;
  Vec x;
};

struct PValuationReport {
  long checked = 0;
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

class Group {
 public:
  Group(LieLattice L, int M, int max_depth = 200);

  const LieLattice& lattice() const { return L_; }
  long p() const { return L_.p; }
  int d() const { return L_.d; }
  int kappa() const { return L_.kappa(); }
  int M() const { return M_; }
  bool exact() const { return exact_; }
  bool abelian() const { return terms_.empty(); }
  // Nilpotency class over Q, or 0 when the lattice is not nilpotent.
  int nil_class() const { return nil_class_; }
  // Number of Hausdorff-series degrees evaluated.
  int depth() const { return depth_; }
  std::uint64_t hash() const { return hash_; }

  Vec zero() const { return Vec(L_.d); }
  Vec unit_vec(int i, const Rat& s = 1) const;
  Vec bracket(const Vec& x, const Vec& y) const;
  Vec reduce(Vec x) const;
  bool equal(const Vec& a, const Vec& b) const;
  bool is_identity(const Vec& x) const;

  // First-kind group law: log(exp x exp y).
  Vec bch(const Vec& x, const Vec& y) const;
  Vec to_first(const Vec& second) const;
  Vec to_second(const Vec& first) const;

  // Second-kind group law and derived operations.
  Vec mul(const Vec& x, const Vec& y) const;
  Vec inv(const Vec& x) const;
  Vec pow(const Vec& x, const Rat& lambda) const;
  Vec commutator(const Vec& x, const Vec& y) const;  // x^-1 y^-1 x y

  GroupElement convert(const GroupElement& g, GroupElement::Mode target) const;

  // Largest i with all second-kind coordinates in p^{i-1} Z_p.
  int level(const Vec& second) const;
  // omega(g) = level + kappa - 1; kInf for the identity.
  std::int64_t omega(const Vec& second) const;
  // Same quantity read off min_i (omega(h_i) + v_p(x_i)) with x = log g.
  std::int64_t omega_first_kind(const Vec& second) const;

  PValuationReport check_p_valuation(const std::vector<std::pair<Vec, Vec>>& pairs) const;

 private:
  struct Term {
    int i, j, k;
    Rat c;
  };

  LieLattice L_;
  int M_;
  bool exact_ = true;
  int nil_class_ = 0;
  int depth_ = 0;
  std::uint64_t hash_ = 0;
  std::vector<Term> terms_;
  std::vector<Rat> bk_;  // B_{2q}/(2q)! indexed by 2q
};

using GroupPtr = std::shared_ptr<const Group>;

struct CommutatorCheck {
  long pairs = 0;
  bool ok = true;
  std::string witness;
};

// Exhaustive check of [P_i, P_j] <= P_{i+j+1} in G/P_{i+j+1} for p = 2.
// Throws CounterexampleFound on failure.
CommutatorCheck check_powerful_commutator(const Group& G, int level, int i, int j);

// Condition-(L) input: an L-Lie lattice with o = Z_p[w][pi] carrying the
// power basis v_s = w^a pi^b (s = b f + a, v_1 = 1).
struct LGroupSpec {
  FieldPtr L;
  int d = 1;
  // c[(j*d + l)*d + m]: o-coordinates of the coefficient of x_m in [x_j, x_l].
  std::vector<std::vector<Rat>> c;
  bool condition_L = true;

  int n() const { return L->dim(); }
  static LGroupSpec additive(FieldPtr L, int d);
};

struct Restriction {
  LieLattice lattice;
  int n = 1, d = 1;
  // Q_p-basis index of v_i x_j (1-based i, j).
  int index(int i, int j) const { return (j - 1) * n + (i - 1); }
};

// v_i x_j ordered (1,1),(2,1),...,(n,1),(1,2),...; scaled by p^scale so
// that the additive examples become powerful.
Restriction scalar_restrict(const LGroupSpec& spec, int scale = 0);

}  // namespace padist
