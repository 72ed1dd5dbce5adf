#pragma once

// Mahler coefficients on Z_p^d and the structure constants of the
// distribution algebra in the basis b^alpha, b_i = delta_{h_i} - 1:
//   binom(F(x,y), gamma) = sum_{alpha,beta} binom(x,alpha) binom(y,beta) c^gamma_{alpha beta}
// with F the second-kind group law.

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "padist/arith.hpp"
#include "padist/groups.hpp"

namespace padist {

using Exp = std::vector<int>;

int degree(const Exp& a);

// Multi-indices of degree <= N in graded lexicographic order: degree
// ascending, then exponent vectors lexicographically descending, so that
// b_1 precedes b_2.
class MonomialBasis {
 public:
  MonomialBasis(int d, int N);
  int d() const { return d_; }
  int N() const { return N_; }
  int size() const { return static_cast<int>(exps_.size()); }
  const Exp& exp(int idx) const { return exps_[idx]; }
  int degree(int idx) const { return deg_[idx]; }
  // -1 when the degree exceeds N.
  int find(const Exp& a) const;
  // First index of degree k (size() when k > N).
  int start(int k) const { return k > N_ ? size() : start_[k]; }

 private:
  int d_, N_;
  std::vector<Exp> exps_;
  std::vector<int> deg_;
  std::vector<int> start_;
  std::map<Exp, int> index_;
};

bool graded_lex_less(const Exp& a, const Exp& b);

// Coefficients on the box {0..N}^d, index sum_i a_i (N+1)^i.
struct MahlerTable {
  int d = 1;
  int N = 0;
  std::vector<Rat> c;

  const Rat& at(const Exp& a) const;
  Rat evaluate(const std::vector<Rat>& x) const;
};

MahlerTable mahler_coeffs(int d, int N, const std::vector<Rat>& values);

class StructureConstants {
 public:
  using Entry = std::pair<int, Rat>;  // (gamma index, c)

  StructureConstants(GroupPtr G, int N, int threads = 1);

  const Group& group() const { return *G_; }
  GroupPtr group_ptr() const { return G_; }
  const MonomialBasis& basis() const { return basis_; }
  int N() const { return basis_.N(); }
  // Nonzero c^gamma_{alpha beta}, gamma ascending.
  const std::vector<Entry>& at(int alpha, int beta) const {
    return table_[static_cast<std::size_t>(alpha) * basis_.size() + beta];
  }
  Rat get(int alpha, int beta, int gamma) const;
  std::size_t nonzero() const;

  struct BoundViolation {
    int alpha, beta, gamma;
  };
  // Entries with v_p(c) < kappa(|alpha|+|beta|-|gamma|).
  std::vector<BoundViolation> filtration_violations() const;

  void save(const std::string& path) const;
  // Returns nullptr if the file is absent; throws CacheError when the file
  // is unreadable or belongs to a different (group, N, M).
  static std::shared_ptr<StructureConstants> load(const std::string& path, GroupPtr G, int N);
  static std::string cache_name(const Group& G, int N);

 private:
  StructureConstants(GroupPtr G, int N, bool);
  void build(int threads);

  GroupPtr G_;
  MonomialBasis basis_;
  std::vector<std::vector<Entry>> table_;
};

using StructurePtr = std::shared_ptr<const StructureConstants>;

// Builds or reuses a table; with a cache directory the table is read from
// or written to it.
StructurePtr structure_constants(GroupPtr G, int N, const std::string& cache_dir = "");

}  // namespace padist
