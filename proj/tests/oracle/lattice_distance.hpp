#pragma once

// Ultrametric least distance from a vector to a finitely generated
// subspace of the truncated algebra, by Gaussian elimination with the
// globally largest weighted entry as pivot.  After full elimination the
// pivot vectors are orthogonal, so the reduced target realizes the distance.

#include <map>
#include <vector>

#include "padist/distalg.hpp"

namespace padist::oracle {

using Sparse = std::map<int, Scalar>;

inline void axpy(Sparse& y, const Scalar& a, const Sparse& x) {
  for (const auto& [i, c] : x) {
    Scalar t = a * c;
    auto it = y.find(i);
    if (it == y.end()) {
      y.emplace(i, t);
    } else {
      it->second += t;
      if (it->second.is_zero()) y.erase(it);
    }
  }
}

inline QExp lattice_distance(const Algebra& A, std::vector<Sparse> gens, Sparse target, const Radius& r) {
  std::vector<Sparse> piv;
  std::vector<int> piv_at;
  for (;;) {
    int gi = -1, at = -1;
    QExp best = QExp::infinity();
    for (std::size_t g = 0; g < gens.size(); ++g)
      for (const auto& [i, c] : gens[g]) {
        QExp e = A.term_exponent(i, c, r);
        if (e < best) {
          best = e;
          gi = static_cast<int>(g);
          at = i;
        }
      }
    if (gi < 0) break;
    Sparse g = std::move(gens[gi]);
    gens.erase(gens.begin() + gi);
    Scalar inv = g.at(at).inv();
    for (auto& [i, c] : g) c = c * inv;
    auto eliminate = [&](Sparse& x) {
      auto it = x.find(at);
      if (it == x.end()) return;
      Scalar f = -it->second;
      axpy(x, f, g);
    };
    for (auto& x : gens) eliminate(x);
    for (auto& x : piv) eliminate(x);
    eliminate(target);
    piv.push_back(std::move(g));
    piv_at.push_back(at);
  }
  QExp d = QExp::infinity();
  for (const auto& [i, c] : target) d = std::min(d, A.term_exponent(i, c, r));
  return d;
}

// span{ F * b^beta : |beta| <= N - 1 } truncated at degree N.
inline std::vector<Sparse> truncated_ideal(const Algebra& A, const std::vector<Dist>& F) {
  std::vector<Sparse> out;
  const MonomialBasis& B = A.basis();
  for (const auto& f : F)
    for (int i = 0; i < B.start(A.N()); ++i) {
      Dist g = A.mul(f.without_tail(), A.monomial(B.exp(i), Scalar::one(A.field()))).without_tail();
      if (!g.finite_zero()) out.emplace_back(g.coeffs().begin(), g.coeffs().end());
    }
  return out;
}

}  // namespace padist::oracle
