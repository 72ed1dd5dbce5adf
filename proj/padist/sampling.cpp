#include "padist/sampling.hpp"

namespace padist {

long uniform(Rng& rng, long lo, long hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<long>(rng() % span);
}

Scalar random_scalar(const Field& F, Rng& rng, int vlo, int vhi) {
  const long p = F.p();
  std::vector<Rat> c(F.dim());
  for (auto& x : c) x = uniform(rng, -(p - 1), p - 1);
  if (c[0] == 0) c[0] = uniform(rng, 1, p - 1);  // unit, so the drawn valuation is exact
  return Scalar::from_coords(F, c) * Scalar::pi(F).pow(uniform(rng, vlo, vhi));
}

Dist random_dist_in(const Algebra& A, Rng& rng, const std::vector<int>& vars, int maxdeg, int vlo, int vhi,
                    int density) {
  const MonomialBasis& B = A.basis();
  std::vector<bool> allowed(A.d(), false);
  for (int v : vars) allowed[v] = true;
  std::map<int, Scalar> m;
  const int top = B.start(std::min(maxdeg, A.N()) + 1);
  std::vector<int> pool;
  for (int i = 0; i < top; ++i) {
    bool ok = true;
    for (int k = 0; k < A.d(); ++k)
      if (B.exp(i)[k] && !allowed[k]) ok = false;
    if (ok) pool.push_back(i);
  }
  for (int i : pool)
    if (uniform(rng, 1, density) == 1) m.emplace(i, random_scalar(A.field(), rng, vlo, vhi));
  if (m.empty()) {
    int i = pool[uniform(rng, 0, static_cast<long>(pool.size()) - 1)];
    m.emplace(i, random_scalar(A.field(), rng, vlo, vhi));
  }
  return A.from_coeffs(m);
}

Dist random_dist(const Algebra& A, Rng& rng, int maxdeg, int vlo, int vhi, int density) {
  std::vector<int> all(A.d());
  for (int i = 0; i < A.d(); ++i) all[i] = i;
  return random_dist_in(A, rng, all, maxdeg, vlo, vhi, density);
}

}  // namespace padist
