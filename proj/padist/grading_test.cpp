#include "padist/grading.hpp"

#include <gtest/gtest.h>

#include <random>

#include "padist/errors.hpp"

namespace padist {
namespace {

FieldPtr qp2(long p) {
  FieldSpec s;
  s.p = p;
  s.f = 2;
  return make_field(s);
}

TEST(Symbol, Arithmetic) {
  auto R = GradedRing::make(qp_field(3), 2, Rat(1, 4));
  Symbol x1 = Symbol::var(R, 0), x2 = Symbol::var(R, 1);
  Symbol p = x1 * x2;
  EXPECT_EQ(p.str(), "X1 * X2");
  EXPECT_EQ(p.degree(), qexp(Rat(1, 2)));
  EXPECT_EQ((Symbol::e0(R, 1) * Symbol::e0(R, -1)).str(), "1");
  EXPECT_THROW(x1 + p, DegreeMismatch);
  EXPECT_EQ((x1 + x1 + x1).is_zero(), true);  // 3 = 0 in k
  EXPECT_EQ(Symbol::e0(R, -2).str(), "e0^-2");
}

TEST(Symbol, BilinearExpansion) {
  auto K = qp2(3);
  auto R = GradedRing::make(K, 2, Rat(1, 2), {"X11", "X21"});
  Res vbar{0, 1};
  Symbol f = Symbol::var(R, 1) - Symbol::var(R, 0).scale(vbar);
  Symbol g = f * Symbol::var(R, 0);
  EXPECT_EQ(g.terms().size(), 2u);
  EXPECT_EQ(g.str(), "2*w * X11^2 + X11 * X21");
  EXPECT_EQ(g.degree(), qexp(1));
  EXPECT_TRUE(g.homogeneous());
}

// Hilbert function of k[X_1..X_m]/(t forms of degree q) for a regular
// sequence: coefficients of (1 - z^q)^t / (1 - z)^m.
std::vector<long> hilbert_regular(int m, int t, int q, int D) {
  std::vector<long> num(D + 1, 0);
  for (int k = 0; k <= t && k * q <= D; ++k)
    num[k * q] = binom_int(t, k).get_si() * (k % 2 ? -1 : 1);
  std::vector<long> out(D + 1, 0);
  for (int delta = 0; delta <= D; ++delta)
    for (int i = 0; i <= delta; ++i) out[delta] += num[i] * binom_int(delta - i + m - 1, m - 1).get_si();
  return out;
}

// Standard monomials for the family: exponents of X_ij (i >= 2) below q.
long standard_monomials(int n, int d, int q, int delta) {
  std::vector<long> ways(delta + 1, 0);
  ways[0] = 1;
  for (int v = 0; v < n * d; ++v) {
    bool restricted = v % n != 0;
    std::vector<long> next(delta + 1, 0);
    for (int s = 0; s <= delta; ++s)
      for (int a = 0; s + a <= delta && (!restricted || a < q); ++a) next[s + a] += ways[s];
    ways = next;
  }
  return ways[delta];
}

TEST(Regular, SingleLinearElement) {
  auto K = qp2(3);
  auto R = GradedRing::make(K, 2, Rat(1, 2));
  auto fam = f_symbol_family(R, 2, 1, 0, {K->r_one(), Res{0, 1}});
  ASSERT_EQ(fam.gens.size(), 1u);
  auto rep = check_regular_sequence(fam, 4);
  EXPECT_TRUE(rep.ok) << rep.witness;
}

TEST(Regular, PthPowerFamily) {
  auto K = qp2(3);
  auto R = GradedRing::make(K, 2, Rat(1, 4));
  auto fam = f_symbol_family(R, 2, 1, 1, {K->r_one(), Res{0, 1}});
  EXPECT_EQ(fam.gens[0].str(), "2*w * e0^-1 * X1^3 + e0^-1 * X2^3");
  auto rep = check_regular_sequence(fam, 9);
  EXPECT_TRUE(rep.ok) << rep.witness;
}

TEST(Regular, RepeatedElementIsZeroDivisor) {
  auto K = qp2(3);
  auto R = GradedRing::make(K, 2, Rat(1, 2));
  auto fam = f_symbol_family(R, 2, 1, 0, {K->r_one(), Res{0, 1}});
  fam.gens.push_back(fam.gens[0]);
  auto rep = check_regular_sequence(fam, 4);
  EXPECT_FALSE(rep.ok);
  EXPECT_NE(rep.witness.find("zero divisor"), std::string::npos);
}

TEST(Regular, NonRegularMonomials) {
  auto K = qp_field(5);
  auto R = GradedRing::make(K, 3, Rat(1, 2));
  GradedIdealBasis fam;
  fam.gens = {Symbol::var(R, 0) * Symbol::var(R, 1), Symbol::var(R, 0) * Symbol::var(R, 2)};
  EXPECT_FALSE(check_regular_sequence(fam, 4).ok);
}

TEST(Regular, HilbertFunctionOracle) {
  // n = 2, d = 2, h in {0, 1}: quotient dimensions against two oracles.
  for (int h = 0; h <= 1; ++h) {
    auto K = qp2(3);
    auto R = GradedRing::make(K, 4, Rat(1, 4));
    auto fam = f_symbol_family(R, 2, 2, h, {K->r_one(), Res{0, 1}});
    std::vector<KPoly> P;
    for (const auto& g : fam.gens) P.push_back(strip_units(g));
    const int q = h ? 3 : 1, D = 10;
    auto hs = hilbert_regular(4, 2, q, D);
    for (int delta = 0; delta <= D; ++delta) {
      long dim = binom_int(delta + 3, 3).get_si() - ideal_component_dim(*K, 4, P, delta);
      EXPECT_EQ(dim, hs[delta]) << "h=" << h << " delta=" << delta;
      EXPECT_EQ(dim, standard_monomials(2, 2, q, delta));
    }
    auto rep = check_regular_sequence(fam, 2 * q * 4);
    EXPECT_TRUE(rep.ok) << rep.witness;
    EXPECT_EQ(rep.orderings, 2);
  }
}

TEST(QuotientIso, DimensionsMatchPolynomialRing) {
  auto K = qp2(3);
  auto r1 = quotient_iso_check(*K, 1, 2, {K->r_one()}, 5);
  EXPECT_EQ(r1.quotient_dims, r1.target_dims);
  auto r2 = quotient_iso_check(*K, 2, 1, {K->r_one(), Res{0, 1}}, 5);
  EXPECT_EQ(r2.quotient_dims, (std::vector<long>{1, 1, 1, 1, 1, 1}));
  auto r3 = quotient_iso_check(*K, 2, 2, {K->r_one(), Res{0, 1}}, 5);
  EXPECT_EQ(r3.quotient_dims, (std::vector<long>{1, 2, 3, 4, 5, 6}));
}

UniPoly poly(int var, std::vector<Laurent> c) {
  UniPoly u;
  u.var = var;
  u.coef = std::move(c);
  return u;
}

TEST(FiniteRank, Examples) {
  auto K = qp_field(3);
  Res one = K->r_one();
  EXPECT_EQ(finite_rank_quotient(*K, {poly(0, {{}, {{0, one}}})}).rank, 1);
  // X1^2 - e0, X2^3
  auto r = finite_rank_quotient(*K, {poly(0, {{{1, K->r_from(-1)}}, {}, {{0, one}}}),
                                     poly(1, {{}, {}, {}, {{0, one}}})});
  EXPECT_EQ(r.rank, 6);
  // (1 + e0) X1^2
  EXPECT_THROW(finite_rank_quotient(*K, {poly(0, {{}, {}, {{0, one}, {1, one}}})}), NonUnitLeading);
  EXPECT_THROW(finite_rank_quotient(*K, {poly(0, {{{0, one}}})}), DegreeMismatch);
}

TEST(FiniteRank, FromSymbol) {
  auto K = qp_field(3);
  auto R = GradedRing::make(K, 1, Rat(1, 2));
  // sigma(b) = X1, degree-one polynomial
  UniPoly u = uni_from_symbol(Symbol::var(R, 0), 0);
  EXPECT_EQ(u.degree(), 1);
  EXPECT_EQ(finite_rank_quotient(*K, {u}).rank, 1);
}

TEST(FiniteRank, RandomInputs) {
  auto K = qp2(2);
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    int d = 1 + trial % 3;
    std::vector<UniPoly> ps;
    long want = 1;
    for (int j = 0; j < d; ++j) {
      int dg = 1 + static_cast<int>(rng() % 4);
      want *= dg;
      UniPoly u;
      u.var = j;
      u.coef.resize(dg + 1);
      for (int k = 0; k < dg; ++k)
        for (int w = -1; w <= 1; ++w)
          if (rng() % 3 == 0) u.coef[k][w] = K->r_elem(1 + static_cast<long>(rng() % (K->q() - 1)));
      u.coef[dg][static_cast<long>(rng() % 5) - 2] = K->r_elem(1 + static_cast<long>(rng() % (K->q() - 1)));
      ps.push_back(u);
    }
    EXPECT_EQ(finite_rank_quotient(*K, ps).rank, want);
  }
}

}  // namespace
}  // namespace padist
