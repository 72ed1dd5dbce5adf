#include "padist/quotient.hpp"

#include <gtest/gtest.h>

#include "padist/errors.hpp"
#include "tests/oracle/lattice_distance.hpp"

namespace padist {
namespace {

FieldPtr unramified(long p, int f) {
  FieldSpec s;
  s.p = p;
  s.f = f;
  return make_field(s);
}

FFamily additive(long p, int d, int N) { return FFamily(LGroupSpec::additive(unramified(p, 2), d), N); }

Symbol expected_h0(const FFamily& fam, const Radius& r, int i, int j) {
  RingPtr R = fam.algebra().graded_ring(r);
  return Symbol::var(R, fam.var(i, j)) - Symbol::var(R, fam.var(1, j)).scale(fam.vbar()[i - 1]);
}

TEST(FFamily, Construction) {
  FFamily fam = additive(3, 2, 4);
  const Algebra& A = fam.algebra();
  EXPECT_EQ(A.names(), (std::vector<std::string>{"b1_1", "b2_1", "b1_2", "b2_2"}));
  EXPECT_TRUE(fam.F(1, 1).is_zero());
  EXPECT_TRUE(fam.F(1, 2).is_zero());
  EXPECT_EQ(fam.kernel().size(), 2u);
  EXPECT_TRUE(fam.lie().empty() || fam.lie()[0].coeffs.empty());
  const Dist& F = fam.F(2, 1);
  EXPECT_EQ(F.coeff({0, 1, 0, 0}), Scalar::one(A.field()));
  EXPECT_EQ(F.coeff({1, 0, 0, 0}), -Scalar::w(A.field()));
  EXPECT_EQ(F.coeff({0, 3, 0, 0}), Scalar::from_rat(A.field(), Rat(1, 3)));
  EXPECT_EQ(F.coeff({2, 0, 0, 0}), Scalar::w(A.field()).mul_rat(Rat(1, 2)));
  EXPECT_TRUE(F.coeff({1, 1, 0, 0}).is_zero());
  // the same series built from the parser
  Dist direct = A.parse("log(1 + b2_1) - w*log(1 + b1_1)");
  EXPECT_EQ(A.str(direct.without_tail()), A.str(fam.F_trunc(2, 1)));
}

TEST(FFamily, NonabelianKernelIsAnIdeal) {
  // [x1, x2] = x3 over Q_9, scaled by p to make the restriction powerful
  LGroupSpec s = LGroupSpec::additive(unramified(3, 2), 3);
  s.c[(0 * 3 + 1) * 3 + 2] = {Rat(1), Rat(0)};
  s.c[(1 * 3 + 0) * 3 + 2] = {Rat(-1), Rat(0)};
  FFamily fam(s, 2, 1);
  ASSERT_EQ(fam.kernel().size(), 3u);
  bool nonzero = false;
  for (const auto& rel : fam.lie()) nonzero = nonzero || !rel.coeffs.empty();
  EXPECT_TRUE(nonzero);
}

TEST(FSymbol, ClosedFormAtHZero) {
  for (long p : {2L, 3L}) {
    FFamily fam = additive(p, 2, 4);
    for (Rat t : {Rat(2, 3), Rat(3, 4), Rat(5, 6)}) {
      Radius r(t);
      for (const auto& [i, j] : fam.kernel()) {
        Symbol s = f_symbol(fam, i, j, r);
        EXPECT_EQ(s, expected_h0(fam, r, i, j));
        EXPECT_EQ(s.degree(), fam.algebra().norm_exponent(fam.F(i, j), r));
      }
    }
  }
}

TEST(FSymbol, PTwoAtHTwo) {
  FFamily fam = additive(2, 1, 6);
  Radius r(Rat(1, 6));  // r^kappa = 2^{-1/3}
  Symbol s = f_symbol(fam, 2, 1, r);
  EXPECT_EQ(s.str(), "w * e0^-2 * X11^4 + e0^-2 * X21^4");
  EXPECT_THROW(f_symbol(fam, 2, 1, Radius(Rat(1, 2))), CriticalRadius);
}

TEST(Orthogonality, RandomCombinations) {
  Rng rng(5);
  for (int d : {1, 2}) {
    FFamily fam = additive(3, d, 4);
    CheckReport rep = orthogonality_check(fam, Radius(Rat(3, 4)), 25, rng);
    EXPECT_TRUE(rep.ok);
    EXPECT_EQ(rep.trials, 25);
  }
}

TEST(Canonicalize, Examples) {
  FFamily fam = additive(3, 1, 4);
  const Algebra& A = fam.algebra();
  Radius r(Rat(3, 4));
  const Rat M(10);
  CanonicalForm f = canonicalize(fam, fam.F_trunc(2, 1), r, M);
  EXPECT_TRUE(f.form.is_zero());
  EXPECT_GE(f.residual, qexp(M));

  CanonicalForm b = canonicalize(fam, A.parse("b2_1"), r, M);
  EXPECT_EQ(A.principal_symbol(b.form, r).str(), "w * X11");
  EXPECT_EQ(b.form.coeff({1, 0}), Scalar::w(A.field()));
  for (std::size_t k = 1; k < b.levels.size(); ++k) EXPECT_LT(b.levels[k - 1], b.levels[k]);
  EXPECT_EQ(quotient_norm(fam, A.parse("b2_1"), r, M).q, qexp(Rat(3, 4)));
  EXPECT_EQ(quotient_norm(fam, A.one(), r, M).q, qexp(0));
  EXPECT_EQ(quotient_norm(fam, A.parse("p*b1_1^2"), r, M).q, qexp(Rat(5, 2)));

  // idempotent
  CanonicalForm again = canonicalize(fam, b.form, r, M);
  EXPECT_EQ(A.str(again.form), A.str(b.form));
  EXPECT_EQ(again.passes, 0);
  EXPECT_EQ(b.coeffs(fam).at({1}), Scalar::w(A.field()));
}

TEST(Canonicalize, Errors) {
  FFamily fam = additive(3, 1, 4);
  const Algebra& A = fam.algebra();
  EXPECT_THROW(canonicalize(fam, A.parse("b2_1"), Radius(Rat(1, 4)), Rat(10)), CriticalRadius);
  EXPECT_THROW(canonicalize(fam, A.parse("b2_1"), Radius(Rat(1, 2)), Rat(10)), CriticalRadius);
  EXPECT_THROW(canonicalize(fam, fam.F(2, 1), Radius(Rat(3, 4)), Rat(10)), DegreeOverflow);
}

TEST(Canonicalize, AgreesWithLatticeOracle) {
  for (long p : {2L, 3L}) {
    FFamily fam = additive(p, 1, 4);
    const Algebra& A = fam.algebra();
    auto ideal = oracle::truncated_ideal(A, {fam.F(2, 1)});
    Rng rng(77 + p);
    for (Rat t : {Rat(2, 3), Rat(7, 8)}) {
      Radius r(t);
      for (int k = 0; k < 12; ++k) {
        Dist x = random_dist(A, rng, 4);
        NormValue q = quotient_norm(fam, x, r, Rat(30));
        ASSERT_TRUE(q.certified);
        oracle::Sparse target(x.coeffs().begin(), x.coeffs().end());
        EXPECT_EQ(q.q, oracle::lattice_distance(A, ideal, target, r)) << A.str(x);
        CanonicalForm c = canonicalize(fam, x, r, Rat(30));
        EXPECT_EQ(A.str(canonicalize(fam, c.form, r, Rat(30)).form), A.str(c.form));
      }
    }
  }
}

TEST(Domain, SmokeTest) {
  Rng rng(3);
  for (int d : {1, 2}) {
    FFamily fam = additive(3, d, d == 1 ? 6 : 4);
    CheckReport rep = domain_smoke_test(fam, Radius(Rat(2, 3)), 10, rng, d == 1 ? 3 : 2, Rat(20));
    EXPECT_TRUE(rep.ok);
  }
}

}  // namespace
}  // namespace padist
