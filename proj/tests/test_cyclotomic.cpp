#include <gtest/gtest.h>

#include <random>

#include "support/numeric.hpp"
#include "mckay/cyclotomic.hpp"
#include "mckay/expression.hpp"

using mckay::Cyclotomic;
using mckay::parse_cyclotomic;
using mckay::Rational;

namespace {

Cyclotomic E(long n, long k = 1) { return Cyclotomic::root_of_unity(n, k); }

}  // namespace

TEST(CyclotomicPolynomial, SmallCases) {
  EXPECT_EQ(mckay::cyclotomic_polynomial(1), (std::vector<long>{-1, 1}));
  EXPECT_EQ(mckay::cyclotomic_polynomial(3), (std::vector<long>{1, 1, 1}));
  EXPECT_EQ(mckay::cyclotomic_polynomial(4), (std::vector<long>{1, 0, 1}));
  EXPECT_EQ(mckay::cyclotomic_polynomial(6), (std::vector<long>{1, -1, 1}));
  EXPECT_EQ(mckay::cyclotomic_polynomial(12), (std::vector<long>{1, 0, -1, 0, 1}));
  // degree phi(n)
  for (long n = 1; n <= 60; ++n) EXPECT_EQ(static_cast<long>(mckay::cyclotomic_polynomial(n).size()) - 1, mckay::euler_phi(n));
}

TEST(Parse, PrimitiveThirdRoot) {
  const Cyclotomic z = parse_cyclotomic("E(3)");
  EXPECT_EQ(z.conductor(), 3);
  ASSERT_EQ(z.coefficients().size(), 2u);
  EXPECT_EQ(z.coefficients()[0], 0);
  EXPECT_EQ(z.coefficients()[1], 1);
}

TEST(Parse, FourthRootSquared) { EXPECT_EQ(parse_cyclotomic("E(4)^2"), Cyclotomic(-1)); }

TEST(Parse, ThirdRootsSum) { EXPECT_EQ(parse_cyclotomic("E(3)+E(3)^2"), Cyclotomic(-1)); }

TEST(Parse, Precedence) {
  EXPECT_EQ(parse_cyclotomic("1+2*3"), Cyclotomic(7));
  EXPECT_EQ(parse_cyclotomic("(1+2)*3"), Cyclotomic(9));
  EXPECT_EQ(parse_cyclotomic("2^3"), Cyclotomic(8));
  EXPECT_EQ(parse_cyclotomic("-3/4"), Cyclotomic(Rational(-3, 4)));
  EXPECT_EQ(parse_cyclotomic("2/3^2"), Cyclotomic(Rational(4, 9)));
  EXPECT_EQ(parse_cyclotomic("1/(2/3)"), Cyclotomic(Rational(3, 2)));
  EXPECT_EQ(parse_cyclotomic("-E(3)"), -E(3));
  EXPECT_EQ(parse_cyclotomic("E(5)^-1"), E(5, 4));
  EXPECT_EQ(parse_cyclotomic("  E( 8 ) ^ 8 "), Cyclotomic(1));
}

TEST(Parse, Errors) {
  EXPECT_THROW(parse_cyclotomic("E(0)"), mckay::ParseError);
  EXPECT_THROW(parse_cyclotomic("1/0"), mckay::ParseError);
  EXPECT_THROW(parse_cyclotomic("1/(E(3)+E(3)^2+1)"), mckay::ParseError);
  EXPECT_THROW(parse_cyclotomic(""), mckay::ParseError);
  EXPECT_THROW(parse_cyclotomic("1+"), mckay::ParseError);
  EXPECT_THROW(parse_cyclotomic("(1"), mckay::ParseError);
  EXPECT_THROW(parse_cyclotomic("E(3"), mckay::ParseError);
  EXPECT_THROW(parse_cyclotomic("x1"), mckay::ParseError);
  EXPECT_THROW(parse_cyclotomic("2^3^1"), mckay::ParseError);
  try {
    parse_cyclotomic("1 + * 2");
    FAIL();
  } catch (const mckay::ParseError& e) {
    EXPECT_EQ(e.position(), 4u);
  }
}

TEST(Arithmetic, EighthRoots) { EXPECT_EQ(E(8) * E(8, 7), Cyclotomic(1)); }

TEST(Arithmetic, FieldInverse) {
  const Cyclotomic a = Cyclotomic(1) + E(5);
  EXPECT_TRUE((a * a.inverse()).is_one());
  EXPECT_TRUE((a / a).is_one());
  EXPECT_THROW(Cyclotomic::zero(7).inverse(), mckay::DivisionByZero);
}

TEST(Arithmetic, SixthRootIsOnePlusThirdRoot) {
  const Cyclotomic d = E(6) - (Cyclotomic(1) + E(3));
  EXPECT_TRUE(d.is_zero());
  const auto z6 = support::unit_root(6, 1);
  const auto z3 = support::unit_root(3, 1);
  EXPECT_NEAR(std::abs(z6 - (1.0 + z3)), 0.0, 1e-12);
}

TEST(Arithmetic, LiftsToLcm) {
  const Cyclotomic s = E(4) + E(3);
  EXPECT_EQ(s.conductor(), 12);
  EXPECT_EQ((E(5) * E(7)).conductor(), 35);
}

TEST(Embed, Examples) {
  EXPECT_EQ(E(3).embed(6), E(6, 2));
  EXPECT_EQ(E(3).embed(6).coefficients(), E(6, 2).coefficients());
  const Cyclotomic one = Cyclotomic(1).embed(12);
  EXPECT_EQ(one.conductor(), 12);
  EXPECT_TRUE(one.is_one());
  const Cyclotomic i = E(4).embed(12);
  EXPECT_EQ(i * i, Cyclotomic(-1));
  EXPECT_THROW(E(4).embed(6), mckay::DomainError);
}

TEST(RootOfUnity, Examples) {
  EXPECT_EQ(Cyclotomic(1).as_root_of_unity(), std::make_pair(1L, 0L));
  EXPECT_EQ(Cyclotomic(-1).as_root_of_unity(), std::make_pair(2L, 1L));
  EXPECT_EQ(E(3, 2).as_root_of_unity(), std::make_pair(3L, 2L));
  EXPECT_EQ((-E(3)).as_root_of_unity(), std::make_pair(6L, 5L));
  EXPECT_EQ(E(12, 4).as_root_of_unity(), std::make_pair(3L, 1L));
  EXPECT_FALSE(Cyclotomic(2).as_root_of_unity());
  EXPECT_FALSE((Cyclotomic(1) + E(5)).as_root_of_unity());
  EXPECT_FALSE(Cyclotomic::zero(4).as_root_of_unity());
}

TEST(Render, Format) {
  EXPECT_EQ(Cyclotomic::zero(5).render(), "0");
  EXPECT_EQ(E(3).render(), "E(3)");
  EXPECT_EQ((E(5, 2).scaled(Rational(1, 2)) - E(5, 3)).render(), "1/2*E(5)^2 - E(5)^3");
  EXPECT_EQ((-E(3, 2)).render(), "1 + E(3)");
}

// Property suites on random values. Conductors are mixed so that lifting is
// exercised constantly.

class RandomCyclotomic : public ::testing::Test {
 protected:
  std::mt19937 rng{20240611};
  const std::vector<long> conductors{1, 2, 3, 4, 5, 6, 7, 8, 9, 12, 15, 20};

  Cyclotomic sample() {
    std::uniform_int_distribution<std::size_t> pick(0, conductors.size() - 1);
    return support::random_cyclotomic(rng, conductors[pick(rng)]);
  }
};

TEST_F(RandomCyclotomic, RoundTripThroughText) {
  for (int i = 0; i < 200; ++i) {
    const Cyclotomic x = sample();
    EXPECT_EQ(parse_cyclotomic(x.render()), x) << x.render();
  }
}

TEST_F(RandomCyclotomic, RingAxioms) {
  for (int i = 0; i < 100; ++i) {
    const Cyclotomic a = sample(), b = sample(), c = sample();
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ((a + b) + c, a + (b + c));
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_EQ(a * b, b * a);
    EXPECT_EQ(a + b, b + a);
    EXPECT_TRUE((a - a).is_zero());
    if (!b.is_zero()) {
      EXPECT_EQ((a / b) * b, a);
    }
  }
}

TEST_F(RandomCyclotomic, CanonicalFormAgreesWithComplexValue) {
  for (int i = 0; i < 200; ++i) {
    const Cyclotomic a = sample(), b = sample();
    const auto va = support::evaluate(a), vb = support::evaluate(b);
    EXPECT_TRUE(support::close(support::evaluate(a + b), va + vb));
    EXPECT_TRUE(support::close(support::evaluate(a * b), va * vb));
    if (!b.is_zero()) {
      EXPECT_TRUE(support::close(support::evaluate(a / b), va / vb));
    }
    // a - b is zero exactly when the complex values coincide
    EXPECT_EQ((a - b).is_zero(), std::abs(va - vb) < 1e-9);
    EXPECT_TRUE((a - a.embed(6 * a.conductor())).is_zero());
  }
}

TEST_F(RandomCyclotomic, EmbedIsRingHomomorphism) {
  for (int i = 0; i < 100; ++i) {
    const Cyclotomic a = sample(), b = sample();
    const long m = std::lcm(a.conductor(), b.conductor()) * 2;
    EXPECT_EQ((a * b).embed(m).coefficients(), (a.embed(m) * b.embed(m)).coefficients());
    EXPECT_EQ((a + b).embed(m).coefficients(), (a.embed(m) + b.embed(m)).coefficients());
    EXPECT_TRUE(support::close(support::evaluate(a.embed(m)), support::evaluate(a)));
  }
}

TEST_F(RandomCyclotomic, GaloisIsAutomorphism) {
  for (int i = 0; i < 100; ++i) {
    std::uniform_int_distribution<long> pick(0, 5);
    const long divisors[] = {1, 2, 4, 5, 10, 20};
    const Cyclotomic a = support::random_cyclotomic(rng, divisors[pick(rng)]).embed(20);
    const Cyclotomic b = support::random_cyclotomic(rng, divisors[pick(rng)]).embed(20);
    for (long t : {3, 7, 9, 11, 13, 17, 19}) {
      EXPECT_EQ((a * b).galois(t), a.galois(t) * b.galois(t));
      EXPECT_EQ((a + b).galois(t), a.galois(t) + b.galois(t));
      EXPECT_TRUE(support::close(support::evaluate(a.galois(t)), support::evaluate(a, t)));
    }
  }
  EXPECT_THROW(E(4).galois(2), mckay::DomainError);
}

TEST_F(RandomCyclotomic, EqualValuesHashAlikeAtOneConductor) {
  for (int i = 0; i < 50; ++i) {
    const Cyclotomic x = sample();
    const long m = 3 * x.conductor();
    const Cyclotomic a = x.embed(m);
    const Cyclotomic b = parse_cyclotomic(x.render()).embed(m);
    EXPECT_EQ(a.hash(), b.hash());
  }
}
