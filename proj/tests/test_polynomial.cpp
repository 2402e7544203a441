#include <gtest/gtest.h>

#include <random>

#include "support/catalog.hpp"
#include "support/numeric.hpp"

using mckay::CycMatrix;
using mckay::Cyclotomic;
using mckay::SparsePolynomial;
using support::diag;

namespace {

SparsePolynomial poly(std::string_view text, std::size_t n = 4) { return mckay::parse_polynomial(text, n); }

SparsePolynomial random_polynomial(std::mt19937& rng, std::size_t nvars, long conductor, int terms = 4,
                                   std::uint32_t max_degree = 3) {
  std::uniform_int_distribution<std::uint32_t> exp(0, max_degree);
  SparsePolynomial f(nvars);
  for (int k = 0; k < terms; ++k) {
    mckay::Exponent e(nvars);
    for (auto& x : e) x = exp(rng);
    f.add_term(e, support::random_cyclotomic(rng, conductor, 2));
  }
  return f;
}

}  // namespace

TEST(Polynomial, Arithmetic) {
  const SparsePolynomial x1 = SparsePolynomial::variable(2, 0), x2 = SparsePolynomial::variable(2, 1);
  const SparsePolynomial s = (x1 + x2).pow(2);
  EXPECT_EQ(s, poly("x1^2 + 2*x1*x2 + x2^2", 2));
  EXPECT_EQ(s.render(), "x1^2 + 2*x1*x2 + x2^2");
  EXPECT_EQ(s.degree(), 2u);
  EXPECT_TRUE((s - s).is_zero());
  EXPECT_EQ((x1 - x2) * (x1 + x2), poly("x1^2 - x2^2", 2));
  EXPECT_THROW(x1 + SparsePolynomial::variable(3, 0), mckay::DimensionError);
}

TEST(Polynomial, OrderAndRender) {
  EXPECT_EQ(poly("x4 + x1*x2 + 3").render(), "x1*x2 + x4 + 3");
  EXPECT_EQ(poly("E(3)*x3 + (1 + E(4))*x1").render(), "(1 + E(4))*x1 + E(3)*x3");
  EXPECT_EQ(poly("0").render(), "0");
  EXPECT_EQ(poly("-x2").render(), "-1*x2");
}

TEST(Polynomial, ParseErrors) {
  EXPECT_THROW(poly("x5"), mckay::ParseError);
  EXPECT_THROW(poly("x0"), mckay::ParseError);
  EXPECT_THROW(poly("x1 +"), mckay::ParseError);
  EXPECT_THROW(poly("x1 / x2"), mckay::ParseError);
  EXPECT_THROW(poly("y1"), mckay::ParseError);
}

TEST(Polynomial, ParseRenderRoundTrip) {
  std::mt19937 rng(2024);
  for (int trial = 0; trial < 60; ++trial) {
    const SparsePolynomial f = random_polynomial(rng, 3, trial % 2 ? 12 : 5);
    EXPECT_EQ(mckay::parse_polynomial(f.render(), 3), f) << f.render();
  }
}

TEST(Action, Examples) {
  EXPECT_EQ(mckay::act(diag({"-1", "1"}), poly("x1 + x2", 2)), poly("-x1 + x2", 2));
  const CycMatrix g1 = diag({"1", "1", "E(3)^2", "E(3)"});
  EXPECT_EQ(mckay::act(g1, poly("x3")), poly("E(3)*x3"));
  EXPECT_EQ(mckay::act(g1, poly("x4")), poly("E(3)^2*x4"));
  EXPECT_EQ(mckay::act(g1, poly("x3*x4 + x1")), poly("x3*x4 + x1"));
  // swap: (g.f)(v) = f(g^-1 v)
  const CycMatrix swap = support::mat({{"0", "1"}, {"1", "0"}});
  EXPECT_EQ(mckay::act(swap, poly("x1^2 + 3*x2", 2)), poly("x2^2 + 3*x1", 2));
  EXPECT_THROW(mckay::act(CycMatrix::identity(3), poly("x1")), mckay::DimensionError);
}

TEST(Action, IsALeftActionByRingMaps) {
  const auto g = support::binary_dihedral(3);
  std::mt19937 rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    const auto f = random_polynomial(rng, 2, 12, 3);
    const auto h = random_polynomial(rng, 2, 3, 3);
    const auto& a = g.element(trial % g.order());
    const auto& b = g.element((5 * trial + 1) % g.order());
    EXPECT_EQ(mckay::act(a * b, f), mckay::act(a, mckay::act(b, f)));
    EXPECT_EQ(mckay::act(a, f * h), mckay::act(a, f) * mckay::act(a, h));
    EXPECT_EQ(mckay::act(a, f + h), mckay::act(a, f) + mckay::act(a, h));
    EXPECT_EQ(mckay::act(CycMatrix::identity(2), f), f);
  }
}

TEST(Action, AgreesWithNumericEvaluation) {
  std::mt19937 rng(8);
  const auto icosa = support::binary_icosahedral_generators();
  const std::vector<CycMatrix> matrices{icosa[0], icosa[1], support::quaternion_generators()[0],
                                        support::mat({{"1", "E(5)"}, {"0", "1"}})};
  for (const auto& m : matrices) {
    for (int trial = 0; trial < 8; ++trial) {
      const auto f = random_polynomial(rng, 2, 20, 3);
      const auto v = support::random_point(rng, 2);
      const auto lhs = support::evaluate(mckay::act(m, f), v);
      const auto rhs = support::evaluate(f, support::apply(support::evaluate(m.inverse()), v));
      EXPECT_TRUE(support::close(lhs, rhs, 1e-7)) << m.render() << " " << f.render();
    }
  }
}
