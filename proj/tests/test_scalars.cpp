#include <gtest/gtest.h>

#include "duality/rational.hpp"
#include "duality/semiring.hpp"

using namespace duality;

TEST(Rational, CanonicalForm) {
  Rational q(6, -4);
  EXPECT_EQ(q.str(), "-3/2");
  EXPECT_EQ(q.numerator().get_str(), "-3");
  EXPECT_EQ(q.denominator().get_str(), "2");
  EXPECT_EQ(Rational(4, 2).str(), "2");
  EXPECT_EQ(Rational(0, 5), Rational(0));
}

TEST(Rational, ParseGrammar) {
  EXPECT_EQ(Rational::parse("3/5"), Rational(3, 5));
  EXPECT_EQ(Rational::parse("-7"), Rational(-7));
  EXPECT_EQ(Rational::parse("+2/4"), Rational(1, 2));
  EXPECT_THROW(Rational::parse("1/0"), ParseError);
  EXPECT_THROW(Rational::parse(""), ParseError);
  EXPECT_THROW(Rational::parse("1.5"), ParseError);
  EXPECT_THROW(Rational::parse("1/"), ParseError);
  EXPECT_THROW(Rational::parse("/2"), ParseError);
  EXPECT_THROW(Rational::parse("1/-2"), ParseError);
}

TEST(Rational, RoundTripOnProducedValues) {
  Rng rng(kDefaultSeed);
  for (int i = 0; i < 500; ++i) {
    Rational a = rng.unit_rational(97) - Rational(rng.between(-5, 5));
    Rational b = rng.open_unit_rational(64);
    for (const Rational& q : {a, b, a * b, a / b, a - b, a + b}) EXPECT_EQ(Rational::parse(q.str()), q);
  }
}

TEST(Rational, ExactArithmetic) {
  EXPECT_EQ(Rational(1, 3) + Rational(1, 6), Rational(1, 2));
  EXPECT_EQ(Rational(9, 25) + Rational(16, 25), Rational(1));
  EXPECT_THROW((void)(Rational(1) / Rational(0)), std::domain_error);
  EXPECT_LT(Rational(49, 100), Rational(1, 2));
  EXPECT_TRUE(in_unit_interval(Rational(1)));
  EXPECT_FALSE(in_unit_interval(Rational(-1, 9)));
}

TEST(Semiring, FiniteBuiltinsSatisfyLawsExhaustively) {
  for (const Semiring& s : {Semiring::boolean(), Semiring::integers_mod(2), Semiring::integers_mod(5),
                            Semiring::integers_mod(6)}) {
    const Report r = check_semiring_laws(s, 0, kDefaultSeed);
    EXPECT_TRUE(r.ok()) << s.name();
    const std::size_t n = s.elements().size();
    EXPECT_EQ(r.find("distributive")->cases, n * n * n) << s.name();
  }
}

TEST(Semiring, InfiniteBuiltinsPassSampledLaws) {
  EXPECT_TRUE(check_semiring_laws(Semiring::natural(), 300, kDefaultSeed).ok());
  EXPECT_TRUE(check_semiring_laws(Semiring::nonneg_rationals(), 300, kDefaultSeed).ok());
}

TEST(Semiring, BrokenTableIsCaught) {
  // Addition is not commutative here.
  auto bad = Semiring::table("bad", {{0, 1}, {0, 1}}, {{0, 0}, {0, 1}}, 0, 1);
  const Report r = check_semiring_laws(bad, 0, kDefaultSeed);
  EXPECT_FALSE(r.ok());
  EXPECT_THROW(classify_semiring(bad, 10, kDefaultSeed), LawViolation);
}

TEST(Semiring, ClassifyMatchesKnownProfiles) {
  const auto n = classify_semiring(Semiring::natural(), 200, kDefaultSeed);
  EXPECT_TRUE(n.nontrivial && n.zerosumfree && n.integral);
  EXPECT_FALSE(n.semifield);
  const auto q = classify_semiring(Semiring::nonneg_rationals(), 200, kDefaultSeed);
  EXPECT_TRUE(q.semifield && q.nontrivial && q.zerosumfree && q.integral);
  const auto b = classify_semiring(Semiring::boolean(), 0, kDefaultSeed);
  EXPECT_TRUE(b.semifield);
  const auto z6 = classify_semiring(Semiring::integers_mod(6), 0, kDefaultSeed);
  EXPECT_FALSE(z6.integral);
  EXPECT_EQ(z6.witness["zero_divisor"], (json{"2", "3"}));
  const auto z5 = classify_semiring(Semiring::integers_mod(5), 0, kDefaultSeed);
  EXPECT_TRUE(z5.integral);
  EXPECT_FALSE(z5.zerosumfree);
}

// Independent oracle: integral iff no pair multiplies to zero, found by a plain double loop.
TEST(Semiring, IntegralityOracleAgreesOnZn) {
  for (unsigned n = 2; n <= 12; ++n) {
    bool oracle = true;
    for (unsigned a = 1; a < n; ++a)
      for (unsigned b = 1; b < n; ++b) oracle = oracle && (a * b) % n != 0;
    EXPECT_EQ(classify_semiring(Semiring::integers_mod(n), 0, kDefaultSeed).integral, oracle) << n;
  }
}

TEST(Semiring, SemifieldImpliesOtherFlags) {
  for (const Semiring& s : {Semiring::boolean(), Semiring::natural(), Semiring::nonneg_rationals(),
                            Semiring::integers_mod(3), Semiring::integers_mod(4)}) {
    const auto p = classify_semiring(s, 100, kDefaultSeed);
    if (p.semifield) {
      EXPECT_TRUE(p.nontrivial && p.zerosumfree && p.integral) << s.name();
    }
  }
}

TEST(SupportHom, NaturalNumbers) {
  const auto h = support_hom(Semiring::natural());
  EXPECT_EQ(h(Rational(3)), Rational(1));
  EXPECT_EQ(h(Rational(0)), Rational(0));
  EXPECT_TRUE(check_semiring_hom(h, 300, kDefaultSeed).ok());
}

TEST(SupportHom, BooleanIsIdentity) {
  const auto h = support_hom(Semiring::boolean());
  for (const Rational& x : Semiring::boolean().elements()) EXPECT_EQ(h(x), x);
}

TEST(SupportHom, RationalsZeroIffZero) {
  const auto h = support_hom(Semiring::nonneg_rationals());
  Rng rng(7);
  for (int i = 0; i < 200; ++i) {
    const Rational x = Semiring::nonneg_rationals().sample(rng);
    EXPECT_EQ(h(x).is_zero(), x.is_zero());
  }
}

TEST(SupportHom, Z6IsNotEligible) {
  try {
    (void)support_hom(Semiring::integers_mod(6));
    FAIL() << "expected NotEligible";
  } catch (const NotEligible& e) {
    EXPECT_EQ(e.witness()["zero_divisor"], (json{"2", "3"}));
  }
}

TEST(SupportHom, ZnWithNonzeroSumIsNotEligible) {
  EXPECT_THROW((void)support_hom(Semiring::integers_mod(5)), NotEligible);
}
