#include <gtest/gtest.h>

#include "duality/semimod.hpp"

using namespace duality;

namespace {

const Semiring& Q = rationals();

ConvexAlgebra point() { return ConvexAlgebra::semilattice("pt", {"*"}, {{0}}); }
ConvexAlgebra two() { return ConvexAlgebra::semilattice("2", {"0", "1"}, {{0, 0}, {0, 1}}); }
ConvexAlgebra diamond() {
  return ConvexAlgebra::semilattice("M2", {"0", "a", "b", "1"},
                                    {{0, 0, 0, 0}, {0, 1, 0, 1}, {0, 0, 2, 2}, {0, 1, 2, 3}});
}
ConvexAlgebra ab() { return ConvexAlgebra::simplex("ab", {"a", "b"}); }
ConvexAlgebra segment() { return ConvexAlgebra::polytope("[0,1]", 1, {{Rational(0)}, {Rational(1)}}); }
ConvexAlgebra square() {
  return ConvexAlgebra::polytope("square", 2,
                                 {{Rational(0), Rational(0)}, {Rational(1), Rational(0)},
                                  {Rational(0), Rational(1)}, {Rational(1), Rational(1)}});
}

ConvexElement vertex(const std::string& l) { return Distribution<std::string>::unit(Q, l); }

// {bot, top} join semilattice.
Semimodule join2() { return Semimodule::join_semilattice("J2", {"bot", "top"}, {{0, 1}, {1, 1}}); }

}  // namespace

TEST(FAdd, ZeroIsNeutral) {
  const auto u = FElement::pair(Rational(1), std::string("1"));
  EXPECT_EQ(f_add(two(), u, FElement::zero()), u);
  EXPECT_EQ(f_add(two(), FElement::zero(), u), u);
}

TEST(FAdd, OnePointCollapses) {
  const auto got = f_add(point(), FElement::pair(Rational(2, 3), std::string("*")), FElement::pair(Rational(5), std::string("*")));
  EXPECT_EQ(got, FElement::pair(Rational(2, 3) + Rational(5), std::string("*")));
}

TEST(FAdd, SimplexPairsAverage) {
  const auto got = f_add(ab(), FElement::pair(Rational(1), vertex("a")), FElement::pair(Rational(1), vertex("b")));
  const auto half = Distribution<std::string>::normalize(Q, {{Rational(1, 2), "a"}, {Rational(1, 2), "b"}});
  EXPECT_EQ(got, FElement::pair(Rational(2), half));
  // Unequal weights: (1,a) + (3,b) = (4, 1/4 a + 3/4 b).
  const auto got2 = f_add(ab(), FElement::pair(Rational(1), vertex("a")), FElement::pair(Rational(3), vertex("b")));
  EXPECT_EQ(got2, FElement::pair(Rational(4), Distribution<std::string>::normalize(Q, {{Rational(1, 4), "a"}, {Rational(3, 4), "b"}})));
}

TEST(FSmul, Cases) {
  const auto u = FElement::pair(Rational(2), std::string("1"));
  EXPECT_TRUE(f_smul(Rational(0), u).is_zero());
  EXPECT_EQ(f_smul(Rational(1), u), u);
  EXPECT_EQ(f_smul(Rational(3), u), FElement::pair(Rational(6), std::string("1")));
  EXPECT_TRUE(f_smul(Rational(3), FElement::zero()).is_zero());
  EXPECT_THROW(FElement::pair(Rational(0), std::string("1")), ScalarOutOfRange);
}

TEST(SemimoduleAxioms, BuiltinVariants) {
  EXPECT_TRUE(check_semimodule_axioms(Semimodule::nonneg_orthant(2)).ok());
  EXPECT_TRUE(check_semimodule_axioms(Semimodule::free_multiset({"a", "b", "c"})).ok());
  const Report j = check_semimodule_axioms(join2());
  EXPECT_TRUE(j.ok());
  EXPECT_EQ(j.find("add-associative")->detail["mode"], "exhaustive");
  for (const auto& x : {two(), diamond(), ab(), segment(), square()}) {
    EXPECT_TRUE(check_semimodule_axioms(Semimodule::free_on_convex(x)).ok()) << x.name();
  }
}

TEST(SemimoduleAxioms, CorruptedAddFailsAssociativity) {
  const auto x = ConvexAlgebra::simplex("abc", {"a", "b", "c"});
  const auto fx = Semimodule::free_on_convex(x);
  SemimoduleOps ops = SemimoduleOps::standard(fx);
  // Ignores the weights s/(s+t).
  ops.add = [x](const ModElement& a, const ModElement& b) -> ModElement {
    const auto& u = std::get<FElement>(a);
    const auto& v = std::get<FElement>(b);
    if (u.is_zero()) return v;
    if (v.is_zero()) return u;
    return FElement{u.scalar + v.scalar, x.ternary(Rational(1, 2), *u.base, *v.base)};
  };
  const Report r = check_semimodule_axioms(fx, ops);
  ASSERT_FALSE(r.ok());
  EXPECT_EQ(r.first_failure()->name, "add-associative");
  EXPECT_THROW(r.require(), LawViolation);
}

TEST(Transpose, ConstantTopIntoJoinSemilattice) {
  const auto y = join2();
  const auto x = diamond();
  const auto up = transpose_up(x, y, [](const ConvexElement&) -> ModElement { return std::string("top"); });
  EXPECT_EQ(up(FElement::zero()), ModElement(std::string("bot")));
  for (const auto& e : x.generators()) {
    EXPECT_EQ(up(FElement::pair(Rational(3, 7), e)), ModElement(std::string("top")));
  }
}

TEST(Transpose, SegmentIntoRationalLine) {
  const auto x = segment();
  const auto y = Semimodule::nonneg_orthant(1);
  const auto up = transpose_up(x, y, [](const ConvexElement& e) -> ModElement { return std::get<HullPoint>(e).coords; });
  const auto q = x.point({Rational(2, 5)});
  EXPECT_EQ(up(FElement::pair(Rational(3), q)), ModElement(linalg::Vec{Rational(6, 5)}));
  EXPECT_EQ(up(FElement::zero()), ModElement(linalg::Vec{Rational(0)}));
  EXPECT_TRUE(check_semimodule_hom(Semimodule::free_on_convex(x), y, up).ok());
}

TEST(Transpose, NonAffineIsRejected) {
  const auto x = segment();
  const auto y = Semimodule::nonneg_orthant(1);
  auto square_map = [](const ConvexElement& e) -> ModElement {
    const Rational t = std::get<HullPoint>(e).coords[0];
    return linalg::Vec{t * t};
  };
  EXPECT_THROW(transpose_up(x, y, square_map), NotAffine);
}

TEST(Transpose, NonHomIsRejected) {
  const auto x = ab();
  const auto y = Semimodule::nonneg_orthant(1);
  // Ignores the scalar, so not homogeneous.
  ModMap g = [](const ModElement& a) -> ModElement {
    const auto& u = std::get<FElement>(a);
    return linalg::Vec{u.is_zero() ? Rational(0) : Rational(1)};
  };
  EXPECT_THROW(transpose_down(x, y, g), NotHomomorphism);
}

TEST(Transpose, TrivialCodomain) {
  const auto x = ab();
  const auto y = Semimodule::nonneg_orthant(0);
  ModMap g = [](const ModElement&) -> ModElement { return linalg::Vec{}; };
  const auto down = transpose_down(x, y, g);
  EXPECT_EQ(down(vertex("a")), ModElement(linalg::Vec{}));
}

TEST(Transpose, RoundTripsPerFamily) {
  for (const auto& x : {two(), diamond(), ab(), ConvexAlgebra::simplex("abcd", {"a", "b", "c", "d"}), segment(), square()}) {
    const Report r = check_transposition(x, 100);
    EXPECT_TRUE(r.ok()) << x.name() << " " << (r.ok() ? "" : r.first_failure()->witness.dump());
    EXPECT_EQ(r.find("down-up-identity")->cases, 100u);
  }
}

TEST(Transpose, ProbesAreDeterministic) {
  const auto x = square();
  const auto a = check_transposition(x, 10, 99, Exec::serial).records();
  const auto b = check_transposition(x, 10, 99, Exec::parallel).records();
  EXPECT_EQ(a, b);
}

TEST(Transpose, NaturalityUnderPostComposition) {
  // h: Q>=0^2 -> Q>=0^1, (u, v) |-> u + 2v.
  const auto x = square();
  const auto y = Semimodule::nonneg_orthant(2);
  const auto z = Semimodule::nonneg_orthant(1);
  ModMap h = [](const ModElement& a) -> ModElement {
    const auto& v = std::get<linalg::Vec>(a);
    return linalg::Vec{v[0] + Rational(2) * v[1]};
  };
  ASSERT_TRUE(check_semimodule_hom(y, z, h).ok());
  ConvexCheckOptions light;
  light.grid = {Rational(0), Rational(1), Rational(1, 2), Rational(1, 3)};
  light.samples = 8;
  for (const auto& p : transposition_probes(x, 20, 5)) {
    const auto lhs = transpose_up(x, z, [&](const ConvexElement& e) { return h(p.f(e)); }, light);
    const auto rhs_inner = transpose_up(x, y, p.f, light);
    Rng rng(8);
    const auto fx = Semimodule::free_on_convex(x);
    for (int k = 0; k < 10; ++k) {
      const auto u = fx.sample(rng);
      EXPECT_EQ(lhs(u), h(rhs_inner(u)));
    }
  }
}

TEST(JoinSemilattice, RequiresBottom) {
  // Two incomparable atoms with no bottom cannot be a join table; a three-element V with no bottom.
  EXPECT_THROW(Semimodule::join_semilattice("V", {"a", "b", "t"}, {{0, 2, 2}, {2, 1, 2}, {2, 2, 2}}), InvalidStructure);
}
