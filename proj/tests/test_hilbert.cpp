#include <gtest/gtest.h>

#include "duality/hilbert.hpp"
#include "duality/states.hpp"

using namespace duality;
using linalg::Vec;

namespace {

using Sub = RationalSubspace;

Sub line(std::initializer_list<Rational> v) { return Sub::span(v.size(), {Vec(v)}); }

UnitVector a35() { return UnitVector::make({Rational(3, 5), Rational(4, 5)}); }

}  // namespace

TEST(Subspace, LatticeExamples) {
  const auto e1 = Sub::axis(2, 0), e2 = Sub::axis(2, 1);
  EXPECT_EQ(sub_join(e1, e2), Sub::full(2));
  EXPECT_EQ(sub_ortho(line({1, 1})), line({1, -1}));
  EXPECT_EQ(sub_ortho(line({1, 1})).name(), "span{(1,-1)}");
  EXPECT_EQ(sub_join(e1, sub_meet(sub_ortho(e1), Sub::full(2))), Sub::full(2));
  EXPECT_EQ(sub_meet(line({1, 1}), e1), Sub::zero(2));
  EXPECT_TRUE(sub_leq(e1, Sub::full(2)));
  EXPECT_FALSE(sub_leq(e1, e2));
  EXPECT_THROW(sub_join(e1, Sub::axis(3, 0)), DimensionMismatch);
  // Canonical form: different spanning sets give equal subspaces.
  EXPECT_EQ(Sub::span(3, {{1, 2, 3}, {2, 4, 7}}), Sub::span(3, {{0, 0, 1}, {3, 6, 0}}));
}

TEST(Subspace, LatticeLawsSampled) {
  for (std::size_t n : {2U, 3U}) {
    const auto r = check_subspace_lattice(n, 500);
    EXPECT_TRUE(r.ok()) << json(r.records()).dump();
    EXPECT_GE(r.find("orthomodular")->cases, 500U);
  }
}

TEST(Projection, Examples) {
  EXPECT_EQ(projection_norm_sq(a35(), Sub::axis(2, 0)), Rational(9, 25));
  EXPECT_EQ(projection_norm_sq(a35(), Sub::full(2)), Rational(1));
  EXPECT_EQ(projection_norm_sq(a35(), Sub::zero(2)), Rational(0));
  // Oracle for a line spanned by u: <a,u>^2 / <u,u>.
  const Vec u{Rational(1), Rational(2)};
  const Rational au = linalg::dot(a35().coords(), u);
  EXPECT_EQ(projection_norm_sq(a35(), Sub::span(2, {u})), au * au / linalg::dot(u, u));
  EXPECT_THROW(UnitVector::make({Rational(1), Rational(1)}), ScalarOutOfRange);
}

TEST(Family, ClosureExamples) {
  const auto d = ksub_effect_algebra(2, {Sub::axis(2, 0)});
  EXPECT_EQ(d.algebra.elements(), (std::vector<std::string>{"0", "span{(0,1)}", "span{(1,0)}", "Q^2"}));
  EXPECT_TRUE(find_isomorphism(d.algebra, EffectAlgebra::mo2()).has_value());

  const auto b = ksub_effect_algebra(3, {Sub::axis(3, 0), Sub::axis(3, 1), Sub::axis(3, 2)});
  EXPECT_EQ(b.members.size(), 8U);
  EXPECT_TRUE(find_isomorphism(b.algebra, EffectAlgebra::powerset(3)).has_value());

  const auto six = ksub_effect_algebra(2, {Sub::axis(2, 0), line({1, 1})});
  EXPECT_EQ(six.members.size(), 6U);
  // Not Boolean: no isomorphism to a powerset of the same size exists at all.
  EXPECT_EQ(state_space(six.algebra).extremes.size(), 4U);

  for (const auto* f : {&d, &b, &six}) {
    const auto r = check_effect_axioms(f->algebra);
    EXPECT_TRUE(r.ok()) << json(r.records()).dump();
  }
}

TEST(Family, ClosureTooLarge) {
  EXPECT_THROW(ksub_effect_algebra(3, {Sub::axis(3, 0), Sub::axis(3, 1), Sub::axis(3, 2)}, 7), ClosureTooLarge);
  EXPECT_NO_THROW(ksub_effect_algebra(3, {Sub::axis(3, 0), Sub::axis(3, 1), Sub::axis(3, 2)}, 8));
}

TEST(Epsilon, DiamondExample) {
  const auto d = ksub_effect_algebra(2, {Sub::axis(2, 0)});
  const auto eps = epsilon_state(a35(), d);
  const auto& e = d.algebra;
  EXPECT_EQ(eps[e.index_of("span{(1,0)}")], Rational(9, 25));
  EXPECT_EQ(eps[e.index_of("span{(0,1)}")], Rational(16, 25));
  EXPECT_EQ(eps[e.one()], Rational(1));
  EXPECT_EQ(eps[e.zero()], Rational(0));
  EXPECT_TRUE(check_epsilon_state(a35(), d).ok());
  EXPECT_TRUE(is_state(e, eps));
}

TEST(Epsilon, AdditiveAndMonotoneOnFamilies) {
  Rng rng(kDefaultSeed);
  const std::vector<SubspaceFamily> fams{
      ksub_effect_algebra(2, {Sub::axis(2, 0), line({1, 1})}),
      ksub_effect_algebra(3, {Sub::axis(3, 0), Sub::axis(3, 1), Sub::axis(3, 2)}),
      ksub_effect_algebra(3, {line({1, 1, 0}), Sub::axis(3, 2)})};
  for (const auto& f : fams) {
    for (int i = 0; i < 20; ++i) {
      const auto a = random_unit_vector(f.ambient, rng);
      const auto r = check_epsilon_state(a, f);
      EXPECT_TRUE(r.ok()) << json(r.records()).dump();
    }
  }
}

TEST(Convexity, Counterexample) {
  const auto w = convexity_counterexample();
  EXPECT_EQ(w.a, (Vec{Rational(3, 5), Rational(4, 5)}));
  EXPECT_EQ(w.b, (Vec{Rational(4, 5), Rational(3, 5)}));
  EXPECT_EQ(w.lambda, Rational(1, 2));
  EXPECT_EQ(w.k, Sub::axis(2, 0));
  EXPECT_EQ(w.mix, (Vec{Rational(7, 10), Rational(7, 10)}));
  EXPECT_FALSE(w.mix_is_unit);
  // Independent arithmetic: projection onto e1 is the squared first coordinate.
  EXPECT_EQ(w.at_mix, w.mix[0] * w.mix[0]);
  EXPECT_EQ(w.at_mix, Rational(49, 100));
  EXPECT_EQ(w.mixed, Rational(1, 2) * w.a[0] * w.a[0] + Rational(1, 2) * w.b[0] * w.b[0]);
  EXPECT_EQ(w.mixed, Rational(1, 2));

  const auto swapped = convexity_probe(UnitVector::make(w.b), UnitVector::make(w.a), w.lambda, w.k);
  EXPECT_EQ(swapped.at_mix - swapped.mixed, w.at_mix - w.mixed);
  const auto degenerate = convexity_probe(UnitVector::make(w.a), UnitVector::make(w.b), Rational(0), w.k);
  EXPECT_EQ(degenerate.at_mix, degenerate.mixed);
  EXPECT_EQ(to_json(w)["discrepancy"], "-1/100");
  EXPECT_EQ(convexity_counterexample(3).k, Sub::axis(3, 0));
}
