#include <gtest/gtest.h>

#include <map>

#include "duality/formal.hpp"

using namespace duality;

namespace {

const Semiring Q = Semiring::nonneg_rationals();
const Semiring B = Semiring::boolean();
const Semiring N = Semiring::natural();

using Sum = FormalSum<std::string>;

Sum sum(const Semiring& s, std::vector<std::pair<Rational, std::string>> raw) { return Sum::normalize(s, raw); }

// Independent oracle for mu: expand the outer sum into a plain map with
// Rational arithmetic, no use of the library's merge code.
std::map<std::string, Rational> oracle_mult_q(const std::vector<std::pair<Rational, std::map<std::string, Rational>>>& outer) {
  std::map<std::string, Rational> acc;
  for (const auto& [c, inner] : outer)
    for (const auto& [x, d] : inner) acc[x] = acc[x] + c * d;
  std::erase_if(acc, [](const auto& kv) { return kv.second.is_zero(); });
  return acc;
}

std::map<std::string, Rational> as_map(const Sum& s) { return {s.terms().begin(), s.terms().end()}; }

}  // namespace

TEST(Normalize, MergesDuplicates) {
  EXPECT_EQ(render(sum(Q, {{Rational(1, 2), "x"}, {Rational(1, 2), "x"}})), "1*x");
}

TEST(Normalize, DropsZeros) { EXPECT_EQ(render(sum(Q, {{Rational(0), "x"}, {Rational(1), "y"}})), "1*y"); }

TEST(Normalize, SortsKeys) {
  EXPECT_EQ(render(sum(Q, {{Rational(2, 3), "y"}, {Rational(1, 3), "x"}})), "1/3*x + 2/3*y");
}

TEST(Normalize, IsIdempotent) {
  Rng rng(11);
  for (int i = 0; i < 100; ++i) {
    auto s = detail::random_sum(Q, std::vector<std::string>{"a", "b", "c", "d"}, MonadKind::multiset, rng, 4);
    std::vector<std::pair<Rational, std::string>> raw;
    for (const auto& [x, c] : s.terms()) raw.emplace_back(c, x);
    EXPECT_EQ(Sum::normalize(Q, raw), s);
  }
}

TEST(Normalize, RejectsForeignCoefficient) {
  EXPECT_THROW(sum(N, {{Rational(1, 2), "x"}}), InvalidStructure);
}

TEST(Unit, SingletonSum) {
  EXPECT_EQ(render(unit(Q, std::string("a"))), "1*a");
  EXPECT_EQ(render(unit(Q, std::string("b"))), "1*b");
  const auto u = unit(Q, std::string("a"));
  EXPECT_EQ(Sum::normalize(Q, {{Rational(1), "a"}}), u);
}

TEST(Mult, HalfHalfExample) {
  const Sum phi1 = sum(Q, {{Rational(1, 2), "x"}, {Rational(1, 2), "y"}});
  const Sum phi2 = sum(Q, {{Rational(1), "y"}});
  const auto outer = FormalSum<Sum>::normalize(Q, {{Rational(1, 2), phi1}, {Rational(1, 2), phi2}});
  const Sum got = mult(outer);
  EXPECT_EQ(as_map(got), oracle_mult_q({{Rational(1, 2), as_map(phi1)}, {Rational(1, 2), as_map(phi2)}}));
  EXPECT_EQ(render(got), "1/4*x + 3/4*y");
}

TEST(Mult, UnitLawInstance) {
  const auto outer = unit(Q, unit(Q, std::string("x")));
  EXPECT_EQ(render(mult(outer)), "1*x");
}

TEST(Mult, BooleanUnion) {
  const Sum phi1 = sum(B, {{Rational(1), "x"}});
  const Sum phi2 = sum(B, {{Rational(1), "y"}});
  const auto outer = FormalSum<Sum>::normalize(B, {{Rational(1), phi1}, {Rational(1), phi2}});
  EXPECT_EQ(render(mult(outer)), "1*x + 1*y");
  // Overlapping supports collapse under join.
  const auto outer2 = FormalSum<Sum>::normalize(B, {{Rational(1), sum(B, {{Rational(1), "x"}, {Rational(1), "y"}})}, {Rational(1), phi2}});
  EXPECT_EQ(render(mult(outer2)), "1*x + 1*y");
}

TEST(Mult, MixedCarrierThrows) {
  const auto outer = FormalSum<Sum>::normalize(Q, {{Rational(1), unit(B, std::string("x"))}});
  EXPECT_THROW(mult(outer), MixedCarrier);
}

TEST(Mult, PreservesDistributionMass) {
  Rng rng(5);
  std::vector<std::string> carrier{"a", "b", "c"};
  for (int i = 0; i < 100; ++i) {
    std::vector<Sum> pool;
    for (int k = 0; k < 4; ++k) pool.push_back(detail::random_sum(Q, carrier, MonadKind::distribution, rng, 3));
    const auto outer = detail::random_sum(Q, pool, MonadKind::distribution, rng, 3);
    EXPECT_EQ(mult(outer).mass(), Rational(1));
  }
}

TEST(MapSum, ConstantCollisionMerges) {
  const Sum phi = sum(Q, {{Rational(1, 3), "x"}, {Rational(2, 3), "y"}});
  EXPECT_EQ(render(map_sum([](const std::string&) { return std::string("c"); }, phi)), "1*c");
}

TEST(MapSum, IdentityAndInjective) {
  const Sum phi = sum(Q, {{Rational(1, 3), "x"}, {Rational(2, 3), "y"}});
  EXPECT_EQ(map_sum([](const std::string& s) { return s; }, phi), phi);
  EXPECT_EQ(render(map_sum([](const std::string& s) { return s + "'"; }, phi)), "1/3*x' + 2/3*y'");
}

TEST(Strength, Examples) {
  const Sum v = sum(Q, {{Rational(1, 2), "x"}, {Rational(1, 2), "y"}});
  EXPECT_EQ(render(strength(std::string("a"), v)), "1/2*(a,x) + 1/2*(a,y)");
  EXPECT_EQ(render(strength_swapped(v, std::string("b"))), "1/2*(x,b) + 1/2*(y,b)");
  EXPECT_EQ(render(strength(std::string("a"), unit(Q, std::string("y")))), "1*(a,y)");
}

TEST(Strength, DoubleStrengthProductWeights) {
  const Sum u = sum(Q, {{Rational(1, 2), "x1"}, {Rational(1, 2), "x2"}});
  const Sum v = sum(Q, {{Rational(1, 3), "y1"}, {Rational(2, 3), "y2"}});
  // Oracle: the product distribution u(x) * v(y).
  std::map<std::pair<std::string, std::string>, Rational> oracle;
  for (const auto& [x, a] : u.terms())
    for (const auto& [y, b] : v.terms()) oracle[{x, y}] = a * b;
  const auto left = double_strength_left(u, v);
  const auto right = double_strength_right(u, v);
  EXPECT_EQ(left, right);
  EXPECT_EQ((std::map<std::pair<std::string, std::string>, Rational>(left.terms().begin(), left.terms().end())), oracle);
  EXPECT_EQ(render(left), "1/6*(x1,y1) + 1/3*(x1,y2) + 1/6*(x2,y1) + 1/3*(x2,y2)");
}

TEST(ParseFormalSum, TextForm) {
  EXPECT_EQ(parse_formal_sum(Q, "1/2*x + 1/2*y"), sum(Q, {{Rational(1, 2), "x"}, {Rational(1, 2), "y"}}));
  EXPECT_EQ(render(parse_formal_sum(Q, "1/4*x + 1/4*x + y")), "1/2*x + 1*y");
  EXPECT_EQ(parse_formal_sum(Q, "0"), Sum(Q));
  EXPECT_THROW(parse_formal_sum(Q, "1/2*x +"), ParseError);
  EXPECT_THROW(parse_formal_sum(Q, "1/2*"), ParseError);
  Rng rng(3);
  for (int i = 0; i < 50; ++i) {
    auto s = detail::random_sum(Q, std::vector<std::string>{"a", "b", "c"}, MonadKind::multiset, rng, 3);
    EXPECT_EQ(parse_formal_sum(Q, render(s)), s);
  }
}

TEST(ChangeScalars, SupportHomOnNaturals) {
  const auto h = support_hom(N);
  EXPECT_EQ(render(change_scalars(h, sum(N, {{Rational(2), "x"}, {Rational(3), "y"}}))), "1*x + 1*y");
  EXPECT_EQ(change_scalars(h, sum(N, {{Rational(2), "x"}})).semiring(), B);
}

TEST(ChangeScalars, IdentityHom) {
  const Sum phi = sum(Q, {{Rational(1, 3), "x"}, {Rational(2, 3), "y"}});
  EXPECT_EQ(change_scalars(identity_hom(Q), phi), phi);
}

TEST(ChangeScalars, RationalsToBooleans) {
  const auto h = support_hom(Q);
  const auto out = change_scalars(h, sum(Q, {{Rational(1, 2), "x"}, {Rational(1, 2), "y"}}));
  EXPECT_EQ(render(out), "1*x + 1*y");
  EXPECT_TRUE(out.is_distribution());
}

TEST(ChangeScalars, CommutesWithUnitAndMult) {
  const std::vector<std::string> carrier{"a", "b", "c"};
  EXPECT_TRUE(check_scalar_change(support_hom(N), carrier, MonadKind::multiset).ok());
  EXPECT_TRUE(check_scalar_change(support_hom(Q), carrier, MonadKind::distribution).ok());
  EXPECT_TRUE(check_scalar_change(identity_hom(B), carrier, MonadKind::multiset).ok());
}

TEST(MonadLaws, BooleanExhaustive) {
  for (auto kind : {MonadKind::multiset, MonadKind::distribution}) {
    const Report r = check_monad_laws(B, {"a", "b"}, kind);
    EXPECT_TRUE(r.ok());
    EXPECT_EQ(r.find("associativity")->detail["mode"], "exhaustive");
  }
}

TEST(MonadLaws, BooleanDistributionsAreNonemptySubsets) {
  // D over the Booleans: every distribution is a nonempty subset with all coefficients one.
  const auto all = detail::enumerate_sums(B, std::vector<std::string>{"a", "b", "c"}, MonadKind::distribution, 3);
  EXPECT_EQ(all.size(), 7u);
  for (const auto& d : all) {
    EXPECT_FALSE(d.empty());
    for (const auto& kv : d.terms()) EXPECT_EQ(kv.second, Rational(1));
  }
}

TEST(MonadLaws, RationalsSampled) {
  LawCheckOptions opt;
  opt.trials = 200;
  for (auto kind : {MonadKind::multiset, MonadKind::distribution}) {
    const Report r = check_monad_laws(Q, {"a", "b", "c"}, kind, opt);
    EXPECT_TRUE(r.ok());
    EXPECT_EQ(r.find("unit-left")->cases, 200u);
    EXPECT_EQ(r.find("associativity")->detail["mode"], "sampled");
  }
}

TEST(MonadLaws, NaturalsSampled) {
  EXPECT_TRUE(check_monad_laws(N, {"a", "b", "c", "d"}, MonadKind::multiset).ok());
  EXPECT_TRUE(check_monad_laws(N, {"a", "b", "c", "d"}, MonadKind::distribution).ok());
}

TEST(MonadLaws, CorruptedMultIsCaught) {
  // Skips merging: the last inner term written for an element wins.
  auto bad1 = [](const FormalSum<Sum>& t) {
    typename Sum::Terms acc;
    for (const auto& [inner, c] : t.terms())
      for (const auto& [x, d] : inner.terms()) acc[x] = t.semiring().mul(c, d);
    return Sum::from_terms(t.semiring(), acc);
  };
  auto good2 = [](const FormalSum<FormalSum<Sum>>& t) { return mult(t); };
  const Report r = check_monad_laws_with(Q, {"a", "b", "c"}, MonadKind::distribution, LawCheckOptions{}, bad1, good2);
  EXPECT_FALSE(r.ok());
  EXPECT_THROW(r.require(), LawViolation);
  EXPECT_TRUE(r.find("associativity")->witness.contains("lhs"));
}

TEST(MonadLaws, SerialAndParallelAgree) {
  LawCheckOptions serial;
  serial.exec = Exec::serial;
  LawCheckOptions parallel;
  parallel.exec = Exec::parallel;
  for (auto kind : {MonadKind::multiset, MonadKind::distribution}) {
    const auto a = check_monad_laws(Q, {"a", "b", "c"}, kind, serial).records();
    const auto b = check_monad_laws(Q, {"a", "b", "c"}, kind, parallel).records();
    EXPECT_EQ(a, b);
  }
}

TEST(Commutativity, DistributionOverRationals) {
  const Report r = check_commutativity(Q, {"x1", "x2"}, {"y1", "y2"}, MonadKind::distribution);
  EXPECT_TRUE(r.ok());
}

TEST(Commutativity, BooleanMultisetExhaustive) {
  const Report r = check_commutativity(B, {"x1", "x2", "x3"}, {"y1", "y2", "y3"}, MonadKind::multiset);
  EXPECT_TRUE(r.ok());
  EXPECT_EQ(r.find("double-strength")->detail["mode"], "exhaustive");
  EXPECT_EQ(r.find("double-strength")->cases, 64u);
}

TEST(Counting, SaturatesAtCap) {
  EXPECT_EQ(detail::count_sums(3, 3, 1, 1000), 8u);
  EXPECT_EQ(detail::count_sums(2, 2, 2, 1000), 9u);
  EXPECT_EQ(detail::count_sums(100, 4, 5, 1000), 1001u);
}
