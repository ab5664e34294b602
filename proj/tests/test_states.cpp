#include <gtest/gtest.h>

#include "duality/states.hpp"

using namespace duality;
using linalg::Vec;

namespace {

using EA = EffectAlgebra;

Vec v(std::initializer_list<Rational> xs) { return Vec(xs); }

// Oracle: vertices in the original variables. Every subset of bound
// constraints is made tight together with all equalities; a vertex is a
// unique solution satisfying every bound.
std::vector<Vec> brute_vertices(const EA& e) {
  const std::size_t n = e.size();
  linalg::Mat eq;
  Vec rhs;
  auto unit = [&](std::size_t i) {
    Vec r = linalg::zeros(n);
    r[i] = Rational(1);
    return r;
  };
  eq.push_back(unit(e.one()));
  rhs.push_back(Rational(1));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (const auto s = e.sum(a, b)) {
        Vec r = linalg::zeros(n);
        r[a] += Rational(1);
        r[b] += Rational(1);
        r[*s] -= Rational(1);
        eq.push_back(r);
        rhs.push_back(Rational(0));
      }
  std::vector<Vec> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << (2 * n)); ++mask) {
    if (mask & (mask >> 1) & 0x5555555555555555ULL) continue;  // f(i)=0 and f(i)=1 together
    linalg::Mat a = eq;
    Vec b = rhs;
    for (std::size_t i = 0; i < n; ++i) {
      if ((mask >> (2 * i)) & 1U) {
        a.push_back(unit(i));
        b.push_back(Rational(0));
      }
      if ((mask >> (2 * i + 1)) & 1U) {
        a.push_back(unit(i));
        b.push_back(Rational(1));
      }
    }
    if (linalg::rank(a, n) != n) continue;
    const auto x = linalg::solve(a, b, n);
    if (!x) continue;
    bool ok = true;
    for (const auto& r : *x) ok = ok && r.sign() >= 0 && r <= Rational(1);
    if (ok && std::find(out.begin(), out.end(), *x) == out.end()) out.push_back(*x);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Vec> values(const StateSpace& s) {
  std::vector<Vec> out;
  for (const auto& x : s.extremes) out.push_back(x.values);
  return out;
}

}  // namespace

TEST(StateSpace, Mo2IsASegment) {
  const auto s = state_space(EA::mo2());
  EXPECT_TRUE(s.feasible);
  EXPECT_EQ(s.freedom, 1U);
  // elements 0, p, p_perp, 1
  EXPECT_EQ(values(s), (std::vector<Vec>{v({0, 0, 1, 1}), v({0, 1, 0, 1})}));
  for (const auto& x : s.extremes) EXPECT_EQ(x.rank, 4U);
}

TEST(StateSpace, PowersetPointMasses) {
  const auto e = EA::powerset(3);
  const auto s = state_space(e);
  ASSERT_EQ(s.extremes.size(), 3U);
  for (const auto& x : s.extremes) {
    int atoms = 0;
    for (const char* a : {"{0}", "{1}", "{2}"}) atoms += x.values[e.index_of(a)] == Rational(1) ? 1 : 0;
    EXPECT_EQ(atoms, 1);
  }
}

TEST(StateSpace, IntervalNatUnique) {
  for (std::size_t m = 1; m <= 6; ++m) {
    const auto s = state_space(EA::interval_nat(m));
    ASSERT_EQ(s.extremes.size(), 1U);
    EXPECT_EQ(s.freedom, 0U);
    for (std::size_t k = 0; k <= m; ++k) {
      EXPECT_EQ(s.extremes[0].values[k], Rational(static_cast<long>(k), static_cast<long>(m)));
    }
  }
  EXPECT_TRUE(check_unique_interval_state(24).ok());
}

TEST(StateSpace, MatchesBruteForceOracle) {
  for (const auto& e : {EA::two(), EA::mo2(), EA::interval_nat(3), EA::powerset(2), EA::powerset(3),
                        EA::product(EA::mo2(), EA::two()), EA::coproduct(EA::mo2(), EA::interval_nat(2)),
                        EA::coproduct(EA::interval_nat(2), EA::interval_nat(3))}) {
    EXPECT_EQ(values(state_space(e)), brute_vertices(e)) << e.name();
  }
}

TEST(StateSpace, SerialMatchesParallel) {
  const auto e = EA::powerset(4);
  EXPECT_EQ(values(state_space(e, Exec::serial)), values(state_space(e, Exec::parallel)));
  EXPECT_EQ(state_space(e).extremes.size(), 4U);
}

TEST(StateSpace, InfeasibleIsEmpty) {
  // An effect-algebra-shaped table where a + a = 1 and a + a + a would be needed: a + a = 1, b + b = a, b + a undefined.
  const auto e = EA::table("odd", {"0", "a", "b", "1"},
                           {{"0", "0", "0"}, {"0", "a", "a"}, {"0", "b", "b"}, {"0", "1", "1"}, {"a", "a", "1"},
                            {"b", "b", "a"}, {"b", "a", "b"}},
                           "0", "1");
  const auto s = state_space(e);
  EXPECT_FALSE(s.feasible);
  EXPECT_TRUE(s.extremes.empty());
}

TEST(Mixing, Examples) {
  const auto e = EA::mo2();
  const auto s = state_space(e);
  const auto mid = convex_mix_states(e, {{Rational(1, 2), s.extremes[0].values}, {Rational(1, 2), s.extremes[1].values}});
  EXPECT_EQ(mid[e.index_of("p")], Rational(1, 2));
  EXPECT_EQ(convex_mix_states(e, {{Rational(1), s.extremes[0].values}}), s.extremes[0].values);

  const auto p3 = EA::powerset(3);
  const auto sp = state_space(p3);
  // Extremes sorted by value vector; identify each by its atom.
  Vec delta[3];
  for (const auto& x : sp.extremes)
    for (int i = 0; i < 3; ++i)
      if (x.values[p3.index_of("{" + std::to_string(i) + "}")] == Rational(1)) delta[i] = x.values;
  const auto mix = convex_mix_states(
      p3, {{Rational(1, 6), delta[0]}, {Rational(1, 3), delta[1]}, {Rational(1, 2), delta[2]}});
  EXPECT_EQ(mix[p3.index_of("{0}")], Rational(1, 6));
  EXPECT_EQ(mix[p3.index_of("{1}")], Rational(1, 3));
  EXPECT_EQ(mix[p3.index_of("{2}")], Rational(1, 2));
  EXPECT_EQ(mix[p3.index_of("{0,2}")], Rational(2, 3));
  EXPECT_THROW(convex_mix_states(p3, {{Rational(1, 2), delta[0]}}), InvalidStructure);
  EXPECT_THROW(convex_mix_states(p3, {{Rational(1), Vec(8, Rational(0))}}), HomViolation);
}

TEST(Precompose, Examples) {
  const auto e = EA::mo2();
  const auto s = state_space(e);
  const auto init = enumerate_ea_homs(EA::two(), e).front();
  for (const auto& x : s.extremes) EXPECT_EQ(state_precompose(EA::two(), e, init, x.values), v({0, 1}));
  const EAMap id{0, 1, 2, 3};
  EXPECT_EQ(state_precompose(e, e, id, s.extremes[1].values), s.extremes[1].values);

  const auto d = EA::interval_nat(2);
  const auto c = EA::coproduct(e, d);
  const auto sc = state_space(c);
  const auto inl = injection(e, d, 0);
  for (const auto& x : sc.extremes) EXPECT_TRUE(is_state(e, state_precompose(e, c, inl, x.values)));
}

TEST(Precompose, MixingCommutes) {
  const std::vector<EA> sources{EA::two(), EA::mo2(), EA::interval_nat(2), EA::powerset(2)};
  for (const auto& e : {EA::mo2(), EA::powerset(3), EA::product(EA::mo2(), EA::interval_nat(2))}) {
    const auto r = check_state_space(state_space(e), sources);
    EXPECT_TRUE(r.ok()) << json(r.records()).dump();
  }
}

TEST(Functionals, SimplexAndSegment) {
  const AffineFunctionalAlgebra ab(ConvexAlgebra::simplex("ab", {"a", "b"}));
  const auto f = ab.make(v({Rational(1, 4), Rational(1, 2)}));
  EXPECT_EQ(ab.ortho(f), v({Rational(3, 4), Rational(1, 2)}));
  EXPECT_TRUE(ab.defined(f, v({Rational(3, 4), Rational(1, 2)})));
  EXPECT_FALSE(ab.defined(f, v({Rational(4, 5), Rational(0)})));

  const AffineFunctionalAlgebra seg(ConvexAlgebra::polytope("[0,1]", 1, {{Rational(0)}, {Rational(1)}}));
  EXPECT_TRUE(seg.dependencies().empty());
  const auto g = seg.make(v({Rational(1, 5), Rational(3, 5)}));
  EXPECT_EQ(seg.value(g, seg.base().point({Rational(1, 2)})), Rational(2, 5));

  // Midpoint generator: f(1/2) must be the average of f(0) and f(1).
  const AffineFunctionalAlgebra seg3(
      ConvexAlgebra::polytope("seg3", 1, {{Rational(0)}, {Rational(1, 2)}, {Rational(1)}}));
  EXPECT_EQ(seg3.dependencies().size(), 1U);
  EXPECT_NO_THROW((void)seg3.make(v({Rational(0), Rational(1, 4), Rational(1, 2)})));
  EXPECT_THROW((void)seg3.make(v({Rational(0), Rational(1, 3), Rational(1, 2)})), DependentGeneratorsUnsatisfiable);
  EXPECT_THROW((void)seg3.make(v({Rational(0), Rational(1), Rational(2)})), ScalarOutOfRange);
}

TEST(Functionals, EffectAxioms) {
  const std::vector<ConvexAlgebra> xs{
      ConvexAlgebra::simplex("ab", {"a", "b"}), ConvexAlgebra::simplex("abcd", {"a", "b", "c", "d"}),
      ConvexAlgebra::polytope("square", 2,
                              {{Rational(0), Rational(0)}, {Rational(1), Rational(0)}, {Rational(0), Rational(1)},
                               {Rational(1), Rational(1)}})};
  for (const auto& x : xs) {
    const AffineFunctionalAlgebra a(x);
    const auto r = check_functional_effect_axioms(a);
    EXPECT_TRUE(r.ok()) << json(r.records()).dump();
    const auto c = check_counit_epsilon(a);
    EXPECT_TRUE(c.ok()) << json(c.records()).dump();
  }
}

TEST(Unit, Mo2Eta) {
  const auto e = EA::mo2();
  const auto s = state_space(e);
  EXPECT_EQ(unit_eta(s, e.index_of("p")), v({0, 1}));
  EXPECT_EQ(unit_eta(s, e.one()), v({1, 1}));
  EXPECT_EQ(unit_eta(s, e.zero()), v({0, 0}));
  for (const auto& x : {EA::mo2(), EA::powerset(3), EA::interval_nat(4), EA::coproduct(EA::mo2(), EA::mo2())}) {
    const auto r = check_unit_eta(state_space(x));
    EXPECT_TRUE(r.ok()) << json(r.records()).dump();
  }
}

TEST(Counit, SimplexExamples) {
  const auto x = ConvexAlgebra::simplex("ab", {"a", "b"});
  const AffineFunctionalAlgebra a(x);
  const auto f = a.make(v({Rational(1, 4), Rational(3, 5)}));
  const ConvexElement half = Distribution<std::string>::normalize(
      rationals(), std::vector<std::pair<Rational, std::string>>{{Rational(1, 2), "a"}, {Rational(1, 2), "b"}});
  EXPECT_EQ(counit_epsilon(a, half, f), Rational(1, 2) * Rational(1, 4) + Rational(1, 2) * Rational(3, 5));
  EXPECT_EQ(counit_epsilon(a, x.generators()[0], f), Rational(1, 4));

  // phi = 1/3 a + 2/3 b across 5 seeded functionals.
  const auto phi = Distribution<ConvexElement>::normalize(
      rationals(), std::vector<std::pair<Rational, ConvexElement>>{{Rational(1, 3), x.generators()[0]},
                                                                   {Rational(2, 3), x.generators()[1]}});
  Rng rng(kDefaultSeed);
  for (int i = 0; i < 5; ++i) {
    const auto g = a.sample(rng);
    EXPECT_EQ(counit_epsilon(a, x.evaluate(phi), g), Rational(1, 3) * g[0] + Rational(2, 3) * g[1]);
  }
}

TEST(Adjunction, TrianglesAndComposite) {
  const AffineFunctionalAlgebra abc(ConvexAlgebra::simplex("abc", {"a", "b", "c"}));
  for (const auto& e : {EA::mo2(), EA::powerset(3), EA::interval_nat(3)}) {
    const auto r = check_triangle_identities(state_space(e), abc);
    EXPECT_TRUE(r.ok()) << json(r.records()).dump();
  }
  const auto two = composed_adjunction_check({"a", "b"});
  EXPECT_TRUE(two.ok());
  EXPECT_EQ(two.find("operations-componentwise")->cases, 2401U);
  for (std::size_t n = 1; n <= 6; ++n) {
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < n; ++i) labels.push_back(std::string(1, static_cast<char>('a' + i)));
    EXPECT_TRUE(composed_adjunction_check(labels).ok()) << n;
  }
}
