#include <gtest/gtest.h>

#include <set>

#include "duality/faces.hpp"

using namespace duality;

namespace {

ConvexAlgebra two() { return ConvexAlgebra::semilattice("2", {"0", "1"}, {{0, 0}, {0, 1}}); }

ConvexAlgebra diamond() {
  return ConvexAlgebra::semilattice("M2", {"0", "a", "b", "1"},
                                    {{0, 0, 0, 0}, {0, 1, 0, 1}, {0, 0, 2, 2}, {0, 1, 2, 3}});
}

ConvexAlgebra chain(std::size_t n) {
  std::vector<std::string> names;
  std::vector<std::vector<std::size_t>> meet(n, std::vector<std::size_t>(n));
  for (std::size_t i = 0; i < n; ++i) {
    names.push_back("c" + std::to_string(i));
    for (std::size_t j = 0; j < n; ++j) meet[i][j] = std::min(i, j);
  }
  return ConvexAlgebra::semilattice("chain" + std::to_string(n), names, meet);
}

// Powerset of {0,1,2} under intersection.
ConvexAlgebra cube() {
  std::vector<std::string> names;
  std::vector<std::vector<std::size_t>> meet(8, std::vector<std::size_t>(8));
  for (std::size_t i = 0; i < 8; ++i) {
    names.push_back("s" + std::to_string(i));
    for (std::size_t j = 0; j < 8; ++j) meet[i][j] = i & j;
  }
  return ConvexAlgebra::semilattice("P3", names, meet);
}

ConvexAlgebra segment() { return ConvexAlgebra::polytope("[0,1]", 1, {{Rational(0)}, {Rational(1)}}); }

ConvexAlgebra square() {
  return ConvexAlgebra::polytope("square", 2,
                                 {{Rational(0), Rational(0)}, {Rational(1), Rational(0)},
                                  {Rational(0), Rational(1)}, {Rational(1), Rational(1)}});
}

ConvexAlgebra simplex(std::size_t n) {
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) labels.push_back(std::string(1, static_cast<char>('a' + i)));
  return ConvexAlgebra::simplex("Delta" + std::to_string(n), labels);
}

// Oracle: a subset of a finite semilattice is a prime filter iff it is an
// upset closed under meets; scanned over all subsets by membership vectors.
std::vector<Mask> oracle_semilattice_filters(const ConvexAlgebra& x) {
  const std::size_t n = x.elements().size();
  auto leq = [&](std::size_t a, std::size_t b) { return x.meet(a, b) == a; };
  std::vector<Mask> out;
  for (Mask m = 0; m < (Mask{1} << n); ++m) {
    std::vector<bool> in(n);
    for (std::size_t i = 0; i < n; ++i) in[i] = (m >> i) & 1U;
    bool ok = true;
    for (std::size_t a = 0; a < n && ok; ++a)
      for (std::size_t b = 0; b < n && ok; ++b) {
        if (in[a] && leq(a, b) && !in[b]) ok = false;
        if (in[a] && in[b] && !in[x.meet(a, b)]) ok = false;
      }
    if (ok) out.push_back(m);
  }
  return out;
}

ConvexCheckOptions light() {
  ConvexCheckOptions o;
  o.grid = {Rational(0), Rational(1), Rational(1, 2), Rational(1, 3), Rational(3, 4)};
  return o;
}

}  // namespace

TEST(Closure, DiamondExamples) {
  const auto d = diamond();
  EXPECT_EQ(subalgebra_closure(d, mask_of(d, {"a", "b"})), mask_of(d, {"0", "a", "b"}));
  EXPECT_EQ(subalgebra_closure(d, 0), Mask{0});
  EXPECT_EQ(subalgebra_closure(d, 0xF), Mask{0xF});
}

TEST(Closure, IsClosureOperator) {
  for (const auto& x : {two(), diamond(), chain(5)}) {
    const std::size_t n = x.elements().size();
    const Mask all = (Mask{1} << n) - 1;
    for (Mask u = 0; u <= all; ++u) {
      const Mask cu = subalgebra_closure(x, u);
      EXPECT_TRUE(mask_subset(u, cu));
      EXPECT_EQ(subalgebra_closure(x, cu), cu);
      for (Mask v = 0; v <= all; ++v) {
        if (mask_subset(u, v)) {
          EXPECT_TRUE(mask_subset(cu, subalgebra_closure(x, v)));
        }
      }
    }
  }
}

TEST(IsPrimeFilter, TwoExamples) {
  const auto x = two();
  EXPECT_TRUE(is_prime_filter(x, mask_of(x, {"1"})).prime());
  const auto bad = is_prime_filter(x, mask_of(x, {"0"}));
  EXPECT_TRUE(bad.subalgebra);
  EXPECT_FALSE(bad.filter);
  EXPECT_EQ(bad.witness["value"], "0");
  EXPECT_TRUE(is_prime_filter(x, 0).prime());
}

TEST(Enumerate, TwoAndSimplices) {
  const auto x = two();
  EXPECT_EQ(enumerate_prime_filters(x), (std::vector<Mask>{0, 2, 3}));
  const auto ab = simplex(2);
  EXPECT_EQ(enumerate_prime_filters(ab), (std::vector<Mask>{0, 1, 2, 3}));
  for (std::size_t n = 1; n <= 4; ++n) {
    EXPECT_EQ(enumerate_prime_filters(simplex(n)).size(), std::size_t{1} << n);
  }
}

TEST(Enumerate, SemilatticesMatchOracleAndDirectCheck) {
  for (const auto& x : {two(), diamond(), chain(4), cube()}) {
    const auto got = enumerate_prime_filters(x);
    EXPECT_EQ(got, oracle_semilattice_filters(x)) << x.name();
    if (x.elements().size() <= 4) {
      const std::set<Mask> gs(got.begin(), got.end());
      for (Mask m = 0; m < (Mask{1} << x.elements().size()); ++m) {
        EXPECT_EQ(is_prime_filter(x, m).prime(), gs.count(m) == 1) << x.name() << " " << m;
      }
    }
  }
  EXPECT_EQ(enumerate_prime_filters(diamond()).size(), 5U);
  EXPECT_EQ(enumerate_prime_filters(cube()).size(), 9U);
}

TEST(Enumerate, SquareHasTenFaces) {
  const auto sq = square();
  const auto faces = enumerate_prime_filters(sq);
  // 0:(0,0) 1:(1,0) 2:(0,1) 3:(1,1); edges are the pairs differing in one coordinate.
  EXPECT_EQ(faces, (std::vector<Mask>{0, 1, 2, 3, 4, 5, 8, 10, 12, 15}));
}

TEST(Enumerate, SquareFacesAgreeWithDirectConditions) {
  const auto sq = square();
  for (Mask m = 0; m < 16; ++m) {
    const auto v = is_prime_filter(sq, m, light());
    ASSERT_TRUE(v.face_certificate.has_value());
    EXPECT_EQ(v.prime(), *v.face_certificate) << m;
  }
}

TEST(Enumerate, NonVertexGeneratorIsNotAFace) {
  const auto x = ConvexAlgebra::polytope("seg3", 1, {{Rational(0)}, {Rational(1, 2)}, {Rational(1)}});
  EXPECT_EQ(enumerate_prime_filters(x), (std::vector<Mask>{0, 1, 4, 7}));
  EXPECT_FALSE(is_prime_filter(x, 2, light()).prime());
  EXPECT_FALSE(is_prime_filter(x, 3, light()).prime());
  EXPECT_EQ(hom_to_two(x).size(), 4U);
}

TEST(Enumerate, TooLarge) {
  std::vector<linalg::Vec> gens;
  for (int i = 0; i < 9; ++i) gens.push_back({Rational(i), Rational(i * i)});
  const auto x = ConvexAlgebra::polytope("parabola", 2, gens);
  EXPECT_THROW(enumerate_prime_filters(x), TooLarge);
  EXPECT_THROW(hom_to_two(x), TooLarge);
}

TEST(Extremes, Examples) {
  const auto seg = extreme_points(segment());
  ASSERT_EQ(seg.size(), 2U);
  EXPECT_EQ(std::get<HullPoint>(seg[0]).coords, linalg::Vec{Rational(0)});
  EXPECT_EQ(std::get<HullPoint>(seg[1]).coords, linalg::Vec{Rational(1)});
  const auto abc = simplex(3);
  EXPECT_EQ(extreme_points(abc), abc.generators());
  EXPECT_EQ(extreme_points(square()).size(), 4U);
  // In a semilattice only the top is extreme.
  const auto d = diamond();
  EXPECT_EQ(extreme_points(d), (std::vector<ConvexElement>{std::string("1")}));
}

TEST(HomToTwo, CountsAndConstants) {
  const auto abc = simplex(3);
  EXPECT_EQ(hom_to_two(abc).size(), 8U);
  EXPECT_EQ(enumerate_prime_filters(abc).size(), 8U);
  for (const auto& x : {two(), diamond(), abc, square()}) {
    const auto homs = hom_to_two(x);
    const Mask all = (Mask{1} << x.generator_count()) - 1;
    EXPECT_EQ(filter_of(x, homs.front()), Mask{0});
    EXPECT_EQ(filter_of(x, homs.back()), all);
    EXPECT_EQ(map_of(x, all), homs.back());
  }
}

TEST(HomToTwo, ApplyOnMixedPoints) {
  const auto sq = square();
  // Indicator of the bottom edge {(0,0),(1,0)}.
  const TwoValuedMap f{3};
  EXPECT_EQ(apply(sq, f, sq.point({Rational(1, 2), Rational(0)})), 1);
  EXPECT_EQ(apply(sq, f, sq.point({Rational(1, 2), Rational(1, 3)})), 0);
  EXPECT_TRUE(in_subset(sq, 3, sq.point({Rational(1, 5), Rational(0)})));
  EXPECT_FALSE(in_subset(sq, 3, sq.point({Rational(1, 5), Rational(1, 5)})));
}

TEST(FilterDuality, AllFamilies) {
  for (const auto& x : {two(), diamond(), chain(4), cube(), simplex(1), simplex(2), simplex(3), simplex(4), segment(),
                        square()}) {
    const auto r = check_filter_duality(x);
    EXPECT_TRUE(r.ok()) << json(r.records()).dump();
  }
}

TEST(FilterDuality, SerialMatchesParallel) {
  const auto d = diamond();
  EXPECT_EQ(enumerate_prime_filters(d, Exec::serial), enumerate_prime_filters(d, Exec::parallel));
  EXPECT_EQ(check_filter_duality(square(), Exec::serial).records(), check_filter_duality(square(), Exec::parallel).records());
}
