// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <memory>
#include <sstream>

#include "duality/faces.hpp"
#include "duality/formal.hpp"
#include "duality/hilbert.hpp"
#include "duality/preframes.hpp"
#include "duality/semimod.hpp"
#include "duality/states.hpp"
#include "duality/structio.hpp"

using namespace duality;
using linalg::Vec;

namespace {

std::string corpus(const std::string& f) { return std::string(DUALITY_CORPUS_DIR) + "/" + f; }

ConvexAlgebra convex(const std::string& f) { return *load_document(corpus(f)).convex(); }
FinitePreframe preframe(const std::string& f) { return *load_document(corpus(f)).preframe(); }
EffectAlgebra effect(const std::string& f) { return *load_document(corpus(f)).effect(); }

/// Collects failures for one criterion; `note` adds to the summary line.
struct Verdict {
  std::vector<std::string> problems;
  std::vector<std::string> notes;

  void expect(bool ok, const std::string& what) {
    if (!ok) problems.push_back(what);
  }
  void report(const Report& r, const std::string& what) {
    if (const CheckResult* f = r.first_failure()) {
      problems.push_back(what + ": " + r.suite() + "/" + f->name + " " + f->witness.dump());
    }
  }
  void min_cases(const Report& r, const std::string& check, std::size_t n, const std::string& what) {
    const CheckResult* c = r.find(check);
    expect(c && c->outcome == Outcome::pass && c->cases >= n,
           what + ": " + check + " needs >= " + std::to_string(n) + " passing cases, got " +
               (c ? std::to_string(c->cases) : std::string("none")));
  }
  void note(std::string s) { notes.push_back(std::move(s)); }
};

// ----------------------------------------------------------------------------
// Oracles

// Semilattice prime filters: subsets F with (x meet y in F) iff (x in F and y in F).
std::size_t semilattice_filter_count(const ConvexAlgebra& x) {
  const std::size_t n = x.elements().size();
  std::size_t count = 0;
  for (Mask m = 0; m < (Mask{1} << n); ++m) {
    bool ok = true;
    for (std::size_t a = 0; a < n && ok; ++a)
      for (std::size_t b = 0; b < n && ok; ++b)
        ok = mask_has(m, x.meet(a, b)) == (mask_has(m, a) && mask_has(m, b));
    count += ok;
  }
  return count;
}

// Scott-open filters of a finite preframe: nonempty upsets closed under meets.
std::vector<Mask> scott_oracle(const FinitePreframe& l) {
  const std::size_t n = l.size();
  std::vector<Mask> out;
  for (Mask m = 1; m < (Mask{1} << n); ++m) {
    bool ok = true;
    for (std::size_t a = 0; a < n && ok; ++a)
      for (std::size_t b = 0; b < n && ok; ++b) {
        if (mask_has(m, a) && l.leq(a, b)) ok = mask_has(m, b);
        if (ok && mask_has(m, a) && mask_has(m, b)) ok = mask_has(m, l.meet(a, b));
      }
    if (ok) out.push_back(m);
  }
  return out;
}

// Effect-algebra homs by odometer over all maps.
std::size_t brute_hom_count(const EffectAlgebra& e, const EffectAlgebra& d) {
  const std::size_t n = e.size(), m = d.size();
  std::vector<std::size_t> f(n, 0);
  std::size_t count = 0;
  while (true) {
    bool ok = f[e.one()] == d.one();
    for (std::size_t a = 0; a < n && ok; ++a)
      for (std::size_t b = 0; b < n && ok; ++b)
        if (const auto s = e.sum(a, b)) {
          const auto t = d.sum(f[a], f[b]);
          ok = t && *t == f[*s];
        }
    count += ok;
    std::size_t i = 0;
    while (i < n && ++f[i] == m) f[i++] = 0;
    if (i == n) break;
  }
  return count;
}

// States: every tight set of bounds with full rank, solved exactly.
std::vector<Vec> brute_vertices(const EffectAlgebra& e) {
  const std::size_t n = e.size();
  auto unit = [&](std::size_t i) {
    Vec r = linalg::zeros(n);
    r[i] = Rational(1);
    return r;
  };
  linalg::Mat eq{unit(e.one())};
  Vec rhs{Rational(1)};
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
  std::vector<int> fix(n, 0);  // 0 free, 1 at zero, 2 at one
  while (true) {
    linalg::Mat a = eq;
    Vec b = rhs;
    for (std::size_t i = 0; i < n; ++i) {
      if (fix[i] == 0) continue;
      a.push_back(unit(i));
      b.push_back(Rational(fix[i] - 1));
    }
    if (linalg::rank(a, n) == n) {
      if (const auto x = linalg::solve(a, b, n)) {
        bool ok = true;
        for (std::size_t r = 0; r < a.size() && ok; ++r) ok = linalg::dot(a[r], *x) == b[r];
        for (const auto& q : *x) ok = ok && q.sign() >= 0 && q <= Rational(1);
        if (ok && std::find(out.begin(), out.end(), *x) == out.end()) out.push_back(*x);
      }
    }
    std::size_t i = 0;
    while (i < n && ++fix[i] == 3) fix[i++] = 0;
    if (i == n) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Vec> extreme_values(const StateSpace& s) {
  std::vector<Vec> out;
  for (const auto& x : s.extremes) out.push_back(x.values);
  return out;
}

std::string run_cli(const std::string& args) {
  const std::string cmd = std::string(DUALITY_CLI_PATH) + " " + args + " 2>/dev/null";
  std::unique_ptr<FILE, int (*)(FILE*)> pipe(popen(cmd.c_str(), "r"), pclose);
  if (!pipe) return {};
  std::string out;
  std::array<char, 4096> buf{};
  std::size_t got = 0;
  while ((got = fread(buf.data(), 1, buf.size(), pipe.get())) > 0) out.append(buf.data(), got);
  return out;
}

// ----------------------------------------------------------------------------
// Criteria

Verdict monad_laws() {
  Verdict v;
  const std::vector<std::string> labels{"a", "b", "c", "d"};
  for (const Semiring& s : {Semiring::boolean(), Semiring::natural(), Semiring::nonneg_rationals()}) {
    for (MonadKind kind : {MonadKind::multiset, MonadKind::distribution}) {
      for (std::size_t n = 1; n <= 4; ++n) {
        const std::vector<std::string> carrier(labels.begin(), labels.begin() + static_cast<long>(n));
        LawCheckOptions opt;
        opt.seed = default_seed();
        const Report r = check_monad_laws(s, carrier, kind, opt);
        const std::string what = r.subject();
        v.report(r, what);
        for (const char* law : {"unit-left", "unit-right", "associativity"}) {
          const CheckResult* c = r.find(law);
          if (!c) {
            v.expect(false, what + ": missing " + law);
            continue;
          }
          const bool exhaustive = c->detail.value("mode", "") == "exhaustive";
          if (s.is_finite()) {
            v.expect(exhaustive, what + ": " + law + " is not exhaustive");
          } else {
            v.expect(exhaustive || c->cases >= 200, what + ": " + law + " has " + std::to_string(c->cases) + " samples");
          }
        }
      }
    }
  }
  return v;
}

Verdict commutativity() {
  Verdict v;
  LawCheckOptions opt;
  opt.seed = default_seed();
  const std::vector<std::string> xs{"x1", "x2", "x3"}, ys{"y1", "y2", "y3"};
  const Report d = check_commutativity(Semiring::nonneg_rationals(), xs, ys, MonadKind::distribution, opt);
  const Report m = check_commutativity(Semiring::boolean(), xs, ys, MonadKind::multiset, opt);
  v.report(d, "D[Q>=0]");
  v.report(m, "M[2]");
  v.min_cases(d, "double-strength", 200, "D[Q>=0]");
  v.min_cases(m, "double-strength", 1, "M[2]");
  v.note(std::to_string(d.find("double-strength")->cases + m.find("double-strength")->cases) + " pairs");
  return v;
}

Verdict evaluation_roundtrip() {
  Verdict v;
  for (const char* f : {"diamond.json", "simplex2.json", "square.json"}) {
    const ConvexAlgebra x = convex(f);
    const Report r = check_evaluation_roundtrip(x, 500, default_seed());
    v.report(r, x.name());
    v.min_cases(r, "recursive-agrees", 500, x.name());
    v.min_cases(r, "permutation-invariant", 500, x.name());
  }
  return v;
}

Verdict convex_axioms() {
  Verdict v;
  ConvexCheckOptions opt;
  opt.grid = default_scalar_grid(default_seed());
  opt.seed = default_seed();
  const ConvexAlgebra chain5 = ConvexAlgebra::semilattice(
      "chain5", {"0", "1", "2", "3", "4"},
      [] {
        std::vector<std::vector<std::size_t>> t(5, std::vector<std::size_t>(5));
        for (std::size_t i = 0; i < 5; ++i)
          for (std::size_t j = 0; j < 5; ++j) t[i][j] = std::min(i, j);
        return t;
      }());
  std::vector<ConvexAlgebra> algebras{convex("two.json"), convex("diamond.json"), chain5, convex("simplex2.json"),
                                      convex("square.json"), convex("interval01.json")};
  for (const ConvexAlgebra& x : algebras) {
    const Report a = check_convex_axioms(x, opt);
    const Report t = check_nested_tuple_identity(x, opt);
    v.report(a, x.name());
    v.report(t, x.name());
    for (const Report* r : {&a, &t}) {
      for (const CheckResult& c : r->checks()) {
        if (x.is_finite()) {
          const std::size_t k = x.elements().size();
          v.expect(c.detail.value("mode", "") == "exhaustive", x.name() + ": " + c.name + " not exhaustive");
          const std::size_t skipped = c.detail.value("skipped_cases", std::size_t{0});
          v.expect(c.cases + skipped >= opt.grid.size() * k * k,
                   x.name() + ": " + c.name + " covers " + std::to_string(c.cases) + " cases");
        } else {
          v.expect(c.cases >= 200, x.name() + ": " + c.name + " has " + std::to_string(c.cases) + " cases");
        }
      }
    }
  }
  return v;
}

Verdict free_forgetful() {
  Verdict v;
  for (const char* f : {"diamond.json", "simplex2.json", "square.json"}) {
    const ConvexAlgebra x = convex(f);
    const Report r = check_transposition(x, 100, default_seed());
    v.report(r, x.name());
    v.min_cases(r, "down-up-identity", 100, x.name());
    v.min_cases(r, "up-down-identity", 100, x.name());
  }
  return v;
}

Verdict prime_filters() {
  Verdict v;
  auto duality_ok = [&](const ConvexAlgebra& x, std::size_t expected) {
    const auto filters = enumerate_prime_filters(x);
    v.expect(filters.size() == expected,
             x.name() + ": " + std::to_string(filters.size()) + " filters, expected " + std::to_string(expected));
    v.expect(hom_to_two(x).size() == filters.size(), x.name() + ": |Hom(X,2)| differs from |pFil(X)|");
    const Report r = check_filter_duality(x);
    v.report(r, x.name());
    v.expect(r.find("order-isomorphism") && r.find("order-isomorphism")->outcome == Outcome::pass,
             x.name() + ": order isomorphism not verified");
  };
  duality_ok(convex("two.json"), 3);
  const ConvexAlgebra diamond = convex("diamond.json");
  duality_ok(diamond, semilattice_filter_count(diamond));
  for (std::size_t n = 1; n <= 4; ++n) {
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < n; ++i) labels.push_back(std::string(1, static_cast<char>('a' + i)));
    duality_ok(ConvexAlgebra::simplex("Simplex(" + std::to_string(n) + ")", labels), std::size_t{1} << n);
  }
  duality_ok(convex("square.json"), 10);

  const ConvexAlgebra interval = convex("interval01.json");
  std::vector<std::string> ext;
  for (const auto& e : extreme_points(interval)) ext.push_back(render(e));
  v.expect(ext == std::vector<std::string>{"[0]", "[1]"}, "extremes of [0,1] are not {0,1}");
  const ConvexAlgebra abc = convex("simplex2.json");
  const auto simplex_ext = extreme_points(abc);
  v.expect(simplex_ext == abc.generators(), "extremes of the simplex are not its unit masses");
  v.note("diamond has " + std::to_string(semilattice_filter_count(diamond)) + " prime filters");
  return v;
}

Verdict preframe_duality() {
  Verdict v;
  const ConvexAlgebra chain3 = ConvexAlgebra::semilattice("chain3", {"0", "1", "2"},
                                                          {{0, 0, 0}, {0, 1, 1}, {0, 1, 2}});
  std::vector<ConvexAlgebra> xs{convex("two.json"), chain3, convex("diamond.json"),
                                ConvexAlgebra::simplex("Simplex{a,b}", {"a", "b"})};
  std::vector<FinitePreframe> ls{FinitePreframe::chain(2), preframe("preframe_chain3.json"),
                                 preframe("preframe_diamond.json"), FinitePreframe::chain(5)};
  std::size_t pairs = 0;
  for (const auto& x : xs) {
    for (const auto& l : ls) {
      const Report r = check_pf_adjunction(x, l);
      v.report(r, x.name() + " / " + l.name());
      v.expect(r.find("round-trip-affine") && r.find("round-trip-preframe"),
               x.name() + " / " + l.name() + ": round trips not run");
      ++pairs;
    }
  }
  for (const auto& l : ls) {
    v.expect(scott_open_filters(l) == scott_oracle(l), l.name() + ": Scott-open filters differ from the oracle");
    v.report(check_scott_filters(l), l.name());
  }
  const std::size_t diamond = scott_open_filters(preframe("preframe_diamond.json")).size();
  v.expect(diamond == 4, "diamond has " + std::to_string(diamond) + " Scott-open filters");
  v.note(std::to_string(pairs) + " (X, L) pairs");
  return v;
}

Verdict effect_algebras() {
  Verdict v;
  using EA = EffectAlgebra;
  std::vector<EA> zoo{effect("mo2.json"), effect("ea_two.json"), EA::trivial()};
  for (std::size_t m = 1; m <= 6; ++m) zoo.push_back(EA::interval_nat(m));
  for (std::size_t n = 0; n <= 4; ++n) zoo.push_back(EA::powerset(n));
  zoo.push_back(effect("product_two_two.json"));
  zoo.push_back(EA::product(EA::interval_nat(2), EA::mo2()));
  zoo.push_back(EA::product(EA::powerset(2), EA::interval_nat(3)));
  zoo.push_back(EA::coproduct(EA::interval_nat(2), EA::interval_nat(2)));
  zoo.push_back(EA::coproduct(EA::mo2(), EA::interval_nat(3)));
  zoo.push_back(EA::coproduct(EA::powerset(2), EA::mo2()));
  for (const EA& e : zoo) {
    const Report r = check_effect_axioms(e);
    v.report(r, e.name());
    v.expect(r.count(Outcome::pass) == 5, e.name() + ": expected five passing axiom families");
  }
  const EA two = EA::two(), one = EA::trivial();
  v.expect(find_isomorphism(EA::coproduct(two, two), two).has_value(), "coproduct(2,2) is not 2");
  v.expect(find_isomorphism(EA::product(two, two), EA::mo2()).has_value(), "product(2,2) is not MO2");
  for (const EA& e : zoo) {
    const std::size_t from_two = enumerate_ea_homs(two, e).size();
    const std::size_t to_one = enumerate_ea_homs(e, one).size();
    v.expect(from_two == 1 && brute_hom_count(two, e) == 1, e.name() + ": |Hom(2,E)| = " + std::to_string(from_two));
    v.expect(to_one == 1 && brute_hom_count(e, one) == 1, e.name() + ": |Hom(E,1)| = " + std::to_string(to_one));
  }
  v.note(std::to_string(zoo.size()) + " algebras");
  return v;
}

Verdict state_spaces() {
  Verdict v;
  auto compare = [&](const EffectAlgebra& e, std::size_t expected) {
    const StateSpace s = state_space(e);
    v.expect(s.extremes.size() == expected,
             e.name() + ": " + std::to_string(s.extremes.size()) + " extreme states, expected " + std::to_string(expected));
    v.expect(extreme_values(s) == brute_vertices(e), e.name() + ": extremes differ from the brute-force oracle");
    for (const auto& x : s.extremes) {
      v.expect(x.rank == e.size(), e.name() + ": rank certificate " + std::to_string(x.rank));
    }
    v.report(check_state_space(s, {}, 40, default_seed()), e.name());
    return s;
  };
  compare(effect("mo2.json"), 2);
  compare(effect("powerset3.json"), 3);
  for (std::size_t m = 1; m <= 6; ++m) {
    const StateSpace s = compare(EffectAlgebra::interval_nat(m), 1);
    if (s.extremes.size() != 1) continue;
    for (std::size_t k = 0; k <= m; ++k) {
      v.expect(s.extremes[0].values[k] == Rational(static_cast<long>(k), static_cast<long>(m)),
               "IntervalNat(" + std::to_string(m) + "): f(" + std::to_string(k) + ") != k/M");
    }
  }
  v.report(check_unique_interval_state(24), "[0,1] rationals");
  return v;
}

Verdict effect_duality() {
  Verdict v;
  using EA = EffectAlgebra;
  for (const EA& e : {effect("mo2.json"), effect("powerset3.json"), effect("interval_nat3.json"), EA::two(),
                      EA::product(EA::interval_nat(2), EA::two()), EA::coproduct(EA::mo2(), EA::two()),
                      effect("subspaces_q2.json")}) {
    const StateSpace s = state_space(e);
    const Report r = check_unit_eta(s);
    v.report(r, e.name());
    v.expect(r.find("eta-one") && r.find("eta-additive"), e.name() + ": eta checks missing");
  }
  for (const char* f : {"simplex2.json", "square.json", "interval01.json"}) {
    const AffineFunctionalAlgebra a(convex(f));
    const Report r = check_counit_epsilon(a, 200, default_seed());
    v.report(r, a.base().name());
    v.min_cases(r, "epsilon-affine", 200, a.base().name());
  }
  for (std::size_t n = 1; n <= 6; ++n) {
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < n; ++i) labels.push_back(std::string(1, static_cast<char>('a' + i)));
    v.report(composed_adjunction_check(labels, 200, default_seed()), "Simplex(" + std::to_string(n) + ")");
  }
  return v;
}

Verdict hilbert() {
  Verdict v;
  for (std::size_t n : {2U, 3U}) {
    const Report r = check_subspace_lattice(n, 500, default_seed());
    v.report(r, "Sub(Q^" + std::to_string(n) + ")");
    v.min_cases(r, "orthomodular", 500, "Sub(Q^" + std::to_string(n) + ")");
  }
  Rng rng(default_seed());
  for (const char* f : {"subspaces_q2.json", "subspaces_q3.json"}) {
    const auto doc = load_document(corpus(f));
    const SubspaceFamily& fam = doc.subspaces()->family;
    for (int trial = 0; trial < 8; ++trial) {
      const UnitVector a = random_unit_vector(fam.ambient, rng);
      const Report r = check_epsilon_state(a, fam);
      v.report(r, doc.name);
      const Vec eps = epsilon_state(a, fam);
      for (std::size_t i = 0; i < fam.members.size(); ++i) {
        const auto perp = std::find(fam.members.begin(), fam.members.end(), sub_ortho(fam.members[i]));
        v.expect(perp != fam.members.end(), doc.name + ": family not closed under perp");
        if (perp == fam.members.end()) continue;
        const Rational total = eps[i] + eps[static_cast<std::size_t>(perp - fam.members.begin())];
        v.expect(total == Rational(1), doc.name + ": eps(K) + eps(K^perp) = " + total.str());
      }
    }
  }
  const ConvexityWitness w = convexity_counterexample(2);
  v.expect(w.at_mix == Rational(49, 100) && w.mixed == Rational(1, 2),
           "counterexample gives " + w.at_mix.str() + " vs " + w.mixed.str());
  v.note(w.at_mix.str() + " vs " + w.mixed.str());
  return v;
}

Verdict reproducibility() {
  Verdict v;
  const std::string pipeline[] = {
      "check " + corpus("mo2.json"),
      "check " + corpus("square.json"),
      "states " + corpus("powerset3.json"),
      "filters " + corpus("diamond.json"),
      "adjoint semimod " + corpus("simplex2.json"),
      "duality preframe " + corpus("diamond.json") + " " + corpus("preframe_chain3.json"),
      "duality effect " + corpus("simplex2.json"),
      "check " + corpus("subspaces_q3.json"),
      "hilbert epsilon " + corpus("subspaces_q2.json") + " --unit 3/5,4/5",
      "counterexample epsilon-convexity",
  };
  std::string first, second;
  for (const auto& cmd : pipeline) first += run_cli(cmd);
  for (const auto& cmd : pipeline) second += run_cli(cmd);
  v.expect(!first.empty(), "CLI produced no output");
  v.expect(first.find("\"exit\":0") != std::string::npos, "CLI pipeline did not run");
  v.expect(first == second, "report streams differ between runs");
  std::size_t lines = static_cast<std::size_t>(std::count(first.begin(), first.end(), '\n'));
  v.note(std::to_string(lines) + " lines, " + std::to_string(first.size()) + " bytes");
  return v;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* title;
    std::function<Verdict()> run;
    double budget_s;
  };
  const std::vector<Criterion> criteria{
      {1, "monad laws for D and M over 2, N, Q>=0", monad_laws, 10},
      {2, "strength composites commute", commutativity, 0},
      {3, "evaluate vs recursive evaluation", evaluation_roundtrip, 0},
      {4, "convex-algebra axioms and nested-tuple identity", convex_axioms, 0},
      {5, "free/forgetful transposition round trips", free_forgetful, 0},
      {6, "prime-filter duality and extreme points", prime_filters, 0},
      {7, "Conv/PreFrm round trips and Scott-open filters", preframe_duality, 0},
      {8, "effect-algebra axioms, products, coproducts, 2 initial, 1 final", effect_algebras, 0},
      {9, "state spaces against brute-force vertex enumeration", state_spaces, 60},
      {10, "Conv/EA unit, counit and composed adjunction", effect_duality, 0},
      {11, "Hilbert subspace lattices and the epsilon state", hilbert, 0},
      {12, "byte-identical CLI report streams", reproducibility, 0},
  };
  std::cout << "seed " << default_seed() << '\n';
  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.run();
    } catch (const std::exception& e) {
      v.problems.push_back(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.budget_s > 0 && secs >= c.budget_s) {
      v.problems.push_back("runtime " + std::to_string(secs) + " s exceeds " + std::to_string(c.budget_s) + " s");
    }
    const bool ok = v.problems.empty();
    failed += !ok;
    std::ostringstream line;
    line << (ok ? "PASS" : "FAIL") << " criterion " << c.id << ": " << c.title;
    for (const auto& n : v.notes) line << "; " << n;
    line.precision(2);
    line << std::fixed << " (" << secs << " s)";
    std::cout << line.str() << '\n';
    for (const auto& p : v.problems) std::cout << "    " << p << '\n';
  }
  std::cout << (failed == 0 ? "all criteria pass" : std::to_string(failed) + " criteria fail") << '\n';
  return failed == 0 ? 0 : 1;
}
