#include "duality/states.hpp"

#include <algorithm>
#include <limits>

namespace duality {

using linalg::Mat;
using linalg::Vec;

namespace {

constexpr std::uint64_t kMaxSubsystems = 5'000'000;

std::uint64_t binom(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r > kMaxSubsystems) return kMaxSubsystems + 1;
  }
  return r;
}

/// The idx-th k-subset of {0..m-1} in lexicographic order.
std::vector<std::size_t> unrank(std::uint64_t idx, std::size_t m, std::size_t k) {
  std::vector<std::size_t> out;
  std::size_t next = 0;
  for (std::size_t slot = 0; slot < k; ++slot) {
    for (std::size_t c = next;; ++c) {
      const std::uint64_t rest = binom(m - c - 1, k - slot - 1);
      if (idx < rest) {
        out.push_back(c);
        next = c + 1;
        break;
      }
      idx -= rest;
    }
  }
  return out;
}

Vec unit_vec(std::size_t n, std::size_t i) {
  Vec v = linalg::zeros(n);
  v[i] = Rational(1);
  return v;
}

}  // namespace

StateSpace state_space(const EffectAlgebra& e, Exec exec) {
  const std::size_t n = e.size();
  if (n > 64) throw TooLarge(e.name() + ": state spaces limited to 64 elements", json{{"size", n}});
  StateSpace s{e, {}, 0, false, {}};
  const auto& nm = e.elements();
  s.constraints.push_back({"f(" + nm[e.one()] + ")=1", "eq", unit_vec(n, e.one()), Rational(1)});
  s.constraints.push_back({"f(" + nm[e.zero()] + ")=0", "eq", unit_vec(n, e.zero()), Rational(0)});
  for (const auto& t : e.sums()) {
    Vec row = linalg::zeros(n);
    row[e.index_of(t.x)] += Rational(1);
    row[e.index_of(t.y)] += Rational(1);
    row[e.index_of(t.z)] -= Rational(1);
    s.constraints.push_back({"f(" + t.x + ")+f(" + t.y + ")=f(" + t.z + ")", "eq", row, Rational(0)});
  }
  for (std::size_t i = 0; i < n; ++i) {
    s.constraints.push_back({"f(" + nm[i] + ")>=0", "ge", unit_vec(n, i), Rational(0)});
    s.constraints.push_back({"f(" + nm[i] + ")<=1", "ge", linalg::scale(Rational(-1), unit_vec(n, i)), Rational(-1)});
  }

  Mat a;
  Vec b;
  std::vector<std::size_t> bounds;
  for (std::size_t c = 0; c < s.constraints.size(); ++c) {
    if (s.constraints[c].kind == "eq") {
      a.push_back(s.constraints[c].coeffs);
      b.push_back(s.constraints[c].rhs);
    } else {
      bounds.push_back(c);
    }
  }
  const auto p = linalg::solve(a, b, n);
  if (!p) return s;
  const Mat basis = linalg::null_space(a, n);
  const std::size_t k = basis.size();
  s.freedom = k;

  // Bounds in parameter space: row . t >= rhs, deduplicated.
  std::vector<std::pair<Vec, Rational>> rows;
  for (std::size_t c : bounds) {
    const auto& con = s.constraints[c];
    Vec row(k);
    for (std::size_t j = 0; j < k; ++j) row[j] = linalg::dot(con.coeffs, basis[j]);
    const Rational rhs = con.rhs - linalg::dot(con.coeffs, *p);
    if (std::all_of(row.begin(), row.end(), [](const Rational& r) { return r.is_zero(); })) {
      if (rhs.sign() > 0) return s;  // violated regardless of t
      continue;
    }
    std::pair<Vec, Rational> r{std::move(row), rhs};
    if (std::find(rows.begin(), rows.end(), r) == rows.end()) rows.push_back(std::move(r));
  }
  const std::size_t m = rows.size();

  auto satisfies = [&](const Vec& f) {
    for (std::size_t c : bounds) {
      if (linalg::dot(s.constraints[c].coeffs, f) < s.constraints[c].rhs) return false;
    }
    return true;
  };
  auto lift = [&](const Vec& t) {
    Vec f = *p;
    for (std::size_t j = 0; j < k; ++j) f = linalg::add(f, linalg::scale(t[j], basis[j]));
    return f;
  };

  std::vector<Vec> found;
  if (k == 0) {
    if (satisfies(*p)) found.push_back(*p);
  } else {
    const std::uint64_t total = binom(m, k);
    if (total > kMaxSubsystems) {
      throw TooLarge(e.name() + ": vertex enumeration needs too many subsystems",
                     json{{"constraints", m}, {"freedom", k}, {"limit", kMaxSubsystems}});
    }
    found = kernels::gather<Vec>(
        total,
        [&](std::size_t idx) -> std::optional<Vec> {
          const auto pick = unrank(idx, m, k);
          Mat sq;
          Vec rhs;
          for (std::size_t r : pick) {
            sq.push_back(rows[r].first);
            rhs.push_back(rows[r].second);
          }
          if (linalg::rank(sq, k) != k) return std::nullopt;
          const auto t = linalg::solve(sq, rhs, k);
          if (!t) return std::nullopt;
          Vec f = lift(*t);
          if (!satisfies(f)) return std::nullopt;
          return f;
        },
        exec);
  }
  std::sort(found.begin(), found.end());
  found.erase(std::unique(found.begin(), found.end()), found.end());
  s.feasible = !found.empty();
  for (auto& f : found) {
    ExtremeState v;
    Mat tight_rows = a;
    for (std::size_t c : bounds) {
      if (linalg::dot(s.constraints[c].coeffs, f) == s.constraints[c].rhs) {
        v.tight.push_back(s.constraints[c].name);
        tight_rows.push_back(s.constraints[c].coeffs);
      }
    }
    v.rank = linalg::rank(tight_rows, n);
    v.values = std::move(f);
    s.extremes.push_back(std::move(v));
  }
  return s;
}

Report check_state(const EffectAlgebra& e, const Vec& f) {
  Report report(e.name(), "state");
  if (f.size() != e.size()) {
    report.fail("arity", "HomViolation", json{{"expected", e.size()}, {"got", f.size()}});
    return report;
  }
  const auto& nm = e.elements();
  if (f[e.one()] == Rational(1)) {
    report.pass("normalized", 1);
  } else {
    report.fail("normalized", "HomViolation", json{{"f(1)", f[e.one()].str()}}, 1);
  }
  std::optional<json> bad;
  for (std::size_t i = 0; i < f.size() && !bad; ++i) {
    if (f[i].sign() < 0 || f[i] > Rational(1)) bad = json{{"x", nm[i]}, {"f(x)", f[i].str()}};
  }
  if (bad) {
    report.fail("bounded", "HomViolation", *bad, f.size());
  } else {
    report.pass("bounded", f.size());
  }
  bad.reset();
  const auto sums = e.sums();
  for (const auto& t : sums) {
    if (f[e.index_of(t.x)] + f[e.index_of(t.y)] != f[e.index_of(t.z)]) {
      bad = json{{"x", t.x}, {"y", t.y}, {"z", t.z}};
      break;
    }
  }
  if (bad) {
    report.fail("additive", "HomViolation", *bad, sums.size());
  } else {
    report.pass("additive", sums.size());
  }
  return report;
}

bool is_state(const EffectAlgebra& e, const Vec& f) { return check_state(e, f).ok(); }

Vec convex_mix_states(const EffectAlgebra& e, const std::vector<std::pair<Rational, Vec>>& mix) {
  if (mix.empty()) throw InvalidStructure("a convex mix needs at least one state");
  Rational total(0);
  Vec out = linalg::zeros(e.size());
  for (const auto& [r, f] : mix) {
    if (r.sign() < 0 || r > Rational(1)) throw ScalarOutOfRange("mix weight " + r.str() + " outside [0,1]");
    check_state(e, f).require();
    total += r;
    out = linalg::add(out, linalg::scale(r, f));
  }
  if (total != Rational(1)) throw InvalidStructure("mix weights sum to " + total.str(), json{{"mass", total.str()}});
  check_state(e, out).require();
  return out;
}

Vec state_precompose(const EffectAlgebra& e, const EffectAlgebra& d, const EAMap& g, const Vec& f) {
  check_ea_hom(e, d, g).require();
  check_state(d, f).require();
  Vec out;
  for (std::size_t x : g) out.push_back(f[x]);
  check_state(e, out).require();
  return out;
}

Report check_state_space(const StateSpace& s, const std::vector<EffectAlgebra>& sources, std::size_t mixes,
                         std::uint64_t seed, Exec exec) {
  const auto& e = s.source;
  Report report(e.name(), "state-space");
  const std::size_t nx = s.extremes.size();
  if (const auto bad = kernels::first_failure(nx, [&](std::size_t i) { return !is_state(e, s.extremes[i].values); },
                                              exec)) {
    report.fail("extremes-are-states", "HomViolation", json{{"vertex", *bad}}, nx);
  } else {
    report.pass("extremes-are-states", nx);
  }
  if (const auto bad = kernels::first_failure(nx, [&](std::size_t i) { return s.extremes[i].rank != e.size(); }, exec)) {
    report.fail("vertex-certificates", "LawViolation", json{{"vertex", *bad}, {"rank", s.extremes[*bad].rank}}, nx);
  } else {
    report.pass("vertex-certificates", nx);
  }
  if (nx == 0) {
    report.skip("mixes-are-states", "empty state space");
    report.skip("mix-commutes-with-precompose", "empty state space");
    return report;
  }

  Rng rng(seed);
  std::vector<std::vector<std::pair<Rational, Vec>>> mixlist;
  for (std::size_t i = 0; i < mixes; ++i) {
    const auto phi =
        random_distribution<std::size_t>(rng, std::min<std::size_t>(nx, 4), [&] { return rng.below(nx); });
    std::vector<std::pair<Rational, Vec>> m;
    for (const auto& [j, r] : phi.terms()) m.emplace_back(r, s.extremes[j].values);
    mixlist.push_back(std::move(m));
  }
  std::vector<Vec> mixed(mixlist.size());
  const auto mix_bad = kernels::first_failure(
      mixlist.size(),
      [&](std::size_t i) {
        try {
          mixed[i] = convex_mix_states(e, mixlist[i]);
        } catch (const Error&) {
          return true;
        }
        return false;
      },
      exec);
  if (mix_bad) {
    report.fail("mixes-are-states", "HomViolation", json{{"mix", *mix_bad}}, mixlist.size());
    return report;
  }
  report.pass("mixes-are-states", mixlist.size());

  std::size_t cases = 0;
  std::optional<json> bad;
  for (const auto& c : sources) {
    for (const auto& g : enumerate_ea_homs(c, e, exec)) {
      for (std::size_t i = 0; i < mixlist.size() && !bad; ++i) {
        ++cases;
        const Vec lhs = state_precompose(c, e, g, mixed[i]);
        std::vector<std::pair<Rational, Vec>> pulled;
        for (const auto& [r, f] : mixlist[i]) pulled.emplace_back(r, state_precompose(c, e, g, f));
        if (convex_mix_states(c, pulled) != lhs) bad = json{{"source", c.name()}, {"mix", i}};
      }
    }
  }
  if (bad) {
    report.fail("mix-commutes-with-precompose", "LawViolation", *bad, cases);
  } else {
    report.pass("mix-commutes-with-precompose", cases);
  }
  return report;
}

ConvexAlgebra state_polytope(const StateSpace& s) {
  std::vector<Vec> gens;
  for (const auto& v : s.extremes) gens.push_back(v.values);
  return ConvexAlgebra::polytope("S(" + s.source.name() + ")", s.source.size(), gens);
}

// ---- functionals ----

AffineFunctionalAlgebra::AffineFunctionalAlgebra(ConvexAlgebra x) : x_(std::move(x)) {
  if (x_.family() == ConvexAlgebra::Family::semilattice) {
    throw InvalidStructure("affine functionals are represented on simplices and polytopes");
  }
  const std::size_t k = x_.generator_count();
  if (k > 8) throw TooLarge(x_.name() + ": functional algebras limited to 8 generators", json{{"generators", k}});
  if (x_.family() == ConvexAlgebra::Family::polytope) {
    Mat m(x_.dimension() + 1, linalg::zeros(k));
    for (std::size_t j = 0; j < k; ++j) {
      for (std::size_t i = 0; i < x_.dimension(); ++i) m[i][j] = x_.generator_points()[j][i];
      m[x_.dimension()][j] = Rational(1);
    }
    deps_ = linalg::null_space(m, k);
  }
}

Vec AffineFunctionalAlgebra::make(Vec values) const {
  if (values.size() != arity()) {
    throw DimensionMismatch("functional needs " + std::to_string(arity()) + " values",
                            json{{"expected", arity()}, {"got", values.size()}});
  }
  for (const auto& v : values) {
    if (v.sign() < 0 || v > Rational(1)) throw ScalarOutOfRange("functional value " + v.str() + " outside [0,1]");
  }
  for (const auto& dep : deps_) {
    if (!linalg::dot(dep, values).is_zero()) {
      json d = json::array();
      for (const auto& r : dep) d.push_back(r.str());
      throw DependentGeneratorsUnsatisfiable("values violate an affine dependency among generators",
                                             json{{"dependency", d}});
    }
  }
  return values;
}

Vec AffineFunctionalAlgebra::zero() const { return linalg::zeros(arity()); }
Vec AffineFunctionalAlgebra::one() const { return Vec(arity(), Rational(1)); }

bool AffineFunctionalAlgebra::defined(const Vec& f, const Vec& g) const {
  for (std::size_t i = 0; i < arity(); ++i) {
    if (f[i] + g[i] > Rational(1)) return false;
  }
  return true;
}

std::optional<Vec> AffineFunctionalAlgebra::sum(const Vec& f, const Vec& g) const {
  if (!defined(f, g)) return std::nullopt;
  return linalg::add(f, g);
}

Vec AffineFunctionalAlgebra::ortho(const Vec& f) const { return linalg::sub(one(), f); }

bool AffineFunctionalAlgebra::leq(const Vec& f, const Vec& g) const {
  for (std::size_t i = 0; i < arity(); ++i) {
    if (f[i] > g[i]) return false;
  }
  return true;
}

Rational AffineFunctionalAlgebra::value(const Vec& f, const ConvexElement& x) const {
  x_.require(x);
  if (x_.family() == ConvexAlgebra::Family::simplex) {
    Rational out(0);
    for (const auto& [l, c] : std::get<Distribution<std::string>>(x).terms()) out += c * f[x_.index_of(l)];
    return out;
  }
  // Recover f as c.x + b from its generator values, then evaluate at the coordinates.
  const std::size_t d = x_.dimension(), k = arity();
  Mat a;
  for (std::size_t j = 0; j < k; ++j) {
    Vec row = x_.generator_points()[j];
    row.push_back(Rational(1));
    a.push_back(std::move(row));
  }
  const auto cb = linalg::solve(a, f, d + 1);
  if (!cb) throw DependentGeneratorsUnsatisfiable("values are not affine on the generators");
  Vec point = std::get<HullPoint>(x).coords;
  point.push_back(Rational(1));
  return linalg::dot(*cb, point);
}

Rational AffineFunctionalAlgebra::ortho_value(const Vec& f, const Distribution<ConvexElement>& phi) const {
  Rational out(0);
  for (const auto& [x, r] : phi.terms()) out += r * (Rational(1) - value(f, x));
  return out;
}

Vec AffineFunctionalAlgebra::sample(Rng& rng) const {
  const std::size_t k = arity();
  Vec v(k);
  if (x_.family() == ConvexAlgebra::Family::simplex) {
    for (auto& r : v) r = rng.unit_rational(12);
    return make(v);
  }
  const std::size_t d = x_.dimension();
  Vec c(d);
  for (auto& r : c) r = Rational(rng.between(-3, 3));
  Vec raw(k);
  for (std::size_t j = 0; j < k; ++j) raw[j] = linalg::dot(c, x_.generator_points()[j]);
  const Rational lo_raw = *std::min_element(raw.begin(), raw.end());
  const Rational hi_raw = *std::max_element(raw.begin(), raw.end());
  Rational lo = rng.unit_rational(12), hi = rng.unit_rational(12);
  if (hi < lo) std::swap(lo, hi);
  for (std::size_t j = 0; j < k; ++j) {
    v[j] = hi_raw == lo_raw ? lo : lo + (raw[j] - lo_raw) / (hi_raw - lo_raw) * (hi - lo);
  }
  return make(v);
}

Report check_functional_effect_axioms(const AffineFunctionalAlgebra& a, std::size_t samples, std::uint64_t seed) {
  Report report("Hom(" + a.base().name() + ",[0,1])", "functional-effect-axioms");
  Rng rng(seed);
  std::vector<Vec> pool{a.zero(), a.one()};
  if (a.dependencies().empty()) {
    for (std::size_t i = 0; i < a.arity(); ++i) pool.push_back(unit_vec(a.arity(), i));
  }
  for (std::size_t i = 0; i < samples; ++i) {
    const Vec f = a.sample(rng);
    pool.push_back(f);
    pool.push_back(a.ortho(f));
    pool.push_back(linalg::scale(Rational(1, 2), f));
  }
  const std::size_t p = pool.size();
  auto render_vec = [](const Vec& v) {
    json out = json::array();
    for (const auto& r : v) out.push_back(r.str());
    return out;
  };

  std::optional<json> bad;
  std::size_t defined_pairs = 0;
  for (std::size_t i = 0; i < p && !bad; ++i)
    for (std::size_t j = 0; j < p && !bad; ++j) {
      const auto s1 = a.sum(pool[i], pool[j]), s2 = a.sum(pool[j], pool[i]);
      if (s1 != s2) bad = json{{"f", render_vec(pool[i])}, {"g", render_vec(pool[j])}};
      if (s1) {
        ++defined_pairs;
        try {
          (void)a.make(*s1);
        } catch (const Error&) {
          bad = json{{"f", render_vec(pool[i])}, {"g", render_vec(pool[j])}, {"reason", "sum not a functional"}};
        }
      }
    }
  if (bad) {
    report.fail("commutativity", "AxiomViolation", *bad, p * p);
  } else {
    report.pass("commutativity", p * p, json{{"defined_pairs", defined_pairs}});
  }

  const std::size_t triples = samples * 40;
  for (std::size_t t = 0; t < triples && !bad; ++t) {
    const Vec& x = pool[rng.below(p)];
    const Vec& y = pool[rng.below(p)];
    const Vec& z = pool[rng.below(p)];
    const auto yz = a.sum(y, z);
    if (!yz) continue;
    const auto lhs = a.sum(x, *yz);
    if (!lhs) continue;
    const auto xy = a.sum(x, y);
    const auto rhs = xy ? a.sum(*xy, z) : std::nullopt;
    if (rhs != lhs) bad = json{{"x", render_vec(x)}, {"y", render_vec(y)}, {"z", render_vec(z)}};
  }
  if (bad) {
    report.fail("associativity", "AxiomViolation", *bad, triples);
  } else {
    report.pass("associativity", triples, json{{"mode", "sampled"}});
  }

  for (const auto& f : pool) {
    if (a.sum(a.zero(), f) != f) {
      bad = json{{"f", render_vec(f)}};
      break;
    }
  }
  if (bad) {
    report.fail("zero-law", "AxiomViolation", *bad, p);
  } else {
    report.pass("zero-law", p);
  }

  for (std::size_t i = 0; i < p && !bad; ++i) {
    const Vec perp = a.ortho(pool[i]);
    if (a.sum(pool[i], perp) != a.one()) bad = json{{"f", render_vec(pool[i])}};
    for (std::size_t j = 0; j < p && !bad; ++j) {
      if (a.sum(pool[i], pool[j]) == a.one() && pool[j] != perp) {
        bad = json{{"f", render_vec(pool[i])}, {"second", render_vec(pool[j])}};
      }
    }
  }
  if (bad) {
    report.fail("orthosupplement", "AxiomViolation", *bad, p * p);
  } else {
    report.pass("orthosupplement", p * p);
  }

  for (const auto& f : pool) {
    if (a.defined(f, a.one()) && f != a.zero()) {
      bad = json{{"f", render_vec(f)}};
      break;
    }
  }
  if (bad) {
    report.fail("positivity", "AxiomViolation", *bad, p);
  } else {
    report.pass("positivity", p);
  }
  return report;
}

Vec unit_eta(const StateSpace& s, std::size_t x) {
  Vec out;
  for (const auto& v : s.extremes) out.push_back(v.values[x]);
  return out;
}

Report check_unit_eta(const StateSpace& s) {
  const auto& e = s.source;
  Report report(e.name(), "unit-eta");
  if (s.extremes.empty()) {
    report.skip("eta-one", "empty state space");
    return report;
  }
  const std::size_t m = s.extremes.size();
  if (unit_eta(s, e.one()) == Vec(m, Rational(1))) {
    report.pass("eta-one", 1);
  } else {
    report.fail("eta-one", "NotHomomorphism", json{{"x", e.elements()[e.one()]}}, 1);
  }
  if (unit_eta(s, e.zero()) == linalg::zeros(m)) {
    report.pass("eta-zero", 1);
  } else {
    report.fail("eta-zero", "NotHomomorphism", json{{"x", e.elements()[e.zero()]}}, 1);
  }
  std::optional<json> bad;
  const auto sums = e.sums();
  for (const auto& t : sums) {
    const Vec lhs = linalg::add(unit_eta(s, e.index_of(t.x)), unit_eta(s, e.index_of(t.y)));
    const bool in_range = std::all_of(lhs.begin(), lhs.end(), [](const Rational& r) { return r <= Rational(1); });
    if (!in_range || lhs != unit_eta(s, e.index_of(t.z))) {
      bad = json{{"x", t.x}, {"y", t.y}, {"z", t.z}};
      break;
    }
  }
  if (bad) {
    report.fail("eta-additive", "NotHomomorphism", *bad, sums.size());
  } else {
    report.pass("eta-additive", sums.size());
  }
  if (m <= 8) {
    const AffineFunctionalAlgebra a(state_polytope(s));
    for (std::size_t x = 0; x < e.size() && !bad; ++x) {
      try {
        (void)a.make(unit_eta(s, x));
      } catch (const Error& err) {
        bad = json{{"x", e.elements()[x]}, {"error", err.kind()}};
      }
    }
    if (bad) {
      report.fail("eta-values-are-functionals", "NotHomomorphism", *bad, e.size());
    } else {
      report.pass("eta-values-are-functionals", e.size());
    }
  } else {
    report.skip("eta-values-are-functionals", "more than 8 extreme states");
  }
  return report;
}

Rational counit_epsilon(const AffineFunctionalAlgebra& a, const ConvexElement& x, const Vec& f) { return a.value(f, x); }

Report check_counit_epsilon(const AffineFunctionalAlgebra& a, std::size_t samples, std::uint64_t seed) {
  const auto& x = a.base();
  Report report(x.name(), "counit-epsilon");
  Rng rng(seed);
  std::vector<ConvexElement> points = x.generators();
  for (std::size_t i = 0; i < samples / 4 + 1; ++i) points.push_back(x.sample(rng));
  std::vector<Vec> fs{a.zero(), a.one()};
  for (std::size_t i = 0; i < samples; ++i) fs.push_back(a.sample(rng));

  std::optional<json> bad;
  std::size_t cases = 0;
  for (std::size_t pi = 0; pi < points.size() && !bad; ++pi) {
    const auto& pt = points[pi];
    if (counit_epsilon(a, pt, a.one()) != Rational(1) || !counit_epsilon(a, pt, a.zero()).is_zero()) {
      bad = json{{"x", render(pt)}, {"law", "constants"}};
    }
    for (std::size_t i = 0; i < fs.size() && !bad; ++i) {
      const Vec& f = fs[i];
      const Vec& g = fs[(i * 7 + pi) % fs.size()];
      const Vec h = linalg::scale(Rational(1, 2), g);
      for (const Vec* other : {&g, &h}) {
        const auto s = a.sum(f, *other);
        if (!s) continue;
        ++cases;
        if (counit_epsilon(a, pt, *s) != counit_epsilon(a, pt, f) + counit_epsilon(a, pt, *other)) {
          bad = json{{"x", render(pt)}, {"law", "additive"}};
        }
      }
    }
  }
  if (bad) {
    report.fail("epsilon-is-state", "HomViolation", *bad, cases);
  } else {
    report.pass("epsilon-is-state", cases);
  }

  cases = 0;
  for (std::size_t i = 0; i < samples && !bad; ++i) {
    const auto phi = random_distribution<ConvexElement>(rng, 3, [&] { return points[rng.below(points.size())]; });
    const ConvexElement v = x.evaluate(phi);
    for (const auto& f : fs) {
      ++cases;
      Rational mix(0);
      for (const auto& [pt, r] : phi.terms()) mix += r * counit_epsilon(a, pt, f);
      if (counit_epsilon(a, v, f) != mix) {
        bad = json{{"phi", render(phi.sum())}, {"law", "affine"}};
        break;
      }
      if (a.ortho_value(f, phi) != counit_epsilon(a, v, a.ortho(f))) {
        bad = json{{"phi", render(phi.sum())}, {"law", "orthosupplement"}};
        break;
      }
    }
  }
  if (bad) {
    report.fail("epsilon-affine", "NotAffine", *bad, cases);
  } else {
    report.pass("epsilon-affine", cases);
  }
  return report;
}

Report check_triangle_identities(const StateSpace& s, const AffineFunctionalAlgebra& a, std::size_t samples,
                                 std::uint64_t seed) {
  Report report(s.source.name() + " / " + a.base().name(), "triangle-identities");
  Rng rng(seed);
  const auto& e = s.source;
  if (s.extremes.empty() || s.extremes.size() > 8) {
    report.skip("states-triangle", "needs 1 to 8 extreme states");
  } else {
    // A state t goes to f |-> f(t) on functionals of S(E); precomposing with
    // eta gives x |-> eta(x)(t), evaluated at t through the polytope.
    const AffineFunctionalAlgebra as(state_polytope(s));
    const auto poly = as.base();
    std::vector<Vec> states;
    for (const auto& v : s.extremes) states.push_back(v.values);
    for (std::size_t i = 0; i < samples; ++i) {
      const auto phi = random_distribution<std::size_t>(rng, std::min<std::size_t>(s.extremes.size(), 3),
                                                        [&] { return rng.below(s.extremes.size()); });
      Vec t = linalg::zeros(e.size());
      for (const auto& [j, r] : phi.terms()) t = linalg::add(t, linalg::scale(r, s.extremes[j].values));
      states.push_back(t);
    }
    std::optional<json> bad;
    for (const auto& t : states) {
      const ConvexElement pt = poly.point(t);
      Vec round(e.size());
      for (std::size_t x = 0; x < e.size(); ++x) round[x] = as.value(unit_eta(s, x), pt);
      if (round != t) {
        bad = json{{"state_index", &t - states.data()}};
        break;
      }
    }
    if (bad) {
      report.fail("states-triangle", "LawViolation", *bad, states.size());
    } else {
      report.pass("states-triangle", states.size());
    }
  }

  // A functional f goes to the state-evaluation s |-> s(f); along epsilon
  // it returns x |-> epsilon(x)(f).
  std::optional<json> bad;
  const auto gens = a.base().generators();
  for (std::size_t i = 0; i < samples && !bad; ++i) {
    const Vec f = a.sample(rng);
    auto eta_f = [&](const std::function<Rational(const Vec&)>& state) { return state(f); };
    Vec round;
    for (const auto& g : gens) {
      round.push_back(eta_f([&](const Vec& h) { return counit_epsilon(a, g, h); }));
    }
    if (round != f) bad = json{{"sample", i}};
  }
  if (bad) {
    report.fail("functionals-triangle", "LawViolation", *bad, samples);
  } else {
    report.pass("functionals-triangle", samples);
  }
  return report;
}

Report composed_adjunction_check(const std::vector<std::string>& labels, std::size_t samples, std::uint64_t seed) {
  if (labels.size() > 6) throw TooLarge("composed adjunction check limited to 6 labels", json{{"labels", labels.size()}});
  const auto x = ConvexAlgebra::simplex("D(A)", labels);
  const AffineFunctionalAlgebra a(x);
  Report report(x.name(), "composed-adjunction");
  const std::size_t k = labels.size();

  // The power [0,1]^A, operations componentwise.
  auto p_defined = [&](const Vec& f, const Vec& g) {
    for (std::size_t i = 0; i < k; ++i)
      if (f[i] + g[i] > Rational(1)) return false;
    return true;
  };
  auto p_sum = [&](const Vec& f, const Vec& g) {
    Vec out(k);
    for (std::size_t i = 0; i < k; ++i) out[i] = f[i] + g[i];
    return out;
  };
  auto p_perp = [&](const Vec& f) {
    Vec out(k);
    for (std::size_t i = 0; i < k; ++i) out[i] = Rational(1) - f[i];
    return out;
  };

  // Pairs: the full grid for two labels, seeded otherwise.
  const std::vector<Rational> grid{Rational(0), Rational(1, 4), Rational(1, 3), Rational(1, 2),
                                   Rational(2, 3), Rational(3, 4), Rational(1)};
  std::vector<std::pair<Vec, Vec>> pairs;
  if (k == 2) {
    for (const auto& a0 : grid)
      for (const auto& a1 : grid)
        for (const auto& b0 : grid)
          for (const auto& b1 : grid) pairs.push_back({{a0, a1}, {b0, b1}});
  } else {
    Rng rng(seed);
    for (std::size_t i = 0; i < samples; ++i) {
      Vec f(k), g(k);
      for (std::size_t j = 0; j < k; ++j) {
        f[j] = grid[rng.below(grid.size())];
        g[j] = grid[rng.below(grid.size())];
      }
      pairs.push_back({f, g});
    }
  }
  Rng rng(seed ^ 0x9e3779b97f4a7c15ULL);
  std::vector<ConvexElement> probes = x.generators();
  for (int i = 0; i < 6; ++i) probes.push_back(x.sample(rng));

  std::optional<json> bad;
  std::string failed;
  for (const auto& [f, g] : pairs) {
    const auto fs = a.make(f), gs = a.make(g);
    if (a.defined(fs, gs) != p_defined(f, g)) {
      failed = "definedness";
    } else if (const auto s = a.sum(fs, gs); s && *s != p_sum(f, g)) {
      failed = "sum";
    } else if (a.ortho(fs) != p_perp(f)) {
      failed = "orthosupplement";
    } else if (s) {
      for (const auto& pt : probes) {
        if (a.value(*s, pt) != a.value(fs, pt) + a.value(gs, pt)) failed = "pointwise-sum";
      }
    }
    if (!failed.empty()) {
      json jf = json::array(), jg = json::array();
      for (const auto& r : f) jf.push_back(r.str());
      for (const auto& r : g) jg.push_back(r.str());
      bad = json{{"f", jf}, {"g", jg}, {"operation", failed}};
      break;
    }
  }
  const json detail{{"mode", k == 2 ? "exhaustive" : "sampled"}};
  if (bad) {
    report.fail("operations-componentwise", "LawViolation", *bad, pairs.size(), detail);
  } else {
    report.pass("operations-componentwise", pairs.size(), detail);
  }
  if (a.zero() == Vec(k, Rational(0)) && a.one() == Vec(k, Rational(1))) {
    report.pass("constants", 2);
  } else {
    report.fail("constants", "LawViolation", json::object(), 2);
  }
  return report;
}

Report check_unique_interval_state(std::size_t max_den) {
  Report report("rational unit interval", "unique-state");
  std::size_t cases = 0;
  std::optional<json> bad;
  for (std::size_t q = 1; q <= max_den && !bad; ++q) {
    const auto s = state_space(EffectAlgebra::interval_nat(q), Exec::serial);
    if (!s.feasible || s.freedom != 0 || s.extremes.size() != 1) {
      bad = json{{"q", q}, {"states", s.extremes.size()}, {"freedom", s.freedom}};
      break;
    }
    for (std::size_t p = 0; p <= q; ++p) {
      ++cases;
      if (s.extremes[0].values[p] != Rational(static_cast<long>(p), static_cast<long>(q))) {
        bad = json{{"p", p}, {"q", q}, {"f", s.extremes[0].values[p].str()}};
        break;
      }
    }
  }
  if (bad) {
    report.fail("forced-values", "LawViolation", *bad, cases);
  } else {
    report.pass("forced-values", cases, json{{"max_denominator", max_den}});
  }
  return report;
}

json to_json(const StateSpace& s) {
  const auto& nm = s.source.elements();
  json cons = json::array();
  for (const auto& c : s.constraints) {
    json coeffs = json::object();
    for (std::size_t i = 0; i < c.coeffs.size(); ++i) {
      if (!c.coeffs[i].is_zero()) coeffs[nm[i]] = c.coeffs[i].str();
    }
    cons.push_back(json{{"name", c.name}, {"kind", c.kind}, {"coeffs", coeffs}, {"rhs", c.rhs.str()}});
  }
  json ext = json::array();
  for (const auto& v : s.extremes) {
    json st = json::object();
    for (std::size_t i = 0; i < nm.size(); ++i) st[nm[i]] = v.values[i].str();
    ext.push_back(json{{"state", st}, {"tight", v.tight}, {"rank", v.rank}});
  }
  return json{{"effect_algebra", s.source.name()}, {"variables", nm}, {"constraints", cons},
              {"freedom", s.freedom},        {"feasible", s.feasible}, {"extremes", ext}};
}

}  // namespace duality
