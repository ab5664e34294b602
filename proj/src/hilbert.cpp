#include "duality/hilbert.hpp"

#include <algorithm>
#include <array>
#include <set>

namespace duality {

using linalg::Mat;
using linalg::Vec;

namespace {

void same_ambient(const RationalSubspace& k, const RationalSubspace& m) {
  if (k.ambient() != m.ambient()) {
    throw DimensionMismatch("subspaces of Q^" + std::to_string(k.ambient()) + " and Q^" + std::to_string(m.ambient()),
                            json{{"left", k.ambient()}, {"right", m.ambient()}});
  }
}

std::string render_vec(const Vec& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + v[i].str();
  return out + ")";
}

json vec_json(const Vec& v) {
  json out = json::array();
  for (const auto& r : v) out.push_back(r.str());
  return out;
}

}  // namespace

RationalSubspace RationalSubspace::span(std::size_t n, const Mat& vectors) {
  for (const auto& v : vectors) {
    if (v.size() != n) {
      throw DimensionMismatch("vector of length " + std::to_string(v.size()) + " in Q^" + std::to_string(n),
                              json{{"expected", n}, {"got", v.size()}});
    }
  }
  RationalSubspace s;
  s.n_ = n;
  s.basis_ = linalg::rref(vectors, n).rows;
  return s;
}

RationalSubspace RationalSubspace::full(std::size_t n) {
  Mat id(n, linalg::zeros(n));
  for (std::size_t i = 0; i < n; ++i) id[i][i] = Rational(1);
  return span(n, id);
}

RationalSubspace RationalSubspace::axis(std::size_t n, std::size_t i) {
  Vec e = linalg::zeros(n);
  e.at(i) = Rational(1);
  return span(n, {e});
}

bool RationalSubspace::contains(const Vec& v) const {
  Mat m = basis_;
  m.push_back(v);
  return linalg::rank(m, n_) == dim();
}

std::string RationalSubspace::name() const {
  if (dim() == 0) return "0";
  if (dim() == n_) return "Q^" + std::to_string(n_);
  std::string out = "span{";
  for (std::size_t i = 0; i < basis_.size(); ++i) out += (i ? "," : "") + render_vec(basis_[i]);
  return out + "}";
}

std::strong_ordering operator<=>(const RationalSubspace& a, const RationalSubspace& b) {
  if (const auto c = a.n_ <=> b.n_; c != 0) return c;
  if (const auto c = a.dim() <=> b.dim(); c != 0) return c;
  return a.basis_ <=> b.basis_;
}

RationalSubspace sub_join(const RationalSubspace& k, const RationalSubspace& m) {
  same_ambient(k, m);
  Mat rows = k.basis();
  rows.insert(rows.end(), m.basis().begin(), m.basis().end());
  return RationalSubspace::span(k.ambient(), rows);
}

RationalSubspace sub_ortho(const RationalSubspace& k) {
  return RationalSubspace::span(k.ambient(), linalg::null_space(k.basis(), k.ambient()));
}

RationalSubspace sub_meet(const RationalSubspace& k, const RationalSubspace& m) {
  same_ambient(k, m);
  return sub_ortho(sub_join(sub_ortho(k), sub_ortho(m)));
}

bool sub_leq(const RationalSubspace& k, const RationalSubspace& m) {
  same_ambient(k, m);
  return std::all_of(k.basis().begin(), k.basis().end(), [&](const Vec& v) { return m.contains(v); });
}

bool sub_orthogonal(const RationalSubspace& k, const RationalSubspace& m) {
  same_ambient(k, m);
  for (const auto& u : k.basis())
    for (const auto& v : m.basis())
      if (!linalg::dot(u, v).is_zero()) return false;
  return true;
}

UnitVector UnitVector::make(Vec coords) {
  const Rational n2 = linalg::dot(coords, coords);
  if (n2 != Rational(1)) {
    throw ScalarOutOfRange("squared norm " + n2.str() + " is not 1", json{{"vector", vec_json(coords)}, {"norm_sq", n2.str()}});
  }
  UnitVector u;
  u.v_ = std::move(coords);
  return u;
}

UnitVector sphere_point(const Vec& t) {
  const Rational s = linalg::dot(t, t);
  Vec out;
  for (const auto& x : t) out.push_back(Rational(2) * x / (s + Rational(1)));
  out.push_back((s - Rational(1)) / (s + Rational(1)));
  return UnitVector::make(std::move(out));
}

UnitVector random_unit_vector(std::size_t n, Rng& rng) {
  if (n == 0) throw DimensionMismatch("Q^0 has no unit vectors");
  if (n == 1) return UnitVector::make({Rational(rng.coin() ? 1 : -1)});
  Vec t(n - 1);
  for (auto& x : t) x = Rational(rng.between(-4, 4), rng.between(1, 3));
  return sphere_point(t);
}

RationalSubspace random_subspace(std::size_t n, Rng& rng) {
  const std::size_t k = rng.below(n + 1);
  Mat vs(k, Vec(n));
  for (auto& v : vs)
    for (auto& x : v) x = Rational(rng.between(-2, 2));
  return RationalSubspace::span(n, vs);
}

Rational projection_norm_sq(const Vec& v, const RationalSubspace& k) {
  if (v.size() != k.ambient()) {
    throw DimensionMismatch("vector of length " + std::to_string(v.size()) + " in Q^" + std::to_string(k.ambient()));
  }
  const auto& b = k.basis();
  const std::size_t d = b.size();
  if (d == 0) return Rational(0);
  // Gram system G c = B v; then ||P v||^2 = <v, B^T c> = (B v) . c.
  Mat g(d, Vec(d));
  Vec bv(d);
  for (std::size_t i = 0; i < d; ++i) {
    bv[i] = linalg::dot(b[i], v);
    for (std::size_t j = 0; j < d; ++j) g[i][j] = linalg::dot(b[i], b[j]);
  }
  const auto c = linalg::solve(g, bv, d);
  return linalg::dot(bv, *c);
}

SubspaceFamily ksub_effect_algebra(std::size_t n, const std::vector<RationalSubspace>& generators, std::size_t cap) {
  std::vector<RationalSubspace> members{RationalSubspace::zero(n), RationalSubspace::full(n)};
  std::set<RationalSubspace> seen(members.begin(), members.end());
  auto add = [&](RationalSubspace s) {
    same_ambient(s, members.front());
    if (seen.insert(s).second) {
      members.push_back(std::move(s));
      if (members.size() > cap) {
        throw ClosureTooLarge("subspace family exceeds " + std::to_string(cap) + " members",
                              json{{"cap", cap}, {"ambient", n}});
      }
    }
  };
  for (const auto& g : generators) add(g);
  // Worklist: each new member is combined with everything before it.
  for (std::size_t i = 0; i < members.size(); ++i) {
    add(sub_ortho(members[i]));
    for (std::size_t j = 0; j < i; ++j) {
      const auto a = members[i], b = members[j];
      add(sub_meet(a, b));
      if (sub_orthogonal(a, b)) add(sub_join(a, b));
    }
  }
  std::sort(members.begin(), members.end());
  std::vector<std::string> names;
  for (const auto& m : members) names.push_back(m.name());
  std::vector<SumEntry> sums;
  for (std::size_t i = 0; i < members.size(); ++i)
    for (std::size_t j = i; j < members.size(); ++j)
      if (sub_orthogonal(members[i], members[j])) {
        const auto s = sub_join(members[i], members[j]);
        const auto it = std::lower_bound(members.begin(), members.end(), s);
        if (it == members.end() || *it != s) {
          throw InvalidStructure("join of orthogonal members left the family", json{{"join", s.name()}});
        }
        sums.push_back({names[i], names[j], it->name()});
      }
  auto algebra = EffectAlgebra::table("KSub(Q^" + std::to_string(n) + ")", names, sums, names.front(), names.back());
  return SubspaceFamily{n, std::move(members), std::move(algebra)};
}

Vec epsilon_state(const UnitVector& a, const SubspaceFamily& fam) {
  Vec out;
  for (const auto& k : fam.members) out.push_back(projection_norm_sq(a, k));
  return out;
}

Report check_epsilon_state(const UnitVector& a, const SubspaceFamily& fam) {
  Report report(fam.algebra.name(), "epsilon-state");
  const Vec eps = epsilon_state(a, fam);
  const auto& e = fam.algebra;
  const json av = vec_json(a.coords());
  if (eps[e.zero()].is_zero() && eps[e.one()] == Rational(1)) {
    report.pass("constants", 2);
  } else {
    report.fail("constants", "HomViolation", json{{"a", av}, {"eps(0)", eps[e.zero()].str()}, {"eps(1)", eps[e.one()].str()}}, 2);
  }
  std::optional<json> bad;
  const auto sums = e.sums();
  for (const auto& t : sums) {
    const std::size_t x = e.index_of(t.x), y = e.index_of(t.y), z = e.index_of(t.z);
    if (eps[x] + eps[y] != eps[z]) {
      bad = json{{"a", av}, {"k", t.x}, {"m", t.y}, {"lhs", eps[z].str()}, {"rhs", (eps[x] + eps[y]).str()}};
      break;
    }
  }
  if (bad) {
    report.fail("additive", "HomViolation", *bad, sums.size());
  } else {
    report.pass("additive", sums.size());
  }
  std::size_t pairs = 0;
  for (std::size_t i = 0; i < fam.members.size() && !bad; ++i)
    for (std::size_t j = 0; j < fam.members.size() && !bad; ++j) {
      if (!sub_leq(fam.members[i], fam.members[j])) continue;
      ++pairs;
      if (eps[i] > eps[j]) bad = json{{"a", av}, {"k", fam.members[i].name()}, {"m", fam.members[j].name()}};
    }
  if (bad) {
    report.fail("monotone", "HomViolation", *bad, pairs);
  } else {
    report.pass("monotone", pairs);
  }
  return report;
}

Report check_subspace_lattice(std::size_t n, std::size_t samples, std::uint64_t seed, Exec exec) {
  Report report("Sub(Q^" + std::to_string(n) + ")", "subspace-lattice");
  Rng rng(seed);
  std::vector<RationalSubspace> pool;
  for (std::size_t i = 0; i < samples; ++i) pool.push_back(random_subspace(n, rng));
  std::vector<std::array<std::size_t, 3>> triples(samples);
  for (auto& t : triples) t = {rng.below(samples), rng.below(samples), rng.below(samples)};
  const auto zero = RationalSubspace::zero(n), full = RationalSubspace::full(n);

  auto lattice_bad = [&](std::size_t i) -> bool {
    const auto& [ia, ib, ic] = triples[i];
    const auto &a = pool[ia], &b = pool[ib], &c = pool[ic];
    return sub_meet(sub_meet(a, b), c) != sub_meet(a, sub_meet(b, c)) ||
           sub_join(sub_join(a, b), c) != sub_join(a, sub_join(b, c)) || sub_meet(a, b) != sub_meet(b, a) ||
           sub_join(a, b) != sub_join(b, a) || sub_meet(a, sub_join(a, b)) != a || sub_join(a, sub_meet(a, b)) != a;
  };
  auto triple_json = [&](std::size_t i) {
    return json{{"a", pool[triples[i][0]].name()}, {"b", pool[triples[i][1]].name()}, {"c", pool[triples[i][2]].name()}};
  };
  if (const auto bad = kernels::first_failure(samples, lattice_bad, exec)) {
    report.fail("lattice-laws", "LawViolation", triple_json(*bad), *bad + 1);
  } else {
    report.pass("lattice-laws", samples, json{{"mode", "sampled"}});
  }

  auto ortho_bad = [&](std::size_t i) -> bool {
    const auto& a = pool[triples[i][0]];
    const auto& b = pool[triples[i][1]];
    const auto ap = sub_ortho(a);
    if (sub_ortho(ap) != a || sub_join(a, ap) != full || sub_meet(a, ap) != zero) return true;
    return sub_leq(a, b) && !sub_leq(sub_ortho(b), ap);
  };
  if (const auto bad = kernels::first_failure(samples, ortho_bad, exec)) {
    report.fail("orthocomplement", "LawViolation", triple_json(*bad), *bad + 1);
  } else {
    report.pass("orthocomplement", samples);
  }

  // Comparable pairs: K spanned by random combinations of a basis of M.
  std::vector<std::pair<RationalSubspace, RationalSubspace>> comparable;
  for (std::size_t i = 0; i < samples; ++i) {
    const auto& m = pool[i];
    Mat combos;
    const std::size_t k = m.dim() == 0 ? 0 : rng.below(m.dim() + 1);
    for (std::size_t j = 0; j < k; ++j) {
      Vec v = linalg::zeros(n);
      for (const auto& row : m.basis()) v = linalg::add(v, linalg::scale(Rational(rng.between(-2, 2)), row));
      combos.push_back(v);
    }
    comparable.emplace_back(RationalSubspace::span(n, combos), m);
  }
  auto om_bad = [&](std::size_t i) {
    const auto& [k, m] = comparable[i];
    return !sub_leq(k, m) || sub_join(k, sub_meet(sub_ortho(k), m)) != m;
  };
  if (const auto bad = kernels::first_failure(samples, om_bad, exec)) {
    report.fail("orthomodular", "LawViolation",
                json{{"k", comparable[*bad].first.name()}, {"m", comparable[*bad].second.name()}}, *bad + 1);
  } else {
    report.pass("orthomodular", samples);
  }

  std::vector<UnitVector> units;
  for (std::size_t i = 0; i < samples; ++i) units.push_back(random_unit_vector(n, rng));
  auto split_bad = [&](std::size_t i) {
    return projection_norm_sq(units[i], pool[i]) + projection_norm_sq(units[i], sub_ortho(pool[i])) != Rational(1);
  };
  if (const auto bad = kernels::first_failure(samples, split_bad, exec)) {
    report.fail("projection-split", "LawViolation",
                json{{"a", vec_json(units[*bad].coords())}, {"k", pool[*bad].name()}}, *bad + 1);
  } else {
    report.pass("projection-split", samples);
  }
  return report;
}

ConvexityWitness convexity_probe(const UnitVector& a, const UnitVector& b, const Rational& lambda,
                                 const RationalSubspace& k) {
  if (lambda.sign() < 0 || lambda > Rational(1)) throw ScalarOutOfRange("weight " + lambda.str() + " outside [0,1]");
  ConvexityWitness w;
  w.a = a.coords();
  w.b = b.coords();
  w.lambda = lambda;
  w.k = k;
  w.mix = linalg::add(linalg::scale(lambda, w.a), linalg::scale(Rational(1) - lambda, w.b));
  w.at_mix = projection_norm_sq(w.mix, k);
  w.mixed = lambda * projection_norm_sq(a, k) + (Rational(1) - lambda) * projection_norm_sq(b, k);
  w.mix_is_unit = linalg::dot(w.mix, w.mix) == Rational(1);
  return w;
}

ConvexityWitness convexity_counterexample(std::size_t n) {
  if (n < 2) throw DimensionMismatch("a convexity counterexample needs dimension at least 2");
  std::vector<UnitVector> candidates;
  for (const auto& [p, q, r] : std::vector<std::array<long, 3>>{{3, 4, 5}, {5, 12, 13}, {8, 15, 17}}) {
    for (const auto& [x, y] : std::vector<std::pair<long, long>>{{p, q}, {q, p}}) {
      Vec v = linalg::zeros(n);
      v[0] = Rational(x, r);
      v[1] = Rational(y, r);
      candidates.push_back(UnitVector::make(v));
    }
  }
  const std::vector<Rational> weights{Rational(1, 2), Rational(1, 3), Rational(2, 3), Rational(1, 4), Rational(3, 4)};
  std::vector<RationalSubspace> lines;
  for (std::size_t i = 0; i < n; ++i) lines.push_back(RationalSubspace::axis(n, i));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      Vec v = linalg::zeros(n);
      v[i] = v[j] = Rational(1);
      lines.push_back(RationalSubspace::span(n, {v}));
    }
  for (const auto& a : candidates)
    for (const auto& b : candidates) {
      if (a.coords() == b.coords()) continue;
      for (const auto& l : weights)
        for (const auto& k : lines) {
          auto w = convexity_probe(a, b, l, k);
          if (w.at_mix != w.mixed) return w;
        }
    }
  throw LawViolation("no convexity counterexample in the search space");
}

json to_json(const ConvexityWitness& w) {
  return json{{"a", vec_json(w.a)},
              {"b", vec_json(w.b)},
              {"lambda", w.lambda.str()},
              {"subspace", w.k.name()},
              {"mix", vec_json(w.mix)},
              {"mix_norm_sq", linalg::dot(w.mix, w.mix).str()},
              {"mix_is_unit", w.mix_is_unit},
              {"epsilon_at_mix", w.at_mix.str()},
              {"mix_of_epsilons", w.mixed.str()},
              {"discrepancy", (w.at_mix - w.mixed).str()}};
}

}  // namespace duality
