#include "duality/effectalg.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace duality {

EffectAlgebra EffectAlgebra::table(std::string name, std::vector<std::string> elements,
                                   const std::vector<SumEntry>& sums, const std::string& zero,
                                   const std::string& one) {
  const std::size_t n = elements.size();
  if (n == 0) throw InvalidStructure(name + ": an effect algebra needs elements");
  if (n > 64) throw TooLarge(name + ": more than 64 elements", json{{"size", n}});
  if (std::set<std::string>(elements.begin(), elements.end()).size() != n) {
    throw InvalidStructure(name + ": duplicate element names");
  }
  EffectAlgebra e;
  e.name_ = std::move(name);
  e.elements_ = std::move(elements);
  e.table_.assign(n * n, std::nullopt);
  e.zero_ = e.index_of(zero);
  e.one_ = e.index_of(one);
  auto put = [&](std::size_t a, std::size_t b, std::size_t c) {
    auto& slot = e.table_[a * n + b];
    if (slot && *slot != c) {
      throw InvalidStructure(e.name_ + ": conflicting sums for " + e.elements_[a] + " + " + e.elements_[b],
                             json{{"x", e.elements_[a]}, {"y", e.elements_[b]}});
    }
    slot = c;
  };
  for (const auto& s : sums) {
    const std::size_t a = e.index_of(s.x), b = e.index_of(s.y), c = e.index_of(s.z);
    put(a, b, c);
    put(b, a, c);
  }
  e.complements_.resize(n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (e.table_[a * n + b] == e.one_) e.complements_[a].push_back(b);
  return e;
}

EffectAlgebra EffectAlgebra::interval_nat(std::size_t m) {
  std::vector<std::string> names;
  std::vector<SumEntry> sums;
  for (std::size_t a = 0; a <= m; ++a) {
    names.push_back(std::to_string(a));
    for (std::size_t b = a; a + b <= m; ++b) sums.push_back({std::to_string(a), std::to_string(b), std::to_string(a + b)});
  }
  return table("IntervalNat(" + std::to_string(m) + ")", names, sums, "0", std::to_string(m));
}

EffectAlgebra EffectAlgebra::two() { return interval_nat(1).renamed("2"); }

EffectAlgebra EffectAlgebra::trivial() { return table("1", {"0"}, {{"0", "0", "0"}}, "0", "0"); }

EffectAlgebra EffectAlgebra::mo2() {
  return table("MO2", {"0", "p", "p_perp", "1"},
               {{"0", "0", "0"}, {"0", "p", "p"}, {"0", "p_perp", "p_perp"}, {"0", "1", "1"}, {"p", "p_perp", "1"}}, "0",
               "1");
}

EffectAlgebra EffectAlgebra::powerset(std::size_t n) {
  if (n > 6) throw TooLarge("powerset effect algebras are limited to 6 atoms", json{{"atoms", n}});
  const std::size_t k = std::size_t{1} << n;
  std::vector<std::string> names;
  for (std::size_t m = 0; m < k; ++m) {
    std::string s = "{";
    for (std::size_t i = 0; i < n; ++i) {
      if ((m >> i) & 1U) s += (s.size() > 1 ? "," : "") + std::to_string(i);
    }
    names.push_back(s + "}");
  }
  std::vector<SumEntry> sums;
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = a; b < k; ++b)
      if ((a & b) == 0) sums.push_back({names[a], names[b], names[a | b]});
  return table("PowersetBA(" + std::to_string(n) + ")", names, sums, names.front(), names.back());
}

EffectAlgebra EffectAlgebra::product(const EffectAlgebra& e, const EffectAlgebra& d) {
  const std::size_t m = d.size();
  std::vector<std::string> names;
  for (const auto& x : e.elements())
    for (const auto& y : d.elements()) names.push_back("(" + x + "," + y + ")");
  std::vector<SumEntry> sums;
  for (std::size_t a = 0; a < e.size(); ++a)
    for (std::size_t b = 0; b < e.size(); ++b) {
      const auto s = e.sum(a, b);
      if (!s) continue;
      for (std::size_t c = 0; c < m; ++c)
        for (std::size_t dd = 0; dd < m; ++dd) {
          const auto t = d.sum(c, dd);
          if (t) sums.push_back({names[a * m + c], names[b * m + dd], names[*s * m + *t]});
        }
    }
  return table(e.name() + " x " + d.name(), names, sums, names[e.zero() * m + d.zero()],
               names[e.one() * m + d.one()]);
}

namespace {

/// Coproduct positions: 0, inl(E \ {0,1}), inr(D \ {0,1}), 1.
struct CoproductLayout {
  std::vector<std::size_t> left, right;  // summand index -> coproduct index
  std::vector<std::string> names;
};

CoproductLayout coproduct_layout(const EffectAlgebra& e, const EffectAlgebra& d) {
  CoproductLayout lay;
  lay.names.push_back("0");
  lay.left.assign(e.size(), 0);
  lay.right.assign(d.size(), 0);
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (i == e.zero() || i == e.one()) continue;
    lay.left[i] = lay.names.size();
    lay.names.push_back("inl(" + e.elements()[i] + ")");
  }
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (i == d.zero() || i == d.one()) continue;
    lay.right[i] = lay.names.size();
    lay.names.push_back("inr(" + d.elements()[i] + ")");
  }
  const std::size_t top = lay.names.size();
  lay.names.push_back("1");
  lay.left[e.one()] = top;
  lay.right[d.one()] = top;
  return lay;
}

}  // namespace

EffectAlgebra EffectAlgebra::coproduct(const EffectAlgebra& e, const EffectAlgebra& d) {
  const auto lay = coproduct_layout(e, d);
  std::vector<SumEntry> sums;
  for (const auto* side : {&e, &d}) {
    const auto& inj = side == &e ? lay.left : lay.right;
    for (std::size_t a = 0; a < side->size(); ++a)
      for (std::size_t b = 0; b < side->size(); ++b)
        if (const auto s = side->sum(a, b)) sums.push_back({lay.names[inj[a]], lay.names[inj[b]], lay.names[inj[*s]]});
  }
  return table(e.name() + " + " + d.name(), lay.names, sums, "0", "1");
}

std::size_t EffectAlgebra::index_of(const std::string& x) const {
  const auto it = std::find(elements_.begin(), elements_.end(), x);
  if (it == elements_.end()) throw ForeignElement("'" + x + "' is not an element of " + name_, json{{"element", x}});
  return static_cast<std::size_t>(it - elements_.begin());
}

std::vector<std::size_t> EffectAlgebra::complements(std::size_t a) const { return complements_[a]; }

std::size_t EffectAlgebra::ortho(std::size_t a) const {
  if (complements_[a].size() != 1) {
    json cands = json::array();
    for (std::size_t c : complements_[a]) cands.push_back(elements_[c]);
    throw AxiomViolation(name_ + ": " + elements_[a] + " has " + std::to_string(cands.size()) + " orthosupplements",
                         json{{"x", elements_[a]}, {"candidates", cands}});
  }
  return complements_[a].front();
}

bool EffectAlgebra::leq(std::size_t a, std::size_t b) const {
  for (std::size_t c = 0; c < size(); ++c) {
    if (sum(a, c) == b) return true;
  }
  return false;
}

std::vector<SumEntry> EffectAlgebra::sums() const {
  std::vector<SumEntry> out;
  for (std::size_t a = 0; a < size(); ++a)
    for (std::size_t b = a; b < size(); ++b)
      if (const auto s = sum(a, b)) out.push_back({elements_[a], elements_[b], elements_[*s]});
  return out;
}

EffectAlgebra EffectAlgebra::renamed(std::string name) const {
  EffectAlgebra e = *this;
  e.name_ = std::move(name);
  return e;
}

Report check_effect_axioms(const EffectAlgebra& e, Exec exec) {
  const std::size_t n = e.size();
  if (n > 64) throw TooLarge(e.name() + ": axiom scan limited to 64 elements", json{{"size", n}});
  Report report(e.name(), "effect-axioms");
  const auto& nm = e.elements();
  auto s = [&](std::size_t a, std::size_t b) { return e.sum(a, b); };

  if (const auto bad = kernels::first_failure(n * n, [&](std::size_t k) { return s(k / n, k % n) != s(k % n, k / n); },
                                              exec)) {
    report.fail("commutativity", "AxiomViolation", json{{"x", nm[*bad / n]}, {"y", nm[*bad % n]}}, *bad + 1);
  } else {
    report.pass("commutativity", n * n);
  }

  auto assoc_bad = [&](std::size_t k) {
    const std::size_t x = k / (n * n), y = k / n % n, z = k % n;
    const auto yz = s(y, z);
    if (!yz) return false;
    const auto lhs = s(x, *yz);
    if (!lhs) return false;
    const auto xy = s(x, y);
    if (!xy) return true;
    const auto rhs = s(*xy, z);
    return !rhs || *rhs != *lhs;
  };
  if (const auto bad = kernels::first_failure(n * n * n, assoc_bad, exec)) {
    const std::size_t k = *bad;
    report.fail("associativity", "AxiomViolation", json{{"x", nm[k / (n * n)]}, {"y", nm[k / n % n]}, {"z", nm[k % n]}},
                k + 1);
  } else {
    report.pass("associativity", n * n * n);
  }

  std::optional<json> bad;
  for (std::size_t x = 0; x < n && !bad; ++x) {
    if (s(e.zero(), x) != x) bad = json{{"x", nm[x]}};
  }
  if (bad) {
    report.fail("zero-law", "AxiomViolation", *bad, n);
  } else {
    report.pass("zero-law", n);
  }

  bad.reset();
  for (std::size_t x = 0; x < n && !bad; ++x) {
    const auto c = e.complements(x);
    if (c.size() != 1) {
      json cands = json::array();
      for (std::size_t y : c) cands.push_back(nm[y]);
      bad = json{{"x", nm[x]}, {"candidates", cands}};
    }
  }
  if (bad) {
    report.fail("orthosupplement", "AxiomViolation", *bad, n, json{{"condition", "uniqueness"}});
  } else {
    report.pass("orthosupplement", n);
  }

  bad.reset();
  for (std::size_t x = 0; x < n && !bad; ++x) {
    if (e.orthogonal(x, e.one()) && x != e.zero()) bad = json{{"x", nm[x]}};
  }
  if (bad) {
    report.fail("positivity", "AxiomViolation", *bad, n);
  } else {
    report.pass("positivity", n);
  }
  return report;
}

Report check_ea_hom(const EffectAlgebra& e, const EffectAlgebra& d, const EAMap& f) {
  Report report(e.name() + " -> " + d.name(), "effect-hom");
  if (f.size() != e.size()) {
    report.fail("arity", "NotHomomorphism", json{{"expected", e.size()}, {"got", f.size()}});
    return report;
  }
  if (f[e.one()] == d.one()) {
    report.pass("preserves-one", 1);
  } else {
    report.fail("preserves-one", "NotHomomorphism", json{{"image_of_one", d.elements()[f[e.one()]]}}, 1);
  }
  std::optional<json> bad;
  const std::size_t n = e.size();
  for (std::size_t a = 0; a < n && !bad; ++a)
    for (std::size_t b = 0; b < n && !bad; ++b) {
      const auto s = e.sum(a, b);
      if (s && d.sum(f[a], f[b]) != f[*s]) {
        bad = json{{"x", e.elements()[a]}, {"y", e.elements()[b]}, {"f(x+y)", d.elements()[f[*s]]},
                   {"defined", d.orthogonal(f[a], f[b])}};
      }
    }
  if (bad) {
    report.fail("preserves-sums", "NotHomomorphism", *bad, n * n);
  } else {
    report.pass("preserves-sums", n * n);
  }
  return report;
}

bool is_ea_hom(const EffectAlgebra& e, const EffectAlgebra& d, const EAMap& f) { return check_ea_hom(e, d, f).ok(); }

std::vector<EAMap> enumerate_ea_homs(const EffectAlgebra& e, const EffectAlgebra& d, Exec exec) {
  const std::size_t n = e.size();
  auto consistent = [&](const EAMap& f, std::size_t i) {
    if (i == e.one() && f[i] != d.one()) return false;
    for (std::size_t a = 0; a <= i; ++a)
      for (std::size_t b = 0; b <= i; ++b) {
        if (a != i && b != i) continue;
        const auto s = e.sum(a, b);
        if (!s) continue;
        const auto t = d.sum(f[a], f[b]);
        if (!t) return false;
        if (*s <= i && *t != f[*s]) return false;
      }
    // Sums landing on i from earlier pairs.
    for (std::size_t a = 0; a < i; ++a)
      for (std::size_t b = 0; b < i; ++b)
        if (e.sum(a, b) == i && d.sum(f[a], f[b]) != f[i]) return false;
    return true;
  };
  auto homs = kernels::backtrack(n, d.size(), consistent, exec);
  for (const auto& f : homs) {
    if (f[e.zero()] != d.zero()) {
      throw LawViolation("homomorphism does not preserve 0", json{{"image_of_zero", d.elements()[f[e.zero()]]}});
    }
    for (std::size_t x = 0; x < n; ++x) {
      if (f[e.ortho(x)] != d.ortho(f[x])) {
        throw LawViolation("homomorphism does not preserve orthosupplements", json{{"x", e.elements()[x]}});
      }
    }
  }
  return homs;
}

std::vector<std::pair<std::size_t, EAMap>> points(const EffectAlgebra& e, Exec exec) {
  const auto m = EffectAlgebra::mo2();
  const std::size_t p = m.index_of("p");
  std::vector<std::pair<std::size_t, EAMap>> out;
  for (auto& f : enumerate_ea_homs(m, e, exec)) out.emplace_back(f[p], std::move(f));
  std::sort(out.begin(), out.end());
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (out[i].first != i) {
      throw LawViolation(e.name() + ": homomorphisms MO2 -> E do not biject with elements",
                         json{{"homs", out.size()}, {"elements", e.size()}});
    }
  }
  if (out.size() != e.size()) {
    throw LawViolation(e.name() + ": homomorphisms MO2 -> E do not biject with elements",
                       json{{"homs", out.size()}, {"elements", e.size()}});
  }
  return out;
}

std::optional<EAMap> find_isomorphism(const EffectAlgebra& e, const EffectAlgebra& d, Exec exec) {
  if (e.size() != d.size()) return std::nullopt;
  for (const auto& f : enumerate_ea_homs(e, d, exec)) {
    EAMap inv(d.size(), d.size());
    bool bij = true;
    for (std::size_t x = 0; x < e.size() && bij; ++x) {
      if (inv[f[x]] != d.size()) bij = false;
      inv[f[x]] = x;
    }
    if (bij && is_ea_hom(d, e, inv)) return f;
  }
  return std::nullopt;
}

EAMap projection(const EffectAlgebra& e, const EffectAlgebra& d, int which) {
  EAMap f;
  for (std::size_t a = 0; a < e.size(); ++a)
    for (std::size_t b = 0; b < d.size(); ++b) f.push_back(which == 0 ? a : b);
  return f;
}

EAMap injection(const EffectAlgebra& e, const EffectAlgebra& d, int which) {
  const auto lay = coproduct_layout(e, d);
  EAMap f = which == 0 ? lay.left : lay.right;
  return f;
}

namespace {

EAMap compose(const EAMap& g, const EAMap& f) {
  EAMap h;
  for (std::size_t x : f) h.push_back(g[x]);
  return h;
}

}  // namespace

Report check_product_universal(const EffectAlgebra& e, const EffectAlgebra& d, const std::vector<EffectAlgebra>& tests,
                               Exec exec) {
  const auto p = EffectAlgebra::product(e, d);
  Report report(p.name(), "product-universal");
  const auto p0 = projection(e, d, 0), p1 = projection(e, d, 1);
  if (is_ea_hom(p, e, p0) && is_ea_hom(p, d, p1)) {
    report.pass("projections-are-homs", 2);
  } else {
    report.fail("projections-are-homs", "NotHomomorphism", json{{"product", p.name()}}, 2);
  }
  std::size_t cones = 0;
  std::optional<json> bad;
  for (const auto& c : tests) {
    const auto fe = enumerate_ea_homs(c, e, exec), fd = enumerate_ea_homs(c, d, exec);
    std::map<std::pair<EAMap, EAMap>, std::size_t> mediators;
    for (const auto& h : enumerate_ea_homs(c, p, exec)) ++mediators[{compose(p0, h), compose(p1, h)}];
    for (const auto& f : fe)
      for (const auto& g : fd) {
        ++cones;
        const auto it = mediators.find({f, g});
        const std::size_t count = it == mediators.end() ? 0 : it->second;
        if (count != 1 && !bad) bad = json{{"test", c.name()}, {"mediators", count}};
      }
    if (!bad && mediators.size() != fe.size() * fd.size()) bad = json{{"test", c.name()}, {"reason", "extra mediators"}};
  }
  if (bad) {
    report.fail("unique-mediator", "LawViolation", *bad, cones);
  } else {
    report.pass("unique-mediator", cones);
  }
  return report;
}

Report check_coproduct_universal(const EffectAlgebra& e, const EffectAlgebra& d,
                                 const std::vector<EffectAlgebra>& tests, Exec exec) {
  const auto s = EffectAlgebra::coproduct(e, d);
  Report report(s.name(), "coproduct-universal");
  const auto i0 = injection(e, d, 0), i1 = injection(e, d, 1);
  if (is_ea_hom(e, s, i0) && is_ea_hom(d, s, i1)) {
    report.pass("injections-are-homs", 2);
  } else {
    report.fail("injections-are-homs", "NotHomomorphism", json{{"coproduct", s.name()}}, 2);
  }
  std::size_t cocones = 0;
  std::optional<json> bad;
  for (const auto& c : tests) {
    const auto fe = enumerate_ea_homs(e, c, exec), fd = enumerate_ea_homs(d, c, exec);
    std::map<std::pair<EAMap, EAMap>, std::size_t> mediators;
    for (const auto& h : enumerate_ea_homs(s, c, exec)) ++mediators[{compose(h, i0), compose(h, i1)}];
    for (const auto& f : fe)
      for (const auto& g : fd) {
        ++cocones;
        const auto it = mediators.find({f, g});
        const std::size_t count = it == mediators.end() ? 0 : it->second;
        if (count != 1 && !bad) bad = json{{"test", c.name()}, {"mediators", count}};
      }
  }
  if (bad) {
    report.fail("unique-mediator", "LawViolation", *bad, cocones);
  } else {
    report.pass("unique-mediator", cocones);
  }
  return report;
}

}  // namespace duality
