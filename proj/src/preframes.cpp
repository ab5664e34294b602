#include "duality/preframes.hpp"

#include <algorithm>

namespace duality {

namespace {

std::vector<std::vector<std::size_t>> meet_table(const std::vector<std::vector<bool>>& leq, const std::string& name,
                                                 const std::vector<std::string>& elements) {
  const std::size_t n = leq.size();
  std::vector<std::vector<std::size_t>> meet(n, std::vector<std::size_t>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      std::optional<std::size_t> best;
      for (std::size_t c = 0; c < n; ++c) {
        if (leq[c][a] && leq[c][b] && (!best || leq[*best][c])) best = c;
      }
      // best is maximal among lower bounds visited; confirm it is greatest.
      bool greatest = best.has_value();
      for (std::size_t c = 0; c < n && greatest; ++c) {
        if (leq[c][a] && leq[c][b] && !leq[c][*best]) greatest = false;
      }
      if (!greatest) {
        throw InvalidStructure(name + ": " + elements[a] + " and " + elements[b] + " have no meet",
                               json{{"a", elements[a]}, {"b", elements[b]}});
      }
      meet[a][b] = *best;
    }
  return meet;
}

std::vector<Mask> directed_subsets(const FinitePreframe& l, std::uint64_t seed) {
  const std::size_t n = l.size();
  std::vector<Mask> out;
  if (n <= 10) {
    for (Mask d = 1; d < (Mask{1} << n); ++d) {
      if (l.directed_join(d)) out.push_back(d);
    }
    return out;
  }
  // Down-sets of single elements intersected with random subsets keep their maximum.
  Rng rng(seed);
  for (int k = 0; k < 500; ++k) {
    const std::size_t top = rng.below(n);
    Mask d = Mask{1} << top;
    for (std::size_t i = 0; i < n; ++i) {
      if (l.leq(i, top) && rng.below(2) == 0) d |= Mask{1} << i;
    }
    out.push_back(d);
  }
  return out;
}

}  // namespace

FinitePreframe FinitePreframe::from_leq(std::string name, std::vector<std::string> elements,
                                        std::vector<std::vector<bool>> leq) {
  const std::size_t n = elements.size();
  if (n == 0) throw InvalidStructure(name + ": a preframe needs a top element");
  if (n > 64) throw TooLarge(name + ": more than 64 elements", json{{"size", n}});
  if (leq.size() != n) throw InvalidStructure(name + ": order matrix has the wrong size");
  for (const auto& row : leq) {
    if (row.size() != n) throw InvalidStructure(name + ": order matrix has the wrong size");
  }
  for (std::size_t a = 0; a < n; ++a) {
    if (!leq[a][a]) throw InvalidStructure(name + ": order is not reflexive at " + elements[a]);
    for (std::size_t b = 0; b < n; ++b) {
      if (a != b && leq[a][b] && leq[b][a]) {
        throw InvalidStructure(name + ": order is not antisymmetric", json{{"a", elements[a]}, {"b", elements[b]}});
      }
      for (std::size_t c = 0; c < n; ++c) {
        if (leq[a][b] && leq[b][c] && !leq[a][c]) {
          throw InvalidStructure(name + ": order is not transitive",
                                 json{{"a", elements[a]}, {"b", elements[b]}, {"c", elements[c]}});
        }
      }
    }
  }
  FinitePreframe l;
  l.meet_ = meet_table(leq, name, elements);
  std::optional<std::size_t> top;
  for (std::size_t t = 0; t < n && !top; ++t) {
    if (std::all_of(leq.begin(), leq.end(), [&](const auto& row) { return row[t]; })) top = t;
  }
  if (!top) throw InvalidStructure(name + ": no top element");
  l.top_ = *top;
  l.name_ = std::move(name);
  l.elements_ = std::move(elements);
  l.leq_ = std::move(leq);
  return l;
}

FinitePreframe FinitePreframe::from_order(std::string name, std::vector<std::string> elements,
                                          const std::vector<std::pair<std::string, std::string>>& pairs) {
  const std::size_t n = elements.size();
  std::vector<std::vector<bool>> leq(n, std::vector<bool>(n, false));
  auto idx = [&](const std::string& e) {
    const auto it = std::find(elements.begin(), elements.end(), e);
    if (it == elements.end()) throw ForeignElement("'" + e + "' is not an element of " + name);
    return static_cast<std::size_t>(it - elements.begin());
  };
  for (std::size_t i = 0; i < n; ++i) leq[i][i] = true;
  for (const auto& [a, b] : pairs) leq[idx(a)][idx(b)] = true;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (leq[i][k] && leq[k][j]) leq[i][j] = true;
  return from_leq(std::move(name), std::move(elements), std::move(leq));
}

FinitePreframe FinitePreframe::chain(std::size_t n) {
  std::vector<std::string> names;
  std::vector<std::vector<bool>> leq(n, std::vector<bool>(n));
  for (std::size_t i = 0; i < n; ++i) {
    names.push_back(std::to_string(i));
    for (std::size_t j = 0; j < n; ++j) leq[i][j] = i <= j;
  }
  return from_leq("chain" + std::to_string(n), names, leq);
}

std::size_t FinitePreframe::index_of(const std::string& e) const {
  const auto it = std::find(elements_.begin(), elements_.end(), e);
  if (it == elements_.end()) throw ForeignElement("'" + e + "' is not an element of " + name_, json{{"element", e}});
  return static_cast<std::size_t>(it - elements_.begin());
}

std::vector<std::pair<std::string, std::string>> FinitePreframe::covers() const {
  std::vector<std::pair<std::string, std::string>> out;
  const std::size_t n = size();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      if (a == b || !leq_[a][b]) continue;
      bool cover = true;
      for (std::size_t c = 0; c < n && cover; ++c) {
        if (c != a && c != b && leq_[a][c] && leq_[c][b]) cover = false;
      }
      if (cover) out.emplace_back(elements_[a], elements_[b]);
    }
  return out;
}

std::optional<std::size_t> FinitePreframe::directed_join(Mask d) const {
  for (std::size_t m = 0; m < size(); ++m) {
    if (!mask_has(d, m)) continue;
    bool greatest = true;
    for (std::size_t i = 0; i < size() && greatest; ++i) {
      if (mask_has(d, i) && !leq_[i][m]) greatest = false;
    }
    if (greatest) return m;
  }
  return std::nullopt;
}

Report check_preframe_axioms(const FinitePreframe& l, std::uint64_t seed) {
  Report report(l.name(), "preframe-axioms");
  const std::size_t n = l.size();
  std::optional<json> bad;
  for (std::size_t a = 0; a < n && !bad; ++a) {
    if (!l.leq(a, a)) bad = json{{"a", l.elements()[a]}};
    for (std::size_t b = 0; b < n && !bad; ++b) {
      if (a != b && l.leq(a, b) && l.leq(b, a)) bad = json{{"a", l.elements()[a]}, {"b", l.elements()[b]}};
      for (std::size_t c = 0; c < n && !bad; ++c) {
        if (l.leq(a, b) && l.leq(b, c) && !l.leq(a, c)) {
          bad = json{{"a", l.elements()[a]}, {"b", l.elements()[b]}, {"c", l.elements()[c]}};
        }
      }
    }
  }
  if (bad) {
    report.fail("partial-order", "InvalidStructure", *bad);
  } else {
    report.pass("partial-order", n * n * n);
  }

  bad.reset();
  for (std::size_t a = 0; a < n && !bad; ++a)
    for (std::size_t b = 0; b < n && !bad; ++b) {
      const std::size_t m = l.meet(a, b);
      bool ok = l.leq(m, a) && l.leq(m, b);
      for (std::size_t c = 0; c < n && ok; ++c) {
        if (l.leq(c, a) && l.leq(c, b) && !l.leq(c, m)) ok = false;
      }
      if (!ok) bad = json{{"a", l.elements()[a]}, {"b", l.elements()[b]}, {"meet", l.elements()[m]}};
    }
  if (bad) {
    report.fail("binary-meets", "InvalidStructure", *bad);
  } else {
    report.pass("binary-meets", n * n);
  }

  bool top_ok = true;
  for (std::size_t a = 0; a < n; ++a) top_ok = top_ok && l.leq(a, l.top());
  if (top_ok) {
    report.pass("top", n);
  } else {
    report.fail("top", "InvalidStructure", json{{"top", l.elements()[l.top()]}});
  }

  const auto dirs = directed_subsets(l, seed);
  std::size_t cases = 0;
  bad.reset();
  for (Mask d : dirs) {
    const std::size_t j = *l.directed_join(d);
    for (std::size_t x = 0; x < n && !bad; ++x) {
      ++cases;
      Mask image = 0;
      for (std::size_t i = 0; i < n; ++i) {
        if (mask_has(d, i)) image |= Mask{1} << l.meet(x, i);
      }
      const auto rhs = l.directed_join(image);
      if (!rhs || *rhs != l.meet(x, j)) {
        bad = json{{"x", l.elements()[x]}, {"family", subset_name(l.elements(), d)}};
      }
    }
    if (bad) break;
  }
  const json detail{{"mode", n <= 10 ? "exhaustive" : "sampled"}};
  if (bad) {
    report.fail("distributive-directed", "InvalidStructure", *bad, cases, detail);
  } else {
    report.pass("distributive-directed", cases, detail);
  }
  return report;
}

std::string subset_name(const std::vector<std::string>& names, Mask m) {
  std::string out = "{";
  bool first = true;
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (!mask_has(m, i)) continue;
    if (!first) out += ",";
    out += names[i];
    first = false;
  }
  return out + "}";
}

namespace {

bool is_filter(const FinitePreframe& l, Mask u) {
  const std::size_t n = l.size();
  if (!mask_has(u, l.top())) return false;
  for (std::size_t a = 0; a < n; ++a) {
    if (!mask_has(u, a)) continue;
    for (std::size_t b = 0; b < n; ++b) {
      if (l.leq(a, b) && !mask_has(u, b)) return false;
      if (mask_has(u, b) && !mask_has(u, l.meet(a, b))) return false;
    }
  }
  return true;
}

}  // namespace

std::vector<Mask> scott_open_filters(const FinitePreframe& l, Exec exec) {
  if (l.size() > 20) throw TooLarge(l.name() + ": filter scan limited to 20 elements", json{{"size", l.size()}});
  return kernels::gather<Mask>(
      std::size_t{1} << l.size(),
      [&](std::size_t i) -> std::optional<Mask> { return is_filter(l, i) ? std::optional<Mask>(i) : std::nullopt; },
      exec);
}

Report check_scott_filters(const FinitePreframe& l, Exec exec) {
  Report report(l.name(), "scott-open-filters");
  const auto filters = scott_open_filters(l, exec);
  const std::size_t n = l.size();
  const auto dirs = directed_subsets(l, kDefaultSeed);

  // Indicator preserves top, binary meets and directed joins.
  auto hom_failure = [&](Mask u) -> std::optional<json> {
    if (!mask_has(u, l.top())) return json{{"filter", subset_name(l.elements(), u)}, {"law", "top"}};
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) {
        if (mask_has(u, l.meet(a, b)) != (mask_has(u, a) && mask_has(u, b))) {
          return json{{"filter", subset_name(l.elements(), u)}, {"law", "meet"}, {"a", l.elements()[a]},
                      {"b", l.elements()[b]}};
        }
      }
    for (Mask d : dirs) {
      if (mask_has(u, *l.directed_join(d)) != ((d & u) != 0)) {
        return json{{"filter", subset_name(l.elements(), u)}, {"law", "directed-join"},
                    {"family", subset_name(l.elements(), d)}};
      }
    }
    return std::nullopt;
  };
  std::optional<json> bad;
  for (Mask u : filters) {
    if ((bad = hom_failure(u))) break;
  }
  if (bad) {
    report.fail("indicators-are-preframe-maps", "NotPreframeMap", *bad, filters.size());
  } else {
    report.pass("indicators-are-preframe-maps", filters.size());
  }

  // Independently: every subset whose indicator is a preframe map is listed.
  if (n <= 12) {
    std::vector<Mask> homs;
    for (Mask u = 0; u < (Mask{1} << n); ++u) {
      if (!hom_failure(u)) homs.push_back(u);
    }
    if (homs == filters) {
      report.pass("filters-are-true-kernels", std::size_t{1} << n, json{{"filters", filters.size()}});
    } else {
      report.fail("filters-are-true-kernels", "LawViolation",
                  json{{"filters", filters.size()}, {"homs", homs.size()}}, std::size_t{1} << n);
    }
  } else {
    report.skip("filters-are-true-kernels", "carrier above 12 elements");
  }
  return report;
}

ConvexAlgebra hom_set_algebra(const FinitePreframe& l) {
  const auto filters = scott_open_filters(l, Exec::serial);
  std::vector<std::string> names;
  for (Mask u : filters) names.push_back(subset_name(l.elements(), u));
  const std::size_t m = filters.size();
  std::vector<std::vector<std::size_t>> meet(m, std::vector<std::size_t>(m));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      const auto it = std::lower_bound(filters.begin(), filters.end(), filters[i] & filters[j]);
      meet[i][j] = static_cast<std::size_t>(it - filters.begin());
    }
  return ConvexAlgebra::semilattice("Hom(" + l.name() + ",2)", names, meet);
}

FinitePreframe hom_preframe(const ConvexAlgebra& x, Exec exec) {
  const auto homs = hom_to_two(x, exec);
  const auto gens = mask_names(x, ~Mask{0} >> (64 - x.generator_count()));
  std::vector<std::string> names;
  for (const auto& f : homs) names.push_back(subset_name(gens, f.ones));
  const std::size_t m = homs.size();
  std::vector<std::vector<bool>> leq(m, std::vector<bool>(m));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) leq[i][j] = mask_subset(homs[i].ones, homs[j].ones);
  return FinitePreframe::from_leq("Hom(" + x.name() + ",2)", names, leq);
}

Report check_preframe_map(const ConvexAlgebra& x, const FinitePreframe& l, const PreframeMap& g, Exec exec) {
  Report report(l.name() + " -> Hom(" + x.name() + ",2)", "preframe-map");
  const std::size_t n = l.size();
  if (g.images.size() != n) {
    report.fail("arity", "NotPreframeMap", json{{"expected", n}, {"got", g.images.size()}});
    return report;
  }
  const auto homs = hom_to_two(x, exec);
  const auto gens = mask_names(x, ~Mask{0} >> (64 - x.generator_count()));
  const Mask all = homs.back().ones;

  std::optional<json> bad;
  for (std::size_t a = 0; a < n && !bad; ++a) {
    if (std::find(homs.begin(), homs.end(), g.images[a]) == homs.end()) {
      bad = json{{"a", l.elements()[a]}, {"image", subset_name(gens, g.images[a].ones)}};
    }
  }
  if (bad) {
    report.fail("images-affine", "NotPreframeMap", *bad, n);
    return report;
  }
  report.pass("images-affine", n);

  if (g.images[l.top()].ones == all) {
    report.pass("preserves-top", 1);
  } else {
    report.fail("preserves-top", "NotPreframeMap", json{{"image", subset_name(gens, g.images[l.top()].ones)}}, 1);
  }
  for (std::size_t a = 0; a < n && !bad; ++a)
    for (std::size_t b = 0; b < n && !bad; ++b) {
      if (g.images[l.meet(a, b)].ones != (g.images[a].ones & g.images[b].ones)) {
        bad = json{{"a", l.elements()[a]}, {"b", l.elements()[b]}};
      }
    }
  if (bad) {
    report.fail("preserves-meets", "NotPreframeMap", *bad, n * n);
  } else {
    report.pass("preserves-meets", n * n);
  }
  // Pointwise directed joins in Hom(X,2) are unions; on a finite directed
  // family this is the image of its maximum.
  const auto dirs = directed_subsets(l, kDefaultSeed);
  for (Mask d : dirs) {
    Mask uni = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask_has(d, i)) uni |= g.images[i].ones;
    }
    if (g.images[*l.directed_join(d)].ones != uni) {
      bad = json{{"family", subset_name(l.elements(), d)}};
      break;
    }
  }
  if (bad) {
    report.fail("preserves-directed-joins", "NotPreframeMap", *bad, dirs.size());
  } else {
    report.pass("preserves-directed-joins", dirs.size());
  }
  return report;
}

namespace {

std::size_t filter_index(const ConvexAlgebra& hs, const ConvexElement& v) {
  hs.require(v);
  return hs.index_of(std::get<std::string>(v));
}

}  // namespace

PreframeMap pf_transpose(const ConvexAlgebra& x, const FinitePreframe& l, const ConvexMap& f,
                         const ConvexCheckOptions& opt) {
  const auto hs = hom_set_algebra(l);
  const auto filters = scott_open_filters(l, Exec::serial);
  check_affine(x, hs, f, opt).require();
  const auto gens = x.generators();
  PreframeMap g;
  g.images.assign(l.size(), TwoValuedMap{});
  for (std::size_t i = 0; i < gens.size(); ++i) {
    const Mask fx = filters[filter_index(hs, f(gens[i]))];
    for (std::size_t a = 0; a < l.size(); ++a) {
      if (mask_has(fx, a)) g.images[a].ones |= Mask{1} << i;
    }
  }
  check_preframe_map(x, l, g, opt.exec).require();
  return g;
}

ConvexMap pf_transpose_inverse(const ConvexAlgebra& x, const FinitePreframe& l, const PreframeMap& g,
                               const ConvexCheckOptions& opt) {
  check_preframe_map(x, l, g, opt.exec).require();
  const auto hs = hom_set_algebra(l);
  const auto& names = l.elements();
  ConvexMap f = [x, names, g](const ConvexElement& e) -> ConvexElement {
    Mask u = 0;
    for (std::size_t a = 0; a < names.size(); ++a) {
      if (apply(x, g.images[a], e) == 1) u |= Mask{1} << a;
    }
    return subset_name(names, u);
  };
  check_affine(x, hs, f, opt).require();
  return f;
}

std::vector<PreframeMap> enumerate_preframe_maps(const ConvexAlgebra& x, const FinitePreframe& l, Exec exec) {
  const auto homs = hom_to_two(x, exec);
  const Mask all = homs.back().ones;
  auto consistent = [&](const std::vector<std::size_t>& as, std::size_t i) {
    if (i == l.top() && homs[as[i]].ones != all) return false;
    for (std::size_t a = 0; a <= i; ++a) {
      const std::size_t m = l.meet(a, i);
      if (m <= i && homs[as[m]].ones != (homs[as[a]].ones & homs[as[i]].ones)) return false;
      // Meets of earlier pairs landing on i.
      for (std::size_t b = 0; b <= i; ++b) {
        if (l.meet(a, b) == i && homs[as[i]].ones != (homs[as[a]].ones & homs[as[b]].ones)) return false;
      }
    }
    return true;
  };
  std::vector<PreframeMap> out;
  for (const auto& as : kernels::backtrack(l.size(), homs.size(), consistent, exec)) {
    PreframeMap g;
    for (std::size_t k : as) g.images.push_back(homs[k]);
    out.push_back(std::move(g));
  }
  return out;
}

std::vector<std::vector<std::size_t>> enumerate_affine_to_homset(const ConvexAlgebra& x, const FinitePreframe& l,
                                                                 Exec exec) {
  if (x.family() == ConvexAlgebra::Family::polytope) {
    throw InvalidStructure("affine maps out of a polytope are not enumerated");
  }
  const auto hs = hom_set_algebra(l);
  const std::size_t m = hs.elements().size();
  if (x.family() == ConvexAlgebra::Family::simplex) {
    return kernels::backtrack(x.generator_count(), m, [](const auto&, std::size_t) { return true; }, exec);
  }
  auto consistent = [&](const std::vector<std::size_t>& vs, std::size_t i) {
    for (std::size_t a = 0; a <= i; ++a)
      for (std::size_t b = 0; b <= i; ++b) {
        const std::size_t c = x.meet(a, b);
        if (c <= i && vs[c] != hs.meet(vs[a], vs[b])) return false;
      }
    return true;
  };
  return kernels::backtrack(x.generator_count(), m, consistent, exec);
}

ConvexMap affine_from_values(const ConvexAlgebra& x, const FinitePreframe& l, const std::vector<std::size_t>& values) {
  const auto hs = hom_set_algebra(l);
  if (values.size() != x.generator_count()) throw DimensionMismatch("one value per generator is required");
  if (x.family() == ConvexAlgebra::Family::polytope) {
    throw InvalidStructure("affine maps out of a polytope are not built from generator values");
  }
  return [x, hs, values](const ConvexElement& e) -> ConvexElement {
    x.require(e);
    if (x.family() == ConvexAlgebra::Family::semilattice) {
      return hs.elements()[values[x.index_of(std::get<std::string>(e))]];
    }
    std::optional<std::size_t> acc;
    for (const auto& [label, c] : std::get<Distribution<std::string>>(e).terms()) {
      const std::size_t v = values[x.index_of(label)];
      acc = acc ? hs.meet(*acc, v) : v;
    }
    return hs.elements()[*acc];
  };
}

Report check_pf_adjunction(const ConvexAlgebra& x, const FinitePreframe& l, Exec exec) {
  Report report(x.name() + " / " + l.name(), "conv-preframe-adjunction");
  const bool polytope = x.family() == ConvexAlgebra::Family::polytope;
  const auto pmaps = enumerate_preframe_maps(x, l, exec);
  const auto hs = hom_set_algebra(l);

  ConvexCheckOptions opt;
  opt.grid = {Rational(0), Rational(1), Rational(1, 2), Rational(1, 3), Rational(3, 4)};
  opt.samples = 8;
  opt.exec = Exec::serial;
  const auto gens = x.generators();
  auto values_of = [&](const ConvexMap& f) {
    std::vector<std::size_t> v;
    for (const auto& e : gens) v.push_back(hs.index_of(std::get<std::string>(f(e))));
    return v;
  };

  // Polytopes: the affine side is the image of the preframe side.
  std::vector<std::vector<std::size_t>> affine;
  std::vector<ConvexMap> affine_maps;
  if (polytope) {
    for (const auto& g : pmaps) {
      affine_maps.push_back(pf_transpose_inverse(x, l, g, opt));
      affine.push_back(values_of(affine_maps.back()));
    }
  } else {
    affine = enumerate_affine_to_homset(x, l, exec);
    for (const auto& v : affine) affine_maps.push_back(affine_from_values(x, l, v));
  }
  const json counts{{"affine", affine.size()}, {"preframe", pmaps.size()}};
  if (polytope) {
    report.skip("equal-count", "affine maps out of a polytope are obtained by transposition, not enumerated");
  } else if (affine.size() == pmaps.size()) {
    report.pass("equal-count", affine.size(), counts);
  } else {
    report.fail("equal-count", "LawViolation", counts, 1);
  }

  // Affine side: transpose is a preframe map and transposes back.
  auto affine_bad = [&](std::size_t i) -> int {
    try {
      const auto g = pf_transpose(x, l, affine_maps[i], opt);
      if (std::find(pmaps.begin(), pmaps.end(), g) == pmaps.end()) return 1;
      if (values_of(pf_transpose_inverse(x, l, g, opt)) != affine[i]) return 2;
    } catch (const Error&) {
      return 1;
    }
    return 0;
  };
  auto preframe_bad = [&](std::size_t i) -> int {
    try {
      const auto f = pf_transpose_inverse(x, l, pmaps[i], opt);
      if (std::find(affine.begin(), affine.end(), values_of(f)) == affine.end()) return 1;
      if (!(pf_transpose(x, l, f, opt) == pmaps[i])) return 2;
    } catch (const Error&) {
      return 1;
    }
    return 0;
  };
  const auto a_codes = kernels::gather<int>(affine.size(), [&](std::size_t i) -> std::optional<int> { return affine_bad(i); }, exec);
  const auto p_codes = kernels::gather<int>(pmaps.size(), [&](std::size_t i) -> std::optional<int> { return preframe_bad(i); }, exec);

  auto record = [&](const std::string& name, const std::vector<int>& codes, int code, const std::string& kind,
                    auto&& witness) {
    const auto it = std::find(codes.begin(), codes.end(), code);
    if (it == codes.end()) {
      report.pass(name, codes.size());
    } else {
      report.fail(name, kind, witness(static_cast<std::size_t>(it - codes.begin())), codes.size());
    }
  };
  auto affine_witness = [&](std::size_t i) {
    json vals = json::array();
    for (std::size_t v : affine[i]) vals.push_back(hs.elements()[v]);
    return json{{"affine_map", vals}};
  };
  auto preframe_witness = [&](std::size_t i) {
    json vals = json::array();
    for (const auto& t : pmaps[i].images) vals.push_back(mask_json(x, t.ones));
    return json{{"preframe_map", vals}};
  };
  record("transposes-are-preframe-maps", a_codes, 1, "NotPreframeMap", affine_witness);
  record("transposes-are-affine", p_codes, 1, "NotAffine", preframe_witness);
  record("round-trip-affine", a_codes, 2, "LawViolation", affine_witness);
  record("round-trip-preframe", p_codes, 2, "LawViolation", preframe_witness);
  return report;
}

}  // namespace duality
