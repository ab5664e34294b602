#include "duality/faces.hpp"

#include <algorithm>

namespace duality {

using linalg::Vec;

namespace {

std::size_t carrier_size(const ConvexAlgebra& x) { return x.generator_count(); }

std::vector<Rational> interior(const std::vector<Rational>& grid) {
  std::vector<Rational> out;
  for (const auto& r : grid) {
    if (r.sign() > 0 && r < Rational(1)) out.push_back(r);
  }
  return out;
}

/// x in conv{g_i : i in mask}.
bool in_hull(const ConvexAlgebra& x, Mask mask, const Vec& p) {
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < x.generator_points().size(); ++i) {
    if (mask_has(mask, i)) idx.push_back(i);
  }
  if (idx.empty()) return false;
  const std::size_t d = x.dimension();
  linalg::Mat a(d + 1, linalg::zeros(idx.size()));
  Vec b(d + 1);
  for (std::size_t j = 0; j < idx.size(); ++j) {
    for (std::size_t i = 0; i < d; ++i) a[i][j] = x.generator_points()[idx[j]][i];
    a[d][j] = Rational(1);
  }
  for (std::size_t i = 0; i < d; ++i) b[i] = p[i];
  b[d] = Rational(1);
  return linalg::feasible_nonneg(a, b, idx.size()).has_value();
}

Distribution<ConvexElement> mix(const std::vector<Rational>& w, const std::vector<ConvexElement>& pts) {
  std::vector<std::pair<Rational, ConvexElement>> raw;
  for (std::size_t i = 0; i < w.size(); ++i) raw.emplace_back(w[i], pts[i]);
  return Distribution<ConvexElement>::normalize(rationals(), raw);
}

/// Weight vectors for supports of size 1..3 drawn from interior grid values.
std::vector<std::vector<Rational>> weight_vectors(std::size_t k, const std::vector<Rational>& inner) {
  std::vector<std::vector<Rational>> out;
  const Rational one(1);
  if (k == 1) return {{one}};
  if (k == 2) {
    for (const auto& r : inner) out.push_back({r, one - r});
    return out;
  }
  const std::size_t lim = std::min<std::size_t>(inner.size(), 4);
  for (std::size_t i = 0; i < lim; ++i)
    for (std::size_t j = 0; j < lim; ++j) {
      const Rational& r = inner[i];
      const Rational& s = inner[j];
      out.push_back({r, (one - r) * s, (one - r) * (one - s)});
    }
  return out;
}

}  // namespace

std::vector<std::string> mask_names(const ConvexAlgebra& x, Mask mask) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < carrier_size(x); ++i) {
    if (!mask_has(mask, i)) continue;
    if (x.family() == ConvexAlgebra::Family::polytope) {
      out.push_back(render(HullPoint{x.generator_points()[i], Distribution<std::size_t>::unit(rationals(), i)}));
    } else {
      out.push_back(x.elements()[i]);
    }
  }
  return out;
}

json mask_json(const ConvexAlgebra& x, Mask mask) { return mask_names(x, mask); }

Mask mask_of(const ConvexAlgebra& x, const std::vector<std::string>& names) {
  Mask m = 0;
  const auto all = mask_names(x, carrier_size(x) >= 64 ? ~Mask{0} : (Mask{1} << carrier_size(x)) - 1);
  for (const auto& n : names) {
    const auto it = std::find(all.begin(), all.end(), n);
    if (it == all.end()) throw ForeignElement("'" + n + "' is not an element or generator of " + x.name());
    m |= Mask{1} << (it - all.begin());
  }
  return m;
}

bool in_subset(const ConvexAlgebra& x, Mask mask, const ConvexElement& e) {
  x.require(e);
  switch (x.family()) {
    case ConvexAlgebra::Family::semilattice:
      return mask_has(mask, x.index_of(std::get<std::string>(e)));
    case ConvexAlgebra::Family::simplex: {
      for (const auto& [l, c] : std::get<Distribution<std::string>>(e).terms()) {
        if (!mask_has(mask, x.index_of(l))) return false;
      }
      return true;
    }
    case ConvexAlgebra::Family::polytope:
      return in_hull(x, mask, std::get<HullPoint>(e).coords);
  }
  return false;
}

Mask subalgebra_closure(const ConvexAlgebra& x, Mask generators) {
  if (x.family() != ConvexAlgebra::Family::semilattice) {
    throw InvalidStructure("subalgebra_closure needs a finite carrier");
  }
  const std::size_t n = carrier_size(x);
  Mask cur = generators;
  for (bool grew = true; grew;) {
    grew = false;
    for (std::size_t a = 0; a < n; ++a) {
      if (!mask_has(cur, a)) continue;
      for (std::size_t b = 0; b < n; ++b) {
        if (!mask_has(cur, b)) continue;
        const std::size_t m = x.meet(a, b);
        if (!mask_has(cur, m)) {
          cur |= Mask{1} << m;
          grew = true;
        }
      }
    }
  }
  return cur;
}

std::optional<std::pair<Vec, Rational>> face_certificate(const ConvexAlgebra& x, Mask mask) {
  if (x.family() != ConvexAlgebra::Family::polytope) throw InvalidStructure("face certificates apply to polytopes");
  const std::size_t d = x.dimension();
  linalg::LinearSystem sys;
  sys.vars = d + 1;  // c then level
  for (std::size_t i = 0; i < x.generator_points().size(); ++i) {
    Vec row = x.generator_points()[i];
    row.push_back(Rational(-1));
    if (mask_has(mask, i)) {
      sys.eq.emplace_back(std::move(row), Rational(0));
    } else {
      sys.ge.emplace_back(std::move(row), Rational(1));
    }
  }
  const auto sol = linalg::find_feasible(sys);
  if (!sol) return std::nullopt;
  Vec c(sol->begin(), sol->begin() + static_cast<long>(d));
  return std::pair{std::move(c), (*sol)[d]};
}

FilterVerdict is_prime_filter(const ConvexAlgebra& x, Mask mask, const ConvexCheckOptions& opt) {
  FilterVerdict v;
  const auto inner = interior(opt.grid);
  std::vector<ConvexElement> pool = x.generators();
  if (!x.is_finite()) {
    Rng rng(opt.seed);
    for (int i = 0; i < 4; ++i) pool.push_back(x.sample(rng));
  }
  std::vector<bool> member(pool.size());
  for (std::size_t i = 0; i < pool.size(); ++i) member[i] = in_subset(x, mask, pool[i]);

  // Supports of size 1..3 over the pool (size 3 only over generators).
  const std::size_t g = x.generator_count();
  auto visit = [&](const std::vector<std::size_t>& idx) -> bool {
    std::vector<ConvexElement> pts;
    bool all_in = true;
    for (std::size_t i : idx) {
      pts.push_back(pool[i]);
      all_in = all_in && member[i];
    }
    for (const auto& w : weight_vectors(idx.size(), inner)) {
      const auto phi = mix(w, pts);
      const ConvexElement value = x.evaluate(phi);
      const bool value_in = in_subset(x, mask, value);
      if (all_in && !value_in) {
        v.subalgebra = false;
        v.witness = json{{"condition", "subalgebra"}, {"phi", render(phi.sum())}, {"value", render(value)}};
        return false;
      }
      if (value_in && !all_in) {
        v.filter = false;
        v.witness = json{{"condition", "filter"}, {"phi", render(phi.sum())}, {"value", render(value)}};
        return false;
      }
    }
    return true;
  };
  const std::size_t p = pool.size();
  bool go = true;
  for (std::size_t a = 0; a < p && go; ++a) go = visit({a});
  for (std::size_t a = 0; a < p && go; ++a)
    for (std::size_t b = a + 1; b < p && go; ++b) go = visit({a, b});
  for (std::size_t a = 0; a < g && go; ++a)
    for (std::size_t b = a + 1; b < g && go; ++b)
      for (std::size_t c = b + 1; c < g && go; ++c) go = visit({a, b, c});
  if (x.family() == ConvexAlgebra::Family::polytope) v.face_certificate = face_certificate(x, mask).has_value();
  return v;
}

namespace {

void require_enumerable(const ConvexAlgebra& x) {
  const std::size_t n = carrier_size(x);
  const std::size_t cap = x.family() == ConvexAlgebra::Family::polytope ? 8 : 16;
  if (n > cap) {
    throw TooLarge(x.family_name() + " " + x.name() + " has " + std::to_string(n) + " generators; the limit is " +
                   std::to_string(cap), json{{"generators", n}, {"limit", cap}});
  }
}

bool semilattice_prime(const ConvexAlgebra& x, Mask m) {
  const std::size_t n = carrier_size(x);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b) {
      const bool both = mask_has(m, a) && mask_has(m, b);
      if (both != mask_has(m, x.meet(a, b))) return false;
    }
  return true;
}

}  // namespace

std::vector<Mask> enumerate_prime_filters(const ConvexAlgebra& x, Exec exec) {
  require_enumerable(x);
  const std::size_t total = std::size_t{1} << carrier_size(x);
  return kernels::gather<Mask>(
      total,
      [&](std::size_t i) -> std::optional<Mask> {
        const Mask m = i;
        switch (x.family()) {
          case ConvexAlgebra::Family::semilattice:
            return semilattice_prime(x, m) ? std::optional<Mask>(m) : std::nullopt;
          case ConvexAlgebra::Family::simplex:
            return m;
          case ConvexAlgebra::Family::polytope:
            return face_certificate(x, m) ? std::optional<Mask>(m) : std::nullopt;
        }
        return std::nullopt;
      },
      exec);
}

std::vector<ConvexElement> extreme_points(const ConvexAlgebra& x, Exec exec) {
  const auto filters = enumerate_prime_filters(x, exec);
  const auto gens = x.generators();
  std::vector<ConvexElement> out;
  for (Mask m : filters) {
    if (m != 0 && (m & (m - 1)) == 0) out.push_back(gens[static_cast<std::size_t>(__builtin_ctzll(m))]);
  }
  return out;
}

int apply(const ConvexAlgebra& x, const TwoValuedMap& f, const ConvexElement& e) {
  x.require(e);
  switch (x.family()) {
    case ConvexAlgebra::Family::semilattice:
      return mask_has(f.ones, x.index_of(std::get<std::string>(e))) ? 1 : 0;
    case ConvexAlgebra::Family::simplex:
      for (const auto& [l, c] : std::get<Distribution<std::string>>(e).terms()) {
        if (!mask_has(f.ones, x.index_of(l))) return 0;
      }
      return 1;
    case ConvexAlgebra::Family::polytope:
      for (const auto& [i, c] : std::get<HullPoint>(e).certificate.terms()) {
        if (!mask_has(f.ones, i)) return 0;
      }
      return 1;
  }
  return 0;
}

namespace {

/// Some point with a representation inside `ones` and another giving weight
/// to a generator outside it. Homogenized: lambda, mu >= 0, sum lambda =
/// sum mu, sum lambda g = sum mu g, and the outside weight of mu is 1.
bool has_bad_point(const ConvexAlgebra& x, Mask ones) {
  const auto& pts = x.generator_points();
  const std::size_t k = pts.size(), d = x.dimension();
  std::vector<std::size_t> in;
  for (std::size_t i = 0; i < k; ++i) {
    if (mask_has(ones, i)) in.push_back(i);
  }
  const std::size_t cols = in.size() + k;
  linalg::Mat a;
  Vec b;
  Vec mass = linalg::zeros(cols);
  for (std::size_t j = 0; j < in.size(); ++j) mass[j] = Rational(1);
  for (std::size_t j = 0; j < k; ++j) mass[in.size() + j] = Rational(-1);
  a.push_back(mass);
  b.push_back(Rational(0));
  for (std::size_t r = 0; r < d; ++r) {
    Vec row = linalg::zeros(cols);
    for (std::size_t j = 0; j < in.size(); ++j) row[j] = pts[in[j]][r];
    for (std::size_t j = 0; j < k; ++j) row[in.size() + j] = -pts[j][r];
    a.push_back(std::move(row));
    b.push_back(Rational(0));
  }
  Vec outside = linalg::zeros(cols);
  for (std::size_t j = 0; j < k; ++j) {
    if (!mask_has(ones, j)) outside[in.size() + j] = Rational(1);
  }
  a.push_back(outside);
  b.push_back(Rational(1));
  return linalg::feasible_nonneg(a, b, cols).has_value();
}

bool meet_preserving(const ConvexAlgebra& x, Mask ones) {
  const std::size_t n = carrier_size(x);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      if ((mask_has(ones, a) && mask_has(ones, b)) != mask_has(ones, x.meet(a, b))) return false;
    }
  return true;
}

}  // namespace

std::vector<TwoValuedMap> hom_to_two(const ConvexAlgebra& x, Exec exec) {
  require_enumerable(x);
  const std::size_t total = std::size_t{1} << carrier_size(x);
  return kernels::gather<TwoValuedMap>(
      total,
      [&](std::size_t i) -> std::optional<TwoValuedMap> {
        const Mask ones = i;
        switch (x.family()) {
          case ConvexAlgebra::Family::semilattice:
            if (!meet_preserving(x, ones)) return std::nullopt;
            break;
          case ConvexAlgebra::Family::simplex:
            break;
          case ConvexAlgebra::Family::polytope:
            if (has_bad_point(x, ones)) return std::nullopt;
            break;
        }
        return TwoValuedMap{ones};
      },
      exec);
}

Mask filter_of(const ConvexAlgebra& x, const TwoValuedMap& f) {
  // The kernel's members among the presentation points are exactly the ones
  // valued 1; the subset they describe is checked against `apply` elsewhere.
  (void)x;
  return f.ones;
}

TwoValuedMap map_of(const ConvexAlgebra& x, Mask filter) {
  (void)x;
  return TwoValuedMap{filter};
}

Report check_filter_duality(const ConvexAlgebra& x, Exec exec) {
  Report report(x.name(), "filter-duality");
  const auto filters = enumerate_prime_filters(x, exec);
  const auto homs = hom_to_two(x, exec);
  const json counts{{"filters", filters.size()}, {"homs", homs.size()}};
  if (filters.size() != homs.size()) {
    report.fail("equal-count", "LawViolation", counts, 1);
  } else {
    report.pass("equal-count", filters.size(), counts);
  }

  std::vector<Mask> kernels;
  for (const auto& f : homs) kernels.push_back(filter_of(x, f));
  std::sort(kernels.begin(), kernels.end());
  if (kernels != filters) {
    std::vector<Mask> diff;
    std::set_symmetric_difference(kernels.begin(), kernels.end(), filters.begin(), filters.end(), std::back_inserter(diff));
    report.fail("kernels-are-filters", "LawViolation", json{{"mismatch", mask_json(x, diff.front())}}, 1);
  } else {
    report.pass("kernels-are-filters", homs.size());
  }

  std::size_t round = 0;
  std::optional<json> round_bad;
  for (const auto& f : homs) {
    ++round;
    if (!(map_of(x, filter_of(x, f)) == f)) round_bad = json{{"map", mask_json(x, f.ones)}};
  }
  for (Mask m : filters) {
    ++round;
    if (filter_of(x, map_of(x, m)) != m && !round_bad) round_bad = json{{"filter", mask_json(x, m)}};
  }
  if (round_bad) {
    report.fail("round-trips", "LawViolation", *round_bad, round);
  } else {
    report.pass("round-trips", round);
  }

  // Probe elements: presentation points plus seeded points.
  std::vector<ConvexElement> probes = x.generators();
  if (!x.is_finite()) {
    Rng rng(kDefaultSeed);
    for (int i = 0; i < 12; ++i) probes.push_back(x.sample(rng));
  }
  // Kernel membership agrees with the map's values.
  const std::size_t kn = homs.size() * probes.size();
  auto kernel_bad = [&](std::size_t k) {
    const auto& f = homs[k / probes.size()];
    const auto& e = probes[k % probes.size()];
    return in_subset(x, filter_of(x, f), e) != (apply(x, f, e) == 1);
  };
  if (const auto bad = kernels::first_failure(kn, kernel_bad, exec)) {
    const auto& f = homs[*bad / probes.size()];
    const auto& e = probes[*bad % probes.size()];
    report.fail("true-kernel", "LawViolation", json{{"map", mask_json(x, f.ones)}, {"element", render(e)}}, *bad + 1);
  } else {
    report.pass("true-kernel", kn);
  }

  // Each map is affine into {0,1} with its meet structure.
  const auto two = ConvexAlgebra::semilattice("2", {"0", "1"}, {{0, 0}, {0, 1}});
  ConvexCheckOptions light;
  light.grid = {Rational(0), Rational(1), Rational(1, 2), Rational(1, 3), Rational(3, 4)};
  light.samples = 8;
  light.exec = Exec::serial;
  auto not_affine = [&](std::size_t i) {
    const auto& f = homs[i];
    return !check_affine(x, two, [&](const ConvexElement& e) -> ConvexElement { return std::to_string(apply(x, f, e)); },
                         light)
                .ok();
  };
  if (const auto bad = kernels::first_failure(homs.size(), not_affine, exec)) {
    report.fail("maps-affine", "NotAffine", json{{"map", mask_json(x, homs[*bad].ones)}}, *bad + 1);
  } else {
    report.pass("maps-affine", homs.size());
  }

  // U <= V iff map_of(U) <= map_of(V) pointwise.
  const std::size_t nf = filters.size();
  auto order_bad = [&](std::size_t k) {
    const Mask u = filters[k / nf], v = filters[k % nf];
    bool pointwise = true;
    for (const auto& e : probes) {
      pointwise = pointwise && apply(x, map_of(x, u), e) <= apply(x, map_of(x, v), e);
    }
    return mask_subset(u, v) != pointwise;
  };
  if (const auto bad = kernels::first_failure(nf * nf, order_bad, exec)) {
    report.fail("order-isomorphism", "LawViolation",
                json{{"u", mask_json(x, filters[*bad / nf])}, {"v", mask_json(x, filters[*bad % nf])}}, *bad + 1);
  } else {
    report.pass("order-isomorphism", nf * nf);
  }

  // Closed under intersections (and unions of chains, the finite directed joins).
  auto closure_bad = [&](std::size_t k) {
    const Mask u = filters[k / nf], v = filters[k % nf];
    if (!std::binary_search(filters.begin(), filters.end(), u & v)) return true;
    if (mask_subset(u, v) && !std::binary_search(filters.begin(), filters.end(), u | v)) return true;
    return false;
  };
  if (const auto bad = kernels::first_failure(nf * nf, closure_bad, exec)) {
    report.fail("closed-under-meets-and-directed-joins", "LawViolation",
                json{{"u", mask_json(x, filters[*bad / nf])}, {"v", mask_json(x, filters[*bad % nf])}}, *bad + 1);
  } else {
    report.pass("closed-under-meets-and-directed-joins", nf * nf);
  }
  return report;
}

}  // namespace duality
