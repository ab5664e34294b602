#include "duality/convexalg.hpp"

#include <algorithm>
#include <numeric>

namespace duality {

using linalg::Vec;

struct ConvexAlgebra::Impl {
  std::string name;
  Family family = Family::semilattice;
  std::vector<std::string> elements;  // semilattice carrier or simplex labels
  std::vector<std::vector<std::size_t>> meet;
  std::optional<std::size_t> top;
  std::size_t dimension = 0;
  std::vector<Vec> points;
};

const Semiring& rationals() {
  static const Semiring q = Semiring::nonneg_rationals();
  return q;
}

std::string render(const HullPoint& p) {
  std::string out = "[";
  for (std::size_t i = 0; i < p.coords.size(); ++i) {
    if (i) out += ",";
    out += p.coords[i].str();
  }
  return out + "]";
}

std::string render(const ConvexElement& e) {
  return std::visit([](const auto& v) { return render(v); }, e);
}

json to_json(const ConvexElement& e) {
  if (const auto* p = std::get_if<HullPoint>(&e)) {
    json coords = json::array();
    for (const auto& c : p->coords) coords.push_back(c.str());
    return coords;
  }
  return render(e);
}

namespace {

std::optional<std::size_t> find_top(const std::vector<std::vector<std::size_t>>& meet) {
  for (std::size_t t = 0; t < meet.size(); ++t) {
    bool ok = true;
    for (std::size_t x = 0; x < meet.size() && ok; ++x) ok = meet[t][x] == x;
    if (ok) return t;
  }
  return std::nullopt;
}

void require_table_shape(const std::vector<std::string>& elements, const std::vector<std::vector<std::size_t>>& meet) {
  if (elements.empty()) throw InvalidStructure("semilattice needs at least one element");
  if (meet.size() != elements.size()) throw InvalidStructure("meet table has wrong row count");
  for (const auto& row : meet) {
    if (row.size() != elements.size()) throw InvalidStructure("meet table has wrong column count");
    for (std::size_t v : row) {
      if (v >= elements.size()) throw InvalidStructure("meet table entry out of range");
    }
  }
  std::vector<std::string> sorted = elements;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw InvalidStructure("duplicate semilattice element");
  }
}

}  // namespace

ConvexAlgebra ConvexAlgebra::semilattice_unchecked(std::string name, std::vector<std::string> elements,
                                                   std::vector<std::vector<std::size_t>> meet) {
  require_table_shape(elements, meet);
  auto impl = std::make_shared<Impl>();
  impl->name = std::move(name);
  impl->family = Family::semilattice;
  impl->top = find_top(meet);
  impl->elements = std::move(elements);
  impl->meet = std::move(meet);
  return ConvexAlgebra(std::move(impl));
}

ConvexAlgebra ConvexAlgebra::semilattice(std::string name, std::vector<std::string> elements,
                                         std::vector<std::vector<std::size_t>> meet) {
  require_table_shape(elements, meet);
  const std::size_t n = elements.size();
  auto fail = [&](const char* law, json w) {
    throw InvalidStructure(std::string("meet table is not ") + law, std::move(w));
  };
  for (std::size_t a = 0; a < n; ++a) {
    if (meet[a][a] != a) fail("idempotent", json{{"x", elements[a]}});
    for (std::size_t b = 0; b < n; ++b) {
      if (meet[a][b] != meet[b][a]) fail("commutative", json{{"x", elements[a]}, {"y", elements[b]}});
      for (std::size_t c = 0; c < n; ++c) {
        if (meet[meet[a][b]][c] != meet[a][meet[b][c]]) {
          fail("associative", json{{"x", elements[a]}, {"y", elements[b]}, {"z", elements[c]}});
        }
      }
    }
  }
  return semilattice_unchecked(std::move(name), std::move(elements), std::move(meet));
}

ConvexAlgebra ConvexAlgebra::simplex(std::string name, std::vector<std::string> labels) {
  if (labels.empty()) throw InvalidStructure("simplex needs at least one vertex");
  std::sort(labels.begin(), labels.end());
  if (std::adjacent_find(labels.begin(), labels.end()) != labels.end()) {
    throw InvalidStructure("duplicate simplex vertex");
  }
  auto impl = std::make_shared<Impl>();
  impl->name = std::move(name);
  impl->family = Family::simplex;
  impl->elements = std::move(labels);
  return ConvexAlgebra(std::move(impl));
}

ConvexAlgebra ConvexAlgebra::polytope(std::string name, std::size_t dimension, std::vector<Vec> generators) {
  if (generators.empty()) throw InvalidStructure("polytope needs at least one generator");
  for (std::size_t i = 0; i < generators.size(); ++i) {
    if (generators[i].size() != dimension) {
      throw DimensionMismatch("generator " + std::to_string(i) + " has the wrong dimension");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (generators[i] == generators[j]) {
        throw InvalidStructure("duplicate polytope generator", json{{"first", j}, {"second", i}});
      }
    }
  }
  auto impl = std::make_shared<Impl>();
  impl->name = std::move(name);
  impl->family = Family::polytope;
  impl->dimension = dimension;
  impl->points = std::move(generators);
  return ConvexAlgebra(std::move(impl));
}

const std::string& ConvexAlgebra::name() const { return impl_->name; }
ConvexAlgebra::Family ConvexAlgebra::family() const { return impl_->family; }

std::string ConvexAlgebra::family_name() const {
  switch (family()) {
    case Family::semilattice: return "semilattice";
    case Family::simplex: return "simplex";
    case Family::polytope: return "polytope";
  }
  return "unknown";
}

const std::vector<std::string>& ConvexAlgebra::elements() const { return impl_->elements; }
const std::vector<std::string>& ConvexAlgebra::labels() const { return impl_->elements; }

std::size_t ConvexAlgebra::index_of(const std::string& e) const {
  const auto& els = impl_->elements;
  for (std::size_t i = 0; i < els.size(); ++i) {
    if (els[i] == e) return i;
  }
  throw ForeignElement("'" + e + "' is not an element of " + name(), json{{"element", e}});
}

std::size_t ConvexAlgebra::meet(std::size_t a, std::size_t b) const { return impl_->meet[a][b]; }
std::optional<std::size_t> ConvexAlgebra::top() const { return impl_->top; }
std::size_t ConvexAlgebra::dimension() const { return impl_->dimension; }
const std::vector<Vec>& ConvexAlgebra::generator_points() const { return impl_->points; }

std::size_t ConvexAlgebra::generator_count() const {
  return family() == Family::polytope ? impl_->points.size() : impl_->elements.size();
}

std::vector<ConvexElement> ConvexAlgebra::generators() const {
  std::vector<ConvexElement> out;
  switch (family()) {
    case Family::semilattice:
      for (const auto& e : impl_->elements) out.emplace_back(e);
      break;
    case Family::simplex:
      for (const auto& e : impl_->elements) out.emplace_back(Distribution<std::string>::unit(rationals(), e));
      break;
    case Family::polytope:
      for (std::size_t i = 0; i < impl_->points.size(); ++i) {
        out.emplace_back(HullPoint{impl_->points[i], Distribution<std::size_t>::unit(rationals(), i)});
      }
      break;
  }
  return out;
}

bool ConvexAlgebra::contains(const ConvexElement& e) const {
  switch (family()) {
    case Family::semilattice: {
      const auto* s = std::get_if<std::string>(&e);
      return s && std::find(impl_->elements.begin(), impl_->elements.end(), *s) != impl_->elements.end();
    }
    case Family::simplex: {
      const auto* d = std::get_if<Distribution<std::string>>(&e);
      if (!d || !(d->semiring() == rationals())) return false;
      for (const auto& [label, c] : d->terms()) {
        if (!std::binary_search(impl_->elements.begin(), impl_->elements.end(), label)) return false;
      }
      return true;
    }
    case Family::polytope: {
      const auto* p = std::get_if<HullPoint>(&e);
      if (!p || p->coords.size() != impl_->dimension) return false;
      Vec acc = linalg::zeros(impl_->dimension);
      for (const auto& [i, c] : p->certificate.terms()) {
        if (i >= impl_->points.size()) return false;
        acc = linalg::add(acc, linalg::scale(c, impl_->points[i]));
      }
      return acc == p->coords;
    }
  }
  return false;
}

void ConvexAlgebra::require(const ConvexElement& e) const {
  if (!contains(e)) {
    throw ForeignElement(render(e) + " is not an element of " + family_name() + " " + name(),
                         json{{"element", render(e)}, {"algebra", name()}});
  }
}

std::optional<Distribution<std::size_t>> ConvexAlgebra::certify(const Vec& coords) const {
  if (family() != Family::polytope) throw InvalidStructure("certify applies to polytopes only");
  if (coords.size() != impl_->dimension) throw DimensionMismatch("point has the wrong dimension");
  const std::size_t k = impl_->points.size();
  linalg::Mat a(impl_->dimension + 1, linalg::zeros(k));
  Vec b(impl_->dimension + 1);
  for (std::size_t j = 0; j < k; ++j) {
    for (std::size_t i = 0; i < impl_->dimension; ++i) a[i][j] = impl_->points[j][i];
    a[impl_->dimension][j] = Rational(1);
  }
  for (std::size_t i = 0; i < impl_->dimension; ++i) b[i] = coords[i];
  b[impl_->dimension] = Rational(1);
  const auto lambda = linalg::feasible_nonneg(a, b, k);
  if (!lambda) return std::nullopt;
  std::vector<std::pair<Rational, std::size_t>> raw;
  for (std::size_t j = 0; j < k; ++j) raw.emplace_back((*lambda)[j], j);
  return Distribution<std::size_t>::normalize(rationals(), raw);
}

ConvexElement ConvexAlgebra::point(const Vec& coords) const {
  auto cert = certify(coords);
  if (!cert) {
    HullPoint probe{coords, Distribution<std::size_t>::unit(rationals(), 0)};
    throw ForeignElement(render(probe) + " lies outside polytope " + name(), json{{"point", render(probe)}});
  }
  return HullPoint{coords, std::move(*cert)};
}

ConvexElement ConvexAlgebra::evaluate(const Distribution<ConvexElement>& phi) const {
  for (const auto& kv : phi.terms()) require(kv.first);
  switch (family()) {
    case Family::semilattice: {
      std::optional<std::size_t> acc;
      for (const auto& kv : phi.terms()) {
        const std::size_t i = index_of(std::get<std::string>(kv.first));
        acc = acc ? meet(*acc, i) : i;
      }
      return impl_->elements[*acc];
    }
    case Family::simplex: {
      typename FormalSum<FormalSum<std::string>>::Terms outer;
      for (const auto& [e, c] : phi.terms()) outer.emplace(std::get<Distribution<std::string>>(e).sum(), c);
      return Distribution<std::string>::from(mult(FormalSum<FormalSum<std::string>>::from_terms(rationals(), outer)));
    }
    case Family::polytope: {
      Vec coords = linalg::zeros(impl_->dimension);
      typename FormalSum<FormalSum<std::size_t>>::Terms outer;
      for (const auto& [e, c] : phi.terms()) {
        const auto& p = std::get<HullPoint>(e);
        coords = linalg::add(coords, linalg::scale(c, p.coords));
        auto [it, inserted] = outer.try_emplace(p.certificate.sum(), c);
        if (!inserted) it->second += c;
      }
      auto cert = Distribution<std::size_t>::from(mult(FormalSum<FormalSum<std::size_t>>::from_terms(rationals(), outer)));
      return HullPoint{std::move(coords), std::move(cert)};
    }
  }
  throw InvalidStructure("unknown algebra family");
}

ConvexElement ConvexAlgebra::ternary(const Rational& r, const ConvexElement& x, const ConvexElement& y) const {
  if (!in_unit_interval(r)) {
    throw ScalarOutOfRange("scalar " + r.str() + " is outside [0,1]", json{{"r", r.str()}});
  }
  require(x);
  require(y);
  if (r.is_zero()) return y;
  if (r == Rational(1)) return x;
  const Rational r1 = Rational(1) - r;
  switch (family()) {
    case Family::semilattice:
      return impl_->elements[meet(index_of(std::get<std::string>(x)), index_of(std::get<std::string>(y)))];
    case Family::simplex: {
      std::vector<std::pair<Rational, std::string>> raw;
      for (const auto& [l, c] : std::get<Distribution<std::string>>(x).terms()) raw.emplace_back(r * c, l);
      for (const auto& [l, c] : std::get<Distribution<std::string>>(y).terms()) raw.emplace_back(r1 * c, l);
      return Distribution<std::string>::normalize(rationals(), raw);
    }
    case Family::polytope: {
      const auto& px = std::get<HullPoint>(x);
      const auto& py = std::get<HullPoint>(y);
      std::vector<std::pair<Rational, std::size_t>> raw;
      for (const auto& [i, c] : px.certificate.terms()) raw.emplace_back(r * c, i);
      for (const auto& [i, c] : py.certificate.terms()) raw.emplace_back(r1 * c, i);
      return HullPoint{linalg::add(linalg::scale(r, px.coords), linalg::scale(r1, py.coords)),
                       Distribution<std::size_t>::normalize(rationals(), raw)};
    }
  }
  throw InvalidStructure("unknown algebra family");
}

ConvexElement ConvexAlgebra::evaluate_recursive(const std::vector<std::pair<Rational, ConvexElement>>& terms) const {
  if (terms.empty()) throw InvalidStructure("empty distribution");
  Rational total;
  for (const auto& t : terms) {
    if (t.first.sign() < 0) throw ScalarOutOfRange("negative weight " + t.first.str());
    total += t.first;
  }
  if (total != Rational(1)) throw InvalidStructure("weights sum to " + total.str() + ", not 1");
  const auto& [r1, x1] = terms.front();
  require(x1);
  if (r1 == Rational(1)) return x1;
  const Rational rest = Rational(1) - r1;
  std::vector<std::pair<Rational, ConvexElement>> tail;
  tail.reserve(terms.size() - 1);
  for (std::size_t i = 1; i < terms.size(); ++i) tail.emplace_back(terms[i].first / rest, terms[i].second);
  return ternary(r1, x1, evaluate_recursive(tail));
}

ConvexElement ConvexAlgebra::evaluate_recursive(const Distribution<ConvexElement>& phi) const {
  std::vector<std::pair<Rational, ConvexElement>> terms;
  for (const auto& [e, c] : phi.terms()) terms.emplace_back(c, e);
  return evaluate_recursive(terms);
}

ConvexElement ConvexAlgebra::sample(Rng& rng) const {
  switch (family()) {
    case Family::semilattice:
      return impl_->elements[rng.below(impl_->elements.size())];
    case Family::simplex: {
      const auto& labels = impl_->elements;
      return random_distribution<std::string>(rng, labels.size(), [&] { return labels[rng.below(labels.size())]; });
    }
    case Family::polytope: {
      const std::size_t k = impl_->points.size();
      auto cert = random_distribution<std::size_t>(rng, k, [&] { return rng.below(k); });
      Vec coords = linalg::zeros(impl_->dimension);
      for (const auto& [i, c] : cert.terms()) coords = linalg::add(coords, linalg::scale(c, impl_->points[i]));
      return HullPoint{std::move(coords), std::move(cert)};
    }
  }
  throw InvalidStructure("unknown algebra family");
}

std::vector<Rational> default_scalar_grid(std::uint64_t seed) {
  std::vector<Rational> grid{Rational(0), Rational(1), Rational(1, 2), Rational(1, 3),
                             Rational(2, 3), Rational(1, 4), Rational(3, 4)};
  Rng rng(seed);
  std::size_t added = 0;
  while (added < 16) {
    Rational q = rng.unit_rational(64);
    if (std::find(grid.begin(), grid.end(), q) != grid.end()) continue;
    grid.push_back(q);
    ++added;
  }
  return grid;
}

namespace {

/// Elements for axiom checks: the whole carrier when small and finite,
/// otherwise empty (callers sample tuples instead).
bool exhaustive_elements(const ConvexAlgebra& x, const ConvexCheckOptions& opt) {
  return x.is_finite() && x.generator_count() <= opt.exhaustive_limit;
}

struct AxiomCase {
  Rational r, s;
  ConvexElement x, y, z;
};

/// Either grid^2 x carrier^3 in lexicographic order, or `samples` seeded
/// tuples with scalars drawn from the grid.
std::vector<AxiomCase> axiom_cases(const ConvexAlgebra& x, const ConvexCheckOptions& opt, bool& exhaustive) {
  std::vector<AxiomCase> out;
  exhaustive = exhaustive_elements(x, opt);
  const auto& grid = opt.grid;
  if (exhaustive) {
    const auto els = x.generators();
    for (const auto& r : grid)
      for (const auto& s : grid)
        for (const auto& a : els)
          for (const auto& b : els)
            for (const auto& c : els) out.push_back({r, s, a, b, c});
    return out;
  }
  Rng rng(opt.seed);
  // Every grid pair appears at least once, then extra random tuples.
  const std::size_t n = std::max(opt.samples, grid.size() * grid.size());
  for (std::size_t k = 0; k < n; ++k) {
    const Rational& r = k < grid.size() * grid.size() ? grid[k / grid.size()] : grid[rng.below(grid.size())];
    const Rational& s = k < grid.size() * grid.size() ? grid[k % grid.size()] : grid[rng.below(grid.size())];
    out.push_back({r, s, x.sample(rng), x.sample(rng), x.sample(rng)});
  }
  return out;
}

json case_witness(int axiom, const AxiomCase& c, const ConvexElement& lhs, const ConvexElement& rhs) {
  return json{{"axiom", axiom}, {"r", c.r.str()}, {"s", c.s.str()}, {"x", render(c.x)}, {"y", render(c.y)},
              {"z", render(c.z)}, {"lhs", render(lhs)}, {"rhs", render(rhs)}};
}

}  // namespace

Report check_convex_axioms(const ConvexAlgebra& x, const ConvexCheckOptions& opt) {
  Report report(x.name(), "convex-axioms");
  bool exhaustive = false;
  const auto cases = axiom_cases(x, opt, exhaustive);
  const json detail{{"mode", exhaustive ? "exhaustive" : "sampled"}};
  const Rational one(1);

  auto ax1 = [&](const AxiomCase& c) {
    return std::pair{x.ternary(c.r, c.x, c.y), x.ternary(one - c.r, c.y, c.x)};
  };
  auto ax2 = [&](const AxiomCase& c) { return std::pair{x.ternary(c.r, c.x, c.x), c.x}; };
  auto ax3 = [&](const AxiomCase& c) { return std::pair{x.ternary(Rational(0), c.x, c.y), c.y}; };
  auto ax4_defined = [&](const AxiomCase& c) { return !(c.r + (one - c.r) * c.s).is_zero(); };
  auto ax4 = [&](const AxiomCase& c) {
    const Rational t = c.r + (one - c.r) * c.s;
    return std::pair{x.ternary(c.r, c.x, x.ternary(c.s, c.y, c.z)), x.ternary(t, x.ternary(c.r / t, c.x, c.y), c.z)};
  };

  auto run = [&](int axiom, auto&& sides, auto&& applies) {
    const std::string name = "axiom-" + std::to_string(axiom);
    std::size_t skipped = 0;
    for (const auto& c : cases) skipped += applies(c) ? 0 : 1;
    auto fails = [&](std::size_t k) {
      if (!applies(cases[k])) return false;
      const auto [l, r] = sides(cases[k]);
      return !(l == r);
    };
    json d = detail;
    if (skipped) d["skipped_cases"] = skipped;
    if (const auto bad = kernels::first_failure(cases.size(), fails, opt.exec)) {
      const auto [l, r] = sides(cases[*bad]);
      report.fail(name, "AxiomViolation", case_witness(axiom, cases[*bad], l, r), *bad + 1, d);
    } else {
      report.pass(name, cases.size() - skipped, d);
    }
  };
  auto always = [](const AxiomCase&) { return true; };
  run(1, ax1, always);
  run(2, ax2, always);
  run(3, ax3, always);
  run(4, ax4, ax4_defined);
  return report;
}

Report check_nested_tuple_identity(const ConvexAlgebra& x, const ConvexCheckOptions& opt) {
  Report report(x.name(), "nested-tuple");
  bool exhaustive = false;
  const auto cases = axiom_cases(x, opt, exhaustive);
  const Rational one(1);
  auto applies = [&](const AxiomCase& c) { return c.r * c.s != one; };
  auto lhs = [&](const AxiomCase& c) { return x.ternary(c.r, x.ternary(c.s, c.x, c.y), c.z); };
  auto rhs = [&](const AxiomCase& c) {
    const Rational rs = c.r * c.s;
    return x.ternary(rs, c.x, x.ternary(c.r * (one - c.s) / (one - rs), c.y, c.z));
  };
  std::size_t skipped = 0;
  for (const auto& c : cases) skipped += applies(c) ? 0 : 1;
  json d{{"mode", exhaustive ? "exhaustive" : "sampled"}};
  if (skipped) d["skipped_cases"] = skipped;
  auto fails = [&](std::size_t k) { return applies(cases[k]) && !(lhs(cases[k]) == rhs(cases[k])); };
  if (const auto bad = kernels::first_failure(cases.size(), fails, opt.exec)) {
    report.fail("nested-tuple", "AxiomViolation",
                case_witness(0, cases[*bad], lhs(cases[*bad]), rhs(cases[*bad])), *bad + 1, d);
  } else {
    report.pass("nested-tuple", cases.size() - skipped, d);
  }
  return report;
}

Report check_evaluation_roundtrip(const ConvexAlgebra& x, std::size_t count, std::uint64_t seed, Exec exec) {
  Report report(x.name(), "evaluation");
  Rng rng(seed);
  std::vector<Distribution<ConvexElement>> phis;
  std::vector<std::vector<std::pair<Rational, ConvexElement>>> permuted;
  phis.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    phis.push_back(random_distribution<ConvexElement>(rng, 4, [&] { return x.sample(rng); }));
    std::vector<std::pair<Rational, ConvexElement>> terms;
    for (const auto& [e, c] : phis.back().terms()) terms.emplace_back(c, e);
    for (std::size_t j = terms.size(); j > 1; --j) std::swap(terms[j - 1], terms[rng.below(j)]);
    permuted.push_back(std::move(terms));
  }
  auto agree = [&](std::size_t i) { return !(x.evaluate(phis[i]) == x.evaluate_recursive(phis[i])); };
  if (const auto bad = kernels::first_failure(count, agree, exec)) {
    report.fail("recursive-agrees", "LawViolation",
                json{{"phi", render(phis[*bad].sum())}, {"evaluate", render(x.evaluate(phis[*bad]))},
                     {"recursive", render(x.evaluate_recursive(phis[*bad]))}},
                *bad + 1);
  } else {
    report.pass("recursive-agrees", count);
  }
  auto perm = [&](std::size_t i) { return !(x.evaluate_recursive(permuted[i]) == x.evaluate_recursive(phis[i])); };
  if (const auto bad = kernels::first_failure(count, perm, exec)) {
    json order = json::array();
    for (const auto& [c, e] : permuted[*bad]) order.push_back(c.str() + "*" + render(e));
    report.fail("permutation-invariant", "LawViolation", json{{"phi", render(phis[*bad].sum())}, {"order", order}},
                *bad + 1);
  } else {
    report.pass("permutation-invariant", count);
  }
  return report;
}

Report check_flattening(const ConvexAlgebra& x, std::size_t count, std::uint64_t seed, Exec exec) {
  Report report(x.name(), "flattening");
  Rng rng(seed);
  using Inner = Distribution<ConvexElement>;
  std::vector<Distribution<Inner>> outers;
  outers.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    outers.push_back(random_distribution<Inner>(rng, 3, [&] {
      return random_distribution<ConvexElement>(rng, 3, [&] { return x.sample(rng); });
    }));
  }
  auto lhs = [&](const Distribution<Inner>& o) {
    std::vector<std::pair<Rational, ConvexElement>> raw;
    for (const auto& [inner, c] : o.terms()) raw.emplace_back(c, x.evaluate(inner));
    return x.evaluate(Distribution<ConvexElement>::normalize(rationals(), raw));
  };
  auto rhs = [&](const Distribution<Inner>& o) {
    typename FormalSum<FormalSum<ConvexElement>>::Terms t;
    for (const auto& [inner, c] : o.terms()) t.emplace(inner.sum(), c);
    return x.evaluate(Distribution<ConvexElement>::from(mult(FormalSum<FormalSum<ConvexElement>>::from_terms(rationals(), t))));
  };
  auto fails = [&](std::size_t i) { return !(lhs(outers[i]) == rhs(outers[i])); };
  if (const auto bad = kernels::first_failure(count, fails, exec)) {
    report.fail("flattening", "LawViolation",
                json{{"outer", render(outers[*bad].sum())}, {"lhs", render(lhs(outers[*bad]))},
                     {"rhs", render(rhs(outers[*bad]))}},
                *bad + 1);
  } else {
    report.pass("flattening", count);
  }
  return report;
}

}  // namespace duality
