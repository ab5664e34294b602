#include "duality/semimod.hpp"

#include <algorithm>

namespace duality {

using linalg::Vec;

FElement FElement::pair(const Rational& s, ConvexElement x) {
  if (s.sign() <= 0) throw ScalarOutOfRange("F(X) pair needs a positive scalar, got " + s.str());
  return FElement{s, std::move(x)};
}

std::strong_ordering operator<=>(const FElement& a, const FElement& b) {
  if (a.is_zero() || b.is_zero()) return b.is_zero() <=> a.is_zero();
  if (auto c = *a.base <=> *b.base; c != 0) return c;
  return a.scalar <=> b.scalar;
}

std::string render(const FElement& u) {
  if (u.is_zero()) return "0";
  return "(" + u.scalar.str() + "," + render(*u.base) + ")";
}

std::string render(const Vec& v) {
  std::string out = "[";
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + v[i].str();
  return out + "]";
}

std::string render(const ModElement& m) {
  return std::visit([](const auto& v) { return render(v); }, m);
}

FElement f_add(const ConvexAlgebra& x, const FElement& u, const FElement& v) {
  if (u.is_zero()) return v;
  if (v.is_zero()) return u;
  const Rational total = u.scalar + v.scalar;
  return FElement{total, x.ternary(u.scalar / total, *u.base, *v.base)};
}

FElement f_smul(const Rational& s, const FElement& u) {
  if (s.sign() < 0) throw ScalarOutOfRange("negative scalar " + s.str());
  if (s.is_zero() || u.is_zero()) return FElement::zero();
  return FElement{s * u.scalar, *u.base};
}

struct Semimodule::Impl {
  std::string name;
  Variant variant = Variant::nonneg_orthant;
  std::vector<std::string> labels;
  std::vector<std::vector<std::size_t>> join;
  std::size_t bottom = 0;
  std::size_t dimension = 0;
  std::optional<ConvexAlgebra> base;
};

Semimodule Semimodule::join_semilattice(std::string name, std::vector<std::string> elements,
                                        std::vector<std::vector<std::size_t>> join) {
  // A join table is a meet table for the opposite order.
  const auto as_meet = ConvexAlgebra::semilattice(name, elements, join);
  if (!as_meet.top()) throw InvalidStructure("join semilattice " + name + " has no bottom element");
  auto impl = std::make_shared<Impl>();
  impl->name = std::move(name);
  impl->variant = Variant::join_semilattice;
  impl->labels = std::move(elements);
  impl->join = std::move(join);
  impl->bottom = *as_meet.top();
  return Semimodule(std::move(impl));
}

Semimodule Semimodule::nonneg_orthant(std::size_t dimension) {
  auto impl = std::make_shared<Impl>();
  impl->name = "Q>=0^" + std::to_string(dimension);
  impl->variant = Variant::nonneg_orthant;
  impl->dimension = dimension;
  return Semimodule(std::move(impl));
}

Semimodule Semimodule::free_multiset(std::vector<std::string> labels) {
  std::sort(labels.begin(), labels.end());
  labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
  auto impl = std::make_shared<Impl>();
  impl->name = "M(" + std::to_string(labels.size()) + ")";
  impl->variant = Variant::free_multiset;
  impl->labels = std::move(labels);
  return Semimodule(std::move(impl));
}

Semimodule Semimodule::free_on_convex(ConvexAlgebra x) {
  auto impl = std::make_shared<Impl>();
  impl->name = "F(" + x.name() + ")";
  impl->variant = Variant::free_on_convex;
  impl->base = std::move(x);
  return Semimodule(std::move(impl));
}

const std::string& Semimodule::name() const { return impl_->name; }
Semimodule::Variant Semimodule::variant() const { return impl_->variant; }

std::string Semimodule::variant_name() const {
  switch (variant()) {
    case Variant::join_semilattice: return "join_semilattice";
    case Variant::nonneg_orthant: return "nonneg_orthant";
    case Variant::free_multiset: return "free_multiset";
    case Variant::free_on_convex: return "free_on_convex";
  }
  return "unknown";
}

const std::vector<std::string>& Semimodule::labels() const { return impl_->labels; }

std::size_t Semimodule::join_index(const std::string& e) const {
  const auto it = std::find(impl_->labels.begin(), impl_->labels.end(), e);
  if (it == impl_->labels.end()) throw ForeignElement("'" + e + "' is not an element of " + name());
  return static_cast<std::size_t>(it - impl_->labels.begin());
}

std::size_t Semimodule::join(std::size_t a, std::size_t b) const { return impl_->join[a][b]; }
std::size_t Semimodule::bottom() const { return impl_->bottom; }
std::size_t Semimodule::dimension() const { return impl_->dimension; }

const ConvexAlgebra& Semimodule::base() const {
  if (!impl_->base) throw InvalidStructure(name() + " is not a free semimodule on a convex algebra");
  return *impl_->base;
}

bool Semimodule::contains(const ModElement& a) const {
  switch (variant()) {
    case Variant::join_semilattice: {
      const auto* s = std::get_if<std::string>(&a);
      return s && std::find(impl_->labels.begin(), impl_->labels.end(), *s) != impl_->labels.end();
    }
    case Variant::nonneg_orthant: {
      const auto* v = std::get_if<Vec>(&a);
      return v && v->size() == impl_->dimension &&
             std::all_of(v->begin(), v->end(), [](const Rational& q) { return q.sign() >= 0; });
    }
    case Variant::free_multiset: {
      const auto* m = std::get_if<FormalSum<std::string>>(&a);
      if (!m || !(m->semiring() == rationals())) return false;
      return std::all_of(m->terms().begin(), m->terms().end(), [&](const auto& kv) {
        return std::binary_search(impl_->labels.begin(), impl_->labels.end(), kv.first);
      });
    }
    case Variant::free_on_convex: {
      const auto* u = std::get_if<FElement>(&a);
      if (!u) return false;
      if (u->is_zero()) return u->scalar.is_zero();
      return u->scalar.sign() > 0 && impl_->base->contains(*u->base);
    }
  }
  return false;
}

namespace {

void require_member(const Semimodule& m, const ModElement& a) {
  if (!m.contains(a)) {
    throw ForeignElement(render(a) + " is not an element of " + m.name(), json{{"element", render(a)}});
  }
}

}  // namespace

ModElement Semimodule::zero() const {
  switch (variant()) {
    case Variant::join_semilattice: return impl_->labels[impl_->bottom];
    case Variant::nonneg_orthant: return linalg::zeros(impl_->dimension);
    case Variant::free_multiset: return FormalSum<std::string>(rationals());
    case Variant::free_on_convex: return FElement::zero();
  }
  throw InvalidStructure("unknown semimodule variant");
}

ModElement Semimodule::add(const ModElement& a, const ModElement& b) const {
  require_member(*this, a);
  require_member(*this, b);
  switch (variant()) {
    case Variant::join_semilattice:
      return impl_->labels[join(join_index(std::get<std::string>(a)), join_index(std::get<std::string>(b)))];
    case Variant::nonneg_orthant:
      return linalg::add(std::get<Vec>(a), std::get<Vec>(b));
    case Variant::free_multiset: {
      std::vector<std::pair<Rational, std::string>> raw;
      for (const auto& [l, c] : std::get<FormalSum<std::string>>(a).terms()) raw.emplace_back(c, l);
      for (const auto& [l, c] : std::get<FormalSum<std::string>>(b).terms()) raw.emplace_back(c, l);
      return FormalSum<std::string>::normalize(rationals(), raw);
    }
    case Variant::free_on_convex:
      return f_add(*impl_->base, std::get<FElement>(a), std::get<FElement>(b));
  }
  throw InvalidStructure("unknown semimodule variant");
}

ModElement Semimodule::smul(const Rational& s, const ModElement& a) const {
  if (s.sign() < 0) throw ScalarOutOfRange("negative scalar " + s.str());
  require_member(*this, a);
  switch (variant()) {
    case Variant::join_semilattice:
      return s.is_zero() ? zero() : a;
    case Variant::nonneg_orthant:
      return linalg::scale(s, std::get<Vec>(a));
    case Variant::free_multiset: {
      std::vector<std::pair<Rational, std::string>> raw;
      for (const auto& [l, c] : std::get<FormalSum<std::string>>(a).terms()) raw.emplace_back(s * c, l);
      return FormalSum<std::string>::normalize(rationals(), raw);
    }
    case Variant::free_on_convex:
      return f_smul(s, std::get<FElement>(a));
  }
  throw InvalidStructure("unknown semimodule variant");
}

ModElement Semimodule::ternary(const Rational& r, const ModElement& a, const ModElement& b) const {
  if (!in_unit_interval(r)) throw ScalarOutOfRange("scalar " + r.str() + " is outside [0,1]");
  return add(smul(r, a), smul(Rational(1) - r, b));
}

std::optional<std::vector<ModElement>> Semimodule::elements() const {
  if (variant() != Variant::join_semilattice) return std::nullopt;
  return std::vector<ModElement>(impl_->labels.begin(), impl_->labels.end());
}

ModElement Semimodule::sample(Rng& rng) const {
  auto scalar = [&] { return Rational(rng.between(1, 24), rng.between(1, 8)); };
  switch (variant()) {
    case Variant::join_semilattice:
      return impl_->labels[rng.below(impl_->labels.size())];
    case Variant::nonneg_orthant: {
      Vec v(impl_->dimension);
      for (auto& q : v) q = rng.coin() ? Rational(0) : scalar();
      return v;
    }
    case Variant::free_multiset: {
      std::vector<std::pair<Rational, std::string>> raw;
      const std::size_t k = rng.below(impl_->labels.size() + 1);
      for (std::size_t i = 0; i < k; ++i) raw.emplace_back(scalar(), impl_->labels[rng.below(impl_->labels.size())]);
      return FormalSum<std::string>::normalize(rationals(), raw);
    }
    case Variant::free_on_convex:
      if (rng.below(8) == 0) return FElement::zero();
      return FElement::pair(scalar(), impl_->base->sample(rng));
  }
  throw InvalidStructure("unknown semimodule variant");
}

SemimoduleOps SemimoduleOps::standard(const Semimodule& m) {
  return {[m](const ModElement& a, const ModElement& b) { return m.add(a, b); },
          [m](const Rational& s, const ModElement& a) { return m.smul(s, a); }};
}

std::vector<Rational> semimodule_scalars() {
  return {Rational(0), Rational(1), Rational(1, 2), Rational(2), Rational(3), Rational(1, 3), Rational(5, 2)};
}

namespace {

struct ModCase {
  Rational s, t;
  ModElement a, b, c;
};

std::vector<ModCase> module_cases(const Semimodule& m, const SemimodCheckOptions& opt, bool& exhaustive) {
  const auto scalars = semimodule_scalars();
  std::vector<ModCase> out;
  const auto els = m.elements();
  exhaustive = els && els->size() <= opt.exhaustive_limit;
  if (exhaustive) {
    for (const auto& s : scalars)
      for (const auto& t : scalars)
        for (const auto& a : *els)
          for (const auto& b : *els)
            for (const auto& c : *els) out.push_back({s, t, a, b, c});
    return out;
  }
  Rng rng(opt.seed);
  for (std::size_t k = 0; k < opt.samples; ++k) {
    const Rational s = rng.coin() ? scalars[rng.below(scalars.size())] : Rational(rng.between(0, 30), rng.between(1, 9));
    const Rational t = rng.coin() ? scalars[rng.below(scalars.size())] : Rational(rng.between(0, 30), rng.between(1, 9));
    ModElement a = m.sample(rng), b = m.sample(rng), c = m.sample(rng);
    out.push_back({s, t, std::move(a), std::move(b), std::move(c)});
  }
  return out;
}

json mod_witness(const char* law, const ModCase& c, const ModElement& lhs, const ModElement& rhs) {
  return json{{"law", law}, {"s", c.s.str()}, {"t", c.t.str()}, {"a", render(c.a)}, {"b", render(c.b)},
              {"c", render(c.c)}, {"lhs", render(lhs)}, {"rhs", render(rhs)}};
}

}  // namespace

Report check_semimodule_axioms(const Semimodule& m, const SemimodCheckOptions& opt) {
  return check_semimodule_axioms(m, SemimoduleOps::standard(m), opt);
}

Report check_semimodule_axioms(const Semimodule& m, const SemimoduleOps& ops, const SemimodCheckOptions& opt) {
  Report report(m.name(), "semimodule-axioms");
  bool exhaustive = false;
  const auto cases = module_cases(m, opt, exhaustive);
  const json detail{{"mode", exhaustive ? "exhaustive" : "sampled"}};
  const ModElement zero = m.zero();
  using Sides = std::pair<ModElement, ModElement>;
  auto run = [&](const char* law, auto&& sides) {
    auto fails = [&](std::size_t k) {
      const Sides lr = sides(cases[k]);
      return !(lr.first == lr.second);
    };
    if (const auto bad = kernels::first_failure(cases.size(), fails, opt.exec)) {
      const Sides lr = sides(cases[*bad]);
      report.fail(law, "LawViolation", mod_witness(law, cases[*bad], lr.first, lr.second), *bad + 1, detail);
    } else {
      report.pass(law, cases.size(), detail);
    }
  };
  run("add-associative", [&](const ModCase& c) {
    return Sides{ops.add(ops.add(c.a, c.b), c.c), ops.add(c.a, ops.add(c.b, c.c))};
  });
  run("add-commutative", [&](const ModCase& c) { return Sides{ops.add(c.a, c.b), ops.add(c.b, c.a)}; });
  run("zero-neutral", [&](const ModCase& c) { return Sides{ops.add(zero, c.a), c.a}; });
  run("smul-one", [&](const ModCase& c) { return Sides{ops.smul(Rational(1), c.a), c.a}; });
  run("smul-zero", [&](const ModCase& c) { return Sides{ops.smul(Rational(0), c.a), zero}; });
  run("smul-of-zero", [&](const ModCase& c) { return Sides{ops.smul(c.s, zero), zero}; });
  run("smul-compatible", [&](const ModCase& c) {
    return Sides{ops.smul(c.s * c.t, c.a), ops.smul(c.s, ops.smul(c.t, c.a))};
  });
  run("distributes-scalars", [&](const ModCase& c) {
    return Sides{ops.smul(c.s + c.t, c.a), ops.add(ops.smul(c.s, c.a), ops.smul(c.t, c.a))};
  });
  run("distributes-vectors", [&](const ModCase& c) {
    return Sides{ops.smul(c.s, ops.add(c.a, c.b)), ops.add(ops.smul(c.s, c.a), ops.smul(c.s, c.b))};
  });
  return report;
}

Report check_semimodule_hom(const Semimodule& from, const Semimodule& to, const ModMap& g,
                            const SemimodCheckOptions& opt) {
  Report report(from.name() + "->" + to.name(), "semimodule-hom");
  bool exhaustive = false;
  const auto cases = module_cases(from, opt, exhaustive);
  const json detail{{"mode", exhaustive ? "exhaustive" : "sampled"}};
  const ModElement gz = g(from.zero());
  if (!(gz == to.zero())) {
    report.fail("preserves-zero", "NotHomomorphism", json{{"got", render(gz)}, {"expected", render(to.zero())}}, 1);
  } else {
    report.pass("preserves-zero", 1);
  }
  using Sides = std::pair<ModElement, ModElement>;
  auto run = [&](const char* law, auto&& sides) {
    auto fails = [&](std::size_t k) {
      const Sides lr = sides(cases[k]);
      return !(lr.first == lr.second);
    };
    if (const auto bad = kernels::first_failure(cases.size(), fails, opt.exec)) {
      const Sides lr = sides(cases[*bad]);
      report.fail(law, "NotHomomorphism", mod_witness(law, cases[*bad], lr.first, lr.second), *bad + 1, detail);
    } else {
      report.pass(law, cases.size(), detail);
    }
  };
  run("preserves-add", [&](const ModCase& c) { return Sides{g(from.add(c.a, c.b)), to.add(g(c.a), g(c.b))}; });
  run("preserves-smul", [&](const ModCase& c) { return Sides{g(from.smul(c.s, c.a)), to.smul(c.s, g(c.a))}; });
  return report;
}

ModMap transpose_up(const ConvexAlgebra& x, const Semimodule& y, AffineMap f, const ConvexCheckOptions& opt) {
  check_affine(x, y, f, opt).require();
  return [y, f = std::move(f)](const ModElement& a) -> ModElement {
    const auto& u = std::get<FElement>(a);
    if (u.is_zero()) return y.zero();
    return y.smul(u.scalar, f(*u.base));
  };
}

AffineMap transpose_down(const ConvexAlgebra& x, const Semimodule& y, ModMap g, const SemimodCheckOptions& opt) {
  check_semimodule_hom(Semimodule::free_on_convex(x), y, g, opt).require();
  return [g = std::move(g)](const ConvexElement& e) { return g(FElement::pair(Rational(1), e)); };
}

namespace {

Rational small_nonneg(Rng& rng) { return Rational(rng.between(0, 12), rng.between(1, 6)); }

Vec random_vec(Rng& rng, std::size_t d) {
  Vec v(d);
  for (auto& q : v) q = small_nonneg(rng);
  return v;
}

Semimodule opposite(const ConvexAlgebra& x) {
  std::vector<std::vector<std::size_t>> table(x.elements().size(), std::vector<std::size_t>(x.elements().size()));
  for (std::size_t a = 0; a < table.size(); ++a)
    for (std::size_t b = 0; b < table.size(); ++b) table[a][b] = x.meet(a, b);
  return Semimodule::join_semilattice(x.name() + "^op", x.elements(), table);
}

}  // namespace

std::vector<TranspositionProbe> transposition_probes(const ConvexAlgebra& x, std::size_t count, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<TranspositionProbe> out;
  out.reserve(count);
  const Semimodule plane = Semimodule::nonneg_orthant(2);
  for (std::size_t i = 0; i < count; ++i) {
    switch (x.family()) {
      case ConvexAlgebra::Family::semilattice: {
        if (x.top() && i % 2 == 0) {
          // f(x) = x ^ c into the opposite join semilattice; g(s, x) = x ^ c, g(0) = top.
          const std::size_t c = rng.below(x.elements().size());
          const Semimodule y = opposite(x);
          const std::size_t top = *x.top();
          AffineMap f = [x, c](const ConvexElement& e) -> ModElement {
            return x.elements()[x.meet(x.index_of(std::get<std::string>(e)), c)];
          };
          ModMap g = [x, c, top](const ModElement& a) -> ModElement {
            const auto& u = std::get<FElement>(a);
            if (u.is_zero()) return x.elements()[top];
            return x.elements()[x.meet(x.index_of(std::get<std::string>(*u.base)), c)];
          };
          out.push_back({y, std::move(f), std::move(g), "meet with " + x.elements()[c]});
        } else {
          // Constant f = v; g(s, x) = s v.
          const Vec v = random_vec(rng, 2);
          AffineMap f = [v](const ConvexElement&) -> ModElement { return v; };
          ModMap g = [v](const ModElement& a) -> ModElement {
            const auto& u = std::get<FElement>(a);
            Vec out = linalg::zeros(v.size());
            if (!u.is_zero()) {
              for (std::size_t k = 0; k < v.size(); ++k) out[k] = u.scalar * v[k];
            }
            return out;
          };
          out.push_back({plane, std::move(f), std::move(g), "constant " + render(v)});
        }
        break;
      }
      case ConvexAlgebra::Family::simplex: {
        // Linear on vertex values; g acts on the measure s . phi directly.
        std::map<std::string, Vec> values;
        for (const auto& l : x.labels()) values[l] = random_vec(rng, 2);
        AffineMap f = [values](const ConvexElement& e) -> ModElement {
          Vec out = linalg::zeros(2);
          for (const auto& [l, c] : std::get<Distribution<std::string>>(e).terms()) {
            out = linalg::add(out, linalg::scale(c, values.at(l)));
          }
          return out;
        };
        ModMap g = [values](const ModElement& a) -> ModElement {
          const auto& u = std::get<FElement>(a);
          Vec out = linalg::zeros(2);
          if (u.is_zero()) return out;
          for (const auto& [l, c] : std::get<Distribution<std::string>>(*u.base).terms()) {
            const Rational weight = u.scalar * c;
            for (std::size_t k = 0; k < 2; ++k) out[k] += weight * values.at(l)[k];
          }
          return out;
        };
        out.push_back({plane, std::move(f), std::move(g), "vertex values"});
        break;
      }
      case ConvexAlgebra::Family::polytope: {
        // f(p) = M p + c with c shifted so f >= 0 on the generators; g(s, p) = M (s p) + s c.
        const std::size_t d = x.dimension();
        linalg::Mat m(2, Vec(d));
        for (auto& row : m)
          for (auto& q : row) q = Rational(rng.between(-6, 6), rng.between(1, 4));
        Vec c = random_vec(rng, 2);
        for (const auto& gp : x.generator_points()) {
          for (std::size_t k = 0; k < 2; ++k) {
            const Rational v = linalg::dot(m[k], gp) + c[k];
            if (v.sign() < 0) c[k] -= v;
          }
        }
        AffineMap f = [m, c](const ConvexElement& e) -> ModElement {
          const auto& p = std::get<HullPoint>(e).coords;
          return Vec{linalg::dot(m[0], p) + c[0], linalg::dot(m[1], p) + c[1]};
        };
        ModMap g = [m, c](const ModElement& a) -> ModElement {
          const auto& u = std::get<FElement>(a);
          if (u.is_zero()) return linalg::zeros(2);
          const Vec q = linalg::scale(u.scalar, std::get<HullPoint>(*u.base).coords);
          return Vec{linalg::dot(m[0], q) + u.scalar * c[0], linalg::dot(m[1], q) + u.scalar * c[1]};
        };
        out.push_back({plane, std::move(f), std::move(g), "affine functional pair"});
        break;
      }
    }
  }
  return out;
}

Report check_transposition(const ConvexAlgebra& x, std::size_t count, std::uint64_t seed, Exec exec) {
  Report report(x.name(), "transposition");
  const auto probes = transposition_probes(x, count, seed);
  ConvexCheckOptions affine_opt;
  affine_opt.grid = {Rational(0), Rational(1), Rational(1, 2), Rational(1, 3), Rational(2, 3), Rational(1, 4),
                     Rational(3, 4)};
  affine_opt.samples = 12;
  affine_opt.exec = Exec::serial;
  SemimodCheckOptions hom_opt;
  hom_opt.samples = 24;
  hom_opt.exec = Exec::serial;
  const Semimodule fx = Semimodule::free_on_convex(x);

  // Per-probe points, drawn up front so the stream does not depend on scheduling.
  Rng rng(seed ^ 0x9e3779b97f4a7c15ULL);
  std::vector<std::vector<ConvexElement>> xs(count);
  std::vector<std::vector<ModElement>> us(count);
  for (std::size_t i = 0; i < count; ++i) {
    xs[i] = x.generators();
    for (int k = 0; k < 8; ++k) xs[i].push_back(x.sample(rng));
    us[i].push_back(FElement::zero());
    for (int k = 0; k < 8; ++k) us[i].push_back(fx.sample(rng));
  }

  struct Outcome {
    std::string check;
    std::string kind;
    json witness;
  };
  auto run_probe = [&](std::size_t i) -> std::optional<Outcome> {
    const auto& p = probes[i];
    ConvexCheckOptions aopt = affine_opt;
    aopt.seed = seed + i;
    SemimodCheckOptions hopt = hom_opt;
    hopt.seed = seed + i;
    ModMap up;
    AffineMap down;
    try {
      up = transpose_up(x, p.target, p.f, aopt);
    } catch (const Error& e) {
      return Outcome{"transpose-up-morphism", e.kind(), json{{"probe", i}, {"map", p.description}, {"error", e.witness()}}};
    }
    try {
      down = transpose_down(x, p.target, p.g, hopt);
    } catch (const Error& e) {
      return Outcome{"transpose-down-morphism", e.kind(), json{{"probe", i}, {"map", p.description}, {"error", e.witness()}}};
    }
    const auto up_report = check_semimodule_hom(fx, p.target, up, hopt);
    if (!up_report.ok()) {
      return Outcome{"transpose-up-morphism", "NotHomomorphism",
                     json{{"probe", i}, {"map", p.description}, {"error", up_report.first_failure()->witness}}};
    }
    const AffineMap down_up = transpose_down(x, p.target, up, hopt);
    for (const auto& e : xs[i]) {
      if (!(down_up(e) == p.f(e))) {
        return Outcome{"down-up-identity", "LawViolation",
                       json{{"probe", i}, {"map", p.description}, {"x", render(e)}, {"got", render(down_up(e))},
                            {"expected", render(p.f(e))}}};
      }
    }
    const ModMap up_down = transpose_up(x, p.target, down, aopt);
    for (const auto& u : us[i]) {
      if (!(up_down(u) == p.g(u))) {
        return Outcome{"up-down-identity", "LawViolation",
                       json{{"probe", i}, {"map", p.description}, {"u", render(u)}, {"got", render(up_down(u))},
                            {"expected", render(p.g(u))}}};
      }
    }
    return std::nullopt;
  };
  std::vector<std::optional<Outcome>> results(count);
  const auto bad = kernels::first_failure(
      count,
      [&](std::size_t i) {
        results[i] = run_probe(i);
        return results[i].has_value();
      },
      exec);
  const std::size_t points = count == 0 ? 0 : xs[0].size() + us[0].size();
  if (bad) {
    report.fail(results[*bad]->check, results[*bad]->kind, results[*bad]->witness, *bad + 1);
  } else {
    const json detail{{"points_per_probe", points}};
    report.pass("transposes-are-morphisms", count);
    report.pass("down-up-identity", count, detail);
    report.pass("up-down-identity", count, detail);
  }
  return report;
}

}  // namespace duality
