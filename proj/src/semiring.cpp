#include "duality/semiring.hpp"

#include <algorithm>

#include "duality/error.hpp"

namespace duality {

struct Semiring::Impl {
  std::string name;
  SemiringKind kind;
  unsigned modulus = 0;
  std::vector<std::vector<unsigned>> add_table;
  std::vector<std::vector<unsigned>> mul_table;
  unsigned zero = 0;
  unsigned one = 1;
};

namespace {

Semiring::Impl make_impl(std::string name, SemiringKind kind) {
  Semiring::Impl impl;
  impl.name = std::move(name);
  impl.kind = kind;
  return impl;
}

unsigned as_index(const Rational& q) { return static_cast<unsigned>(q.numerator().get_ui()); }

Rational mod(const Rational& q, unsigned n) {
  mpz_class r;
  mpz_class num = q.numerator();
  mpz_fdiv_r_ui(r.get_mpz_t(), num.get_mpz_t(), n);
  return Rational(mpq_class(r));
}

}  // namespace

Semiring Semiring::boolean() {
  static const auto impl = std::make_shared<const Impl>(make_impl("2", SemiringKind::boolean));
  return Semiring(impl);
}

Semiring Semiring::natural() {
  static const auto impl = std::make_shared<const Impl>(make_impl("N", SemiringKind::natural));
  return Semiring(impl);
}

Semiring Semiring::nonneg_rationals() {
  static const auto impl = std::make_shared<const Impl>(make_impl("Q>=0", SemiringKind::nonneg_rational));
  return Semiring(impl);
}

Semiring Semiring::integers_mod(unsigned n) {
  if (n == 0) throw InvalidStructure("Z_0 is not a finite semiring");
  Impl impl = make_impl("Z_" + std::to_string(n), SemiringKind::integers_mod);
  impl.modulus = n;
  impl.one = n == 1 ? 0 : 1;
  return Semiring(std::make_shared<const Impl>(std::move(impl)));
}

Semiring Semiring::table(std::string name, std::vector<std::vector<unsigned>> add,
                         std::vector<std::vector<unsigned>> mul, unsigned zero, unsigned one) {
  const std::size_t n = add.size();
  auto square = [n](const std::vector<std::vector<unsigned>>& t) {
    return t.size() == n && std::all_of(t.begin(), t.end(), [n](const auto& row) {
             return row.size() == n && std::all_of(row.begin(), row.end(), [n](unsigned v) { return v < n; });
           });
  };
  if (n == 0 || !square(add) || !square(mul) || zero >= n || one >= n) {
    throw InvalidStructure("semiring tables must be square over {0..n-1}");
  }
  Impl impl = make_impl(std::move(name), SemiringKind::table);
  impl.modulus = static_cast<unsigned>(n);
  impl.add_table = std::move(add);
  impl.mul_table = std::move(mul);
  impl.zero = zero;
  impl.one = one;
  return Semiring(std::make_shared<const Impl>(std::move(impl)));
}

const std::string& Semiring::name() const { return impl_->name; }
SemiringKind Semiring::kind() const { return impl_->kind; }

Rational Semiring::zero() const {
  return impl_->kind == SemiringKind::table ? Rational(static_cast<long>(impl_->zero)) : Rational(0);
}

Rational Semiring::one() const {
  switch (impl_->kind) {
    case SemiringKind::table:
    case SemiringKind::integers_mod: return Rational(static_cast<long>(impl_->one));
    default: return Rational(1);
  }
}

Rational Semiring::add(const Rational& a, const Rational& b) const {
  switch (impl_->kind) {
    case SemiringKind::boolean: return (a.is_zero() && b.is_zero()) ? Rational(0) : Rational(1);
    case SemiringKind::natural:
    case SemiringKind::nonneg_rational: return a + b;
    case SemiringKind::integers_mod: return mod(a + b, impl_->modulus);
    case SemiringKind::table: return Rational(static_cast<long>(impl_->add_table[as_index(a)][as_index(b)]));
  }
  return a + b;
}

Rational Semiring::mul(const Rational& a, const Rational& b) const {
  switch (impl_->kind) {
    case SemiringKind::boolean: return (a.is_zero() || b.is_zero()) ? Rational(0) : Rational(1);
    case SemiringKind::natural:
    case SemiringKind::nonneg_rational: return a * b;
    case SemiringKind::integers_mod: return mod(a * b, impl_->modulus);
    case SemiringKind::table: return Rational(static_cast<long>(impl_->mul_table[as_index(a)][as_index(b)]));
  }
  return a * b;
}

bool Semiring::contains(const Rational& a) const {
  switch (impl_->kind) {
    case SemiringKind::boolean: return a == Rational(0) || a == Rational(1);
    case SemiringKind::natural: return a.is_integer() && a.sign() >= 0;
    case SemiringKind::nonneg_rational: return a.sign() >= 0;
    case SemiringKind::integers_mod:
    case SemiringKind::table:
      return a.is_integer() && a.sign() >= 0 && a < Rational(static_cast<long>(impl_->modulus));
  }
  return false;
}

bool Semiring::is_finite() const {
  return impl_->kind == SemiringKind::boolean || impl_->kind == SemiringKind::integers_mod ||
         impl_->kind == SemiringKind::table;
}

std::vector<Rational> Semiring::elements() const {
  if (!is_finite()) throw TooLarge("semiring " + name() + " is infinite");
  const unsigned n = impl_->kind == SemiringKind::boolean ? 2U : impl_->modulus;
  std::vector<Rational> out;
  out.reserve(n);
  for (unsigned i = 0; i < n; ++i) out.emplace_back(static_cast<long>(i));
  return out;
}

std::optional<Rational> Semiring::inverse(const Rational& a) const {
  if (a == zero()) return std::nullopt;
  switch (impl_->kind) {
    case SemiringKind::nonneg_rational: return a.inverse();
    case SemiringKind::natural: return a == Rational(1) ? std::optional<Rational>(a) : std::nullopt;
    default:
      for (const Rational& b : elements()) {
        if (mul(a, b) == one() && mul(b, a) == one()) return b;
      }
      return std::nullopt;
  }
}

std::optional<SemiringProfile> Semiring::declared_profile() const {
  switch (impl_->kind) {
    case SemiringKind::natural: return SemiringProfile{true, true, true, false};
    case SemiringKind::nonneg_rational: return SemiringProfile{true, true, true, true};
    default: return std::nullopt;
  }
}

Rational Semiring::sample(Rng& rng) const {
  switch (impl_->kind) {
    case SemiringKind::natural: return Rational(rng.between(0, 9));
    case SemiringKind::nonneg_rational: {
      const long q = rng.between(1, 12);
      return Rational(rng.between(0, 3 * q), q);
    }
    default: {
      const auto xs = elements();
      return xs[rng.below(xs.size())];
    }
  }
}

Rational Semiring::total(const std::vector<Rational>& xs) const {
  Rational acc = zero();
  for (const Rational& x : xs) acc = add(acc, x);
  return acc;
}

SemiringHom identity_hom(const Semiring& s) {
  return SemiringHom{s, s, [](const Rational& x) { return x; }};
}

namespace {

struct Triple {
  Rational x, y, z;
};

std::vector<Triple> law_triples(const Semiring& s, std::size_t samples, std::uint64_t seed) {
  std::vector<Triple> out;
  if (s.is_finite()) {
    const auto xs = s.elements();
    for (const auto& x : xs)
      for (const auto& y : xs)
        for (const auto& z : xs) out.push_back({x, y, z});
  } else {
    Rng rng(seed);
    // The neutral elements are always exercised.
    out.push_back({s.zero(), s.one(), s.zero()});
    out.push_back({s.one(), s.one(), s.one()});
    while (out.size() < samples) out.push_back({s.sample(rng), s.sample(rng), s.sample(rng)});
  }
  return out;
}

json triple_json(const Triple& t) { return json::array({t.x.str(), t.y.str(), t.z.str()}); }

}  // namespace

Report check_semiring_laws(const Semiring& s, std::size_t samples, std::uint64_t seed, Exec exec) {
  Report report(s.name(), "semiring-laws");
  const auto triples = law_triples(s, samples, seed);
  const Rational zero = s.zero();
  const Rational one = s.one();

  struct Law {
    const char* name;
    std::function<bool(const Triple&)> holds;
  };
  const std::vector<Law> laws = {
      {"closure", [&](const Triple& t) { return s.contains(s.add(t.x, t.y)) && s.contains(s.mul(t.x, t.y)); }},
      {"add-associative", [&](const Triple& t) { return s.add(s.add(t.x, t.y), t.z) == s.add(t.x, s.add(t.y, t.z)); }},
      {"add-commutative", [&](const Triple& t) { return s.add(t.x, t.y) == s.add(t.y, t.x); }},
      {"add-identity", [&](const Triple& t) { return s.add(zero, t.x) == t.x; }},
      {"mul-associative", [&](const Triple& t) { return s.mul(s.mul(t.x, t.y), t.z) == s.mul(t.x, s.mul(t.y, t.z)); }},
      {"mul-commutative", [&](const Triple& t) { return s.mul(t.x, t.y) == s.mul(t.y, t.x); }},
      {"mul-identity", [&](const Triple& t) { return s.mul(one, t.x) == t.x && s.mul(t.x, one) == t.x; }},
      {"distributive", [&](const Triple& t) {
         return s.mul(t.x, s.add(t.y, t.z)) == s.add(s.mul(t.x, t.y), s.mul(t.x, t.z)) &&
                s.mul(s.add(t.y, t.z), t.x) == s.add(s.mul(t.y, t.x), s.mul(t.z, t.x));
       }},
      {"zero-annihilates", [&](const Triple& t) { return s.mul(zero, t.x) == zero && s.mul(t.x, zero) == zero; }},
  };
  for (const Law& law : laws) {
    const auto bad = kernels::first_failure(
        triples.size(), [&](std::size_t i) { return !law.holds(triples[i]); }, exec);
    if (bad) {
      report.fail(law.name, "LawViolation", json{{"law", law.name}, {"triple", triple_json(triples[*bad])}},
                  *bad + 1);
    } else {
      report.pass(law.name, triples.size());
    }
  }
  return report;
}

SemiringProfile classify_semiring(const Semiring& s, std::size_t budget, std::uint64_t seed) {
  check_semiring_laws(s, budget, seed).require();
  SemiringProfile p;
  const Rational zero = s.zero();
  const Rational one = s.one();
  if (s.is_finite()) {
    const auto xs = s.elements();
    p.nontrivial = zero != one;
    p.zerosumfree = true;
    p.integral = true;
    for (const auto& x : xs) {
      for (const auto& y : xs) {
        if (p.zerosumfree && s.add(x, y) == zero && (x != zero || y != zero)) {
          p.zerosumfree = false;
          p.witness["zero_sum"] = json::array({x.str(), y.str()});
        }
        if (p.integral && s.mul(x, y) == zero && x != zero && y != zero) {
          p.integral = false;
          p.witness["zero_divisor"] = json::array({x.str(), y.str()});
        }
      }
    }
    bool invertible = true;
    for (const auto& x : xs) {
      if (x != zero && !s.inverse(x)) {
        invertible = false;
        if (!p.witness.contains("non_invertible")) p.witness["non_invertible"] = x.str();
      }
    }
    p.semifield = p.nontrivial && p.zerosumfree && p.integral && invertible;
    return p;
  }
  p = *s.declared_profile();
  // Sampled cross-check of the declared flags; a hit means the declaration is wrong.
  Rng rng(seed ^ 0x9e3779b97f4a7c15ULL);
  for (std::size_t i = 0; i < budget; ++i) {
    const Rational x = s.sample(rng);
    const Rational y = s.sample(rng);
    if (p.zerosumfree && s.add(x, y) == zero && (x != zero || y != zero)) {
      throw LawViolation("declared zerosumfree profile contradicted", json{{"zero_sum", {x.str(), y.str()}}});
    }
    if (p.integral && s.mul(x, y) == zero && x != zero && y != zero) {
      throw LawViolation("declared integral profile contradicted", json{{"zero_divisor", {x.str(), y.str()}}});
    }
    if (p.semifield && x != zero && (!s.inverse(x) || s.mul(x, *s.inverse(x)) != one)) {
      throw LawViolation("declared semifield profile contradicted", json{{"non_invertible", x.str()}});
    }
  }
  return p;
}

SemiringHom support_hom(const Semiring& s, std::size_t budget, std::uint64_t seed) {
  const SemiringProfile p = classify_semiring(s, budget, seed);
  if (!p.nontrivial || !p.zerosumfree || !p.integral) {
    json w = p.witness;
    w["nontrivial"] = p.nontrivial;
    w["zerosumfree"] = p.zerosumfree;
    w["integral"] = p.integral;
    throw NotEligible("support homomorphism needs a nontrivial, zerosumfree, integral semiring", w);
  }
  const Rational zero = s.zero();
  SemiringHom h{s, Semiring::boolean(), [zero](const Rational& x) { return x == zero ? Rational(0) : Rational(1); }};
  check_semiring_hom(h, budget, seed).require();
  return h;
}

Report check_semiring_hom(const SemiringHom& h, std::size_t samples, std::uint64_t seed) {
  Report report(h.from.name() + "->" + h.to.name(), "semiring-hom");
  std::vector<std::pair<Rational, Rational>> pairs;
  if (h.from.is_finite()) {
    const auto xs = h.from.elements();
    for (const auto& x : xs)
      for (const auto& y : xs) pairs.emplace_back(x, y);
  } else {
    Rng rng(seed);
    pairs.emplace_back(h.from.zero(), h.from.one());
    while (pairs.size() < samples) pairs.emplace_back(h.from.sample(rng), h.from.sample(rng));
  }
  if (h(h.from.zero()) != h.to.zero() || h(h.from.one()) != h.to.one()) {
    report.fail("constants", "NotHomomorphism", json{{"h(0)", h(h.from.zero()).str()}, {"h(1)", h(h.from.one()).str()}});
  } else {
    report.pass("constants", 2);
  }
  auto check = [&](const char* name, auto&& holds) {
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      const auto& [x, y] = pairs[i];
      if (!holds(x, y)) {
        report.fail(name, "NotHomomorphism", json{{"pair", {x.str(), y.str()}}}, i + 1);
        return;
      }
    }
    report.pass(name, pairs.size());
  };
  check("preserves-add", [&](const Rational& x, const Rational& y) {
    return h(h.from.add(x, y)) == h.to.add(h(x), h(y));
  });
  check("preserves-mul", [&](const Rational& x, const Rational& y) {
    return h(h.from.mul(x, y)) == h.to.mul(h(x), h(y));
  });
  return report;
}

}  // namespace duality
