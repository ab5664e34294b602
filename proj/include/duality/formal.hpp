#pragma once

// Finite formal sums s1*x1 + ... + sn*xn over a semiring, in canonical form:
// keys ordered, no zero coefficient, no repeated element. These carry both
// the multiset monad M_S (any sum) and the distribution monad D_S (total
// mass equal to one).

#include <algorithm>
#include <compare>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "duality/error.hpp"
#include "duality/kernels.hpp"
#include "duality/rational.hpp"
#include "duality/report.hpp"
#include "duality/rng.hpp"
#include "duality/semiring.hpp"

namespace duality {

template <class T>
class FormalSum;

inline std::string render(const std::string& s) { return s; }
inline std::string render(std::size_t i) { return std::to_string(i); }
inline std::string render(const Rational& q) { return q.str(); }
template <class A, class B>
std::string render(const std::pair<A, B>& p);
template <class T>
std::string render(const FormalSum<T>& s);

template <class T>
class FormalSum {
 public:
  using Terms = std::map<T, Rational>;

  explicit FormalSum(Semiring s) : s_(std::move(s)) {}

  /// Merges repeated elements by semiring addition, then drops zeros.
  static FormalSum normalize(const Semiring& s, const std::vector<std::pair<Rational, T>>& raw) {
    Terms acc;
    for (const auto& [c, x] : raw) {
      if (!s.contains(c)) {
        throw InvalidStructure("coefficient " + c.str() + " is not in " + s.name(),
                               json{{"coefficient", c.str()}, {"semiring", s.name()}});
      }
      auto [it, inserted] = acc.try_emplace(x, c);
      if (!inserted) it->second = s.add(it->second, c);
    }
    return FormalSum(s, prune(s, std::move(acc)));
  }

  /// Trusted path for terms that are already merged; zeros are still dropped.
  static FormalSum from_terms(const Semiring& s, Terms terms) { return FormalSum(s, prune(s, std::move(terms))); }

  [[nodiscard]] const Semiring& semiring() const { return s_; }
  [[nodiscard]] const Terms& terms() const { return terms_; }
  [[nodiscard]] bool empty() const { return terms_.empty(); }
  [[nodiscard]] std::size_t size() const { return terms_.size(); }

  [[nodiscard]] Rational coefficient(const T& x) const {
    auto it = terms_.find(x);
    return it == terms_.end() ? s_.zero() : it->second;
  }

  [[nodiscard]] std::vector<T> support() const {
    std::vector<T> out;
    out.reserve(terms_.size());
    for (const auto& kv : terms_) out.push_back(kv.first);
    return out;
  }

  [[nodiscard]] Rational mass() const {
    Rational acc = s_.zero();
    for (const auto& kv : terms_) acc = s_.add(acc, kv.second);
    return acc;
  }

  [[nodiscard]] bool is_distribution() const { return mass() == s_.one(); }

  friend bool operator==(const FormalSum& a, const FormalSum& b) {
    return a.s_ == b.s_ && a.terms_ == b.terms_;
  }
  friend std::strong_ordering operator<=>(const FormalSum& a, const FormalSum& b) {
    if (auto c = a.s_.name() <=> b.s_.name(); c != 0) return c;
    return std::lexicographical_compare_three_way(a.terms_.begin(), a.terms_.end(), b.terms_.begin(),
                                                  b.terms_.end());
  }

 private:
  FormalSum(Semiring s, Terms terms) : s_(std::move(s)), terms_(std::move(terms)) {}

  static Terms prune(const Semiring& s, Terms terms) {
    const Rational zero = s.zero();
    std::erase_if(terms, [&](const auto& kv) { return kv.second == zero; });
    return terms;
  }

  Semiring s_;
  Terms terms_;
};

/// A formal sum whose total mass was checked to be the semiring's one.
template <class T>
class Distribution {
 public:
  static Distribution from(FormalSum<T> s) {
    if (!s.is_distribution()) {
      throw InvalidStructure("total mass " + s.mass().str() + " is not one: " + render(s),
                             json{{"sum", render(s)}, {"mass", s.mass().str()}});
    }
    return Distribution(std::move(s));
  }
  static Distribution normalize(const Semiring& s, const std::vector<std::pair<Rational, T>>& raw) {
    return from(FormalSum<T>::normalize(s, raw));
  }
  static Distribution unit(const Semiring& s, const T& x) {
    return Distribution(FormalSum<T>::normalize(s, {{s.one(), x}}));
  }

  [[nodiscard]] const FormalSum<T>& sum() const { return sum_; }
  [[nodiscard]] const typename FormalSum<T>::Terms& terms() const { return sum_.terms(); }
  [[nodiscard]] const Semiring& semiring() const { return sum_.semiring(); }
  [[nodiscard]] std::vector<T> support() const { return sum_.support(); }
  [[nodiscard]] std::size_t size() const { return sum_.size(); }
  [[nodiscard]] Rational coefficient(const T& x) const { return sum_.coefficient(x); }

  friend bool operator==(const Distribution& a, const Distribution& b) { return a.sum_ == b.sum_; }
  friend std::strong_ordering operator<=>(const Distribution& a, const Distribution& b) { return a.sum_ <=> b.sum_; }

 private:
  explicit Distribution(FormalSum<T> s) : sum_(std::move(s)) {}
  FormalSum<T> sum_;
};

template <class A, class B>
std::string render(const std::pair<A, B>& p) {
  return "(" + render(p.first) + "," + render(p.second) + ")";
}

/// Text form "s1*e1 + s2*e2"; the empty sum renders as "0".
template <class T>
std::string render(const FormalSum<T>& s) {
  if (s.empty()) return "0";
  std::string out;
  for (const auto& [x, c] : s.terms()) {
    if (!out.empty()) out += " + ";
    std::string e = render(x);
    if (e.find(' ') != std::string::npos) e = "(" + e + ")";
    out += c.str() + "*" + e;
  }
  return out;
}

template <class T>
std::string render(const Distribution<T>& d) {
  return render(d.sum());
}

/// Parses "s1*e1 + s2*e2" (a bare element means coefficient one). Repeated
/// elements are merged, never rejected.
FormalSum<std::string> parse_formal_sum(const Semiring& s, std::string_view text);

// ---------------------------------------------------------------------------
// Monad structure

/// eta(x) = 1x.
template <class T>
FormalSum<T> unit(const Semiring& s, const T& x) {
  return FormalSum<T>::normalize(s, {{s.one(), x}});
}

/// mu(sum_i s_i phi_i) = lambda x. sum_i s_i * phi_i(x).
template <class T>
FormalSum<T> mult(const FormalSum<FormalSum<T>>& outer) {
  const Semiring& s = outer.semiring();
  typename FormalSum<T>::Terms acc;
  for (const auto& [inner, c] : outer.terms()) {
    if (!(inner.semiring() == s)) {
      throw MixedCarrier("inner sum over " + inner.semiring().name() + " inside a sum over " + s.name(),
                         json{{"outer", s.name()}, {"inner", inner.semiring().name()}});
    }
    for (const auto& [x, d] : inner.terms()) {
      const Rational term = s.mul(c, d);
      auto [it, inserted] = acc.try_emplace(x, term);
      if (!inserted) it->second = s.add(it->second, term);
    }
  }
  return FormalSum<T>::from_terms(s, std::move(acc));
}

/// M_S(f)(sum_i s_i x_i) = sum_i s_i f(x_i), merging collisions.
template <class T, class F>
auto map_sum(F&& f, const FormalSum<T>& phi) {
  using U = std::decay_t<decltype(f(std::declval<const T&>()))>;
  const Semiring& s = phi.semiring();
  typename FormalSum<U>::Terms acc;
  for (const auto& [x, c] : phi.terms()) {
    auto [it, inserted] = acc.try_emplace(f(x), c);
    if (!inserted) it->second = s.add(it->second, c);
  }
  return FormalSum<U>::from_terms(s, std::move(acc));
}

/// st(x, v) = T(lambda y. <x, y>)(v).
template <class X, class Y>
FormalSum<std::pair<X, Y>> strength(const X& x, const FormalSum<Y>& v) {
  return map_sum([&x](const Y& y) { return std::pair<X, Y>(x, y); }, v);
}

/// st'(u, y) = T(lambda x. <x, y>)(u).
template <class X, class Y>
FormalSum<std::pair<X, Y>> strength_swapped(const FormalSum<X>& u, const Y& y) {
  return map_sum([&y](const X& x) { return std::pair<X, Y>(x, y); }, u);
}

/// mu . T(st) . st' : first distribute over u, then over v.
template <class X, class Y>
FormalSum<std::pair<X, Y>> double_strength_left(const FormalSum<X>& u, const FormalSum<Y>& v) {
  const auto outer = strength_swapped(u, v);
  return mult(map_sum([](const std::pair<X, FormalSum<Y>>& p) { return strength(p.first, p.second); }, outer));
}

/// mu . T(st') . st : first distribute over v, then over u.
template <class X, class Y>
FormalSum<std::pair<X, Y>> double_strength_right(const FormalSum<X>& u, const FormalSum<Y>& v) {
  const auto outer = strength(u, v);
  return mult(
      map_sum([](const std::pair<FormalSum<X>, Y>& p) { return strength_swapped(p.first, p.second); }, outer));
}

/// Post-composition with a semiring homomorphism, renormalized.
template <class T>
FormalSum<T> change_scalars(const SemiringHom& h, const FormalSum<T>& phi) {
  if (!(phi.semiring() == h.from)) {
    throw MixedCarrier("sum over " + phi.semiring().name() + " given to a hom from " + h.from.name());
  }
  std::vector<std::pair<Rational, T>> raw;
  raw.reserve(phi.size());
  for (const auto& [x, c] : phi.terms()) raw.emplace_back(h(c), x);
  return FormalSum<T>::normalize(h.to, raw);
}

// ---------------------------------------------------------------------------
// Law checking

enum class MonadKind { multiset, distribution };

std::string to_string(MonadKind k);

struct LawCheckOptions {
  std::size_t trials = 200;
  /// Support bound for sums over the carrier.
  std::size_t max_support = 4;
  /// Support bound for sums of sums (levels two and three).
  std::size_t nested_support = 2;
  /// Enumerations larger than this fall back to sampling.
  std::size_t exhaustive_cap = 20000;
  std::uint64_t seed = kDefaultSeed;
  Exec exec = Exec::parallel;
};

namespace detail {

/// Random sum over `pool` with 1..max_support distinct elements. For the
/// distribution monad the coefficients are drawn so the mass is exactly one.
template <class U>
FormalSum<U> random_sum(const Semiring& s, const std::vector<U>& pool, MonadKind kind, Rng& rng,
                        std::size_t max_support) {
  const std::size_t k_max = std::min(max_support, pool.size());
  std::size_t k = 1 + rng.below(k_max);
  if (kind == MonadKind::distribution && s.kind() == SemiringKind::natural) k = 1;
  std::vector<std::size_t> idx(pool.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  for (std::size_t i = 0; i < k; ++i) std::swap(idx[i], idx[i + rng.below(idx.size() - i)]);
  std::vector<std::pair<Rational, U>> raw;
  const Rational zero = s.zero();
  auto nonzero = [&] {
    for (int attempt = 0; attempt < 64; ++attempt) {
      Rational c = s.sample(rng);
      if (c != zero) return c;
    }
    return s.one();
  };
  if (kind == MonadKind::multiset) {
    for (std::size_t i = 0; i < k; ++i) raw.emplace_back(nonzero(), pool[idx[i]]);
    return FormalSum<U>::normalize(s, raw);
  }
  switch (s.kind()) {
    case SemiringKind::nonneg_rational: {
      std::vector<long> w(k);
      long total = 0;
      for (auto& x : w) total += (x = rng.between(1, 12));
      for (std::size_t i = 0; i < k; ++i) raw.emplace_back(Rational(w[i], total), pool[idx[i]]);
      return FormalSum<U>::normalize(s, raw);
    }
    case SemiringKind::boolean:
    case SemiringKind::natural:
      for (std::size_t i = 0; i < k; ++i) raw.emplace_back(s.one(), pool[idx[i]]);
      return FormalSum<U>::normalize(s, raw);
    default:
      for (int attempt = 0; attempt < 256; ++attempt) {
        raw.clear();
        for (std::size_t i = 0; i < k; ++i) raw.emplace_back(nonzero(), pool[idx[i]]);
        auto candidate = FormalSum<U>::normalize(s, raw);
        if (candidate.is_distribution()) return candidate;
      }
      return unit(s, pool[idx[0]]);
  }
}

/// Number of sums over a pool of size n with support <= k and coefficients
/// from m nonzero scalars, saturating at `cap + 1`.
std::size_t count_sums(std::size_t n, std::size_t k, std::size_t m, std::size_t cap);

/// Every sum over `pool` with support <= max_support and nonzero coefficients
/// drawn from `scalars`, in a fixed order. Distributions are filtered by mass.
template <class U>
std::vector<FormalSum<U>> enumerate_sums(const Semiring& s, const std::vector<U>& pool, MonadKind kind,
                                         std::size_t max_support) {
  std::vector<Rational> scalars;
  for (const Rational& c : s.elements()) {
    if (c != s.zero()) scalars.push_back(c);
  }
  std::vector<FormalSum<U>> out;
  std::vector<std::pair<Rational, U>> raw;
  // Depth-first over increasing pool indices so each support appears once.
  auto recurse = [&](auto&& self, std::size_t start) -> void {
    auto sum = FormalSum<U>::normalize(s, raw);
    if (kind == MonadKind::multiset || sum.is_distribution()) out.push_back(std::move(sum));
    if (raw.size() == max_support) return;
    for (std::size_t i = start; i < pool.size(); ++i) {
      for (const Rational& c : scalars) {
        raw.emplace_back(c, pool[i]);
        self(self, i + 1);
        raw.pop_back();
      }
    }
  };
  recurse(recurse, 0);
  return out;
}

/// Exhaustive enumeration when S is finite and the count fits the cap,
/// otherwise `trials` seeded samples. `exhaustive` reports which happened.
template <class U>
std::vector<FormalSum<U>> sums_for_check(const Semiring& s, const std::vector<U>& pool, MonadKind kind,
                                         std::size_t max_support, const LawCheckOptions& opt, Rng& rng,
                                         bool& exhaustive) {
  if (s.is_finite()) {
    const std::size_t m = s.elements().size() - 1;
    if (count_sums(pool.size(), max_support, m, opt.exhaustive_cap) <= opt.exhaustive_cap) {
      exhaustive = true;
      return enumerate_sums(s, pool, kind, max_support);
    }
  }
  exhaustive = false;
  std::vector<FormalSum<U>> out;
  out.reserve(opt.trials);
  while (out.size() < opt.trials) out.push_back(random_sum(s, pool, kind, rng, max_support));
  return out;
}

}  // namespace detail

/// Unit and associativity laws of T = M_S or D_S over `carrier`, using the
/// supplied multiplications at levels one (T^2 -> T) and two (T^3 -> T^2).
template <class Mult1, class Mult2>
Report check_monad_laws_with(const Semiring& s, const std::vector<std::string>& carrier, MonadKind kind,
                             const LawCheckOptions& opt, Mult1&& mult1, Mult2&& mult2) {
  using T1 = FormalSum<std::string>;
  using T2 = FormalSum<T1>;
  using T3 = FormalSum<T2>;
  Report report(to_string(kind) + "[" + s.name() + "](" + std::to_string(carrier.size()) + ")", "monad-laws");
  if (carrier.empty()) throw InvalidStructure("monad law check needs a nonempty carrier");
  Rng rng(opt.seed);
  bool ex1 = false, ex2 = false, ex3 = false;
  const auto level1 = detail::sums_for_check(s, carrier, kind, opt.max_support, opt, rng, ex1);
  const auto level2 = detail::sums_for_check(s, level1, kind, opt.nested_support, opt, rng, ex2);
  const auto level3 = detail::sums_for_check(s, level2, kind, opt.nested_support, opt, rng, ex3);

  auto record = [&](const char* name, std::size_t n, bool exhaustive, auto&& fails, auto&& witness) {
    const json detail{{"mode", exhaustive ? "exhaustive" : "sampled"}};
    if (const auto bad = kernels::first_failure(n, fails, opt.exec)) {
      report.fail(name, "LawViolation", witness(*bad), *bad + 1, detail);
    } else {
      report.pass(name, n, detail);
    }
  };

  record("unit-left", level1.size(), ex1,
         [&](std::size_t i) { return !(mult1(unit(s, level1[i])) == level1[i]); },
         [&](std::size_t i) {
           return json{{"law", "mu . eta_T = id"}, {"sum", render(level1[i])},
                       {"got", render(mult1(unit(s, level1[i])))}};
         });
  record("unit-right", level1.size(), ex1,
         [&](std::size_t i) {
           return !(mult1(map_sum([&](const std::string& x) { return unit(s, x); }, level1[i])) == level1[i]);
         },
         [&](std::size_t i) {
           return json{{"law", "mu . T(eta) = id"}, {"sum", render(level1[i])},
                       {"got", render(mult1(map_sum([&](const std::string& x) { return unit(s, x); }, level1[i])))}};
         });
  auto assoc_lhs = [&](const T3& t) { return mult1(mult2(t)); };
  auto assoc_rhs = [&](const T3& t) { return mult1(map_sum([&](const T2& inner) { return mult1(inner); }, t)); };
  record("associativity", level3.size(), ex1 && ex2 && ex3,
         [&](std::size_t i) { return !(assoc_lhs(level3[i]) == assoc_rhs(level3[i])); },
         [&](std::size_t i) {
           return json{{"law", "mu . mu_T = mu . T(mu)"}, {"sum", render(level3[i])},
                       {"lhs", render(assoc_lhs(level3[i]))}, {"rhs", render(assoc_rhs(level3[i]))}};
         });
  return report;
}

Report check_monad_laws(const Semiring& s, const std::vector<std::string>& carrier, MonadKind kind,
                        const LawCheckOptions& opt = {});

/// The two double-strength composites agree on every enumerated or sampled pair.
Report check_commutativity(const Semiring& s, const std::vector<std::string>& xs, const std::vector<std::string>& ys,
                           MonadKind kind, const LawCheckOptions& opt = {});

/// change_scalars(h, -) commutes with unit and multiplication on tested sums.
Report check_scalar_change(const SemiringHom& h, const std::vector<std::string>& carrier, MonadKind kind,
                           const LawCheckOptions& opt = {});

}  // namespace duality
