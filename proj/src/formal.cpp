#include "duality/formal.hpp"

#include <cctype>

namespace duality {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool valid_element(std::string_view e) {
  if (e.empty()) return false;
  return std::none_of(e.begin(), e.end(), [](char c) {
    return std::isspace(static_cast<unsigned char>(c)) || c == '+' || c == '*';
  });
}

}  // namespace

FormalSum<std::string> parse_formal_sum(const Semiring& s, std::string_view text) {
  const std::string_view body = trim(text);
  if (body == "0") return FormalSum<std::string>(s);
  std::vector<std::pair<Rational, std::string>> raw;
  std::size_t pos = 0;
  while (pos <= body.size()) {
    const std::size_t plus = body.find('+', pos);
    const std::string_view term = trim(body.substr(pos, plus == std::string_view::npos ? body.npos : plus - pos));
    if (term.empty()) throw ParseError("empty term in formal sum '" + std::string(text) + "'");
    const std::size_t star = term.find('*');
    Rational coeff = s.one();
    std::string_view elem = term;
    if (star != std::string_view::npos) {
      coeff = Rational::parse(trim(term.substr(0, star)));
      elem = trim(term.substr(star + 1));
    }
    if (!valid_element(elem)) throw ParseError("bad element '" + std::string(elem) + "' in formal sum");
    raw.emplace_back(coeff, std::string(elem));
    if (plus == std::string_view::npos) break;
    pos = plus + 1;
  }
  return FormalSum<std::string>::normalize(s, raw);
}

std::string to_string(MonadKind k) { return k == MonadKind::multiset ? "M" : "D"; }

namespace detail {

std::size_t count_sums(std::size_t n, std::size_t k, std::size_t m, std::size_t cap) {
  // sum_{j<=k} C(n,j) m^j
  std::size_t total = 0;
  long double binom = 1, power = 1;
  for (std::size_t j = 0; j <= k && j <= n; ++j) {
    if (j > 0) {
      binom = binom * static_cast<long double>(n - j + 1) / static_cast<long double>(j);
      power *= static_cast<long double>(m);
    }
    const long double term = binom * power;
    if (term > static_cast<long double>(cap) || total + static_cast<std::size_t>(term) > cap) return cap + 1;
    total += static_cast<std::size_t>(term);
  }
  return total;
}

}  // namespace detail

Report check_monad_laws(const Semiring& s, const std::vector<std::string>& carrier, MonadKind kind,
                        const LawCheckOptions& opt) {
  return check_monad_laws_with(
      s, carrier, kind, opt, [](const FormalSum<FormalSum<std::string>>& t) { return mult(t); },
      [](const FormalSum<FormalSum<FormalSum<std::string>>>& t) { return mult(t); });
}

Report check_commutativity(const Semiring& s, const std::vector<std::string>& xs, const std::vector<std::string>& ys,
                           MonadKind kind, const LawCheckOptions& opt) {
  Report report(to_string(kind) + "[" + s.name() + "]", "commutativity");
  if (xs.empty() || ys.empty()) throw InvalidStructure("commutativity check needs nonempty carriers");
  Rng rng(opt.seed);
  bool ex_x = false, ex_y = false;
  const auto us = detail::sums_for_check(s, xs, kind, opt.max_support, opt, rng, ex_x);
  const auto vs = detail::sums_for_check(s, ys, kind, opt.max_support, opt, rng, ex_y);
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  bool exhaustive = ex_x && ex_y && us.size() * vs.size() <= opt.exhaustive_cap;
  if (exhaustive) {
    for (std::size_t i = 0; i < us.size(); ++i)
      for (std::size_t j = 0; j < vs.size(); ++j) pairs.emplace_back(i, j);
  } else {
    for (std::size_t t = 0; t < opt.trials; ++t) pairs.emplace_back(rng.below(us.size()), rng.below(vs.size()));
  }
  auto fails = [&](std::size_t k) {
    const auto& [i, j] = pairs[k];
    return !(double_strength_left(us[i], vs[j]) == double_strength_right(us[i], vs[j]));
  };
  const json detail{{"mode", exhaustive ? "exhaustive" : "sampled"}};
  if (const auto bad = kernels::first_failure(pairs.size(), fails, opt.exec)) {
    const auto& [i, j] = pairs[*bad];
    report.fail("double-strength", "LawViolation",
                json{{"u", render(us[i])}, {"v", render(vs[j])},
                     {"left", render(double_strength_left(us[i], vs[j]))},
                     {"right", render(double_strength_right(us[i], vs[j]))}},
                *bad + 1, detail);
  } else {
    report.pass("double-strength", pairs.size(), detail);
  }
  return report;
}

Report check_scalar_change(const SemiringHom& h, const std::vector<std::string>& carrier, MonadKind kind,
                           const LawCheckOptions& opt) {
  Report report(to_string(kind) + "[" + h.from.name() + "->" + h.to.name() + "]", "scalar-change");
  Rng rng(opt.seed);
  bool ex1 = false, ex2 = false;
  const auto level1 = detail::sums_for_check(h.from, carrier, kind, opt.max_support, opt, rng, ex1);
  const auto level2 = detail::sums_for_check(h.from, level1, kind, opt.nested_support, opt, rng, ex2);

  auto units_fail = [&](std::size_t i) { return !(change_scalars(h, unit(h.from, carrier[i])) == unit(h.to, carrier[i])); };
  if (const auto bad = kernels::first_failure(carrier.size(), units_fail, opt.exec)) {
    report.fail("preserves-unit", "NotHomomorphism", json{{"element", carrier[*bad]}}, *bad + 1);
  } else {
    report.pass("preserves-unit", carrier.size());
  }

  // sigma . mu = mu . sigma_T . T(sigma) on sums of sums
  auto lhs = [&](const FormalSum<FormalSum<std::string>>& t) { return change_scalars(h, mult(t)); };
  auto rhs = [&](const FormalSum<FormalSum<std::string>>& t) {
    return mult(change_scalars(h, map_sum([&](const FormalSum<std::string>& inner) { return change_scalars(h, inner); }, t)));
  };
  auto mult_fail = [&](std::size_t i) { return !(lhs(level2[i]) == rhs(level2[i])); };
  const json detail{{"mode", ex1 && ex2 ? "exhaustive" : "sampled"}};
  if (const auto bad = kernels::first_failure(level2.size(), mult_fail, opt.exec)) {
    report.fail("preserves-mult", "NotHomomorphism",
                json{{"sum", render(level2[*bad])}, {"lhs", render(lhs(level2[*bad]))}, {"rhs", render(rhs(level2[*bad]))}},
                *bad + 1, detail);
  } else {
    report.pass("preserves-mult", level2.size(), detail);
  }
  return report;
}

}  // namespace duality
