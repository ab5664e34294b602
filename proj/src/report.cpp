#include "duality/report.hpp"

#include <algorithm>

namespace duality {

std::string to_string(Outcome o) {
  switch (o) {
    case Outcome::pass: return "pass";
    case Outcome::fail: return "fail";
    case Outcome::skipped: return "skipped";
  }
  return "unknown";
}

void Report::pass(std::string name, std::size_t cases, json detail) {
  checks_.push_back({std::move(name), Outcome::pass, cases, {}, json(), {}, std::move(detail)});
}

void Report::fail(std::string name, std::string error_kind, json witness, std::size_t cases, json detail) {
  checks_.push_back(
      {std::move(name), Outcome::fail, cases, std::move(error_kind), std::move(witness), {}, std::move(detail)});
}

void Report::skip(std::string name, std::string reason) {
  checks_.push_back({std::move(name), Outcome::skipped, 0, {}, json(), std::move(reason), json()});
}

void Report::absorb(const Report& other, const std::string& prefix) {
  for (CheckResult r : other.checks_) {
    if (!prefix.empty()) r.name = prefix + "/" + r.name;
    checks_.push_back(std::move(r));
  }
}

bool Report::ok() const { return count(Outcome::fail) == 0; }

std::size_t Report::count(Outcome o) const {
  return static_cast<std::size_t>(
      std::count_if(checks_.begin(), checks_.end(), [o](const CheckResult& r) { return r.outcome == o; }));
}

const CheckResult* Report::find(const std::string& name) const {
  auto it = std::find_if(checks_.begin(), checks_.end(), [&](const CheckResult& r) { return r.name == name; });
  return it == checks_.end() ? nullptr : &*it;
}

const CheckResult* Report::first_failure() const {
  auto it = std::find_if(checks_.begin(), checks_.end(),
                         [](const CheckResult& r) { return r.outcome == Outcome::fail; });
  return it == checks_.end() ? nullptr : &*it;
}

void Report::require() const {
  if (const CheckResult* f = first_failure()) {
    raise(f->error_kind, suite_ + ": check '" + f->name + "' failed on " + subject_, f->witness);
  }
}

std::vector<json> Report::records() const {
  std::vector<json> out;
  out.reserve(checks_.size());
  for (const CheckResult& r : checks_) {
    json rec{{"type", "check"}, {"subject", subject_}, {"suite", suite_}, {"check", r.name},
             {"outcome", to_string(r.outcome)}, {"cases", r.cases}};
    if (r.outcome == Outcome::fail) {
      rec["error"] = r.error_kind;
      rec["witness"] = r.witness;
    }
    if (r.outcome == Outcome::skipped) rec["reason"] = r.reason;
    if (!r.detail.is_null()) rec["detail"] = r.detail;
    out.push_back(std::move(rec));
  }
  return out;
}

void raise(const std::string& kind, const std::string& message, const json& witness) {
  if (kind == "LawViolation") throw LawViolation(message, witness);
  if (kind == "AxiomViolation") throw AxiomViolation(message, witness);
  if (kind == "NotEligible") throw NotEligible(message, witness);
  if (kind == "NotAffine") throw NotAffine(message, witness);
  if (kind == "NotHomomorphism") throw NotHomomorphism(message, witness);
  if (kind == "NotPreframeMap") throw NotPreframeMap(message, witness);
  if (kind == "HomViolation") throw HomViolation(message, witness);
  if (kind == "ForeignElement") throw ForeignElement(message, witness);
  if (kind == "InvalidStructure") throw InvalidStructure(message, witness);
  throw Error(kind.empty() ? "Error" : kind, message, witness);
}

}  // namespace duality
