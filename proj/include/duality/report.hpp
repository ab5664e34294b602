#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "duality/error.hpp"

namespace duality {

enum class Outcome { pass, fail, skipped };

std::string to_string(Outcome o);

/// One named check inside a suite. A failing check always carries the error
/// kind it would raise and a witness that replays the failing case.
struct CheckResult {
  std::string name;
  Outcome outcome = Outcome::pass;
  std::size_t cases = 0;
  std::string error_kind;
  json witness;
  std::string reason;
  /// Optional extra context, e.g. whether cases were enumerated or sampled.
  json detail;
};

class Report {
 public:
  Report() = default;
  Report(std::string subject, std::string suite)
      : subject_(std::move(subject)), suite_(std::move(suite)) {}

  void pass(std::string name, std::size_t cases, json detail = json());
  void fail(std::string name, std::string error_kind, json witness, std::size_t cases = 0, json detail = json());
  void skip(std::string name, std::string reason);
  void add(CheckResult r) { checks_.push_back(std::move(r)); }
  /// Appends every check of `other`, prefixing names with `prefix` when non-empty.
  void absorb(const Report& other, const std::string& prefix = {});

  [[nodiscard]] bool ok() const;
  [[nodiscard]] std::size_t count(Outcome o) const;
  [[nodiscard]] const std::vector<CheckResult>& checks() const { return checks_; }
  [[nodiscard]] const CheckResult* find(const std::string& name) const;
  [[nodiscard]] const CheckResult* first_failure() const;
  [[nodiscard]] const std::string& subject() const { return subject_; }
  [[nodiscard]] const std::string& suite() const { return suite_; }

  /// Throws the error recorded by the first failing check, if any.
  void require() const;

  /// One JSON record per check, in insertion order.
  [[nodiscard]] std::vector<json> records() const;

 private:
  std::string subject_;
  std::string suite_;
  std::vector<CheckResult> checks_;
};

/// Raises the library error type named by `kind` (falls back to `Error`).
[[noreturn]] void raise(const std::string& kind, const std::string& message, const json& witness);

}  // namespace duality
