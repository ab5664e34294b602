#pragma once

#include <stdexcept>
#include <string>

#include <json.hpp>

namespace duality {

using json = nlohmann::json;

/// Base of every error the library raises. `kind()` names the error the way
/// reports and the CLI print it; `witness()` is a machine-readable payload.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& message, json witness = json::object())
      : std::runtime_error(message), kind_(std::move(kind)), witness_(std::move(witness)) {}

  [[nodiscard]] const std::string& kind() const { return kind_; }
  [[nodiscard]] const json& witness() const { return witness_; }

 private:
  std::string kind_;
  json witness_;
};

#define DUALITY_DEFINE_ERROR(Name)                                               \
  class Name : public Error {                                                    \
   public:                                                                       \
    explicit Name(const std::string& message, json witness = json::object())     \
        : Error(#Name, message, std::move(witness)) {}                           \
  }

DUALITY_DEFINE_ERROR(ParseError);
DUALITY_DEFINE_ERROR(LawViolation);
DUALITY_DEFINE_ERROR(AxiomViolation);
DUALITY_DEFINE_ERROR(NotEligible);
DUALITY_DEFINE_ERROR(MixedCarrier);
DUALITY_DEFINE_ERROR(ForeignElement);
DUALITY_DEFINE_ERROR(ScalarOutOfRange);
DUALITY_DEFINE_ERROR(NotAffine);
DUALITY_DEFINE_ERROR(NotHomomorphism);
DUALITY_DEFINE_ERROR(NotPreframeMap);
DUALITY_DEFINE_ERROR(TooLarge);
DUALITY_DEFINE_ERROR(InvalidStructure);
DUALITY_DEFINE_ERROR(DimensionMismatch);
DUALITY_DEFINE_ERROR(ClosureTooLarge);
DUALITY_DEFINE_ERROR(DependentGeneratorsUnsatisfiable);
DUALITY_DEFINE_ERROR(HomViolation);

#undef DUALITY_DEFINE_ERROR

/// Schema errors carry the JSON-pointer-ish path of the offending node.
class SchemaError : public Error {
 public:
  SchemaError(const std::string& path, const std::string& message)
      : Error("SchemaError", (path.empty() ? "" : path + ": ") + message, json{{"path", path}, {"message", message}}),
        path_(path) {}
  [[nodiscard]] const std::string& path() const { return path_; }

 private:
  std::string path_;
};

}  // namespace duality
