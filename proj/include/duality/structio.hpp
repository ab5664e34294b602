#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "duality/convexalg.hpp"
#include "duality/effectalg.hpp"
#include "duality/error.hpp"
#include "duality/hilbert.hpp"
#include "duality/preframes.hpp"
#include "duality/semimod.hpp"
#include "duality/semiring.hpp"

namespace duality {

inline constexpr int kSchemaVersion = 1;

/// A subspace family keeps the generators it was closed from.
struct SubspaceFamilyDoc {
  std::vector<RationalSubspace> generators;
  std::size_t cap = 64;
  SubspaceFamily family;
};

/// An effect algebra plus the constructor it came from, when it came from one.
struct EffectAlgebraDoc {
  EffectAlgebra algebra;
  std::optional<json> constructor;
};

struct StructureDoc {
  std::string kind;
  std::string name;
  int schema = kSchemaVersion;
  std::variant<Semiring, ConvexAlgebra, FinitePreframe, EffectAlgebraDoc, SubspaceFamilyDoc, Semimodule> value;

  [[nodiscard]] const ConvexAlgebra* convex() const { return std::get_if<ConvexAlgebra>(&value); }
  [[nodiscard]] const FinitePreframe* preframe() const { return std::get_if<FinitePreframe>(&value); }
  [[nodiscard]] const EffectAlgebra* effect() const;
  [[nodiscard]] const SubspaceFamilyDoc* subspaces() const { return std::get_if<SubspaceFamilyDoc>(&value); }
  [[nodiscard]] const Semiring* semiring() const { return std::get_if<Semiring>(&value); }
  [[nodiscard]] const Semimodule* semimodule() const { return std::get_if<Semimodule>(&value); }
};

/// Validates `text` against the schema of its kind and builds the structure.
/// Throws SchemaError(path, message) at the first offending node.
StructureDoc parse_document(std::string_view text);
StructureDoc parse_document(const json& doc);
StructureDoc load_document(const std::string& path);

json serialize(const StructureDoc& doc);

/// Document builders for structures made in code.
StructureDoc make_document(const ConvexAlgebra& x);
StructureDoc make_document(const FinitePreframe& l);
StructureDoc make_document(const EffectAlgebra& e);
StructureDoc make_document(const Semiring& s);
StructureDoc make_document(const Semimodule& m);

/// "3/5,4/5" or "[3/5, 4/5]".
linalg::Vec parse_vector(std::string_view text);

}  // namespace duality
