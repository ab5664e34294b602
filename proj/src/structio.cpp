#include "duality/structio.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace duality {

namespace {

const std::vector<std::string> kKinds = {"semiring",       "semilattice",     "simplex",  "polytope",
                                         "preframe",       "effect_algebra",  "subspace_family", "semimodule"};

std::string child(const std::string& path, const std::string& key) { return path + "/" + key; }
std::string child(const std::string& path, std::size_t i) { return path + "/" + std::to_string(i); }

const json& field(const json& obj, const std::string& path, const std::string& key) {
  if (!obj.is_object()) throw SchemaError(path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw SchemaError(child(path, key), "missing required field");
  return *it;
}

const json* optional_field(const json& obj, const std::string& key) {
  auto it = obj.find(key);
  return it == obj.end() ? nullptr : &*it;
}

std::string as_string(const json& j, const std::string& path) {
  if (!j.is_string()) throw SchemaError(path, "expected a string");
  return j.get<std::string>();
}

std::size_t as_count(const json& j, const std::string& path, std::size_t lo, std::size_t hi) {
  if (!j.is_number_integer() || j.get<long long>() < static_cast<long long>(lo) ||
      j.get<long long>() > static_cast<long long>(hi)) {
    throw SchemaError(path, "expected an integer in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }
  return j.get<std::size_t>();
}

const json& as_array(const json& j, const std::string& path) {
  if (!j.is_array()) throw SchemaError(path, "expected an array");
  return j;
}

Rational as_rational(const json& j, const std::string& path) {
  if (!j.is_string()) throw SchemaError(path, "scalars are written as strings such as \"3/5\"");
  try {
    return Rational::parse(j.get<std::string>());
  } catch (const ParseError& e) {
    throw SchemaError(path, e.what());
  }
}

linalg::Vec as_vector(const json& j, const std::string& path, std::size_t dim) {
  as_array(j, path);
  if (j.size() != dim) throw SchemaError(path, "expected " + std::to_string(dim) + " coordinates");
  linalg::Vec v;
  for (std::size_t i = 0; i < j.size(); ++i) v.push_back(as_rational(j[i], child(path, i)));
  return v;
}

json vector_json(const linalg::Vec& v) {
  json out = json::array();
  for (const Rational& q : v) out.push_back(q.str());
  return out;
}

/// Distinct names; `forbidden` characters would break the sum syntax.
std::vector<std::string> name_list(const json& j, const std::string& path, const std::string& forbidden = "") {
  as_array(j, path);
  if (j.empty()) throw SchemaError(path, "expected at least one element");
  std::vector<std::string> out;
  std::set<std::string> seen;
  for (std::size_t i = 0; i < j.size(); ++i) {
    std::string s = as_string(j[i], child(path, i));
    if (s.empty()) throw SchemaError(child(path, i), "empty element name");
    if (s.find_first_of(forbidden) != std::string::npos) {
      throw SchemaError(child(path, i), "element name '" + s + "' contains one of \"" + forbidden + "\"");
    }
    if (!seen.insert(s).second) throw SchemaError(child(path, i), "duplicate element '" + s + "'");
    out.push_back(std::move(s));
  }
  return out;
}

std::size_t lookup(const std::map<std::string, std::size_t>& index, const std::string& name,
                   const std::string& path) {
  auto it = index.find(name);
  if (it == index.end()) throw SchemaError(path, "unknown element '" + name + "'");
  return it->second;
}

std::map<std::string, std::size_t> index_map(const std::vector<std::string>& names) {
  std::map<std::string, std::size_t> m;
  for (std::size_t i = 0; i < names.size(); ++i) m[names[i]] = i;
  return m;
}

/// Rows [x, y, x op y]; symmetric, diagonal defaults to x, every pair required.
std::vector<std::vector<std::size_t>> operation_table(const json& rows, const std::string& path,
                                                      const std::vector<std::string>& elements,
                                                      const std::string& op) {
  const auto index = index_map(elements);
  const std::size_t n = elements.size();
  std::vector<std::vector<std::optional<std::size_t>>> t(n, std::vector<std::optional<std::size_t>>(n));
  as_array(rows, path);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const std::string p = child(path, r);
    as_array(rows[r], p);
    if (rows[r].size() != 3) throw SchemaError(p, "expected a row [x, y, z]");
    const std::size_t x = lookup(index, as_string(rows[r][0], child(p, 0)), child(p, 0));
    const std::size_t y = lookup(index, as_string(rows[r][1], child(p, 1)), child(p, 1));
    const std::size_t z = lookup(index, as_string(rows[r][2], child(p, 2)), child(p, 2));
    if (t[x][y] && *t[x][y] != z) throw SchemaError(p, "conflicting " + op + " of " + elements[x] + " and " + elements[y]);
    t[x][y] = t[y][x] = z;
  }
  std::vector<std::vector<std::size_t>> out(n, std::vector<std::size_t>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j && !t[i][j]) t[i][j] = i;
      if (!t[i][j]) throw SchemaError(path, "missing " + op + " of " + elements[i] + " and " + elements[j]);
      out[i][j] = *t[i][j];
    }
  }
  return out;
}

json operation_rows(const std::vector<std::string>& elements, const std::function<std::size_t(std::size_t, std::size_t)>& op) {
  json rows = json::array();
  for (std::size_t i = 0; i < elements.size(); ++i) {
    for (std::size_t j = i; j < elements.size(); ++j) {
      const std::size_t z = op(i, j);
      if (i == j && z == i) continue;
      rows.push_back({elements[i], elements[j], elements[z]});
    }
  }
  return rows;
}

ConvexAlgebra parse_convex(const std::string& kind, const std::string& name, const json& doc) {
  if (kind == "semilattice") {
    auto elements = name_list(field(doc, "", "elements"), "/elements");
    auto meet = operation_table(field(doc, "", "meets"), "/meets", elements, "meet");
    return ConvexAlgebra::semilattice_unchecked(name, std::move(elements), std::move(meet));
  }
  if (kind == "simplex") return ConvexAlgebra::simplex(name, name_list(field(doc, "", "vertices"), "/vertices"));
  const std::size_t dim = as_count(field(doc, "", "dimension"), "/dimension", 1, 16);
  const json& gens = as_array(field(doc, "", "generators"), "/generators");
  if (gens.empty()) throw SchemaError("/generators", "expected at least one generator");
  std::vector<linalg::Vec> points;
  std::set<linalg::Vec> seen;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    linalg::Vec v = as_vector(gens[i], child("/generators", i), dim);
    if (!seen.insert(v).second) throw SchemaError(child("/generators", i), "duplicate generator");
    points.push_back(std::move(v));
  }
  return ConvexAlgebra::polytope(name, dim, std::move(points));
}

json convex_payload(const ConvexAlgebra& x) {
  switch (x.family()) {
    case ConvexAlgebra::Family::semilattice:
      return {{"elements", x.elements()},
              {"meets", operation_rows(x.elements(), [&](std::size_t i, std::size_t j) { return x.meet(i, j); })}};
    case ConvexAlgebra::Family::simplex:
      return {{"vertices", x.labels()}};
    case ConvexAlgebra::Family::polytope: {
      json gens = json::array();
      for (const auto& g : x.generator_points()) gens.push_back(vector_json(g));
      return {{"dimension", x.dimension()}, {"generators", gens}};
    }
  }
  return {};
}

FinitePreframe parse_preframe(const std::string& name, const json& doc) {
  auto elements = name_list(field(doc, "", "elements"), "/elements");
  const auto index = index_map(elements);
  const json& order = as_array(field(doc, "", "order"), "/order");
  std::vector<std::pair<std::string, std::string>> pairs;
  for (std::size_t r = 0; r < order.size(); ++r) {
    const std::string p = child("/order", r);
    as_array(order[r], p);
    if (order[r].size() != 2) throw SchemaError(p, "expected a pair [lower, upper]");
    const std::string a = as_string(order[r][0], child(p, 0)), b = as_string(order[r][1], child(p, 1));
    lookup(index, a, child(p, 0));
    lookup(index, b, child(p, 1));
    pairs.emplace_back(a, b);
  }
  return FinitePreframe::from_order(name, std::move(elements), pairs);
}

json preframe_payload(const FinitePreframe& l) {
  json order = json::array();
  for (const auto& [a, b] : l.covers()) order.push_back({a, b});
  return {{"elements", l.elements()}, {"order", order}};
}

EffectAlgebra effect_constructor(const json& c, const std::string& path);

EffectAlgebra effect_from_json(const json& doc, const std::string& path) {
  if (const json* c = optional_field(doc, "constructor")) return effect_constructor(*c, child(path, "constructor"));
  const std::string name = as_string(field(doc, path, "name"), child(path, "name"));
  auto elements = name_list(field(doc, path, "elements"), child(path, "elements"), "+=");
  const auto index = index_map(elements);
  const std::string one = as_string(field(doc, path, "one"), child(path, "one"));
  lookup(index, one, child(path, "one"));
  std::string zero = "0";
  if (const json* z = optional_field(doc, "zero")) zero = as_string(*z, child(path, "zero"));
  lookup(index, zero, child(path, "zero"));
  if (elements.size() > 1 && zero == one) throw SchemaError(child(path, "one"), "zero and one coincide");

  std::map<std::pair<std::size_t, std::size_t>, std::size_t> table;
  auto enter = [&](std::size_t x, std::size_t y, std::size_t z, const std::string& p) {
    auto key = std::minmax(x, y);
    auto [it, fresh] = table.emplace(key, z);
    if (!fresh && it->second != z) {
      throw SchemaError(p, "conflicting sums " + elements[x] + "+" + elements[y] + " = " + elements[it->second] +
                               " and " + elements[z]);
    }
  };
  const std::size_t z0 = index.at(zero);
  for (std::size_t i = 0; i < elements.size(); ++i) enter(z0, i, i, child(path, "zero"));
  const std::string sp = child(path, "sums");
  const json& sums = as_array(field(doc, path, "sums"), sp);
  for (std::size_t r = 0; r < sums.size(); ++r) {
    const std::string p = child(sp, r);
    const std::string row = as_string(sums[r], p);
    const auto plus = row.find('+'), eq = row.find('=');
    if (plus == std::string::npos || eq == std::string::npos || eq < plus) {
      throw SchemaError(p, "expected a sum of the form \"x+y=z\"");
    }
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(' '), e = s.find_last_not_of(' ');
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    const std::size_t x = lookup(index, trim(row.substr(0, plus)), p);
    const std::size_t y = lookup(index, trim(row.substr(plus + 1, eq - plus - 1)), p);
    const std::size_t z = lookup(index, trim(row.substr(eq + 1)), p);
    enter(x, y, z, p);
  }
  std::vector<SumEntry> entries;
  for (const auto& [key, z] : table) entries.push_back({elements[key.first], elements[key.second], elements[z]});
  return EffectAlgebra::table(name, elements, entries, zero, one);
}

EffectAlgebra effect_constructor(const json& c, const std::string& path) {
  const std::string op = as_string(field(c, path, "op"), child(path, "op"));
  if (op == "two") return EffectAlgebra::two();
  if (op == "trivial") return EffectAlgebra::trivial();
  if (op == "mo2") return EffectAlgebra::mo2();
  if (op == "interval_nat") return EffectAlgebra::interval_nat(as_count(field(c, path, "m"), child(path, "m"), 1, 63));
  if (op == "powerset") return EffectAlgebra::powerset(as_count(field(c, path, "n"), child(path, "n"), 0, 6));
  if (op == "product" || op == "coproduct") {
    const json& args = as_array(field(c, path, "args"), child(path, "args"));
    if (args.size() != 2) throw SchemaError(child(path, "args"), "expected two operands");
    const auto e = effect_from_json(args[0], child(child(path, "args"), 0));
    const auto d = effect_from_json(args[1], child(child(path, "args"), 1));
    const auto out = op == "product" ? EffectAlgebra::product(e, d) : EffectAlgebra::coproduct(e, d);
    if (out.size() > 64) throw SchemaError(path, "constructed algebra exceeds 64 elements");
    return out;
  }
  throw SchemaError(child(path, "op"), "unknown constructor '" + op + "'");
}

json effect_payload(const EffectAlgebra& e) {
  json sums = json::array();
  for (const SumEntry& s : e.sums()) {
    if (s.x == e.elements()[e.zero()] || s.y == e.elements()[e.zero()]) continue;
    sums.push_back(s.x + "+" + s.y + "=" + s.z);
  }
  return {{"elements", e.elements()},
          {"zero", e.elements()[e.zero()]},
          {"one", e.elements()[e.one()]},
          {"sums", sums}};
}

SubspaceFamilyDoc parse_subspaces(const json& doc) {
  const std::size_t n = as_count(field(doc, "", "ambient"), "/ambient", 1, 8);
  std::size_t cap = 64;
  if (const json* c = optional_field(doc, "cap")) cap = as_count(*c, "/cap", 2, 4096);
  const json& gens = as_array(field(doc, "", "generators"), "/generators");
  std::vector<RationalSubspace> generators;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    const std::string p = child("/generators", i);
    as_array(gens[i], p);
    linalg::Mat vecs;
    for (std::size_t k = 0; k < gens[i].size(); ++k) vecs.push_back(as_vector(gens[i][k], child(p, k), n));
    generators.push_back(RationalSubspace::span(n, vecs));
  }
  auto family = ksub_effect_algebra(n, generators, cap);
  return {std::move(generators), cap, std::move(family)};
}

json subspace_payload(const SubspaceFamilyDoc& s) {
  json gens = json::array();
  for (const auto& g : s.generators) {
    json basis = json::array();
    for (const auto& v : g.basis()) basis.push_back(vector_json(v));
    gens.push_back(basis);
  }
  json out{{"ambient", s.family.ambient}, {"generators", gens}};
  if (s.cap != 64) out["cap"] = s.cap;
  return out;
}

std::vector<std::vector<unsigned>> semiring_table(const json& rows, const std::string& path, std::size_t n) {
  as_array(rows, path);
  if (rows.size() != n) throw SchemaError(path, "expected " + std::to_string(n) + " rows");
  std::vector<std::vector<unsigned>> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    as_array(rows[i], child(path, i));
    if (rows[i].size() != n) throw SchemaError(child(path, i), "expected " + std::to_string(n) + " entries");
    for (std::size_t j = 0; j < n; ++j) out[i].push_back(static_cast<unsigned>(as_count(rows[i][j], child(child(path, i), j), 0, n - 1)));
  }
  return out;
}

Semiring parse_semiring(const std::string& name, const json& doc) {
  const std::string builtin = as_string(field(doc, "", "builtin"), "/builtin");
  if (builtin == "boolean") return Semiring::boolean();
  if (builtin == "natural") return Semiring::natural();
  if (builtin == "nonneg_rationals") return Semiring::nonneg_rationals();
  if (builtin == "integers_mod") {
    return Semiring::integers_mod(static_cast<unsigned>(as_count(field(doc, "", "modulus"), "/modulus", 1, 1U << 20)));
  }
  if (builtin == "table") {
    const std::size_t n = as_count(field(doc, "", "size"), "/size", 1, 64);
    auto add = semiring_table(field(doc, "", "add"), "/add", n);
    auto mul = semiring_table(field(doc, "", "mul"), "/mul", n);
    const auto zero = static_cast<unsigned>(as_count(field(doc, "", "zero"), "/zero", 0, n - 1));
    const auto one = static_cast<unsigned>(as_count(field(doc, "", "one"), "/one", 0, n - 1));
    return Semiring::table(name, std::move(add), std::move(mul), zero, one);
  }
  throw SchemaError("/builtin", "unknown semiring '" + builtin + "'");
}

json semiring_payload(const Semiring& s) {
  switch (s.kind()) {
    case SemiringKind::boolean: return {{"builtin", "boolean"}};
    case SemiringKind::natural: return {{"builtin", "natural"}};
    case SemiringKind::nonneg_rational: return {{"builtin", "nonneg_rationals"}};
    case SemiringKind::integers_mod: return {{"builtin", "integers_mod"}, {"modulus", s.elements().size()}};
    case SemiringKind::table: break;
  }
  const auto el = s.elements();
  json add = json::array(), mul = json::array();
  for (const Rational& a : el) {
    json ra = json::array(), rm = json::array();
    for (const Rational& b : el) {
      ra.push_back(std::stoul(s.add(a, b).str()));
      rm.push_back(std::stoul(s.mul(a, b).str()));
    }
    add.push_back(ra);
    mul.push_back(rm);
  }
  return {{"builtin", "table"}, {"size", el.size()}, {"add", add}, {"mul", mul},
          {"zero", std::stoul(s.zero().str())}, {"one", std::stoul(s.one().str())}};
}

Semimodule parse_semimodule(const std::string& name, const json& doc) {
  const std::string variant = as_string(field(doc, "", "variant"), "/variant");
  if (variant == "join_semilattice") {
    auto elements = name_list(field(doc, "", "elements"), "/elements");
    auto join = operation_table(field(doc, "", "joins"), "/joins", elements, "join");
    return Semimodule::join_semilattice(name, std::move(elements), std::move(join));
  }
  if (variant == "nonneg_orthant") return Semimodule::nonneg_orthant(as_count(field(doc, "", "dimension"), "/dimension", 1, 16));
  if (variant == "free_multiset") return Semimodule::free_multiset(name_list(field(doc, "", "labels"), "/labels"));
  if (variant == "free_on_convex") {
    const json& base = field(doc, "", "base");
    std::optional<StructureDoc> inner;
    try {
      inner = parse_document(base);
    } catch (const SchemaError& e) {
      throw SchemaError("/base" + e.path(), e.witness().at("message").get<std::string>());
    }
    if (!inner->convex()) throw SchemaError("/base/kind", "expected a convex algebra");
    return Semimodule::free_on_convex(*inner->convex());
  }
  throw SchemaError("/variant", "unknown semimodule variant '" + variant + "'");
}

json semimodule_payload(const Semimodule& m) {
  switch (m.variant()) {
    case Semimodule::Variant::join_semilattice:
      return {{"variant", "join_semilattice"},
              {"elements", m.labels()},
              {"joins", operation_rows(m.labels(), [&](std::size_t i, std::size_t j) { return m.join(i, j); })}};
    case Semimodule::Variant::nonneg_orthant:
      return {{"variant", "nonneg_orthant"}, {"dimension", m.dimension()}};
    case Semimodule::Variant::free_multiset:
      return {{"variant", "free_multiset"}, {"labels", m.labels()}};
    case Semimodule::Variant::free_on_convex:
      return {{"variant", "free_on_convex"}, {"base", serialize(make_document(m.base()))}};
  }
  return {};
}

}  // namespace

const EffectAlgebra* StructureDoc::effect() const {
  if (const auto* e = std::get_if<EffectAlgebraDoc>(&value)) return &e->algebra;
  if (const auto* s = std::get_if<SubspaceFamilyDoc>(&value)) return &s->family.algebra;
  return nullptr;
}

StructureDoc parse_document(const json& doc) {
  if (!doc.is_object()) throw SchemaError("", "expected a JSON object");
  const int version = static_cast<int>(as_count(field(doc, "", "schema"), "/schema", 0, 1000));
  if (version != kSchemaVersion) {
    throw SchemaError("/schema", "unsupported schema version " + std::to_string(version));
  }
  const std::string kind = as_string(field(doc, "", "kind"), "/kind");
  if (std::find(kKinds.begin(), kKinds.end(), kind) == kKinds.end()) {
    throw SchemaError("/kind", "unknown kind '" + kind + "'");
  }
  const std::string name = as_string(field(doc, "", "name"), "/name");
  if (name.empty()) throw SchemaError("/name", "empty name");

  StructureDoc out{kind, name, version, Semiring::boolean()};
  if (kind == "semiring") {
    out.value = parse_semiring(name, doc);
  } else if (kind == "semilattice" || kind == "simplex" || kind == "polytope") {
    out.value = parse_convex(kind, name, doc);
  } else if (kind == "preframe") {
    out.value = parse_preframe(name, doc);
  } else if (kind == "effect_algebra") {
    EffectAlgebraDoc e{effect_from_json(doc, ""), std::nullopt};
    if (const json* c = optional_field(doc, "constructor")) {
      e.constructor = *c;
      e.algebra = e.algebra.renamed(name);
    }
    out.value = std::move(e);
  } else if (kind == "subspace_family") {
    out.value = parse_subspaces(doc);
  } else {
    out.value = parse_semimodule(name, doc);
  }
  return out;
}

StructureDoc parse_document(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw SchemaError("", std::string("invalid JSON: ") + e.what());
  }
  return parse_document(doc);
}

StructureDoc load_document(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("", "cannot read " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_document(std::string_view(buf.str()));
}

json serialize(const StructureDoc& doc) {
  json payload = std::visit(
      [](const auto& v) -> json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Semiring>) return semiring_payload(v);
        if constexpr (std::is_same_v<T, ConvexAlgebra>) return convex_payload(v);
        if constexpr (std::is_same_v<T, FinitePreframe>) return preframe_payload(v);
        if constexpr (std::is_same_v<T, EffectAlgebraDoc>) {
          return v.constructor ? json{{"constructor", *v.constructor}} : effect_payload(v.algebra);
        }
        if constexpr (std::is_same_v<T, SubspaceFamilyDoc>) return subspace_payload(v);
        if constexpr (std::is_same_v<T, Semimodule>) return semimodule_payload(v);
      },
      doc.value);
  json out{{"schema", doc.schema}, {"kind", doc.kind}, {"name", doc.name}};
  for (auto& [k, v] : payload.items()) out[k] = v;
  return out;
}

StructureDoc make_document(const ConvexAlgebra& x) { return {x.family_name(), x.name(), kSchemaVersion, x}; }
StructureDoc make_document(const FinitePreframe& l) { return {"preframe", l.name(), kSchemaVersion, l}; }
StructureDoc make_document(const EffectAlgebra& e) {
  return {"effect_algebra", e.name(), kSchemaVersion, EffectAlgebraDoc{e, std::nullopt}};
}
StructureDoc make_document(const Semiring& s) { return {"semiring", s.name(), kSchemaVersion, s}; }
StructureDoc make_document(const Semimodule& m) { return {"semimodule", m.name(), kSchemaVersion, m}; }

linalg::Vec parse_vector(std::string_view text) {
  std::string s(text);
  for (char& c : s) {
    if (c == '[' || c == ']' || c == '(' || c == ')') c = ' ';
  }
  linalg::Vec out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) out.push_back(Rational::parse(item));
  if (out.empty()) throw ParseError("empty vector literal", json{{"literal", std::string(text)}});
  return out;
}

}  // namespace duality
