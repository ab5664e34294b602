// duality: runs the checkers on structure files and prints JSON lines.

#include <chrono>
#include <functional>
#include <iostream>

#include <CLI11.hpp>

#include "duality/faces.hpp"
#include "duality/hilbert.hpp"
#include "duality/preframes.hpp"
#include "duality/semimod.hpp"
#include "duality/states.hpp"
#include "duality/structio.hpp"

using namespace duality;

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Session {
  std::uint64_t seed = kDefaultSeed;
  Exec exec = Exec::parallel;
  bool timing = false;
  std::string command;
  std::size_t checks = 0, failed = 0, skipped = 0;

  static void emit(const json& rec) { std::cout << rec.dump() << '\n'; }

  void data(const std::string& subject, const std::string& what, json value) const {
    emit({{"type", "data"}, {"subject", subject}, {"what", what}, {"value", std::move(value)}});
  }

  void run(const std::function<Report()>& suite) {
    const auto t0 = std::chrono::steady_clock::now();
    const Report r = suite();
    for (const json& rec : r.records()) emit(rec);
    checks += r.checks().size();
    failed += r.count(Outcome::fail);
    skipped += r.count(Outcome::skipped);
    if (timing) {
      const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
      emit({{"type", "timing"}, {"subject", r.subject()}, {"suite", r.suite()}, {"ms", ms}});
    }
  }

  [[nodiscard]] ConvexCheckOptions convex_options() const {
    ConvexCheckOptions opt;
    opt.grid = default_scalar_grid(seed);
    opt.seed = seed;
    opt.exec = exec;
    return opt;
  }
};

StructureDoc load(const std::string& path) { return load_document(path); }

const ConvexAlgebra& need_convex(const StructureDoc& d) {
  if (!d.convex()) throw UsageError(d.name + " is a " + d.kind + ", expected a semilattice, simplex or polytope");
  return *d.convex();
}

const EffectAlgebra& need_effect(const StructureDoc& d) {
  if (!d.effect()) throw UsageError(d.name + " is a " + d.kind + ", expected an effect_algebra or subspace_family");
  return *d.effect();
}

json map_json(const EffectAlgebra& e, const EffectAlgebra& d, const EAMap& f) {
  json out = json::array();
  for (std::size_t i = 0; i < e.size(); ++i) out.push_back({e.elements()[i], d.elements()[f[i]]});
  return out;
}

std::vector<std::size_t> atoms(const EffectAlgebra& e) {
  std::vector<std::size_t> out;
  for (std::size_t x = 0; x < e.size(); ++x) {
    if (x == e.zero()) continue;
    bool minimal = true;
    for (std::size_t y = 0; y < e.size() && minimal; ++y) {
      if (y != e.zero() && y != x && e.leq(y, x)) minimal = false;
    }
    if (minimal) out.push_back(x);
  }
  return out;
}

void cmd_check(Session& s, const std::string& file) {
  const StructureDoc d = load(file);
  if (const Semiring* r = d.semiring()) {
    Report laws = check_semiring_laws(*r, 200, s.seed, s.exec);
    s.run([&] { return laws; });
    if (laws.ok()) {
      const auto p = classify_semiring(*r, 256, s.seed);
      s.data(r->name(), "classification",
             {{"nontrivial", p.nontrivial}, {"zerosumfree", p.zerosumfree}, {"integral", p.integral},
              {"semifield", p.semifield}, {"witness", p.witness}});
    }
  } else if (const ConvexAlgebra* x = d.convex()) {
    const auto opt = s.convex_options();
    s.run([&] { return check_convex_axioms(*x, opt); });
    s.run([&] { return check_nested_tuple_identity(*x, opt); });
    s.run([&] { return check_evaluation_roundtrip(*x, 500, s.seed, s.exec); });
    s.run([&] { return check_flattening(*x, 100, s.seed, s.exec); });
  } else if (const FinitePreframe* l = d.preframe()) {
    s.run([&] { return check_preframe_axioms(*l, s.seed); });
    s.run([&] { return check_scott_filters(*l, s.exec); });
  } else if (const SubspaceFamilyDoc* k = d.subspaces()) {
    s.run([&] { return check_effect_axioms(k->family.algebra, s.exec); });
    s.run([&] { return check_subspace_lattice(k->family.ambient, 500, s.seed, s.exec); });
  } else if (const EffectAlgebra* e = d.effect()) {
    s.run([&] { return check_effect_axioms(*e, s.exec); });
  } else if (const Semimodule* m = d.semimodule()) {
    SemimodCheckOptions opt;
    opt.seed = s.seed;
    opt.exec = s.exec;
    s.run([&] { return check_semimodule_axioms(*m, opt); });
  }
}

void cmd_filters(Session& s, const std::string& file) {
  const StructureDoc d = load(file);
  if (const FinitePreframe* l = d.preframe()) {
    json names = json::array();
    for (Mask m : scott_open_filters(*l, s.exec)) names.push_back(subset_name(l->elements(), m));
    s.data(l->name(), "scott-open-filters", {{"count", names.size()}, {"filters", names}});
    s.run([&] { return check_scott_filters(*l, s.exec); });
    return;
  }
  const ConvexAlgebra& x = need_convex(d);
  json filters = json::array();
  for (Mask m : enumerate_prime_filters(x, s.exec)) filters.push_back(mask_json(x, m));
  s.data(x.name(), "prime-filters", {{"count", filters.size()}, {"filters", filters}});
  s.run([&] { return check_filter_duality(x, s.exec); });
}

void cmd_extremes(Session& s, const std::string& file) {
  const StructureDoc d = load(file);
  const ConvexAlgebra& x = need_convex(d);
  json pts = json::array();
  for (const ConvexElement& e : extreme_points(x, s.exec)) pts.push_back(render(e));
  s.data(x.name(), "extreme-points", {{"count", pts.size()}, {"points", pts}});
}

void emit_states(Session& s, const StateSpace& sp) {
  const EffectAlgebra& e = sp.source;
  json value = to_json(sp);
  const auto at = atoms(e);
  json names = json::array(), on_atoms = json::array();
  for (std::size_t a : at) names.push_back(e.elements()[a]);
  for (const ExtremeState& st : sp.extremes) {
    json row = json::array();
    for (std::size_t a : at) row.push_back(st.values[a].str());
    on_atoms.push_back(row);
  }
  value["atoms"] = names;
  value["extremes_on_atoms"] = on_atoms;
  s.data(e.name(), "state-space", value);
}

void cmd_homs(Session& s, const std::vector<std::string>& files, const std::string& target) {
  if (files.size() == 2 && !target.empty()) throw UsageError("give a second FILE or --target, not both");
  if (files.size() == 1 && target.empty()) throw UsageError("homs needs a second FILE or --target two|unit");
  const StructureDoc d = load(files[0]);

  if (files.size() == 2) {
    const EffectAlgebra& e = need_effect(d);
    const StructureDoc t = load(files[1]);
    const EffectAlgebra& f = need_effect(t);
    const auto homs = enumerate_ea_homs(e, f, s.exec);
    json maps = json::array();
    for (const EAMap& h : homs) maps.push_back(map_json(e, f, h));
    s.data(e.name() + "->" + f.name(), "homomorphisms", {{"count", homs.size()}, {"maps", maps}});
    s.run([&] {
      Report r(e.name() + "->" + f.name(), "homs");
      for (std::size_t i = 0; i < homs.size(); ++i) {
        const Report one = check_ea_hom(e, f, homs[i]);
        if (!one.ok()) {
          const auto* bad = one.first_failure();
          r.fail("enumerated-maps-are-homs", bad->error_kind, {{"map", maps[i]}, {"failure", bad->witness}}, i + 1);
          return r;
        }
      }
      r.pass("enumerated-maps-are-homs", homs.size());
      return r;
    });
    return;
  }

  if (target == "two") {
    if (const FinitePreframe* l = d.preframe()) {
      json names = json::array();
      for (Mask m : scott_open_filters(*l, s.exec)) names.push_back(subset_name(l->elements(), m));
      s.data(l->name(), "preframe-maps-to-2", {{"count", names.size()}, {"kernels", names}});
      s.run([&] { return check_scott_filters(*l, s.exec); });
    } else if (d.effect()) {
      const EffectAlgebra& e = *d.effect();
      const auto two = EffectAlgebra::two();
      const auto homs = enumerate_ea_homs(e, two, s.exec);
      json maps = json::array();
      for (const EAMap& h : homs) maps.push_back(map_json(e, two, h));
      s.data(e.name(), "homomorphisms-to-2", {{"count", homs.size()}, {"maps", maps}});
    } else {
      const ConvexAlgebra& x = need_convex(d);
      json kernels = json::array();
      for (const TwoValuedMap& f : hom_to_two(x, s.exec)) kernels.push_back(mask_json(x, filter_of(x, f)));
      s.data(x.name(), "affine-maps-to-2", {{"count", kernels.size()}, {"true-kernels", kernels}});
      s.run([&] { return check_filter_duality(x, s.exec); });
    }
    return;
  }
  if (target != "unit") throw UsageError("--target must be two or unit");

  if (d.effect()) {
    const StateSpace sp = state_space(*d.effect(), s.exec);
    emit_states(s, sp);
    s.run([&] { return check_state_space(sp, {}, 40, s.seed, s.exec); });
    return;
  }
  const ConvexAlgebra& x = need_convex(d);
  if (x.family() == ConvexAlgebra::Family::semilattice) {
    throw UsageError("affine maps into [0,1] are computed for simplices and polytopes");
  }
  const AffineFunctionalAlgebra a(x);
  json deps = json::array();
  for (const auto& row : a.dependencies()) {
    json r = json::array();
    for (const Rational& q : row) r.push_back(q.str());
    deps.push_back(r);
  }
  s.data(x.name(), "affine-maps-to-unit", {{"arity", a.arity()}, {"dependencies", deps}});
  s.run([&] { return check_functional_effect_axioms(a, 60, s.seed); });
}

void cmd_states(Session& s, const std::string& file) {
  const StructureDoc d = load(file);
  const StateSpace sp = state_space(need_effect(d), s.exec);
  emit_states(s, sp);
  s.run([&] { return check_state_space(sp, {}, 40, s.seed, s.exec); });
  s.run([&] { return check_unit_eta(sp); });
}

void cmd_adjoint_semimod(Session& s, const std::string& file) {
  const StructureDoc d = load(file);
  const ConvexAlgebra* x = d.convex();
  if (!x && d.semimodule() && d.semimodule()->variant() == Semimodule::Variant::free_on_convex) {
    x = &d.semimodule()->base();
  }
  if (!x) throw UsageError(d.name + " is a " + d.kind + ", expected a convex algebra or a free semimodule on one");
  s.run([&] { return check_transposition(*x, 100, s.seed, s.exec); });
}

void cmd_duality_preframe(Session& s, const std::string& xfile, const std::string& lfile) {
  const StructureDoc xd = load(xfile), ld = load(lfile);
  const ConvexAlgebra& x = need_convex(xd);
  if (!ld.preframe()) throw UsageError(ld.name + " is a " + ld.kind + ", expected a preframe");
  s.run([&] { return check_pf_adjunction(x, *ld.preframe(), s.exec); });
}

void cmd_duality_effect(Session& s, const std::string& file) {
  const StructureDoc d = load(file);
  if (d.effect()) {
    const StateSpace sp = state_space(*d.effect(), s.exec);
    s.run([&] { return check_unit_eta(sp); });
    if (!sp.feasible) return;
    const ConvexAlgebra poly = state_polytope(sp);
    if (poly.generator_count() > 8) {
      s.run([&] {
        Report r(d.name, "triangle-identities");
        r.skip("states-triangle", "state polytope has more than 8 vertices");
        return r;
      });
      return;
    }
    const AffineFunctionalAlgebra a(poly);
    s.run([&] { return check_triangle_identities(sp, a, 20, s.seed); });
    return;
  }
  const ConvexAlgebra& x = need_convex(d);
  if (x.family() == ConvexAlgebra::Family::semilattice) {
    throw UsageError("the effect duality is computed for simplices and polytopes");
  }
  const AffineFunctionalAlgebra a(x);
  s.run([&] { return check_functional_effect_axioms(a, 60, s.seed); });
  s.run([&] { return check_counit_epsilon(a, 200, s.seed); });
  if (x.family() == ConvexAlgebra::Family::simplex && x.labels().size() <= 6) {
    s.run([&] { return composed_adjunction_check(x.labels(), 200, s.seed); });
  }
}

void cmd_hilbert_epsilon(Session& s, const std::string& file, const std::string& unit) {
  const StructureDoc d = load(file);
  const SubspaceFamilyDoc* k = d.subspaces();
  if (!k) throw UsageError(d.name + " is a " + d.kind + ", expected a subspace_family");
  linalg::Vec v;
  try {
    v = parse_vector(unit);
  } catch (const ParseError& e) {
    throw UsageError(std::string("--unit: ") + e.what());
  }
  if (v.size() != k->family.ambient) throw UsageError("--unit has the wrong number of coordinates");
  std::optional<UnitVector> a;
  try {
    a = UnitVector::make(v);
  } catch (const ScalarOutOfRange& e) {
    throw UsageError(std::string("--unit: ") + e.what());
  }
  const linalg::Vec eps = epsilon_state(*a, k->family);
  json values = json::array();
  for (std::size_t i = 0; i < eps.size(); ++i) values.push_back({k->family.members[i].name(), eps[i].str()});
  s.data(d.name, "epsilon-state", values);
  s.run([&] { return check_epsilon_state(*a, k->family); });
}

void cmd_counterexample(Session& s, std::size_t dim) {
  const ConvexityWitness w = convexity_counterexample(dim);
  s.data("KSub(Q^" + std::to_string(dim) + ")", "epsilon-convexity", to_json(w));
  s.run([&] {
    Report r("KSub(Q^" + std::to_string(dim) + ")", "epsilon-convexity");
    const auto again = convexity_probe(UnitVector::make(w.a), UnitVector::make(w.b), w.lambda, w.k);
    if (again.at_mix == w.at_mix && again.mixed == w.mixed && w.at_mix != w.mixed) {
      r.pass("witness-replays", 1, {{"at_mix", w.at_mix.str()}, {"mixed", w.mixed.str()}});
    } else {
      r.fail("witness-replays", "LawViolation", to_json(again), 1);
    }
    return r;
  });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Checks convex algebras, preframes, effect algebras and their dualities."};
  app.require_subcommand(1);
  app.fallthrough();
  Session s;
  std::optional<std::uint64_t> seed;
  bool serial = false;
  app.add_option("--seed", seed, "Random-sample seed (default: DUALITY_SEED or a fixed constant)");
  app.add_flag("--timing", s.timing, "Emit a timing record after each suite");
  app.add_flag("--serial", serial, "Run kernels serially");

  std::string file, file2, target, unit;
  std::vector<std::string> files;
  std::size_t dim = 2;
  std::function<void()> action;

  auto* check = app.add_subcommand("check", "Axiom suite for the structure's kind");
  check->add_option("FILE", file)->required();
  check->callback([&] { action = [&] { cmd_check(s, file); }; });

  auto* filters = app.add_subcommand("filters", "Prime filters or Scott-open filters");
  filters->add_option("FILE", file)->required();
  filters->callback([&] { action = [&] { cmd_filters(s, file); }; });

  auto* extremes = app.add_subcommand("extremes", "Extreme points of a convex algebra");
  extremes->add_option("FILE", file)->required();
  extremes->callback([&] { action = [&] { cmd_extremes(s, file); }; });

  auto* homs = app.add_subcommand("homs", "Homomorphisms into a second structure, 2 or [0,1]");
  homs->add_option("FILE", files)->required()->expected(1, 2);
  homs->add_option("--target", target, "two | unit");
  homs->callback([&] { action = [&] { cmd_homs(s, files, target); }; });

  auto* states = app.add_subcommand("states", "State space of an effect algebra");
  states->add_option("FILE", file)->required();
  states->callback([&] { action = [&] { cmd_states(s, file); }; });

  auto* adjoint = app.add_subcommand("adjoint", "Free/forgetful adjunction round trips");
  adjoint->require_subcommand(1);
  auto* semimod = adjoint->add_subcommand("semimod", "Convex algebras and semimodules");
  semimod->add_option("FILE", file)->required();
  semimod->callback([&] { action = [&] { cmd_adjoint_semimod(s, file); }; });

  auto* dual = app.add_subcommand("duality", "Dual adjunction round trips");
  dual->require_subcommand(1);
  auto* dual_pf = dual->add_subcommand("preframe", "Convex algebras against preframes");
  dual_pf->add_option("XFILE", file)->required();
  dual_pf->add_option("LFILE", file2)->required();
  dual_pf->callback([&] { action = [&] { cmd_duality_preframe(s, file, file2); }; });
  auto* dual_ea = dual->add_subcommand("effect", "Convex algebras against effect algebras");
  dual_ea->add_option("XFILE", file)->required();
  dual_ea->callback([&] { action = [&] { cmd_duality_effect(s, file); }; });

  auto* hilbert = app.add_subcommand("hilbert", "Subspace effect algebras");
  hilbert->require_subcommand(1);
  auto* eps = hilbert->add_subcommand("epsilon", "The state K |-> ||P_K a||^2");
  eps->add_option("FILE", file)->required();
  eps->add_option("--unit", unit, "Unit vector such as 3/5,4/5")->required();
  eps->callback([&] { action = [&] { cmd_hilbert_epsilon(s, file, unit); }; });

  auto* cex = app.add_subcommand("counterexample", "Reproduce a known counterexample");
  cex->require_subcommand(1);
  auto* conv = cex->add_subcommand("epsilon-convexity", "epsilon does not preserve convex sums");
  conv->add_option("--dim", dim, "Ambient dimension")->check(CLI::Range(2, 4));
  conv->callback([&] { action = [&] { cmd_counterexample(s, dim); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  s.seed = seed ? *seed : default_seed();
  s.exec = serial ? Exec::serial : Exec::parallel;
  s.command = app.get_subcommands().at(0)->get_name();

  int code = 0;
  auto error = [&](int c, const std::string& kind, const std::string& message, json witness) {
    Session::emit({{"type", "error"}, {"error", kind}, {"message", message}, {"witness", std::move(witness)}});
    std::cerr << "duality: " << message << '\n';
    code = c;
  };
  try {
    action();
    code = s.failed == 0 ? 0 : 1;
  } catch (const UsageError& e) {
    error(2, "UsageError", e.what(), json::object());
  } catch (const SchemaError& e) {
    error(2, e.kind(), e.what(), e.witness());
  } catch (const Error& e) {
    error(1, e.kind(), e.what(), e.witness());
  }
  Session::emit({{"type", "summary"}, {"command", s.command}, {"seed", s.seed}, {"checks", s.checks},
                 {"failed", s.failed}, {"skipped", s.skipped}, {"exit", code}});
  return code;
}
