#include "coext/xlate.hpp"

#include <algorithm>
#include <array>

namespace coext {

namespace {

// Next free index for generated _vN names.
int first_free_index(const Formula& f) {
  int next = 0;
  for (const auto& v : all_vars(f)) {
    if (v.size() > 2 && v[0] == '_' && v[1] == 'v' &&
        std::all_of(v.begin() + 2, v.end(), [](char c) { return c >= '0' && c <= '9'; })) {
      if (v.size() > 11) continue;
      next = std::max(next, std::stoi(v.substr(2)) + 1);
    }
  }
  return next;
}

class Expander {
 public:
  explicit Expander(int next) : next_(next) {}

  Formula run(const Formula& f) {
    switch (f.kind()) {
      case Kind::Atom:
        return atom(f);
      case Kind::Not:
        return Not(run(f.body()));
      case Kind::Forall:
      case Kind::Exists:
        return make_quantifier(f.kind(), f.var(), run(f.body()));
      default: {
        Formula l = run(f.lhs());
        Formula r = run(f.rhs());
        return make_binary(f.kind(), std::move(l), std::move(r));
      }
    }
  }

 private:
  VarName fresh() { return "_v" + std::to_string(next_++); }

  Formula eq_star(const VarName& x, const VarName& y) {
    VarName z = fresh();
    return Forall(z, Iff(In(z, x), In(z, y)));
  }

  Formula set(const VarName& y) {
    VarName m = fresh();
    VarName n = fresh();
    Formula same = eq_star(m, n);
    return Forall(m, Forall(n, Implies(same, Iff(In(m, y), In(n, y)))));
  }

  Formula atom(const Formula& f) {
    const auto& a = f.args();
    switch (f.pred()) {
      case Pred::EqStar: return eq_star(a[0], a[1]);
      case Pred::Set: return set(a[0]);
      case Pred::InStar: {
        Formula s = set(a[1]);
        return And(std::move(s), In(a[0], a[1]));
      }
      case Pred::At: return Not(set(a[0]));
      default: return f;
    }
  }

  int next_;
};

bool has_starred(const Formula& f) { return !uses_only(f, {Pred::In, Pred::Eq, Pred::Pure}); }

Formula star_atoms(const Formula& f) {
  switch (f.kind()) {
    case Kind::Atom: {
      const auto& a = f.args();
      switch (f.pred()) {
        case Pred::In: return InStar(a[0], a[1]);
        case Pred::Eq: return EqStar(a[0], a[1]);
        case Pred::At: return Not(Set(a[0]));
        default: return f;
      }
    }
    case Kind::Not:
      return Not(star_atoms(f.body()));
    case Kind::Forall:
    case Kind::Exists:
      return make_quantifier(f.kind(), f.var(), star_atoms(f.body()));
    default:
      return make_binary(f.kind(), star_atoms(f.lhs()), star_atoms(f.rhs()));
  }
}

Formula relativize(const Formula& f) {
  switch (f.kind()) {
    case Kind::Atom: {
      const auto& a = f.args();
      return f.pred() == Pred::In ? InStar(a[0], a[1]) : EqStar(a[0], a[1]);
    }
    case Kind::Not:
      return Not(relativize(f.body()));
    case Kind::Forall:
      return Forall(f.var(), Implies(Pure(f.var()), relativize(f.body())));
    case Kind::Exists:
      return Exists(f.var(), And(Pure(f.var()), relativize(f.body())));
    default:
      return make_binary(f.kind(), relativize(f.lhs()), relativize(f.rhs()));
  }
}

}  // namespace

Formula expand(const Formula& f) {
  if (!has_starred(f)) return f;
  return Expander(first_free_index(f)).run(f);
}

Formula translate_zfa_starred(const Formula& f) {
  if (!uses_only(f, {Pred::In, Pred::Eq, Pred::At}))
    throw TranslationError("translate: input must use only in, =, At");
  return star_atoms(f);
}

Formula translate_zfa(const Formula& f) { return expand(translate_zfa_starred(f)); }

Formula relativize_pure_starred(const Formula& f) {
  if (!uses_only(f, {Pred::In, Pred::Eq})) throw TranslationError("relativize: input must use only in, =");
  return relativize(f);
}

Formula relativize_pure(const Formula& f) { return expand(relativize_pure_starred(f)); }

// ---------------------------------------------------------------------------
// Axioms

namespace {

struct AxiomName {
  Axiom kind;
  std::string_view name;
};

constexpr std::array<AxiomName, 12> kAxiomNames{{
    {Axiom::ReplacementStar, "replacement-star"},
    {Axiom::ScottReplacement, "scott-replacement"},
    {Axiom::UnionSchema, "union-schema"},
    {Axiom::EpsSeparation, "eps-separation"},
    {Axiom::WeakExt, "weak-ext"},
    {Axiom::AtomsEmpty, "atoms"},
    {Axiom::FoundationStar, "foundation"},
    {Axiom::PairingStar, "pairing"},
    {Axiom::UnionStar, "union"},
    {Axiom::PowerStar, "power"},
    {Axiom::SeparationStar, "separation"},
    {Axiom::ReplacementStarZFA, "replacement"},
}};

void require(bool ok, const AxiomId& id, const std::string& condition) {
  if (!ok) throw SideConditionError(id.name(), condition);
}

const Formula& require_phi(const AxiomId& id) {
  require(id.phi.has_value(), id, "schema needs a formula parameter");
  return *id.phi;
}

// phi may only have free variables drawn from `allowed`, and those may not
// also occur bound in it.
void require_free_within(const AxiomId& id, const Formula& phi, std::initializer_list<const char*> allowed) {
  const VarSet bound = bound_vars(phi);
  for (const auto& v : free_vars(phi))
    require(std::find(allowed.begin(), allowed.end(), v) != allowed.end(), id,
            "free variable " + v + " not allowed in phi");
  for (const char* v : allowed) require(!bound.count(v), id, std::string(v) + " must occur only free in phi");
}

void require_not_free(const AxiomId& id, const Formula& phi, std::initializer_list<const char*> banned) {
  const VarSet fv = free_vars(phi);
  for (const char* v : banned) require(!fv.count(v), id, std::string("phi must not mention ") + v);
}

bool starred_language(const Formula& f) {
  return uses_only(f, {Pred::InStar, Pred::EqStar, Pred::Set, Pred::At});
}

std::vector<VarName> parameters_except(const Formula& phi, std::initializer_list<const char*> schema_vars) {
  std::vector<VarName> out;
  for (const auto& v : free_vars(phi))
    if (std::find(schema_vars.begin(), schema_vars.end(), v) == schema_vars.end()) out.push_back(v);
  return out;
}

AxiomInstance replacement_star(const AxiomId& id, const Formula& phi) {
  require_free_within(id, phi, {"X", "Z"});
  Formula body = Exists("B", Forall("Y", Iff(In("Y", "B"), Exists("X", And(In("X", "A"), Forall("Z", Iff(In("Z", "Y"), phi)))))));
  return {id, {"A"}, body};
}

}  // namespace

std::string AxiomId::name() const {
  for (const auto& n : kAxiomNames)
    if (n.kind == kind) return std::string(n.name);
  return "?";
}

bool is_schema(Axiom a) noexcept {
  switch (a) {
    case Axiom::ReplacementStar:
    case Axiom::ScottReplacement:
    case Axiom::UnionSchema:
    case Axiom::EpsSeparation:
    case Axiom::SeparationStar:
    case Axiom::ReplacementStarZFA:
      return true;
    default:
      return false;
  }
}

std::optional<Axiom> axiom_from_name(std::string_view name) {
  for (const auto& n : kAxiomNames)
    if (n.name == name) return n.kind;
  return std::nullopt;
}

AxiomId proposition1() { return {Axiom::ReplacementStar, In("Z", "X")}; }

SideConditionError::SideConditionError(std::string axiom, std::string condition)
    : std::invalid_argument(axiom + ": side condition violated: " + condition), condition_(std::move(condition)) {}

Formula AxiomInstance::closed() const {
  Formula f = body;
  for (auto it = params.rbegin(); it != params.rend(); ++it) f = Forall(*it, f);
  return f;
}

AxiomInstance instantiate(const AxiomId& id) {
  if (!is_schema(id.kind)) require(!id.phi.has_value(), id, "axiom takes no formula parameter");

  switch (id.kind) {
    case Axiom::WeakExt:
      return {id, {"X", "Y"},
              Implies(And(Set("X"), Set("Y")),
                      Implies(Forall("Z", Iff(InStar("Z", "X"), InStar("Z", "Y"))), EqStar("X", "Y")))};

    case Axiom::AtomsEmpty:
      return {id, {"x"}, Implies(Not(Set("x")), Not(Exists("y", InStar("y", "x"))))};

    case Axiom::FoundationStar:
      return {id, {"A"},
              Implies(Exists("x", InStar("x", "A")),
                      Exists("y", And(InStar("y", "A"), Not(Exists("z", And(InStar("z", "A"), InStar("z", "y")))))))};

    case Axiom::PairingStar:
      return {id, {"A", "B"}, Exists("x", Forall("y", Iff(InStar("y", "x"), Or(EqStar("y", "A"), EqStar("y", "B")))))};

    case Axiom::UnionStar:
      return {id, {"A"},
              Exists("x", Forall("y", Iff(InStar("y", "x"), Exists("z", And(InStar("z", "A"), InStar("y", "z"))))))};

    case Axiom::PowerStar:
      return {id, {"A"},
              Exists("x", Forall("y", Iff(InStar("y", "x"), Forall("z", Implies(InStar("z", "y"), InStar("z", "A"))))))};

    case Axiom::ReplacementStar:
      return replacement_star(id, require_phi(id));

    case Axiom::ScottReplacement: {
      const Formula& phi = require_phi(id);
      require_free_within(id, phi, {"x", "y"});
      Formula phi_z = substitute(phi, "y", "z");
      Formula functional = Forall("x", Forall("y", Forall("z", Implies(And(phi, phi_z), EqStar("y", "z")))));
      Formula conclusion = Exists("B", Forall("y", Iff(In("y", "B"), Exists("x", And(In("x", "A"), phi)))));
      return {id, {"A"}, Implies(functional, conclusion)};
    }

    case Axiom::UnionSchema: {
      const Formula& phi = require_phi(id);
      require_free_within(id, phi, {"X", "Y"});
      Formula bounded = Forall("X", Exists("Z", Forall("Y", Implies(phi, In("Y", "Z")))));
      Formula conclusion =
          Forall("A", Exists("B", Forall("Y", Iff(In("Y", "B"), Exists("X", And(In("X", "A"), phi))))));
      return {id, {}, Implies(bounded, conclusion)};
    }

    case Axiom::EpsSeparation:
      return eps_separation_obligations(require_phi(id)).target;

    case Axiom::SeparationStar: {
      const Formula& phi = require_phi(id);
      require(starred_language(phi), id, "phi must use only starred predicates");
      require(occurs_free(phi, "y"), id, "y must occur free in phi");
      require(!bound_vars(phi).count("y"), id, "y must occur only free in phi");
      require(!occurs(phi, "x"), id, "x must not occur in phi");
      require_not_free(id, phi, {"A"});
      auto params = parameters_except(phi, {"y"});
      params.push_back("A");
      Formula body = Exists("x", And(Set("x"), Forall("y", Iff(InStar("y", "x"), And(InStar("y", "A"), phi)))));
      return {id, params, body};
    }

    case Axiom::ReplacementStarZFA: {
      const Formula& phi = require_phi(id);
      require(starred_language(phi), id, "phi must use only starred predicates");
      require_not_free(id, phi, {"A", "B", "k"});
      auto params = parameters_except(phi, {"x", "y"});
      params.push_back("A");
      Formula unique = Exists("k", Forall("y", Iff(phi, EqStar("y", "k"))));
      Formula antecedent = Forall("x", Implies(InStar("x", "A"), unique));
      Formula conclusion =
          Exists("B", And(Set("B"), Forall("y", Iff(InStar("y", "B"), Exists("x", And(InStar("x", "A"), phi))))));
      return {id, params, Implies(antecedent, conclusion)};
    }
  }
  throw std::logic_error("unknown axiom");
}

Formula build_axiom(const AxiomId& id) { return expand(instantiate(id).closed()); }

EpsSeparationObligations eps_separation_obligations(const Formula& phi) {
  const AxiomId id{Axiom::EpsSeparation, phi};
  require_free_within(id, phi, {"y"});
  require(occurs_free(phi, "y"), id, "y must occur free in phi");
  require(!occurs(phi, "x"), id, "x must not occur in phi");

  // Z = X & phi(X): each member X of A satisfying phi is replaced by the
  // classes whose only member is X, the others by empty classes.
  Formula phi_X = substitute(phi, "y", "X");
  AxiomId rep_id{Axiom::ReplacementStar, And(Eq("Z", "X"), phi_X)};
  AxiomInstance replacement = instantiate(rep_id);

  AxiomInstance union_step{{Axiom::UnionStar, std::nullopt},
                           {"C"},
                           Exists("x", Forall("y", Iff(In("y", "x"), Exists("Y", And(In("Y", "C"), In("y", "Y"))))))};

  AxiomInstance target{id, {"A"}, Exists("x", Forall("y", Iff(In("y", "x"), And(In("y", "A"), phi))))};
  return {std::move(replacement), std::move(union_step), std::move(target)};
}

Formula scott_derived_witness(const Formula& phi) {
  VarSet taken = all_vars(phi);
  taken.insert({"X", "Z"});
  const VarName k = fresh_name("k", taken);
  Formula image = substitute(substitute(phi, "y", k), "x", "X");
  return Exists(k, And(image, In("Z", k)));
}

}  // namespace coext
