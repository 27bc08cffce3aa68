// Macro expansion of the starred predicates, the ZFA translation, the pure-set
// relativization and the axiom-schema instance builders.

#ifndef COEXT_XLATE_HPP
#define COEXT_XLATE_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "coext/fol.hpp"

namespace coext {

// Rewrites =*, set, in*, At into the raw {in, =} language:
//   x =* y   ~>  all z. (z in x <-> z in y)
//   set(y)   ~>  all m. all n. (m =* n -> (m in y <-> n in y))
//   x in* y  ~>  set(y) & x in y
//   At(x)    ~>  ~set(x)
// Generated binders are named _v0, _v1, ... above any such name already in
// the input.  Pure atoms are left in place.
Formula expand(const Formula& f);

class TranslationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// ZFA language {in, =, At} -> starred language, then expanded.
Formula translate_zfa_starred(const Formula& f);
Formula translate_zfa(const Formula& f);

// ZF language {in, =} -> every quantifier bounded by Pure, atoms starred.
Formula relativize_pure_starred(const Formula& f);
Formula relativize_pure(const Formula& f);

enum class Axiom {
  ReplacementStar,     // the raw Replacement* schema, phi(X, Z)
  ScottReplacement,    // phi(x, y)
  UnionSchema,         // phi(X, Y)
  EpsSeparation,       // phi(y)
  WeakExt,
  AtomsEmpty,
  FoundationStar,
  PairingStar,
  UnionStar,
  PowerStar,
  SeparationStar,      // phi(y), starred, may have parameters
  ReplacementStarZFA,  // phi(x, y), starred, may have parameters
};

struct AxiomId {
  Axiom kind;
  std::optional<Formula> phi;

  std::string name() const;
};

bool is_schema(Axiom a) noexcept;
std::optional<Axiom> axiom_from_name(std::string_view name);

// The Replacement* instance with phi(X, Z) := Z in X.
AxiomId proposition1();

class SideConditionError : public std::invalid_argument {
 public:
  SideConditionError(std::string axiom, std::string condition);
  const std::string& condition() const noexcept { return condition_; }

 private:
  std::string condition_;
};

// A closed axiom instance split into its outer universal parameters and the
// body those parameters range over.  The body may use starred atoms.
struct AxiomInstance {
  AxiomId id;
  std::vector<VarName> params;
  Formula body;

  Formula closed() const;
};

AxiomInstance instantiate(const AxiomId& id);

// Closed instance in the raw language.
Formula build_axiom(const AxiomId& id);

// The derivation of in-Separation from Replacement*: the Replacement*
// instance for phi'(X, Z) := Z = X & phi(X), the union step that is applied
// to its result, and the statement they establish.
struct EpsSeparationObligations {
  AxiomInstance replacement;
  AxiomInstance union_step;
  AxiomInstance target;
};

EpsSeparationObligations eps_separation_obligations(const Formula& phi);

// psi(x, z) := ex k. (phi(x, k) & z in k), used to derive Scott's schema.
Formula scott_derived_witness(const Formula& phi);

}  // namespace coext

#endif
