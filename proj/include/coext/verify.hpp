// The verification harness: formula corpora, schema checkers over
// structures, axiom checkers over closed families, Scott's replacement
// derivation and the successor step for ordinal copies.
//
// Every check returns a Report.  A failed report carries the least
// counterexample in (structure, instance, assignment) order, and
// counterexamples with a formula replay through eval().

#ifndef COEXT_VERIFY_HPP
#define COEXT_VERIFY_HPP

#include <functional>
#include <optional>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "coext/eval.hpp"
#include "coext/memstruct.hpp"
#include "coext/modelgen.hpp"
#include "coext/report.hpp"
#include "coext/xlate.hpp"

namespace coext {

// ---------------------------------------------------------------------------
// Corpora

// Deterministic formulas up to `depth` over the given variables and atom
// predicates, deduplicated up to alpha-equivalence.  Layer d+1 adds
// negations, binary combinations of a layer-d formula with an atom, and
// quantifications over a fresh variable of layer-d formulas that use it.
std::vector<Formula> corpus(int depth, const std::vector<VarName>& vars, const std::vector<Pred>& atoms);

// ---------------------------------------------------------------------------
// Schemata

enum class SchemaId { Lemma1, Corollary1, Corollary3, Subsidiary1, Lemma2 };

std::string_view schema_name(SchemaId id);
std::optional<SchemaId> schema_from_name(std::string_view name);

class SignatureError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct SchemaOptions {
  // Reject corpus formulas outside the schema's signature.  Negative
  // controls switch this off.
  bool enforce_signature = true;
  // Check Subsidiary 1 and Corollary 3 as full biconditionals for every x
  // instead of the forward direction (plus the biconditional on sets for
  // Corollary 3).  The literal reading is not valid; see the README.
  bool literal_biconditional = false;
};

// Compiled once, then run against any number of structures.
class SchemaCheck {
 public:
  SchemaCheck(SchemaId id, const std::vector<Formula>& corpus, SchemaOptions opts = {});

  SchemaId id() const noexcept { return id_; }
  std::string name() const;
  // Corpus formulas that met one restriction of the schema but not the other.
  std::size_t flagged() const noexcept { return flagged_; }
  std::size_t instance_count() const noexcept { return clauses_.size(); }

  Report run(const MemStructure& s) const;

 private:
  struct Clause {
    std::string tag;
    std::optional<CompiledFormula> antecedent;
    CompiledFormula consequent;
    Formula printed;
  };

  SchemaId id_;
  SchemaOptions opts_;
  std::vector<Clause> clauses_;
  std::size_t flagged_ = 0;
};

Report check_schema(const MemStructure& s, SchemaId id, const std::vector<Formula>& corpus, SchemaOptions opts = {});

// Subsidiary 2 on extensions: X subset A and X =* Y imply Y subset A.
Report check_subsidiary2(const MemStructure& s);

// ---------------------------------------------------------------------------
// Families

using StructureCheck = std::function<Report(const MemStructure&)>;

// Runs `check` on every structure with 1..max_nodes nodes, sharded across
// `jobs` threads.  The merged report does not depend on `jobs`.
Report run_exhaustive(std::string name, std::size_t max_nodes, const StructureCheck& check, std::size_t jobs = 1,
                      const std::function<bool(const MemStructure&)>& filter = {});

Report run_all(std::string name, const std::vector<MemStructure>& family, const StructureCheck& check,
               std::size_t jobs = 1);

// ---------------------------------------------------------------------------
// Axioms

// Range of the outer parameters of an axiom; everything when unset.
struct Bounds {
  std::optional<NodeSet> params;

  static Bounds nodes(NodeSet ns) { return Bounds{std::move(ns)}; }
  static Bounds rank_at_most(const MemStructure& s, std::size_t rank);
};

// Parameters of rank <= family_rank - 2 for Power and family_rank - 1 for
// the other witness-asserting axioms; validities are unbounded.
Bounds family_bounds(const MemStructure& s, std::size_t family_rank, Axiom a);

Report check_axiom(const MemStructure& s, const AxiomId& id, const Bounds& bounds = {});

// ---------------------------------------------------------------------------
// Scott's schema

Report check_scott(const MemStructure& s, const std::vector<Formula>& phis, const Bounds& bounds = {});

// ---------------------------------------------------------------------------
// Ordinal copies

// Clause (a): the successor copy with extension ext(n*) + {x : x =* n*}
// exists and carries a verified copy relation from n+1.  Clause (b): all
// copies of n, and all copies of n+1, are pairwise co-extensional.
Report check_infinity_step(const MemStructure& s, NodeId n);

// The von Neumann successor of n present in s, lowest id first.
std::optional<NodeId> find_successor(const MemStructure& s, NodeId n);

// ---------------------------------------------------------------------------
// Closed families

// phi(x, y) relations that are functional up to =* on every structure.
std::vector<Formula> functional_corpus();

struct FamilySpec {
  std::size_t hf_rank = 3;
  std::vector<CopySpec> doppelgangers;
  DoppelMode mode = DoppelMode::Shallow;
  std::vector<Formula> separation_corpus;
  std::vector<Formula> replacement_corpus;
  std::vector<Formula> eps_separation_corpus;  // free variables within {y}
  std::size_t max_rounds = 12;
};

// The family of the acceptance run: HF(3) with two copies of {} and one of
// {{}}, closed for pairing, union, power, separation at depth <= 1,
// Proposition 1, replacement and Scott over the functional corpus, and a
// few eps-separation instances.
FamilySpec default_family_spec();

struct ClosedFamily {
  MemStructure structure;
  std::size_t base_nodes = 0;
  std::size_t family_rank = 0;
  std::size_t rounds = 0;
  bool converged = false;  // the last round added nothing
};

// Adds, round by round, a node for every witness extension that the
// bounded axiom instances ask for and no node has yet, plus the
// intermediate sets the eps-separation and Scott derivations pass through.
// New nodes only ever join later new nodes and never repeat an existing
// extension, so the classes and sethood of earlier nodes do not change.
ClosedFamily closed_family(const FamilySpec& spec);

}  // namespace coext

#endif
