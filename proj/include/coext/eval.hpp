// Tarskian evaluation of formulas over finite membership structures.
//
// Quantifiers range over every node in ascending id order and stop at the
// first decisive witness, so reported witnesses and counterexamples are the
// least ones.  Starred atoms and Pure are evaluated natively from the
// structure's Semantics; = is node identity.

#ifndef COEXT_EVAL_HPP
#define COEXT_EVAL_HPP

#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "coext/fol.hpp"
#include "coext/memstruct.hpp"
#include "coext/report.hpp"

namespace coext {

using Assignment = std::map<VarName, NodeId>;

class EvalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct EvalOptions {
  // Evaluating q nested quantifiers on n nodes visits up to n^q
  // assignments; deeper formulas are refused unless this is raised.
  int max_quantifier_depth = 6;
};

// A formula resolved to variable slots.  Free variables occupy slots
// 0..k-1 in sorted name order.  Immutable, so one instance may be evaluated
// from several threads, each with its own scratch.
class CompiledFormula {
 public:
  explicit CompiledFormula(const Formula& f, EvalOptions opts = {});

  const std::vector<VarName>& free_vars() const noexcept { return free_; }
  std::size_t slots() const noexcept { return slots_; }
  const Formula& source() const noexcept { return source_; }

  // `values` binds free_vars() in order; `scratch` is resized as needed.
  bool eval(const Semantics& sem, std::span<const NodeId> values, std::vector<NodeId>& scratch) const;
  bool eval(const Semantics& sem, std::span<const NodeId> values) const;

 private:
  struct Op {
    Kind kind;
    Pred pred;
    std::uint32_t a = 0, b = 0;    // argument slots or the bound slot
    std::uint32_t l = 0, r = 0;    // child ops
  };

  std::uint32_t compile(const Formula& f, std::vector<std::pair<VarName, std::uint32_t>>& scope);
  bool run(std::uint32_t op, const Semantics& sem, NodeId* env) const;

  Formula source_;
  std::vector<VarName> free_;
  std::vector<Op> ops_;
  std::uint32_t root_ = 0;
  std::size_t slots_ = 0;
};

bool eval(const Semantics& sem, const Formula& f, const Assignment& rho, EvalOptions opts = {});
bool eval(const MemStructure& s, const Formula& f, const Assignment& rho, EvalOptions opts = {});

// Least assignment (lexicographic in sorted variable order) falsifying f,
// or nullopt if f holds under all of them.
std::optional<std::vector<Binding>> find_falsifying(const Semantics& sem, const CompiledFormula& f);

// Truth of the universal closure.
bool eval_all_assignments(const MemStructure& s, const Formula& f, EvalOptions opts = {});

// { v : f holds with var := v }, the rest of f's free variables bound by rho.
NodeSet defined_extension(const Semantics& sem, const Formula& f, const VarName& var, const Assignment& rho,
                          EvalOptions opts = {});

}  // namespace coext

#endif
