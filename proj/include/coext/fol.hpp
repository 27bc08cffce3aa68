// First-order formulas over the membership signature {in, =, in*, =*, set, At}.
//
// The language is relational: every argument of an atom is a variable name.
// Formulas are immutable trees of shared nodes, so copies are cheap and a
// formula may be shared across threads without synchronization.

#ifndef COEXT_FOL_HPP
#define COEXT_FOL_HPP

#include <cstddef>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace coext {

using VarName = std::string;
using VarSet = std::set<VarName>;

// Pure is not part of the surface signature proper; it marks the
// hereditarily-set relativization and is resolved semantically.
enum class Pred { In, Eq, InStar, EqStar, Set, At, Pure };

enum class Kind { Atom, Not, And, Or, Implies, Iff, Forall, Exists };

int arity(Pred p) noexcept;
std::string_view pred_name(Pred p) noexcept;
bool is_starred(Pred p) noexcept;

struct FormulaNode;

class Formula {
 public:
  Formula() = default;

  Kind kind() const;
  Pred pred() const;                           // Atom only
  const std::vector<VarName>& args() const;    // Atom only
  const VarName& var() const;                  // Forall/Exists
  const Formula& body() const;                 // Not/Forall/Exists
  const Formula& lhs() const;                  // binary connectives
  const Formula& rhs() const;

  bool empty() const noexcept { return node_ == nullptr; }
  bool is_quantifier() const;
  bool is_binary() const;

  // Structural identity (bound names included).
  friend bool operator==(const Formula& a, const Formula& b);

 private:
  friend struct FormulaNode;
  friend Formula make_atom(Pred, std::vector<VarName>);
  friend Formula make_unary(Kind, Formula);
  friend Formula make_binary(Kind, Formula, Formula);
  friend Formula make_quantifier(Kind, VarName, Formula);

  explicit Formula(std::shared_ptr<const FormulaNode> n) : node_(std::move(n)) {}
  std::shared_ptr<const FormulaNode> node_;
};

struct FormulaNode {
  Kind kind = Kind::Atom;
  Pred pred = Pred::In;
  std::vector<VarName> args;
  VarName var;
  Formula a;
  Formula b;
};

Formula make_atom(Pred p, std::vector<VarName> args);
Formula make_unary(Kind k, Formula body);
Formula make_binary(Kind k, Formula lhs, Formula rhs);
Formula make_quantifier(Kind k, VarName v, Formula body);

// Builders named after the connectives.
Formula In(VarName x, VarName y);
Formula Eq(VarName x, VarName y);
Formula InStar(VarName x, VarName y);
Formula EqStar(VarName x, VarName y);
Formula Set(VarName x);
Formula At(VarName x);
Formula Pure(VarName x);
Formula Not(Formula f);
Formula And(Formula a, Formula b);
Formula Or(Formula a, Formula b);
Formula Implies(Formula a, Formula b);
Formula Iff(Formula a, Formula b);
Formula Forall(VarName v, Formula body);
Formula Exists(VarName v, Formula body);

// Left-folded conjunction/disjunction; the list must be nonempty.
Formula AndAll(const std::vector<Formula>& fs);
Formula OrAll(const std::vector<Formula>& fs);

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t offset, const std::string& msg);
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

struct ParseOptions {
  // Names starting with '_' are reserved for generated variables.  Replaying
  // dumped formulas needs them back.
  bool allow_reserved = false;
};

Formula parse(std::string_view text, ParseOptions opts = {});
std::string to_string(const Formula& f);

VarSet free_vars(const Formula& f);
VarSet bound_vars(const Formula& f);
VarSet all_vars(const Formula& f);
bool occurs_free(const Formula& f, const VarName& v);
bool occurs(const Formula& f, const VarName& v);

// Maximum nesting depth of quantifiers.
int quantifier_depth(const Formula& f);
// Connective + quantifier nesting depth (atoms are 0).
int depth(const Formula& f);

bool uses_only(const Formula& f, std::initializer_list<Pred> preds);

// Returns `base` if unused, else base_1, base_2, ... avoiding `taken`.
VarName fresh_name(const VarName& base, const VarSet& taken);

// Capture-avoiding replacement of the free occurrences of `from` by `to`.
Formula substitute(const Formula& f, const VarName& from, const VarName& to);

// Bound variables renamed to positional names in binding order.
Formula canonical(const Formula& f);
bool alpha_equal(const Formula& a, const Formula& b);

}  // namespace coext

#endif
