#include "coext/fol.hpp"

#include <algorithm>
#include <cassert>
#include <functional>

namespace coext {

int arity(Pred p) noexcept {
  switch (p) {
    case Pred::In:
    case Pred::Eq:
    case Pred::InStar:
    case Pred::EqStar:
      return 2;
    default:
      return 1;
  }
}

std::string_view pred_name(Pred p) noexcept {
  switch (p) {
    case Pred::In: return "in";
    case Pred::Eq: return "=";
    case Pred::InStar: return "in*";
    case Pred::EqStar: return "=*";
    case Pred::Set: return "set";
    case Pred::At: return "At";
    case Pred::Pure: return "Pure";
  }
  return "?";
}

bool is_starred(Pred p) noexcept {
  return p == Pred::InStar || p == Pred::EqStar || p == Pred::Set || p == Pred::At;
}

Kind Formula::kind() const { return node_->kind; }
Pred Formula::pred() const { return node_->pred; }
const std::vector<VarName>& Formula::args() const { return node_->args; }
const VarName& Formula::var() const { return node_->var; }
const Formula& Formula::body() const { return node_->a; }
const Formula& Formula::lhs() const { return node_->a; }
const Formula& Formula::rhs() const { return node_->b; }

bool Formula::is_quantifier() const {
  return node_->kind == Kind::Forall || node_->kind == Kind::Exists;
}

bool Formula::is_binary() const {
  switch (node_->kind) {
    case Kind::And:
    case Kind::Or:
    case Kind::Implies:
    case Kind::Iff:
      return true;
    default:
      return false;
  }
}

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  if (!a.node_ || !b.node_) return false;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  if (x.kind != y.kind) return false;
  switch (x.kind) {
    case Kind::Atom:
      return x.pred == y.pred && x.args == y.args;
    case Kind::Not:
      return x.a == y.a;
    case Kind::Forall:
    case Kind::Exists:
      return x.var == y.var && x.a == y.a;
    default:
      return x.a == y.a && x.b == y.b;
  }
}

Formula make_atom(Pred p, std::vector<VarName> args) {
  if (static_cast<int>(args.size()) != arity(p))
    throw std::invalid_argument("wrong number of arguments for " + std::string(pred_name(p)));
  for (const auto& a : args)
    if (a.empty()) throw std::invalid_argument("empty variable name");
  auto n = std::make_shared<FormulaNode>();
  n->kind = Kind::Atom;
  n->pred = p;
  n->args = std::move(args);
  return Formula(std::move(n));
}

Formula make_unary(Kind k, Formula body) {
  assert(k == Kind::Not);
  auto n = std::make_shared<FormulaNode>();
  n->kind = k;
  n->a = std::move(body);
  return Formula(std::move(n));
}

Formula make_binary(Kind k, Formula lhs, Formula rhs) {
  auto n = std::make_shared<FormulaNode>();
  n->kind = k;
  n->a = std::move(lhs);
  n->b = std::move(rhs);
  return Formula(std::move(n));
}

Formula make_quantifier(Kind k, VarName v, Formula body) {
  if (v.empty()) throw std::invalid_argument("empty variable name");
  auto n = std::make_shared<FormulaNode>();
  n->kind = k;
  n->var = std::move(v);
  n->a = std::move(body);
  return Formula(std::move(n));
}

Formula In(VarName x, VarName y) { return make_atom(Pred::In, {std::move(x), std::move(y)}); }
Formula Eq(VarName x, VarName y) { return make_atom(Pred::Eq, {std::move(x), std::move(y)}); }
Formula InStar(VarName x, VarName y) { return make_atom(Pred::InStar, {std::move(x), std::move(y)}); }
Formula EqStar(VarName x, VarName y) { return make_atom(Pred::EqStar, {std::move(x), std::move(y)}); }
Formula Set(VarName x) { return make_atom(Pred::Set, {std::move(x)}); }
Formula At(VarName x) { return make_atom(Pred::At, {std::move(x)}); }
Formula Pure(VarName x) { return make_atom(Pred::Pure, {std::move(x)}); }
Formula Not(Formula f) { return make_unary(Kind::Not, std::move(f)); }
Formula And(Formula a, Formula b) { return make_binary(Kind::And, std::move(a), std::move(b)); }
Formula Or(Formula a, Formula b) { return make_binary(Kind::Or, std::move(a), std::move(b)); }
Formula Implies(Formula a, Formula b) { return make_binary(Kind::Implies, std::move(a), std::move(b)); }
Formula Iff(Formula a, Formula b) { return make_binary(Kind::Iff, std::move(a), std::move(b)); }
Formula Forall(VarName v, Formula body) { return make_quantifier(Kind::Forall, std::move(v), std::move(body)); }
Formula Exists(VarName v, Formula body) { return make_quantifier(Kind::Exists, std::move(v), std::move(body)); }

Formula AndAll(const std::vector<Formula>& fs) {
  if (fs.empty()) throw std::invalid_argument("AndAll of nothing");
  Formula acc = fs.front();
  for (std::size_t i = 1; i < fs.size(); ++i) acc = And(acc, fs[i]);
  return acc;
}

Formula OrAll(const std::vector<Formula>& fs) {
  if (fs.empty()) throw std::invalid_argument("OrAll of nothing");
  Formula acc = fs.front();
  for (std::size_t i = 1; i < fs.size(); ++i) acc = Or(acc, fs[i]);
  return acc;
}

// ---------------------------------------------------------------------------
// Printing

namespace {

// Higher binds tighter.  Quantifiers extend to the end of their scope so
// they print as the loosest construct.
int precedence(Kind k) {
  switch (k) {
    case Kind::Forall:
    case Kind::Exists: return 0;
    case Kind::Iff: return 1;
    case Kind::Implies: return 2;
    case Kind::Or: return 3;
    case Kind::And: return 4;
    case Kind::Not: return 5;
    case Kind::Atom: return 6;
  }
  return 6;
}

std::string_view connective(Kind k) {
  switch (k) {
    case Kind::And: return " & ";
    case Kind::Or: return " | ";
    case Kind::Implies: return " -> ";
    case Kind::Iff: return " <-> ";
    default: return " ? ";
  }
}

void print(const Formula& f, std::string& out);

void print_child(const Formula& f, bool parens, std::string& out) {
  if (parens) out += '(';
  print(f, out);
  if (parens) out += ')';
}

void print(const Formula& f, std::string& out) {
  switch (f.kind()) {
    case Kind::Atom: {
      const auto& a = f.args();
      if (arity(f.pred()) == 2) {
        out += a[0];
        out += ' ';
        out += pred_name(f.pred());
        out += ' ';
        out += a[1];
      } else {
        out += pred_name(f.pred());
        out += '(';
        out += a[0];
        out += ')';
      }
      return;
    }
    case Kind::Not:
      out += '~';
      print_child(f.body(), precedence(f.body().kind()) < precedence(Kind::Not), out);
      return;
    case Kind::Forall:
    case Kind::Exists:
      out += f.kind() == Kind::Forall ? "all " : "ex ";
      out += f.var();
      out += ". ";
      print(f.body(), out);
      return;
    default: {
      const int p = precedence(f.kind());
      const int pl = precedence(f.lhs().kind());
      const int pr = precedence(f.rhs().kind());
      // & and | associate to the left, the arrows to the right.
      const bool right_assoc = f.kind() == Kind::Implies || f.kind() == Kind::Iff;
      print_child(f.lhs(), right_assoc ? pl <= p : pl < p, out);
      out += connective(f.kind());
      print_child(f.rhs(), right_assoc ? pr < p : pr <= p, out);
      return;
    }
  }
}

}  // namespace

std::string to_string(const Formula& f) {
  std::string out;
  print(f, out);
  return out;
}

// ---------------------------------------------------------------------------
// Variables

namespace {

void collect_free(const Formula& f, VarSet& bound, VarSet& out) {
  switch (f.kind()) {
    case Kind::Atom:
      for (const auto& a : f.args())
        if (!bound.count(a)) out.insert(a);
      return;
    case Kind::Not:
      collect_free(f.body(), bound, out);
      return;
    case Kind::Forall:
    case Kind::Exists: {
      const bool inserted = bound.insert(f.var()).second;
      collect_free(f.body(), bound, out);
      if (inserted) bound.erase(f.var());
      return;
    }
    default:
      collect_free(f.lhs(), bound, out);
      collect_free(f.rhs(), bound, out);
  }
}

template <class Fn>
void visit(const Formula& f, Fn&& fn) {
  fn(f);
  switch (f.kind()) {
    case Kind::Atom: return;
    case Kind::Not:
    case Kind::Forall:
    case Kind::Exists:
      visit(f.body(), fn);
      return;
    default:
      visit(f.lhs(), fn);
      visit(f.rhs(), fn);
  }
}

}  // namespace

VarSet free_vars(const Formula& f) {
  VarSet bound, out;
  collect_free(f, bound, out);
  return out;
}

VarSet bound_vars(const Formula& f) {
  VarSet out;
  visit(f, [&](const Formula& g) {
    if (g.is_quantifier()) out.insert(g.var());
  });
  return out;
}

VarSet all_vars(const Formula& f) {
  VarSet out;
  visit(f, [&](const Formula& g) {
    if (g.kind() == Kind::Atom)
      out.insert(g.args().begin(), g.args().end());
    else if (g.is_quantifier())
      out.insert(g.var());
  });
  return out;
}

bool occurs_free(const Formula& f, const VarName& v) { return free_vars(f).count(v) > 0; }
bool occurs(const Formula& f, const VarName& v) { return all_vars(f).count(v) > 0; }

int quantifier_depth(const Formula& f) {
  switch (f.kind()) {
    case Kind::Atom: return 0;
    case Kind::Not: return quantifier_depth(f.body());
    case Kind::Forall:
    case Kind::Exists: return 1 + quantifier_depth(f.body());
    default: return std::max(quantifier_depth(f.lhs()), quantifier_depth(f.rhs()));
  }
}

int depth(const Formula& f) {
  switch (f.kind()) {
    case Kind::Atom: return 0;
    case Kind::Not:
    case Kind::Forall:
    case Kind::Exists: return 1 + depth(f.body());
    default: return 1 + std::max(depth(f.lhs()), depth(f.rhs()));
  }
}

bool uses_only(const Formula& f, std::initializer_list<Pred> preds) {
  bool ok = true;
  visit(f, [&](const Formula& g) {
    if (g.kind() == Kind::Atom && std::find(preds.begin(), preds.end(), g.pred()) == preds.end())
      ok = false;
  });
  return ok;
}

VarName fresh_name(const VarName& base, const VarSet& taken) {
  if (!taken.count(base)) return base;
  for (std::size_t k = 1;; ++k) {
    VarName cand = base + "_" + std::to_string(k);
    if (!taken.count(cand)) return cand;
  }
}

// ---------------------------------------------------------------------------
// Substitution

namespace {

Formula rename_free(const Formula& f, const VarName& from, const VarName& to);

Formula subst(const Formula& f, const VarName& from, const VarName& to) {
  switch (f.kind()) {
    case Kind::Atom: {
      auto args = f.args();
      bool changed = false;
      for (auto& a : args)
        if (a == from) {
          a = to;
          changed = true;
        }
      return changed ? make_atom(f.pred(), std::move(args)) : f;
    }
    case Kind::Not:
      return Not(subst(f.body(), from, to));
    case Kind::Forall:
    case Kind::Exists: {
      if (f.var() == from || !occurs_free(f.body(), from)) return f;
      if (f.var() != to) return make_quantifier(f.kind(), f.var(), subst(f.body(), from, to));
      // The binder would capture `to`: rename it first.
      VarSet taken = all_vars(f.body());
      taken.insert(from);
      taken.insert(to);
      const VarName fresh = fresh_name(f.var(), taken);
      Formula body = rename_free(f.body(), f.var(), fresh);
      return make_quantifier(f.kind(), fresh, subst(body, from, to));
    }
    default:
      return make_binary(f.kind(), subst(f.lhs(), from, to), subst(f.rhs(), from, to));
  }
}

Formula rename_free(const Formula& f, const VarName& from, const VarName& to) { return subst(f, from, to); }

}  // namespace

Formula substitute(const Formula& f, const VarName& from, const VarName& to) {
  if (from == to) return f;
  return subst(f, from, to);
}

// ---------------------------------------------------------------------------
// Alpha-equivalence

namespace {

// Positional names cannot be produced by the parser, so they never clash
// with free variables.
Formula canon(const Formula& f, std::vector<std::pair<VarName, VarName>>& scope, int& counter) {
  switch (f.kind()) {
    case Kind::Atom: {
      auto args = f.args();
      for (auto& a : args)
        for (auto it = scope.rbegin(); it != scope.rend(); ++it)
          if (it->first == a) {
            a = it->second;
            break;
          }
      return make_atom(f.pred(), std::move(args));
    }
    case Kind::Not:
      return Not(canon(f.body(), scope, counter));
    case Kind::Forall:
    case Kind::Exists: {
      VarName fresh = "#" + std::to_string(counter++);
      scope.emplace_back(f.var(), fresh);
      Formula body = canon(f.body(), scope, counter);
      scope.pop_back();
      return make_quantifier(f.kind(), std::move(fresh), std::move(body));
    }
    default: {
      Formula l = canon(f.lhs(), scope, counter);
      Formula r = canon(f.rhs(), scope, counter);
      return make_binary(f.kind(), std::move(l), std::move(r));
    }
  }
}

}  // namespace

Formula canonical(const Formula& f) {
  std::vector<std::pair<VarName, VarName>> scope;
  int counter = 0;
  return canon(f, scope, counter);
}

bool alpha_equal(const Formula& a, const Formula& b) { return canonical(a) == canonical(b); }

}  // namespace coext
