#include "coext/eval.hpp"

namespace coext {

CompiledFormula::CompiledFormula(const Formula& f, EvalOptions opts) : source_(f) {
  const int q = quantifier_depth(f);
  if (q > opts.max_quantifier_depth)
    throw EvalError("quantifier depth " + std::to_string(q) + " exceeds limit " +
                    std::to_string(opts.max_quantifier_depth));
  const VarSet fv = coext::free_vars(f);
  free_.assign(fv.begin(), fv.end());
  std::vector<std::pair<VarName, std::uint32_t>> scope;
  for (std::uint32_t i = 0; i < free_.size(); ++i) scope.emplace_back(free_[i], i);
  slots_ = free_.size();
  root_ = compile(f, scope);
}

std::uint32_t CompiledFormula::compile(const Formula& f, std::vector<std::pair<VarName, std::uint32_t>>& scope) {
  auto lookup = [&](const VarName& v) {
    for (auto it = scope.rbegin(); it != scope.rend(); ++it)
      if (it->first == v) return it->second;
    throw std::logic_error("unresolved variable " + v);
  };
  Op op{f.kind(), Pred::In};
  switch (f.kind()) {
    case Kind::Atom:
      op.pred = f.pred();
      op.a = lookup(f.args()[0]);
      if (f.args().size() > 1) op.b = lookup(f.args()[1]);
      break;
    case Kind::Not:
      op.l = compile(f.body(), scope);
      break;
    case Kind::Forall:
    case Kind::Exists: {
      op.a = static_cast<std::uint32_t>(slots_++);
      scope.emplace_back(f.var(), op.a);
      op.l = compile(f.body(), scope);
      scope.pop_back();
      break;
    }
    default:
      op.l = compile(f.lhs(), scope);
      op.r = compile(f.rhs(), scope);
  }
  ops_.push_back(op);
  return static_cast<std::uint32_t>(ops_.size() - 1);
}

bool CompiledFormula::run(std::uint32_t i, const Semantics& sem, NodeId* env) const {
  const Op& op = ops_[i];
  switch (op.kind) {
    case Kind::Atom: {
      const NodeId x = env[op.a];
      const NodeId y = env[op.b];
      switch (op.pred) {
        case Pred::In: return sem.mem(x, y);
        case Pred::Eq: return x == y;
        case Pred::InStar: return sem.memstar(x, y);
        case Pred::EqStar: return sem.coext(x, y);
        case Pred::Set: return sem.is_set(x);
        case Pred::At: return !sem.is_set(x);
        case Pred::Pure: return sem.is_pure(x);
      }
      return false;
    }
    case Kind::Not: return !run(op.l, sem, env);
    case Kind::And: return run(op.l, sem, env) && run(op.r, sem, env);
    case Kind::Or: return run(op.l, sem, env) || run(op.r, sem, env);
    case Kind::Implies: return !run(op.l, sem, env) || run(op.r, sem, env);
    case Kind::Iff: return run(op.l, sem, env) == run(op.r, sem, env);
    case Kind::Forall: {
      const auto n = static_cast<NodeId>(sem.size());
      for (NodeId v = 0; v < n; ++v) {
        env[op.a] = v;
        if (!run(op.l, sem, env)) return false;
      }
      return true;
    }
    case Kind::Exists: {
      const auto n = static_cast<NodeId>(sem.size());
      for (NodeId v = 0; v < n; ++v) {
        env[op.a] = v;
        if (run(op.l, sem, env)) return true;
      }
      return false;
    }
  }
  return false;
}

bool CompiledFormula::eval(const Semantics& sem, std::span<const NodeId> values, std::vector<NodeId>& scratch) const {
  if (values.size() != free_.size()) throw EvalError("wrong number of free-variable values");
  scratch.resize(std::max<std::size_t>(slots_, 1));
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] >= sem.size()) throw EvalError("variable " + free_[i] + " assigned to a node out of range");
    scratch[i] = values[i];
  }
  return run(root_, sem, scratch.data());
}

bool CompiledFormula::eval(const Semantics& sem, std::span<const NodeId> values) const {
  std::vector<NodeId> scratch;
  return eval(sem, values, scratch);
}

namespace {

std::vector<NodeId> bind(const CompiledFormula& cf, const Assignment& rho) {
  std::vector<NodeId> values;
  for (const auto& v : cf.free_vars()) {
    auto it = rho.find(v);
    if (it == rho.end()) throw EvalError("unbound free variable " + v);
    values.push_back(it->second);
  }
  return values;
}

}  // namespace

bool eval(const Semantics& sem, const Formula& f, const Assignment& rho, EvalOptions opts) {
  CompiledFormula cf(f, opts);
  return cf.eval(sem, bind(cf, rho));
}

bool eval(const MemStructure& s, const Formula& f, const Assignment& rho, EvalOptions opts) {
  Semantics sem(s);
  return eval(sem, f, rho, opts);
}

std::optional<std::vector<Binding>> find_falsifying(const Semantics& sem, const CompiledFormula& f) {
  const std::size_t k = f.free_vars().size();
  const auto n = static_cast<NodeId>(sem.size());
  std::vector<NodeId> values(k, 0);
  std::vector<NodeId> scratch;
  if (k > 0 && n == 0) return std::nullopt;
  for (;;) {
    if (!f.eval(sem, values, scratch)) {
      std::vector<Binding> out;
      for (std::size_t i = 0; i < k; ++i) out.emplace_back(f.free_vars()[i], values[i]);
      return out;
    }
    // Odometer with the last variable fastest.
    std::size_t i = k;
    while (i > 0) {
      if (++values[i - 1] < n) break;
      values[i - 1] = 0;
      --i;
    }
    if (i == 0) return std::nullopt;
  }
}

bool eval_all_assignments(const MemStructure& s, const Formula& f, EvalOptions opts) {
  Semantics sem(s);
  CompiledFormula cf(f, opts);
  return !find_falsifying(sem, cf).has_value();
}

NodeSet defined_extension(const Semantics& sem, const Formula& f, const VarName& var, const Assignment& rho,
                          EvalOptions opts) {
  CompiledFormula cf(f, opts);
  std::vector<NodeId> values;
  std::size_t pos = cf.free_vars().size();
  for (std::size_t i = 0; i < cf.free_vars().size(); ++i) {
    const auto& v = cf.free_vars()[i];
    if (v == var) {
      pos = i;
      values.push_back(0);
      continue;
    }
    auto it = rho.find(v);
    if (it == rho.end()) throw EvalError("unbound free variable " + v);
    values.push_back(it->second);
  }
  NodeSet out;
  std::vector<NodeId> scratch;
  for (NodeId y = 0; y < sem.size(); ++y) {
    if (pos < values.size()) values[pos] = y;
    if (cf.eval(sem, values, scratch)) out.push_back(y);
  }
  return out;
}

}  // namespace coext
