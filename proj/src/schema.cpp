#include <algorithm>
#include <array>

#include "coext/verify.hpp"

namespace coext {

namespace {

constexpr std::array<std::pair<SchemaId, std::string_view>, 5> kSchemaNames{{
    {SchemaId::Lemma1, "lemma1"},
    {SchemaId::Corollary1, "corollary1"},
    {SchemaId::Corollary3, "corollary3"},
    {SchemaId::Subsidiary1, "subsidiary1"},
    {SchemaId::Lemma2, "lemma2"},
}};

bool starred_only(const Formula& f) { return uses_only(f, {Pred::InStar, Pred::EqStar}); }

// Wide enough for the expanded starred atoms some corpora carry.
constexpr EvalOptions kSchemaEval{8};

}  // namespace

std::string_view schema_name(SchemaId id) {
  for (const auto& [k, n] : kSchemaNames)
    if (k == id) return n;
  return "?";
}

std::optional<SchemaId> schema_from_name(std::string_view name) {
  for (const auto& [k, n] : kSchemaNames)
    if (n == name) return k;
  return std::nullopt;
}

SchemaCheck::SchemaCheck(SchemaId id, const std::vector<Formula>& corpus, SchemaOptions opts) : id_(id), opts_(opts) {
  auto reject = [&](const Formula& phi, const std::string& why) {
    throw SignatureError(std::string(schema_name(id)) + ": " + why + ": " + to_string(phi));
  };
  auto add = [&](std::string tag, std::optional<Formula> ante, const Formula& cons) {
    Formula printed = ante ? Implies(*ante, cons) : cons;
    std::optional<CompiledFormula> ca;
    if (ante) ca.emplace(*ante, kSchemaEval);
    clauses_.push_back({std::move(tag), std::move(ca), CompiledFormula(cons, kSchemaEval), std::move(printed)});
  };

  for (const auto& phi : corpus) {
    switch (id) {
      case SchemaId::Lemma1: {
        // y free and only free, x absent; phi over =*, in* only.
        const bool shape = occurs_free(phi, "y") && !bound_vars(phi).count("y") && !occurs(phi, "x");
        const bool language = starred_only(phi);
        if (shape != language) ++flagged_;
        if (!language && opts_.enforce_signature) reject(phi, "phi must use only =*, in*");
        if (!shape) continue;
        add("lemma1", EqStar("x", "y"), Iff(phi, substitute(phi, "y", "x")));
        break;
      }
      case SchemaId::Corollary1:
      case SchemaId::Corollary3: {
        if (occurs(phi, "x")) reject(phi, "x must not occur in phi");
        if (!starred_only(phi)) {
          if (opts_.enforce_signature) reject(phi, "phi must use only =*, in*");
          ++flagged_;
        }
        Formula raw_def = Forall("y", Iff(In("y", "x"), phi));
        if (id == SchemaId::Corollary1) {
          add("corollary1", raw_def, Set("x"));
          break;
        }
        Formula star_def = Forall("y", Iff(InStar("y", "x"), phi));
        if (opts_.literal_biconditional) {
          add("corollary3", std::nullopt, Iff(raw_def, star_def));
        } else {
          add("corollary3-forward", raw_def, star_def);
          add("corollary3-sets", Set("x"), Iff(raw_def, star_def));
        }
        break;
      }
      case SchemaId::Subsidiary1: {
        if (occurs(phi, "x") || occurs(phi, "y")) reject(phi, "x, y must not occur in phi");
        Formula lhs = Forall("z", Iff(In("z", "y"), phi));
        Formula rhs = Forall("z", Iff(In("z", "x"), phi));
        if (opts_.literal_biconditional)
          add("subsidiary1", std::nullopt, Iff(EqStar("x", "y"), Iff(lhs, rhs)));
        else
          add("subsidiary1", EqStar("x", "y"), Iff(lhs, rhs));
        break;
      }
      case SchemaId::Lemma2: {
        if (occurs(phi, "x") || occurs(phi, "y") || occurs(phi, "k")) reject(phi, "x, y, k must not occur in phi");
        add("lemma2", Forall("y", Iff(In("y", "x"), Forall("z", Iff(In("z", "y"), phi)))), Set("x"));
        break;
      }
    }
  }
}

std::string SchemaCheck::name() const { return std::string(schema_name(id_)); }

Report SchemaCheck::run(const MemStructure& s) const {
  Report r(name());
  r.structures = 1;
  const Semantics sem(s);
  const auto n = static_cast<NodeId>(s.size());
  std::vector<NodeId> values, sub, scratch;

  for (const auto& c : clauses_) {
    // Iterate the consequent's variables together with the antecedent's.
    VarSet vs(c.consequent.free_vars().begin(), c.consequent.free_vars().end());
    if (c.antecedent) vs.insert(c.antecedent->free_vars().begin(), c.antecedent->free_vars().end());
    const std::vector<VarName> vars(vs.begin(), vs.end());
    auto positions = [&](const CompiledFormula& cf) {
      std::vector<std::size_t> pos;
      for (const auto& v : cf.free_vars()) pos.push_back(std::find(vars.begin(), vars.end(), v) - vars.begin());
      return pos;
    };
    const auto cons_pos = positions(c.consequent);
    const auto ante_pos = c.antecedent ? positions(*c.antecedent) : std::vector<std::size_t>{};
    auto eval_at = [&](const CompiledFormula& cf, const std::vector<std::size_t>& pos) {
      sub.resize(pos.size());
      for (std::size_t i = 0; i < pos.size(); ++i) sub[i] = values[pos[i]];
      return cf.eval(sem, sub, scratch);
    };

    if (!vars.empty() && n == 0) continue;
    values.assign(vars.size(), 0);
    for (;;) {
      ++r.instances;
      if (!c.antecedent || eval_at(*c.antecedent, ante_pos)) {
        ++r.realized;
        if (!eval_at(c.consequent, cons_pos)) {
          Counterexample ce;
          ce.structure = s;
          ce.formula = to_string(c.printed);
          ce.clause = c.tag;
          for (std::size_t i = 0; i < vars.size(); ++i) ce.assignment.emplace_back(vars[i], values[i]);
          r.fail(std::move(ce));
          return r;
        }
      }
      std::size_t i = vars.size();
      while (i > 0) {
        if (++values[i - 1] < n) break;
        values[i - 1] = 0;
        --i;
      }
      if (i == 0) break;
    }
  }
  return r;
}

Report check_schema(const MemStructure& s, SchemaId id, const std::vector<Formula>& corpus, SchemaOptions opts) {
  SchemaCheck check(id, corpus, opts);
  Report r = check.run(s);
  if (check.flagged()) r.notes.push_back(std::to_string(check.flagged()) + " corpus formulas met only one restriction");
  return r;
}

Report check_subsidiary2(const MemStructure& s) {
  Report r("subsidiary2");
  r.structures = 1;
  const auto n = static_cast<NodeId>(s.size());
  for (NodeId x = 0; x < n; ++x)
    for (NodeId a = 0; a < n; ++a) {
      const NodeSet& ea = s.members(a);
      const bool x_sub = std::includes(ea.begin(), ea.end(), s.members(x).begin(), s.members(x).end());
      for (NodeId y = 0; y < n; ++y) {
        ++r.instances;
        if (!x_sub || !coextensional(s, x, y)) continue;
        ++r.realized;
        if (!std::includes(ea.begin(), ea.end(), s.members(y).begin(), s.members(y).end())) {
          Counterexample ce;
          ce.structure = s;
          ce.formula = to_string(Implies(And(Forall("z", Implies(In("z", "X"), In("z", "A"))), EqStar("X", "Y")),
                                         Forall("z", Implies(In("z", "Y"), In("z", "A")))));
          ce.assignment = {{"A", a}, {"X", x}, {"Y", y}};
          ce.clause = "subsidiary2";
          r.fail(std::move(ce));
          return r;
        }
      }
    }
  return r;
}

}  // namespace coext
