#include <unordered_set>

#include "coext/verify.hpp"

namespace coext {

namespace {

class CorpusBuilder {
 public:
  void add(const Formula& f) {
    if (seen_.insert(to_string(canonical(f))).second) out_.push_back(f);
  }
  std::vector<Formula> take() { return std::move(out_); }

 private:
  std::unordered_set<std::string> seen_;
  std::vector<Formula> out_;
};

std::vector<Formula> atoms_over(const std::vector<VarName>& vars, const std::vector<Pred>& preds) {
  std::vector<Formula> out;
  for (Pred p : preds) {
    if (arity(p) == 1) {
      for (const auto& v : vars) out.push_back(make_atom(p, {v}));
    } else {
      for (const auto& a : vars)
        for (const auto& b : vars) out.push_back(make_atom(p, {a, b}));
    }
  }
  return out;
}

bool commutative(Kind k) { return k == Kind::And || k == Kind::Or || k == Kind::Iff; }

std::vector<Formula> layer(int depth, const std::vector<VarName>& vars, const std::vector<Pred>& preds) {
  const std::vector<Formula> atoms = atoms_over(vars, preds);
  if (depth == 0) {
    CorpusBuilder b;
    for (const auto& a : atoms) b.add(a);
    return b.take();
  }
  const std::vector<Formula> below = layer(depth - 1, vars, preds);
  CorpusBuilder b;
  for (const auto& f : below) b.add(f);
  for (const auto& f : below) b.add(Not(f));

  for (Kind k : {Kind::And, Kind::Or, Kind::Implies, Kind::Iff}) {
    for (std::size_t i = 0; i < below.size(); ++i) {
      for (std::size_t j = 0; j < atoms.size(); ++j) {
        const Formula& f = below[i];
        const Formula& a = atoms[j];
        if (f == a) continue;
        // On the atomic layer each unordered pair of a commutative
        // connective is taken once.
        if (depth == 1 && commutative(k) && j < i) continue;
        b.add(make_binary(k, f, a));
        if (!commutative(k) && depth > 1) b.add(make_binary(k, a, f));
      }
    }
  }

  VarSet taken(vars.begin(), vars.end());
  const VarName u = fresh_name("u", taken);
  std::vector<VarName> wider = vars;
  wider.push_back(u);
  for (const auto& f : layer(depth - 1, wider, preds)) {
    if (!occurs_free(f, u)) continue;
    b.add(Forall(u, f));
    b.add(Exists(u, f));
  }
  return b.take();
}

}  // namespace

std::vector<Formula> corpus(int depth, const std::vector<VarName>& vars, const std::vector<Pred>& atoms) {
  if (depth < 0 || depth > 3) throw std::out_of_range("corpus depth must be 0..3");
  if (vars.empty()) throw std::invalid_argument("corpus needs at least one variable");
  return layer(depth, vars, atoms);
}

}  // namespace coext
