#include <doctest.h>

#include <random>

#include "coext/suite.hpp"

using namespace coext;

namespace {

bool raw_only(const Formula& f) { return uses_only(f, {Pred::In, Pred::Eq}); }

// set(y) written out by hand.
Formula set_by_hand(const VarName& y) {
  return Forall("m", Forall("n", Implies(Forall("z", Iff(In("z", "m"), In("z", "n"))), Iff(In("m", y), In("n", y)))));
}

}  // namespace

TEST_CASE("expand unfolds the starred predicates") {
  CHECK(alpha_equal(expand(EqStar("x", "y")), Forall("z", Iff(In("z", "x"), In("z", "y")))));
  CHECK(alpha_equal(expand(Set("x")), set_by_hand("x")));
  CHECK(alpha_equal(expand(At("x")), Not(set_by_hand("x"))));
  CHECK(alpha_equal(expand(InStar("x", "y")), And(set_by_hand("y"), In("x", "y"))));
  CHECK(expand(In("x", "y")) == In("x", "y"));
  const Formula raw = parse("all z. ex w. z in w & ~w = z");
  CHECK(expand(raw) == raw);
}

TEST_CASE("expansion avoids capturing user variables") {
  // m and n are user variables here; expansion must not bind them.
  const Formula f = expand(parse("set(m) & m in n"));
  CHECK(free_vars(f) == VarSet{"m", "n"});
  CHECK(raw_only(f));
  const Formula g = expand(parse("all z. z =* x"));
  CHECK(free_vars(g) == VarSet{"x"});
}

TEST_CASE("translate_zfa") {
  CHECK(alpha_equal(translate_zfa(Eq("x", "y")), expand(EqStar("x", "y"))));
  const Formula atoms = parse("all x. At(x) -> ~ex y. y in x");
  CHECK(alpha_equal(translate_zfa(atoms), expand(parse("all x. ~set(x) -> ~ex y. y in* x"))));
  const Formula weak = parse("all X. all Y. ~At(X) & ~At(Y) -> (all Z. (Z in X <-> Z in Y)) -> X = Y");
  CHECK(alpha_equal(translate_zfa_starred(weak),
                    parse("all X. all Y. ~~set(X) & ~~set(Y) -> (all Z. (Z in* X <-> Z in* Y)) -> X =* Y")));
  CHECK_THROWS_AS(translate_zfa(parse("x in* y")), TranslationError);
}

TEST_CASE("relativize_pure bounds every quantifier") {
  CHECK(alpha_equal(relativize_pure_starred(parse("all x. x in y")), parse("all x. Pure(x) -> x in* y")));
  CHECK(alpha_equal(relativize_pure_starred(parse("ex x. x = y")), parse("ex x. Pure(x) & x =* y")));
  CHECK_THROWS(relativize_pure(parse("set(x)")));
}

TEST_CASE("axiom instances") {
  const AxiomInstance prop1 = instantiate(proposition1());
  CHECK(alpha_equal(prop1.closed(),
                    parse("all A. ex B. all Y. (Y in B <-> ex X. (X in A & all Z. (Z in Y <-> Z in X)))")));
  const Formula built = build_axiom(proposition1());
  CHECK(free_vars(built).empty());
  CHECK(raw_only(built));

  const Formula weak = build_axiom({Axiom::WeakExt, std::nullopt});
  CHECK(free_vars(weak).empty());
  CHECK(raw_only(weak));

  // The parameter may not mention the witness variable.
  CHECK_THROWS_AS(instantiate({Axiom::ReplacementStar, parse("Z in B")}), SideConditionError);
  CHECK_THROWS_AS(instantiate({Axiom::SeparationStar, parse("y in w")}), SideConditionError);
  CHECK_THROWS_AS(instantiate({Axiom::PairingStar, parse("y in w")}), SideConditionError);
  CHECK_THROWS_AS(instantiate({Axiom::SeparationStar, std::nullopt}), SideConditionError);
  try {
    instantiate({Axiom::ReplacementStar, parse("Z in B")});
  } catch (const SideConditionError& e) {
    CHECK(std::string(e.what()).find("B") != std::string::npos);
  }
}

TEST_CASE("epsilon separation obligations and Scott's witness") {
  const auto ob = eps_separation_obligations(parse("ex u. u in y"));
  CHECK(ob.replacement.id.kind == Axiom::ReplacementStar);
  CHECK(alpha_equal(*ob.replacement.id.phi, parse("Z = X & ex u. u in X")));
  CHECK(ob.union_step.params == std::vector<VarName>{"C"});
  CHECK(alpha_equal(ob.target.body, parse("ex x. all y. (y in x <-> y in A & ex u. u in y)")));
  CHECK_THROWS_AS(eps_separation_obligations(parse("y in w")), SideConditionError);

  CHECK(alpha_equal(scott_derived_witness(parse("y =* x")), parse("ex k. (k =* X & Z in k)")));
}

TEST_CASE("axiom names round-trip") {
  for (Axiom a : {Axiom::ReplacementStar, Axiom::ScottReplacement, Axiom::UnionSchema, Axiom::EpsSeparation,
                  Axiom::WeakExt, Axiom::AtomsEmpty, Axiom::FoundationStar, Axiom::PairingStar, Axiom::UnionStar,
                  Axiom::PowerStar, Axiom::SeparationStar, Axiom::ReplacementStarZFA}) {
    const AxiomId id{a, std::nullopt};
    CHECK(axiom_from_name(id.name()) == a);
  }
  CHECK_FALSE(axiom_from_name("choice"));
}

TEST_CASE("property: expand is idempotent and raw") {
  std::mt19937_64 rng(3);
  const std::vector<Pred> preds{Pred::In, Pred::Eq, Pred::InStar, Pred::EqStar, Pred::Set, Pred::At};
  for (int i = 0; i < 1000; ++i) {
    const Formula f = random_formula(rng, 3, {"x", "y", "z"}, preds);
    const Formula e = expand(f);
    CHECK(raw_only(e));
    CHECK(expand(e) == e);
    CHECK(free_vars(e) == free_vars(f));
  }
}

TEST_CASE("property: expand commutes with substitution") {
  std::mt19937_64 rng(5);
  const std::vector<Pred> preds{Pred::In, Pred::InStar, Pred::EqStar, Pred::Set};
  for (int i = 0; i < 1000; ++i) {
    const Formula f = random_formula(rng, 3, {"a", "b", "c"}, preds);
    CHECK_MESSAGE(alpha_equal(expand(substitute(f, "a", "b")), substitute(expand(f), "a", "b")), to_string(f));
  }
}
