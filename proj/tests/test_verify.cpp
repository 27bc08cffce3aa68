#include <doctest.h>

#include "coext/suite.hpp"

using namespace coext;

namespace {

const std::vector<Pred> kStarred{Pred::InStar, Pred::EqStar};

Report exhaustive_schema(SchemaId id, const std::vector<Formula>& phis, std::size_t n, SchemaOptions o = {},
                         std::size_t jobs = 1) {
  const SchemaCheck c(id, phis, o);
  return run_exhaustive("t", n, [&](const MemStructure& s) { return c.run(s); }, jobs);
}

bool contains(const std::vector<Formula>& fs, const std::string& text) {
  const Formula f = parse(text);
  for (const auto& g : fs)
    if (alpha_equal(f, g)) return true;
  return false;
}

}  // namespace

TEST_CASE("corpus") {
  const auto c0 = corpus(0, {"y", "w"}, kStarred);
  CHECK(c0.size() == 8);
  CHECK(contains(c0, "y in* w"));
  CHECK(contains(c0, "w in* y"));
  CHECK(contains(c0, "y =* w"));
  const auto c1 = corpus(1, {"y", "w"}, kStarred);
  CHECK(c1.size() == 176);
  CHECK(contains(c1, "~y in* w"));
  CHECK(contains(c1, "all u. u in* y"));
  CHECK(corpus(2, {"y", "w"}, kStarred).size() == 8434);
  CHECK_THROWS(corpus(4, {"y"}, kStarred));
  // Alpha-duplicates are dropped.
  for (std::size_t i = 0; i < c1.size(); ++i)
    for (std::size_t j = i + 1; j < c1.size(); ++j) REQUIRE_FALSE(alpha_equal(c1[i], c1[j]));
}

TEST_CASE("lemma 1 holds on n <= 3 and the raw control fails") {
  const auto phis = corpus(1, {"y", "w"}, kStarred);
  const Report good = exhaustive_schema(SchemaId::Lemma1, phis, 3);
  CHECK(good.passed);
  CHECK(good.structures == 2 + 16 + 512);
  CHECK(good.realized > 0);

  CHECK_THROWS_AS(SchemaCheck(SchemaId::Lemma1, {parse("y in w")}), SignatureError);
  SchemaOptions loose;
  loose.enforce_signature = false;
  const Report bad = exhaustive_schema(SchemaId::Lemma1, corpus(1, {"y", "w"}, {Pred::In, Pred::Eq}), 3, loose);
  REQUIRE_FALSE(bad.passed);
  // The dump replays.
  const auto& ce = *bad.counterexample;
  Assignment rho(ce.assignment.begin(), ce.assignment.end());
  CHECK_FALSE(eval(ce.structure, parse(ce.formula, {true}), rho));
}

TEST_CASE("sharding does not change the report") {
  SchemaOptions loose;
  loose.enforce_signature = false;
  const auto phis = corpus(1, {"y", "w"}, {Pred::In, Pred::Eq});
  const Report one = exhaustive_schema(SchemaId::Lemma1, phis, 3, loose, 1);
  const Report four = exhaustive_schema(SchemaId::Lemma1, phis, 3, loose, 4);
  CHECK(to_record(one) == to_record(four));
  CHECK(one.instances == four.instances);
  CHECK(one.realized == four.realized);
}

TEST_CASE("corollary 1 example") {
  const MemStructure s = parse_structure("nodes 3\nmem 0 2\nmem 1 2\n");
  const Report r = check_schema(s, SchemaId::Corollary1, {parse("y =* w")});
  CHECK(r.passed);
  CHECK(r.realized >= 1);
  // x = 2, w = 0 realizes the antecedent.
  CHECK(eval(s, parse("all y. (y in x <-> y =* w)"), {{"x", 2}, {"w", 0}}));
}

TEST_CASE("the literal biconditional readings fail") {
  SchemaOptions lit;
  lit.literal_biconditional = true;
  CHECK_FALSE(exhaustive_schema(SchemaId::Subsidiary1, corpus(1, {"z", "w"}, kStarred), 2, lit).passed);
  CHECK_FALSE(exhaustive_schema(SchemaId::Corollary3, corpus(1, {"y", "w"}, kStarred), 2, lit).passed);
  CHECK(exhaustive_schema(SchemaId::Subsidiary1, corpus(1, {"z", "w"}, kStarred), 3).passed);
  CHECK(exhaustive_schema(SchemaId::Corollary3, corpus(1, {"y", "w"}, kStarred), 3).passed);
}

TEST_CASE("validities on small structures") {
  for (Axiom a : {Axiom::WeakExt, Axiom::AtomsEmpty})
    CHECK(run_exhaustive("v", 3, [a](const MemStructure& s) { return check_axiom(s, {a, std::nullopt}); }).passed);
  auto acyclic = [](const MemStructure& s) {
    for (const auto& r : ranks(s))
      if (!r) return false;
    return true;
  };
  CHECK(run_exhaustive("f", 3, [](const MemStructure& s) { return check_axiom(s, {Axiom::FoundationStar, std::nullopt}); },
                       1, acyclic)
            .passed);
  CHECK(run_exhaustive("s2", 3, check_subsidiary2).passed);
  CHECK(run_exhaustive("l2", 3, [](const MemStructure& s) {
          return check_schema(s, SchemaId::Lemma2, corpus(1, {"z", "w"}, kStarred));
        }).passed);
}

TEST_CASE("witness axioms on HF(3) with doppelgangers") {
  const MemStructure raw = add_doppelgangers(build_hf(3), {{0, 2}, {1, 1}});
  // Unclosed, the pair {{}, {}} has no starred witness: nothing holds all
  // three empty nodes.
  const Report open = check_axiom(raw, {Axiom::PairingStar, std::nullopt}, Bounds::rank_at_most(raw, 1));
  REQUIRE_FALSE(open.passed);
  CHECK(open.counterexample->assignment == std::vector<Binding>{{"A", 0}, {"B", 0}});

  const ClosedFamily fam = closed_family(default_family_spec());
  const MemStructure& s = fam.structure;
  const Report pairs = check_axiom(s, {Axiom::PairingStar, std::nullopt}, Bounds::rank_at_most(s, 1));
  CHECK(pairs.passed);
  CHECK(pairs.realized > 9);
  CHECK_THROWS_AS(check_axiom(s, {Axiom::PairingStar, std::nullopt}, Bounds::nodes({0, 9999})), std::out_of_range);
}

TEST_CASE("Scott's schema") {
  const MemStructure s = add_doppelgangers(build_hf(2), {{0, 1}});
  const MemStructure closed = [&] {
    MemStructure t = s;
    const NodeId w = t.add_node("empties");
    t.add_edge(0, w);
    t.add_edge(4, w);
    return t;
  }();
  const Report r = check_scott(closed, {parse("y =* x")}, Bounds::nodes({1}));
  CHECK(r.passed);
  CHECK(r.realized == 1);
  CHECK_FALSE(check_scott(s, {parse("y =* x")}, Bounds::nodes({1})).passed);

  // phi false: B is empty, and the derivation passes through {{}, {}'}.
  const Report none = check_scott(closed, {parse("~y = y")}, {});
  CHECK(none.passed);
  CHECK(none.realized == closed.size());
  CHECK_FALSE(check_scott(s, {parse("~y = y")}, {}).passed);

  const Report vacuous = check_scott(s, {parse("y in x")}, {});
  CHECK(vacuous.passed);
  CHECK(vacuous.realized == 0);
}

TEST_CASE("successor step") {
  // 0 = {}, 1 = {}', 2 = {0}, 3 = {0,1}, 4 = {0,2}, 5 = {0,1,3}.
  const MemStructure s =
      parse_structure("nodes 6\nmem 0 2\nmem 0 3\nmem 1 3\nmem 0 4\nmem 2 4\nmem 0 5\nmem 1 5\nmem 3 5\n");
  CHECK(find_successor(s, 0) == NodeId{2});
  CHECK(find_successor(s, 2) == NodeId{4});
  CHECK(check_infinity_step(s, 0).passed);
  CHECK(check_infinity_step(s, 2).passed);

  const MemStructure missing = parse_structure("nodes 3\nmem 0 2\n");
  const Report r = check_infinity_step(missing, 0);
  REQUIRE_FALSE(r.passed);
  CHECK(r.counterexample->clause == "a");
}

TEST_CASE("closed family") {
  const FamilySpec spec = default_family_spec();
  CHECK(spec.separation_corpus.size() >= 30);
  CHECK(functional_corpus().size() == 5);
  const ClosedFamily fam = closed_family(spec);
  CHECK(fam.converged);
  CHECK(fam.base_nodes == 16);
  CHECK(fam.structure.size() > 19);
  // Closure only adds edges into new nodes, so the original extensions are
  // untouched.
  for (NodeId x = 19; x < fam.structure.size(); ++x)
    for (NodeId c : fam.structure.containers(x)) CHECK(c > x);
  const MemStructure base = add_doppelgangers(build_hf(3), spec.doppelgangers);
  for (NodeId x = 0; x < base.size(); ++x) CHECK(fam.structure.members(x) == base.members(x));
}

TEST_CASE("records round-trip") {
  Report r("lemma1");
  Counterexample ce;
  ce.structure = parse_structure("nodes 2\nmem 0 1\n");
  ce.formula = "x in y";
  ce.assignment = {{"x", 1}, {"y", 0}};
  ce.clause = "lemma1";
  r.fail(ce);
  const ReplayRecord rec = parse_record(to_record(r));
  CHECK(rec.check == "lemma1");
  CHECK(rec.structure == ce.structure);
  CHECK(rec.formula == "x in y");
  CHECK(rec.assignment == ce.assignment);
  CHECK(to_record(Report("ok")).empty());
  CHECK_THROWS(parse_record("{not json"));
}
