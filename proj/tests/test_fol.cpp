#include <doctest.h>

#include <random>

#include "coext/suite.hpp"

using namespace coext;

TEST_CASE("parse maps the grammar onto the tree") {
  CHECK(parse("all z. (z in x <-> z in y)") == Forall("z", Iff(In("z", "x"), In("z", "y"))));
  CHECK(parse("x =* y") == EqStar("x", "y"));
  CHECK(parse("x in* y") == InStar("x", "y"));
  CHECK(parse("set(x) & At(y)") == And(Set("x"), At("y")));
  CHECK(parse("~x = y") == Not(Eq("x", "y")));
}

TEST_CASE("precedence and associativity") {
  CHECK(parse("a in b & b in c | c in a") == Or(And(In("a", "b"), In("b", "c")), In("c", "a")));
  CHECK(parse("a in b -> b in c -> c in a") == Implies(In("a", "b"), Implies(In("b", "c"), In("c", "a"))));
  CHECK(parse("a in b <-> b in c -> c in a") == Iff(In("a", "b"), Implies(In("b", "c"), In("c", "a"))));
  // Quantifier scope runs to the end.
  CHECK(parse("all x. x in y & y in x") == Forall("x", And(In("x", "y"), In("y", "x"))));
  CHECK(parse("(all x. x in y) & y in x") == And(Forall("x", In("x", "y")), In("y", "x")));
}

TEST_CASE("syntax errors carry an offset") {
  try {
    parse("set(");
    FAIL("no error");
  } catch (const ParseError& e) {
    CHECK(e.offset() == 4);
  }
  CHECK_THROWS_AS(parse("foo(x)"), ParseError);
  CHECK_THROWS_AS(parse("x in"), ParseError);
  CHECK_THROWS_AS(parse("x in y)"), ParseError);
  CHECK_THROWS_AS(parse("_v0 in y"), ParseError);
  CHECK(parse("_v0 in y", {true}) == In("_v0", "y"));
}

TEST_CASE("free variables") {
  CHECK(free_vars(In("x", "y")) == VarSet{"x", "y"});
  CHECK(free_vars(Forall("x", In("x", "y"))) == VarSet{"y"});
  CHECK(free_vars(Forall("x", Exists("y", Iff(In("x", "y"), Eq("x", "y"))))).empty());
  CHECK(free_vars(And(In("x", "y"), Forall("x", In("x", "x")))) == VarSet{"x", "y"});
}

TEST_CASE("substitution avoids capture") {
  CHECK(substitute(In("y", "A"), "y", "x") == In("x", "A"));
  const Formula renamed = substitute(Forall("x", In("y", "x")), "y", "x");
  CHECK(renamed.kind() == Kind::Forall);
  CHECK(renamed.var() != "x");
  CHECK(renamed.body() == In("x", renamed.var()));
  CHECK(alpha_equal(renamed, Forall("x1", In("x", "x1"))));
  CHECK(substitute(Forall("y", In("y", "A")), "y", "x") == Forall("y", In("y", "A")));
}

TEST_CASE("fresh names never collide") {
  CHECK(fresh_name("u", {}) == "u");
  CHECK(fresh_name("u", {"u"}) == "u_1");
  CHECK(fresh_name("u", {"u", "u_1"}) == "u_2");
}

TEST_CASE("alpha equivalence") {
  CHECK(alpha_equal(parse("all a. a in y"), parse("all b. b in y")));
  CHECK_FALSE(alpha_equal(parse("all a. a in y"), parse("all y. y in y")));
  CHECK(alpha_equal(parse("ex a. all b. b in a"), parse("ex c. all a. a in c")));
}

TEST_CASE("property: print then parse round-trips") {
  std::mt19937_64 rng(7);
  const std::vector<Pred> preds{Pred::In, Pred::Eq, Pred::InStar, Pred::EqStar, Pred::Set, Pred::At};
  for (int i = 0; i < 2000; ++i) {
    const Formula f = random_formula(rng, 4, {"x", "y", "z"}, preds);
    const Formula g = parse(to_string(f));
    CHECK_MESSAGE(alpha_equal(f, g), to_string(f));
  }
  for (const auto& f : corpus(2, {"y", "w"}, {Pred::InStar, Pred::EqStar})) REQUIRE(alpha_equal(f, parse(to_string(f))));
}

TEST_CASE("property: substitution composes through a fresh variable") {
  std::mt19937_64 rng(11);
  const std::vector<Pred> preds{Pred::In, Pred::Eq};
  for (int i = 0; i < 2000; ++i) {
    const Formula f = random_formula(rng, 3, {"a", "c", "z"}, preds);
    // b is fresh for f.
    const Formula two = substitute(substitute(f, "a", "b"), "b", "c");
    CHECK_MESSAGE(alpha_equal(two, substitute(f, "a", "c")), to_string(f));
  }
}

TEST_CASE("property: substitution leaves no free source and captures nothing") {
  std::mt19937_64 rng(13);
  for (int i = 0; i < 2000; ++i) {
    const Formula f = random_formula(rng, 3, {"x", "y", "z"}, {Pred::In, Pred::EqStar});
    const Formula g = substitute(f, "y", "x");
    CHECK_FALSE(occurs_free(g, "y"));
    VarSet expect = free_vars(f);
    if (expect.erase("y")) expect.insert("x");
    CHECK(free_vars(g) == expect);
  }
}

TEST_CASE("depth measures") {
  const Formula f = parse("all x. ex y. x in y & ~y in x");
  CHECK(quantifier_depth(f) == 2);
  CHECK(depth(f) == 4);
  CHECK(uses_only(f, {Pred::In}));
  CHECK_FALSE(uses_only(parse("x =* y"), {Pred::In}));
}
