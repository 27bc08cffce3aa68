#include <doctest.h>

#include <deque>

#include "coext/suite.hpp"

using namespace coext;

namespace {

MemStructure S(const std::string& text) { return parse_structure(text); }

// Oracles, written against the definitions and nothing else.
bool oracle_set(const MemStructure& s, NodeId y) {
  for (NodeId m = 0; m < s.size(); ++m)
    for (NodeId n = 0; n < s.size(); ++n)
      if (s.members(m) == s.members(n) && s.has_edge(m, y) != s.has_edge(n, y)) return false;
  return true;
}

bool eval_set(const MemStructure& s, NodeId y) { return eval(s, expand(Set("y")), {{"y", y}}); }

NodeSet oracle_reach(const MemStructure& s, NodeId x) {
  std::vector<char> seen(s.size(), 0);
  std::deque<NodeId> todo;
  for (NodeId z = 0; z < s.size(); ++z)
    if (s.has_edge(z, x)) todo.push_back(z);
  while (!todo.empty()) {
    NodeId y = todo.front();
    todo.pop_front();
    if (seen[y]) continue;
    seen[y] = 1;
    for (NodeId z = 0; z < s.size(); ++z)
      if (s.has_edge(z, y)) todo.push_back(z);
  }
  NodeSet out;
  for (NodeId y = 0; y < s.size(); ++y)
    if (seen[y]) out.push_back(y);
  return out;
}

template <class Fn>
void all_small(Fn&& fn, std::size_t max_nodes = 3) {
  for (std::size_t n = 1; n <= max_nodes; ++n) for_each_structure(n, false, [&](std::uint64_t, const MemStructure& s) { fn(s); });
}

}  // namespace

TEST_CASE("structure files") {
  const MemStructure s = S("# a comment\nnodes 3\n\nmem 0 2\nlabel 2 two\n");
  CHECK(s.size() == 3);
  CHECK(s.has_edge(0, 2));
  CHECK_FALSE(s.has_edge(2, 0));
  CHECK(s.label(2) == "two");
  CHECK(parse_structure(to_text(s)) == s);
  CHECK(brief(s) == "<3; 0->2>");
  CHECK_THROWS_AS(S("nodes 2\nmem 0 5\n"), StructureFormatError);
  CHECK_THROWS_AS(S("mem 0 1\n"), StructureFormatError);
  CHECK_THROWS_AS(S("nodes 2\nedge 0 1\n"), StructureFormatError);
  CHECK(S("nodes 0\n").size() == 0);
}

TEST_CASE("extensions and classes") {
  const MemStructure s = S("nodes 3\nmem 0 2\n");
  CHECK(extension(s, 2) == NodeSet{0});
  CHECK(extension(s, 0).empty());
  CHECK(extension(S("nodes 1\nmem 0 0\n"), 0) == NodeSet{0});
  CHECK_THROWS(extension(s, 3));

  const Partition p = coext_classes(s);
  CHECK(p.classes == std::vector<NodeSet>{{0, 1}, {2}});
  CHECK(coext_classes(S("nodes 2\n")).classes == std::vector<NodeSet>{{0, 1}});
  CHECK(coext_classes(S("nodes 2\nmem 0 1\n")).classes == std::vector<NodeSet>{{0}, {1}});
}

TEST_CASE("sethood and starred membership") {
  const MemStructure half = S("nodes 3\nmem 0 2\n");
  const MemStructure full = S("nodes 3\nmem 0 2\nmem 1 2\n");
  CHECK_FALSE(is_set(half, 2));
  CHECK(is_set(full, 2));
  CHECK(is_set(half, 0));
  CHECK_FALSE(memstar(half, 0, 2));
  CHECK(memstar(full, 0, 2));
  CHECK(at(half, 2));
  CHECK_FALSE(at(full, 2));
}

TEST_CASE("quotient examples") {
  const Quotient a = quotient(S("nodes 3\nmem 0 2\nmem 1 2\n"));
  CHECK(a.structure.size() == 2);
  CHECK(a.structure.members(a.collapse[2]) == NodeSet{a.collapse[0]});
  CHECK(a.collapse[0] == a.collapse[1]);

  const Quotient b = quotient(S("nodes 2\n"));
  CHECK(b.structure.size() == 1);
  CHECK(b.structure.edges().empty());

  const Quotient c = quotient(S("nodes 3\nmem 0 2\n"));
  CHECK(c.structure.size() == 2);
  CHECK(c.structure.edges().empty());
}

TEST_CASE("iterated unions and transitive closure") {
  // b = 0, a = 1, x = 2: b in a in x.
  const MemStructure s = S("nodes 3\nmem 0 1\nmem 1 2\n");
  CHECK(iterated_union(s, 2, 0) == NodeSet{1});
  CHECK(iterated_union(s, 2, 1) == NodeSet{0});
  CHECK(iterated_union(s, 2, 2).empty());
  CHECK(tc(s, 2) == NodeSet{0, 1});
  CHECK(tc(S("nodes 1\nmem 0 0\n"), 0) == NodeSet{0});
  CHECK_THROWS(is_nth_union(s, 2, 0, 2));

  const MemStructure full = S("nodes 3\nmem 0 2\nmem 1 2\n");
  CHECK(tc(full, 2) == NodeSet{0, 1});
  CHECK(is_pure_set(full, 2));
  CHECK_FALSE(is_pure_set(S("nodes 3\nmem 0 2\n"), 2));
  CHECK(is_pure_set(full, 0));
}

TEST_CASE("ordinals") {
  // 0 = {}, 1 = {}', 2 = {0}, 3 = {0,1}, 4 = {0,2}, 5 = {0,1,3}.
  const MemStructure s = S("nodes 6\nmem 0 2\nmem 0 3\nmem 1 3\nmem 0 4\nmem 2 4\nmem 0 5\nmem 1 5\nmem 3 5\n");
  CHECK(is_eps_ordinal(s, 0));
  CHECK(is_eps_ordinal(s, 2));
  CHECK(is_eps_ordinal(s, 4));
  CHECK(is_star_ordinal(s, 3));
  CHECK_FALSE(is_eps_ordinal(s, 3));
  CHECK(is_star_ordinal(s, 5));
  CHECK_FALSE(is_star_ordinal(s, 2));
  const MemStructure loop = S("nodes 1\nmem 0 0\n");
  CHECK_FALSE(is_eps_ordinal(loop, 0));
  CHECK_FALSE(is_star_ordinal(loop, 0));
}

TEST_CASE("copy relations") {
  const MemStructure s = S("nodes 6\nmem 0 2\nmem 0 3\nmem 1 3\nmem 0 4\nmem 2 4\nmem 0 5\nmem 1 5\nmem 3 5\n");
  CHECK(check_copy_relation(s, {0, 1, {}}).passed);
  CHECK(check_copy_relation(s, {4, 5, {{0, 0}, {0, 1}, {2, 3}}}).passed);
  const Report dropped = check_copy_relation(s, {4, 5, {{0, 0}, {2, 3}}});
  REQUIRE_FALSE(dropped.passed);
  CHECK(dropped.counterexample->clause == "quasi-surjectivity");
  const Report iso = check_copy_relation(s, {4, 5, {{0, 3}, {0, 1}, {2, 0}}});
  CHECK_FALSE(iso.passed);

  const auto zero = find_star_copy(s, 0);
  REQUIRE(zero);
  CHECK(zero->target == 0);
  CHECK(zero->pairs.empty());
  const auto one = find_star_copy(s, 2);
  REQUIRE(one);
  CHECK(one->target == 3);
  const auto two = find_star_copy(s, 4);
  REQUIRE(two);
  CHECK(two->target == 5);
  CHECK(check_copy_relation(s, *two).passed);

  CHECK_FALSE(find_star_copy(S("nodes 3\nmem 0 2\n"), 2));
}

TEST_CASE("hierarchy stages") {
  const MemStructure s = S("nodes 4\nmem 0 1\nmem 1 2\nmem 3 3\n");
  const auto st = hierarchy_stages(s, 4);
  CHECK(st[0].empty());
  CHECK(st[1] == NodeSet{0});
  CHECK(st[2] == NodeSet{0, 1});
  CHECK(st[3] == NodeSet{0, 1, 2});
  CHECK_FALSE(in_hierarchy(s, 3));
  CHECK(in_hierarchy(s, 2));
}

TEST_CASE("property: sethood and in* agree with both oracles") {
  all_small([](const MemStructure& s) {
    for (NodeId x = 0; x < s.size(); ++x) {
      REQUIRE(is_set(s, x) == oracle_set(s, x));
      REQUIRE(is_set(s, x) == eval_set(s, x));
      REQUIRE(at(s, x) != is_set(s, x));
      for (NodeId z = 0; z < s.size(); ++z) {
        REQUIRE(memstar(s, z, x) == eval(s, expand(InStar("z", "x")), {{"z", z}, {"x", x}}));
        REQUIRE(coextensional(s, z, x) == eval(s, expand(EqStar("z", "x")), {{"z", z}, {"x", x}}));
      }
    }
  });
}

TEST_CASE("property: corollary 2, congruence and subsidiary 2") {
  all_small([](const MemStructure& s) {
    for (NodeId x = 0; x < s.size(); ++x) {
      if (is_set(s, x)) {
        NodeSet star;
        for (NodeId m = 0; m < s.size(); ++m)
          if (memstar(s, m, x)) star.push_back(m);
        REQUIRE(star == extension(s, x));
      }
      for (NodeId z = 0; z < s.size(); ++z)
        for (NodeId x2 = 0; x2 < s.size(); ++x2)
          for (NodeId z2 = 0; z2 < s.size(); ++z2)
            if (coextensional(s, x, x2) && coextensional(s, z, z2)) REQUIRE(memstar(s, z, x) == memstar(s, z2, x2));
    }
    REQUIRE(check_subsidiary2(s).passed);
  });
}

TEST_CASE("property: quotient is extensional on sets") {
  all_small([](const MemStructure& s) {
    const Quotient q = quotient(s);
    REQUIRE(q.structure.size() == coext_classes(s).size());
    for (NodeId a = 0; a < s.size(); ++a)
      for (NodeId b = 0; b < s.size(); ++b)
        if (is_set(s, a) && is_set(s, b) && q.structure.members(q.collapse[a]) == q.structure.members(q.collapse[b]))
          REQUIRE(coextensional(s, a, b));
  });
}

TEST_CASE("property: tc equals reachability") {
  all_small([](const MemStructure& s) {
    for (NodeId x = 0; x < s.size(); ++x) REQUIRE(tc(s, x) == oracle_reach(s, x));
  });
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    const MemStructure s = random_structure(1 + seed % 10, 0.2, seed);
    for (NodeId x = 0; x < s.size(); ++x) REQUIRE(tc(s, x) == oracle_reach(s, x));
  }
}

TEST_CASE("property: purity") {
  all_small([](const MemStructure& s) {
    const Semantics sem(s);
    for (NodeId x = 0; x < s.size(); ++x) {
      REQUIRE(sem.is_pure(x) == is_pure_set(s, x));
      if (is_pure_set(s, x))
        for (NodeId y : tc(s, x)) REQUIRE(is_pure_set(s, y));
      bool members_pure = true;
      for (NodeId y : extension(s, x)) members_pure = members_pure && is_pure_set(s, y);
      if (is_set(s, x) && members_pure) REQUIRE(is_pure_set(s, x));
      REQUIRE(is_nth_union(s, x, 1, x));
      for (NodeId y = 0; y < s.size(); ++y) REQUIRE(is_nth_union(s, x, 1, y) == coextensional(s, x, y));
    }
  });
}

TEST_CASE("property: hierarchy regularity") {
  const Formula foundation = expand(parse("(ex x. x in* A) -> ex x. (x in* A & ~ex z. (z in* x & z in* A))"));
  all_small([&](const MemStructure& s) {
    const auto rk = ranks(s);
    for (NodeId x = 0; x < s.size(); ++x) {
      if (!in_hierarchy(s, x)) continue;
      REQUIRE(rk[x].has_value());
      REQUIRE(eval(s, foundation, {{"A", x}}, EvalOptions{8}));
    }
  });
}
