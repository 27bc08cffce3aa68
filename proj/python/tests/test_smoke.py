import pytest

import coext


def test_parse_and_print():
    f = coext.parse("all z. (z in x <-> z in y)")
    assert str(f) == "all z. z in x <-> z in y"
    assert f.free_vars == {"x", "y"}
    with pytest.raises(coext.ParseError):
        coext.parse("set(")


def test_expand_and_translate():
    e = coext.expand(coext.parse("x =* y"))
    assert coext.alpha_equal(e, coext.parse("all z. (z in x <-> z in y)"))
    t = coext.translate_zfa(coext.parse("x = y"))
    assert coext.alpha_equal(t, e)


def test_structures_and_semantics():
    s = coext.Structure.from_text("nodes 3\nmem 0 2\n")
    assert len(s) == 3
    assert not coext.is_set(s, 2)
    assert coext.coext_classes(s) == [[0, 1], [2]]
    q, collapse = coext.quotient(s)
    assert len(q) == 2 and collapse[0] == collapse[1]
    assert coext.eval(s, coext.parse("set(x)"), {"x": 2}) is False
    s.add_edge(1, 2)
    assert coext.is_set(s, 2)
    assert coext.tc(s, 2) == [0, 1]


def test_generators():
    assert len(coext.build_hf(3)) == 16
    assert coext.structure_count(2) == 16
    d = coext.add_doppelgangers(coext.build_hf(2), [(0, 1)])
    assert coext.coextensional(d, 0, 4)
    r = coext.random_structure(8, 0.3, 42)
    assert r == coext.random_structure(8, 0.3, 42)


def test_checks():
    ok = coext.check_schema_exhaustive("lemma1", 2)
    assert ok["passed"] and ok["structures"] == 18
    bad = coext.check_schema_exhaustive("lemma1", 3, starred=False)
    assert not bad["passed"]
    ce = bad["counterexample"]
    s = coext.Structure.from_text(ce["structure"])
    assert coext.eval(s, coext.parse(ce["formula"], reserved=True), dict(ce["assignment"])) is False
    assert coext.check_axiom(coext.build_hf(2), "weak-ext")["passed"]


def test_suite_subset():
    (tc,) = coext.run_suite([5])
    assert tc["passed"], tc["line"]
