import pytest

from agw.arrays import ParseError, parse_array, render_array
from agw.engine import Budget, Mode, language
from agw.psystem import (Configuration, format_psystem, is_halting_configuration, is_simple,
                         parse_membranes, parse_psystem, psystem_successors, run_t_bounded,
                         tree_height, wrap_grammar)
from agw.rules import parse_grammar

from conftest import load

BRANCHING = """\
format: agw/1
membranes: [0 [A] [B]]
init: 0
terminals: a b x
axiom: x
rule @0 ins sel{0=x} put{1=a} -> in
rule @A ins sel{0=a} put{1=b} -> out
rule @B del sel{} rem{0=x} -> here
rule @0 ins sel{0=b} put{1=b} -> out
"""


def test_membrane_structures():
    t = parse_membranes("[0 [1] [2]]")
    assert t.root == "0" and t.children("0") == ("1", "2")
    lemma = parse_membranes("[0 [1] [2] [3]]")
    assert len(lemma.children("0")) == 3 and lemma.height == 1
    assert parse_membranes("[0]").height == 0
    deep = parse_membranes("[0 [I1 [I2]] [F1 [F2]]]")
    assert deep.height == 2 and deep.parent("I2") == "I1"
    assert parse_membranes(deep.render()) == deep


@pytest.mark.parametrize("bad", ["[0 [1 [2", "[0] [1]", "[0 [1] [1]]", "0", "[]", "[0 ]]"])
def test_membrane_errors(bad):
    with pytest.raises(ParseError):
        parse_membranes(bad)


def test_file_round_trip_and_validation():
    p = parse_psystem(BRANCHING)
    assert parse_psystem(format_psystem(p)) == p
    with pytest.raises(ParseError):
        parse_psystem(BRANCHING.replace("-> in\n", "-> in(C)\n", 1))
    with pytest.raises(ParseError):
        parse_psystem(BRANCHING.replace("init: 0", "init: Z"))
    with pytest.raises(ParseError):
        parse_psystem(BRANCHING.replace("@A ins sel{0=a} put{1=b} -> out", "@A ins sel{0=a} put{1=b} -> in"))


def test_routing():
    p = parse_psystem(BRANCHING)
    succ = psystem_successors(p, Configuration(parse_array("x"), "0"))
    # "in" branches over both children
    assert sorted((c.membrane, render_array(c.array)) for c in succ) == [("A", "x a"), ("B", "x a")]
    back = psystem_successors(p, Configuration(parse_array("x a"), "A"))
    assert [(c.membrane, render_array(c.array)) for c in back] == [("0", "x a b")]
    # "out" from the skin sends the object away: no successor
    gone = Configuration(parse_array("x a b"), "0")
    assert psystem_successors(p, gone) == []
    # the ejecting rule still applies, so the configuration is not halting
    assert not is_halting_configuration(p, gone)


def test_successors_stay_between_adjacent_membranes():
    p = parse_psystem(BRANCHING)
    for m in p.tree.labels:
        for text in ("x", "x a", "a b", "x a b"):
            for c in psystem_successors(p, Configuration(parse_array(text), m)):
                assert c.membrane == m or p.tree.parent(c.membrane) == m or p.tree.parent(m) == c.membrane


def test_t_results_halt_in_their_membrane():
    p = parse_psystem(BRANCHING)
    res = run_t_bounded(p, Budget(max_cells=5))
    # x -> x a (in B) -> a after deleting x in B, where nothing else applies
    assert res.rendered() == ["a"]
    assert res.complete


def test_simple_and_height():
    p = parse_psystem(BRANCHING)
    assert is_simple(p) and tree_height(p) == 1
    labelled = parse_psystem(BRANCHING.replace("-> in\n", "-> in(A)\n", 1))
    assert not is_simple(labelled)


def test_single_membrane_system_matches_the_grammar():
    g = parse_grammar(load("gline.agw"))
    budget = Budget(max_cells=7)
    assert run_t_bounded(wrap_grammar(g), budget).arrays == language(g, Mode.T, budget).arrays
