import pytest

from agw.constructions.arba import (NormalFormError, check_normal_form, compile_arba_to_psystem,
                                    prepare_marked_rules)
from agw.engine import Budget
from agw.oracles import arba_language
from agw.psystem import format_psystem, is_simple, parse_psystem, run_t_bounded, tree_height
from agw.rules import parse_grammar

from conftest import load


def grammar(name):
    return parse_grammar(load(name))


@pytest.mark.parametrize("name", ["s2a.agw", "ba.agw", "ab.agw"])
def test_structural_audit(name):
    p = compile_arba_to_psystem(grammar(name))
    assert p.norm <= 1
    assert is_simple(p) and tree_height(p) == 2
    used = set(p.axiom.symbols)
    for tr in p.rules:
        used |= tr.rule.symbols()
    assert used <= p.alphabet


def test_compilation_is_deterministic():
    a = format_psystem(compile_arba_to_psystem(grammar("ba.agw")))
    b = format_psystem(compile_arba_to_psystem(grammar("ba.agw")))
    assert a == b
    assert format_psystem(parse_psystem(a)) == a


def test_marked_rules():
    marked = prepare_marked_rules(grammar("s2a.agw"))
    labels = [m.label for m in marked]
    assert labels == sorted(labels) and len(set(labels)) == len(labels)
    # the one-cell rule S -> a becomes a family over every neighbour and both directions
    rewrites = [m for m in marked if (m.a, m.b) == ("S", "a")]
    assert len(rewrites) == 2 * 3


@pytest.mark.parametrize("src, fragment", [
    ("terminals: a\naxiom: S\nrule ins sel{0=S} put{1=a}\n", "only classical"),
    ("terminals: a\naxiom: S S\nrule cls lhs{0=S} rhs{0=a}\n", "axiom"),
    ("terminals: a\naxiom: S\nrule cls lhs{0=S,2=#} rhs{0=a,2=S}\n", "adjacent"),
    ("terminals: a E\naxiom: S\nrule cls lhs{0=S} rhs{0=a}\n", "reserved"),
    ("terminals: a\naxiom: S\nrule cls lhs{0=a} rhs{0=S}\n", "non-terminal"),
])
def test_normal_form_rejections(src, fragment):
    g = parse_grammar(src)
    problems = check_normal_form(g)
    assert any(fragment in p for p in problems), problems
    with pytest.raises(NormalFormError):
        compile_arba_to_psystem(g)


def test_oracle_languages():
    budget = Budget(max_cells=4)
    assert arba_language(grammar("s2a.agw"), budget).rendered() == ["a"]
    assert arba_language(grammar("ba.agw"), budget).rendered() == ["a a a b", "a a b", "a b", "b"]
    assert arba_language(grammar("ab.agw"), budget).rendered() == ["a", "b a"]


def test_small_compiled_run_matches_the_oracle():
    # at 7 cells the compiled system has room for results of up to 3 cells
    p = compile_arba_to_psystem(grammar("s2a.agw"))
    res = run_t_bounded(p, Budget(max_cells=7))
    assert res.rendered() == ["a"]
