"""Property suites: exhaustive over small arrays and rules, randomized beyond that."""
import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from agw.arrays import Array1D, normalize, parse_array, render_array, translate
from agw.constructions.tm import compile_tm_to_grammar, parse_tm
from agw.engine import Budget, Mode, is_halting, language, reach
from agw.psystem import run_t_bounded, wrap_grammar
from agw.rules import Rule, applications, apply_at, cls, dele, ins, make_grammar, match_sites, string_ops_to_rules

from conftest import load
from reference import canon, has_anchor, naive_successors

ALPHABET = ("a", "b", "c")


def small_arrays(max_cells=4, width=5):
    """Every canonical array with at most ``max_cells`` cells inside ``width`` positions."""
    seen = set()
    for fill in itertools.product((None,) + ALPHABET, repeat=width):
        cells = {i: s for i, s in enumerate(fill) if s is not None}
        if len(cells) > max_cells:
            continue
        a = Array1D(cells).normalize()
        if a not in seen:
            seen.add(a)
            yield a


SMALL = list(small_arrays())
COMPACT = [a for a in SMALL if a.extent <= 3]


def small_rules():
    """Insertion, deletion and classical rules over two-cell windows."""
    entries = ALPHABET + ("#",)
    for sym in ALPHABET:
        for sel in entries:
            for off in (-2, -1, 1, 2):
                yield ins({0: sel}, {off: sym})
                yield dele({0: sel}, {off: sym})
                yield dele({off: sel}, {0: sym})
        yield ins({}, {0: sym})
        yield dele({}, {0: sym})
    for left in itertools.product(entries, repeat=2):
        for right in (("a", "#"), ("#", "b"), ("c", "a")):
            yield cls({0: left[0], 1: left[1]}, {0: right[0], 1: right[1]})


RULES = list(small_rules())


def as_reference(r: Rule):
    sel = {c.offset: c.entry for c in r.selector}
    pay = {c.offset: c.entry for c in r.payload}
    return (r.kind.value, sel, pay)


# -- arrays ----------------------------------------------------------------------

def test_exhaustive_normalization_and_round_trip():
    assert len(SMALL) > 300
    for a in SMALL:
        assert normalize(normalize(a)) == normalize(a)
        text = render_array(a)
        assert parse_array(text) == a
        assert not text.startswith("#") and not text.endswith("#")
        for v in (-3, 2):
            assert normalize(translate(a, v)) == a


symbols = st.sampled_from(ALPHABET + ("S!", "E'", "[E.q0.a.R]"))
arrays = st.dictionaries(st.integers(-20, 20), symbols, max_size=8).map(Array1D)


@settings(max_examples=300, deadline=None)
@given(arrays, st.integers(-50, 50))
def test_random_normalization_and_round_trip(a, v):
    n = normalize(a)
    assert normalize(n) == n and n.is_canonical
    assert parse_array(render_array(n)) == n
    assert normalize(translate(a, v)) == n


# -- rules -----------------------------------------------------------------------

def test_exhaustive_application_matches_reference():
    for r in RULES:
        ref = as_reference(r)
        for a in COMPACT:
            got = {canon(b.cells) for b in applications(r, a)}
            assert got == naive_successors(ref, a.cells), (str(r), render_array(a))


def test_exhaustive_translation_invariance():
    for r in RULES:
        if not has_anchor(r):
            continue  # anchorless rules use a window tied to the array itself
        for a in COMPACT:
            base = match_sites(r, a)
            for w in (-4, 3):
                moved = Array1D({p + w: s for p, s in a.items})
                assert match_sites(r, moved) == [v + w for v in base]


def test_exhaustive_insertion_deletion_inversion():
    for r in RULES:
        if r.kind.value != "ins":
            continue
        undo = dele({c.offset: c.entry for c in r.selector}, {c.offset: c.entry for c in r.payload})
        for a in COMPACT:
            for v in match_sites(r, a):
                grown = apply_at(r, a, v, canonical=False)
                assert v in match_sites(undo, grown)
                assert normalize(apply_at(undo, grown, v, canonical=False)) == a
                assert apply_at(r, a, v).is_canonical


@pytest.mark.parametrize("alphabet", [{"a"}, {"a", "b"}, set(ALPHABET)])
def test_string_operations_have_norm_one(alphabet):
    rules = string_ops_to_rules(alphabet)
    k = len(alphabet)
    assert len(rules) == 2 * k * k + 2 * k
    assert all(r.norm == 1 for r in rules)


rule_cells = st.dictionaries(st.integers(-2, 2), st.sampled_from(ALPHABET + ("#",)), min_size=1, max_size=2)


@st.composite
def random_rules(draw):
    kind = draw(st.sampled_from(["ins", "del"]))
    sel = draw(rule_cells)
    free = [o for o in range(-2, 3) if o not in sel]
    offs = draw(st.lists(st.sampled_from(free), min_size=1, max_size=2, unique=True))
    pay = {o: draw(st.sampled_from(ALPHABET)) for o in offs}
    return (ins if kind == "ins" else dele)(sel, pay)


@settings(max_examples=300, deadline=None)
@given(random_rules(), arrays, st.integers(-30, 30))
def test_random_rules_match_reference_and_translate(r, a, w):
    a = normalize(a)
    assert {canon(b.cells) for b in applications(r, a)} == naive_successors(as_reference(r), a.cells)
    if has_anchor(r):
        moved = Array1D({p + w: s for p, s in a.items})
        assert match_sites(r, moved) == [v + w for v in match_sites(r, a)]


# -- engine and P systems ----------------------------------------------------------

grammars = st.builds(
    lambda rules, axiom: make_grammar(axiom, rules, terminals={"a", "b"}, alphabet=set(ALPHABET)),
    st.lists(random_rules(), min_size=1, max_size=3),
    st.sampled_from(["a", "c", "a c", "c # b"]),
)


@settings(max_examples=60, deadline=None)
@given(grammars, st.integers(1, 4), st.sampled_from([Mode.STAR, Mode.T]))
def test_budget_monotonicity(g, cells, mode):
    small = language(g, mode, Budget(max_cells=cells, max_steps=6))
    larger_cells = language(g, mode, Budget(max_cells=cells + 1, max_steps=6))
    more_steps = language(g, mode, Budget(max_cells=cells, max_steps=8))
    assert set(small.arrays) <= set(larger_cells.arrays)
    assert set(small.arrays) <= set(more_steps.arrays)


@settings(max_examples=60, deadline=None)
@given(grammars, st.integers(1, 5))
def test_single_membrane_system_equals_grammar(g, cells):
    budget = Budget(max_cells=cells, max_steps=8)
    plain = language(g, Mode.T, budget, prune_dead=False)
    wrapped = run_t_bounded(wrap_grammar(g), budget, prune_dead=False)
    assert plain.arrays == wrapped.arrays and plain.complete == wrapped.complete
    assert run_t_bounded(wrap_grammar(g), budget).arrays == language(g, Mode.T, budget).arrays


@settings(max_examples=60, deadline=None)
@given(grammars, st.integers(1, 5))
def test_dead_state_pruning_never_changes_results(g, cells):
    budget = Budget(max_cells=cells, max_steps=8)
    for mode in (Mode.STAR, Mode.T):
        assert language(g, mode, budget).arrays == language(g, mode, budget, prune_dead=False).arrays


@pytest.mark.parametrize("name", ["write_a.tm", "write_ab.tm"])
def test_reachable_arrays_with_right_marker_never_halt(name):
    g = compile_tm_to_grammar(parse_tm(load(name)))
    arrays, _ = reach(g, Budget(max_cells=7))
    marked = [a for a in arrays if "R" in a.symbols]
    assert len(marked) > 20
    assert not any(is_halting(g, a) for a in marked)
