"""Normal-form classical array grammars compiled into simple insertion/deletion P systems.

Pipeline:

1. :func:`check_normal_form` accepts grammars whose classical rules are
   ``A -> B`` (one cell) or ``A v D -> B v C`` (two adjacent cells).
2. :func:`prepare_marked_rules` replaces blanks by the workspace filler ``E``,
   widens one-cell rules to two-cell families, puts a bar on the active cell
   and adds rules that move the bar around.
3. :func:`compile_arba_to_psystem` builds a height-2 system: a workspace line
   ``L E..E S! E..E R`` is grown first, each marked rule is simulated by a
   round trip through its own pair of membranes, and a final membrane pair
   strips the filler symbols or traps the object forever.
"""
from __future__ import annotations

from dataclasses import dataclass

from ..arrays import BLANK, bar, parse_array
from ..psystem import HERE, IN, OUT, MembraneTree, PSystem, TargetedRule
from ..rules import Grammar, Kind, dele, ins

FILLER = "E"
RESERVED = ("L", "R", "E", "F")


class NormalFormError(ValueError):
    def __init__(self, problems: list[str]):
        self.problems = problems
        super().__init__("grammar is not in normal form:\n  " + "\n  ".join(problems))


def _plain(sym: str) -> bool:
    return not sym.endswith("!") and not sym.startswith("[")


def _classify(rule, nonterminals, symbols):
    """Return ``(A, v, D, B, C)`` (``v`` is 0 for one-cell rules) or an error text."""
    lhs = {c.offset: c.entry for c in rule.selector}
    rhs = {c.offset: c.entry for c in rule.payload}
    offs = sorted(lhs)
    if len(offs) == 1:
        (o,) = offs
        a, b = lhs[o], rhs[o]
        if a not in nonterminals:
            return "one-cell rule must rewrite a non-terminal"
        if b != BLANK and b not in symbols:
            return "one-cell rule must produce a symbol or #"
        return (a, 0, None, b, None)
    if len(offs) != 2 or offs[1] - offs[0] != 1:
        return "rule must cover one cell or two adjacent cells (norm 1)"
    lo, hi = offs
    if lhs[lo] != BLANK:
        o, v = lo, 1
    else:
        o, v = hi, -1
    a, d = lhs[o], lhs[o + v]
    b, c = rhs[o], rhs[o + v]
    if a == BLANK or a not in symbols:
        return "the anchored left-hand cell must hold a symbol"
    if d != BLANK and d not in symbols:
        return "unknown symbol on the left-hand side"
    if b not in symbols or c not in symbols:
        return "right-hand side of a two-cell rule must hold symbols only"
    return (a, v, d, b, c)


def check_normal_form(g: Grammar) -> list[str]:
    """Problems that keep ``g`` from being compiled; empty when ``g`` is accepted."""
    problems = []
    symbols = g.alphabet
    nonterminals = g.nonterminals
    clash = sorted(set(RESERVED) & symbols)
    if clash:
        problems.append(f"symbols {clash} are reserved for the compiled system")
    odd = sorted(s for s in symbols if not _plain(s))
    if odd:
        problems.append(f"symbols {odd} cannot carry a bar marker")
    if len(g.axiom) != 1 or next(iter(g.axiom.symbols)) not in nonterminals:
        problems.append("axiom must be a single non-terminal cell")
    for i, r in enumerate(g.rules):
        name = r.label or f"#{i + 1}"
        if r.kind is not Kind.CLASSICAL:
            problems.append(f"rule {name}: only classical rules are accepted")
            continue
        res = _classify(r, nonterminals, symbols)
        if isinstance(res, str):
            problems.append(f"rule {name}: {res}")
    return problems


@dataclass(frozen=True, order=True)
class MarkedRule:
    """``A! (v) D -> B (v) C!``: the barred cell at 0 and its neighbour at ``v``."""

    a: str
    v: int
    d: str
    b: str
    c: str
    label: str = ""

    def __str__(self) -> str:
        return f"{self.label}: {bar(self.a)} ({self.v:+d}) {self.d} -> {self.b} ({self.v:+d}) {bar(self.c)}"


def prepare_marked_rules(g: Grammar) -> list[MarkedRule]:
    """Expand and mark the rules of ``g``; labels ``r01, r02, ...`` follow sorted order."""
    problems = check_normal_form(g)
    if problems:
        raise NormalFormError(problems)
    nonterminals = g.nonterminals
    cells = sorted(g.alphabet | {FILLER})

    def fill(s):
        return FILLER if s == BLANK else s

    raw: set[tuple] = set()
    for r in g.rules:
        a, v, d, b, c = _classify(r, nonterminals, g.alphabet)
        if v == 0:
            for dd in cells:
                for vv in (1, -1):
                    raw.add((a, vv, dd, fill(b), dd))
        else:
            raw.add((a, v, fill(d), b, c))
    for a in cells:
        for c in cells:
            for v in (1, -1):
                raw.add((a, v, c, a, c))
    ordered = sorted(raw, key=lambda t: (t[0], -t[1], t[2], t[3], t[4]))
    width = len(str(len(ordered)))
    return [MarkedRule(*t, label=f"r{i:0{width}d}") for i, t in enumerate(ordered, 1)]


def _label_safe(sym: str) -> str:
    return sym.replace("!", "_bar")


def _tagged_bar(sym: str, label: str) -> str:
    base = sym.rstrip("'")
    primes = sym[len(base):]
    return f"{base}_{label}{primes}!"


def compile_arba_to_psystem(g: Grammar) -> PSystem:
    """Simple P system of tree height 2 with norm-1 rules whose t-language is L_*(g)."""
    marked = prepare_marked_rules(g)
    source = set(g.alphabet)
    start = next(iter(g.axiom.symbols))
    cells = sorted(source | {FILLER})
    barred = {s: bar(s) for s in cells}

    children = {"0": ["I1"], "I1": ["I2"]}
    rules: list[TargetedRule] = [
        TargetedRule("I2", ins({0: "E"}, {1: "E"}, "grow_right"), HERE),
        TargetedRule("I2", ins({0: "E"}, {-1: "E"}, "grow_left"), HERE),
        TargetedRule("I2", ins({0: "E"}, {-1: "L"}, "left_end"), OUT),
        TargetedRule("I1", ins({0: "E"}, {1: "R"}, "right_end"), OUT),
    ]
    generated = {"L", "R", "F", *barred.values()}
    for m in marked:
        l = m.label
        m1, m2 = f"{l}_1", f"{l}_2"
        children["0"].append(m1)
        children[m1] = [m2]
        key = f"K_{l}"
        a_bar, c_bar = barred[m.a], barred[m.c]
        d_tag = _tagged_bar(m.d, l)
        generated |= {key, d_tag}
        v = m.v
        rules += [
            TargetedRule("0", ins({0: "R"}, {1: key}, f"{l}_open"), IN),
            TargetedRule(m1, dele({0: a_bar}, {v: m.d}, f"{l}_take"), IN),
            TargetedRule(m2, ins({0: a_bar}, {v: d_tag}, f"{l}_tag"), OUT),
            TargetedRule(m1, dele({0: d_tag}, {-v: a_bar}, f"{l}_drop"), OUT),
            TargetedRule("0", ins({0: d_tag}, {-v: m.b}, f"{l}_write"), IN),
            TargetedRule(m1, dele({0: m.b}, {v: d_tag}, f"{l}_untag"), IN),
            TargetedRule(m2, dele({0: "R"}, {1: key}, f"{l}_close"), OUT),
            TargetedRule(m1, ins({0: m.b}, {v: c_bar}, f"{l}_mark"), OUT),
        ]
    children["0"].append("F1")
    children["F1"] = ["F2"]

    clash = sorted(generated & source)
    if clash:
        raise NormalFormError([f"generated symbols {clash} collide with source symbols"])

    trap_membranes = ["I1", "I2"] + [f"{m.label}_{k}" for m in marked for k in (1, 2)]
    for mem in trap_membranes:
        rules.append(TargetedRule(mem, ins({0: "L"}, {-1: "F"}, "trap_L"), OUT))
        rules.append(TargetedRule(mem, ins({0: "F"}, {-1: "F"}, "trap_F"), OUT))
    rules.append(TargetedRule("0", ins({0: "F"}, {-1: "F"}, "trap_F"), IN))

    alphabet = source | generated | {FILLER}
    rules.append(TargetedRule("0", dele({}, {0: "R"}, "finish"), IN))
    erase = ["E", barred["E"], "L"]
    for x in erase:
        rules.append(TargetedRule("F1", dele({}, {0: x}, f"erase_{_label_safe(x)}"), HERE))
    for x in sorted(alphabet - set(g.terminals) - set(erase)):
        rules.append(TargetedRule("F1", dele({}, {0: x}, f"reject_{_label_safe(x)}"), IN))
    rules.append(TargetedRule("F2", ins({}, {0: "F"}, "loop"), OUT))

    tree = MembraneTree("0", children)
    axiom = parse_array(f"E {barred[start]} E")
    return PSystem(frozenset(alphabet), g.terminals, tree, tuple(rules), "I2", axiom)
