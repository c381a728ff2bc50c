"""Turing machines compiled into insertion/deletion array grammars of norm at most two.

Tape layout in the compiled grammar::

    L  x x x  [A.q.X.D]  x x  R

The head cell holds a composite symbol recording the state ``q``, the scanned
symbol ``X`` and the symbols ``A``/``D`` physically left and right of it.
Every transition is simulated by four rules, each spanning at most three
consecutive cells.  When the head reaches an end marker the workspace is
extended by one blank (``E``) cell through a short gadget that passes a
carrier symbol around the composite.

Once the final state is reached the head walks to the left end, switches to
a primed sweep state, and walks right again priming every ``E``.  At the right
end the markers are retired and the primed blanks are deleted, leaving the
terminal tape.  Branches that cannot finish keep the right marker, whose trap
rule appends ``F`` forever.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field

from ..arrays import ParseError, parse_array, prime
from ..rules import Grammar, Rule, dele, ins, iter_lines, rules_norm

IDENT = re.compile(r"[A-Za-z0-9_]+")
RESERVED = {"L", "R", "F"}


@dataclass(frozen=True)
class TuringMachine:
    states: tuple[str, ...]
    tape: tuple[str, ...]
    inputs: tuple[str, ...]
    blank: str
    initial: str
    final: str
    delta: tuple[tuple[str, str, str, str, str], ...]  # (q, X, p, Y, "L"|"R")

    def __post_init__(self):
        for name in ("states", "tape", "inputs", "delta"):
            object.__setattr__(self, name, tuple(getattr(self, name)))
        for s in self.states + self.tape:
            if not IDENT.fullmatch(s):
                raise ValueError(f"state and tape names must be plain identifiers, got {s!r}")
        clash = sorted(RESERVED & set(self.tape))
        if clash:
            raise ValueError(f"tape symbols {clash} are reserved for end markers and traps")
        if self.blank not in self.tape:
            raise ValueError(f"blank {self.blank!r} is not a tape symbol")
        if self.blank in self.inputs:
            raise ValueError("the blank may not be an input symbol")
        if not set(self.inputs) <= set(self.tape):
            raise ValueError("input symbols must be tape symbols")
        for q in (self.initial, self.final):
            if q not in self.states:
                raise ValueError(f"unknown state {q!r}")
        for q, x, p, y, d in self.delta:
            if q not in self.states or p not in self.states:
                raise ValueError(f"transition uses unknown state: {q} {x} -> {p} {y} {d}")
            if x not in self.tape or y not in self.tape:
                raise ValueError(f"transition uses unknown tape symbol: {q} {x} -> {p} {y} {d}")
            if d not in ("L", "R"):
                raise ValueError(f"direction must be L or R, got {d!r}")
            if q == self.final:
                raise ValueError("the final state may not have outgoing transitions")

    def moves(self, q: str, x: str) -> list[tuple[str, str, str]]:
        return [(p, y, d) for (qq, xx, p, y, d) in self.delta if (qq, xx) == (q, x)]


def parse_tm(text: str) -> TuringMachine:
    """Parse ``states: / tape: / input: / blank: / init: / final:`` headers and ``delta:`` lines."""
    head: dict[str, str] = {}
    delta = []
    for n, line in iter_lines(text):
        key, sep, rest = line.partition(":")
        key = key.strip()
        if not sep:
            raise ParseError(f"expected 'key: value', got {line!r}", n)
        if key == "delta":
            m = re.fullmatch(r"\s*(\S+)\s+(\S+)\s*->\s*(\S+)\s+(\S+)\s+([LR])\s*", rest)
            if not m:
                raise ParseError(f"bad transition {rest.strip()!r}", n)
            delta.append(m.groups())
        elif key in ("states", "tape", "input", "blank", "init", "final"):
            if key in head:
                raise ParseError(f"duplicate header {key!r}", n)
            head[key] = rest.strip()
        else:
            raise ParseError(f"unknown header {key!r}", n)
    missing = [k for k in ("states", "tape", "input", "blank", "init", "final") if k not in head]
    if missing:
        raise ParseError(f"missing headers: {', '.join(missing)}")
    try:
        return TuringMachine(tuple(head["states"].split()), tuple(head["tape"].split()),
                             tuple(head["input"].split()), head["blank"], head["init"],
                             head["final"], tuple(delta))
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


def format_tm(m: TuringMachine) -> str:
    lines = [
        "states: " + " ".join(m.states),
        "tape: " + " ".join(m.tape),
        "input: " + " ".join(m.inputs),
        f"blank: {m.blank}",
        f"init: {m.initial}",
        f"final: {m.final}",
    ]
    lines += [f"delta: {q} {x} -> {p} {y} {d}" for q, x, p, y, d in m.delta]
    return "\n".join(lines) + "\n"


def head(a: str, q: str, x: str, d: str) -> str:
    """The composite head symbol ``[a.q.x.d]``."""
    return f"[{a}.{q}.{x}.{d}]"


@dataclass
class _Emitter:
    rules: list[Rule] = field(default_factory=list)
    seen: set = field(default_factory=set)

    def add(self, r: Rule) -> None:
        if r.norm > 2:
            raise AssertionError(f"emitted rule exceeds norm 2: {r}")
        key = (r.kind, r.selector, r.payload)
        if key not in self.seen:
            self.seen.add(key)
            self.rules.append(r)


def compile_tm_to_grammar(m: TuringMachine) -> Grammar:
    """Grammar of norm 2 whose t-language is the set of terminal tapes ``m`` halts with."""
    E = m.blank
    V = list(m.tape)
    T = list(m.inputs)
    qf = m.final
    qs = prime(qf)
    Ep = prime(E)
    if qs in m.states:
        raise ValueError(f"state name {qs!r} is reserved for the final sweep")
    carriers = {}
    for q in list(m.states) + [qs]:
        for x in V:
            carriers[("R", q, x)] = f"CR_{x}_{q}"
            carriers[("L", q, x)] = f"CL_{x}_{q}"
    if len(set(carriers.values())) != len(carriers) or set(carriers.values()) & set(V):
        raise ValueError("carrier symbol names collide; rename states or tape symbols")

    out = _Emitter()
    rights: dict[tuple[str, str], list[tuple[str, str]]] = {}
    lefts: dict[tuple[str, str], list[tuple[str, str]]] = {}
    for q, x, p, y, d in m.delta:
        (rights if d == "R" else lefts).setdefault((q, x), []).append((p, y))
    for x in V:
        lefts.setdefault((qf, x), []).append((qf, x))
    for a in T:
        rights.setdefault((qs, a), []).append((qs, a))
    rights.setdefault((qs, E), []).append((qs, Ep))

    def left_range(q):
        return T + [Ep, prime("L")] if q == qs else V + ["L"]

    # moves to the right
    for (q, x), targets in rights.items():
        for p, y in targets:
            for a in left_range(q):
                for d in V:
                    for c in V + ["R"]:
                        old, new = head(a, q, x, d), head(y, p, d, c)
                        out.add(dele({-1: a, 0: old}, {1: d}))
                        out.add(ins({0: old, 2: c}, {1: new}))
                        out.add(dele({1: new, 2: c}, {0: old}))
                        out.add(ins({0: new, 1: c}, {-1: y}))

    # moves to the left
    for (q, x), targets in lefts.items():
        for p, y in targets:
            for a in V:
                for d in V + ["R"]:
                    for c in V + ["L"]:
                        old, new = head(a, q, x, d), head(c, p, a, y)
                        out.add(dele({0: old, 1: d}, {-1: a}))
                        out.add(ins({-2: c, 0: old}, {-1: new}))
                        out.add(dele({-1: c, 0: new}, {1: old}))
                        out.add(ins({-1: c, 0: new}, {1: y}))

    # extend the workspace to the right when the head needs it
    for (q, x) in rights:
        if q == qf or (q == qs and x == E):
            continue
        carrier = carriers[("R", q, x)]
        for a in left_range(q):
            at_end, fresh = head(a, q, x, "R"), head(a, q, x, E)
            out.add(ins({0: at_end, 1: "R"}, {2: "R"}))
            out.add(dele({0: at_end, 2: "R"}, {1: "R"}))
            out.add(ins({0: at_end, 2: "R"}, {1: carrier}))
            out.add(dele({-1: a, 1: carrier}, {0: at_end}))
            out.add(ins({-1: a, 1: carrier}, {0: fresh}))
            out.add(dele({0: fresh, 2: "R"}, {1: carrier}))
            out.add(ins({0: fresh, 2: "R"}, {1: E}))

    # extend the workspace to the left
    for (q, x) in lefts:
        if q == qf:
            continue
        carrier = carriers[("L", q, x)]
        for d in V + ["R"]:
            at_end, fresh = head("L", q, x, d), head(E, q, x, d)
            out.add(ins({-1: "L", 0: at_end}, {-2: "L"}))
            out.add(dele({-2: "L", 0: at_end}, {-1: "L"}))
            out.add(ins({-2: "L", 0: at_end}, {-1: carrier}))
            out.add(dele({-1: carrier, 1: d}, {0: at_end}))
            out.add(ins({-1: carrier, 1: d}, {0: fresh}))
            out.add(dele({-2: "L", 0: fresh}, {-1: carrier}))
            out.add(ins({-2: "L", 0: fresh}, {-1: E}))

    # final state at the left end: retire L and start the sweep.  The sweep
    # head records L' as its left neighbour, so L' stays behind as an inert
    # cell until the cleanup deletes it.
    Lp, Rp = prime("L"), prime("R")
    for x in V:
        for d in V + ["R"]:
            done = head("L", qf, x, d)
            sweep = head(Lp, qs, E, x)
            out.add(ins({-1: "L", 0: done}, {-2: Lp}))
            out.add(dele({-2: Lp, 0: done}, {-1: "L"}))
            out.add(ins({-2: Lp, 0: done}, {-1: sweep}))
            # the blank left behind looks like the first half of a sweep move,
            # whose second half restores x inside the next composite
            out.add(dele({-1: sweep, 1: d}, {0: done}))

    # sweep reaches the right end: retire R and the head
    for a in T + [Ep]:
        last = head(a, qs, E, "R")
        out.add(ins({0: last, 1: "R"}, {2: Rp}))
        out.add(dele({0: last, 2: Rp}, {1: "R"}))
        out.add(ins({0: last, 2: Rp}, {1: Ep}))
        out.add(dele({-1: a, 1: Ep}, {0: last}))
    out.add(ins({0: Ep, 1: Rp}, {-1: Ep}))
    out.add(dele({0: Ep, 1: Ep}, {2: Rp}))
    out.add(dele({}, {0: Ep}))
    out.add(dele({}, {0: Lp}))

    # traps: any leftover end marker keeps the derivation alive forever
    out.add(ins({0: "R"}, {1: "F"}))
    out.add(ins({0: Rp}, {1: "F"}))
    out.add(ins({0: "F"}, {1: "F"}))

    rules = tuple(out.rules)
    axiom = parse_array(f"L {E} {head(E, m.initial, E, E)} {E} R")
    symbols = set(axiom.symbols)
    for r in rules:
        symbols |= r.symbols()
    symbols |= set(T)
    assert rules_norm(rules) <= 2
    return Grammar(frozenset(symbols), frozenset(T), axiom, rules)
