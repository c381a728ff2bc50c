"""Sequential P systems whose single object is a one-dimensional array.

A configuration is an ``(array, membrane)`` pair.  One rule of the current
membrane is applied per step and the target indicator routes the result:

``here``
    stay in the current membrane
``out``
    move to the parent; at the skin the object leaves the system and the
    branch ends without a result
``in``
    move to any child (one successor per child)
``in(label)``
    move to the named child
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable

from .arrays import Array1D, ParseError, check_symbol, parse_array, render_array
from .deadstates import doomed_pairs, requires, writes
from .engine import Budget, LangResult, Mode, SystemAdapter, explore
from .rules import (FORMAT_VERSION, Grammar, Rule, applications, check_format_header, format_rule,
                    is_applicable, is_non_shrinking, iter_lines, parse_rule)

LABEL_RE = re.compile(r"[A-Za-z0-9_]+")


@dataclass(frozen=True)
class Target:
    kind: str  # "here" | "out" | "in" | "in_label"
    label: str | None = None

    def __post_init__(self):
        if self.kind not in ("here", "out", "in", "in_label"):
            raise ValueError(f"unknown target kind {self.kind!r}")
        if (self.kind == "in_label") != (self.label is not None):
            raise ValueError("only in(label) targets carry a label")

    def __str__(self) -> str:
        return f"in({self.label})" if self.kind == "in_label" else self.kind


HERE = Target("here")
OUT = Target("out")
IN = Target("in")


def in_label(label: str) -> Target:
    return Target("in_label", label)


def parse_target(text: str) -> Target:
    text = text.strip()
    if text in ("here", "out", "in"):
        return Target(text)
    m = re.fullmatch(r"in\(\s*([A-Za-z0-9_]+)\s*\)", text)
    if m:
        return in_label(m.group(1))
    raise ParseError(f"bad target {text!r}")


class MembraneTree:
    """Rooted tree of uniquely labelled membranes."""

    def __init__(self, root: str, children: dict[str, list[str]]):
        self.root = root
        self._children = {k: tuple(v) for k, v in children.items()}
        self._parent: dict[str, str | None] = {root: None}
        order = [root]
        for node in order:
            for c in self._children.get(node, ()):
                if c in self._parent:
                    raise ValueError(f"duplicate membrane label {c!r}")
                self._parent[c] = node
                order.append(c)
        extra = set(self._children) - set(self._parent)
        if extra:
            raise ValueError(f"membranes not connected to the root: {sorted(extra)}")
        self.labels = tuple(order)

    def children(self, label: str) -> tuple[str, ...]:
        return self._children.get(label, ())

    def parent(self, label: str) -> str | None:
        return self._parent[label]

    def __contains__(self, label: object) -> bool:
        return label in self._parent

    def depth(self, label: str) -> int:
        d = 0
        while self._parent[label] is not None:
            label = self._parent[label]
            d += 1
        return d

    @property
    def height(self) -> int:
        return max(self.depth(l) for l in self.labels)

    def render(self) -> str:
        def rec(node: str) -> str:
            inner = "".join(" " + rec(c) for c in self.children(node))
            return f"[{node}{inner}]"
        return rec(self.root)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, MembraneTree) and self.render() == other.render()

    def __hash__(self) -> int:
        return hash(self.render())

    def __reduce__(self):
        return (MembraneTree, (self.root, {k: list(v) for k, v in self._children.items()}))


def parse_membranes(text: str) -> MembraneTree:
    """Parse bracket notation such as ``[0 [I1 [I2]] [F1 [F2]]]``."""
    tokens = re.findall(r"\[|\]|[^\s\[\]]+", text)
    stack: list[str] = []
    children: dict[str, list[str]] = {}
    root = None
    expect_label = False
    for tok in tokens:
        if tok == "[":
            if expect_label:
                raise ParseError("membrane label missing after '['")
            if root is not None and not stack:
                raise ParseError("more than one root membrane")
            expect_label = True
        elif tok == "]":
            if expect_label or not stack:
                raise ParseError("unbalanced ']' in membrane structure")
            stack.pop()
        else:
            if not expect_label or not LABEL_RE.fullmatch(tok):
                raise ParseError(f"unexpected token {tok!r} in membrane structure")
            expect_label = False
            if tok in children:
                raise ParseError(f"duplicate membrane label {tok!r}")
            children[tok] = []
            if stack:
                children[stack[-1]].append(tok)
            else:
                root = tok
            stack.append(tok)
    if stack or expect_label:
        raise ParseError("unbalanced '[' in membrane structure")
    if root is None:
        raise ParseError("empty membrane structure")
    return MembraneTree(root, children)


@dataclass(frozen=True)
class TargetedRule:
    membrane: str
    rule: Rule
    target: Target = HERE

    def __str__(self) -> str:
        return f"@{self.membrane} {format_rule(self.rule)} -> {self.target}"


@dataclass(frozen=True)
class Configuration:
    array: Array1D
    membrane: str

    def __str__(self) -> str:
        return f"{self.membrane}: {render_array(self.array)}"


@dataclass(frozen=True)
class PSystem:
    alphabet: frozenset[str]
    terminals: frozenset[str]
    tree: MembraneTree
    rules: tuple[TargetedRule, ...]
    initial: str
    axiom: Array1D
    _by_membrane: dict = field(default=None, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "alphabet", frozenset(self.alphabet))
        object.__setattr__(self, "terminals", frozenset(self.terminals))
        object.__setattr__(self, "rules", tuple(self.rules))
        object.__setattr__(self, "axiom", self.axiom.normalize())
        if self.initial not in self.tree:
            raise ValueError(f"unknown initial membrane {self.initial!r}")
        if not self.terminals <= self.alphabet:
            raise ValueError(f"terminals outside alphabet: {sorted(self.terminals - self.alphabet)}")
        if not self.axiom.symbols <= self.alphabet:
            raise ValueError(f"axiom symbols outside alphabet: {sorted(self.axiom.symbols - self.alphabet)}")
        by: dict[str, list[TargetedRule]] = {l: [] for l in self.tree.labels}
        for tr in self.rules:
            if tr.membrane not in self.tree:
                raise ValueError(f"rule for unknown membrane {tr.membrane!r}")
            kids = self.tree.children(tr.membrane)
            if tr.target.kind == "in" and not kids:
                raise ValueError(f"target 'in' in membrane {tr.membrane!r} which has no children")
            if tr.target.kind == "in_label" and tr.target.label not in kids:
                raise ValueError(f"in({tr.target.label}) is not a child of {tr.membrane!r}")
            extra = tr.rule.symbols() - self.alphabet
            if extra:
                raise ValueError(f"rule {tr} uses undeclared symbols {sorted(extra)}")
            by[tr.membrane].append(tr)
        object.__setattr__(self, "_by_membrane", {k: tuple(v) for k, v in by.items()})

    def rules_in(self, membrane: str) -> tuple[TargetedRule, ...]:
        return self._by_membrane[membrane]

    def destinations(self, tr: TargetedRule) -> tuple[str, ...]:
        """Membranes the object may move to; empty when it leaves the skin."""
        k = tr.target.kind
        if k == "here":
            return (tr.membrane,)
        if k == "out":
            p = self.tree.parent(tr.membrane)
            return () if p is None else (p,)
        if k == "in":
            return self.tree.children(tr.membrane)
        return (tr.target.label,)

    @property
    def nonterminals(self) -> frozenset[str]:
        return self.alphabet - self.terminals

    @property
    def norm(self) -> int:
        return max((tr.rule.norm for tr in self.rules), default=0)

    def __reduce__(self):
        return (PSystem, (self.alphabet, self.terminals, self.tree, self.rules, self.initial, self.axiom))


def tree_height(p: PSystem) -> int:
    return p.tree.height


def is_simple(p: PSystem) -> bool:
    return all(tr.target.kind != "in_label" for tr in p.rules)


def psystem_successors(p: PSystem, c: Configuration) -> list[Configuration]:
    """One-step successors of ``c``, deduplicated, in rule/anchor/destination order."""
    out: dict[Configuration, None] = {}
    for tr in p.rules_in(c.membrane):
        dests = p.destinations(tr)
        if not dests:
            continue
        for b in applications(tr.rule, c.array):
            for d in dests:
                out[Configuration(b, d)] = None
    return list(out)


def is_halting_configuration(p: PSystem, c: Configuration) -> bool:
    """No rule of the current membrane applies (a rule that ejects the object still counts)."""
    return not any(is_applicable(tr.rule, c.array) for tr in p.rules_in(c.membrane))


def psystem_doomed_symbols(p: PSystem, mode: Mode = Mode.T) -> dict[str, frozenset[str]]:
    """Per membrane, the non-terminals whose presence rules out any result."""
    moves = {m: [(tr.rule, p.destinations(tr)) for tr in p.rules_in(m)] for m in p.tree.labels}
    return doomed_pairs(moves, p.initial, p.axiom.symbols, p.nonterminals,
                        halting_required=mode is Mode.T)


class PSystemAdapter(SystemAdapter):
    """Exploration adapter; with a doomed-symbol table it also skips hopeless moves.

    A move is hopeless when the rule writes a symbol that is doomed in the
    destination membrane.  A successor is dropped early when every rule that
    applies to it is hopeless: it can neither halt nor lead anywhere useful.
    """

    def __init__(self, p: PSystem, doomed: dict[str, frozenset[str]] | None = None):
        self.p = p
        self.initial = Configuration(p.axiom, p.initial)
        self.terminals = p.terminals
        self.non_shrinking = all(is_non_shrinking(tr.rule) for tr in p.rules)
        self.lookahead = doomed is not None
        self.doomed = {m: frozenset(v) for m, v in (doomed or {}).items() if v}
        # per membrane: (rule, useful destinations) with hopeless moves removed
        self.plan: dict[str, list[tuple[Rule, tuple[str, ...], frozenset[str]]]] = {}
        for m in p.tree.labels:
            entries = []
            for tr in p.rules_in(m):
                w = writes(tr.rule)
                dests = tuple(d for d in p.destinations(tr)
                              if not (w & self.doomed.get(d, frozenset())))
                entries.append((tr.rule, dests, requires(tr.rule)))
            self.plan[m] = entries
        # useful rules first so the lookahead can stop early
        self.checks = {m: sorted(e, key=lambda t: not t[1]) for m, e in self.plan.items()}

    def is_dead(self, state) -> bool:
        bad = self.doomed.get(state.membrane)
        return bad is not None and not state.array.symbols.isdisjoint(bad)

    def _hopeless(self, c: Configuration) -> bool:
        """Some rule applies to ``c`` but none of them leads to a useful successor."""
        syms = c.array.symbols
        any_applicable = False
        for r, dests, req in self.checks[c.membrane]:
            if not dests and any_applicable:
                break
            if req <= syms and is_applicable(r, c.array):
                if dests:
                    return False
                any_applicable = True
        return any_applicable

    def step(self, state):
        out: dict[Configuration, None] = {}
        syms = state.array.symbols
        for r, dests, req in self.plan[state.membrane]:
            if not dests or not req <= syms:
                continue
            for b in applications(r, state.array):
                for d in dests:
                    c = Configuration(b, d)
                    if c in out or self.is_dead(c):
                        continue
                    if self.lookahead and self._hopeless(c):
                        continue
                    out[c] = None
        succ = list(out)
        halting = not succ and is_halting_configuration(self.p, state)
        return succ, halting

    def is_halting(self, state) -> bool:
        return is_halting_configuration(self.p, state)

    def array_of(self, state):
        return state.array

    def render_state(self, state) -> str:
        return str(state)


def run_t_bounded(p: PSystem, budget: Budget, jobs: int = 1, prune_dead: bool = True) -> LangResult:
    """Terminal arrays of halting configurations reachable within ``budget``.

    ``nonterminal_halting`` on the result lists halting configurations whose
    array is not terminal; they are reported, never collected.
    """
    doomed = psystem_doomed_symbols(p) if prune_dead else None
    return explore(PSystemAdapter(p, doomed), budget, Mode.T, jobs=jobs)


def wrap_grammar(g: Grammar, label: str = "0") -> PSystem:
    """A one-membrane system applying the rules of ``g`` with target ``here``."""
    return PSystem(g.alphabet, g.terminals, MembraneTree(label, {}),
                   tuple(TargetedRule(label, r, HERE) for r in g.rules), label, g.axiom)


# -- file format ---------------------------------------------------------------

_PRULE_RE = re.compile(r"@(?P<m>[A-Za-z0-9_]+)\s+(?P<body>.*?)\s*->\s*(?P<target>\S+)\s*$")


def parse_psystem(text: str) -> PSystem:
    """Parse the P-system file format (``membranes:``, ``init:``, ``rule @M ... -> target``)."""
    tree = init = alphabet = terminals = axiom = None
    rules: list[TargetedRule] = []
    for n, line in iter_lines(text):
        try:
            if line.startswith("rule "):
                m = _PRULE_RE.fullmatch(line[5:].strip())
                if not m:
                    raise ParseError(f"cannot parse P-system rule {line!r}")
                rules.append(TargetedRule(m.group("m"), parse_rule(m.group("body")),
                                          parse_target(m.group("target"))))
                continue
            key, sep, rest = line.partition(":")
            key = key.strip()
            if not sep:
                raise ParseError(f"expected 'key: value', got {line!r}")
            if key == "format":
                check_format_header(rest, n)
            elif key == "membranes":
                tree = parse_membranes(rest)
            elif key == "init":
                init = rest.strip()
            elif key == "alphabet":
                alphabet = [check_symbol(t) for t in rest.split()]
            elif key == "terminals":
                terminals = [check_symbol(t) for t in rest.split()]
            elif key == "axiom":
                axiom = parse_array(rest)
            else:
                raise ParseError(f"unknown header {key!r}")
        except ParseError as exc:
            if exc.line is None:
                raise ParseError(str(exc), n) from None
            raise
    for name, val in (("membranes", tree), ("init", init), ("terminals", terminals), ("axiom", axiom)):
        if val is None:
            raise ParseError(f"P system has no {name} line")
    if alphabet is None:
        syms = set(axiom.symbols) | set(terminals)
        for tr in rules:
            syms |= tr.rule.symbols()
        alphabet = syms
    try:
        return PSystem(frozenset(alphabet), frozenset(terminals), tree, tuple(rules), init, axiom)
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


def format_psystem(p: PSystem) -> str:
    lines = [
        f"format: {FORMAT_VERSION}",
        "membranes: " + p.tree.render(),
        "init: " + p.initial,
        "alphabet: " + " ".join(sorted(p.alphabet)),
        "terminals: " + " ".join(sorted(p.terminals)),
        "axiom: " + render_array(p.axiom),
    ]
    lines += ["rule " + str(tr) for tr in p.rules]
    return "\n".join(lines) + "\n"


def looks_like_psystem(text: str) -> bool:
    return any(line.startswith("membranes:") for _, line in iter_lines(text))


__all__ = [
    "Target", "HERE", "OUT", "IN", "in_label", "parse_target", "MembraneTree", "parse_membranes",
    "TargetedRule", "Configuration", "PSystem", "tree_height", "is_simple", "psystem_successors",
    "is_halting_configuration", "run_t_bounded", "wrap_grammar", "parse_psystem", "format_psystem",
    "looks_like_psystem", "psystem_doomed_symbols", "PSystemAdapter",
]
