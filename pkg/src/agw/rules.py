"""Insertion, deletion and classical array rules.

A rule is a *selector* and a *payload*, both sets of :class:`PatternCell`
offsets relative to an anchor ``v``:

* ``INSERTION``: the selector must match; the payload symbols are written into
  positions that must all be unoccupied.
* ``DELETION``: the selector must match and the payload symbols must be
  present; the payload positions are blanked.
* ``CLASSICAL``: selector is the left side, payload the right side, both over
  the same window; the window is overwritten (``#`` on the right blanks it).

A selector entry ``#`` requires the position to be unoccupied.
"""
from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .arrays import BLANK, EMPTY, Array1D, ParseError, check_symbol, parse_array, render_array


class Kind(enum.Enum):
    INSERTION = "ins"
    DELETION = "del"
    CLASSICAL = "cls"


@dataclass(frozen=True, order=True)
class PatternCell:
    offset: int
    entry: str  # a symbol or BLANK

    @property
    def is_blank(self) -> bool:
        return self.entry == BLANK


def _cells(spec: Mapping[int, str] | Iterable[PatternCell]) -> tuple[PatternCell, ...]:
    if isinstance(spec, Mapping):
        cells = [PatternCell(o, e) for o, e in spec.items()]
    else:
        cells = list(spec)
    offsets = [c.offset for c in cells]
    if len(set(offsets)) != len(offsets):
        raise ValueError(f"duplicate offset in pattern {offsets}")
    for c in cells:
        if c.entry != BLANK:
            check_symbol(c.entry)
    return tuple(sorted(cells))


class _Matcher:
    """Precomputed matching plan for one rule."""

    __slots__ = ("kind", "sel_syms", "sel_blanks", "payload", "anchor", "span_lo", "span_hi")

    def __init__(self, rule: "Rule"):
        self.kind = rule.kind
        self.sel_syms = tuple((c.offset, c.entry) for c in rule.selector if not c.is_blank)
        self.sel_blanks = tuple(c.offset for c in rule.selector if c.is_blank)
        self.payload = tuple((c.offset, c.entry) for c in rule.payload)
        anchor = None
        if self.sel_syms:
            anchor = self.sel_syms[0]
        elif rule.kind is Kind.DELETION and self.payload:
            anchor = self.payload[0]
        self.anchor = anchor
        offs = [o for o, _ in self.payload]
        self.span_lo = min(offs) if offs else 0
        self.span_hi = max(offs) if offs else 0

    def candidates(self, a: Array1D) -> Iterable[int]:
        if self.anchor is not None:
            off, sym = self.anchor
            return [p - off for p in a.positions_of(sym)]
        # context-free form: a bounded window keeps the anchor set finite
        if not a:
            return [0]
        span = self.span_hi - self.span_lo
        return range(a.min_pos - 1 - span, a.max_pos + 2)

    def matches(self, m: Mapping[int, str], v: int) -> bool:
        get = m.get
        for o, s in self.sel_syms:
            if get(v + o) != s:
                return False
        for o in self.sel_blanks:
            if v + o in m:
                return False
        kind = self.kind
        if kind is Kind.INSERTION:
            for o, _ in self.payload:
                if v + o in m:
                    return False
        elif kind is Kind.DELETION:
            for o, s in self.payload:
                if get(v + o) != s:
                    return False
        return True

    def sites(self, a: Array1D) -> list[int]:
        m = a.cells
        return sorted(v for v in self.candidates(a) if self.matches(m, v))

    def apply(self, m: Mapping[int, str], v: int) -> dict[int, str]:
        new = dict(m)
        kind = self.kind
        if kind is Kind.INSERTION:
            for o, s in self.payload:
                new[v + o] = s
        elif kind is Kind.DELETION:
            for o, _ in self.payload:
                del new[v + o]
        else:
            for o, s in self.payload:
                if s == BLANK:
                    new.pop(v + o, None)
                else:
                    new[v + o] = s
        return new


@dataclass(frozen=True)
class Rule:
    kind: Kind
    selector: tuple[PatternCell, ...]
    payload: tuple[PatternCell, ...]
    label: str | None = field(default=None, compare=False)
    _matcher: _Matcher = field(default=None, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "selector", _cells(self.selector))
        object.__setattr__(self, "payload", _cells(self.payload))
        sel = {c.offset for c in self.selector}
        pay = {c.offset for c in self.payload}
        if self.kind is Kind.CLASSICAL:
            if sel != pay:
                raise ValueError("classical rule sides must cover the same window")
            if not sel:
                raise ValueError("classical rule needs a non-empty window")
        else:
            if sel & pay:
                raise ValueError("selector and payload offsets must be disjoint")
            if any(c.is_blank for c in self.payload):
                raise ValueError("payload may not contain blanks")
            if not sel | pay:
                raise ValueError("rule has neither selector nor payload")
        object.__setattr__(self, "_matcher", _Matcher(self))

    @property
    def window(self) -> frozenset[int]:
        return frozenset(c.offset for c in self.selector) | frozenset(c.offset for c in self.payload)

    @property
    def norm(self) -> int:
        w = self.window
        return max(w) - min(w) if w else 0

    def symbols(self) -> set[str]:
        return {c.entry for c in self.selector + self.payload if not c.is_blank}

    def __str__(self) -> str:
        return format_rule(self)

    def __reduce__(self):
        return (Rule, (self.kind, self.selector, self.payload, self.label))


def ins(selector: Mapping[int, str], payload: Mapping[int, str], label: str | None = None) -> Rule:
    return Rule(Kind.INSERTION, selector, payload, label)


def dele(selector: Mapping[int, str], payload: Mapping[int, str], label: str | None = None) -> Rule:
    return Rule(Kind.DELETION, selector, payload, label)


def cls(lhs: Mapping[int, str], rhs: Mapping[int, str], label: str | None = None) -> Rule:
    return Rule(Kind.CLASSICAL, lhs, rhs, label)


def rule_norm(r: Rule) -> int:
    return r.norm


def rules_norm(rules: Iterable[Rule]) -> int:
    """Norm of a rule set: the maximum rule norm (0 for no rules)."""
    return max((r.norm for r in rules), default=0)


def match_sites(r: Rule, a: Array1D) -> list[int]:
    """All anchors ``v`` at which ``r`` applies to ``a``, ascending."""
    return r._matcher.sites(a)


def apply_at(r: Rule, a: Array1D, v: int, *, canonical: bool = True) -> Array1D:
    """Apply ``r`` at anchor ``v``.  The result is canonical unless told otherwise."""
    mt = r._matcher
    m = a.cells
    if not mt.matches(m, v):
        raise ValueError(f"rule {format_rule(r)} does not apply at {v}")
    return Array1D._from_map(mt.apply(m, v), canonical=canonical)


def applications(r: Rule, a: Array1D) -> list[Array1D]:
    """Canonical results of applying ``r`` at every site, in anchor order."""
    mt = r._matcher
    m = a.cells
    out = []
    for v in mt.candidates(a):
        if mt.matches(m, v):
            out.append(Array1D._from_map(mt.apply(m, v)))
    return out


def is_applicable(r: Rule, a: Array1D) -> bool:
    mt = r._matcher
    m = a.cells
    return any(mt.matches(m, v) for v in mt.candidates(a))


def is_non_shrinking(r: Rule) -> bool:
    """True if applying ``r`` can never drop an occupied cell."""
    if r.kind is Kind.INSERTION:
        return True
    if r.kind is Kind.DELETION:
        return False
    lhs = {c.offset for c in r.selector if not c.is_blank}
    rhs = {c.offset for c in r.payload if not c.is_blank}
    return lhs <= rhs


def string_ops_to_rules(terminals: Iterable[str]) -> list[Rule]:
    """Array rules that act like left/right insertion and deletion of one symbol."""
    alphabet = sorted(set(terminals))
    if not alphabet:
        raise ValueError("alphabet must be non-empty")
    out = []
    for a in alphabet:
        for b in alphabet:
            out.append(ins({0: b}, {1: a}, f"rins_{a}_{b}"))
            out.append(ins({0: b}, {-1: a}, f"lins_{a}_{b}"))
    for a in alphabet:
        out.append(dele({1: BLANK}, {0: a}, f"rdel_{a}"))
        out.append(dele({-1: BLANK}, {0: a}, f"ldel_{a}"))
    return out


# -- text syntax -------------------------------------------------------------

_BOX = {Kind.INSERTION: ("sel", "put"), Kind.DELETION: ("sel", "rem"), Kind.CLASSICAL: ("lhs", "rhs")}
_KIND_BY_TAG = {k.value: k for k in Kind}
_RULE_RE = re.compile(
    r"""\s*(?:(?P<label>[A-Za-z0-9_'.\-]+)\s*:\s*)?
        (?P<kind>ins|del|cls)\s+
        (?P<n1>[a-z]+)\{(?P<b1>[^}]*)\}\s*
        (?P<n2>[a-z]+)\{(?P<b2>[^}]*)\}\s*$""",
    re.VERBOSE,
)


def _format_cells(cells: tuple[PatternCell, ...]) -> str:
    return ",".join(f"{c.offset}={c.entry}" for c in cells)


def format_rule(r: Rule) -> str:
    n1, n2 = _BOX[r.kind]
    head = f"{r.label}: " if r.label else ""
    return f"{head}{r.kind.value} {n1}{{{_format_cells(r.selector)}}} {n2}{{{_format_cells(r.payload)}}}"


def _parse_cells(body: str) -> dict[int, str]:
    out: dict[int, str] = {}
    body = body.strip()
    if not body:
        return out
    for part in body.split(","):
        part = part.strip()
        m = re.fullmatch(r"([+-]?\d+)\s*=\s*(\S+)", part)
        if not m:
            raise ParseError(f"bad pattern cell {part!r}")
        off = int(m.group(1))
        if off in out:
            raise ParseError(f"duplicate offset {off}")
        tok = m.group(2)
        out[off] = tok if tok == BLANK else check_symbol(tok)
    return out


def parse_rule(text: str) -> Rule:
    """Parse ``[label:] ins|del|cls <box>{...} <box>{...}``."""
    m = _RULE_RE.fullmatch(text)
    if not m:
        raise ParseError(f"cannot parse rule {text.strip()!r}")
    kind = _KIND_BY_TAG[m.group("kind")]
    if (m.group("n1"), m.group("n2")) != _BOX[kind]:
        raise ParseError(f"{kind.value} rule expects {_BOX[kind][0]}{{}} {_BOX[kind][1]}{{}}")
    sel, pay = _parse_cells(m.group("b1")), _parse_cells(m.group("b2"))
    try:
        return Rule(kind, sel, pay, m.group("label"))
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


# -- grammars ----------------------------------------------------------------

FORMAT_VERSION = "agw/1"


@dataclass(frozen=True)
class Grammar:
    alphabet: frozenset[str]
    terminals: frozenset[str]
    axiom: Array1D
    rules: tuple[Rule, ...]

    def __post_init__(self):
        object.__setattr__(self, "alphabet", frozenset(self.alphabet))
        object.__setattr__(self, "terminals", frozenset(self.terminals))
        object.__setattr__(self, "rules", tuple(self.rules))
        object.__setattr__(self, "axiom", self.axiom.normalize())
        if not self.terminals <= self.alphabet:
            raise ValueError(f"terminals outside alphabet: {sorted(self.terminals - self.alphabet)}")
        if not self.axiom.symbols <= self.alphabet:
            raise ValueError(f"axiom symbols outside alphabet: {sorted(self.axiom.symbols - self.alphabet)}")
        for r in self.rules:
            extra = r.symbols() - self.alphabet
            if extra:
                raise ValueError(f"rule {format_rule(r)} uses undeclared symbols {sorted(extra)}")

    @property
    def nonterminals(self) -> frozenset[str]:
        return self.alphabet - self.terminals

    @property
    def norm(self) -> int:
        return rules_norm(self.rules)


def make_grammar(axiom: Array1D | str, rules: Iterable[Rule], terminals: Iterable[str] | None = None,
                 alphabet: Iterable[str] | None = None) -> Grammar:
    """Build a grammar, inferring the alphabet (and, if omitted, a pure terminal set)."""
    if isinstance(axiom, str):
        axiom = parse_array(axiom)
    rules = tuple(rules)
    if alphabet is None:
        syms = set(axiom.symbols)
        for r in rules:
            syms |= r.symbols()
        if terminals is not None:
            syms |= set(terminals)
        alphabet = syms
    alphabet = frozenset(alphabet)
    return Grammar(alphabet, alphabet if terminals is None else frozenset(terminals), axiom, rules)


def iter_lines(text: str):
    """Yield ``(lineno, stripped line)`` with ``%`` comments removed."""
    for n, raw in enumerate(text.splitlines(), 1):
        line = raw.split("%", 1)[0].strip()
        if line:
            yield n, line


def check_format_header(value: str, line: int) -> None:
    if value.strip() != FORMAT_VERSION:
        raise ParseError(f"unsupported format {value.strip()!r} (expected {FORMAT_VERSION})", line)


def parse_grammar(text: str) -> Grammar:
    """Parse a grammar file.

    ::

        format: agw/1
        alphabet: E S! L R        % optional, inferred when absent
        terminals: E S! L R
        axiom: E S! E
        rule right: ins sel{0=E} put{1=E}
    """
    alphabet = terminals = axiom = None
    rules: list[Rule] = []
    for n, line in iter_lines(text):
        key, _, rest = line.partition(":") if not line.startswith("rule ") else ("rule", "", line[5:])
        key = key.strip()
        try:
            if key == "rule":
                rules.append(parse_rule(rest))
            elif key == "format":
                check_format_header(rest, n)
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
    if axiom is None:
        raise ParseError("grammar has no axiom")
    if terminals is None:
        raise ParseError("grammar has no terminals line")
    try:
        return make_grammar(axiom, rules, terminals, alphabet)
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


def format_grammar(g: Grammar) -> str:
    lines = [
        f"format: {FORMAT_VERSION}",
        "alphabet: " + " ".join(sorted(g.alphabet)),
        "terminals: " + " ".join(sorted(g.terminals)),
        "axiom: " + render_array(g.axiom),
    ]
    lines += ["rule " + format_rule(r) for r in g.rules]
    return "\n".join(lines) + "\n"


__all__ = [
    "BLANK", "EMPTY", "Kind", "PatternCell", "Rule", "Grammar", "ins", "dele", "cls",
    "rule_norm", "rules_norm", "match_sites", "apply_at", "applications", "is_applicable",
    "string_ops_to_rules", "format_rule", "parse_rule", "parse_grammar", "format_grammar",
    "make_grammar", "is_non_shrinking",
]
