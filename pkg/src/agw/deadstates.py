"""Static detection of configurations that can never lead to a result.

The analysis works on an abstraction of a (possibly membrane-structured)
system: for one non-terminal symbol X at a time, an abstract node is a pair
``(membrane, X present?)``.  A rule moves between nodes according to its
targets and to whether it writes or may remove X.

Two auxiliary facts sharpen it:

* a *must-present* invariant per membrane, computed forward from the initial
  configuration, lists symbols every reachable configuration there contains;
* a rule is *certainly applicable* when the symbols known to be present
  guarantee a match (for example, an insertion next to a symbol on the side
  where the outermost occurrence always has blanks).

A node can end a derivation with a result only if it is terminal-capable (no
non-terminal is known to be present) and, in t-mode, no rule there is
certainly applicable.  The set of doomed pairs ``(membrane, X)`` is the
greatest fixpoint of: ``(m, X)`` is doomed if, from ``(m, X present)``,
no result-capable X-free node is reachable without passing through an edge
that writes a symbol already doomed in the destination membrane.

Soundness sketch: on any concrete path to a result, look at the last
configuration holding a doomed pair ``(m, X)``.  Every later step avoids
writing doomed pairs, and the final configuration is X-free and
result-capable, so the abstract search would have found that path.
"""
from __future__ import annotations

from collections import deque
from typing import Iterable, Mapping, Sequence

from .rules import Kind, Rule

Moves = Mapping[str, Sequence[tuple[Rule, Sequence[str]]]]


def writes(r: Rule) -> frozenset[str]:
    if r.kind is Kind.DELETION:
        return frozenset()
    return frozenset(c.entry for c in r.payload if not c.is_blank)


def removes(r: Rule) -> frozenset[str]:
    if r.kind is Kind.INSERTION:
        return frozenset()
    cells = r.payload if r.kind is Kind.DELETION else r.selector
    return frozenset(c.entry for c in cells if not c.is_blank)


def requires(r: Rule) -> frozenset[str]:
    """Symbols that must be present for ``r`` to apply."""
    syms = {c.entry for c in r.selector if not c.is_blank}
    if r.kind is Kind.DELETION:
        syms |= {c.entry for c in r.payload}
    return frozenset(syms)


def certainly_applicable(r: Rule, present: frozenset[str]) -> bool:
    """True if ``r`` applies to every array containing all of ``present``."""
    if r.kind is Kind.INSERTION:
        sym_cells = [c for c in r.selector if not c.is_blank]
        if not sym_cells:
            return len(r.payload) == 1
        if len(sym_cells) != 1 or sym_cells[0].entry not in present:
            return False
        o = sym_cells[0].offset
        others = [c.offset for c in r.selector if c.is_blank] + [c.offset for c in r.payload]
        # the outermost occurrence on that side has only blanks beyond it
        return all(x < o for x in others) or all(x > o for x in others)
    if r.kind is Kind.DELETION:
        return not r.selector and len(r.payload) == 1 and r.payload[0].entry in present
    return False


def must_present(moves: Moves, initial: str, axiom_symbols: Iterable[str]) -> dict[str, frozenset[str]]:
    """Symbols present in every reachable configuration of each membrane."""
    must: dict[str, frozenset[str]] = {initial: frozenset(axiom_symbols)}
    todo = deque([initial])
    while todo:
        m = todo.popleft()
        cur = must[m]
        for r, dests in moves[m]:
            out = ((cur | requires(r)) - removes(r)) | writes(r)
            for d in dests:
                old = must.get(d)
                new = out if old is None else old & out
                if new != old:
                    must[d] = new
                    todo.append(d)
    return must


def doomed_pairs(moves: Moves, initial: str, axiom_symbols: Iterable[str],
                 nonterminals: Iterable[str], halting_required: bool = True) -> dict[str, frozenset[str]]:
    """Map each membrane to the non-terminals whose presence there dooms a configuration."""
    nonterminals = frozenset(nonterminals)
    must = must_present(moves, initial, axiom_symbols)
    reachable = [m for m in moves if m in must]
    edges = []
    for m in reachable:
        for r, dests in moves[m]:
            w, rem, req = writes(r), removes(r), requires(r)
            for d in dests:
                if d in must:
                    edges.append((m, d, w, rem, req))
    mentions: dict[str, list[int]] = {}
    for i, (_, _, w, rem, req) in enumerate(edges):
        for y in w | rem | req:
            mentions.setdefault(y, []).append(i)

    def result_capable(m: str, known: frozenset[str]) -> bool:
        if known & nonterminals:
            return False
        if halting_required:
            return not any(certainly_applicable(r, known) for r, _ in moves[m])
        return True

    goals_for = {x: [m for m in reachable if result_capable(m, must[m] - {x})] for x in nonterminals}
    doomed = {m: set(nonterminals) for m in reachable}
    changed = True
    while changed:
        changed = False
        open_ids = [i for i, (_, d, w, _, _) in enumerate(edges) if w.isdisjoint(doomed[d])]
        pair_total: dict[tuple[str, str], int] = {}
        is_open = set(open_ids)
        for i in open_ids:
            key = edges[i][:2]
            pair_total[key] = pair_total.get(key, 0) + 1
        for x in sorted(nonterminals):
            back: dict[tuple[str, bool], list[tuple[str, bool]]] = {}
            own = [i for i in mentions.get(x, ()) if i in is_open]
            own_count: dict[tuple[str, str], int] = {}
            for i in own:
                key = edges[i][:2]
                own_count[key] = own_count.get(key, 0) + 1
            for (m, d), n in pair_total.items():
                if n > own_count.get((m, d), 0):
                    back.setdefault((d, True), []).append((m, True))
                    back.setdefault((d, False), []).append((m, False))
            for i in own:
                m, d, w, rem, _req = edges[i]
                back.setdefault((d, True), []).append((m, True))
                if x in rem:
                    back.setdefault((d, False), []).append((m, True))
                if x in w:
                    back.setdefault((d, True), []).append((m, False))
                elif x not in _req:
                    back.setdefault((d, False), []).append((m, False))
            goals = [(m, False) for m in goals_for[x]]
            seen = set(goals)
            queue = deque(goals)
            while queue:
                node = queue.popleft()
                for prev in back.get(node, ()):
                    if prev not in seen:
                        seen.add(prev)
                        queue.append(prev)
            for m in reachable:
                if x in doomed[m] and (m, True) in seen:
                    doomed[m].discard(x)
                    changed = True
    return {m: frozenset(v) for m, v in doomed.items()}
