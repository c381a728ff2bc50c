"""Ground-truth generators and the language comparison harness.

Each oracle is written directly against its own model (strings, Turing
machine configurations, dictionaries of cells) and does not reuse the rule
matcher, so agreement with a compiled system is meaningful evidence.
"""
from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass, field

from .arrays import BLANK, Array1D, render_array, sort_key
from .constructions.pcp import PCPInstance
from .constructions.tm import TuringMachine
from .engine import Budget, LangResult
from .rules import Grammar, Kind


# -- PCP -------------------------------------------------------------------

def pcp_solutions(inst: PCPInstance, max_indices: int) -> list[tuple[tuple[int, ...], str]]:
    """All index sequences of length ``<= max_indices`` that solve ``inst``.

    Breadth-first over sequences, keeping only those where one concatenation
    is a prefix of the other.  Indices are 1-based.
    """
    if max_indices < 1:
        raise ValueError("max_indices must be at least 1")
    found = []
    queue = deque([((), "", "")])
    while queue:
        seq, top, bottom = queue.popleft()
        if len(seq) == max_indices:
            continue
        for i, (u, v) in enumerate(zip(inst.u, inst.v), 1):
            t, b = top + u, bottom + v
            if not (t.startswith(b) or b.startswith(t)):
                continue
            nseq = seq + (i,)
            if t == b:
                found.append((nseq, t))
            queue.append((nseq, t, b))
    for seq, word in found:
        assert "".join(inst.u[i - 1] for i in seq) == "".join(inst.v[i - 1] for i in seq) == word
    return found


# -- Turing machines -----------------------------------------------------------

def tm_generate(m: TuringMachine, budget: Budget) -> LangResult:
    """Tapes of halting runs from the empty tape, as arrays with blanks dropped.

    Configurations are ``(state, head, tape)`` with the tape stored as a
    sorted tuple of non-blank cells.  ``max_cells`` bounds the visited tape
    span; ``max_steps`` bounds the run length.
    """
    E = m.blank
    terminals = set(m.inputs)
    table: dict[tuple[str, str], list] = {}
    for q, x, p, y, d in m.delta:
        table.setdefault((q, x), []).append((p, y, 1 if d == "R" else -1))

    start = (m.initial, 0, (), 0, 0)  # state, head, tape, lowest and highest visited cell
    seen = {start[:3]}
    frontier = [start]
    results: dict[Array1D, None] = {}
    truncated: set[str] = set()
    pruned_min = None
    steps = 0
    while frontier:
        nxt = []
        for q, pos, tape, lo, hi in frontier:
            cells = dict(tape)
            if q == m.final:
                if all(s in terminals for s in cells.values()):
                    a = Array1D._from_map(cells)
                    if a not in results:
                        if budget.max_results is not None and len(results) >= budget.max_results:
                            truncated.add("results")
                            nxt = []
                            break
                        results[a] = None
                continue
            for p, y, dv in table.get((q, cells.get(pos, E)), ()):
                new = dict(cells)
                if y == E:
                    new.pop(pos, None)
                else:
                    new[pos] = y
                npos = pos + dv
                nlo, nhi = min(lo, npos), max(hi, npos)
                key = (p, npos, tuple(sorted(new.items())))
                if key in seen:
                    continue
                if budget.max_steps is not None and steps >= budget.max_steps:
                    truncated.add("steps")
                    pruned_min = 0
                    continue
                span = nhi - nlo + 1
                if budget.max_cells is not None and span > budget.max_cells:
                    truncated.add("cells")
                    pruned_min = span if pruned_min is None else min(pruned_min, span)
                    continue
                seen.add(key)
                nxt.append((p, npos, key[2], nlo, nhi))
        frontier = nxt
        steps += 1
    return LangResult(tuple(sorted(results, key=sort_key)), complete=not truncated,
                      truncated=frozenset(truncated), pruned_min_cells=pruned_min, explored=len(seen))


# -- classical array grammars -------------------------------------------------

def _classical_steps(rules, cells: dict[int, str]):
    """Apply classical rules by direct window comparison over candidate anchors."""
    if cells:
        lo, hi = min(cells), max(cells)
    else:
        lo = hi = 0
    for lhs, rhs in rules:
        offs = list(lhs)
        # every window must touch an occupied cell unless it is all blank
        span_lo, span_hi = min(offs), max(offs)
        for v in range(lo - span_hi - 1, hi - span_lo + 2):
            if all(cells.get(v + o, BLANK) == s for o, s in lhs.items()):
                new = dict(cells)
                for o, s in rhs.items():
                    if s == BLANK:
                        new.pop(v + o, None)
                    else:
                        new[v + o] = s
                yield new


def _canon(cells: dict[int, str]) -> tuple:
    if not cells:
        return ()
    base = min(cells)
    return tuple(sorted((p - base, s) for p, s in cells.items()))


def arba_language(g: Grammar, budget: Budget) -> LangResult:
    """Bounded STAR-mode language of a grammar of classical rules."""
    rules = []
    for r in g.rules:
        if r.kind is not Kind.CLASSICAL:
            raise ValueError("arba_language only handles classical rules")
        rules.append(({c.offset: c.entry for c in r.selector}, {c.offset: c.entry for c in r.payload}))
    terminals = set(g.terminals)
    start = _canon(dict(g.axiom.items))
    seen = {start}
    frontier = [start]
    results: dict[tuple, None] = {}
    truncated: set[str] = set()
    pruned_min = None
    depth = 0
    stop = False
    while frontier and not stop:
        nxt = []
        for state in frontier:
            if all(s in terminals for _, s in state):
                if state not in results:
                    if budget.max_results is not None and len(results) >= budget.max_results:
                        truncated.add("results")
                        stop = True
                        break
                    results[state] = None
            for new in _classical_steps(rules, dict(state)):
                key = _canon(new)
                if key in seen:
                    continue
                if budget.max_steps is not None and depth >= budget.max_steps:
                    truncated.add("steps")
                    pruned_min = len(key) if pruned_min is None else min(pruned_min, len(key))
                    continue
                too_big = budget.max_cells is not None and len(key) > budget.max_cells
                too_wide = budget.max_extent is not None and key and key[-1][0] > budget.max_extent
                if too_big or too_wide:
                    truncated.add("cells" if too_big else "extent")
                    pruned_min = len(key) if pruned_min is None else min(pruned_min, len(key))
                    continue
                seen.add(key)
                nxt.append(key)
        frontier = nxt
        depth += 1
    arrays = tuple(sorted((Array1D._trusted(k) for k in results), key=sort_key))
    return LangResult(arrays, complete=not truncated, truncated=frozenset(truncated),
                      pruned_min_cells=pruned_min, explored=len(seen))


# -- comparison ----------------------------------------------------------------

class Verdict(enum.Enum):
    EQUAL = "EQUAL"
    DIFFER = "DIFFER"
    INCONCLUSIVE = "INCONCLUSIVE"


@dataclass(frozen=True)
class EquivalenceReport:
    left_only: tuple[Array1D, ...]
    right_only: tuple[Array1D, ...]
    both: tuple[Array1D, ...]
    verdict: Verdict
    region: int
    notes: tuple[str, ...] = field(default=())

    def render(self) -> str:
        lines = [f"verdict: {self.verdict.value}", f"region: {self.region}"]
        lines += [f"note: {n}" for n in self.notes]
        for tag, arrs in (("both", self.both), ("left_only", self.left_only), ("right_only", self.right_only)):
            lines.append(f"{tag}: {len(arrs)}")
            lines += [f"  {render_array(a)}" if len(a) else "  (empty array)" for a in arrs]
        return "\n".join(lines) + "\n"


def _truncation_hits_region(res: LangResult, region: int) -> bool:
    if "results" in res.truncated:
        return True
    if res.complete:
        return False
    return res.pruned_min_cells is None or res.pruned_min_cells <= region


def _describe(side: str, res: LangResult) -> str:
    caps = ",".join(sorted(res.truncated)) or "none"
    return (f"{side}: complete={'true' if res.complete else 'false'} caps_hit={caps} "
            f"pruned_min_cells={res.pruned_min_cells if res.pruned_min_cells is not None else '-'} "
            f"explored={res.explored}")


def compare_languages(left: LangResult, right: LangResult, region: int) -> EquivalenceReport:
    """Compare two bounded languages on the arrays with at most ``region`` cells."""
    lset = {a.normalize() for a in left.arrays if len(a) <= region}
    rset = {a.normalize() for a in right.arrays if len(a) <= region}
    lo = tuple(sorted(lset - rset, key=sort_key))
    ro = tuple(sorted(rset - lset, key=sort_key))
    both = tuple(sorted(lset & rset, key=sort_key))
    if _truncation_hits_region(left, region) or _truncation_hits_region(right, region):
        verdict = Verdict.INCONCLUSIVE
    elif lo or ro:
        verdict = Verdict.DIFFER
    else:
        verdict = Verdict.EQUAL
    notes = (_describe("left", left), _describe("right", right))
    return EquivalenceReport(lo, ro, both, verdict, region, notes)


__all__ = [
    "pcp_solutions", "tm_generate", "arba_language", "Verdict", "EquivalenceReport",
    "compare_languages",
]
