"""Bounded breadth-first derivation and language enumeration.

The core loop :func:`explore` is shared by grammars and P systems.  A
*system adapter* supplies the successor function, the halting test and a
dead-state predicate; the loop handles deduplication, budgets, result
collection and (optionally) process-parallel frontier expansion.

Completeness bookkeeping
------------------------
``LangResult.truncated`` lists every cap that was hit.  ``complete`` says
whether the collected arrays are exactly the language restricted to the
explored region.  Step and result truncation always clear it.  Cell and extent
pruning clear it too, unless every rule is non-shrinking: then a pruned state
can only lead to arrays that are themselves outside the region.

Dead states
-----------
:mod:`agw.deadstates` finds symbols whose presence (in a given membrane)
rules out every result.  States holding one are dropped as soon as they are
generated; this never touches the completeness flag.  Such states are also
not checked for halting, so the non-terminal halting report only covers
states that were actually explored.
"""
from __future__ import annotations

import enum
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Hashable, Iterable, Sequence

from .arrays import Array1D, render_array, sort_key
from .deadstates import doomed_pairs
from .rules import Grammar, applications, is_applicable, is_non_shrinking


class Mode(enum.Enum):
    STAR = "star"
    T = "t"


@dataclass(frozen=True)
class Budget:
    """Enumeration caps.  ``None`` means unbounded; at least one cap must be finite."""

    max_steps: int | None = 10000
    max_cells: int | None = 16
    max_extent: int | None = 64
    max_results: int | None = 10000

    def __post_init__(self):
        caps = (self.max_steps, self.max_cells, self.max_extent, self.max_results)
        for c in caps:
            if c is not None and c < 0:
                raise ValueError("budget caps must be non-negative")
        if all(c is None for c in caps):
            raise ValueError("at least one budget cap must be finite")

    def fits(self, a: Array1D) -> str | None:
        """Name of the spatial cap ``a`` violates, or None."""
        if self.max_cells is not None and len(a) > self.max_cells:
            return "cells"
        if self.max_extent is not None and a.extent > self.max_extent:
            return "extent"
        return None


@dataclass(frozen=True)
class LangResult:
    arrays: tuple[Array1D, ...]
    complete: bool
    truncated: frozenset[str] = frozenset()
    first_pruned: str | None = None
    pruned_min_cells: int | None = None
    explored: int = 0
    nonterminal_halting: tuple[str, ...] = ()

    def rendered(self) -> list[str]:
        return [render_array(a) for a in self.arrays]

    def __contains__(self, a: object) -> bool:
        if isinstance(a, str):
            return a in self.rendered()
        return isinstance(a, Array1D) and a.normalize() in self.arrays

    def __len__(self) -> int:
        return len(self.arrays)


class SystemAdapter:
    """What :func:`explore` needs to know about a rewriting system.

    States are hashable; ``array_of`` extracts the array, ``render_state``
    gives a stable text form for reports.
    """

    initial: Hashable
    terminals: frozenset[str]
    non_shrinking: bool = False

    def is_dead(self, state) -> bool:
        """True if ``state`` provably cannot lead to a result."""
        return False

    def step(self, state) -> tuple[list, bool]:
        """Return ``(successors, halting)`` for ``state``."""
        raise NotImplementedError

    def is_halting(self, state) -> bool:
        raise NotImplementedError

    def array_of(self, state) -> Array1D:
        return state

    def render_state(self, state) -> str:
        return render_array(self.array_of(state))


class GrammarAdapter(SystemAdapter):
    def __init__(self, g: Grammar, dead_symbols: Iterable[str] = ()):
        self.g = g
        self.initial = g.axiom
        self.terminals = g.terminals
        self.non_shrinking = all(is_non_shrinking(r) for r in g.rules)
        self.dead_symbols = frozenset(dead_symbols)

    def is_dead(self, state) -> bool:
        return bool(self.dead_symbols) and not state.symbols.isdisjoint(self.dead_symbols)

    def step(self, state):
        succ = successors(self.g, state)
        return succ, not succ

    def is_halting(self, state) -> bool:
        return is_halting(self.g, state)


# -- worker plumbing for --jobs ------------------------------------------------

_WORKER_ADAPTER: SystemAdapter | None = None


def _init_worker(adapter: SystemAdapter) -> None:
    global _WORKER_ADAPTER
    _WORKER_ADAPTER = adapter


def _worker_step(states: list) -> list:
    return [_WORKER_ADAPTER.step(s) for s in states]


def _chunks(seq: Sequence, n: int) -> list[list]:
    size = max(1, (len(seq) + n - 1) // n)
    return [list(seq[i:i + size]) for i in range(0, len(seq), size)]


def _is_terminal(a: Array1D, terminals: frozenset[str]) -> bool:
    return a.symbols <= terminals


def explore(adapter: SystemAdapter, budget: Budget, mode: Mode = Mode.T, *,
            collect_all: bool = False, jobs: int = 1) -> LangResult:
    """Breadth-first exploration from ``adapter.initial`` under ``budget``.

    ``collect_all`` gathers every reached array (used by :func:`reach`);
    otherwise STAR collects terminal arrays and T collects terminal arrays of
    halting states.
    """
    terminals = adapter.terminals
    drop_dead = not collect_all
    truncated: set[str] = set()
    incomplete = False
    first_pruned: str | None = None
    pruned_min: int | None = None
    results: dict[Array1D, None] = {}
    nonterm_halting: dict[str, None] = {}

    def prune(state, reason: str) -> None:
        nonlocal first_pruned, pruned_min, incomplete
        truncated.add(reason)
        if reason == "steps" or not adapter.non_shrinking:
            incomplete = True
        if first_pruned is None:
            first_pruned = adapter.render_state(state)
        n = len(adapter.array_of(state))
        if pruned_min is None or n < pruned_min:
            pruned_min = n

    def add_result(a: Array1D) -> bool:
        """Record a result; False when the results cap forbids it."""
        if a in results:
            return True
        if budget.max_results is not None and len(results) >= budget.max_results:
            return False
        results[a] = None
        return True

    visited: set = set()
    frontier: list = []
    init = adapter.initial
    reason = budget.fits(adapter.array_of(init))
    if drop_dead and adapter.is_dead(init):
        pass
    elif reason:
        prune(init, reason)
    else:
        visited.add(init)
        frontier.append(init)

    pool = None
    if jobs > 1:
        pool = ProcessPoolExecutor(max_workers=jobs, initializer=_init_worker, initargs=(adapter,))
    depth = 0
    stopped = False
    try:
        while frontier and not stopped:
            if pool is not None and len(frontier) > 1:
                parts = pool.map(_worker_step, _chunks(frontier, jobs * 4))
                stepped = [r for part in parts for r in part]
            else:
                stepped = [adapter.step(s) for s in frontier]
            next_frontier: list = []
            for state, (succs, halting) in zip(frontier, stepped):
                a = adapter.array_of(state)
                terminal = _is_terminal(a, terminals)
                if collect_all:
                    wanted = True
                elif mode is Mode.STAR:
                    wanted = terminal
                else:
                    wanted = terminal and halting
                if wanted and not add_result(a):
                    truncated.add("results")
                    incomplete = True
                    stopped = True
                    break
                if halting and not terminal and mode is Mode.T:
                    nonterm_halting[adapter.render_state(state)] = None
                at_limit = budget.max_steps is not None and depth >= budget.max_steps
                for s in succs:
                    if s in visited:
                        continue
                    if drop_dead and adapter.is_dead(s):
                        continue
                    if at_limit:
                        prune(s, "steps")
                        continue
                    reason = budget.fits(adapter.array_of(s))
                    if reason:
                        prune(s, reason)
                        continue
                    visited.add(s)
                    next_frontier.append(s)
            frontier = next_frontier
            depth += 1
    finally:
        if pool is not None:
            pool.shutdown()

    arrays = tuple(sorted(results, key=sort_key))
    return LangResult(
        arrays=arrays,
        complete=not incomplete,
        truncated=frozenset(truncated),
        first_pruned=first_pruned,
        pruned_min_cells=pruned_min,
        explored=len(visited),
        nonterminal_halting=tuple(sorted(nonterm_halting)),
    )


# -- grammar-level operations --------------------------------------------------

def successors(g: Grammar, a: Array1D) -> list[Array1D]:
    """Canonical one-step successors of ``a``, deduplicated, in rule then anchor order."""
    out: dict[Array1D, None] = {}
    for r in g.rules:
        for b in applications(r, a):
            out[b] = None
    return list(out)


def is_halting(g: Grammar, a: Array1D) -> bool:
    return not any(is_applicable(r, a) for r in g.rules)


def reach(g: Grammar, budget: Budget, jobs: int = 1) -> tuple[tuple[Array1D, ...], bool]:
    """All arrays derivable from the axiom within ``budget`` and the completeness flag."""
    res = explore(GrammarAdapter(g), budget, Mode.STAR, collect_all=True, jobs=jobs)
    return res.arrays, res.complete


def language(g: Grammar, mode: Mode | str, budget: Budget, jobs: int = 1,
             prune_dead: bool = True) -> LangResult:
    """Bounded STAR- or T-mode language of ``g``."""
    mode = Mode(mode) if isinstance(mode, str) else mode
    dead = grammar_doomed_symbols(g, mode) if prune_dead else frozenset()
    return explore(GrammarAdapter(g, dead), budget, mode, jobs=jobs)


def grammar_doomed_symbols(g: Grammar, mode: Mode = Mode.T) -> frozenset[str]:
    """Non-terminals whose presence rules out any result of ``g``."""
    moves = {"0": [(r, ("0",)) for r in g.rules]}
    table = doomed_pairs(moves, "0", g.axiom.symbols, g.nonterminals, halting_required=mode is Mode.T)
    return table.get("0", frozenset())


__all__ = [
    "Mode", "Budget", "LangResult", "SystemAdapter", "GrammarAdapter", "explore",
    "successors", "is_halting", "reach", "language", "grammar_doomed_symbols",
]
