"""Test-side reference implementations, written against plain dicts.

Nothing here imports the rule matcher or the engine, so agreement between
these helpers and the package is independent evidence.
"""
from __future__ import annotations

BLANK = "#"


def canon(cells: dict[int, str]) -> tuple:
    if not cells:
        return ()
    base = min(cells)
    return tuple(sorted((p - base, s) for p, s in cells.items()))


def render(key: tuple) -> str:
    if not key:
        return ""
    cells = dict(key)
    return " ".join(cells.get(i, BLANK) for i in range(key[-1][0] + 1))


def naive_successors(rule: tuple, cells: dict[int, str]) -> set[tuple]:
    """All canonical results of one application of ``rule``.

    ``rule`` is ``(kind, selector, payload)`` with kind in ins/del/cls and the
    two sides given as ``{offset: token}`` dicts.  Anchors are tried over a
    range generous enough to cover every possible match.
    """
    kind, sel, pay = rule
    offsets = list(sel) + list(pay)
    anchored = any(s != BLANK for s in sel.values()) or kind == "del"
    if anchored:
        lo = min(cells, default=0) - max(offsets, default=0) - 3
        hi = max(cells, default=0) - min(offsets, default=0) + 3
    elif not cells:
        lo = hi = 0
    else:
        # rules with nothing concrete to anchor on only try anchors in the
        # window [leftmost - 1 - payload span, rightmost + 1]
        lo = min(cells) - 1 - (max(pay) - min(pay))
        hi = max(cells) + 1
    out = set()
    for v in range(lo, hi + 1):
        def at(o):
            return cells.get(v + o, BLANK)
        if any(at(o) != s for o, s in sel.items()):
            continue
        new = dict(cells)
        if kind == "ins":
            if any(at(o) != BLANK for o in pay):
                continue
            for o, s in pay.items():
                new[v + o] = s
        elif kind == "del":
            if any(at(o) != s for o, s in pay.items()):
                continue
            for o in pay:
                del new[v + o]
        else:
            for o, s in pay.items():
                if s == BLANK:
                    new.pop(v + o, None)
                else:
                    new[v + o] = s
        out.add(canon(new))
    return out


def has_anchor(rule) -> bool:
    return any(not c.is_blank for c in rule.selector) or rule.kind.value == "del"


def naive_language(rules, axiom: dict[int, str], terminals: set[str], mode: str, max_cells: int):
    """(results, complete) for a small grammar, by plain breadth-first search."""
    start = canon(axiom)
    seen = {start}
    todo = [start]
    results = set()
    complete = True
    while todo:
        nxt = []
        for key in todo:
            cells = dict(key)
            succ = set()
            for r in rules:
                succ |= naive_successors(r, cells)
            terminal = all(s in terminals for _, s in key)
            if terminal and (mode == "star" or not succ):
                results.add(key)
            for s in succ:
                if s in seen:
                    continue
                if len(s) > max_cells:
                    complete = False
                    continue
                seen.add(s)
                nxt.append(s)
        todo = nxt
    return {render(k) for k in results}, complete


def gline_t_language(max_cells: int) -> set[str]:
    """Closed form of the halting line language: L E^n S! E^m R with n, m >= 1."""
    out = set()
    for n in range(1, max_cells):
        for m in range(1, max_cells):
            if n + m + 3 <= max_cells:
                out.add(" ".join(["L"] + ["E"] * n + ["S!"] + ["E"] * m + ["R"]))
    return out


def gline_star_language(max_cells: int) -> set[str]:
    """Every array the line grammar derives, as the union of its four families."""
    out = set()
    for n in range(1, max_cells):
        for m in range(1, max_cells):
            core = ["E"] * n + ["S!"] + ["E"] * m
            for left in ([], ["L"]):
                for right in ([], ["R"]):
                    arr = left + core + right
                    if len(arr) <= max_cells:
                        out.add(" ".join(arr))
    return out
