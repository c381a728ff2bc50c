"""Post Correspondence Problem instances encoded as array insertion P systems.

The compiled system grows two interleaved words on one line: the letters of
``u_{i1} u_{i2} ...`` sit at even positions and the primed letters of
``v_{i1} v_{i2} ...`` at odd positions, after the start marker ``L L'``.
Membrane 0 appends some ``u_i`` and sends the array into membrane ``i``,
which appends the matching ``v_i`` and sends it back out.  When both words
have the same length the end marker ``R R'`` can be attached, moving the array
into the final membrane where it halts.  Every other dead end gets a trap
that keeps appending ``F`` forever.
"""
from __future__ import annotations

from dataclasses import dataclass

from ..arrays import BLANK, ParseError, parse_array, prime
from ..psystem import HERE, OUT, MembraneTree, PSystem, TargetedRule, in_label
from ..rules import ins, iter_lines

RESERVED = {"L", "R", "F"}


@dataclass(frozen=True)
class PCPInstance:
    u: tuple[str, ...]
    v: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "u", tuple(self.u))
        object.__setattr__(self, "v", tuple(self.v))
        if not self.u or len(self.u) != len(self.v):
            raise ValueError("PCP instance needs the same positive number of u and v words")
        for w in self.u + self.v:
            if not w:
                raise ValueError("PCP words must be non-empty")
            for ch in w:
                if not (ch.isalnum() or ch == "_"):
                    raise ValueError(f"bad PCP letter {ch!r}")
                if ch in RESERVED:
                    raise ValueError(f"letter {ch!r} collides with a marker symbol")

    @property
    def n(self) -> int:
        return len(self.u)

    @property
    def letters(self) -> tuple[str, ...]:
        return tuple(sorted({ch for w in self.u + self.v for ch in w}))


def parse_pcp(text: str) -> PCPInstance:
    """One ``<u_i> <v_i>`` pair per line; ``%`` starts a comment."""
    us, vs = [], []
    for n, line in iter_lines(text):
        parts = line.split()
        if len(parts) != 2:
            raise ParseError("expected '<u> <v>'", n)
        us.append(parts[0])
        vs.append(parts[1])
    try:
        return PCPInstance(tuple(us), tuple(vs))
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


def format_pcp(inst: PCPInstance) -> str:
    return "".join(f"{a} {b}\n" for a, b in zip(inst.u, inst.v))


def encode_solution(word: str) -> str:
    """The array text the compiled system produces for a solution word."""
    mid = " ".join(f"{ch} {prime(ch)}" for ch in word)
    return f"L L' {mid} R R'"


def _u_rules(word: str, letters) -> list:
    """Rules appending ``word`` to the unprimed track, all selector variants."""
    out = []
    m = len(word)
    for u0 in ("L",) + tuple(letters):
        # k = number of leading primed selector cells at offsets 1, 3, ..., 2m+1
        for k in range(m + 2):
            if u0 == "L" and k == 0:
                continue
            sel = {0: u0}
            track = (u0,) + tuple(word)
            for j in range(m + 1):
                sel[2 * j + 1] = prime(track[j]) if j < k else BLANK
            put = {2 * j: word[j - 1] for j in range(1, m + 1)}
            out.append((sel, put))
    return out


def _v_rules(word: str, letters) -> list:
    """Rules appending the primed ``word`` to the primed track, all variants."""
    out = []
    m = len(word)
    for v0 in ("L",) + tuple(letters):
        for k in range(m + 2):
            if v0 == "L" and k == 0:
                continue
            sel = {1: prime(v0)}
            track = (v0,) + tuple(word)
            for j in range(m + 1):
                sel[2 * j] = track[j] if j < k else BLANK
            put = {2 * j + 1: prime(word[j - 1]) for j in range(1, m + 1)}
            out.append((sel, put))
    return out


def compile_pcp(inst: PCPInstance) -> PSystem:
    """Array insertion P system of height 1 whose halting results encode the solutions."""
    letters = inst.letters
    primed = [prime(a) for a in letters]
    n = inst.n
    labels = [str(i) for i in range(1, n + 2)]
    tree = MembraneTree("0", {"0": labels})
    rules: list[TargetedRule] = []
    for i in range(1, n + 1):
        for k, (sel, put) in enumerate(_u_rules(inst.u[i - 1], letters)):
            rules.append(TargetedRule("0", ins(sel, put, f"u{i}_{k}"), in_label(str(i))))
    for i in range(1, n + 1):
        for k, (sel, put) in enumerate(_v_rules(inst.v[i - 1], letters)):
            rules.append(TargetedRule(str(i), ins(sel, put, f"v{i}_{k}"), OUT))

    def trap(x: str) -> dict:
        return {0: x, 1: BLANK}

    # traps in the skin: the unprimed track is ahead (T, F) or behind (T', L')
    for x in list(letters) + ["F"] + primed + ["L'"]:
        rules.append(TargetedRule("0", ins(trap(x), {2: "F"}, f"trap0_{x}"), HERE))
    for i in range(1, n + 1):
        for x in primed + ["L'", "F"] + list(letters):
            rules.append(TargetedRule(str(i), ins(trap(x), {2: "F"}, f"trap{i}_{x}"), HERE))
    for a in letters:
        rules.append(TargetedRule("0", ins({0: a, 1: prime(a)}, {2: "R", 3: "R'"}, f"end_{a}"),
                                  in_label(str(n + 1))))
    alphabet = {"L", "L'", "R", "R'", "F"} | set(letters) | set(primed)
    return PSystem(frozenset(alphabet), frozenset(alphabet - {"F"}), tree, tuple(rules), "0",
                   parse_array("L L'"))
