"""One-dimensional arrays over symbol alphabets.

An array is a finite map from integer positions to non-blank symbols; every
position not in the map holds the blank ``#``.  Arrays are immutable.  Two
arrays that differ only by a translation are *equivalent*; the canonical
representative of a class has its leftmost occupied cell at position 0.

Text forms
----------
compact
    whitespace separated tokens, first token at position 0, ``#`` marks a gap:
    ``a a # # # a # a``
positioned
    ``@<int> <token>`` pairs: ``@-2 a @-1 a @3 a @5 a``
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping

BLANK = "#"

_PLAIN = r"[A-Za-z0-9_]+'*"
SYMBOL_RE = re.compile(rf"(?:{_PLAIN}!?|\[{_PLAIN}\.{_PLAIN}\.{_PLAIN}\.{_PLAIN}\])")


class ParseError(ValueError):
    """Malformed text in one of the workbench formats."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


def is_symbol(token: str) -> bool:
    return token != BLANK and SYMBOL_RE.fullmatch(token) is not None


def check_symbol(token: str) -> str:
    if not is_symbol(token):
        raise ParseError(f"not a symbol token: {token!r}")
    return token


def bar(symbol: str) -> str:
    """The overbarred (marked) version of a plain symbol."""
    if symbol.endswith("!") or symbol.startswith("["):
        raise ValueError(f"cannot mark {symbol!r}")
    return symbol + "!"


def prime(symbol: str) -> str:
    if symbol.endswith("!") or symbol.startswith("["):
        raise ValueError(f"cannot prime {symbol!r}")
    return symbol + "'"


class Array1D:
    """Immutable finite array ``position -> symbol``.

    Equality and hashing are position-exact; use :func:`equivalent` (or compare
    :meth:`normalize` results) for equality up to translation.
    """

    __slots__ = ("_items", "_map", "_hash", "_index", "_syms")

    def __init__(self, cells: Mapping[int, str] | Iterable[tuple[int, str]] = ()):
        pairs = cells.items() if isinstance(cells, Mapping) else cells
        m: dict[int, str] = {}
        for pos, sym in pairs:
            if not isinstance(pos, int) or isinstance(pos, bool):
                raise TypeError(f"position must be int, got {pos!r}")
            check_symbol(sym)
            if pos in m:
                raise ValueError(f"duplicate position {pos}")
            m[pos] = sym
        self._set(tuple(sorted(m.items())))

    def _set(self, items: tuple[tuple[int, str], ...]) -> None:
        self._items = items
        self._map = None
        self._hash = None
        self._index = None
        self._syms = None

    @classmethod
    def _trusted(cls, items: tuple[tuple[int, str], ...]) -> "Array1D":
        # items already sorted, validated and blank-free
        obj = cls.__new__(cls)
        obj._set(items)
        return obj

    @classmethod
    def _from_map(cls, m: Mapping[int, str], canonical: bool = True) -> "Array1D":
        if not m:
            return EMPTY
        items = sorted(m.items())
        if canonical and items[0][0] != 0:
            shift = items[0][0]
            items = [(p - shift, s) for p, s in items]
        return cls._trusted(tuple(items))

    # -- mapping-like access -------------------------------------------------
    @property
    def items(self) -> tuple[tuple[int, str], ...]:
        return self._items

    @property
    def cells(self) -> dict[int, str]:
        if self._map is None:
            self._map = dict(self._items)
        return self._map

    def get(self, pos: int) -> str | None:
        return self.cells.get(pos)

    def __getitem__(self, pos: int) -> str:
        return self.cells.get(pos, BLANK)

    def __contains__(self, pos: object) -> bool:
        return pos in self.cells

    def __len__(self) -> int:
        return len(self._items)

    def __iter__(self) -> Iterator[tuple[int, str]]:
        return iter(self._items)

    def __bool__(self) -> bool:
        return bool(self._items)

    def positions_of(self, symbol: str) -> tuple[int, ...]:
        if self._index is None:
            idx: dict[str, list[int]] = {}
            for p, s in self._items:
                idx.setdefault(s, []).append(p)
            self._index = {s: tuple(ps) for s, ps in idx.items()}
        return self._index.get(symbol, ())

    @property
    def symbols(self) -> frozenset[str]:
        if self._syms is None:
            self._syms = frozenset(s for _, s in self._items)
        return self._syms

    @property
    def min_pos(self) -> int | None:
        return self._items[0][0] if self._items else None

    @property
    def max_pos(self) -> int | None:
        return self._items[-1][0] if self._items else None

    @property
    def extent(self) -> int:
        return self._items[-1][0] - self._items[0][0] if self._items else 0

    @property
    def is_canonical(self) -> bool:
        return not self._items or self._items[0][0] == 0

    # -- geometry -------------------------------------------------------------
    def translate(self, v: int) -> "Array1D":
        if v == 0 or not self._items:
            return self
        return Array1D._trusted(tuple((p + v, s) for p, s in self._items))

    def normalize(self) -> "Array1D":
        if self.is_canonical:
            return self
        return self.translate(-self._items[0][0])

    # -- dunder ---------------------------------------------------------------
    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Array1D):
            return NotImplemented
        return self._items == other._items

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self._items)
        return self._hash

    def __repr__(self) -> str:
        if self.is_canonical:
            return f"Array1D({render_array(self)!r})"
        return f"Array1D({dict(self._items)!r})"

    def __str__(self) -> str:
        return render_array(self.normalize())

    def __reduce__(self):
        return (Array1D._trusted, (self._items,))


EMPTY = Array1D._trusted(())


@dataclass(frozen=True)
class ShapeMetrics:
    size: int
    extent: int
    min_pos: int | None
    max_pos: int | None


def parse_array(text: str) -> Array1D:
    """Parse compact or positioned array text into a canonical array."""
    tokens = text.split()
    if not tokens:
        return EMPTY
    if tokens[0].startswith("@"):
        if len(tokens) % 2:
            raise ParseError("positioned form needs '@<int> <token>' pairs")
        cells: dict[int, str] = {}
        for at, tok in zip(tokens[::2], tokens[1::2]):
            if not re.fullmatch(r"@[+-]?\d+", at):
                raise ParseError(f"bad position marker {at!r}")
            if tok == BLANK:
                raise ParseError("blank token in positioned form")
            pos = int(at[1:])
            if pos in cells:
                raise ParseError(f"duplicate position {pos}")
            cells[pos] = check_symbol(tok)
        return Array1D._from_map(cells)
    cells = {}
    for pos, tok in enumerate(tokens):
        if tok.startswith("@"):
            raise ParseError("cannot mix compact and positioned forms")
        if tok != BLANK:
            cells[pos] = check_symbol(tok)
    return Array1D._from_map(cells)


def render_array(a: Array1D) -> str:
    """Compact form: no outer blanks, one ``#`` per interior gap cell."""
    out: list[str] = []
    prev = None
    for p, s in a.items:
        if prev is not None:
            out.extend([BLANK] * (p - prev - 1))
        out.append(s)
        prev = p
    return " ".join(out)


def normalize(a: Array1D) -> Array1D:
    return a.normalize()


def translate(a: Array1D, v: int) -> Array1D:
    return a.translate(v)


def equivalent(a: Array1D, b: Array1D) -> bool:
    return a.normalize() == b.normalize()


def shape_of(a: Array1D) -> ShapeMetrics:
    return ShapeMetrics(len(a), a.extent, a.min_pos, a.max_pos)


def shape(a: Array1D) -> frozenset[int]:
    """Occupied positions of the canonical representative."""
    return frozenset(p for p, _ in a.normalize().items)


def shape_equal(a: Array1D, b: Array1D) -> bool:
    return shape(a) == shape(b)


def sort_key(a: Array1D) -> str:
    return render_array(a.normalize())
