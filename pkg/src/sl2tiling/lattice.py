"""Lattice points, box windows, signature matrices and the tiling container.

Everything here is immutable.  Entries are Python ``int`` throughout, so no
value ever loses precision; the numpy views handed out by
:attr:`TilingWindow.array` use ``dtype=object`` for the same reason.
"""

from __future__ import annotations

import itertools
import json
import math
import re
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path
from typing import Iterator, Sequence

import numpy as np

from .errors import (
    DimensionMismatch,
    DocumentError,
    EmptyWindow,
    InvalidSignature,
    InvalidTiling,
    OutOfWindow,
    TooLarge,
)

MAX_CELLS = 10**8
_DECIMAL = re.compile(r"[0-9]+")

LatticePoint = tuple[int, ...]


def unit_vector(n: int, k: int) -> LatticePoint:
    """The point with ``1`` in (1-based) slot ``k`` and ``0`` elsewhere."""
    if not 1 <= k <= n:
        raise DimensionMismatch(f"axis {k} not in 1..{n}")
    return tuple(1 if j == k - 1 else 0 for j in range(n))


def _is_int(v) -> bool:
    return isinstance(v, (int, np.integer)) and not isinstance(v, (bool, np.bool_))


@dataclass(frozen=True)
class Window:
    """Axis-aligned box ``lo <= p <= hi`` (inclusive on every axis)."""

    lo: LatticePoint
    hi: LatticePoint

    def __post_init__(self):
        lo = tuple(int(v) for v in self.lo)
        hi = tuple(int(v) for v in self.hi)
        if len(lo) != len(hi):
            raise DimensionMismatch(f"lo has {len(lo)} coordinates, hi has {len(hi)}")
        if len(lo) < 1:
            raise DimensionMismatch("windows need at least one axis")
        if any(a > b for a, b in zip(lo, hi)):
            raise EmptyWindow(f"lo={lo} exceeds hi={hi} on some axis")
        size = math.prod(b - a + 1 for a, b in zip(lo, hi))
        if size > MAX_CELLS:
            raise TooLarge(f"window has {size} cells (limit {MAX_CELLS})")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @property
    def n(self) -> int:
        return len(self.lo)

    @property
    def shape(self) -> tuple[int, ...]:
        return tuple(b - a + 1 for a, b in zip(self.lo, self.hi))

    @property
    def size(self) -> int:
        return math.prod(self.shape)

    def __len__(self) -> int:
        return self.size

    def __contains__(self, p: Sequence[int]) -> bool:
        return len(p) == self.n and all(a <= v <= b for a, v, b in zip(self.lo, p, self.hi))

    def cells(self) -> Iterator[LatticePoint]:
        """All points in lexicographic order."""
        return itertools.product(*(range(a, b + 1) for a, b in zip(self.lo, self.hi)))

    __iter__ = cells

    def offset(self, p: Sequence[int]) -> int:
        """Mixed-radix position of ``p`` in :meth:`cells` order."""
        if len(p) != self.n:
            raise DimensionMismatch(f"point {tuple(p)} has wrong dimension for {self.n}-window")
        if p not in self:
            raise OutOfWindow(tuple(p))
        off = 0
        for v, a, m in zip(p, self.lo, self.shape):
            off = off * m + (v - a)
        return off

    def shifted(self, v: Sequence[int]) -> Window:
        return Window(tuple(a + d for a, d in zip(self.lo, v)), tuple(b + d for b, d in zip(self.hi, v)))

    def is_symmetric(self, axis: int) -> bool:
        """True when the (1-based) ``axis`` range is ``[-h, h]``."""
        return self.lo[axis - 1] == -self.hi[axis - 1]


def make_window(lo: Sequence[int], hi: Sequence[int]) -> Window:
    return Window(tuple(lo), tuple(hi))


def cube_window(n: int, lo: int, hi: int) -> Window:
    """The window ``[lo, hi]^n``."""
    return Window((lo,) * n, (hi,) * n)


@dataclass(frozen=True, order=True)
class SignatureMatrix:
    """Symmetric matrix of ``+-1`` with ``-1`` on the diagonal.

    ``rows`` is indexed from 0 like any Python sequence; operations that name
    an axis (``flip``, witnesses, violation records) use 1-based axes.
    """

    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(int(v) for v in row) for row in self.rows)
        n = len(rows)
        if n < 1 or any(len(row) != n for row in rows):
            raise InvalidSignature("signature matrix must be square and non-empty")
        for k in range(n):
            if rows[k][k] != -1:
                raise InvalidSignature(f"diagonal entry ({k + 1},{k + 1}) must be -1")
            for l in range(k + 1, n):
                if rows[k][l] not in (-1, 1):
                    raise InvalidSignature(f"entry ({k + 1},{l + 1}) must be -1 or +1")
                if rows[k][l] != rows[l][k]:
                    raise InvalidSignature(f"not symmetric at ({k + 1},{l + 1})")
        object.__setattr__(self, "rows", rows)

    @classmethod
    def _trusted(cls, rows: tuple[tuple[int, ...], ...]) -> SignatureMatrix:
        # skips validation; callers guarantee the invariants
        obj = object.__new__(cls)
        object.__setattr__(obj, "rows", rows)
        return obj

    @property
    def n(self) -> int:
        return len(self.rows)

    def __getitem__(self, kl: tuple[int, int]) -> int:
        k, l = kl
        return self.rows[k][l]

    @classmethod
    def from_upper(cls, n: int, upper: Sequence[int]) -> SignatureMatrix:
        """Build from the strict upper triangle, row-major (``e12, e13, ..., e23, ...``)."""
        if len(upper) != n * (n - 1) // 2:
            raise InvalidSignature(f"need {n * (n - 1) // 2} off-diagonal signs for n={n}, got {len(upper)}")
        m = [[-1] * n for _ in range(n)]
        it = iter(upper)
        for k in range(n):
            for l in range(k + 1, n):
                m[k][l] = m[l][k] = int(next(it))
        return cls(tuple(map(tuple, m)))

    @classmethod
    def constant(cls, n: int, off: int) -> SignatureMatrix:
        return cls(tuple(tuple(-1 if k == l else off for l in range(n)) for k in range(n)))

    @classmethod
    def anti(cls, n: int) -> SignatureMatrix:
        """All off-diagonal entries ``-1``."""
        return cls.constant(n, -1)

    @classmethod
    def sl2(cls, n: int) -> SignatureMatrix:
        """All off-diagonal entries ``+1``."""
        return cls.constant(n, 1)

    def upper(self) -> tuple[int, ...]:
        n = self.n
        return tuple(self.rows[k][l] for k in range(n) for l in range(k + 1, n))

    def is_constant(self, off: int) -> bool:
        return all(v == off for v in self.upper())

    def __str__(self) -> str:
        return "\n".join(" ".join(f"{v:+d}" for v in row) for row in self.rows)


@dataclass(frozen=True)
class TilingWindow:
    """Positive integer entries on every point of a window, plus the claimed signature.

    ``entries`` is flat, in the window's lexicographic cell order.
    """

    window: Window
    entries: tuple[int, ...]
    epsilon: SignatureMatrix

    def __post_init__(self):
        if self.epsilon.n != self.window.n:
            raise DimensionMismatch(f"epsilon is {self.epsilon.n}x{self.epsilon.n} but window has dimension {self.window.n}")
        entries = tuple(self.entries)
        if len(entries) != self.window.size:
            raise InvalidTiling(f"{len(entries)} entries for a window of {self.window.size} cells")
        for v in entries:
            if not _is_int(v) or v < 1:
                raise InvalidTiling(f"entry {v!r} is not a positive integer")
        if any(type(v) is not int for v in entries):
            entries = tuple(int(v) for v in entries)
        object.__setattr__(self, "entries", entries)

    @classmethod
    def from_array(cls, window: Window, array: np.ndarray, epsilon: SignatureMatrix) -> TilingWindow:
        array = np.asarray(array)
        if array.shape != window.shape:
            raise DimensionMismatch(f"array shape {array.shape} does not match window shape {window.shape}")
        return cls(window, tuple(array.ravel().tolist()), epsilon)

    @classmethod
    def from_function(cls, window: Window, fn, epsilon: SignatureMatrix) -> TilingWindow:
        return cls(window, tuple(fn(p) for p in window.cells()), epsilon)

    @property
    def n(self) -> int:
        return self.window.n

    @cached_property
    def array(self) -> np.ndarray:
        """Read-only object ndarray of shape ``window.shape``."""
        a = np.empty(len(self.entries), dtype=object)
        a[:] = self.entries
        a = a.reshape(self.window.shape)
        a.flags.writeable = False
        return a

    def __getitem__(self, p: Sequence[int]) -> int:
        return self.entries[self.window.offset(p)]

    def items(self) -> Iterator[tuple[LatticePoint, int]]:
        return zip(self.window.cells(), self.entries)

    def replace(self, p: Sequence[int], value: int) -> TilingWindow:
        """Copy with the entry at ``p`` set to ``value``."""
        entries = list(self.entries)
        entries[self.window.offset(p)] = value
        return TilingWindow(self.window, tuple(entries), self.epsilon)


def get_entry(t: TilingWindow, p: Sequence[int]) -> int:
    return t[tuple(p)]


# -- tiling documents ---------------------------------------------------------


def tiling_to_document(t: TilingWindow) -> dict:
    return {
        "n": t.n,
        "epsilon": [list(row) for row in t.epsilon.rows],
        "lo": list(t.window.lo),
        "hi": list(t.window.hi),
        "entries": [str(v) for v in t.entries],
    }


def dumps_tiling(t: TilingWindow) -> str:
    """Serialize to the JSON tiling document (compact, fixed key order, trailing newline)."""
    return json.dumps(tiling_to_document(t), separators=(",", ":")) + "\n"


def _int_list(doc: dict, key: str, n: int) -> list[int]:
    v = doc.get(key)
    if not isinstance(v, list) or len(v) != n or not all(_is_int(x) for x in v):
        raise DocumentError(f"field {key!r} must be a list of {n} integers")
    return [int(x) for x in v]


def document_to_tiling(doc) -> TilingWindow:
    if not isinstance(doc, dict):
        raise DocumentError("tiling document must be a JSON object")
    missing = {"n", "epsilon", "lo", "hi", "entries"} - doc.keys()
    if missing:
        raise DocumentError(f"missing fields: {', '.join(sorted(missing))}")
    n = doc["n"]
    if not _is_int(n) or n < 1:
        raise DocumentError("field 'n' must be a positive integer")
    eps = doc["epsilon"]
    if not isinstance(eps, list) or len(eps) != n:
        raise DocumentError(f"field 'epsilon' must be an {n}x{n} array")
    rows = [_int_list({"row": row}, "row", n) for row in eps]
    entries = doc["entries"]
    if not isinstance(entries, list) or not all(isinstance(e, str) for e in entries):
        raise DocumentError("field 'entries' must be a list of decimal strings")
    if not all(_DECIMAL.fullmatch(e) for e in entries):
        raise DocumentError("entries must be unsigned decimal strings")
    values = [int(e) for e in entries]
    try:
        window = Window(tuple(_int_list(doc, "lo", n)), tuple(_int_list(doc, "hi", n)))
        return TilingWindow(window, tuple(values), SignatureMatrix(tuple(map(tuple, rows))))
    except DocumentError:
        raise
    except (ValueError, KeyError) as exc:
        raise DocumentError(str(exc)) from exc


def loads_tiling(text: str) -> TilingWindow:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"malformed JSON: {exc}") from exc
    return document_to_tiling(doc)


def write_tiling(t: TilingWindow, path: str | Path) -> None:
    Path(path).write_text(dumps_tiling(t), encoding="utf-8")


def read_tiling(path: str | Path) -> TilingWindow:
    return loads_tiling(Path(path).read_text(encoding="utf-8"))

