"""Completing a staircase frontier of 1's to a tiling of part of the plane.

A frontier starts at a point ``(i, j)`` and takes ``R`` (``j += 1``) and
``D`` (``i -= 1``) steps.  Every path point is set to 1 and the rest of the
path's bounding box is filled in synchronous rounds: a cell is determined in
round ``k`` when some unit square containing it had its other three corners
known before round ``k``.  With ``sign`` the right-hand side of::

    a[i, j+1] * a[i+1, j] - a[i, j] * a[i+1, j+1] == sign

a missing corner on the main diagonal is ``(a[i,j+1] a[i+1,j] - sign) / opposite``
and one on the anti-diagonal is ``(a[i,j] a[i+1,j+1] + sign) / opposite``.
Division must be exact and the result positive; otherwise the failing cell
is raised as a certificate that the frontier does not complete.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Mapping

import numpy as np

from .engine import Violation, ViolationReport
from .errors import (
    DimensionMismatch,
    NonConfluent,
    NonIntegerDivision,
    NonPositiveEntry,
    UnreachableCell,
)
from .lattice import SignatureMatrix, TilingWindow, Window

Cell = tuple[int, int]

_FRONTIER_RE = re.compile(r"\s*@\(\s*(-?\d+)\s*,\s*(-?\d+)\s*\)\s*([RD]*)\s*")


@dataclass(frozen=True)
class Frontier:
    start: Cell
    steps: str = ""

    def __post_init__(self):
        steps = "".join(self.steps).upper()
        if set(steps) - {"R", "D"}:
            raise ValueError(f"frontier steps must be R or D, got {self.steps!r}")
        object.__setattr__(self, "start", (int(self.start[0]), int(self.start[1])))
        object.__setattr__(self, "steps", steps)

    @classmethod
    def parse(cls, text: str) -> Frontier:
        """Parse ``@(i,j) RDRD...``."""
        m = _FRONTIER_RE.fullmatch(text)
        if not m:
            raise ValueError(f"cannot parse frontier {text!r}; expected e.g. '@(0,0) RDRD'")
        return cls((int(m[1]), int(m[2])), m[3])

    def __str__(self) -> str:
        return f"@({self.start[0]},{self.start[1]}) {self.steps}"

    def points(self) -> list[Cell]:
        i, j = self.start
        out = [(i, j)]
        for step in self.steps:
            if step == "R":
                j += 1
            else:
                i -= 1
            out.append((i, j))
        return out

    def window(self) -> Window:
        """Bounding box of the path."""
        pts = self.points()
        return Window((pts[-1][0], pts[0][1]), (pts[0][0], pts[-1][1]))


def staircase_frontier(length: int, start: Cell = (0, 0)) -> Frontier:
    """``(RD)^length``: the frontier of 1's of the staircase anti-tiling through ``start``."""
    return Frontier(start, "RD" * length)


def _relation(cells: Mapping[Cell, int], i: int, j: int) -> int | None:
    try:
        return cells[i, j + 1] * cells[i + 1, j] - cells[i, j] * cells[i + 1, j + 1]
    except KeyError:
        return None


def verify_cells(cells: Mapping[Cell, int], sign: int) -> ViolationReport:
    """Check every unit square whose four corners are all present."""
    out = []
    for i, j in cells:
        v = _relation(cells, i, j)
        if v is not None and v != sign:
            out.append(Violation((i, j), (1, 2), v, sign))
    return ViolationReport(tuple(sorted(out)))


@dataclass(frozen=True)
class PlaneCompletion:
    """Cells determined from a frontier within ``depth`` rounds.

    ``layers`` records the round each cell was filled in (0 for the path).
    """

    frontier: Frontier
    sign: int
    depth: int
    cells: Mapping[Cell, int]
    layers: Mapping[Cell, int]

    @property
    def window(self) -> Window:
        return self.frontier.window()

    @property
    def epsilon(self) -> SignatureMatrix:
        return SignatureMatrix.constant(2, self.sign)

    def is_complete(self) -> bool:
        return len(self.cells) == self.window.size

    def missing(self) -> list[Cell]:
        return [c for c in self.window.cells() if c not in self.cells]

    def verify(self) -> ViolationReport:
        return verify_cells(self.cells, self.sign)

    def to_tiling(self, window: Window | None = None) -> TilingWindow:
        """Rectangular tiling over ``window`` (default: the path's bounding box)."""
        window = window or self.window
        if window.n != 2:
            raise DimensionMismatch("plane completions live in two dimensions")
        for c in window.cells():
            if c not in self.cells:
                raise UnreachableCell(f"cell {c} is not determined within depth {self.depth}", c)
        return TilingWindow(window, tuple(self.cells[c] for c in window.cells()), self.epsilon)


# corners of the square based at (i, j), relative to the base
_CORNERS = ((0, 0), (0, 1), (1, 0), (1, 1))


def _solve(cells: Mapping[Cell, int], base: Cell, corner: Cell, sign: int, cell: Cell) -> int | None:
    """Value forced at ``cell`` (= ``base + corner``) by one square, ``None`` if underdetermined."""
    bi, bj = base
    try:
        m0, d1, d2, m1 = (cells[bi + di, bj + dj] if (di, dj) != corner else None for di, dj in _CORNERS)
    except KeyError:
        return None
    if corner in ((0, 0), (1, 1)):
        num, den = d1 * d2 - sign, (m1 if corner == (0, 0) else m0)
    else:
        num, den = m0 * m1 + sign, (d2 if corner == (0, 1) else d1)
    q, rem = divmod(num, den)
    if rem:
        raise NonIntegerDivision(f"cell {cell}: {num} is not divisible by {den} (square at {base})", cell, base)
    if q <= 0:
        raise NonPositiveEntry(f"cell {cell}: forced value {q} is not positive (square at {base})", cell, base)
    return q


def complete_frontier(frontier: Frontier, depth: int, sign: int) -> PlaneCompletion:
    """Propagate 1's on ``frontier`` for at most ``depth`` rounds inside its bounding box."""
    if sign not in (-1, 1):
        raise ValueError("sign must be -1 or +1")
    if depth < 1:
        raise ValueError("depth must be >= 1")
    box = frontier.window()
    cells: dict[Cell, int] = {p: 1 for p in frontier.points()}
    layers: dict[Cell, int] = {p: 0 for p in cells}
    touched = set(cells)
    for rnd in range(1, depth + 1):
        candidates = sorted(
            {
                (i + di, j + dj)
                for i, j in touched
                for di in (-1, 0, 1)
                for dj in (-1, 0, 1)
                if (i + di, j + dj) not in cells and (i + di, j + dj) in box
            }
        )
        new: dict[Cell, int] = {}
        for ci, cj in candidates:
            forced = {}
            for di, dj in _CORNERS:
                base = (ci - di, cj - dj)
                v = _solve(cells, base, (di, dj), sign, (ci, cj))
                if v is not None:
                    forced[base] = v
            if len(set(forced.values())) > 1:
                raise NonConfluent(f"cell {(ci, cj)} is forced to different values {forced}", (ci, cj))
            if forced:
                new[ci, cj] = next(iter(forced.values()))
        if not new:
            break
        cells.update(new)
        layers.update(dict.fromkeys(new, rnd))
        touched = set(new)
    report = verify_cells(cells, sign)
    if report:
        v = report.violations[0]
        raise NonConfluent(f"square at {v.point} evaluates to {v.value}, not {sign}", v.point, v.point)
    order = sorted(cells)
    return PlaneCompletion(frontier, sign, depth, {c: cells[c] for c in order}, {c: layers[c] for c in order})


def reflect_plane(t: TilingWindow) -> TilingWindow:
    """``b[i, j] = a[i, -j]``; turns an SL2-tiling into an anti-tiling and back."""
    if t.n != 2:
        raise DimensionMismatch(f"reflect_plane needs a 2-dimensional tiling, got {t.n}")
    (i0, j0), (i1, j1) = t.window.lo, t.window.hi
    eps = SignatureMatrix.constant(2, -t.epsilon[0, 1])
    return TilingWindow.from_array(Window((i0, -j1), (i1, -j0)), np.flip(t.array, axis=1), eps)
