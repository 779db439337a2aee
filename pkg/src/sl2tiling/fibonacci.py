"""Fibonacci numbers and the two-dimensional staircase anti-tiling.

Numbering is ``F_1 = F_2 = 1, F_3 = 2, ...``.  The staircase tiling puts
``staircase_value(i + j)`` at ``(i, j)``: the odd-indexed Fibonacci numbers
``F_{2r-1}`` for ``r >= 1`` and ``F_{1-2r}`` for ``r <= 0``, so the 1's sit on
the two anti-diagonals ``i + j in {0, 1}``.
"""

from __future__ import annotations

import threading

import numpy as np

from .errors import BadIndex, DimensionMismatch
from .lattice import SignatureMatrix, TilingWindow, Window


class FibCache:
    """Grow-only list of Fibonacci numbers; extension is guarded by a lock."""

    def __init__(self):
        self._values = [0, 1, 1]
        self._lock = threading.Lock()

    def __len__(self) -> int:
        return len(self._values) - 1

    def __call__(self, m: int) -> int:
        if m < 1:
            raise BadIndex(f"Fibonacci index must be >= 1, got {m}")
        values = self._values
        if m < len(values):
            return values[m]
        with self._lock:
            values = self._values
            while len(values) <= m:
                values.append(values[-1] + values[-2])
            return values[m]


_cache = FibCache()


def fib(m: int) -> int:
    """Exact ``F_m`` for ``m >= 1``."""
    return _cache(m)


def staircase_value(r: int) -> int:
    """Entry of the staircase on the anti-diagonal ``i + j = r``."""
    return fib(2 * r - 1) if r >= 1 else fib(1 - 2 * r)


def staircase_plane(window: Window) -> TilingWindow:
    if window.n != 2:
        raise DimensionMismatch(f"staircase_plane needs a 2-dimensional window, got {window.n}")
    (i0, j0), (h, w) = window.lo, window.shape
    lo_sum = i0 + j0
    table = [staircase_value(lo_sum + d) for d in range(h + w - 1)]
    a = np.empty((h, w), dtype=object)
    for di in range(h):
        a[di, :] = table[di : di + w]
    return TilingWindow.from_array(window, a, SignatureMatrix.anti(2))


def check_odd_fib_identity(r_max: int) -> bool:
    """``F_{2r-1} F_{2r+3} == F_{2r+1}^2 + 1`` for every ``1 <= r <= r_max``."""
    return all(fib(2 * r - 1) * fib(2 * r + 3) == fib(2 * r + 1) ** 2 + 1 for r in range(1, r_max + 1))


def odd_fibonacci_numbers(limit: int) -> set[int]:
    """``{F_1, F_3, F_5, ...}`` up to ``limit`` inclusive."""
    out, m = set(), 1
    while fib(m) <= limit:
        out.add(fib(m))
        m += 2
    return out
