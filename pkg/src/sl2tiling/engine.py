"""Construction and verification of eps-SL2-tilings on finite windows.

The relation checked at base point ``i`` for axes ``k != l`` is::

    a[i+e_l] * a[i+e_k] - a[i] * a[i+e_k+e_l] == eps[k][l]

Verification slices the window's object array so that each axis pair is one
vectorized pass over exact Python integers.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

import numpy as np

from .errors import (
    BadAxis,
    DimensionMismatch,
    DisagreeingTops,
    NonIntegerFace,
    NonIntegerTop,
    NotAdmissible,
    WindowNotSymmetric,
    WrongSignature,
)
from .fibonacci import staircase_value
from .lattice import LatticePoint, SignatureMatrix, TilingWindow, Window
from .signatures import admissibility_witness, flip, signature_to_signs


@dataclass(frozen=True, order=True)
class Violation:
    point: LatticePoint
    axes: tuple[int, int]  # 1-based; (k, k) for the diagonal relation
    value: int
    expected: int

    def to_json(self) -> str:
        return json.dumps(
            {"point": list(self.point), "axes": list(self.axes), "value": str(self.value), "expected": self.expected},
            separators=(",", ":"),
        )

    def __str__(self) -> str:
        k, l = self.axes
        return f"base point {self.point}, axes ({k},{l}): got {self.value}, expected {self.expected:+d}"


@dataclass(frozen=True)
class ViolationReport:
    violations: tuple[Violation, ...] = ()

    def __len__(self) -> int:
        return len(self.violations)

    def __iter__(self) -> Iterator[Violation]:
        return iter(self.violations)

    def __bool__(self) -> bool:
        return bool(self.violations)

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_jsonl(self) -> str:
        return "".join(v.to_json() + "\n" for v in self.violations)


def _shifted(a: np.ndarray, shifts: dict[int, int], trims: dict[int, int]) -> np.ndarray:
    # view of a whose index 0 on axis ax corresponds to original index shifts[ax]
    # and whose length is shape - trims[ax]
    idx = []
    for ax, m in enumerate(a.shape):
        t = trims.get(ax, 0)
        s = shifts.get(ax, 0)
        idx.append(slice(s, m - t + s))
    return a[tuple(idx)]


def _collect(t: TilingWindow, bad: np.ndarray, diff: np.ndarray, axes: tuple[int, int], expected: int) -> list[Violation]:
    lo = t.window.lo
    return [
        Violation(tuple(int(c) + o for c, o in zip(idx, lo)), axes, int(diff[tuple(idx)]), expected)
        for idx in np.argwhere(bad)
    ]


def verify_window(t: TilingWindow) -> ViolationReport:
    """Every base point and axis pair ``k < l`` whose unit square lies in the window."""
    a = t.array
    eps = t.epsilon
    out: list[Violation] = []
    for k in range(t.n):
        for l in range(k + 1, t.n):
            if a.shape[k] < 2 or a.shape[l] < 2:
                continue
            trims = {k: 1, l: 1}
            base = _shifted(a, {}, trims)
            ek = _shifted(a, {k: 1}, trims)
            el = _shifted(a, {l: 1}, trims)
            ekl = _shifted(a, {k: 1, l: 1}, trims)
            diff = el * ek - base * ekl
            bad = (diff != eps[k, l]).astype(bool)
            if bad.any():
                out.extend(_collect(t, bad, diff, (k + 1, l + 1), eps[k, l]))
    return ViolationReport(tuple(sorted(out)))


def verify_diagonal_relation(t: TilingWindow) -> ViolationReport:
    """``a[i+e_k]^2 - a[i] * a[i+2e_k] == -1`` wherever both neighbours are in the window."""
    a = t.array
    out: list[Violation] = []
    for k in range(t.n):
        if a.shape[k] < 3:
            continue
        trims = {k: 2}
        base = _shifted(a, {}, trims)
        mid = _shifted(a, {k: 1}, trims)
        top = _shifted(a, {k: 2}, trims)
        diff = mid * mid - base * top
        bad = (diff != -1).astype(bool)
        if bad.any():
            out.extend(_collect(t, bad, diff, (k + 1, k + 1), -1))
    return ViolationReport(tuple(sorted(out)))


def _coordinate_sums(window: Window, weights: Sequence[int]) -> np.ndarray:
    """Integer array of ``sum_k weights[k] * i_k`` over the window."""
    total = np.zeros(window.shape, dtype=np.int64)
    for k, (lo, m, w) in enumerate(zip(window.lo, window.shape, weights)):
        shape = [1] * window.n
        shape[k] = m
        total = total + (w * (lo + np.arange(m, dtype=np.int64))).reshape(shape)
    return total


def slice_values(t: TilingWindow) -> dict[int, int] | None:
    """Map coordinate sum -> entry, or ``None`` if some slice holds two values."""
    sums = _coordinate_sums(t.window, [1] * t.n).ravel().tolist()
    seen: dict[int, int] = {}
    for r, v in zip(sums, t.entries):
        if seen.setdefault(r, v) != v:
            return None
    return dict(sorted(seen.items()))


def check_constant_slices(t: TilingWindow) -> bool:
    """True iff entries are constant on each hyperplane ``sum(i) = r`` within the window.

    Only meaningful for the pure SL2 or pure anti signature; for mixed
    signatures the constant direction is a signed sum, see
    :func:`check_signed_slices`.
    """
    if not (t.epsilon.is_constant(-1) or t.epsilon.is_constant(1)):
        raise WrongSignature("constant slices are only defined for all-(+1) or all-(-1) signatures")
    return slice_values(t) is not None


def check_signed_slices(t: TilingWindow) -> bool:
    """Constancy along ``sum_k s_k i_k`` for the sign vector of ``t.epsilon``."""
    s, _ = signature_to_signs(t.epsilon)
    sums = _coordinate_sums(t.window, s.s).ravel().tolist()
    seen: dict[int, int] = {}
    return all(seen.setdefault(r, v) == v for r, v in zip(sums, t.entries))


def build_tiling(eps: SignatureMatrix, window: Window, translation: int = 0) -> TilingWindow:
    """The eps-tiling with entry ``staircase_value(sum_k s_k i_k + translation)``.

    ``s`` is the sign vector of ``eps`` normalized to ``s_1 = +1``; the other
    representative ``-s`` gives the tiling reflected through the origin.
    """
    if eps.n != window.n:
        raise DimensionMismatch(f"epsilon is {eps.n}x{eps.n} but window has dimension {window.n}")
    if eps.n < 3:
        raise DimensionMismatch("build_tiling needs n >= 3; use staircase_plane / reflect_plane in the plane")
    witness = admissibility_witness(eps)
    if witness is not None:
        raise NotAdmissible(
            f"no eps-SL2-tiling exists: eps{witness[0]}{witness[1]} * eps{witness[0]}{witness[2]} "
            f"* eps{witness[1]}{witness[2]} = +1 for axes {witness}",
            witness,
        )
    s, _ = signature_to_signs(eps)
    sums = _coordinate_sums(window, s.s) + translation
    lo = int(sums.min())
    table = np.empty(int(sums.max()) - lo + 1, dtype=object)
    table[:] = [staircase_value(r) for r in range(lo, lo + len(table))]
    return TilingWindow.from_array(window, table[sums - lo], eps)


def flip_tiling(t: TilingWindow, r: int) -> TilingWindow:
    """``b[i] = a[i - 2 i_r e_r]``, a tiling for ``flip(eps, r)``.

    Needs the window symmetric about 0 on axis ``r``.  Note that flipping
    ``build_tiling(eps, w, t)`` at axis 1 gives ``build_tiling(flip(eps, 1), w, 1 - t)``:
    the sign-vector normalization swaps representatives there.
    """
    if not 1 <= r <= t.n:
        raise BadAxis(f"axis {r} not in 1..{t.n}")
    if not t.window.is_symmetric(r):
        raise WindowNotSymmetric(f"axis {r} range [{t.window.lo[r - 1]}, {t.window.hi[r - 1]}] is not symmetric about 0")
    return TilingWindow.from_array(t.window, np.flip(t.array, axis=r - 1), flip(t.epsilon, r))


@dataclass(frozen=True)
class CubeResult:
    faces: tuple[int, int, int]  # (jk, kl, jl)
    tops: tuple[int, int, int]   # via x, via y, via z

    @property
    def top(self) -> int:
        return self.tops[0]


def cube_consistency(a: int, x: int, y: int, z: int, eps_sign: int) -> CubeResult:
    """Fill a unit cube from its bottom corner ``a`` and the neighbours ``x, y, z``.

    The three face values come from one application of the relation each;
    the top corner is then computed three ways, dividing by ``x``, ``y`` and
    ``z`` respectively.  Works over ``Fraction`` so a non-integer face is
    reported rather than rounded.  Raises a :class:`CubeObstruction`
    subclass when the bottom cannot extend to a positive-integer cube.
    """
    if eps_sign not in (-1, 1):
        raise ValueError("eps_sign must be -1 or +1")
    a, x, y, z = (Fraction(v) for v in (a, x, y, z))
    jk = (x * y - eps_sign) / a
    kl = (y * z - eps_sign) / a
    jl = (x * z - eps_sign) / a
    faces = (jk, kl, jl)
    tops = ((jk * jl - eps_sign) / x, (jk * kl - eps_sign) / y, (jl * kl - eps_sign) / z)
    if any(f.denominator != 1 or f <= 0 for f in faces):
        raise NonIntegerFace(f"face values {tuple(map(str, faces))} are not all positive integers", faces, tops)
    if len(set(tops)) != 1:
        raise DisagreeingTops(f"top corner computed three ways disagrees: {tuple(map(str, tops))}", faces, tops)
    if tops[0].denominator != 1 or tops[0] <= 0:
        raise NonIntegerTop(f"top corner {tops[0]} is not a positive integer", faces, tops)
    return CubeResult(tuple(int(f) for f in faces), tuple(int(v) for v in tops))
