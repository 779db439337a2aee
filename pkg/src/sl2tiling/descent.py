"""One-dimensional reduction and the seed scans that certify nonexistence/uniqueness.

On an ``n >= 3`` tiling with pure signature ``sign * (off-diagonal ones)`` the
entries only depend on the coordinate sum, and the values ``c_r`` obey::

    c[r+1] * c[r-1] == c[r]**2 - sign

Starting from a seed ``(c_0, c_1)`` this recurrence either runs on through
positive integers or hits a non-integer or non-positive value; the latter is
recorded as a :class:`DescentCertificate`.
"""

from __future__ import annotations

import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Literal, Sequence

from .engine import slice_values
from .errors import DimensionMismatch, ScanInconclusive, SlicesNotConstant
from .fibonacci import staircase_value
from .lattice import TilingWindow

Direction = Literal["forward", "backward"]


@dataclass(frozen=True)
class SliceSequence:
    """Terms ``c_offset, c_offset+1, ...``."""

    offset: int
    terms: tuple[int, ...]

    def __post_init__(self):
        terms = tuple(self.terms)
        if any(type(c) is not int or c < 1 for c in terms):
            raise ValueError("slice terms must be positive integers")
        object.__setattr__(self, "terms", terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __getitem__(self, r: int) -> int:
        if not self.offset <= r < self.offset + len(self.terms):
            raise IndexError(r)
        return self.terms[r - self.offset]

    @property
    def indices(self) -> range:
        return range(self.offset, self.offset + len(self.terms))

    def satisfies(self, sign: int) -> bool:
        t = self.terms
        return all(t[m + 1] * t[m - 1] == t[m] ** 2 - sign for m in range(1, len(t) - 1))


@dataclass(frozen=True)
class DescentCertificate:
    """A seed whose extension fails.

    ``transcript`` holds the valid terms in order of travel, starting with the
    seed (``c_0, c_1`` forward, ``c_1, c_0`` backward); the failing value is
    the next one, produced at ``failure_step`` (1 = first new term).
    """

    seed: tuple[int, int]
    direction: Direction
    failure_step: int
    failure_kind: Literal["NonPositive", "NonInteger"]
    transcript: tuple[int, ...]
    sign: int

    def replay(self) -> bool:
        """Recompute the extension and confirm it fails where recorded."""
        res = extend_sequence(self.seed, self.failure_step, self.direction, self.sign)
        return res == self

    def to_json(self) -> str:
        return json.dumps(
            {
                "seed": [str(c) for c in self.seed],
                "direction": self.direction,
                "step": self.failure_step,
                "kind": self.failure_kind,
                "transcript": [str(c) for c in self.transcript],
            },
            separators=(",", ":"),
        )


def extend_sequence(
    seed: Sequence[int], steps: int, direction: Direction = "forward", sign: int = -1
) -> SliceSequence | DescentCertificate:
    """Run the slice recurrence ``steps`` terms past the seed, or stop at the first failure."""
    c0, c1 = (int(v) for v in seed)
    if c0 < 1 or c1 < 1:
        raise ValueError(f"seed values must be positive, got {(c0, c1)}")
    if steps < 0:
        raise ValueError("steps must be non-negative")
    if sign not in (-1, 1):
        raise ValueError("sign must be -1 or +1")
    if direction not in ("forward", "backward"):
        raise ValueError(f"unknown direction {direction!r}")
    prev, cur = (c0, c1) if direction == "forward" else (c1, c0)
    out = [prev, cur]
    for step in range(1, steps + 1):
        nxt, rem = divmod(cur * cur - sign, prev)
        if rem or nxt < 1:
            kind = "NonInteger" if rem else "NonPositive"
            return DescentCertificate((c0, c1), direction, step, kind, tuple(out), sign)
        out.append(nxt)
        prev, cur = cur, nxt
    if direction == "forward":
        return SliceSequence(0, tuple(out))
    return SliceSequence(-steps, tuple(reversed(out)))


def _first_failure(seed: tuple[int, int], steps: int, sign: int) -> DescentCertificate | None:
    # earlier failure wins; ties go to the backward direction
    back = extend_sequence(seed, steps, "backward", sign)
    fwd = extend_sequence(seed, steps, "forward", sign)
    certs = [c for c in (back, fwd) if isinstance(c, DescentCertificate)]
    return min(certs, key=lambda c: c.failure_step) if certs else None


def _scan_rows(args: tuple[range, int, int, int]) -> list[tuple[tuple[int, int], DescentCertificate | None]]:
    rows, bound, steps, sign = args
    return [((a, b), _first_failure((a, b), steps, sign)) for a in rows for b in range(1, bound + 1)]


def _workers(workers: int | None) -> int:
    if workers is None:
        workers = int(os.environ.get("TILING_THREADS", "1") or 1)
    return max(1, workers)


def scan_seeds(bound: int, steps: int, sign: int, workers: int | None = None):
    """``[(seed, certificate or None)]`` for every seed in ``[1, bound]^2``, sorted by seed."""
    if bound < 1 or steps < 1:
        raise ValueError("seed bound and step bound must be >= 1")
    workers = _workers(workers)
    if workers == 1 or bound < 8:
        return _scan_rows((range(1, bound + 1), bound, steps, sign))
    chunks = [(range(a, bound + 1, workers), bound, steps, sign) for a in range(1, workers + 1)]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        parts = list(pool.map(_scan_rows, chunks))
    return sorted((item for part in parts for item in part), key=lambda item: item[0])


def default_step_bound(bound: int) -> int:
    """``B + 2``: the minimum of a surviving SL2 sequence drops by at least one per step."""
    return bound + 2


def nonexistence_scan(
    bound: int, steps: int | None = None, sign: int = 1, workers: int | None = None
) -> list[DescentCertificate]:
    """One certificate per seed in ``[1, bound]^2``; raises if any seed survives both ways."""
    steps = default_step_bound(bound) if steps is None else steps
    results = scan_seeds(bound, steps, sign, workers)
    survivors = [seed for seed, cert in results if cert is None]
    if survivors:
        raise ScanInconclusive(
            f"{len(survivors)} seed(s) survive {steps} steps in both directions, e.g. {survivors[0]}", survivors
        )
    return [cert for _, cert in results]


def staircase_pairs(bound: int) -> set[tuple[int, int]]:
    """Adjacent pairs ``(c_r, c_r+1)`` of ..., 5, 2, 1, 1, 2, 5, ... inside ``[1, bound]^2``."""
    out = set()
    r = 0
    while staircase_value(r) <= bound:
        # staircase_value(r) == staircase_value(1 - r): walk both arms of the valley
        for lo in (r, -r):
            pair = (staircase_value(lo), staircase_value(lo + 1))
            if max(pair) <= bound:
                out.add(pair)
        r += 1
    return out


@dataclass(frozen=True)
class UniquenessScan:
    survivors: tuple[tuple[int, int], ...]
    certificates: tuple[DescentCertificate, ...]
    expected: tuple[tuple[int, int], ...]

    @property
    def matches(self) -> bool:
        return set(self.survivors) == set(self.expected)


def uniqueness_scan(bound: int, steps: int = 12, sign: int = -1, workers: int | None = None) -> UniquenessScan:
    """Split seeds in ``[1, bound]^2`` into survivors and certificates; compare with the staircase."""
    if steps < 2:
        raise ValueError("uniqueness scan needs at least 2 steps")
    results = scan_seeds(bound, steps, sign, workers)
    return UniquenessScan(
        survivors=tuple(seed for seed, cert in results if cert is None),
        certificates=tuple(cert for _, cert in results if cert is not None),
        expected=tuple(sorted(staircase_pairs(bound))),
    )


def tiling_to_slices(t: TilingWindow) -> SliceSequence:
    """The value on each hyperplane ``sum(i) = r`` of an ``n >= 3`` tiling window."""
    if t.n < 3:
        raise DimensionMismatch("the slice reduction only applies to n >= 3")
    values = slice_values(t)
    if values is None:
        raise SlicesNotConstant("entries are not constant on coordinate-sum slices")
    lo = min(values)
    return SliceSequence(lo, tuple(values[r] for r in range(lo, lo + len(values))))


def staircase_shift(seq: SliceSequence, max_shift: int | None = None) -> int | None:
    """Integer ``t`` with ``seq[r] == staircase_value(r + t)`` for all indices, if any.

    Searches ``|t| <= max_shift`` (default: enough to reach the largest term).
    """
    if max_shift is None:
        max_shift = abs(seq.offset) + len(seq) + max(seq.terms).bit_length() + 2
    for t in sorted(range(-max_shift, max_shift + 1), key=lambda v: (abs(v), v)):
        if all(seq[r] == staircase_value(r + t) for r in seq.indices):
            return t
    return None
