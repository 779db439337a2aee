"""Admissibility, flips and sign-vector decomposition of signature matrices.

For ``n >= 3`` a signature matrix admits a tiling exactly when every triple
of distinct axes has off-diagonal product ``-1``.  Such matrices are exactly
those of the form ``eps[k][l] = -s[k] * s[l]`` for a sign vector ``s``, which
is determined up to a global sign.  For ``n = 2`` the triple condition is
vacuous and both matrices count as admissible, since the plane carries
tilings of either sign.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Sequence

from .errors import BadAxis, DimensionTooLarge, InvalidSignature, NotAdmissible
from .lattice import SignatureMatrix

MAX_ENUMERATION_DIM = 16


@dataclass(frozen=True)
class SignVector:
    s: tuple[int, ...]

    def __post_init__(self):
        s = tuple(int(v) for v in self.s)
        if not s or any(v not in (-1, 1) for v in s):
            raise InvalidSignature(f"sign vector entries must be +-1, got {self.s!r}")
        object.__setattr__(self, "s", s)

    @property
    def n(self) -> int:
        return len(self.s)

    def __iter__(self):
        return iter(self.s)

    def __neg__(self) -> SignVector:
        return SignVector(tuple(-v for v in self.s))

    def matrix(self) -> SignatureMatrix:
        return signs_to_signature(self.s)

    def __str__(self) -> str:
        return ",".join("+" if v > 0 else "-" for v in self.s)


def signs_to_signature(s: Sequence[int]) -> SignatureMatrix:
    """The matrix with ``eps[k][l] = -s[k] * s[l]`` off the diagonal."""
    n = len(s)
    return SignatureMatrix(tuple(tuple(-1 if k == l else -s[k] * s[l] for l in range(n)) for k in range(n)))


def admissibility_witness(eps: SignatureMatrix) -> tuple[int, int, int] | None:
    """First triple ``(j, k, l)`` (1-based, lexicographic) with product ``+1``, else ``None``."""
    rows = eps.rows
    n = len(rows)
    for j in range(n):
        rj = rows[j]
        for k in range(j + 1, n):
            rk = rows[k]
            p = rj[k]
            for l in range(k + 1, n):
                if p * rj[l] * rk[l] != -1:
                    return (j + 1, k + 1, l + 1)
    return None


def is_admissible(eps: SignatureMatrix) -> bool:
    return admissibility_witness(eps) is None


def flip(eps: SignatureMatrix, r: int) -> SignatureMatrix:
    """Negate row and column ``r`` (1-based), keeping the diagonal."""
    n = eps.n
    if not 1 <= r <= n:
        raise BadAxis(f"axis {r} not in 1..{n}")
    i = r - 1
    rows = tuple(
        tuple(-v if (k == i) != (l == i) else v for l, v in enumerate(row))
        for k, row in enumerate(eps.rows)
    )
    return SignatureMatrix._trusted(rows)


def flip_many(eps: SignatureMatrix, axes: Sequence[int]) -> SignatureMatrix:
    for r in axes:
        eps = flip(eps, r)
    return eps


def signature_to_signs(eps: SignatureMatrix) -> tuple[SignVector, SignVector]:
    """Both solutions ``s, -s`` of ``eps[k][l] = -s[k] s[l]``, first one with ``s[0] = +1``.

    The first row fixes the candidate; every other entry is then checked, and
    the check fails exactly when some triple product is ``+1``.
    """
    rows = eps.rows
    n = len(rows)
    s = (1,) + tuple(-rows[0][l] for l in range(1, n))
    for k in range(n):
        for l in range(k + 1, n):
            if rows[k][l] != -s[k] * s[l]:
                witness = admissibility_witness(eps)
                raise NotAdmissible(f"no sign vector realizes this matrix; triple {witness} has product +1", witness)
    sv = SignVector(s)
    return sv, -sv


def _check_dim(n: int) -> None:
    if n < 2:
        raise InvalidSignature(f"dimension must be at least 2, got {n}")
    if n > MAX_ENUMERATION_DIM:
        raise DimensionTooLarge(f"enumeration is capped at n={MAX_ENUMERATION_DIM}")


def all_signature_matrices(n: int) -> Iterator[SignatureMatrix]:
    """Every ``n x n`` signature matrix, ``2^(n(n-1)/2)`` of them."""
    if n < 1:
        raise InvalidSignature(f"dimension must be positive, got {n}")
    # row k = mirror of column k (fixed by earlier rows), -1, then free signs
    def extend(prefixes, k):
        for prefix in prefixes:
            left = tuple(row[k] for row in prefix) + (-1,)
            for right in itertools.product((-1, 1), repeat=n - k - 1):
                yield prefix + (left + right,)

    level: Iterator[tuple[tuple[int, ...], ...]] = iter([()])
    for k in range(n):
        level = extend(level, k)
    for rows in level:
        yield SignatureMatrix._trusted(rows)


def enumerate_admissible(n: int) -> list[SignatureMatrix]:
    """All admissible matrices, built from sign vectors with ``s[0] = +1``; sorted."""
    _check_dim(n)
    out = [signs_to_signature((1,) + tail) for tail in itertools.product((-1, 1), repeat=n - 1)]
    return sorted(out)


def orbit_of_anti(n: int) -> list[SignatureMatrix]:
    """Closure of the all-``-1`` matrix under flips at every axis; sorted."""
    _check_dim(n)
    start = SignatureMatrix.anti(n)
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for eps in frontier:
            for r in range(1, n + 1):
                f = flip(eps, r)
                if f not in seen:
                    seen.add(f)
                    nxt.append(f)
        frontier = nxt
    return sorted(seen)
