"""Exception hierarchy shared by every module."""

from __future__ import annotations


class TilingError(Exception):
    """Base class for all errors raised by :mod:`sl2tiling`."""


class DimensionMismatch(TilingError, ValueError):
    pass


class EmptyWindow(TilingError, ValueError):
    pass


class TooLarge(TilingError, ValueError):
    pass


class OutOfWindow(TilingError, KeyError):
    pass


class InvalidTiling(TilingError, ValueError):
    """Entries missing, non-integral or non-positive."""


class InvalidSignature(TilingError, ValueError):
    pass


class DocumentError(TilingError, ValueError):
    """A tiling document could not be parsed."""


class BadAxis(TilingError, ValueError):
    pass


class BadIndex(TilingError, ValueError):
    pass


class DimensionTooLarge(TilingError, ValueError):
    pass


class NotAdmissible(TilingError, ValueError):
    """Raised for a signature matrix that admits no tiling.

    ``witness`` is a triple ``(j, k, l)`` of 1-based axes whose off-diagonal
    product is ``+1``, or ``None`` when the caller did not compute one.
    """

    def __init__(self, message: str, witness: tuple[int, int, int] | None = None):
        super().__init__(message)
        self.witness = witness


class WrongSignature(TilingError, ValueError):
    pass


class WindowNotSymmetric(TilingError, ValueError):
    pass


class SlicesNotConstant(TilingError, ValueError):
    pass


class ScanInconclusive(TilingError):
    def __init__(self, message: str, survivors: list[tuple[int, int]]):
        super().__init__(message)
        self.survivors = survivors


class CubeObstruction(TilingError, ArithmeticError):
    """(a, x, y, z) cannot be the bottom of a positive-integer cube."""

    def __init__(self, message: str, faces=None, tops=None):
        super().__init__(message)
        self.faces = faces
        self.tops = tops


class NonIntegerFace(CubeObstruction):
    pass


class NonIntegerTop(CubeObstruction):
    pass


class DisagreeingTops(CubeObstruction):
    pass


class CompletionError(TilingError, ArithmeticError):
    """Frontier propagation failed; ``cell`` is the offending lattice point."""

    def __init__(self, message: str, cell: tuple[int, int], square: tuple[int, int] | None = None):
        super().__init__(message)
        self.cell = cell
        self.square = square


class NonIntegerDivision(CompletionError):
    pass


class NonPositiveEntry(CompletionError):
    pass


class NonConfluent(CompletionError):
    pass


class UnreachableCell(CompletionError):
    pass
