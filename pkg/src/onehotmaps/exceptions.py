"""Exception hierarchy for onehotmaps."""

from __future__ import annotations


class OneHotMapsError(Exception):
    """Base exception for onehotmaps."""


class ContextMismatchError(OneHotMapsError):
    """Operands belong to different HE contexts or have different slot counts."""


class FixedPointOverflowError(OneHotMapsError, OverflowError):
    """A FixedPoint result exceeded the integer-part budget of its context."""

    def __init__(self, bound: float, limit: float, operation: str) -> None:
        self.bound = bound
        self.limit = limit
        self.operation = operation
        super().__init__(
            f"Fixed-point overflow in {operation}: bound {bound:.6g} exceeds {limit:.6g}"
        )


class DepthBudgetError(OneHotMapsError):
    """An operation would exceed the context's multiplicative depth budget."""

    def __init__(self, depth: int, budget: int) -> None:
        self.depth = depth
        self.budget = budget
        super().__init__(f"Depth {depth} exceeds budget {budget}")


class RepresentationError(OneHotMapsError):
    """A value or representation is invalid for the requested encoding."""


class CrtBasisError(OneHotMapsError):
    """A CRT basis is not pairwise coprime or does not cover the range."""

    def __init__(self, message: str, moduli: tuple[int, ...] = ()) -> None:
        self.moduli = moduli
        super().__init__(message)


class ShapeError(OneHotMapsError):
    """Tile shapes, slot counts or lane counts do not fit together."""


class ConfigError(OneHotMapsError):
    """The JSON configuration, a profile string or a shape string is malformed."""
