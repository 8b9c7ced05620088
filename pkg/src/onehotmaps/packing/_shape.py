"""Tile shapes and their ``[m/t1,n/t2]`` notation."""

from __future__ import annotations

import math
import re
from dataclasses import dataclass

from ..exceptions import ConfigError, ShapeError

_SHAPE_PATTERN = re.compile(r"^\[\s*(\w+)\s*/\s*(\w+)\s*,\s*(\w+)\s*/\s*(\w+)\s*\]$")


@dataclass(frozen=True)
class TileShape:
    """Tile of ``t1`` rows by ``t2`` columns, flattened row-major into one ciphertext."""

    t1: int
    t2: int

    def __post_init__(self) -> None:
        if self.t1 < 1 or self.t2 < 1:
            raise ShapeError(f"Tile dimensions must be positive, got {self.t1}x{self.t2}")

    @property
    def size(self) -> int:
        return self.t1 * self.t2

    def validate(self, slot_count: int) -> None:
        if self.size != slot_count:
            raise ShapeError(
                f"Tile {self.t1}x{self.t2} covers {self.size} slots, context has {slot_count}"
            )

    def grid(self, m: int, n: int) -> tuple[int, int]:
        """Number of tile rows and tile columns needed for an ``m x n`` matrix."""
        return math.ceil(m / self.t1), math.ceil(n / self.t2)

    def label(self, m: int | str = "m", n: int | str = "n") -> str:
        return f"[{m}/{self.t1},{n}/{self.t2}]"

    @classmethod
    def all_for(cls, slot_count: int) -> list[TileShape]:
        """Every ``t1 x t2`` factorisation of the slot count."""
        divisors = [t1 for t1 in range(1, slot_count + 1) if slot_count % t1 == 0]
        return [cls(t1, slot_count // t1) for t1 in divisors]


def parse_shape(text: str, slot_count: int) -> TileShape:
    """Parse ``"[n/1,m/s]"`` or ``"[4/2,8/4]"``; ``s`` stands for the slot count.

    >>> parse_shape("[n/1,m/s]", 16)
    TileShape(t1=1, t2=16)
    >>> parse_shape("[2/2, 8/4]", 8)
    TileShape(t1=2, t2=4)
    """
    match = _SHAPE_PATTERN.match(text.strip())
    if match is None:
        raise ConfigError(f"Malformed tile shape {text!r}")

    def tile_dim(token: str) -> int:
        if token == "s":
            return slot_count
        if token.isdigit():
            return int(token)
        raise ConfigError(f"Tile dimension {token!r} in {text!r} is neither an integer nor 's'")

    shape = TileShape(tile_dim(match.group(2)), tile_dim(match.group(4)))
    try:
        shape.validate(slot_count)
    except ShapeError as exc:
        raise ConfigError(str(exc)) from exc
    return shape
