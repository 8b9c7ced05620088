"""Lagrange denominators and the shadow tree of per-node rebalancing constants.

All values here are exact rationals. They are turned into slot values only when
a conversion encodes them as plaintexts.
"""

from __future__ import annotations

import logging
import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Any

logger = logging.getLogger(__name__)


def _check_power_of_two(n: int) -> int:
    if n < 2 or n & (n - 1):
        raise ValueError(f"n must be a power of two >= 2, got {n}")
    return n.bit_length() - 1


def lagrange_denominators(n: int) -> tuple[Fraction, ...]:
    """``S[c] = prod_{i != c} (c - i)`` for ``c`` in ``[n]``."""
    if n < 2:
        raise ValueError(f"n must be at least 2, got {n}")
    return tuple(
        Fraction(math.prod(c - i for i in range(n) if i != c)) for c in range(n)
    )


def evaluate_lagrange_oracle(x: int | Fraction, n: int) -> tuple[Fraction, ...]:
    """Basis polynomials ``P_c(x)`` evaluated exactly; one-hot for ``x`` in ``[n]``."""
    denominators = lagrange_denominators(n)
    return tuple(
        Fraction(math.prod(Fraction(x) - i for i in range(n) if i != c)) / denominators[c]
        for c in range(n)
    )


@dataclass(frozen=True)
class ShadowTree:
    """Per-node plaintext constants for a product tree with ``n`` leaves.

    ``constants[h][i]`` belongs to node ``i`` at height ``h`` (leaves at height
    0, the root's children at height ``levels - 1``). ``unique_sets`` holds the
    factor multiset each node owns before the sibling swap.
    """

    n: int
    constants: tuple[tuple[Fraction, ...], ...]
    unique_sets: tuple[tuple[tuple[int, ...], ...], ...]

    @property
    def levels(self) -> int:
        return len(self.constants)

    def cumulative(self, height: int, index: int) -> Fraction:
        """Product of the constants in the subtree of a node (its total rescaling)."""
        total = Fraction(1)
        for h in range(height + 1):
            width = 1 << (height - h)
            for j in range(index * width, (index + 1) * width):
                total *= self.constants[h][j]
        return total

    def path_scale(self, leaf: int) -> Fraction:
        """Product of the cumulative constants of the siblings along ``leaf``'s path."""
        scale = Fraction(1)
        for h in range(self.levels):
            scale *= self.cumulative(h, (leaf >> h) ^ 1)
        return scale

    def to_dict(self) -> dict[str, Any]:
        return {
            "n": self.n,
            "levels": [
                [{"numerator": str(v.numerator), "denominator": str(v.denominator)} for v in row]
                for row in self.constants
            ],
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> ShadowTree:
        constants = tuple(
            tuple(Fraction(int(v["numerator"]), int(v["denominator"])) for v in row)
            for row in data["levels"]
        )
        return cls(int(data["n"]), constants, ())


def _prod(values: Counter[int]) -> int:
    return math.prod(v ** k for v, k in values.items())


@lru_cache(maxsize=16)
def build_shadow_tree(n: int) -> ShadowTree:
    """Compute the shadow tree for ``n = 2**levels`` leaves.

    Each leaf starts with the multiset ``{c - i : i != c}``. Moving up, the
    factors two siblings share are passed to the parent and the rest stay on
    the node. Every node then takes its sibling's set, since a leaf's path
    product multiplies sibling values. Node constants are the inverse of the
    node's product divided by its children's products, so that the constants
    in a subtree multiply to the inverse of the node's own set.
    """
    levels = _check_power_of_two(n)

    current = [Counter(c - i for i in range(n) if i != c) for c in range(n)]
    unique: list[list[Counter[int]]] = []
    for _ in range(levels):
        shared = [current[2 * i] & current[2 * i + 1] for i in range(len(current) // 2)]
        unique.append([current[j] - shared[j // 2] for j in range(len(current))])
        current = shared

    swapped = [[row[j ^ 1] for j in range(len(row))] for row in unique]

    constants: list[tuple[Fraction, ...]] = [
        tuple(Fraction(1, _prod(node)) for node in swapped[0])
    ]
    for h in range(1, levels):
        below = swapped[h - 1]
        constants.append(
            tuple(
                Fraction(_prod(below[2 * i]) * _prod(below[2 * i + 1]), _prod(node))
                for i, node in enumerate(swapped[h])
            )
        )

    sets = tuple(
        tuple(tuple(sorted(node.elements())) for node in row) for row in unique
    )
    logger.debug("Built shadow tree for n=%d", n)
    return ShadowTree(n, tuple(constants), sets)


@dataclass(frozen=True)
class ShadowBounds:
    """Smallest and largest positive constant of one shadow tree."""

    levels: int
    minimum: Fraction
    maximum: Fraction

    @property
    def log2_min(self) -> float:
        return math.log2(self.minimum)

    @property
    def log2_max(self) -> float:
        return math.log2(self.maximum)


def shadow_bounds(levels: int) -> ShadowBounds:
    """Extreme positive constants of the tree with ``2**levels`` leaves."""
    if levels < 1:
        raise ValueError("levels must be at least 1")
    tree = build_shadow_tree(1 << levels)
    positive = [v for row in tree.constants for v in row if v > 0]
    return ShadowBounds(levels, min(positive), max(positive))
