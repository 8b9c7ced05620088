"""CRT bases and the moduli-selection heuristics."""

from __future__ import annotations

import itertools
import logging
import math
from collections.abc import Sequence
from dataclasses import dataclass
from typing import Literal

import numpy as np

from ..exceptions import CrtBasisError, RepresentationError

logger = logging.getLogger(__name__)

CrtStrategy = Literal["prime-combination", "scan-range"]


@dataclass(frozen=True)
class CrtBasis:
    """Pairwise-coprime moduli whose product ``m`` covers the range ``[n]``.

    ``fallback`` is set when a scan-range search found nothing better than
    the trivial single-modulus basis.
    """

    moduli: tuple[int, ...]
    n: int
    fallback: bool = False

    def __post_init__(self) -> None:
        if not self.moduli or any(q < 2 for q in self.moduli):
            raise CrtBasisError("Moduli must be integers >= 2", self.moduli)
        for p, q in itertools.combinations(self.moduli, 2):
            if math.gcd(p, q) != 1:
                raise CrtBasisError(f"Moduli {p} and {q} are not coprime", self.moduli)
        if self.m < self.n:
            raise CrtBasisError(f"Product {self.m} does not cover n={self.n}", self.moduli)

    @property
    def m(self) -> int:
        return math.prod(self.moduli)

    @property
    def k(self) -> int:
        return len(self.moduli)

    @property
    def slot_cost(self) -> int:
        return sum(self.moduli)

    def residues(self, a: int) -> tuple[int, ...]:
        if not 0 <= a < self.n:
            raise RepresentationError(f"Value {a} outside [0, {self.n})")
        return tuple(a % q for q in self.moduli)

    def combine(self, residues: Sequence[int]) -> int:
        return crt_combine(self.moduli, residues)


def crt_combine(moduli: Sequence[int], residues: Sequence[int]) -> int:
    """Recombine residues into the unique value below ``prod(moduli)``."""
    if len(moduli) != len(residues):
        raise ValueError("moduli and residues differ in length")
    m = math.prod(moduli)
    total = 0
    for q, r in zip(moduli, residues):
        rest = m // q
        try:
            inverse = pow(rest, -1, q)
        except ValueError:
            raise CrtBasisError(f"Modulus {q} is not coprime to the others", tuple(moduli))
        total += r * rest * inverse
    return total % m


def small_primes(count: int) -> list[int]:
    """The ``count`` smallest primes."""
    if count <= 0:
        return []
    limit = max(16, int(count * (math.log(count + 1) + math.log(math.log(count + 2)) + 2)))
    while True:
        sieve = np.ones(limit + 1, dtype=bool)
        sieve[:2] = False
        for p in range(2, math.isqrt(limit) + 1):
            if sieve[p]:
                sieve[p * p :: p] = False
        primes = np.flatnonzero(sieve)
        if len(primes) >= count:
            return [int(p) for p in primes[:count]]
        limit *= 2


def prime_power_factors(m: int) -> tuple[int, ...]:
    """Factor ``m`` into its prime powers, ascending (a pairwise-coprime basis)."""
    factors: list[int] = []
    rest = m
    p = 2
    while p * p <= rest:
        if rest % p == 0:
            power = 1
            while rest % p == 0:
                rest //= p
                power *= p
            factors.append(power)
        p += 1
    if rest > 1:
        factors.append(rest)
    return tuple(sorted(factors))


def _rank(moduli: tuple[int, ...]) -> tuple[int, int, tuple[int, ...]]:
    return (sum(moduli), math.prod(moduli), moduli)


def find_crt_basis(
    n: int,
    strategy: CrtStrategy = "prime-combination",
    *,
    primes: int | None = None,
    limit: int = 100,
) -> CrtBasis:
    """Search a CRT basis for ``[n]`` with the smallest slot cost.

    ``prime-combination`` tries every subset of the ``primes`` smallest primes
    (by default three more than needed for their product to reach ``n``).
    ``scan-range`` factors every ``m`` in ``[n, n + limit]`` into prime powers.
    Ties go to the smaller ``m``, then to the lexicographically smaller moduli.

    Parameters
    ----------
    n : int
        Number of classes to cover, at least 2.
    strategy : str
        ``"prime-combination"`` or ``"scan-range"``.
    primes : int, optional
        Size of the prime pool for ``prime-combination``.
    limit : int
        Width of the ``m`` window for ``scan-range``.

    Returns
    -------
    CrtBasis
        Pairwise coprime moduli with product at least ``n`` and minimal sum.
    """
    if n < 2:
        raise ValueError(f"n must be at least 2, got {n}")

    if strategy == "prime-combination":
        if primes is None:
            needed = 1
            while math.prod(small_primes(needed)) < n:
                needed += 1
            primes = needed + 3
        pool = small_primes(primes)
        best: tuple[int, ...] | None = None
        for size in range(1, len(pool) + 1):
            for combo in itertools.combinations(pool, size):
                if math.prod(combo) >= n and (best is None or _rank(combo) < _rank(best)):
                    best = combo
        if best is None:
            raise CrtBasisError(f"The {primes} smallest primes cannot cover n={n}")
        logger.debug("Prime-combination basis for n=%d: %s", n, best)
        return CrtBasis(best, n)

    if strategy == "scan-range":
        if limit < 0:
            raise ValueError("limit must be non-negative")
        best = None
        for m in range(n, n + limit + 1):
            candidate = prime_power_factors(m)
            if best is None or _rank(candidate) < _rank(best):
                best = candidate
        assert best is not None
        fallback = len(best) == 1
        if fallback:
            logger.warning(
                "No composite m in [%d, %d] improves on the trivial basis", n, n + limit
            )
        return CrtBasis(best, n, fallback=fallback)

    raise ValueError(f"Unknown strategy {strategy!r}")
