"""Approximate equality and the zero test."""

from __future__ import annotations

import logging
from fractions import Fraction

from ..models import EqConfig
from ..simd import CipherVec, PlainVec, add_plain, mul, mul_scalar, negate, square, sub

logger = logging.getLogger(__name__)


def smoothstep(t: CipherVec) -> CipherVec:
    """One sharpening round ``t^2 (3 - 2t)``; fixes 0 and 1, two levels deep."""
    linear = add_plain(mul_scalar(t, -2), 3)
    return mul(square(t), linear)


def eq_approx(
    x: CipherVec, y: CipherVec | PlainVec | int | float | Fraction, cfg: EqConfig | None = None
) -> CipherVec:
    """Slot-wise ``Eq(x, y)`` for integer inputs in ``[cfg.domain_bound]``.

    ``t = 1 - ((x - y) / n)^2`` is raised to ``2^r`` by repeated squaring so
    that any distance of at least ``alpha`` falls below 1/4, then sharpened.
    The result is exactly 1 where ``x == y`` in Exact mode.

    Parameters
    ----------
    x : CipherVec
        Encrypted integers.
    y : CipherVec, PlainVec or number
        Value to compare against, encrypted or plain.
    cfg : EqConfig, optional
        Domain bound, squarings and sharpening rounds.

    Returns
    -------
    CipherVec
        Close to 1 where the slots are equal and close to 0 elsewhere.
    """
    cfg = cfg or EqConfig()
    if isinstance(y, CipherVec):
        diff = sub(x, y)
    elif isinstance(y, PlainVec):
        diff = add_plain(x, PlainVec(y.context, -y.re, -y.im))
    else:
        diff = add_plain(x, -Fraction(y) if isinstance(y, int) else -y)

    scaled = mul_scalar(diff, Fraction(1, cfg.domain_bound))
    t = add_plain(negate(square(scaled)), 1)
    for _ in range(cfg.squarings):
        t = square(t)
    for _ in range(cfg.sharpen_iters):
        t = smoothstep(t)
    return t


def zero_test(s: CipherVec, bound: int, iterations: int) -> CipherVec:
    """``(1 - s / bound)^(2^iterations)`` for integer ``s`` in ``[0, bound]``.

    Exactly 1 at ``s = 0`` and at most ``(1 - 1/bound)^(2^iterations)`` for ``s >= 1``.
    """
    if bound < 1:
        raise ValueError("bound must be positive")
    if iterations < 0:
        raise ValueError("iterations must be non-negative")
    t = add_plain(mul_scalar(s, Fraction(-1, bound)), 1)
    for _ in range(iterations):
        t = square(t)
    return t


def zero_test_bound(bound: int, iterations: int) -> float:
    return float((1.0 - 1.0 / bound) ** (2**iterations))
