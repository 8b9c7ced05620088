"""Greater-than and range comparison over one-hot and greater maps."""

from __future__ import annotations

import logging
from collections.abc import Sequence
from typing import Literal

from ..exceptions import ShapeError
from ..simd import CipherVec, add_plain, mul, mul_scalar, negate, sum_all

logger = logging.getLogger(__name__)

RangeMethod = Literal["maps", "mask"]


def ge_via_maps(g_a: Sequence[CipherVec], b: int | Sequence[CipherVec]) -> CipherVec:
    """1 where ``b > a``, given the strict greater map of ``a``.

    A plaintext ``b`` just selects ``g_a[b]`` at no cost. An encrypted one-hot
    ``b`` costs ``n`` multiplications at depth 1.
    """
    n = len(g_a)
    if isinstance(b, int):
        if not 0 <= b < n:
            raise ValueError(f"b={b} outside [0, {n})")
        return g_a[b]
    if len(b) != n:
        raise ShapeError(f"Greater map has {n} lanes, one-hot has {len(b)}")
    return sum_all([mul(o, g) for o, g in zip(b, g_a)])


def range_check(
    m: Sequence[CipherVec], a: int, b: int, *, method: RangeMethod = "maps"
) -> CipherVec:
    """1 where the one-hot value lies in ``[a, b]``.

    ``maps`` multiplies the prefix-sum tests ``x <= b`` and ``x >= a`` (one
    ciphertext product); ``mask`` takes one dot product with the plaintext
    interval indicator.

    Parameters
    ----------
    m : sequence of CipherVec
        One-hot lanes of the tested value.
    a, b : int
        Inclusive interval bounds inside ``[0, n)``.
    method : str
        ``"maps"`` or ``"mask"``.

    Returns
    -------
    CipherVec
        Exact 0/1 indicator.
    """
    n = len(m)
    if a > b:
        raise ValueError(f"Empty interval [{a}, {b}]")
    if a < 0 or b >= n:
        raise ValueError(f"Interval [{a}, {b}] outside [0, {n})")

    if method == "mask":
        return sum_all([mul_scalar(lane, int(a <= i <= b)) for i, lane in enumerate(m)])
    if method != "maps":
        raise ValueError(f"Unknown method {method!r}")

    at_most_b = sum_all(list(m[: b + 1]))
    if a == 0:
        return at_most_b
    below_a = sum_all(list(m[:a]))
    return mul(add_plain(negate(below_a), 1), at_most_b)
