"""Bit-vector equality circuits and arithmetic boolean gates."""

from __future__ import annotations

import logging
from collections.abc import Sequence

import numpy as np

from ..simd import (
    CipherVec,
    HeContext,
    add,
    add_plain,
    conjugate,
    mul,
    negate,
    product_tree,
    square,
    sub,
    sum_all,
)
from ._eq import zero_test

logger = logging.getLogger(__name__)


def gate_and(a: CipherVec, b: CipherVec) -> CipherVec:
    return mul(a, b)


def gate_or(a: CipherVec, b: CipherVec) -> CipherVec:
    """``a + b - ab``."""
    return sub(add(a, b), mul(a, b))


def gate_xor(a: CipherVec, b: CipherVec) -> CipherVec:
    """``(a - b)^2``."""
    return square(sub(a, b))


def gate_xnor(a: CipherVec, b: CipherVec) -> CipherVec:
    """``1 - (a - b)^2``."""
    return add_plain(negate(gate_xor(a, b)), 1)


def _check_pair(a: Sequence[CipherVec], b: Sequence[CipherVec]) -> None:
    if len(a) != len(b):
        raise ValueError(f"Bit vectors differ in length: {len(a)} and {len(b)}")
    if not a:
        raise ValueError("Bit vectors must not be empty")


def bitvec_equal(a: Sequence[CipherVec], b: Sequence[CipherVec]) -> CipherVec:
    """AND over per-bit XNORs: ``2n - 1`` multiplications, depth ``ceil(log2 n) + 1``."""
    _check_pair(a, b)
    return product_tree([gate_xnor(x, y) for x, y in zip(a, b)])


def bitvec_equal_xorsum(
    a: Sequence[CipherVec], b: Sequence[CipherVec], zt_iters: int | None = None
) -> CipherVec:
    """Zero test on the number of differing bits: ``n + zt_iters`` multiplications."""
    _check_pair(a, b)
    n = len(a)
    iters = default_zero_test_iters(n) if zt_iters is None else zt_iters
    s = sum_all([gate_xor(x, y) for x, y in zip(a, b)])
    return zero_test(s, n, iters)


def pack_bit_pairs(
    context: HeContext, bits: Sequence[Sequence[int]] | np.ndarray
) -> list[CipherVec]:
    """Encrypt bit lanes pairwise as complex slots ``a[2i] + 1j * a[2i + 1]``.

    ``bits`` has one row per bit position and one column per sample.
    """
    rows = np.asarray(bits, dtype=int)
    if rows.ndim != 2:
        raise ValueError("bits must be a 2-D array (bit position x sample)")
    if len(rows) % 2:
        raise ValueError(f"Complex pair packing needs an even bit width, got {len(rows)}")
    return [
        context.encrypt(rows[2 * i] + 1j * rows[2 * i + 1]) for i in range(len(rows) // 2)
    ]


def bitvec_equal_complex(
    a: Sequence[CipherVec], b: Sequence[CipherVec], zt_iters: int | None = None
) -> CipherVec:
    """Equality on pair-packed bits: ``n/2`` products with conjugates, then a zero test.

    Each pair difference is one of ``0, +-1, +-1j, +-1 +-1j`` so its squared
    norm lies in ``{0, 1, 2}`` and the sum stays within ``[0, n]``.
    """
    _check_pair(a, b)
    n = 2 * len(a)
    iters = default_zero_test_iters(n) if zt_iters is None else zt_iters
    norms = []
    for x, y in zip(a, b):
        d = sub(x, y)
        norms.append(mul(d, conjugate(d)))
    return zero_test(sum_all(norms), n, iters)


def default_zero_test_iters(n: int) -> int:
    """``ceil(log2 n) + 3`` squarings, so one differing bit leaves at most ``e^-8``."""
    return max(1, (n - 1).bit_length()) + 3
