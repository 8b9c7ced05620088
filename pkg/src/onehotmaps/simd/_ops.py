"""Slot-wise homomorphic operations with cost accounting."""

from __future__ import annotations

import logging
from fractions import Fraction

import numpy as np

from ._context import CipherVec, HeContext, PlainVec

logger = logging.getLogger(__name__)


def _context_of(*operands: CipherVec | PlainVec) -> HeContext:
    ctx = operands[0].context
    ctx.check(*operands)
    return ctx


def _as_plain(ctx: HeContext, value: PlainVec | complex | float | Fraction) -> PlainVec:
    if isinstance(value, PlainVec):
        ctx.check(value)
        return value
    return ctx.constant(value)


def add(a: CipherVec, b: CipherVec) -> CipherVec:
    ctx = _context_of(a, b)
    return ctx.emit(
        a.re + b.re,
        a.im + b.im,
        depth=max(a.depth, b.depth),
        ct_depth=max(a.ct_depth, b.ct_depth),
        operation="add",
        counter="adds",
    )


def sub(a: CipherVec, b: CipherVec) -> CipherVec:
    ctx = _context_of(a, b)
    return ctx.emit(
        a.re - b.re,
        a.im - b.im,
        depth=max(a.depth, b.depth),
        ct_depth=max(a.ct_depth, b.ct_depth),
        operation="sub",
        counter="adds",
    )


def add_plain(a: CipherVec, p: PlainVec | complex | float | Fraction) -> CipherVec:
    ctx = _context_of(a)
    plain = _as_plain(ctx, p)
    return ctx.emit(
        a.re + plain.re,
        a.im + plain.im,
        depth=a.depth,
        ct_depth=a.ct_depth,
        operation="add_plain",
        counter="adds",
    )


def negate(a: CipherVec) -> CipherVec:
    """Slot-wise negation. Not charged to the ledger."""
    ctx = _context_of(a)
    return ctx.emit(
        -a.re, -a.im, depth=a.depth, ct_depth=a.ct_depth, operation="negate", counter=None
    )


def mul(a: CipherVec, b: CipherVec) -> CipherVec:
    """Slot-wise ciphertext product.

    Parameters
    ----------
    a, b : CipherVec
        Operands from the same context.

    Returns
    -------
    CipherVec
        Product one level deeper than the deeper operand in both ``depth``
        and ``ct_depth``. Operands are bootstrapped first when the context
        allows it and the depth budget would be exceeded.
    """
    ctx = _context_of(a, b)
    a, b = ctx.make_room((a, b), max(a.depth, b.depth) + 1)
    return ctx.emit(
        a.re * b.re - a.im * b.im,
        a.re * b.im + a.im * b.re,
        depth=max(a.depth, b.depth) + 1,
        ct_depth=max(a.ct_depth, b.ct_depth) + 1,
        operation="mul",
        counter="ct_mults",
        noise=True,
    )


def square(a: CipherVec) -> CipherVec:
    return mul(a, a)


def pt_mul(p: PlainVec, a: CipherVec) -> CipherVec:
    """Plaintext-ciphertext product: one level of depth, ``ct_depth`` unchanged.

    Parameters
    ----------
    p : PlainVec
        Encoded plaintext such as a mask or class values.
    a : CipherVec
        Ciphertext operand.

    Returns
    -------
    CipherVec
        Product charged to ``pt_mults``.
    """
    ctx = _context_of(a, p)
    (a,) = ctx.make_room((a,), a.depth + 1)
    return ctx.emit(
        p.re * a.re - p.im * a.im,
        p.re * a.im + p.im * a.re,
        depth=a.depth + 1,
        ct_depth=a.ct_depth,
        operation="pt_mul",
        counter="pt_mults",
    )


def mul_scalar(a: CipherVec, value: complex | float | Fraction) -> CipherVec:
    return pt_mul(a.context.constant(value), a)


def rotate(a: CipherVec, k: int) -> CipherVec:
    """Cyclic left shift by ``k`` slots."""
    ctx = _context_of(a)
    shift = k % ctx.slot_count
    return ctx.emit(
        np.roll(a.re, -shift),
        np.roll(a.im, -shift),
        depth=a.depth,
        ct_depth=a.ct_depth,
        operation="rotate",
        counter="rotations",
    )


def conjugate(a: CipherVec) -> CipherVec:
    ctx = _context_of(a)
    return ctx.emit(
        a.re.copy(), -a.im, depth=a.depth, ct_depth=a.ct_depth,
        operation="conjugate", counter="conjugations",
    )


def rotate_and_sum(a: CipherVec, length: int, stride: int = 1) -> CipherVec:
    """Windowed cyclic sum: slot ``i`` receives ``a[i + j * stride]`` summed over ``j < length``.

    Uses ``log2(length)`` rotations and additions, so every slot holds the
    total when ``length`` equals the slot count and ``stride`` is 1.

    With a shorter window only the aligned block starts, slots
    ``b * length * stride + r`` with ``r < stride``, hold a clean block sum.
    The other slots mix in values from the next block and wrap around the end
    of the vector. Callers mask out everything except the block starts before
    using the result.

    Parameters
    ----------
    a : CipherVec
        Ciphertext to reduce.
    length : int
        Number of terms per window. A power of two no larger than the slot count.
    stride : int
        Distance in slots between consecutive terms.

    Returns
    -------
    CipherVec
        Ciphertext at the same depth as ``a``.
    """
    s = a.context.slot_count
    if length < 1 or length & (length - 1) or length > s:
        raise ValueError(f"length must be a power of two no larger than {s}, got {length}")
    if stride < 1 or stride * length > s:
        raise ValueError(f"stride {stride} with length {length} exceeds {s} slots")
    acc = a
    step = 1
    while step < length:
        acc = add(acc, rotate(acc, step * stride))
        step *= 2
    return acc


def bootstrap(a: CipherVec) -> CipherVec:
    return a.context.bootstrap(a)


def sum_all(values: list[CipherVec]) -> CipherVec:
    """Left fold of ``add``: ``len(values) - 1`` additions."""
    if not values:
        raise ValueError("sum_all needs at least one ciphertext")
    acc = values[0]
    for v in values[1:]:
        acc = add(acc, v)
    return acc


def product_tree(values: list[CipherVec]) -> CipherVec:
    """Balanced product: ``len(values) - 1`` multiplications, depth ``ceil(log2 len)``."""
    if not values:
        raise ValueError("product_tree needs at least one ciphertext")
    level = list(values)
    while len(level) > 1:
        nxt = [mul(level[i], level[i + 1]) for i in range(0, len(level) - 1, 2)]
        if len(level) % 2:
            nxt.append(level[-1])
        level = nxt
    return level[0]
