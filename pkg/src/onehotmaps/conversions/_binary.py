"""Binary bit vectors to one-hot maps and back."""

from __future__ import annotations

import logging
from collections.abc import Sequence

from ..exceptions import ShapeError
from ..models import Conversion
from ..representations import binary_width
from ..simd import CipherVec, add_plain, negate, product_tree, pt_mul, rotate_and_sum, sum_all

logger = logging.getLogger(__name__)


def bit_masks(n: int) -> list[list[int]]:
    """``w_i[x]`` = bit ``i`` of ``x`` for ``x`` in ``[n]``."""
    return [[(x >> i) & 1 for x in range(n)] for i in range(binary_width(n))]


def binary_selectors(bits: Sequence[CipherVec], n: int) -> list[CipherVec]:
    """``1 - w_i + a[i] (2 w_i - 1)`` per bit, one plaintext product each.

    Each ``bits[i]`` holds its bit in every slot; slot ``x`` of selector ``i``
    is 1 exactly when bit ``i`` of ``x`` matches ``a[i]``.
    """
    if n < 2 or n & (n - 1):
        raise ValueError(f"n must be a power of two >= 2, got {n}")
    masks = bit_masks(n)
    if len(bits) != len(masks):
        raise ValueError(f"Expected {len(masks)} bits for n={n}, got {len(bits)}")
    ctx = bits[0].context
    if n > ctx.slot_count:
        raise ShapeError(f"n={n} exceeds {ctx.slot_count} slots")
    selectors = []
    for bit, w in zip(bits, masks):
        signed = pt_mul(ctx.encode([2 * v - 1 for v in w]), bit)
        selectors.append(add_plain(signed, ctx.encode([1 - v for v in w])))
    return selectors


def binary_to_one_hot(bits: Sequence[CipherVec], n: int) -> Conversion:
    """Packed one-hot map in slots ``[0, n)`` from replicated bit ciphertexts.

    ``log2 n`` plaintext products and ``log2 n - 1`` ciphertext products.
    """
    ctx = bits[0].context if bits else None
    if ctx is None:
        raise ValueError("At least one bit is required")
    with ctx.measure() as cost:
        out = product_tree(binary_selectors(bits, n))
    return Conversion(out, cost, n * cost.mults)


def binary_to_one_hot_lanes(bits: Sequence[CipherVec], n: int) -> Conversion:
    """One-hot lanes from bit lanes (least-significant first) for any ``n >= 2``.

    Every output ``x`` is the balanced product of ``a[i]`` or ``1 - a[i]``
    as bit ``i`` of ``x`` dictates: ``n (ceil(log2 n) - 1)`` products.

    Parameters
    ----------
    bits : sequence of CipherVec
        ``ceil(log2 n)`` bit lanes, least-significant first.
    n : int
        Number of classes.

    Returns
    -------
    Conversion
        ``n`` lanes. Exact for 0/1 inputs.
    """
    width = binary_width(n)
    if len(bits) != width:
        raise ValueError(f"Expected {width} bits for n={n}, got {len(bits)}")
    ctx = bits[0].context
    with ctx.measure() as cost:
        complements = [add_plain(negate(b), 1) for b in bits]
        lanes = tuple(
            product_tree([bits[i] if (x >> i) & 1 else complements[i] for i in range(width)])
            for x in range(n)
        )
    return Conversion(lanes, cost, cost.mults)


def one_hot_to_binary(o: CipherVec, n: int) -> Conversion:
    """Bits of a packed one-hot map, each replicated across all slots.

    Bit ``k`` is the dot product with the mask ``bit k of i``. A mask of
    ``i mod 2^(k+1)`` would return residues rather than bits.
    """
    ctx = o.context
    if n > ctx.slot_count:
        raise ShapeError(f"n={n} exceeds {ctx.slot_count} slots")
    with ctx.measure() as cost:
        bits = tuple(
            rotate_and_sum(pt_mul(ctx.encode(mask), o), ctx.slot_count) for mask in bit_masks(n)
        )
    return Conversion(bits, cost, n * cost.pt_mults)


def one_hot_to_binary_lanes(o: Sequence[CipherVec]) -> Conversion:
    """Bit lanes of one-hot lanes: bit ``k`` sums the lanes whose index has bit ``k`` set."""
    n = len(o)
    ctx = o[0].context
    with ctx.measure() as cost:
        bits = []
        for mask in bit_masks(n):
            chosen = [lane for lane, w in zip(o, mask) if w]
            bits.append(sum_all(chosen) if chosen else ctx.encrypt(0))
    return Conversion(tuple(bits), cost, 0)
