"""One-hot maps to numeric values and to greater maps."""

from __future__ import annotations

import logging
from collections.abc import Sequence
from fractions import Fraction
from typing import Union

from ..exceptions import ShapeError
from ..models import Conversion, Orientation
from ..simd import (
    CipherVec,
    PlainVec,
    add,
    mul,
    mul_scalar,
    pt_mul,
    rotate,
    rotate_and_sum,
    sum_all,
)

logger = logging.getLogger(__name__)

ClassValues = Union[Sequence[Union[int, float, Fraction]], Sequence[CipherVec]]


def one_hot_to_numeric(o: Sequence[CipherVec], classes: ClassValues) -> Conversion:
    """Inner product of one-hot lanes with plaintext or encrypted class values.

    ``n`` products at depth 1 (plaintext products are reported with
    ``ct_depth`` 0 as well).

    Parameters
    ----------
    o : sequence of CipherVec
        One-hot lanes.
    classes : sequence
        Plaintext numbers or ciphertexts, one per lane.

    Returns
    -------
    Conversion
        A single ciphertext holding the selected class value.
    """
    if len(o) != len(classes):
        raise ShapeError(f"{len(o)} lanes but {len(classes)} classes")
    ctx = o[0].context
    with ctx.measure() as cost:
        terms = [
            mul(lane, c) if isinstance(c, CipherVec) else mul_scalar(lane, c)
            for lane, c in zip(o, classes)
        ]
        out = sum_all(terms)
    return Conversion(out, cost, cost.mults)


def one_hot_to_numeric_packed(o: CipherVec, classes: PlainVec | CipherVec, n: int) -> Conversion:
    """Packed inner product: one slot-wise product and a rotate-and-sum into slot 0."""
    ctx = o.context
    if n > ctx.slot_count:
        raise ShapeError(f"n={n} exceeds {ctx.slot_count} slots")
    window = 1 << max(0, (n - 1).bit_length())
    with ctx.measure() as cost:
        product = mul(o, classes) if isinstance(classes, CipherVec) else pt_mul(classes, o)
        out = rotate_and_sum(product, window)
    return Conversion(out, cost, n * cost.mults)


def greater_map_from_one_hot(
    o: Sequence[CipherVec],
    *,
    inclusive: bool = True,
    orientation: Orientation | str = Orientation.GREATER,
) -> Conversion:
    """Prefix sums of one-hot lanes: ``n - 1`` additions, no products.

    The inclusive greater form has ``g[j] = 1`` for ``j >= a``; the strict
    form (``j > a``) shifts it by one lane. The less-than orientation uses
    suffix sums instead.

    Parameters
    ----------
    o : sequence of CipherVec
        One-hot lanes.
    inclusive : bool
        Whether lane ``a`` itself is set.
    orientation : Orientation or str
        ``greater`` sets lanes above ``a``, ``less`` the lanes below it.

    Returns
    -------
    Conversion
        ``n`` lanes at the depth of the input.
    """
    orientation = Orientation(orientation)
    n = len(o)
    ctx = o[0].context
    lanes = list(o) if orientation is Orientation.GREATER else list(reversed(o))
    with ctx.measure() as cost:
        prefix = [lanes[0]]
        for lane in lanes[1:]:
            prefix.append(add(prefix[-1], lane))
        if not inclusive:
            prefix = [ctx.encrypt(0)] + prefix[: n - 1]
    if orientation is Orientation.LESS:
        prefix.reverse()
    return Conversion(tuple(prefix), cost, 0)


def greater_map_from_one_hot_packed(o: CipherVec, n: int) -> Conversion:
    """Inclusive prefix sums of a packed one-hot map with ``log2 n`` rotations.

    Needs ``2n <= slot_count`` so the wrapped-in slots are zero. Slots from
    ``n`` on are left unspecified.
    """
    ctx = o.context
    if 2 * n > ctx.slot_count:
        raise ShapeError(f"Packed prefix sums need {2 * n} slots, have {ctx.slot_count}")
    with ctx.measure() as cost:
        acc = o
        step = 1
        while step < n:
            acc = add(acc, rotate(acc, -step))
            step *= 2
    return Conversion(acc, cost, 0)
