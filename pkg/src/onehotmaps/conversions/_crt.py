"""Conversions between CRT submaps, hierarchical CRT trees and one-hot maps."""

from __future__ import annotations

import logging
import math
from collections.abc import Sequence

from ..exceptions import CrtBasisError, RepresentationError, ShapeError
from ..models import Conversion, CostLedger
from ..representations import CrtBasis, HierBasis, HierNode
from ..simd import CipherVec, product_tree, pt_mul, rotate, rotate_and_sum, sum_all

logger = logging.getLogger(__name__)


def _coprime(moduli: Sequence[int]) -> None:
    for i, p in enumerate(moduli):
        for q in moduli[i + 1 :]:
            if math.gcd(p, q) != 1:
                raise CrtBasisError(f"Moduli {p} and {q} are not coprime", tuple(moduli))


def _combine(submaps: Sequence[Sequence[CipherVec]], length: int) -> list[CipherVec]:
    moduli = [len(s) for s in submaps]
    return [
        product_tree([sub[i % q] for sub, q in zip(submaps, moduli)]) for i in range(length)
    ]


def crt_to_one_hot(
    submaps: Sequence[Sequence[CipherVec]], *, length: int | None = None
) -> Conversion:
    """Combine CRT one-hot submaps (lanes) into a one-hot map of length ``m``.

    Submap ``j`` is duplicated cyclically by reference, so output ``i`` is the
    balanced product of ``submaps[j][i mod n_j]``: ``m (k - 1)`` products at
    depth ``ceil(log2 k)``. ``length`` computes only the first outputs.

    Parameters
    ----------
    submaps : sequence of sequence of CipherVec
        One lane list per modulus; submap ``j`` has ``n_j`` lanes.
    length : int, optional
        Number of leading outputs to compute, at most ``m``.

    Returns
    -------
    Conversion
        ``length`` lanes with the measured ledger.
    """
    if not submaps or any(len(s) < 1 for s in submaps):
        raise RepresentationError("Every submap needs at least one lane")
    moduli = [len(s) for s in submaps]
    _coprime(moduli)
    m = math.prod(moduli)
    length = m if length is None else length
    if not 1 <= length <= m:
        raise ValueError(f"length must lie in [1, {m}], got {length}")

    ctx = submaps[0][0].context
    with ctx.measure() as cost:
        lanes = _combine(submaps, length)
    return Conversion(tuple(lanes), cost, cost.ct_mults)


def duplicate(sub: CipherVec, size: int, m: int) -> CipherVec:
    """Tile the first ``size`` slots of ``sub`` across ``m`` slots (rotations and adds)."""
    if m % size:
        raise ShapeError(f"{size} does not divide {m}")
    if m > sub.context.slot_count:
        raise ShapeError(f"m={m} exceeds {sub.context.slot_count} slots")
    parts = [sub] + [rotate(sub, -t * size) for t in range(1, m // size)]
    return sum_all(parts)


def crt_to_one_hot_packed(submaps: Sequence[CipherVec], moduli: Sequence[int]) -> Conversion:
    """Packed variant: each submap occupies the first ``n_j`` slots of one ciphertext.

    Submaps are tiled across ``m`` slots with :func:`duplicate` before the
    product; the output holds the one-hot map in slots ``[0, m)``.

    Parameters
    ----------
    submaps : sequence of CipherVec
        One ciphertext per modulus.
    moduli : sequence of int
        Pairwise coprime moduli, in the order of ``submaps``.

    Returns
    -------
    Conversion
        A single ciphertext; its cost is ``m`` times the ciphertext products.
    """
    if len(submaps) != len(moduli):
        raise ValueError("One ciphertext per modulus is required")
    _coprime(moduli)
    m = math.prod(moduli)
    ctx = submaps[0].context
    with ctx.measure() as cost:
        duplicated = [duplicate(sub, q, m) for sub, q in zip(submaps, moduli)]
        out = product_tree(duplicated)
    return Conversion(out, cost, m * cost.ct_mults)


def hier_crt_to_one_hot(
    leaf_maps: Sequence[Sequence[CipherVec]], basis: HierBasis
) -> Conversion:
    """Rebuild the root one-hot map bottom-up from the leaf submaps.

    Every internal node combines its two child maps like a two-modulus CRT
    and keeps only its first ``q`` outputs, ``q`` being the node modulus.

    Works on lanes only. There is no packed variant: truncating a node to its
    first ``q`` slots needs a mask and a re-tiling per level, so packed
    sweeps leave this representation out.

    Parameters
    ----------
    leaf_maps : sequence of sequence of CipherVec
        Lane lists of the leaves, in ``basis.leaves()`` order.
    basis : HierBasis
        The modulus tree the leaves were encoded with.

    Returns
    -------
    Conversion
        ``n`` root lanes, with one ``level-<d>`` stage ledger per tree level.
    """
    leaves = basis.leaves()
    if len(leaf_maps) != len(leaves):
        raise RepresentationError(f"Expected {len(leaves)} leaf maps, got {len(leaf_maps)}")
    for maps, (path, q) in zip(leaf_maps, leaves):
        if len(maps) != q:
            raise RepresentationError(
                f"Leaf {''.join(map(str, path))} has {len(maps)} lanes, expected {q}"
            )

    supply = iter(leaf_maps)
    ctx = leaf_maps[0][0].context
    stages: dict[str, CostLedger] = {}

    def build(node: HierNode, level: int) -> list[CipherVec]:
        if node.children is None:
            return list(next(supply))
        left, right = (build(child, level + 1) for child in node.children)
        with ctx.measure() as cost:
            combined = _combine([left, right], node.modulus)
        key = f"level-{level}"
        stages[key] = stages.get(key, CostLedger()) + cost
        return combined

    with ctx.measure() as total:
        root = build(basis.root, 0)
    return Conversion(tuple(root), total, total.ct_mults, stages)


def one_hot_to_crt(o: CipherVec, basis: CrtBasis) -> Conversion:
    """Numeric residues ``a mod p_k`` from a packed one-hot map over ``m`` slots.

    Each residue is one dot product with the plaintext mask ``i mod p_k``,
    summed into every slot.
    """
    ctx = o.context
    m = basis.m
    if m > ctx.slot_count:
        raise ShapeError(f"m={m} exceeds {ctx.slot_count} slots")
    with ctx.measure() as cost:
        residues = tuple(
            rotate_and_sum(pt_mul(ctx.encode([i % q for i in range(m)]), o), ctx.slot_count)
            for q in basis.moduli
        )
    return Conversion(residues, cost, m * cost.pt_mults)


def one_hot_to_crt_lanes(o: Sequence[CipherVec], basis: CrtBasis) -> Conversion:
    """Lane variant of :func:`one_hot_to_crt`: ``m`` scalar products per modulus."""
    if len(o) != basis.m:
        raise ShapeError(f"One-hot has {len(o)} lanes, basis covers {basis.m}")
    ctx = o[0].context
    with ctx.measure() as cost:
        residues = []
        for q in basis.moduli:
            weighted = [pt_mul(ctx.constant(i % q), lane) for i, lane in enumerate(o) if i % q]
            residues.append(sum_all(weighted) if weighted else _zero_like(o[0]))
    return Conversion(tuple(residues), cost, cost.pt_mults)


def _zero_like(ct: CipherVec) -> CipherVec:
    return ct.context.encrypt(0)

