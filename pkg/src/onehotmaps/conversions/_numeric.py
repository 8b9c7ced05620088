"""Numeric to one-hot conversions: Lagrange product trees and the Eq sweep."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Literal

from ..comparators._eq import eq_approx
from ..models import Conversion, CostLedger, EqConfig
from ..simd import CipherVec, add_plain, mul, mul_scalar
from ._lagrange import ShadowTree, build_shadow_tree, lagrange_denominators

logger = logging.getLogger(__name__)

PathOrder = Literal["leaf-to-root", "root-to-leaf"]


def padded_size(n: int) -> int:
    """Next power of two at or above ``n``."""
    if n < 2:
        raise ValueError(f"n must be at least 2, got {n}")
    return 1 << (n - 1).bit_length()


@dataclass(frozen=True)
class ProductTree:
    """Balanced tree over the leaves ``x - c``; ``levels[h]`` holds the nodes at height ``h``.

    With a shadow tree every node value is multiplied by its constants, so a
    node holds its raw product times the cumulative constant of its subtree.
    """

    levels: tuple[tuple[CipherVec, ...], ...]
    shadow: ShadowTree | None = None

    @property
    def height(self) -> int:
        return len(self.levels) - 1

    @property
    def node_count(self) -> int:
        return sum(len(level) for level in self.levels[1:])

    def sibling(self, height: int, index: int) -> CipherVec:
        return self.levels[height][index ^ 1]


def _rescale(value: CipherVec, constant: Fraction) -> CipherVec:
    return mul_scalar(value, constant)


def build_product_tree(
    x: CipherVec, n: int, shadow: ShadowTree | None = None, *, include_root: bool = False
) -> ProductTree:
    """Leaves ``x - c`` for ``c`` in ``[n]`` and their pairwise products up the tree.

    The root is only built with ``include_root``; neither conversion needs it.
    Shadow constants below one scale the left child before the product, larger
    ones scale the product, which keeps intermediate magnitudes at the smaller side.
    """
    if n < 2 or n & (n - 1):
        raise ValueError(f"n must be a power of two >= 2, got {n}")
    if shadow is not None and shadow.n != n:
        raise ValueError(f"Shadow tree is for n={shadow.n}, not {n}")

    leaves = [add_plain(x, -c) for c in range(n)]
    if shadow is not None:
        leaves = [_rescale(leaf, shadow.constants[0][c]) for c, leaf in enumerate(leaves)]
    levels: list[tuple[CipherVec, ...]] = [tuple(leaves)]

    top = n.bit_length() - 1
    last = top if include_root else top - 1
    for h in range(1, last + 1):
        below = levels[-1]
        nodes = []
        for i in range(len(below) // 2):
            left, right = below[2 * i], below[2 * i + 1]
            if shadow is None or h >= shadow.levels:
                nodes.append(mul(left, right))
                continue
            constant = shadow.constants[h][i]
            if abs(constant) < 1:
                nodes.append(mul(_rescale(left, constant), right))
            else:
                nodes.append(_rescale(mul(left, right), constant))
        levels.append(tuple(nodes))
    return ProductTree(tuple(levels), shadow)


def _prepare(x: CipherVec, n: int, use_shadow: bool) -> tuple[int, ShadowTree | None]:
    size = padded_size(n)
    if size != n:
        logger.debug("Padding n=%d to %d dummy classes", n, size)
    return size, build_shadow_tree(size) if use_shadow else None


def numeric_to_one_hot_alg1(
    x: CipherVec,
    n: int,
    *,
    shadow: bool = False,
    path_order: PathOrder = "leaf-to-root",
) -> Conversion:
    """One-hot lanes for the class index held in ``x`` (values in ``[n]``).

    For every leaf the sibling values along its path are multiplied together
    (``n (log n - 1)`` products after the tree is built). Without a shadow
    tree each path product is divided by ``S[c]`` at the end. ``path_order``
    switches the fold direction: leaf-to-root keeps the ciphertext depth at
    ``log n``.

    Parameters
    ----------
    x : CipherVec
        Ciphertext holding the class index in every slot of interest.
    n : int
        Number of classes. Padded to the next power of two internally.
    shadow : bool
        Scale the tree with shadow constants instead of dividing at the end.
    path_order : str
        ``"leaf-to-root"`` or ``"root-to-leaf"``.

    Returns
    -------
    Conversion
        ``n`` lanes with ``tree`` and ``paths`` stage ledgers.
    """
    ctx = x.context
    size, tree_constants = _prepare(x, n, shadow)
    denominators = lagrange_denominators(size)
    stages: dict[str, CostLedger] = {}

    with ctx.measure() as total:
        with ctx.measure() as build:
            tree = build_product_tree(x, size, tree_constants)
        stages["tree"] = build

        with ctx.measure() as paths:
            lanes = []
            for c in range(n):
                siblings = [tree.sibling(h, c >> h) for h in range(tree.height + 1)]
                if path_order == "root-to-leaf":
                    siblings.reverse()
                elif path_order != "leaf-to-root":
                    raise ValueError(f"Unknown path order {path_order!r}")
                acc = siblings[0]
                for value in siblings[1:]:
                    acc = mul(acc, value)
                if tree_constants is None:
                    acc = _rescale(acc, 1 / denominators[c])
                lanes.append(acc)
        stages["paths"] = paths

    return Conversion(tuple(lanes), total, total.mults, stages)


def numeric_to_one_hot_alg2(x: CipherVec, n: int, *, shadow: bool = False) -> Conversion:
    """One-hot lanes via the complementary tree.

    The complementary tree starts at 1 on the root; each node is its parent's
    value times the sibling of the matching node in the product tree, so its
    leaves are the path products of the first algorithm for about ``2n``
    multiplications at twice the depth.
    """
    ctx = x.context
    size, tree_constants = _prepare(x, n, shadow)
    denominators = lagrange_denominators(size)
    stages: dict[str, CostLedger] = {}

    with ctx.measure() as total:
        with ctx.measure() as build:
            tree = build_product_tree(x, size, tree_constants)
        stages["tree"] = build

        with ctx.measure() as paths:
            top = tree.height + 1
            # depth 1 below the root: the parent is 1, so the node is the sibling itself
            current = [tree.sibling(top - 1, j) for j in range(2)]
            for d in range(2, top + 1):
                h = top - d
                width = 1 << d
                needed = range(min(width, ((n - 1) >> h) + 1))
                current = [mul(current[j >> 1], tree.sibling(h, j)) for j in needed]
            lanes = current[:n]
            if tree_constants is None:
                lanes = [_rescale(v, 1 / denominators[c]) for c, v in enumerate(lanes)]
        stages["paths"] = paths

    return Conversion(tuple(lanes), total, total.mults, stages)


def numeric_to_one_hot_naive(x: CipherVec, n: int, cfg: EqConfig | None = None) -> Conversion:
    """One Eq evaluation per class: ``o[c] = Eq(x, c)``.

    Parameters
    ----------
    x : CipherVec
        Ciphertext holding the class index.
    n : int
        Number of classes.
    cfg : EqConfig, optional
        Comparator settings; the domain bound must cover ``n``.

    Returns
    -------
    Conversion
        ``n`` approximate lanes. A warning is logged when the predicted
        error is above ``cfg.beta``.
    """
    cfg = cfg or EqConfig(domain_bound=n)
    if cfg.domain_bound < n:
        raise ValueError(f"Eq domain {cfg.domain_bound} is smaller than n={n}")
    ctx = x.context
    with ctx.measure() as total:
        lanes = tuple(eq_approx(x, c, cfg) for c in range(n))
    predicted = cfg.predicted_error()
    if predicted > cfg.beta:
        logger.warning(
            "Eq precision %.3g is above the requested tolerance %.3g", predicted, cfg.beta
        )
    return Conversion(lanes, total, total.mults)
