"""Hierarchical CRT modulus trees built from consecutive coprime pairs."""

from __future__ import annotations

import logging
import math
from collections.abc import Iterator
from dataclasses import dataclass, field

from ..exceptions import RepresentationError
from ..models import SplitRule
from ._crt import crt_combine

logger = logging.getLogger(__name__)

Path = tuple[int, ...]


def split_modulus(q: int, rule: SplitRule = SplitRule.CEIL_SQRT) -> tuple[int, int]:
    """Child moduli ``(p, p + 1)`` for a node with modulus ``q``.

    >>> split_modulus(10000)
    (100, 101)
    >>> split_modulus(101)
    (11, 12)
    >>> split_modulus(10, SplitRule.TIGHT)
    (3, 4)
    """
    if rule is SplitRule.CEIL_SQRT:
        p = math.isqrt(q - 1) + 1 if q > 1 else 1
    else:
        p = math.isqrt(q)
        while p * (p + 1) < q:
            p += 1
        while p > 1 and (p - 1) * p >= q:
            p -= 1
    if p < 2 or p + 1 >= q:
        raise RepresentationError(f"Modulus {q} is too small to split")
    return p, p + 1


@dataclass(frozen=True)
class HierNode:
    """A node of the modulus tree; leaves have no children."""

    modulus: int
    children: tuple[HierNode, HierNode] | None = None

    @property
    def is_leaf(self) -> bool:
        return self.children is None


@dataclass(frozen=True)
class HierBasis:
    """A hierarchical CRT modulus tree for ``[n]``."""

    n: int
    root: HierNode
    split: SplitRule = SplitRule.CEIL_SQRT

    def walk(self) -> Iterator[tuple[Path, HierNode]]:
        """Pre-order traversal; paths use 1 and 2 for left and right children."""
        stack: list[tuple[Path, HierNode]] = [((), self.root)]
        while stack:
            path, node = stack.pop()
            yield path, node
            if node.children is not None:
                left, right = node.children
                stack.append((path + (2,), right))
                stack.append((path + (1,), left))

    def leaves(self) -> list[tuple[Path, int]]:
        return [(path, node.modulus) for path, node in self.walk() if node.is_leaf]

    @property
    def depth(self) -> int:
        return max(len(path) for path, _ in self.leaves())

    @property
    def slot_cost(self) -> int:
        """Slots uploaded for the leaf-level one-hot submaps."""
        return sum(q for _, q in self.leaves())

    @property
    def leaf_count(self) -> int:
        return len(self.leaves())

    def level_slot_costs(self) -> list[int]:
        """Slot cost of sending the frontier at each level, from level 1 down."""
        costs = []
        for level in range(1, self.depth + 1):
            costs.append(
                sum(
                    node.modulus
                    for path, node in self.walk()
                    if len(path) == level or (node.is_leaf and 0 < len(path) < level)
                )
            )
        return costs


def _grow(q: int, levels: int | None, leaf_limit: int | None, rule: SplitRule) -> HierNode:
    done = levels == 0 if levels is not None else q <= (leaf_limit or 0)
    if done:
        return HierNode(q)
    p1, p2 = split_modulus(q, rule)
    nxt = None if levels is None else levels - 1
    return HierNode(q, (_grow(p1, nxt, leaf_limit, rule), _grow(p2, nxt, leaf_limit, rule)))


def build_hier_basis(
    n: int,
    levels: int | None = None,
    *,
    leaf_limit: int | None = None,
    split: SplitRule | str = SplitRule.CEIL_SQRT,
) -> HierBasis:
    """Build the modulus tree for ``[n]``.

    Either split a fixed number of ``levels`` everywhere, or keep splitting
    until every leaf modulus is at most ``leaf_limit``.

    Parameters
    ----------
    n : int
        Root modulus, at least 4.
    levels : int, optional
        Depth of the tree below the root.
    leaf_limit : int, optional
        Largest allowed leaf modulus, used when ``levels`` is omitted.
    split : SplitRule or str
        How a node modulus is divided between its two children.

    Returns
    -------
    HierBasis
        The tree, with coprime children whose product covers their parent.
    """
    rule = SplitRule(split)
    if levels is None and leaf_limit is None:
        raise ValueError("Give levels or leaf_limit")
    if levels is not None and levels < 1:
        raise ValueError(f"levels must be at least 1, got {levels}")
    if leaf_limit is not None and leaf_limit < 3:
        raise ValueError("leaf_limit must be at least 3")
    if n < 4:
        raise ValueError(f"n must be at least 4, got {n}")
    root = _grow(n, levels, leaf_limit, rule)
    if root.is_leaf:
        raise ValueError(f"leaf_limit {leaf_limit} leaves n={n} unsplit")
    basis = HierBasis(n, root, rule)
    logger.debug("Hierarchical basis for n=%d: level costs %s", n, basis.level_slot_costs())
    return basis


@dataclass(frozen=True)
class HierCrtRep:
    """Residues of one value at every node of a modulus tree."""

    basis: HierBasis
    residues: dict[Path, int] = field(hash=False)

    def leaf_residues(self) -> list[int]:
        return [self.residues[path] for path, _ in self.basis.leaves()]

    def leaf_maps(self) -> list[tuple[int, ...]]:
        """One-hot submaps of the leaves in tree order."""
        return [
            tuple(int(i == self.residues[path]) for i in range(q))
            for path, q in self.basis.leaves()
        ]

    @staticmethod
    def label(path: Path) -> str:
        return "".join(str(step) for step in path)


def encode_hier(a: int, basis: HierBasis) -> HierCrtRep:
    """Compute residues top-down by repeated reduction (``a_22 = a_2 mod n_22``)."""
    if not 0 <= a < basis.n:
        raise RepresentationError(f"Value {a} outside [0, {basis.n})")
    residues: dict[Path, int] = {}
    stack: list[tuple[Path, HierNode, int]] = [((), basis.root, a)]
    while stack:
        path, node, value = stack.pop()
        residue = value % node.modulus
        residues[path] = residue
        if node.children is not None:
            for step, child in enumerate(node.children, start=1):
                stack.append((path + (step,), child, residue))
    return HierCrtRep(basis, residues)


def decode_hier(basis: HierBasis, leaf_residues: list[int]) -> int:
    """Recombine leaf residues bottom-up into the root value."""
    leaves = basis.leaves()
    if len(leaf_residues) != len(leaves):
        raise RepresentationError(
            f"Expected {len(leaves)} leaf residues, got {len(leaf_residues)}"
        )
    known = {path: r for (path, _), r in zip(leaves, leaf_residues)}

    def value(path: Path, node: HierNode) -> int:
        if node.children is None:
            return known[path]
        left, right = node.children
        combined = crt_combine(
            (left.modulus, right.modulus),
            (value(path + (1,), left), value(path + (2,), right)),
        )
        if combined >= node.modulus:
            raise RepresentationError(
                f"Inconsistent residues at node {HierCrtRep.label(path) or 'root'}"
            )
        return combined

    return value((), basis.root)
