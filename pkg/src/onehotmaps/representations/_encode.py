"""Client-side encoders and plaintext decode oracles for the six representations."""

from __future__ import annotations

import json
import logging
from collections.abc import Hashable
from dataclasses import dataclass
from typing import Any, Union

from ..exceptions import RepresentationError
from ..models import Orientation, RepresentationKind
from ._classmap import ClassMap
from ._crt import CrtBasis, crt_combine, find_crt_basis
from ._hier import HierBasis, HierCrtRep, HierNode, build_hier_basis, decode_hier, encode_hier

logger = logging.getLogger(__name__)


def _check_bits(bits: tuple[int, ...]) -> None:
    if any(b not in (0, 1) for b in bits):
        raise RepresentationError("Map entries must be 0 or 1")


@dataclass(frozen=True)
class OneHotMap:
    bits: tuple[int, ...]

    def __post_init__(self) -> None:
        _check_bits(self.bits)
        if sum(self.bits) != 1:
            raise RepresentationError(f"A one-hot map has exactly one 1, got {sum(self.bits)}")

    @classmethod
    def of(cls, a: int, n: int) -> OneHotMap:
        if not 0 <= a < n:
            raise RepresentationError(f"Value {a} outside [0, {n})")
        return cls(tuple(int(i == a) for i in range(n)))

    @property
    def index(self) -> int:
        return self.bits.index(1)

    def __len__(self) -> int:
        return len(self.bits)


@dataclass(frozen=True)
class CrtRep:
    basis: CrtBasis
    submaps: tuple[OneHotMap, ...]

    def __post_init__(self) -> None:
        if tuple(len(s) for s in self.submaps) != self.basis.moduli:
            raise RepresentationError("Submap lengths do not match the basis")

    @property
    def residues(self) -> tuple[int, ...]:
        return tuple(s.index for s in self.submaps)


@dataclass(frozen=True)
class NumericResidues:
    """Residues sent as plain numbers, one slot each (flat or hierarchical leaves)."""

    moduli: tuple[int, ...]
    residues: tuple[int, ...]
    tree: HierBasis | None = None


@dataclass(frozen=True)
class BinaryRep:
    """Bits of ``a``, least-significant first."""

    bits: tuple[int, ...]
    n: int

    def __post_init__(self) -> None:
        _check_bits(self.bits)
        if self.value >= self.n:
            raise RepresentationError(f"Bits encode {self.value}, outside [0, {self.n})")

    @property
    def value(self) -> int:
        return sum(b << i for i, b in enumerate(self.bits))


@dataclass(frozen=True)
class GreaterMap:
    """Step map: ones strictly above ``a`` (greater) or strictly below (less)."""

    bits: tuple[int, ...]
    orientation: Orientation = Orientation.GREATER

    def __post_init__(self) -> None:
        _check_bits(self.bits)
        ordered = self.bits if self.orientation is Orientation.GREATER else self.bits[::-1]
        if list(ordered) != sorted(ordered):
            raise RepresentationError("Map is not a step pattern")
        if ordered and ordered[0] == 1:
            raise RepresentationError("A greater map never marks its own index")

    @property
    def threshold(self) -> int:
        """The encoded ``a``."""
        if self.orientation is Orientation.GREATER:
            return len(self.bits) - 1 - sum(self.bits)
        return sum(self.bits)


Representation = Union[OneHotMap, int, CrtRep, HierCrtRep, NumericResidues, BinaryRep]


def binary_width(n: int) -> int:
    """``ceil(log2 n)`` bits."""
    return max(1, (n - 1).bit_length())


@dataclass(frozen=True)
class Encoded:
    """An encoded value with its representation kind and upload size in slots."""

    kind: RepresentationKind
    n: int
    value: Representation
    slot_cost: int

    def bandwidth_bytes(self, bytes_per_slot: int = 8) -> int:
        return self.slot_cost * bytes_per_slot

    def to_dict(self) -> dict[str, Any]:
        return {
            "kind": self.kind.value,
            "n": self.n,
            "slot_cost": self.slot_cost,
            "payload": _payload(self.value),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def _tree_payload(
    node: HierNode, residues: dict[tuple[int, ...], int], path: tuple[int, ...]
) -> dict[str, Any]:
    out: dict[str, Any] = {"modulus": node.modulus}
    if node.children is None:
        out["map"] = [int(i == residues[path]) for i in range(node.modulus)]
    else:
        out["children"] = [
            _tree_payload(child, residues, path + (step,))
            for step, child in enumerate(node.children, start=1)
        ]
    return out


def _payload(value: Representation) -> Any:
    if isinstance(value, OneHotMap):
        return list(value.bits)
    if isinstance(value, int):
        return value
    if isinstance(value, CrtRep):
        return {"moduli": list(value.basis.moduli), "maps": [list(s.bits) for s in value.submaps]}
    if isinstance(value, HierCrtRep):
        return _tree_payload(value.basis.root, value.residues, ())
    if isinstance(value, NumericResidues):
        return {"moduli": list(value.moduli), "residues": list(value.residues)}
    return list(value.bits)


def encode(
    a: Hashable,
    kind: RepresentationKind | str,
    *,
    n: int | None = None,
    class_map: ClassMap | None = None,
    basis: CrtBasis | HierBasis | None = None,
) -> Encoded:
    """Encode a category (with ``class_map``) or an index in ``[n]``.

    CRT kinds default to ``find_crt_basis(n)``; the hierarchical kind defaults
    to a one-level split. ``numeric-crt`` accepts either basis type and sends
    one residue per leaf.

    Parameters
    ----------
    a : Hashable
        A category known to ``class_map``, or an integer index.
    kind : RepresentationKind or str
        Target representation.
    n : int, optional
        Number of classes. Taken from ``class_map`` when omitted.
    class_map : ClassMap, optional
        Bijection from categories to ``[n]``.
    basis : CrtBasis or HierBasis, optional
        Basis for the CRT kinds.

    Returns
    -------
    Encoded
        The payload together with its slot cost.
    """
    kind = RepresentationKind(kind)
    if class_map is not None:
        index = class_map.phi(a)
        n = class_map.n if n is None else n
    else:
        if n is None:
            raise ValueError("n is required without a class map")
        if not isinstance(a, int) or isinstance(a, bool):
            raise RepresentationError(f"{a!r} is not an index")
        index = a
    if n < 2:
        raise ValueError(f"n must be at least 2, got {n}")
    if not 0 <= index < n:
        raise RepresentationError(f"Value {index} outside [0, {n})")

    if kind is RepresentationKind.ONE_HOT:
        return Encoded(kind, n, OneHotMap.of(index, n), n)
    if kind is RepresentationKind.NUMERIC:
        return Encoded(kind, n, index, 1)
    if kind is RepresentationKind.BINARY:
        width = binary_width(n)
        return Encoded(kind, n, BinaryRep(tuple((index >> i) & 1 for i in range(width)), n), width)
    if kind is RepresentationKind.CRT:
        crt = basis if basis is not None else find_crt_basis(n)
        if not isinstance(crt, CrtBasis):
            raise RepresentationError("The crt representation needs a CrtBasis")
        _check_range(crt.m, n)
        maps = tuple(OneHotMap.of(r, q) for r, q in zip(crt.residues(index), crt.moduli))
        return Encoded(kind, n, CrtRep(crt, maps), crt.slot_cost)
    if kind is RepresentationKind.HIER_CRT:
        hier = basis if basis is not None else build_hier_basis(n, 1)
        if not isinstance(hier, HierBasis):
            raise RepresentationError("The hier-crt representation needs a HierBasis")
        _check_range(hier.n, n)
        return Encoded(kind, n, encode_hier(index, hier), hier.slot_cost)

    chosen = basis if basis is not None else find_crt_basis(n)
    if isinstance(chosen, HierBasis):
        _check_range(chosen.n, n)
        rep = encode_hier(index, chosen)
        moduli = tuple(q for _, q in chosen.leaves())
        value = NumericResidues(moduli, tuple(rep.leaf_residues()), chosen)
    else:
        _check_range(chosen.m, n)
        value = NumericResidues(chosen.moduli, chosen.residues(index))
    return Encoded(kind, n, value, len(value.moduli))


def _check_range(covered: int, n: int) -> None:
    if covered < n:
        raise RepresentationError(f"Basis covers {covered} values, fewer than n={n}")


def decode(encoded: Encoded, *, basis: HierBasis | None = None) -> int:
    """Plaintext decode oracle, independent of the server-side conversions.

    Parameters
    ----------
    encoded : Encoded
        Output of ``encode``.
    basis : HierBasis, optional
        Tree for ``numeric-crt`` payloads that were built from leaf residues
        but carry no tree of their own.

    Returns
    -------
    int
        The index in ``[n]``.
    """
    value = encoded.value
    if isinstance(value, OneHotMap):
        return value.index
    if isinstance(value, bool):
        raise RepresentationError("Boolean payload")
    if isinstance(value, int):
        return value
    if isinstance(value, BinaryRep):
        return value.value
    if isinstance(value, CrtRep):
        return crt_combine(value.basis.moduli, value.residues)
    if isinstance(value, HierCrtRep):
        residues = [m.index(1) for m in value.leaf_maps()]
        return decode_hier(value.basis, residues)
    tree = basis if basis is not None else value.tree
    if tree is not None:
        return decode_hier(tree, list(value.residues))
    return crt_combine(value.moduli, value.residues)


def greater_map_of(
    a: int, n: int, orientation: Orientation | str = Orientation.GREATER
) -> GreaterMap:
    """Threshold map of ``a``: ``1`` at every ``i > a`` (or ``i < a`` for ``less``)."""
    orientation = Orientation(orientation)
    if not 0 <= a < n:
        raise RepresentationError(f"Value {a} outside [0, {n})")
    if orientation is Orientation.GREATER:
        bits = tuple(int(i > a) for i in range(n))
    else:
        bits = tuple(int(i < a) for i in range(n))
    return GreaterMap(bits, orientation)
