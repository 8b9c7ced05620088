"""Tests for hierarchical CRT modulus trees."""

from __future__ import annotations

import pytest

from onehotmaps.exceptions import RepresentationError
from onehotmaps.models import SplitRule
from onehotmaps.representations import (
    HierCrtRep,
    build_hier_basis,
    decode_hier,
    encode_hier,
    split_modulus,
)


def test_three_level_example(hier_example):
    basis = build_hier_basis(hier_example["n"], hier_example["levels"])
    rep = encode_hier(hier_example["value"], basis)

    assert basis.level_slot_costs() == hier_example["level_slot_costs"]
    assert [q for _, q in basis.leaves()] == hier_example["leaf_moduli"]
    assert rep.leaf_residues() == hier_example["leaf_residues"]
    labelled = {HierCrtRep.label(path): r for path, r in rep.residues.items() if len(path) <= 2}
    for label, residue in hier_example["residues"].items():
        assert labelled[label] == residue


def test_decode_recovers_value(hier_example):
    basis = build_hier_basis(hier_example["n"], hier_example["levels"])
    assert decode_hier(basis, hier_example["leaf_residues"]) == hier_example["value"]


def test_leaf_maps_are_one_hot(hier_example):
    basis = build_hier_basis(hier_example["n"], hier_example["levels"])
    maps = encode_hier(hier_example["value"], basis).leaf_maps()
    assert [len(m) for m in maps] == hier_example["leaf_moduli"]
    assert all(sum(m) == 1 for m in maps)
    assert maps[1] == (0, 0, 0, 1, 0)


def test_tight_split_with_leaf_limit():
    basis = build_hier_basis(10000, leaf_limit=5, split=SplitRule.TIGHT)
    assert [q for _, q in basis.leaves()] == [3, 4] * 4
    assert basis.slot_cost == 28
    assert basis.level_slot_costs() == [201, 42, 28]
    assert basis.depth == 3


def test_tight_split_small_range():
    basis = build_hier_basis(100, leaf_limit=5, split="tight")
    assert [q for _, q in basis.leaves()] == [3, 4, 3, 4]
    assert all(decode_hier(basis, encode_hier(a, basis).leaf_residues()) == a for a in range(100))


@pytest.mark.parametrize(
    ("q", "rule", "expected"),
    [
        (10000, SplitRule.CEIL_SQRT, (100, 101)),
        (101, SplitRule.CEIL_SQRT, (11, 12)),
        (11, SplitRule.CEIL_SQRT, (4, 5)),
        (10, SplitRule.TIGHT, (3, 4)),
        (101, SplitRule.TIGHT, (10, 11)),
    ],
)
def test_split_modulus(q, rule, expected):
    assert split_modulus(q, rule) == expected


def test_split_modulus_too_small():
    with pytest.raises(RepresentationError):
        split_modulus(3)


def test_inconsistent_leaf_residues():
    basis = build_hier_basis(10000, 1)
    with pytest.raises(RepresentationError, match="Inconsistent"):
        decode_hier(basis, [99, 100])


def test_wrong_leaf_count():
    basis = build_hier_basis(10000, 1)
    with pytest.raises(RepresentationError, match="Expected 2"):
        decode_hier(basis, [1, 2, 3])


@pytest.mark.parametrize(
    "kwargs",
    [
        {},
        {"levels": 0},
        {"leaf_limit": 2},
    ],
)
def test_build_rejects_bad_arguments(kwargs):
    with pytest.raises(ValueError):
        build_hier_basis(100, **kwargs)


def test_encode_outside_range():
    with pytest.raises(RepresentationError):
        encode_hier(100, build_hier_basis(100, 1))
