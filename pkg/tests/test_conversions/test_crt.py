"""Tests for CRT and hierarchical CRT conversions."""

from __future__ import annotations

import numpy as np
import pytest

from onehotmaps.conversions import (
    crt_to_one_hot,
    crt_to_one_hot_packed,
    duplicate,
    hier_crt_to_one_hot,
    one_hot_to_crt,
    one_hot_to_crt_lanes,
)
from onehotmaps.exceptions import CrtBasisError, RepresentationError, ShapeError
from onehotmaps.representations import CrtBasis, build_hier_basis, encode_hier, find_crt_basis
from onehotmaps.simd import HeContext

from tests.conftest import one_hot_lanes, real


def _residue_lanes(ctx, values, moduli):
    return [one_hot_lanes(ctx, values % q, q) for q in moduli]


def test_lanes_exhaustive(crt_example):
    ctx = HeContext(32)
    values = np.arange(crt_example["n"])
    conversion = crt_to_one_hot(_residue_lanes(ctx, values, crt_example["moduli"]))
    assert len(conversion.lanes) == 30
    for i, lane in enumerate(conversion.lanes):
        assert list(real(lane)[:30]) == list((values == i).astype(float))


def test_lanes_cost(crt_example):
    ctx = HeContext(32)
    values = np.arange(30)
    conversion = crt_to_one_hot(_residue_lanes(ctx, values, crt_example["moduli"]))
    # m (k - 1) products, depth ceil(log2 k)
    assert conversion.cost.ct_mults == 60
    assert conversion.cost.max_ct_depth == 2
    assert conversion.slot_mults == 60


def test_lanes_truncated_to_length():
    ctx = HeContext(128)
    basis = find_crt_basis(100)
    values = np.arange(100)
    conversion = crt_to_one_hot(_residue_lanes(ctx, values, basis.moduli), length=100)
    assert len(conversion.lanes) == 100
    assert conversion.cost.ct_mults == 200
    assert real(conversion.lanes[99])[99] == 1


def test_lanes_reject_shared_factors():
    ctx = HeContext(8)
    lanes = _residue_lanes(ctx, np.arange(8), (2, 4))
    with pytest.raises(CrtBasisError):
        crt_to_one_hot(lanes)


@pytest.mark.parametrize("length", [0, 31])
def test_lanes_reject_bad_length(length):
    ctx = HeContext(32)
    with pytest.raises(ValueError, match="length"):
        crt_to_one_hot(_residue_lanes(ctx, np.arange(30), (2, 3, 5)), length=length)


def test_lanes_reject_empty_submap():
    with pytest.raises(RepresentationError):
        crt_to_one_hot([[]])


# ── Packed ───────────────────────────────────────────────────────────────────


def test_duplicate_matches_example(crt_example):
    ctx = HeContext(32)
    for q, submap, expected in zip(
        crt_example["moduli"], crt_example["submaps"], crt_example["duplicated"]
    ):
        out = duplicate(ctx.encrypt(submap), q, 30)
        assert list(real(out)[:30]) == expected
        assert list(real(out)[30:]) == [0, 0]


def test_packed_conversion(crt_example):
    ctx = HeContext(32)
    submaps = [ctx.encrypt(s) for s in crt_example["submaps"]]
    conversion = crt_to_one_hot_packed(submaps, crt_example["moduli"])
    out = real(conversion.output)
    assert out[crt_example["value"]] == 1
    assert out.sum() == 1
    assert conversion.cost.ct_mults == 2
    assert conversion.cost.rotations == 14 + 9 + 5
    assert conversion.slot_mults == 60


def test_duplicate_rejects_non_divisor():
    ctx = HeContext(32)
    with pytest.raises(ShapeError, match="does not divide"):
        duplicate(ctx.encrypt([1, 0, 0, 0]), 4, 30)


def test_duplicate_rejects_oversized_range():
    ctx = HeContext(16)
    with pytest.raises(ShapeError, match="exceeds"):
        duplicate(ctx.encrypt([1, 0]), 2, 30)


# ── Hierarchical ─────────────────────────────────────────────────────────────


def test_hierarchical_lanes_exhaustive():
    ctx = HeContext(128)
    basis = build_hier_basis(100, leaf_limit=5, split="tight")
    values = np.arange(100)
    leaf_residues = np.array([encode_hier(int(a), basis).leaf_residues() for a in values])
    leaf_maps = [
        one_hot_lanes(ctx, leaf_residues[:, k], q) for k, (_, q) in enumerate(basis.leaves())
    ]
    conversion = hier_crt_to_one_hot(leaf_maps, basis)
    assert len(conversion.lanes) == 100
    for i in range(100):
        assert list(real(conversion.lanes[i])[:100]) == list((values == i).astype(float))
    assert conversion.stages["level-1"].ct_mults == 10 + 11
    assert conversion.stages["level-0"].ct_mults == 100
    assert conversion.cost.max_ct_depth == 2


def test_hierarchical_rejects_wrong_leaf_count():
    ctx = HeContext(8)
    basis = build_hier_basis(30, 1)
    with pytest.raises(RepresentationError, match="Expected 2"):
        hier_crt_to_one_hot([one_hot_lanes(ctx, np.zeros(8, dtype=int), 6)], basis)


def test_hierarchical_rejects_wrong_leaf_size():
    ctx = HeContext(8)
    basis = build_hier_basis(30, 1)
    maps = [one_hot_lanes(ctx, np.zeros(8, dtype=int), q) for q in (6, 6)]
    with pytest.raises(RepresentationError, match="expected 7"):
        hier_crt_to_one_hot(maps, basis)


# ── One-hot to CRT ───────────────────────────────────────────────────────────


def test_one_hot_to_crt_packed(crt_example):
    ctx = HeContext(32)
    basis = CrtBasis(tuple(crt_example["moduli"]), crt_example["n"])
    one_hot = ctx.encrypt([int(i == crt_example["value"]) for i in range(30)])
    conversion = one_hot_to_crt(one_hot, basis)
    residues = [real(r)[0] for r in conversion.lanes]
    assert residues == [1, 2, 2]
    # every slot holds the residue
    assert all(np.all(real(r) == real(r)[0]) for r in conversion.lanes)
    assert conversion.cost.pt_mults == 3
    assert conversion.cost.rotations == 15


def test_one_hot_to_crt_lanes_exhaustive():
    ctx = HeContext(32)
    basis = CrtBasis((2, 3, 5), 30)
    values = np.arange(30)
    conversion = one_hot_to_crt_lanes(one_hot_lanes(ctx, values, 30), basis)
    for q, lane in zip(basis.moduli, conversion.lanes):
        assert list(real(lane)[:30]) == list((values % q).astype(float))


def test_one_hot_to_crt_lanes_shape():
    ctx = HeContext(8)
    with pytest.raises(ShapeError):
        one_hot_to_crt_lanes(one_hot_lanes(ctx, np.zeros(8, dtype=int), 8), CrtBasis((2, 3), 6))
