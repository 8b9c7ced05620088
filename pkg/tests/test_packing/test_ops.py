"""Tests for elementwise maps, broadcasts and reductions over tile tensors."""

from __future__ import annotations

import numpy as np
import pytest

from onehotmaps.conversions import one_hot_to_numeric
from onehotmaps.exceptions import ShapeError
from onehotmaps.packing import (
    TileShape,
    as_lanes,
    broadcast_dim,
    ew_map,
    ew_map2,
    from_lanes,
    pack,
    reduce_dim,
    unpack,
)
from onehotmaps.simd import HeContext, mul, negate

from tests.conftest import one_hot_lanes, real


def _one_hot_matrix(values: np.ndarray, n: int) -> np.ndarray:
    """Classes by samples: column ``s`` is the one-hot map of ``values[s]``."""
    return (np.arange(n)[:, None] == values[None, :]).astype(int)


def test_ew_map2_multiplies_tile_by_tile(ctx):
    a = np.arange(15).reshape(3, 5)
    b = np.arange(15, 30).reshape(3, 5)
    shape = TileShape(2, 4)
    with ctx.measure() as cost:
        out = ew_map2(mul, pack(ctx, a, shape), pack(ctx, b, shape))
    assert np.array_equal(unpack(out).astype(int), a * b)
    assert cost.ct_mults == 4


def test_ew_map2_shape_mismatch(ctx):
    a = pack(ctx, np.ones((2, 4), dtype=int), TileShape(2, 4))
    b = pack(ctx, np.ones((2, 4), dtype=int), TileShape(1, 8))
    with pytest.raises(ShapeError, match="Cannot combine"):
        ew_map2(mul, a, b)


def test_ew_map(ctx):
    out = ew_map(negate, pack(ctx, [[1, 2], [3, 4]], TileShape(1, 8)))
    assert np.array_equal(unpack(out).astype(int), [[-1, -2], [-3, -4]])


# ── Broadcast ────────────────────────────────────────────────────────────────


def test_broadcast_columns_with_rotations(ctx):
    row = pack(ctx, [[1, 2, 3]], TileShape(1, 8))
    with ctx.measure() as cost:
        out = broadcast_dim(row, 1, 10)
    assert out.logical_shape == (1, 30)
    assert np.array_equal(unpack(out).astype(int), np.tile([[1, 2, 3]], (1, 10)))
    assert cost.rotations > 0


def test_broadcast_rows(ctx):
    block = np.array([[1, 2, 3], [4, 5, 6]])
    out = broadcast_dim(pack(ctx, block, TileShape(2, 4)), 0, 3)
    assert out.logical_shape == (6, 3)
    assert np.array_equal(unpack(out).astype(int), np.tile(block, (3, 1)))


def test_broadcast_reencrypt_is_free(ctx):
    row = pack(ctx, [[1, 2, 3]], TileShape(1, 8))
    with ctx.measure() as cost:
        out = broadcast_dim(row, 1, 10, method="reencrypt")
    assert np.array_equal(unpack(out).astype(int), np.tile([[1, 2, 3]], (1, 10)))
    assert cost.rotations == 0
    assert cost.mults == 0


def test_broadcast_by_one_is_identity(ctx):
    tensor = pack(ctx, [[1, 2]], TileShape(1, 8))
    assert broadcast_dim(tensor, 0, 1) is tensor


@pytest.mark.parametrize(
    ("dim", "factor", "method", "error"),
    [(0, 0, "rotate", ShapeError), (2, 2, "rotate", ValueError), (0, 2, "copy", ValueError)],
)
def test_broadcast_rejects(ctx, dim, factor, method, error):
    tensor = pack(ctx, [[1, 2]], TileShape(1, 8))
    with pytest.raises(error):
        broadcast_dim(tensor, dim, factor, method=method)


# ── Reduce ───────────────────────────────────────────────────────────────────


def test_one_hot_columns_sum_to_one(ctx):
    matrix = _one_hot_matrix(np.array([0, 1, 2, 3, 1, 2]), 4)
    tensor = pack(ctx, matrix, TileShape(2, 4))
    assert tensor.padded
    out = reduce_dim(tensor, 0)
    assert out.logical_shape == (1, 6)
    assert np.array_equal(unpack(out).astype(int), np.ones((1, 6), dtype=int))


def test_row_sums(ctx):
    matrix = _one_hot_matrix(np.array([0, 1, 2, 3, 1, 2]), 4)
    out = reduce_dim(pack(ctx, matrix, TileShape(2, 4)), 1)
    assert out.logical_shape == (4, 1)
    assert np.array_equal(unpack(out).astype(int), matrix.sum(axis=1, keepdims=True))


def test_single_tile_reductions(ctx):
    matrix = np.array([[1, 2, 3, 4], [5, 6, 7, 8]])
    tensor = pack(ctx, matrix, TileShape(2, 4))
    assert not tensor.padded
    assert np.array_equal(unpack(reduce_dim(tensor, 1)).astype(int), [[10], [26]])
    assert np.array_equal(unpack(reduce_dim(tensor, 0)).astype(int), [[6, 8, 10, 12]])


def test_reduce_without_collapse_broadcasts_back(ctx):
    matrix = np.array([[1, 2, 3], [4, 5, 6], [7, 8, 9]])
    out = reduce_dim(pack(ctx, matrix, TileShape(2, 4)), 1, collapse=False)
    assert out.logical_shape == (3, 3)
    assert np.array_equal(unpack(out).astype(int), np.repeat([[6], [15], [24]], 3, axis=1))


def test_lane_reduction_cost(ctx):
    tensor = pack(ctx, np.ones((2, 8), dtype=int), TileShape(1, 8))
    with ctx.measure() as cost:
        reduce_dim(tensor, 1)
    assert cost.rotations == 2 * 3


def test_reduce_rejects_bad_dim(ctx):
    with pytest.raises(ValueError, match="dim"):
        reduce_dim(pack(ctx, [[1]], TileShape(1, 8)), 2)


# ── Every tile shape ─────────────────────────────────────────────────────────


@pytest.mark.parametrize("slot_count", [8, 16])
@pytest.mark.parametrize("logical", [(3, 5), (4, 4), (2, 17)])
def test_every_tile_shape_matches_numpy(slot_count, logical):
    ctx = HeContext(slot_count)
    matrix = np.arange(1, logical[0] * logical[1] + 1).reshape(logical)
    for shape in TileShape.all_for(slot_count):
        tensor = pack(ctx, matrix, shape)
        for dim in (0, 1):
            reduced = unpack(reduce_dim(tensor, dim)).astype(int)
            assert np.array_equal(reduced, matrix.sum(axis=dim, keepdims=True)), shape
            spread = unpack(reduce_dim(tensor, dim, collapse=False)).astype(int)
            assert np.array_equal(spread, np.broadcast_to(reduced, logical)), shape
            reps = (3, 1) if dim == 0 else (1, 3)
            tiled = unpack(broadcast_dim(tensor, dim, 3)).astype(int)
            assert np.array_equal(tiled, np.tile(matrix, reps)), shape


# ── Lanes ────────────────────────────────────────────────────────────────────


def test_lanes_round_trip(ctx):
    values = np.array([3, 0, 2, 1, 3])
    lanes = one_hot_lanes(ctx, values, 4)
    with ctx.measure() as cost:
        tensor = from_lanes(lanes, batch=5)
    assert tensor.logical_shape == (4, 5)
    assert tensor.label == "[4/1,5/8]"
    assert np.array_equal(unpack(tensor).astype(int), _one_hot_matrix(values, 4))
    assert cost.pt_mults == 4

    classes = [10, 20, 30, 40]
    numeric = one_hot_to_numeric(as_lanes(tensor), classes)
    assert list(real(numeric.output)[:5]) == [40, 10, 30, 20, 40]


def test_full_batch_needs_no_mask(ctx):
    with ctx.measure() as cost:
        from_lanes(one_hot_lanes(ctx, np.arange(8) % 2, 2))
    assert cost.pt_mults == 0


def test_as_lanes_needs_row_layout(ctx):
    with pytest.raises(ShapeError):
        as_lanes(pack(ctx, np.ones((2, 4), dtype=int), TileShape(2, 4)))


@pytest.mark.parametrize("batch", [0, 9])
def test_from_lanes_rejects_batch(ctx, batch):
    with pytest.raises(ShapeError):
        from_lanes([ctx.encrypt(0)], batch=batch)


def test_from_lanes_rejects_empty():
    with pytest.raises(ShapeError):
        from_lanes([])
