"""Elementwise maps, broadcasts and reductions over tile tensors."""

from __future__ import annotations

import logging
from collections.abc import Callable, Sequence
from typing import Literal

import numpy as np

from ..exceptions import ShapeError
from ..simd import CipherVec, pt_mul, rotate, rotate_and_sum, sum_all
from ._shape import TileShape
from ._tensor import TileTensor, pack, slot_mask, unpack

logger = logging.getLogger(__name__)

BroadcastMethod = Literal["rotate", "reencrypt"]


def _check_dim(dim: int) -> None:
    if dim not in (0, 1):
        raise ValueError(f"dim must be 0 (rows) or 1 (columns), got {dim}")


def ew_map(f: Callable[[CipherVec], CipherVec], a: TileTensor) -> TileTensor:
    return a.with_tiles([[f(tile) for tile in row] for row in a.tiles])


def ew_map2(
    f: Callable[[CipherVec, CipherVec], CipherVec], a: TileTensor, b: TileTensor
) -> TileTensor:
    """Apply a slot-wise binary operation tile by tile."""
    if a.logical_shape != b.logical_shape or a.tile_shape != b.tile_shape:
        raise ShapeError(f"Cannot combine {a.label} with {b.label}")
    tiles = [[f(x, y) for x, y in zip(row_a, row_b)] for row_a, row_b in zip(a.tiles, b.tiles)]
    return a.with_tiles(tiles)


def _masked(tile: CipherVec, mask: np.ndarray) -> CipherVec:
    if mask.all():
        return tile
    return pt_mul(tile.context.encode(mask), tile)


def broadcast_dim(
    t: TileTensor, dim: int, factor: int, *, method: BroadcastMethod = "rotate"
) -> TileTensor:
    """Replicate ``t`` cyclically ``factor`` times along ``dim``.

    Output element ``(r, c)`` equals input ``(r mod m, c)`` for ``dim=0`` and
    ``(r, c mod n)`` for ``dim=1``. The ``rotate`` method gathers with masked
    rotations on the server; ``reencrypt`` models a client uploading the
    replicated layout and costs nothing.

    Parameters
    ----------
    t : TileTensor
        Tensor to replicate.
    dim : int
        0 for rows, 1 for columns.
    factor : int
        Number of copies along ``dim``.
    method : str
        ``"rotate"`` or ``"reencrypt"``.

    Returns
    -------
    TileTensor
        Tensor in the same tile shape, ``factor`` times larger along ``dim``.
    """
    _check_dim(dim)
    if factor < 1:
        raise ShapeError(f"Broadcast factor must be positive, got {factor}")
    if factor == 1:
        return t
    m, n = t.logical_shape
    out_shape = (m * factor, n) if dim == 0 else (m, n * factor)

    if method == "reencrypt":
        reps = (factor, 1) if dim == 0 else (1, factor)
        return pack(t.context, np.tile(unpack(t), reps), t.tile_shape)
    if method != "rotate":
        raise ValueError(f"Unknown broadcast method {method!r}")

    ctx = t.context
    s = ctx.slot_count
    t1, t2 = t.tile_shape.t1, t.tile_shape.t2
    grid_rows, grid_cols = t.tile_shape.grid(*out_shape)
    src_cols = t.grid[1]
    rotated: dict[tuple[int, int], CipherVec] = {}

    def shifted(src: int, k: int) -> CipherVec:
        if (src, k) not in rotated:
            tile = t.tiles[src // src_cols][src % src_cols]
            rotated[src, k] = tile if k == 0 else rotate(tile, k)
        return rotated[src, k]

    tiles = []
    for i in range(grid_rows):
        row = []
        for j in range(grid_cols):
            q = np.flatnonzero(slot_mask(out_shape, t.tile_shape, i, j))
            r, c = i * t1 + q // t2, j * t2 + q % t2
            r, c = (r % m, c) if dim == 0 else (r, c % n)
            src = (r // t1) * src_cols + c // t2
            k = ((r % t1) * t2 + c % t2 - q) % s
            parts = []
            for key_src, key_k in sorted(set(zip(src.tolist(), k.tolist()))):
                mask = np.zeros(s, dtype=int)
                mask[q[(src == key_src) & (k == key_k)]] = 1
                parts.append(_masked(shifted(key_src, key_k), mask))
            row.append(sum_all(parts))
        tiles.append(row)
    logger.debug("Broadcast %s along dim %d by %d", t.label, dim, factor)
    return TileTensor(out_shape, t.tile_shape, tuple(tuple(row) for row in tiles))


def reduce_dim(t: TileTensor, dim: int, *, collapse: bool = True) -> TileTensor:
    """Sum along ``dim``: rotate-and-sum inside tiles, then add across the tile grid.

    The collapsed result has shape ``(1, n)`` for ``dim=0`` and ``(m, 1)`` for
    ``dim=1``; with ``collapse=False`` it is broadcast back to ``(m, n)``.

    Parameters
    ----------
    t : TileTensor
        Tensor to reduce. Padding slots are masked out first.
    dim : int
        0 for rows, 1 for columns.
    collapse : bool
        Return the reduced shape instead of broadcasting it back.

    Returns
    -------
    TileTensor
        Sums in the same tile shape as ``t``.
    """
    _check_dim(dim)
    m, n = t.logical_shape
    t1, t2 = t.tile_shape.t1, t.tile_shape.t2

    def prepared(i: int, j: int) -> CipherVec:
        tile = t.tiles[i][j]
        if t.padded:
            tile = _masked(tile, t.valid_mask(i, j))
        if dim == 1:
            return rotate_and_sum(tile, t2)
        return rotate_and_sum(tile, t1, stride=t2)

    grid_rows, grid_cols = t.grid
    if dim == 1:
        out_shape = (m, 1)
        sums = [[sum_all([prepared(i, j) for j in range(grid_cols)])] for i in range(grid_rows)]
    else:
        out_shape = (1, n)
        sums = [[sum_all([prepared(i, j) for i in range(grid_rows)]) for j in range(grid_cols)]]

    tiles = [
        [_masked(tile, slot_mask(out_shape, t.tile_shape, i, j)) for j, tile in enumerate(row)]
        for i, row in enumerate(sums)
    ]
    out = t.with_tiles(tiles, out_shape)
    if collapse:
        return out
    return broadcast_dim(out, dim, n if dim == 1 else m)


def as_lanes(t: TileTensor) -> list[CipherVec]:
    """Lanes of a ``[n/1, m/s]`` tensor: one ciphertext per logical row."""
    if t.tile_shape.t1 != 1 or t.grid[1] != 1:
        raise ShapeError(f"{t.label} is not a one-row-per-ciphertext layout")
    return [row[0] for row in t.tiles]


def from_lanes(lanes: Sequence[CipherVec], batch: int | None = None) -> TileTensor:
    """Wrap lanes as a ``[n/1, m/s]`` tensor holding ``batch`` samples per row.

    Slots from ``batch`` on are zeroed with one plaintext product per lane.
    """
    if not lanes:
        raise ShapeError("At least one lane is required")
    s = lanes[0].context.slot_count
    batch = s if batch is None else batch
    if not 1 <= batch <= s:
        raise ShapeError(f"batch must lie in [1, {s}], got {batch}")
    mask = (np.arange(s) < batch).astype(int)
    rows = tuple((_masked(lane, mask),) for lane in lanes)
    return TileTensor((len(lanes), batch), TileShape(1, s), rows)
