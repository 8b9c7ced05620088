"""Tile tensors: logical matrices split into tiles, one ciphertext per tile."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy import sparse

from ..exceptions import ContextMismatchError, ShapeError
from ..simd import CipherVec, HeContext
from ._shape import TileShape

logger = logging.getLogger(__name__)


@lru_cache(maxsize=64)
def layout_map(logical_shape: tuple[int, int], tile_shape: TileShape) -> sparse.csr_matrix:
    """0/1 matrix from logical positions ``r * n + c`` to global slots ``tile * s + slot``.

    Tile ``(r // t1) * grid_cols + c // t2`` holds element ``(r, c)`` at slot
    ``(r % t1) * t2 + c % t2``. Padding slots have no logical preimage.
    """
    m, n = logical_shape
    t1, t2 = tile_shape.t1, tile_shape.t2
    grid_rows, grid_cols = tile_shape.grid(m, n)
    r, c = np.divmod(np.arange(m * n), n)
    tile = (r // t1) * grid_cols + c // t2
    slot = (r % t1) * t2 + c % t2
    rows = r * n + c
    cols = tile * tile_shape.size + slot
    total = grid_rows * grid_cols * tile_shape.size
    return sparse.coo_matrix(
        (np.ones(m * n, dtype=np.int8), (rows, cols)), shape=(m * n, total)
    ).tocsr()


def slot_mask(logical_shape: tuple[int, int], tile_shape: TileShape, i: int, j: int) -> np.ndarray:
    """0/1 slot mask of tile ``(i, j)``: 1 where a logical element lives."""
    m, n = logical_shape
    rows = np.arange(tile_shape.t1) + i * tile_shape.t1 < m
    cols = np.arange(tile_shape.t2) + j * tile_shape.t2 < n
    return np.outer(rows, cols).ravel().astype(int)


@dataclass(frozen=True)
class TileTensor:
    """An immutable grid of tiles holding a logical ``m x n`` matrix."""

    logical_shape: tuple[int, int]
    tile_shape: TileShape
    tiles: tuple[tuple[CipherVec, ...], ...]

    def __post_init__(self) -> None:
        grid = self.tile_shape.grid(*self.logical_shape)
        if (len(self.tiles), len(self.tiles[0]) if self.tiles else 0) != grid:
            raise ShapeError(f"Expected a {grid[0]}x{grid[1]} tile grid")
        ctx = self.context
        self.tile_shape.validate(ctx.slot_count)
        for row in self.tiles:
            for tile in row:
                if tile.context is not ctx:
                    raise ContextMismatchError("All tiles must share one context")

    @property
    def context(self) -> HeContext:
        return self.tiles[0][0].context

    @property
    def grid(self) -> tuple[int, int]:
        return len(self.tiles), len(self.tiles[0])

    @property
    def tile_count(self) -> int:
        rows, cols = self.grid
        return rows * cols

    @property
    def padded(self) -> bool:
        m, n = self.logical_shape
        return m % self.tile_shape.t1 != 0 or n % self.tile_shape.t2 != 0

    @property
    def label(self) -> str:
        return self.tile_shape.label(*self.logical_shape)

    def flat(self) -> list[CipherVec]:
        return [tile for row in self.tiles for tile in row]

    def valid_mask(self, i: int, j: int) -> np.ndarray:
        return slot_mask(self.logical_shape, self.tile_shape, i, j)

    def with_tiles(
        self, tiles: list[list[CipherVec]], logical_shape: tuple[int, int] | None = None
    ) -> TileTensor:
        return TileTensor(
            logical_shape or self.logical_shape,
            self.tile_shape,
            tuple(tuple(row) for row in tiles),
        )


def pack(ctx: HeContext, matrix: np.ndarray | list, shape: TileShape) -> TileTensor:
    """Encrypt a logical matrix tile by tile; padding slots hold 0.

    Parameters
    ----------
    ctx : HeContext
        Context to encrypt under.
    matrix : array_like
        Non-empty ``m x n`` matrix.
    shape : TileShape
        Tile shape; ``t1 * t2`` must equal the slot count.

    Returns
    -------
    TileTensor
        ``ceil(m / t1) x ceil(n / t2)`` grid of ciphertexts.
    """
    shape.validate(ctx.slot_count)
    values = np.asarray(matrix, dtype=object)
    if values.ndim != 2 or 0 in values.shape:
        raise ShapeError(f"Expected a non-empty 2-D matrix, got shape {values.shape}")
    m, n = values.shape
    grid_rows, grid_cols = shape.grid(m, n)
    s = ctx.slot_count

    layout = layout_map((m, n), shape).tocoo()
    slots = np.zeros(grid_rows * grid_cols * s, dtype=object)
    slots[layout.col] = values.ravel()[layout.row]

    chunks = slots.reshape(grid_rows, grid_cols, s)
    tiles = [[ctx.encrypt(chunk) for chunk in row] for row in chunks]
    logger.debug("Packed %dx%d matrix as %s", m, n, shape.label(m, n))
    return TileTensor((m, n), shape, tuple(tuple(row) for row in tiles))


def unpack(tensor: TileTensor) -> np.ndarray:
    """Decrypt a tile tensor back into its logical ``m x n`` matrix (real parts)."""
    ctx = tensor.context
    m, n = tensor.logical_shape
    slots = np.concatenate([ctx.decrypt(tile) for tile in tensor.flat()])
    layout = layout_map((m, n), tensor.tile_shape).tocoo()
    flat = np.empty(m * n, dtype=slots.dtype)
    flat[layout.row] = slots[layout.col]
    return flat.reshape(m, n)
