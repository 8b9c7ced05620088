"""Tile-tensor packing of logical matrices onto ciphertexts."""

from ._ops import as_lanes, broadcast_dim, ew_map, ew_map2, from_lanes, reduce_dim
from ._shape import TileShape, parse_shape
from ._tensor import TileTensor, layout_map, pack, slot_mask, unpack

__all__ = [
    "TileShape",
    "TileTensor",
    "as_lanes",
    "broadcast_dim",
    "ew_map",
    "ew_map2",
    "from_lanes",
    "layout_map",
    "pack",
    "parse_shape",
    "reduce_dim",
    "slot_mask",
    "unpack",
]
