"""Conversions between one-hot maps and numeric, CRT and binary representations."""

from ._binary import (
    binary_selectors,
    binary_to_one_hot,
    binary_to_one_hot_lanes,
    bit_masks,
    one_hot_to_binary,
    one_hot_to_binary_lanes,
)
from ._crt import (
    crt_to_one_hot,
    crt_to_one_hot_packed,
    duplicate,
    hier_crt_to_one_hot,
    one_hot_to_crt,
    one_hot_to_crt_lanes,
)
from ._lagrange import (
    ShadowBounds,
    ShadowTree,
    build_shadow_tree,
    evaluate_lagrange_oracle,
    lagrange_denominators,
    shadow_bounds,
)
from ._numeric import (
    ProductTree,
    build_product_tree,
    numeric_to_one_hot_alg1,
    numeric_to_one_hot_alg2,
    numeric_to_one_hot_naive,
    padded_size,
)
from ._onehot import (
    greater_map_from_one_hot,
    greater_map_from_one_hot_packed,
    one_hot_to_numeric,
    one_hot_to_numeric_packed,
)

__all__ = [
    "ProductTree",
    "ShadowBounds",
    "ShadowTree",
    "binary_selectors",
    "binary_to_one_hot",
    "binary_to_one_hot_lanes",
    "bit_masks",
    "build_product_tree",
    "build_shadow_tree",
    "crt_to_one_hot",
    "crt_to_one_hot_packed",
    "duplicate",
    "evaluate_lagrange_oracle",
    "greater_map_from_one_hot",
    "greater_map_from_one_hot_packed",
    "hier_crt_to_one_hot",
    "lagrange_denominators",
    "numeric_to_one_hot_alg1",
    "numeric_to_one_hot_alg2",
    "numeric_to_one_hot_naive",
    "one_hot_to_binary",
    "one_hot_to_binary_lanes",
    "one_hot_to_crt",
    "one_hot_to_crt_lanes",
    "one_hot_to_numeric",
    "one_hot_to_numeric_packed",
    "padded_size",
    "shadow_bounds",
]
