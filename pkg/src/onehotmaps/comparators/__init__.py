"""Equality, greater-than and range comparison circuits."""

from ._bitvec import (
    bitvec_equal,
    bitvec_equal_complex,
    bitvec_equal_xorsum,
    default_zero_test_iters,
    gate_and,
    gate_or,
    gate_xnor,
    gate_xor,
    pack_bit_pairs,
)
from ._eq import eq_approx, smoothstep, zero_test, zero_test_bound
from ._maps import ge_via_maps, range_check

__all__ = [
    "bitvec_equal",
    "bitvec_equal_complex",
    "bitvec_equal_xorsum",
    "default_zero_test_iters",
    "eq_approx",
    "gate_and",
    "gate_or",
    "gate_xnor",
    "gate_xor",
    "ge_via_maps",
    "pack_bit_pairs",
    "range_check",
    "smoothstep",
    "zero_test",
    "zero_test_bound",
]
