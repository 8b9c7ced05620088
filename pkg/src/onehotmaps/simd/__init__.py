"""CKKS-style SIMD arithmetic simulator with cost accounting."""

from ._context import CipherVec, HeContext, PlainVec
from ._ops import (
    add,
    add_plain,
    bootstrap,
    conjugate,
    mul,
    mul_scalar,
    negate,
    product_tree,
    pt_mul,
    rotate,
    rotate_and_sum,
    square,
    sub,
    sum_all,
)

__all__ = [
    "CipherVec",
    "HeContext",
    "PlainVec",
    "add",
    "add_plain",
    "bootstrap",
    "conjugate",
    "mul",
    "mul_scalar",
    "negate",
    "product_tree",
    "pt_mul",
    "rotate",
    "rotate_and_sum",
    "square",
    "sub",
    "sum_all",
]
