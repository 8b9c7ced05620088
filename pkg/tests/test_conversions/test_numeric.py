"""Tests for numeric to one-hot conversions."""

from __future__ import annotations

import numpy as np
import pytest

from onehotmaps.conversions import (
    build_product_tree,
    build_shadow_tree,
    numeric_to_one_hot_alg1,
    numeric_to_one_hot_alg2,
    numeric_to_one_hot_naive,
    padded_size,
)
from onehotmaps.exceptions import FixedPointOverflowError
from onehotmaps.models import ArithmeticProfile, EqConfig
from onehotmaps.simd import HeContext

from tests.conftest import real


def _assert_one_hot(conversion, n, atol=1e-6):
    """Lane ``c`` is 1 exactly in the slots holding ``c`` (slot ``x`` holds ``x``)."""
    assert len(conversion.lanes) == n
    for c, lane in enumerate(conversion.lanes):
        expected = (np.arange(n) == c).astype(float)
        np.testing.assert_allclose(real(lane)[:n], expected, atol=atol)


@pytest.mark.parametrize("shadow", [False, True])
@pytest.mark.parametrize("n", [2, 4, 8, 16])
def test_alg1_exact(n, shadow):
    ctx = HeContext(16)
    conversion = numeric_to_one_hot_alg1(ctx.encrypt(list(range(n))), n, shadow=shadow)
    for c, lane in enumerate(conversion.lanes):
        assert list(ctx.decrypt(lane)[:n]) == [int(x == c) for x in range(n)]


@pytest.mark.parametrize("shadow", [False, True])
@pytest.mark.parametrize("n", [2, 4, 8, 16])
def test_alg2_exact(n, shadow):
    ctx = HeContext(16)
    conversion = numeric_to_one_hot_alg2(ctx.encrypt(list(range(n))), n, shadow=shadow)
    for c, lane in enumerate(conversion.lanes):
        assert list(ctx.decrypt(lane)[:n]) == [int(x == c) for x in range(n)]


@pytest.mark.parametrize("convert", [numeric_to_one_hot_alg1, numeric_to_one_hot_alg2])
def test_non_power_of_two_pads_dummy_classes(convert):
    ctx = HeContext(8)
    conversion = convert(ctx.encrypt(list(range(5))), 5)
    _assert_one_hot(conversion, 5)


@pytest.mark.parametrize(("n", "size"), [(2, 2), (3, 4), (5, 8), (16, 16), (17, 32)])
def test_padded_size(n, size):
    assert padded_size(n) == size


# ── Cost laws ────────────────────────────────────────────────────────────────


@pytest.mark.parametrize("n", [4, 8, 16])
def test_alg1_cost(n):
    levels = n.bit_length() - 1
    ctx = HeContext(16)
    conversion = numeric_to_one_hot_alg1(ctx.encrypt(0), n)
    assert conversion.stages["tree"].ct_mults == n - 2
    assert conversion.stages["paths"].ct_mults == n * (levels - 1)
    assert conversion.cost.pt_mults == n
    assert conversion.cost.max_ct_depth == levels
    assert conversion.cost.max_depth == levels + 1
    assert conversion.slot_mults == conversion.cost.mults


@pytest.mark.parametrize("n", [4, 8, 16])
def test_alg1_with_shadow_moves_scaling_into_the_tree(n):
    ctx = HeContext(16)
    conversion = numeric_to_one_hot_alg1(ctx.encrypt(0), n, shadow=True)
    assert conversion.cost.pt_mults == 2 * n - 2
    assert conversion.stages["paths"].pt_mults == 0


@pytest.mark.parametrize("n", [4, 8, 16])
def test_root_to_leaf_doubles_depth(n):
    levels = n.bit_length() - 1
    ctx = HeContext(16)
    conversion = numeric_to_one_hot_alg1(ctx.encrypt(0), n, path_order="root-to-leaf")
    assert conversion.cost.max_ct_depth == 2 * levels - 2


def test_unknown_path_order():
    ctx = HeContext(8)
    with pytest.raises(ValueError, match="path order"):
        numeric_to_one_hot_alg1(ctx.encrypt(0), 4, path_order="sideways")  # type: ignore[arg-type]


@pytest.mark.parametrize("n", [4, 8, 16])
def test_alg2_cost(n):
    levels = n.bit_length() - 1
    ctx = HeContext(16)
    conversion = numeric_to_one_hot_alg2(ctx.encrypt(0), n)
    assert conversion.stages["paths"].ct_mults == 2 * n - 4
    assert conversion.cost.ct_mults == 3 * n - 6
    assert conversion.cost.max_ct_depth == 2 * levels - 2


def test_alg2_is_cheaper_than_alg1():
    ctx = HeContext(32)
    x = ctx.encrypt(0)
    alg1 = numeric_to_one_hot_alg1(x, 32).cost
    alg2 = numeric_to_one_hot_alg2(x, 32).cost
    assert alg2.ct_mults < alg1.ct_mults


def test_product_tree_levels():
    ctx = HeContext(8)
    tree = build_product_tree(ctx.encrypt(list(range(8))), 8, include_root=True)
    assert tree.height == 3
    assert tree.node_count == 7
    # The root is the product of x - c over all classes, zero on [8].
    assert list(ctx.decrypt(tree.levels[3][0])) == [0] * 8


def test_product_tree_rejects_mismatched_shadow():
    ctx = HeContext(8)
    with pytest.raises(ValueError, match="Shadow tree"):
        build_product_tree(ctx.encrypt(0), 8, build_shadow_tree(4))


# ── Fixed-point overflow ─────────────────────────────────────────────────────


def _fixed(int_bits: int) -> HeContext:
    return HeContext(32, ArithmeticProfile.fixed_point(frac_bits=42, int_bits=int_bits))


def test_direct_conversion_fits_small_n():
    ctx = _fixed(30)
    _assert_one_hot(numeric_to_one_hot_alg1(ctx.encrypt(list(range(8))), 8), 8)


def test_direct_conversion_overflows():
    ctx = _fixed(30)
    with pytest.raises(FixedPointOverflowError):
        numeric_to_one_hot_alg1(ctx.encrypt(list(range(16))), 16)


@pytest.mark.parametrize("shadow", [False, True])
@pytest.mark.parametrize("convert", [numeric_to_one_hot_alg1, numeric_to_one_hot_alg2])
def test_eight_classes_are_precise_with_sixteen_integer_bits(convert, shadow):
    ctx = _fixed(16)
    conversion = convert(ctx.encrypt(list(range(8))), 8, shadow=shadow)
    _assert_one_hot(conversion, 8, atol=1e-5)


@pytest.mark.parametrize("convert", [numeric_to_one_hot_alg1, numeric_to_one_hot_alg2])
def test_sixteen_classes_overflow_sixteen_integer_bits(convert):
    ctx = _fixed(16)
    with pytest.raises(FixedPointOverflowError):
        convert(ctx.encrypt(list(range(16))), 16)


def test_shadow_tree_avoids_overflow():
    ctx = _fixed(30)
    conversion = numeric_to_one_hot_alg1(ctx.encrypt(list(range(32))), 32, shadow=True)
    _assert_one_hot(conversion, 32, atol=1e-3)


def test_shadow_tree_overflows_with_fewer_integer_bits():
    ctx = _fixed(16)
    with pytest.raises(FixedPointOverflowError):
        numeric_to_one_hot_alg1(ctx.encrypt(list(range(32))), 32, shadow=True)


# ── Eq sweep ─────────────────────────────────────────────────────────────────


def test_naive_conversion(float_ctx):
    n = 8
    conversion = numeric_to_one_hot_naive(float_ctx.encrypt(list(range(n))), n)
    _assert_one_hot(conversion, n, atol=0.05)


def test_naive_conversion_costs_one_eq_per_class(float_ctx):
    cfg = EqConfig(domain_bound=8)
    conversion = numeric_to_one_hot_naive(float_ctx.encrypt(0), 8, cfg)
    per_class = 1 + cfg.squarings + 2 * cfg.sharpen_iters
    assert conversion.cost.ct_mults == 8 * per_class


def test_naive_rejects_small_domain(float_ctx):
    with pytest.raises(ValueError, match="smaller than"):
        numeric_to_one_hot_naive(float_ctx.encrypt(0), 8, EqConfig(domain_bound=4))
