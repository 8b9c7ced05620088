"""Tests for slot-wise operations, rotations and their charges."""

from __future__ import annotations

from fractions import Fraction

import numpy as np
import pytest

from onehotmaps.simd import (
    add,
    add_plain,
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

from tests.conftest import real


def test_add_and_sub(ctx):
    a = ctx.encrypt([1, 2, 3])
    b = ctx.encrypt([4, 5, 6])
    assert list(real(add(a, b))[:3]) == [5, 7, 9]
    assert list(real(sub(a, b))[:3]) == [-3, -3, -3]
    assert ctx.ledger.adds == 2


def test_add_plain_accepts_scalars(ctx):
    out = add_plain(ctx.encrypt([1, 2]), Fraction(1, 2))
    assert ctx.decrypt(out)[1] == Fraction(5, 2)
    assert ctx.decrypt(out)[7] == Fraction(1, 2)


def test_negate_is_free(ctx):
    out = negate(ctx.encrypt([3]))
    assert ctx.decrypt(out)[0] == -3
    assert ctx.ledger.adds == 0
    assert ctx.ledger.mults == 0


def test_mul_scalar_is_a_plaintext_product(ctx):
    out = mul_scalar(ctx.encrypt([2, 3]), 5)
    assert list(real(out)[:2]) == [10, 15]
    assert (ctx.ledger.pt_mults, ctx.ledger.ct_mults) == (1, 0)
    assert (out.depth, out.ct_depth) == (1, 0)


def test_rotate_is_a_left_shift(ctx):
    out = rotate(ctx.encrypt(list(range(8))), 3)
    assert list(real(out)) == [3, 4, 5, 6, 7, 0, 1, 2]
    assert ctx.ledger.rotations == 1


def test_rotate_negative_is_a_right_shift(ctx):
    out = rotate(ctx.encrypt(list(range(8))), -1)
    assert list(real(out)) == [7, 0, 1, 2, 3, 4, 5, 6]


def test_conjugate_flips_imaginary_part(ctx):
    out = conjugate(ctx.encrypt([1 + 2j]))
    assert ctx.decrypt_complex(out)[0] == pytest.approx(1 - 2j)
    assert ctx.ledger.conjugations == 1


# ── Reductions ───────────────────────────────────────────────────────────────


def test_rotate_and_sum_full_window(ctx):
    out = rotate_and_sum(ctx.encrypt(list(range(8))), 8)
    assert list(real(out)) == [28] * 8
    assert ctx.ledger.rotations == 3
    assert ctx.ledger.adds == 3


def test_rotate_and_sum_partial_window(ctx):
    out = rotate_and_sum(ctx.encrypt([1, 2, 3, 4, 5, 6, 7, 8]), 4)
    assert list(real(out)[:5]) == [10, 14, 18, 22, 26]


def test_rotate_and_sum_block_starts_and_wraparound(ctx):
    out = real(rotate_and_sum(ctx.encrypt([1, 2, 3, 4, 5, 6, 7, 8]), 4))
    assert (out[0], out[4]) == (10, 26)
    # Slot 5 straddles the end of the vector: 6 + 7 + 8 + 1.
    assert out[5] == 22


def test_rotate_and_sum_with_stride(ctx):
    # Slot 0 gathers slots 0 and 4, slot 1 gathers slots 1 and 5.
    out = rotate_and_sum(ctx.encrypt([1, 2, 3, 4, 10, 20, 30, 40]), 2, stride=4)
    assert list(real(out)[:4]) == [11, 22, 33, 44]


@pytest.mark.parametrize(("length", "stride"), [(3, 1), (16, 1), (0, 1), (4, 4), (2, 0)])
def test_rotate_and_sum_rejects_bad_windows(ctx, length, stride):
    with pytest.raises(ValueError):
        rotate_and_sum(ctx.encrypt(1), length, stride=stride)


def test_sum_all(ctx):
    out = sum_all([ctx.encrypt(i) for i in range(5)])
    assert real(out)[0] == 10
    assert ctx.ledger.adds == 4


def test_sum_all_rejects_empty():
    with pytest.raises(ValueError, match="at least one"):
        sum_all([])


@pytest.mark.parametrize(("count", "depth"), [(1, 0), (2, 1), (3, 2), (4, 2), (5, 3), (8, 3)])
def test_product_tree_depth(ctx, count, depth):
    out = product_tree([ctx.encrypt(2) for _ in range(count)])
    assert real(out)[0] == 2**count
    assert out.ct_depth == depth
    assert ctx.ledger.ct_mults == count - 1


def test_product_tree_rejects_empty():
    with pytest.raises(ValueError):
        product_tree([])


def test_mul_of_complex_slots(ctx):
    out = mul(ctx.encrypt([1 + 1j]), ctx.encrypt([1 - 1j]))
    assert ctx.decrypt_complex(out)[0] == pytest.approx(2)


# ── Depth on random circuits ─────────────────────────────────────────────────


@pytest.mark.parametrize("seed", [0, 1, 2])
def test_depth_on_random_circuits(ctx, seed):
    rng = np.random.default_rng(seed)
    pool = [ctx.encrypt(0) for _ in range(3)]
    deepest = (0, 0)
    for _ in range(200):
        a, b = (pool[i] for i in rng.integers(len(pool), size=2))
        op = rng.choice(["add", "sub", "mul", "square", "pt_mul", "rotate"])
        if op == "add":
            out, expected = add(a, b), (max(a.depth, b.depth), max(a.ct_depth, b.ct_depth))
        elif op == "sub":
            out, expected = sub(a, b), (max(a.depth, b.depth), max(a.ct_depth, b.ct_depth))
        elif op == "mul":
            out = mul(a, b)
            expected = (max(a.depth, b.depth) + 1, max(a.ct_depth, b.ct_depth) + 1)
        elif op == "square":
            out, expected = square(a), (a.depth + 1, a.ct_depth + 1)
        elif op == "pt_mul":
            out, expected = pt_mul(ctx.constant(1), a), (a.depth + 1, a.ct_depth)
        else:
            out, expected = rotate(a, int(rng.integers(8))), (a.depth, a.ct_depth)
        assert (out.depth, out.ct_depth) == expected
        assert out.ct_depth <= out.depth
        deepest = (max(deepest[0], out.depth), max(deepest[1], out.ct_depth))
        pool.append(out)
    assert (ctx.ledger.max_depth, ctx.ledger.max_ct_depth) == deepest
