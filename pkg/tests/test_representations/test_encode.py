"""Tests for client-side encoders, decode oracles and class maps."""

from __future__ import annotations

import json

import pytest

from onehotmaps.exceptions import RepresentationError
from onehotmaps.models import Orientation, RepresentationKind, SplitRule
from onehotmaps.representations import (
    BinaryRep,
    ClassMap,
    GreaterMap,
    OneHotMap,
    binary_width,
    build_hier_basis,
    decode,
    encode,
    find_crt_basis,
    greater_map_of,
)


@pytest.mark.parametrize(
    ("kind", "slot_cost"),
    [
        ("one-hot", 100),
        ("numeric", 1),
        ("binary", 7),
        ("crt", 15),
        ("hier-crt", 21),
        ("numeric-crt", 3),
    ],
)
def test_slot_costs_for_one_hundred_categories(kind, slot_cost):
    encoded = encode(42, kind, n=100)
    assert encoded.slot_cost == slot_cost
    assert encoded.kind is RepresentationKind(kind)
    assert decode(encoded) == 42


@pytest.mark.parametrize("kind", [k.value for k in RepresentationKind])
@pytest.mark.parametrize("n", [4, 10, 37, 64])
def test_decode_inverts_encode_for_every_index(kind, n):
    assert [decode(encode(a, kind, n=n)) for a in range(n)] == list(range(n))


def test_slot_cost_ordering_for_a_composite_n():
    n = 10010
    hier = build_hier_basis(n, leaf_limit=5, split=SplitRule.TIGHT)
    costs = [
        encode(0, "numeric", n=n).slot_cost,
        encode(0, "binary", n=n).slot_cost,
        encode(0, "hier-crt", n=n, basis=hier).slot_cost,
        encode(0, "crt", n=n).slot_cost,
        encode(0, "one-hot", n=n).slot_cost,
    ]
    assert costs == [1, 14, 28, 38, 10010]
    assert find_crt_basis(n).moduli == (2, 5, 7, 11, 13)


def test_numeric_crt_over_a_tree(hier_example):
    basis = build_hier_basis(hier_example["n"], hier_example["levels"])
    encoded = encode(hier_example["value"], "numeric-crt", n=hier_example["n"], basis=basis)
    assert encoded.slot_cost == 8
    assert list(encoded.value.residues) == hier_example["leaf_residues"]
    assert decode(encoded) == hier_example["value"]


def test_crt_submaps(crt_example):
    basis = find_crt_basis(crt_example["n"])
    encoded = encode(crt_example["value"], "crt", n=crt_example["n"], basis=basis)
    assert [list(s.bits) for s in encoded.value.submaps] == crt_example["submaps"]


def test_to_json_is_stable():
    encoded = encode(2, RepresentationKind.ONE_HOT, n=4)
    assert json.loads(encoded.to_json()) == {
        "kind": "one-hot",
        "n": 4,
        "payload": [0, 0, 1, 0],
        "slot_cost": 4,
    }
    assert encoded.bandwidth_bytes() == 32


def test_hier_payload_nests_children():
    encoded = encode(7, "hier-crt", n=30, basis=build_hier_basis(30, 1))
    payload = encoded.to_dict()["payload"]
    assert payload["modulus"] == 30
    assert [child["modulus"] for child in payload["children"]] == [6, 7]
    assert payload["children"][0]["map"] == [0, 1, 0, 0, 0, 0]


@pytest.mark.parametrize(
    ("args", "kwargs", "error"),
    [
        ((5, "one-hot"), {"n": 4}, RepresentationError),
        ((1, "one-hot"), {}, ValueError),
        ((True, "numeric"), {"n": 4}, RepresentationError),
        ((1, "numeric"), {"n": 1}, ValueError),
        ((1, "crt"), {"n": 100, "basis": build_hier_basis(100, 1)}, RepresentationError),
        ((1, "hier-crt"), {"n": 100, "basis": find_crt_basis(100)}, RepresentationError),
        ((1, "crt"), {"n": 100, "basis": find_crt_basis(30)}, RepresentationError),
        ((1, "unary"), {"n": 4}, ValueError),
    ],
)
def test_encode_rejects(args, kwargs, error):
    with pytest.raises(error):
        encode(*args, **kwargs)


@pytest.mark.parametrize(("n", "width"), [(2, 1), (3, 2), (4, 2), (5, 3), (100, 7), (10000, 14)])
def test_binary_width(n, width):
    assert binary_width(n) == width


def test_binary_bits_are_lsb_first():
    rep = encode(6, "binary", n=8).value
    assert rep.bits == (0, 1, 1)
    with pytest.raises(RepresentationError):
        BinaryRep((1, 1, 1), 6)


def test_one_hot_map_validation():
    assert OneHotMap.of(2, 4).index == 2
    with pytest.raises(RepresentationError, match="exactly one"):
        OneHotMap((1, 1, 0))
    with pytest.raises(RepresentationError, match="0 or 1"):
        OneHotMap((2, 0))


# ── Greater maps ─────────────────────────────────────────────────────────────


def test_greater_map():
    gm = greater_map_of(2, 5)
    assert gm.bits == (0, 0, 0, 1, 1)
    assert gm.threshold == 2


def test_less_map():
    gm = greater_map_of(2, 5, Orientation.LESS)
    assert gm.bits == (1, 1, 0, 0, 0)
    assert gm.threshold == 2


@pytest.mark.parametrize("bits", [(1, 1, 1), (0, 1, 0)])
def test_greater_map_rejects_non_step_patterns(bits):
    with pytest.raises(RepresentationError):
        GreaterMap(bits)


# ── Class maps ───────────────────────────────────────────────────────────────


def test_lookup_class_map():
    cm = ClassMap(("low", "mid", "high"))
    assert cm.n == 3
    assert cm.phi("mid") == 1
    assert cm.phi_inverse(2) == "high"
    assert decode(encode("high", "crt", class_map=cm)) == 2


def test_evenly_spaced_class_map():
    cm = ClassMap.evenly_spaced(1.0, 0.2, 6)
    assert cm.phi(1.0) == 0
    assert cm.phi(1.4) == 2
    assert cm.phi(2.0) == 5
    assert cm.phi_inverse(3) == pytest.approx(1.6)
    assert cm.values() == pytest.approx([1.0, 1.2, 1.4, 1.6, 1.8, 2.0])


@pytest.mark.parametrize(
    ("categories", "affine"),
    [
        (("a", "a"), None),
        (("a",), None),
        ((1.0, 2.0, 3.0), (2.0, 0.0)),
    ],
)
def test_class_map_rejects(categories, affine):
    with pytest.raises(RepresentationError):
        ClassMap(categories, affine=affine)


def test_unknown_category():
    with pytest.raises(RepresentationError, match="not a category"):
        ClassMap(("x", "y")).phi("z")
