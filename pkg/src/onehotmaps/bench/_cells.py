"""Single experiment cells: one fresh context, one conversion or circuit, one record."""

from __future__ import annotations

import logging
import math
from collections.abc import Sequence
from dataclasses import replace

import numpy as np

from .._config import Settings
from ..comparators import (
    bitvec_equal,
    bitvec_equal_complex,
    bitvec_equal_xorsum,
    eq_approx,
    ge_via_maps,
    pack_bit_pairs,
    range_check,
)
from ..conversions import (
    binary_to_one_hot,
    binary_to_one_hot_lanes,
    crt_to_one_hot,
    crt_to_one_hot_packed,
    hier_crt_to_one_hot,
    numeric_to_one_hot_alg1,
    numeric_to_one_hot_alg2,
    numeric_to_one_hot_naive,
)
from ..exceptions import FixedPointOverflowError, ShapeError
from ..models import (
    ArithmeticProfile,
    BenchRecord,
    CostLedger,
    ProfileMode,
    RepresentationKind,
    SplitRule,
)
from ..packing import TileShape
from ..representations import (
    CrtBasis,
    HierBasis,
    binary_width,
    build_hier_basis,
    encode,
    find_crt_basis,
)
from ..simd import CipherVec, HeContext

logger = logging.getLogger(__name__)

NUM2ONEHOT_VARIANTS = ("alg1", "alg2", "alg1+shadow", "alg2+shadow", "eq")
COMPARATOR_CIRCUITS = (
    "bitvec-equal",
    "bitvec-equal-xorsum",
    "bitvec-equal-complex",
    "eq-approx",
    "ge-maps",
    "range-maps",
    "range-mask",
)
TRADEOFF_KINDS = (
    RepresentationKind.NUMERIC,
    RepresentationKind.BINARY,
    RepresentationKind.HIER_CRT,
    RepresentationKind.CRT,
    RepresentationKind.ONE_HOT,
)
HIER_LEAF_LIMIT = 5
PACKED_SAMPLES = 3


def next_power_of_two(n: int) -> int:
    return 1 << max(0, (n - 1).bit_length())


def is_packed(shape: TileShape) -> bool:
    """``[n/s,m/1]`` puts every sample's classes in one ciphertext; ``[n/1,m/s]`` is lanes."""
    if shape.t1 == 1:
        return False
    if shape.t2 == 1:
        return True
    raise ShapeError(f"Experiments support [n/1,m/s] and [n/s,m/1], got {shape.label()}")


def sample_values(n: int, count: int, seed: int = 0) -> np.ndarray:
    """Every value of ``[n]`` cyclically when it fits, else a seeded uniform sample."""
    if n <= count:
        return np.resize(np.arange(n), count)
    return np.random.default_rng(seed).integers(0, n, count)


def float_profile(profile: ArithmeticProfile) -> ArithmeticProfile:
    """Exact rationals explode under repeated squaring; Eq runs noiseless in floats instead."""
    if profile.mode is ProfileMode.EXACT:
        logger.info("Running an Eq circuit with noisy:0 instead of exact arithmetic")
        return ArithmeticProfile.noisy(0.0)
    return profile


def make_context(settings: Settings, profile: ArithmeticProfile, slots: int) -> HeContext:
    return replace(settings.context, slot_count=slots).make_context(profile)


def make_record(
    name: str,
    n: int,
    bandwidth: int,
    cost: CostLedger,
    settings: Settings,
    *,
    error: float,
    overflowed: bool = False,
    shape: str = "",
) -> BenchRecord:
    return BenchRecord(
        name=name,
        n=n,
        bandwidth_slots=bandwidth,
        ct_mults=cost.ct_mults,
        pt_mults=cost.pt_mults,
        rotations=cost.rotations,
        conjugations=cost.conjugations,
        depth=cost.max_depth,
        simulated_cost=round(cost.simulated_cost(settings.cost_weights), 6),
        max_abs_error=error,
        overflowed=overflowed,
        pt_free_depth=cost.max_ct_depth,
        adds=cost.adds,
        bootstraps=cost.bootstraps,
        shape=shape,
    )


def _real(ctx: HeContext, ct: CipherVec) -> np.ndarray:
    return np.asarray(ctx.decrypt(ct), dtype=float)


def one_hot_error(ctx: HeContext, lanes: Sequence[CipherVec], values: np.ndarray, n: int) -> float:
    """Largest deviation of the first ``n`` lanes from the one-hot maps of ``values``."""
    return max(float(np.max(np.abs(_real(ctx, lanes[c]) - (values == c)))) for c in range(n))


def _indicator(values: np.ndarray, c: int) -> list[int]:
    return (values == c).astype(int).tolist()


# -- trade-off ---------------------------------------------------------------


def _tradeoff_basis(kind: RepresentationKind, n: int) -> CrtBasis | HierBasis | None:
    if kind is RepresentationKind.CRT:
        return find_crt_basis(n)
    if kind is RepresentationKind.HIER_CRT:
        return build_hier_basis(n, leaf_limit=HIER_LEAF_LIMIT, split=SplitRule.TIGHT)
    return None


def _tradeoff_lanes(
    ctx: HeContext,
    kind: RepresentationKind,
    n: int,
    basis: CrtBasis | HierBasis | None,
    settings: Settings,
) -> float:
    values = sample_values(n, ctx.slot_count, ctx.seed)
    if kind is RepresentationKind.ONE_HOT:
        return 0.0
    if kind is RepresentationKind.NUMERIC:
        cfg = replace(settings.eq, domain_bound=max(n, 2))
        conv = numeric_to_one_hot_naive(ctx.encrypt(values.tolist()), n, cfg)
    elif kind is RepresentationKind.BINARY:
        bits = [ctx.encrypt(((values >> i) & 1).tolist()) for i in range(binary_width(n))]
        conv = binary_to_one_hot_lanes(bits, n)
    elif isinstance(basis, CrtBasis):
        submaps = [
            [ctx.encrypt(_indicator(values % q, r)) for r in range(q)] for q in basis.moduli
        ]
        conv = crt_to_one_hot(submaps, length=n)
    elif isinstance(basis, HierBasis):
        leaf_residues = np.array(
            [encode(int(a), kind, n=n, basis=basis).value.leaf_residues() for a in values]
        )
        leaf_maps = [
            [ctx.encrypt(_indicator(leaf_residues[:, k], r)) for r in range(q)]
            for k, (_, q) in enumerate(basis.leaves())
        ]
        conv = hier_crt_to_one_hot(leaf_maps, basis)
    else:
        raise ValueError(f"No lane conversion for {kind.value}")
    return one_hot_error(ctx, conv.lanes, values, n)


def _tradeoff_packed_one(
    ctx: HeContext,
    kind: RepresentationKind,
    n: int,
    a: int,
    basis: CrtBasis | HierBasis | None,
    settings: Settings,
) -> float:
    if kind is RepresentationKind.ONE_HOT:
        return 0.0
    if kind is RepresentationKind.NUMERIC:
        cfg = replace(settings.eq, domain_bound=max(n, 2))
        out = eq_approx(ctx.encrypt(a), ctx.encode(list(range(n))), cfg)
    elif kind is RepresentationKind.BINARY:
        size = max(2, next_power_of_two(n))
        bits = [ctx.encrypt((a >> i) & 1) for i in range(binary_width(size))]
        out = binary_to_one_hot(bits, size).output
    elif isinstance(basis, CrtBasis):
        submaps = [ctx.encrypt([int(r == a % q) for r in range(q)]) for q in basis.moduli]
        out = crt_to_one_hot_packed(submaps, basis.moduli).output
    else:
        raise ShapeError(f"{kind.value} has no packed conversion")
    got = _real(ctx, out)[:n]
    return float(np.max(np.abs(got - (np.arange(n) == a))))


def tradeoff_cell(
    n: int,
    kind: RepresentationKind,
    settings: Settings,
    profile: ArithmeticProfile,
    shape: TileShape,
) -> BenchRecord:
    """Client upload size and server cost of turning one representation into one-hot maps."""
    logger.info("Running cell n=%d representation=%s", n, kind.value)
    basis = _tradeoff_basis(kind, n)
    bandwidth = encode(0, kind, n=n, basis=basis).slot_cost
    packed = is_packed(shape)
    if kind is RepresentationKind.NUMERIC:
        profile = float_profile(profile)

    if packed:
        needed = basis.m if isinstance(basis, CrtBasis) else n
        slots = max(settings.bench.batch_slots, next_power_of_two(needed))
    else:
        slots = settings.bench.batch_slots
    ctx = make_context(settings, profile, slots)
    label = "[n/s,m/1]" if packed else "[n/1,m/s]"

    error, overflowed = 0.0, False
    cost = CostLedger()
    try:
        if packed:
            errors = []
            for i, a in enumerate(sample_values(n, PACKED_SAMPLES, ctx.seed)):
                with ctx.measure() as sample_cost:
                    errors.append(_tradeoff_packed_one(ctx, kind, n, int(a), basis, settings))
                if i == 0:
                    cost = sample_cost
            error = max(errors)
        else:
            with ctx.measure() as cost:
                error = _tradeoff_lanes(ctx, kind, n, basis, settings)
    except FixedPointOverflowError as exc:
        logger.warning("Overflow for n=%d %s: %s", n, kind.value, exc)
        error, overflowed = math.inf, True
    return make_record(
        kind.value, n, bandwidth, cost, settings, error=error, overflowed=overflowed, shape=label
    )


# -- numeric to one-hot --------------------------------------------------------


def num2onehot_cell(
    n: int, variant: str, settings: Settings, profile: ArithmeticProfile
) -> BenchRecord:
    """Exhaustive sweep over ``x`` in ``[n]`` for one numeric-to-one-hot variant."""
    if variant not in NUM2ONEHOT_VARIANTS:
        raise ValueError(f"Unknown variant {variant!r}; expected one of {NUM2ONEHOT_VARIANTS}")
    logger.info("Running cell n=%d variant=%s", n, variant)
    if variant == "eq":
        profile = float_profile(profile)
    slots = max(settings.bench.batch_slots, next_power_of_two(n))
    ctx = make_context(settings, profile, slots)
    values = sample_values(n, slots, ctx.seed)

    error, overflowed = 0.0, False
    with ctx.measure() as cost:
        try:
            x = ctx.encrypt(values.tolist())
            if variant == "eq":
                conv = numeric_to_one_hot_naive(x, n, replace(settings.eq, domain_bound=n))
            else:
                name, _, extra = variant.partition("+")
                algorithm = numeric_to_one_hot_alg1 if name == "alg1" else numeric_to_one_hot_alg2
                conv = algorithm(x, n, shadow=extra == "shadow")
            error = one_hot_error(ctx, conv.lanes, values, n)
        except FixedPointOverflowError as exc:
            logger.warning("Overflow for n=%d %s under %s: %s", n, variant, profile.label, exc)
            error, overflowed = math.inf, True
    return make_record(variant, n, 1, cost, settings, error=error, overflowed=overflowed)


# -- comparators ---------------------------------------------------------------


def comparator_cell(
    width: int, circuit: str, settings: Settings, profile: ArithmeticProfile
) -> BenchRecord:
    """All ``(a, b)`` pairs of ``width``-bit values through one comparison circuit."""
    if circuit not in COMPARATOR_CIRCUITS:
        raise ValueError(f"Unknown circuit {circuit!r}; expected one of {COMPARATOR_CIRCUITS}")
    logger.info("Running cell width=%d circuit=%s", width, circuit)
    domain = 1 << width
    if circuit == "eq-approx":
        profile = float_profile(profile)
    slots = max(settings.bench.batch_slots, next_power_of_two(domain * domain))
    ctx = make_context(settings, profile, slots)
    pairs = np.resize(np.arange(domain * domain), slots)
    a, b = pairs // domain, pairs % domain
    zt = settings.zero_test_iters
    lo, hi = (1, domain - 2) if domain >= 4 else (0, domain - 1)

    def bit_lanes(v: np.ndarray) -> list[CipherVec]:
        return [ctx.encrypt(((v >> i) & 1).tolist()) for i in range(width)]

    def one_hot_lanes(v: np.ndarray) -> list[CipherVec]:
        return [ctx.encrypt(_indicator(v, j)) for j in range(domain)]

    if circuit in ("bitvec-equal", "bitvec-equal-xorsum"):
        inputs = (bit_lanes(a), bit_lanes(b))
        n, bandwidth, expected = width, width, a == b
    elif circuit == "bitvec-equal-complex":
        rows = [[(v >> i) & 1 for i in range(width)] for v in (a, b)]
        inputs = tuple(pack_bit_pairs(ctx, np.array(r)) for r in rows)
        n, bandwidth, expected = width, width // 2, a == b
    elif circuit == "eq-approx":
        inputs = (ctx.encrypt(a.tolist()), ctx.encrypt(b.tolist()))
        n, bandwidth, expected = domain, 1, a == b
    elif circuit == "ge-maps":
        greater = [ctx.encrypt((j > a).astype(int).tolist()) for j in range(domain)]
        inputs = (greater, one_hot_lanes(b))
        n, bandwidth, expected = domain, domain, b > a
    else:
        inputs = (one_hot_lanes(a),)
        n, bandwidth, expected = domain, domain, (lo <= a) & (a <= hi)

    with ctx.measure() as cost:
        if circuit == "bitvec-equal":
            out = bitvec_equal(*inputs)
        elif circuit == "bitvec-equal-xorsum":
            out = bitvec_equal_xorsum(*inputs, zt)
        elif circuit == "bitvec-equal-complex":
            out = bitvec_equal_complex(*inputs, zt)
        elif circuit == "eq-approx":
            out = eq_approx(*inputs, replace(settings.eq, domain_bound=max(domain, 2)))
        elif circuit == "ge-maps":
            out = ge_via_maps(*inputs)
        else:
            out = range_check(inputs[0], lo, hi, method=circuit.removeprefix("range-"))
    error = float(np.max(np.abs(_real(ctx, out) - expected)))
    return make_record(circuit, n, bandwidth, cost, settings, error=error)

