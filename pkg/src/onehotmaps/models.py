"""Data models for onehotmaps."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field, fields
from enum import Enum
from typing import TYPE_CHECKING, Any, Union

if TYPE_CHECKING:
    from .simd._context import CipherVec


class ProfileMode(Enum):
    """Arithmetic fidelity of the SIMD simulator."""

    EXACT = "exact"
    FIXED_POINT = "fixed"
    NOISY = "noisy"


class RepresentationKind(Enum):
    """The six client-side input representations."""

    ONE_HOT = "one-hot"
    NUMERIC = "numeric"
    CRT = "crt"
    HIER_CRT = "hier-crt"
    NUMERIC_CRT = "numeric-crt"
    BINARY = "binary"


class Orientation(Enum):
    """Greater map (indices above a) or less-than map (indices below a)."""

    GREATER = "greater"
    LESS = "less"


class SplitRule(Enum):
    """How a hierarchical CRT node with modulus q picks its two children."""

    CEIL_SQRT = "ceil-sqrt"  # (ceil(sqrt q), ceil(sqrt q) + 1)
    TIGHT = "tight"  # smallest (p, p + 1) with p (p + 1) >= q


@dataclass(frozen=True)
class ArithmeticProfile:
    """Simulator arithmetic mode and its parameters."""

    mode: ProfileMode = ProfileMode.EXACT
    frac_bits: int = 42
    int_bits: int = 18
    noise_sigma: float = 0.0

    def __post_init__(self) -> None:
        if self.mode is ProfileMode.FIXED_POINT and (self.frac_bits <= 0 or self.int_bits <= 0):
            raise ValueError("frac_bits and int_bits must be positive in FixedPoint mode")
        if self.mode is ProfileMode.NOISY and self.noise_sigma < 0:
            raise ValueError("noise_sigma must be non-negative")

    @classmethod
    def exact(cls) -> ArithmeticProfile:
        return cls(ProfileMode.EXACT)

    @classmethod
    def fixed_point(cls, frac_bits: int = 42, int_bits: int = 18) -> ArithmeticProfile:
        return cls(ProfileMode.FIXED_POINT, frac_bits=frac_bits, int_bits=int_bits)

    @classmethod
    def noisy(cls, noise_sigma: float) -> ArithmeticProfile:
        return cls(ProfileMode.NOISY, noise_sigma=noise_sigma)

    @property
    def label(self) -> str:
        """The profile in CLI notation (``exact``, ``fixed:42:16``, ``noisy:1e-06``)."""
        if self.mode is ProfileMode.FIXED_POINT:
            return f"fixed:{self.frac_bits}:{self.int_bits}"
        if self.mode is ProfileMode.NOISY:
            return f"noisy:{self.noise_sigma:g}"
        return "exact"

    @property
    def overflow_limit(self) -> float:
        return math.ldexp(1.0, self.int_bits)


@dataclass(frozen=True)
class CostWeights:
    """Weights of the synthetic ``simulated_cost`` column."""

    ct_mult: float = 1.0
    pt_mult: float = 0.1
    add: float = 0.05
    rotation: float = 0.05
    conjugation: float = 0.05
    bootstrap: float = 0.0


@dataclass
class CostLedger:
    """Operation counters for one computation.

    Counters only grow. ``max_depth`` counts plaintext multiplications as one
    level; ``max_ct_depth`` counts ciphertext-ciphertext multiplications only.
    """

    ct_mults: int = 0
    pt_mults: int = 0
    adds: int = 0
    rotations: int = 0
    conjugations: int = 0
    bootstraps: int = 0
    max_depth: int = 0
    max_ct_depth: int = 0

    def observe(self, depth: int, ct_depth: int) -> None:
        self.max_depth = max(self.max_depth, depth)
        self.max_ct_depth = max(self.max_ct_depth, ct_depth)

    def __add__(self, other: CostLedger) -> CostLedger:
        """Merge two ledgers: counters add, depths take the maximum."""
        return CostLedger(
            ct_mults=self.ct_mults + other.ct_mults,
            pt_mults=self.pt_mults + other.pt_mults,
            adds=self.adds + other.adds,
            rotations=self.rotations + other.rotations,
            conjugations=self.conjugations + other.conjugations,
            bootstraps=self.bootstraps + other.bootstraps,
            max_depth=max(self.max_depth, other.max_depth),
            max_ct_depth=max(self.max_ct_depth, other.max_ct_depth),
        )

    def copy(self) -> CostLedger:
        return CostLedger(**asdict(self))

    @property
    def mults(self) -> int:
        return self.ct_mults + self.pt_mults

    def simulated_cost(self, weights: CostWeights | None = None) -> float:
        w = weights or CostWeights()
        return (
            w.ct_mult * self.ct_mults
            + w.pt_mult * self.pt_mults
            + w.add * self.adds
            + w.rotation * self.rotations
            + w.conjugation * self.conjugations
            + w.bootstrap * self.bootstraps
        )

    def to_dict(self) -> dict[str, int]:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> CostLedger:
        names = {f.name for f in fields(cls)}
        unknown = set(data) - names
        if unknown:
            raise ValueError(f"Unknown ledger fields: {sorted(unknown)}")
        return cls(**{k: int(v) for k, v in data.items()})


@dataclass(frozen=True)
class EqConfig:
    """Parameters of the approximate equality circuit.

    The circuit first computes ``t = (1 - ((x - y) / n)^2)^(2^r)`` with ``r``
    squarings, which pushes every pair at distance ``>= alpha`` below 1/4,
    then applies ``sharpen_iters`` rounds of ``t^2 (3 - 2t)``.
    """

    alpha: float = 1.0
    beta: float = 0.05
    sharpen_iters: int = 4
    domain_bound: int = 100

    def __post_init__(self) -> None:
        if self.alpha <= 0 or self.beta <= 0:
            raise ValueError("alpha and beta must be positive")
        if self.sharpen_iters < 1:
            raise ValueError("sharpen_iters must be at least 1")
        if self.domain_bound < 2:
            raise ValueError("domain_bound must be at least 2")

    @property
    def squarings(self) -> int:
        ratio = (self.domain_bound / self.alpha) ** 2
        return max(0, math.ceil(math.log2(math.log(4.0) * ratio)))

    @property
    def advertised_depth(self) -> int:
        return 2 + self.squarings + 2 * self.sharpen_iters

    def predicted_error(self) -> float:
        """Worst-case output for inputs at distance >= alpha (Exact arithmetic)."""
        t = math.exp(-(2 ** self.squarings) * (self.alpha / self.domain_bound) ** 2)
        for _ in range(self.sharpen_iters):
            t = t * t * (3 - 2 * t)
        return t

    @classmethod
    def for_domain(cls, domain_bound: int, beta: float = 0.05, alpha: float = 1.0) -> EqConfig:
        """Smallest number of sharpening rounds meeting ``beta`` on ``[domain_bound]``."""
        iters = 1
        while cls(alpha, beta, iters, domain_bound).predicted_error() > beta:
            iters += 1
        return cls(alpha, beta, iters, domain_bound)


@dataclass(frozen=True)
class Conversion:
    """A server-side conversion result and the cost of producing it.

    ``slot_mults`` counts multiplications slot-wise over the logical indices
    touched, next to the vector-level counters in ``cost``.
    """

    output: Union[CipherVec, tuple[CipherVec, ...]]
    cost: CostLedger
    slot_mults: int = 0
    stages: dict[str, CostLedger] = field(default_factory=dict)

    @property
    def lanes(self) -> tuple[CipherVec, ...]:
        if isinstance(self.output, tuple):
            return self.output
        return (self.output,)


@dataclass(frozen=True)
class BenchRecord:
    """One row of an experiment report."""

    name: str
    n: int
    bandwidth_slots: int
    ct_mults: int
    pt_mults: int
    rotations: int
    conjugations: int
    depth: int
    simulated_cost: float
    max_abs_error: float
    overflowed: bool
    pt_free_depth: int = 0
    adds: int = 0
    bootstraps: int = 0
    shape: str = ""

    def __post_init__(self) -> None:
        if self.max_abs_error < 0:
            raise ValueError("max_abs_error must be non-negative")

    @classmethod
    def columns(cls) -> list[str]:
        return [f.name for f in fields(cls)]
