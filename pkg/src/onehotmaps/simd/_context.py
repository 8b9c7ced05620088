"""Simulated CKKS context, ciphertext and plaintext slot vectors."""

from __future__ import annotations

import logging
import math
from collections.abc import Iterator, Sequence
from contextlib import contextmanager
from dataclasses import dataclass, field, replace
from fractions import Fraction
from numbers import Rational
from typing import Any, Union

import numpy as np

from ..exceptions import ContextMismatchError, DepthBudgetError, FixedPointOverflowError
from ..models import ArithmeticProfile, CostLedger, ProfileMode

logger = logging.getLogger(__name__)

SlotValues = Union[complex, float, int, Fraction, Sequence[Any], np.ndarray]


@dataclass(frozen=True, eq=False)
class CipherVec:
    """A simulated ciphertext.

    ``re`` and ``im`` hold the real and imaginary slot parts (object arrays of
    ``Fraction`` in Exact mode, float64 otherwise). ``depth`` counts every
    multiplication; ``ct_depth`` counts ciphertext-ciphertext multiplications
    only.
    """

    context: HeContext = field(repr=False)
    re: np.ndarray = field(repr=False)
    im: np.ndarray = field(repr=False)
    depth: int = 0
    ct_depth: int = 0
    magnitude_bound: float = 0.0

    @property
    def slots(self) -> np.ndarray:
        return self.re.astype(float) + 1j * self.im.astype(float)

    def __len__(self) -> int:
        return len(self.re)


@dataclass(frozen=True, eq=False)
class PlainVec:
    """An encoded plaintext slot vector (masks, constants, class values)."""

    context: HeContext = field(repr=False)
    re: np.ndarray = field(repr=False)
    im: np.ndarray = field(repr=False)

    @property
    def slots(self) -> np.ndarray:
        return self.re.astype(float) + 1j * self.im.astype(float)

    def __len__(self) -> int:
        return len(self.re)


class HeContext:
    """Slot count, arithmetic profile, depth budget and the running cost ledger.

    A context and its ledger belong to one thread of control. Parallel work
    uses one context per worker and merges the ledgers with ``+``.
    """

    def __init__(
        self,
        slot_count: int = 2**15,
        profile: ArithmeticProfile | None = None,
        *,
        depth_budget: int | None = None,
        auto_bootstrap: bool = False,
        seed: int = 0,
    ) -> None:
        if slot_count < 1 or slot_count & (slot_count - 1):
            raise ValueError(f"slot_count must be a power of two, got {slot_count}")
        if depth_budget is not None and depth_budget < 1:
            raise ValueError("depth_budget must be at least 1")
        self.slot_count = slot_count
        self.profile = profile or ArithmeticProfile.exact()
        self.depth_budget = depth_budget
        self.auto_bootstrap = auto_bootstrap
        self.seed = seed
        self.ledger = CostLedger()
        self._recorders: list[CostLedger] = []
        self._rng = np.random.default_rng(seed)

    def __repr__(self) -> str:
        return (
            f"HeContext(slot_count={self.slot_count}, profile={self.profile.label!r}, "
            f"depth_budget={self.depth_budget})"
        )

    @property
    def exact(self) -> bool:
        return self.profile.mode is ProfileMode.EXACT

    # -- encoding ----------------------------------------------------------

    def _lift(self, values: SlotValues) -> tuple[np.ndarray, np.ndarray]:
        """Turn a scalar or a sequence of at most ``slot_count`` values into slot arrays."""
        s = self.slot_count
        if np.isscalar(values) or isinstance(values, (Fraction, Rational)):
            items: list[Any] = [values] * s
        else:
            items = list(np.asarray(values, dtype=object).ravel())
            if len(items) > s:
                raise ValueError(f"{len(items)} values do not fit into {s} slots")
            items += [0] * (s - len(items))

        if self.exact:
            re = np.empty(s, dtype=object)
            im = np.empty(s, dtype=object)
            for i, v in enumerate(items):
                re[i], im[i] = _rational_parts(v)
            return re, im

        z = np.asarray([complex(v) for v in items], dtype=complex)
        return z.real.copy(), z.imag.copy()

    def _round(self, arr: np.ndarray) -> np.ndarray:
        if self.profile.mode is not ProfileMode.FIXED_POINT:
            return arr
        return np.ldexp(np.round(np.ldexp(arr, self.profile.frac_bits)), -self.profile.frac_bits)

    def _settle(
        self, re: np.ndarray, im: np.ndarray, operation: str, *, noise: bool = False
    ) -> tuple[np.ndarray, np.ndarray, float]:
        """Apply the profile to a raw result: noise, rounding, bound, overflow check."""
        mode = self.profile.mode
        if mode is ProfileMode.NOISY and noise and self.profile.noise_sigma > 0:
            sigma = self.profile.noise_sigma
            re = re + self._rng.normal(0.0, sigma, self.slot_count)
            im = im + self._rng.normal(0.0, sigma, self.slot_count)
        elif mode is ProfileMode.FIXED_POINT:
            re, im = self._round(re), self._round(im)

        bound = float((np.abs(re) + np.abs(im)).max())
        if mode is ProfileMode.FIXED_POINT and bound > self.profile.overflow_limit:
            logger.debug("Overflow in %s: bound %.6g", operation, bound)
            raise FixedPointOverflowError(bound, self.profile.overflow_limit, operation)
        return re, im, bound

    def encrypt(self, values: SlotValues) -> CipherVec:
        """Encrypt values into a fresh depth-0 ciphertext (zero padded to the slot count)."""
        re, im = self._lift(values)
        re, im, bound = self._settle(re, im, "encrypt", noise=True)
        return CipherVec(self, re, im, 0, 0, bound)

    def encode(self, values: SlotValues) -> PlainVec:
        re, im = self._lift(values)
        return PlainVec(self, self._round(re), self._round(im))

    def constant(self, value: complex | float | Fraction) -> PlainVec:
        """A plaintext holding ``value`` in every slot."""
        return self.encode(value)

    def decrypt(self, ct: CipherVec) -> np.ndarray:
        """Real parts of the slots (``Fraction`` objects in Exact mode)."""
        self.check(ct)
        return ct.re.copy()

    def decrypt_complex(self, ct: CipherVec) -> np.ndarray:
        self.check(ct)
        return ct.slots

    # -- bookkeeping -------------------------------------------------------

    def check(self, *operands: CipherVec | PlainVec) -> None:
        for op in operands:
            if op.context is not self:
                raise ContextMismatchError(
                    f"Operand belongs to {op.context!r}, expected {self!r}"
                )

    def charge(self, counter: str, count: int = 1) -> None:
        for ledger in (self.ledger, *self._recorders):
            setattr(ledger, counter, getattr(ledger, counter) + count)

    def _observe(self, depth: int, ct_depth: int) -> None:
        for ledger in (self.ledger, *self._recorders):
            ledger.observe(depth, ct_depth)

    def emit(
        self,
        re: np.ndarray,
        im: np.ndarray,
        *,
        depth: int,
        ct_depth: int,
        operation: str,
        counter: str | None,
        noise: bool = False,
    ) -> CipherVec:
        """Settle a raw result, charge the ledger and wrap it as a ciphertext."""
        re, im, bound = self._settle(re, im, operation, noise=noise)
        if counter is not None:
            self.charge(counter)
        self._observe(depth, ct_depth)
        return CipherVec(self, re, im, depth, ct_depth, bound)

    def make_room(
        self, operands: tuple[CipherVec, ...], result_depth: int
    ) -> tuple[CipherVec, ...]:
        """Enforce the depth budget before an operation producing ``result_depth``."""
        if self.depth_budget is None or result_depth <= self.depth_budget:
            return operands
        if not self.auto_bootstrap:
            raise DepthBudgetError(result_depth, self.depth_budget)
        logger.warning(
            "Depth %d exceeds budget %d, bootstrapping operands", result_depth, self.depth_budget
        )
        refreshed: dict[int, CipherVec] = {}
        for op in operands:
            if op.depth > 0 and id(op) not in refreshed:
                refreshed[id(op)] = self.bootstrap(op)
        return tuple(refreshed.get(id(op), op) for op in operands)

    def bootstrap(self, ct: CipherVec) -> CipherVec:
        """Reset depth to zero without changing values."""
        self.check(ct)
        self.charge("bootstraps")
        return replace(ct, depth=0, ct_depth=0)

    @contextmanager
    def measure(self) -> Iterator[CostLedger]:
        """Record only the operations issued inside the ``with`` block.

        Blocks nest; each recorder sees every operation issued while it is open.
        """
        recorder = CostLedger()
        self._recorders.append(recorder)
        try:
            yield recorder
        finally:
            # ledgers compare by value, so equal recorders must not be confused
            index = next(i for i, r in enumerate(self._recorders) if r is recorder)
            del self._recorders[index]

    def reset(self) -> CostLedger:
        """Swap in an empty ledger and return the old one."""
        old, self.ledger = self.ledger, CostLedger()
        return old

    def zeros(self) -> np.ndarray:
        if self.exact:
            out = np.empty(self.slot_count, dtype=object)
            out[:] = [Fraction(0)] * self.slot_count
            return out
        return np.zeros(self.slot_count)


def _rational_parts(value: Any) -> tuple[Fraction, Fraction]:
    if isinstance(value, (Fraction, int, np.integer)):
        return Fraction(int(value) if isinstance(value, np.integer) else value), Fraction(0)
    if isinstance(value, Rational):
        return Fraction(value.numerator, value.denominator), Fraction(0)
    z = complex(value)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise ValueError(f"Cannot encode non-finite value {value!r}")
    return Fraction(z.real), Fraction(z.imag)
