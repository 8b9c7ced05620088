"""Experiment runners: fan cells out, collect records in a fixed order."""

from __future__ import annotations

import asyncio
import logging
from collections.abc import Callable, Sequence
from dataclasses import dataclass
from typing import Any

from tqdm import tqdm
from tqdm.asyncio import tqdm as atqdm

from .._config import Settings, parse_profile
from ..conversions import shadow_bounds
from ..models import ArithmeticProfile, BenchRecord, RepresentationKind
from ..packing import parse_shape
from ._cells import (
    COMPARATOR_CIRCUITS,
    NUM2ONEHOT_VARIANTS,
    TRADEOFF_KINDS,
    comparator_cell,
    num2onehot_cell,
    tradeoff_cell,
)

logger = logging.getLogger(__name__)

TRADEOFF_N = (100, 500, 1000, 5000, 10000)
NUM2ONEHOT_N = (4, 8, 16, 32, 64)
COMPARATOR_WIDTHS = (2, 4)

DEFAULT_PROFILES = {
    "tradeoff": "fixed:42:18",
    "num2onehot": "fixed:42:30",
    "comparators": "exact",
}

Cell = Callable[[], BenchRecord]


@dataclass(frozen=True)
class ShadowBoundsRow:
    """One row of the shadow-tree bounds table."""

    levels: int
    n: int
    minimum: float
    maximum: float
    log2_min: float
    log2_max: float

    def to_dict(self) -> dict[str, Any]:
        return {
            "levels": self.levels,
            "n": self.n,
            "min": self.minimum,
            "max": self.maximum,
            "log2_min": self.log2_min,
            "log2_max": self.log2_max,
        }


def _profile(
    settings: Settings, experiment: str, profile: ArithmeticProfile | None
) -> ArithmeticProfile:
    return profile or settings.context.profile or parse_profile(DEFAULT_PROFILES[experiment])


def _n_values(
    settings: Settings, n_values: Sequence[int] | None, default: Sequence[int]
) -> list[int]:
    values = list(n_values or settings.bench.n_values or default)
    if any(n < 2 for n in values):
        raise ValueError(f"n values must be at least 2, got {values}")
    return values


def _tradeoff_cells(
    settings: Settings, n_values: Sequence[int] | None, profile: ArithmeticProfile | None
) -> list[Cell]:
    chosen = _profile(settings, "tradeoff", profile)
    shape = parse_shape(settings.bench.shape, settings.bench.batch_slots)
    cells: list[Cell] = []
    for n in _n_values(settings, n_values, TRADEOFF_N):
        for kind in TRADEOFF_KINDS:
            if kind is RepresentationKind.HIER_CRT and shape.t1 != 1:
                logger.warning(
                    "Skipping %s: no packed conversion for shape %s", kind.value, shape.label()
                )
                continue
            cells.append(lambda n=n, kind=kind: tradeoff_cell(n, kind, settings, chosen, shape))
    return cells


def _num2onehot_cells(
    settings: Settings, n_values: Sequence[int] | None, profile: ArithmeticProfile | None
) -> list[Cell]:
    chosen = _profile(settings, "num2onehot", profile)
    return [
        lambda n=n, variant=variant: num2onehot_cell(n, variant, settings, chosen)
        for n in _n_values(settings, n_values, NUM2ONEHOT_N)
        for variant in NUM2ONEHOT_VARIANTS
    ]


def _comparator_cells(
    settings: Settings, widths: Sequence[int] | None, profile: ArithmeticProfile | None
) -> list[Cell]:
    chosen = _profile(settings, "comparators", profile)
    cells: list[Cell] = []
    for width in widths or COMPARATOR_WIDTHS:
        if width < 1:
            raise ValueError(f"Bit widths must be positive, got {width}")
        for circuit in COMPARATOR_CIRCUITS:
            if circuit == "bitvec-equal-complex" and width % 2:
                logger.info("Skipping %s for odd width %d", circuit, width)
                continue
            cells.append(lambda w=width, c=circuit: comparator_cell(w, c, settings, chosen))
    return cells


def _run(cells: list[Cell], desc: str) -> list[BenchRecord]:
    return [cell() for cell in tqdm(cells, desc=desc, disable=len(cells) < 3)]


async def _run_async(cells: list[Cell], desc: str, max_concurrency: int) -> list[BenchRecord]:
    """Run cells in worker threads; each cell owns its context, so results merge by position."""
    sem = asyncio.Semaphore(max_concurrency)

    async def _one(cell: Cell) -> BenchRecord:
        async with sem:
            return await asyncio.to_thread(cell)

    return list(await atqdm.gather(*(_one(c) for c in cells), desc=desc, disable=len(cells) < 3))


def run_tradeoff(
    settings: Settings | None = None,
    *,
    n_values: Sequence[int] | None = None,
    profile: ArithmeticProfile | None = None,
) -> list[BenchRecord]:
    """Bandwidth against server cost for every representation and ``n``.

    Parameters
    ----------
    settings : Settings, optional
        Context, cost-weight and bench settings (defaults when omitted).
    n_values : sequence of int, optional
        Category counts; default ``(100, 500, 1000, 5000, 10000)``.
    profile : ArithmeticProfile, optional
        Arithmetic profile; default ``fixed:42:18``.

    Returns
    -------
    list[BenchRecord]
        One record per ``(n, representation)``, ordered numeric, binary,
        hier-crt, crt, one-hot within each ``n``.
    """
    settings = settings or Settings()
    return _run(_tradeoff_cells(settings, n_values, profile), "Trade-off cells")


async def run_tradeoff_async(
    settings: Settings | None = None,
    *,
    n_values: Sequence[int] | None = None,
    profile: ArithmeticProfile | None = None,
) -> list[BenchRecord]:
    settings = settings or Settings()
    cells = _tradeoff_cells(settings, n_values, profile)
    return await _run_async(cells, "Trade-off cells", settings.bench.max_concurrency)


def run_num2onehot(
    settings: Settings | None = None,
    *,
    n_values: Sequence[int] | None = None,
    profile: ArithmeticProfile | None = None,
) -> list[BenchRecord]:
    """Precision and overflow of every numeric-to-one-hot variant over all ``x`` in ``[n]``.

    Overflowing cells are reported with ``overflowed=True`` and an infinite error.
    """
    settings = settings or Settings()
    return _run(_num2onehot_cells(settings, n_values, profile), "Numeric to one-hot")


async def run_num2onehot_async(
    settings: Settings | None = None,
    *,
    n_values: Sequence[int] | None = None,
    profile: ArithmeticProfile | None = None,
) -> list[BenchRecord]:
    settings = settings or Settings()
    cells = _num2onehot_cells(settings, n_values, profile)
    return await _run_async(cells, "Numeric to one-hot", settings.bench.max_concurrency)


def run_comparator_suite(
    settings: Settings | None = None,
    *,
    widths: Sequence[int] | None = None,
    profile: ArithmeticProfile | None = None,
) -> list[BenchRecord]:
    """Every comparison circuit on all pairs of ``width``-bit values."""
    settings = settings or Settings()
    return _run(_comparator_cells(settings, widths, profile), "Comparators")


async def run_comparator_suite_async(
    settings: Settings | None = None,
    *,
    widths: Sequence[int] | None = None,
    profile: ArithmeticProfile | None = None,
) -> list[BenchRecord]:
    settings = settings or Settings()
    cells = _comparator_cells(settings, widths, profile)
    return await _run_async(cells, "Comparators", settings.bench.max_concurrency)


def run_shadow_bounds(max_level: int = 8) -> list[ShadowBoundsRow]:
    """Smallest and largest positive shadow-tree constants for ``n = 2^l`` up to ``max_level``."""
    if not 2 <= max_level <= 8:
        raise ValueError(f"max_level must lie in [2, 8], got {max_level}")
    rows = []
    for levels in range(2, max_level + 1):
        bounds = shadow_bounds(levels)
        rows.append(
            ShadowBoundsRow(
                levels,
                1 << levels,
                float(bounds.minimum),
                float(bounds.maximum),
                bounds.log2_min,
                bounds.log2_max,
            )
        )
        logger.info("Shadow bounds for l=%d: max %.6g", levels, rows[-1].maximum)
    return rows
