"""Shared test fixtures."""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

import numpy as np
import pytest

from onehotmaps.models import ArithmeticProfile
from onehotmaps.simd import CipherVec, HeContext

FIXTURES_DIR = Path(__file__).parent / "fixtures"


def load_fixture(name: str) -> dict[str, Any]:
    """Load a JSON fixture file."""
    return json.loads((FIXTURES_DIR / name).read_text())


def real(ct: CipherVec) -> np.ndarray:
    """Decrypted real parts as floats."""
    return np.asarray(ct.context.decrypt(ct), dtype=float)


def one_hot_lanes(ctx: HeContext, values: np.ndarray, n: int) -> list[CipherVec]:
    """Encrypt the one-hot maps of ``values`` as ``n`` lanes."""
    return [ctx.encrypt((values == c).astype(int).tolist()) for c in range(n)]


@pytest.fixture()
def ctx() -> HeContext:
    """A small exact context."""
    return HeContext(8)


@pytest.fixture()
def ctx16() -> HeContext:
    return HeContext(16)


@pytest.fixture()
def float_ctx() -> HeContext:
    """Noiseless floating-point arithmetic, for circuits with many squarings."""
    return HeContext(64, ArithmeticProfile.noisy(0.0))


@pytest.fixture()
def hier_example() -> dict[str, Any]:
    return load_fixture("hier_example.json")


@pytest.fixture()
def crt_example() -> dict[str, Any]:
    return load_fixture("crt_example.json")
