"""Deterministic CSV, JSON and text renderings of experiment results."""

from __future__ import annotations

import csv
import io
import json
import math
from collections.abc import Sequence
from dataclasses import asdict
from pathlib import Path
from typing import Any

from ..models import BenchRecord
from ._experiments import ShadowBoundsRow


def _json_safe(value: Any) -> Any:
    if isinstance(value, float) and not math.isfinite(value):
        return None
    return value


def records_to_csv(records: Sequence[BenchRecord]) -> str:
    """CSV with one column per record field, in declaration order."""
    buffer = io.StringIO()
    writer = csv.DictWriter(buffer, fieldnames=BenchRecord.columns(), lineterminator="\n")
    writer.writeheader()
    for record in records:
        writer.writerow(asdict(record))
    return buffer.getvalue()


def records_to_json(records: Sequence[BenchRecord]) -> str:
    """JSON array of records; infinite errors become ``null``."""
    rows = [{k: _json_safe(v) for k, v in asdict(r).items()} for r in records]
    return json.dumps(rows, indent=2) + "\n"


def shadow_rows_to_csv(rows: Sequence[ShadowBoundsRow]) -> str:
    buffer = io.StringIO()
    fields = ["levels", "n", "min", "max", "log2_min", "log2_max"]
    writer = csv.DictWriter(buffer, fieldnames=fields, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow(row.to_dict())
    return buffer.getvalue()


def shadow_rows_to_json(rows: Sequence[ShadowBoundsRow]) -> str:
    return json.dumps([row.to_dict() for row in rows], indent=2) + "\n"


def format_shadow_table(rows: Sequence[ShadowBoundsRow]) -> str:
    """Plain-text table of the bounds, values rounded for display."""
    lines = [f"{'l':>2} {'n':>5} {'min':>10} {'max':>14} {'log2 min':>9} {'log2 max':>9}"]
    for row in rows:
        lines.append(
            f"{row.levels:>2} {row.n:>5} {row.minimum:>10.5f} {row.maximum:>14,.1f} "
            f"{row.log2_min:>9.2f} {row.log2_max:>9.2f}"
        )
    return "\n".join(lines) + "\n"


def render(records: Sequence[BenchRecord], fmt: str) -> str:
    if fmt == "csv":
        return records_to_csv(records)
    if fmt == "json":
        return records_to_json(records)
    raise ValueError(f"Unknown format {fmt!r}")


def write_text(text: str, out: str | Path | None) -> None:
    """Write to ``out``, or to stdout when ``out`` is None or ``-``."""
    if out is None or str(out) == "-":
        print(text, end="")
        return
    path = Path(out)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8")
