"""Experiment runners, report writers and the command line."""

from ._experiments import (
    ShadowBoundsRow,
    run_comparator_suite,
    run_comparator_suite_async,
    run_num2onehot,
    run_num2onehot_async,
    run_shadow_bounds,
    run_tradeoff,
    run_tradeoff_async,
)
from ._report import (
    format_shadow_table,
    records_to_csv,
    records_to_json,
    render,
    shadow_rows_to_csv,
    shadow_rows_to_json,
    write_text,
)

__all__ = [
    "ShadowBoundsRow",
    "format_shadow_table",
    "records_to_csv",
    "records_to_json",
    "render",
    "run_comparator_suite",
    "run_comparator_suite_async",
    "run_num2onehot",
    "run_num2onehot_async",
    "run_shadow_bounds",
    "run_tradeoff",
    "run_tradeoff_async",
    "shadow_rows_to_csv",
    "shadow_rows_to_json",
    "write_text",
]
