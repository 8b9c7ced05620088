"""``onehotmaps`` command line: run an experiment and write its report."""

from __future__ import annotations

import argparse
import logging
import sys
from collections.abc import Sequence

from .._config import OUTPUT_FORMATS, load_settings, parse_profile
from .._version import __version__
from ..exceptions import OneHotMapsError
from ._experiments import run_comparator_suite, run_num2onehot, run_shadow_bounds, run_tradeoff
from ._report import (
    format_shadow_table,
    render,
    shadow_rows_to_csv,
    shadow_rows_to_json,
    write_text,
)

logger = logging.getLogger(__name__)


def _int_list(text: str) -> tuple[int, ...]:
    try:
        values = tuple(int(part) for part in text.split(",") if part.strip())
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected integers, got {text!r}") from exc
    if not values:
        raise argparse.ArgumentTypeError("expected at least one integer")
    return values


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="onehotmaps",
        description="Cost-model experiments for one-hot map conversions.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON configuration file")
    common.add_argument("--profile", help="exact | fixed:<frac>:<int> | noisy:<sigma>")
    common.add_argument("--out", help="output file (default: stdout)")
    common.add_argument("-v", "--verbose", action="store_true", help="debug logging")

    sub = parser.add_subparsers(dest="command", required=True)
    tradeoff = sub.add_parser("tradeoff", parents=[common], help="bandwidth against server cost")
    tradeoff.add_argument("--format", choices=OUTPUT_FORMATS, help="report format")
    tradeoff.add_argument("--n", type=_int_list, help="comma-separated category counts")
    tradeoff.add_argument("--shape", help='tile shape, "[n/1,m/s]" or "[n/s,m/1]"')

    num = sub.add_parser("num2onehot", parents=[common], help="numeric to one-hot precision")
    num.add_argument("--format", choices=OUTPUT_FORMATS, help="report format")
    num.add_argument("--n", type=_int_list, help="comma-separated category counts")

    bounds = sub.add_parser("shadow-bounds", parents=[common], help="shadow-tree bounds table")
    bounds.add_argument("--max-level", type=int, default=8, help="largest log2 n (at most 8)")
    bounds.add_argument(
        "--format", choices=(*OUTPUT_FORMATS, "text"), default=None, help="report format"
    )

    comparators = sub.add_parser("comparators", parents=[common], help="comparison circuits")
    comparators.add_argument("--format", choices=OUTPUT_FORMATS, help="report format")
    comparators.add_argument("--n", type=_int_list, help="comma-separated bit widths")
    return parser


def run(args: argparse.Namespace) -> None:
    settings = load_settings(args.config)
    profile = parse_profile(args.profile) if args.profile else None
    settings = settings.with_overrides(
        n_values=args.n if args.command in ("tradeoff", "num2onehot") else None,
        shape=getattr(args, "shape", None),
        format=args.format if args.format in OUTPUT_FORMATS else None,
    )

    if args.command == "shadow-bounds":
        rows = run_shadow_bounds(args.max_level)
        fmt = args.format or "text"
        if fmt == "text":
            text = format_shadow_table(rows)
        elif fmt == "json":
            text = shadow_rows_to_json(rows)
        else:
            text = shadow_rows_to_csv(rows)
        write_text(text, args.out)
        return

    if args.command == "tradeoff":
        records = run_tradeoff(settings, profile=profile)
    elif args.command == "num2onehot":
        records = run_num2onehot(settings, profile=profile)
    else:
        records = run_comparator_suite(settings, widths=args.n, profile=profile)
    logger.info("%s produced %d records", args.command, len(records))
    write_text(render(records, settings.bench.format), args.out)


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )
    try:
        run(args)
    except (OneHotMapsError, ValueError) as exc:
        print(f"onehotmaps: error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
