"""Command-line front end: analyze | simulate | compare | list-configs.

Flags mirror the config keys and override file values; without
--config, the flags alone define a single experiment section. Exit
status: 0 on success, 2 on configuration errors, 3 on numerical
failures (which also leave error-marker rows in the CSV).
"""

from __future__ import annotations

import argparse
import sys

from .core import ConfigError, NumericalFailure
from . import harness

_FLAG_KEYS = (
    "problem",
    "method",
    "relax",
    "cycle",
    "levels",
    "m",
    "m2",
    "nx",
    "nt",
    "dx",
    "dt",
    "c",
    "rho",
    "mu",
    "htheta",
    "homega",
    "norm",
    "scope",
    "kmax",
    "seed",
    "iters",
    "guess",
    "error_scope",
    "ic_amplitude",
    "ic_theta",
    "label",
    "average_window",
    "engine",
)


def _add_common(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--config", help="config file path or bundled config name")
    sub.add_argument("--out", help="output CSV path (default: stdout)")
    sub.add_argument("--emit-argmax-map", action="store_true", help="emit per-frequency rows")
    sub.add_argument(
        "--allow-large-exact2",
        action="store_true",
        help="permit exact 2-norms of gated large full-scope blocks",
    )
    for key in _FLAG_KEYS:
        sub.add_argument(f"--{key.replace('_', '-')}", dest=key)


def _overrides(args: argparse.Namespace) -> dict[str, str]:
    over = {k: getattr(args, k) for k in _FLAG_KEYS if getattr(args, k, None) is not None}
    if args.emit_argmax_map:
        over["emit_argmax_map"] = "true"
    if args.allow_large_exact2:
        over["allow_large_exact2"] = "true"
    return over


def _load(args: argparse.Namespace, forced_methods: str | None) -> list[harness.Experiment]:
    overrides = _overrides(args)
    if args.config:
        # `simulate` turns every section into a solver run; `compare`
        # trusts the config to pair prediction and measurement sections.
        if forced_methods == "measured":
            overrides["method"] = forced_methods
        return harness.load_config(args.config, overrides)
    if forced_methods is not None:
        overrides["method"] = forced_methods
    return harness.experiments_from_overrides(overrides)


def _annotate_compare(rows: list[harness.ResultRow]) -> None:
    predictions = {
        (r.relax, r.m, r.m2, r.cycle, r.k): r.value
        for r in rows
        if r.method == "sama" and not r.variant.endswith("+map")
    }
    for row in rows:
        if row.method != "measured":
            continue
        bound = predictions.get((row.relax, row.m, row.m2, row.cycle, row.k))
        if bound is not None:
            row.extra["predicted"] = harness._fmt(bound)
            row.extra["within_bound"] = "1" if row.value <= bound + 1e-9 else "0"


def _emit(rows: list[harness.ResultRow], out: str | None) -> None:
    text = harness.rows_to_csv(rows)
    if out:
        with open(out, "w") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="pintconv",
        description="Convergence predictions and measurements for parallel-in-time methods",
    )
    commands = parser.add_subparsers(dest="command", required=True)
    for name, help_text in (
        ("analyze", "run analysis engines (lfa/sama/ra)"),
        ("simulate", "run the reference MGRIT solver"),
        ("compare", "run matched SAMA predictions and measured factors"),
    ):
        _add_common(commands.add_parser(name, help=help_text))
    commands.add_parser("list-configs", help="list bundled figure configs")

    args = parser.parse_args(argv)
    if args.command == "list-configs":
        for name in harness.bundled_configs():
            print(name)
        return 0

    try:
        forced = {"simulate": "measured", "compare": "sama,measured"}.get(args.command)
        experiments = _load(args, forced)
        rows, status = harness.run_experiments(experiments)
        if args.command == "compare":
            _annotate_compare(rows)
        _emit(rows, args.out)
        return status
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2
    except NumericalFailure as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
