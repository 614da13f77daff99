"""Command-line surface: search, verify, factor, enumerate.

Exit codes: 0 on success (all identities verified, sweep completed), 1 when a
verification finds a mismatch, 2 for usage and configuration errors.  JSON
reports go to --out when given, otherwise to stdout; progress and warnings go
to stderr so piped output stays machine-readable.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .partitions import ConditionSet, count_sum_side, enumerate_sum_side
from .recursions import BUILTIN_IDENTITIES, verify_identity
from .search import SearchGrid, run_search
from .series import TruncatedSeries, euler_factorize


class _ConfigError(Exception):
    """Bad input file or flags; maps to exit code 2."""


def _load_json(path: str):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise _ConfigError(f"{path}: {exc.strerror or exc}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise _ConfigError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from exc


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def _cmd_search(args) -> int:
    obj = _load_json(args.config)
    try:
        grid = SearchGrid.from_json(obj)
    except (ValueError, KeyError, TypeError) as exc:
        raise _ConfigError(f"{args.config}: {exc}") from exc
    overrides = {}
    if args.order is not None:
        overrides["order"] = args.order
    if args.p_max is not None:
        overrides["p_max"] = args.p_max
    if args.min_repeats is not None:
        overrides["min_repeats"] = args.min_repeats
    if overrides:
        grid = SearchGrid(
            grid.smallest_options,
            grid.diff_options,
            grid.congruence_options,
            order=overrides.get("order", grid.order),
            p_max=overrides.get("p_max", grid.p_max),
            min_repeats=overrides.get("min_repeats", grid.min_repeats),
        )
    cells = grid.cells()
    print(
        f"grid: {grid.size} cells ({len(cells)} after dedup), order {grid.order}",
        file=sys.stderr,
    )
    try:
        report = run_search(grid, jobs=args.jobs, refine_order=args.refine)
    except ValueError as exc:
        raise _ConfigError(str(exc)) from exc
    print(
        f"hits: {len(report.hits)}, failures: {len(report.failures)}",
        file=sys.stderr,
    )
    _emit(report.dumps(), args.out)
    return 0


def _cmd_verify(args) -> int:
    if args.identity == "all":
        names = sorted(BUILTIN_IDENTITIES)
    else:
        if args.identity not in BUILTIN_IDENTITIES:
            raise _ConfigError(
                f"unknown identity {args.identity!r}; "
                f"choose from {', '.join(sorted(BUILTIN_IDENTITIES))} or 'all'"
            )
        names = [args.identity]
    reports = []
    any_mismatch = False
    for name in names:
        report = verify_identity(BUILTIN_IDENTITIES[name], args.order, args.method)
        reports.append(report)
        for w in report.warnings:
            print(f"warning: {w}", file=sys.stderr)
        if report.match:
            print(
                f"{name}: match through q^{report.order} "
                f"({report.method}, {report.elapsed_ms:.0f} ms)"
            )
        else:
            any_mismatch = True
            where = (
                f"first mismatch at q^{report.first_mismatch}"
                if report.first_mismatch is not None
                else "sum-side routes disagree"
            )
            print(f"{name}: MISMATCH, {where} ({report.method})")
    if args.out is not None:
        payload = json.dumps(
            [r.to_json() for r in reports], indent=2, sort_keys=True
        ) + "\n"
        Path(args.out).write_text(payload)
    return 1 if any_mismatch else 0


def _read_coefficients(path: str) -> list[int]:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise _ConfigError(f"{path}: {exc.strerror or exc}") from exc
    stripped = text.strip()
    if not stripped:
        raise _ConfigError(f"{path}: no coefficients found")
    if stripped.startswith("["):
        try:
            entries = json.loads(stripped)
        except json.JSONDecodeError as exc:
            raise _ConfigError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from exc
        if not isinstance(entries, list):
            raise _ConfigError(f"{path}: expected a JSON array of coefficients")
    else:
        entries = [tok for tok in stripped.replace(",", " ").split()]
    out = []
    for i, entry in enumerate(entries):
        try:
            out.append(int(str(entry), 10))
        except (ValueError, TypeError) as exc:
            raise _ConfigError(
                f"{path}: coefficient {i} is not a decimal integer: {entry!r}"
            ) from exc
    return out


def _cmd_factor(args) -> int:
    coeffs = _read_coefficients(args.coeffs)
    try:
        series = TruncatedSeries(coeffs)
        exps = euler_factorize(series)
    except ValueError as exc:
        raise _ConfigError(f"{args.coeffs}: {exc}") from exc
    order = args.order if args.order is not None else exps.order
    if not 1 <= order <= exps.order:
        raise _ConfigError(
            f"--order {order} outside 1..{exps.order} "
            f"(file provides coefficients through q^{series.order})"
        )
    for m in range(1, order + 1):
        print(f"a_{m} = {exps[m]}")
    return 0


def _format_partition(parts: tuple[int, ...]) -> str:
    return "+".join(str(p) for p in parts) if parts else "0"


def _cmd_enumerate(args) -> int:
    obj = _load_json(args.conditions)
    try:
        conds = ConditionSet.from_json(obj)
    except (ValueError, KeyError, TypeError) as exc:
        raise _ConfigError(f"{args.conditions}: {exc}") from exc
    if args.n < 0:
        raise _ConfigError("--n must be >= 0")
    if args.list:
        parts_list = enumerate_sum_side(conds, args.n)
        print(len(parts_list))
        for parts in parts_list:
            print(_format_partition(parts))
    else:
        series = count_sum_side(conds, args.n)
        print(series[args.n])
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sumside",
        description=(
            "Search for and verify partition identities: enumerate partitions "
            "under sum-side conditions, factor the counts into Euler products, "
            "detect periodic product shapes, and verify shipped identities to "
            "high order."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser(
        "search", help="sweep a condition grid for periodic product shapes"
    )
    p.add_argument("--config", required=True, help="grid config JSON file")
    p.add_argument("--order", type=int, default=None, help="override grid order")
    p.add_argument("--p-max", type=int, default=None, help="override largest period")
    p.add_argument(
        "--min-repeats", type=int, default=None,
        help="override required full repetitions of a period",
    )
    p.add_argument("--jobs", type=int, default=1, help="worker processes")
    p.add_argument(
        "--refine", type=int, default=None,
        help="re-check hits at this higher order",
    )
    p.add_argument("--out", default=None, help="write the JSON report here")
    p.set_defaults(func=_cmd_search)

    p = sub.add_parser("verify", help="verify a shipped identity to high order")
    p.add_argument(
        "--identity", required=True,
        help="one of " + ", ".join(sorted(BUILTIN_IDENTITIES)) + ", or 'all'",
    )
    p.add_argument("--order", type=int, default=500, help="verify through q^order")
    p.add_argument(
        "--method", choices=("recursion", "enumeration", "both"),
        default="recursion",
    )
    p.add_argument("--out", default=None, help="write JSON reports here")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser(
        "factor", help="factor a coefficient file into Euler product exponents"
    )
    p.add_argument(
        "--coeffs", required=True,
        help="file of decimal coefficients starting with the constant term "
        "(newline/comma separated, or a JSON array)",
    )
    p.add_argument(
        "--order", type=int, default=None, help="print exponents only through a_order"
    )
    p.set_defaults(func=_cmd_factor)

    p = sub.add_parser(
        "enumerate", help="count (or list) partitions satisfying a condition file"
    )
    p.add_argument("--conditions", required=True, help="ConditionSet JSON file")
    p.add_argument("--n", type=int, required=True, help="partition total")
    p.add_argument(
        "--list", action="store_true", help="print the partitions, one per line"
    )
    p.set_defaults(func=_cmd_enumerate)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
