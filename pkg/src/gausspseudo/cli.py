"""Command-line frontend: classify single integers, search ranges,
reproduce the joint pseudoprime table, and verify external lists.

Data goes to stdout and is byte-identical across runs (and across worker
counts); progress and warnings go to stderr.  Exit codes: 0 for success,
1 when a verification finds passing numbers, 2 for usage or input errors.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys
import time

from .census import (
    CensusTable,
    RangeQuery,
    VerificationReport,
    CLASSIFIER_NAMES,
    joint_census,
    record_line,
    search_classifier,
    search_gfp,
    table_to_csv,
    table_to_records,
    values_to_csv,
    verify_external_list,
)
from .classify import DEFAULT_GIUGA_CAP, ClassificationReport, classify
from .fermat import TABLE_GAUSSIAN_BASES, TABLE_INTEGER_BASES
from .residues import GaussianBase

WORKERS_ENV = "GAUSSPSEUDO_WORKERS"
_PROGRESS_INTERVAL = 0.5


def _default_workers() -> int:
    env = os.environ.get(WORKERS_ENV)
    if env:
        try:
            w = int(env)
            if w >= 1:
                return w
        except ValueError:
            pass
    return os.cpu_count() or 1


def _parse_filter(text: str) -> tuple[int, int]:
    parts = text.split(",")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError("filter must be 'modulus,residue'")
    try:
        m, r = int(parts[0]), int(parts[1])
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None
    if m < 1 or not 0 <= r < m:
        raise argparse.ArgumentTypeError(f"bad residue filter {text!r}")
    return m, r


def _parse_base(text: str) -> GaussianBase:
    try:
        return GaussianBase.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


class _Progress:
    """Rate-limited progress lines on stderr."""

    def __init__(self, label: str, quiet: bool):
        self.label = label
        self.quiet = quiet
        self.last = 0.0

    def __call__(self, done: int, total: int) -> None:
        if self.quiet:
            return
        now = time.monotonic()
        if done == total or now - self.last >= _PROGRESS_INTERVAL:
            self.last = now
            print(f"{self.label}: {done}/{total} blocks", file=sys.stderr)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gausspseudo",
        description="Gaussian-integer Fermat tests, number classifications and censuses.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--quiet", action="store_true", help="suppress progress output")
    sub = parser.add_subparsers(dest="command", required=True)

    p_classify = sub.add_parser("classify", help="classify a single integer", parents=[common])
    p_classify.add_argument("n", type=int)
    p_classify.add_argument("--giuga", action="store_true", help="also evaluate the Giuga power sum")
    p_classify.add_argument("--giuga-cap", type=int, default=DEFAULT_GIUGA_CAP)
    p_classify.add_argument("--format", choices=("plain", "records"), default="plain")

    p_search = sub.add_parser("search", parents=[common], help="search a range for a number class")
    p_search.add_argument("classifier", choices=CLASSIFIER_NAMES + ("gfp",))
    p_search.add_argument("--lo", type=int, default=2)
    p_search.add_argument("--hi", type=int, required=True)
    p_search.add_argument("--filter", type=_parse_filter, default=None, metavar="M,R")
    p_search.add_argument("--base", type=_parse_base, default=None, metavar="A+Bi")
    p_search.add_argument("--workers", type=int, default=None)
    p_search.add_argument("--giuga-cap", type=int, default=DEFAULT_GIUGA_CAP)
    p_search.add_argument("--format", choices=("plain", "csv", "records"), default="plain")

    p_table = sub.add_parser("table", parents=[common], help="joint Gaussian/classical pseudoprime counts")
    p_table.add_argument("--limit", type=int, default=40_000_000)
    p_table.add_argument("--filter", type=_parse_filter, default=None, metavar="M,R")
    p_table.add_argument("--gaussian-bases", type=str, default=None,
                         help="comma-separated bases, e.g. '1+2i,1+4i' (empty for none)")
    p_table.add_argument("--integer-bases", type=str, default=None,
                         help="comma-separated integers, e.g. '2,3,4'")
    p_table.add_argument("--workers", type=int, default=None)
    p_table.add_argument("--format", choices=("plain", "csv", "records"), default="plain")

    p_verify = sub.add_parser("verify", parents=[common], help="run the Gaussian test over a candidate list file")
    p_verify.add_argument("--file", required=True)
    p_verify.add_argument("--base", type=_parse_base, required=True, metavar="A+Bi")
    p_verify.add_argument("--filter", type=_parse_filter, default=None, metavar="M,R")
    p_verify.add_argument("--format", choices=("plain", "records"), default="plain")
    return parser


def _render_report(report: ClassificationReport, fmt: str) -> str:
    if fmt == "records":
        import json

        rec = {"kind": "classification", "n": report.n, "is_prime": report.is_prime}
        for name in ClassificationReport.FLAG_ORDER:
            rec[name] = getattr(report, name)
        rec["witnesses"] = report.witnesses
        return json.dumps(rec, sort_keys=True, separators=(",", ":")) + "\n"
    lines = [f"n: {report.n}", f"is_prime: {str(report.is_prime).lower()}"]
    for name in ClassificationReport.FLAG_ORDER:
        value = getattr(report, name)
        text = "not computed" if value is None else str(value).lower()
        lines.append(f"{name}: {text}")
    if report.witnesses:
        parts = ", ".join(f"{k}={v}" for k, v in sorted(report.witnesses.items()))
        lines.append(f"witnesses: {parts}")
    return "".join(line + "\n" for line in lines)


def _render_values(values, kind, query, base, fmt: str) -> str:
    if fmt == "csv":
        return values_to_csv(values)
    if fmt == "records":
        return record_line(kind, query, base, values) + "\n"
    return "".join(f"{v}\n" for v in values)


def _render_table(table: CensusTable, query, fmt: str) -> str:
    if fmt == "records":
        return table_to_records(table, query)
    if fmt == "csv":
        return table_to_csv(table)
    widths = [
        max([len(str(z)) for z in table.gaussian_bases] + [len("base")]),
    ] + [
        max(len(str(a)), *(len(str(row[j])) for row in table.counts))
        if table.counts
        else len(str(a))
        for j, a in enumerate(table.integer_bases)
    ]
    header = ["base"] + [str(a) for a in table.integer_bases]
    out = ["  ".join(h.rjust(w) for h, w in zip(header, widths))]
    for z, row in zip(table.gaussian_bases, table.counts):
        cells = [str(z)] + [str(c) for c in row]
        out.append("  ".join(c.rjust(w) for c, w in zip(cells, widths)))
    return "".join(line + "\n" for line in out)


def _render_verification(report: VerificationReport, fmt: str) -> str:
    if fmt == "records":
        import json

        rec = {
            "kind": "verification",
            "source": report.source,
            "total_read": report.total_read,
            "filtered": report.filtered,
            "passing": list(report.passing),
            "invalid_base": report.invalid_base,
            "malformed_lines": report.malformed_lines,
        }
        return json.dumps(rec, sort_keys=True, separators=(",", ":")) + "\n"
    lines = [
        f"source: {report.source}",
        f"total_read: {report.total_read}",
        f"filtered: {report.filtered}",
        f"invalid_base: {report.invalid_base}",
        f"malformed_lines: {report.malformed_lines}",
        f"passing: {' '.join(str(n) for n in report.passing) if report.passing else '(none)'}",
    ]
    return "".join(line + "\n" for line in lines)


def _cmd_classify(args) -> int:
    report = classify(args.n, with_giuga=args.giuga, giuga_cap=args.giuga_cap)
    sys.stdout.write(_render_report(report, args.format))
    return 0


def _cmd_search(args) -> int:
    workers = args.workers if args.workers else _default_workers()
    query = RangeQuery(args.lo, args.hi, args.filter, workers)
    progress = _Progress(f"search {args.classifier}", args.quiet)
    if args.classifier == "gfp":
        if args.base is None:
            raise ValueError("search gfp requires --base")
        values = search_gfp(query, args.base, progress=progress)
        base = args.base
    else:
        values = search_classifier(
            query, args.classifier, giuga_cap=args.giuga_cap, progress=progress
        )
        base = None
    sys.stdout.write(
        _render_values(values, f"search_{args.classifier}", query, base, args.format)
    )
    return 0


def _cmd_table(args) -> int:
    workers = args.workers if args.workers else _default_workers()
    if args.gaussian_bases is None:
        gbases = TABLE_GAUSSIAN_BASES
    else:
        text = args.gaussian_bases.strip()
        gbases = tuple(
            GaussianBase.parse(part) for part in text.split(",") if part.strip()
        )
    if args.integer_bases is None:
        ibases = TABLE_INTEGER_BASES
    else:
        ibases = tuple(
            int(part) for part in args.integer_bases.split(",") if part.strip()
        )
    query = RangeQuery(2, args.limit, args.filter, workers)
    progress = _Progress("table", args.quiet)
    table = joint_census(query, gbases, ibases, progress=progress)
    sys.stdout.write(_render_table(table, query, args.format))
    return 0


def _cmd_verify(args) -> int:
    report = verify_external_list(args.file, args.base, args.filter)
    sys.stdout.write(_render_verification(report, args.format))
    return 1 if report.passing else 0


def main(argv=None) -> int:
    logging.basicConfig(stream=sys.stderr, format="%(levelname)s: %(message)s")
    parser = _build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "classify": _cmd_classify,
        "search": _cmd_search,
        "table": _cmd_table,
        "verify": _cmd_verify,
    }
    try:
        return handlers[args.command](args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
