"""Command-line front end.

Exit codes: 0 all verified, 1 an inequality failed, 2 invalid input,
3 capacity exceeded, 4 internal inconsistency.
"""

from __future__ import annotations

import argparse
import os
import sys
import time
from decimal import Decimal, localcontext
from pathlib import Path

from . import __version__
from .catalogs import (
    STATUS_ERROR,
    STATUS_INTERNAL,
    STATUS_SKIPPED,
    STATUS_VIOLATION,
    catalog_sweep,
    check_sharpness,
    default_manifest_path,
    read_manifest,
    sharpness_scan,
    verify_spec_text,
)
from .engine.base import resolve_cap
from .errors import CapacityError, MalformedInputError, SpecError
from .report import ReportDocument, render_group, render_summary

EXIT_OK, EXIT_VIOLATION, EXIT_INPUT, EXIT_CAPACITY, EXIT_INTERNAL = 0, 1, 2, 3, 4


def exit_code_for(statuses) -> int:
    statuses = set(statuses)
    if STATUS_VIOLATION in statuses:
        return EXIT_VIOLATION
    if STATUS_INTERNAL in statuses:
        return EXIT_INTERNAL
    if STATUS_ERROR in statuses:
        return EXIT_INPUT
    if STATUS_SKIPPED in statuses:
        return EXIT_CAPACITY
    return EXIT_OK


def decimal_ratio(num: int, den: int, digits: int = 10) -> str:
    with localcontext() as ctx:
        ctx.prec = digits
        return str(+(Decimal(num) / Decimal(den)))


def _emit(doc: ReportDocument, args, text_lines: list[str], out=None) -> None:
    out = out or sys.stdout
    if args.format == "machine":
        for line in doc.to_lines(include_timing=args.timing):
            print(line, file=out)
    else:
        for line in text_lines:
            print(line, file=out)
        if args.timing and doc.timing is not None:
            print(f"elapsed: {doc.timing:.3f} s", file=out)


def cmd_verify(args, out=None) -> int:
    start = time.perf_counter()
    result = verify_spec_text(args.spec, all_t=args.all_t, cap=args.cap, base_dir=os.getcwd())
    entry = vars(result)
    doc = ReportDocument("verify", [args.spec], [entry], timing=time.perf_counter() - start)
    _emit(doc, args, render_group(entry), out)
    return exit_code_for([result.status])


def cmd_sweep(args, out=None) -> int:
    start = time.perf_counter()
    manifest = Path(args.manifest) if args.manifest else default_manifest_path()
    try:
        entries = read_manifest(manifest)
    except MalformedInputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    specs = [e.text for e in entries]
    results = catalog_sweep(specs, all_t=args.all_t, jobs=args.jobs, cap=args.cap, base_dir=manifest.parent)
    doc = ReportDocument("sweep", specs, [vars(r) for r in results], timing=time.perf_counter() - start)
    text = []
    for r in results:
        rep = r.report
        if r.status == "pass":
            x = rep["witness"]["max_centralizer"] if rep.get("witness") else "-"
            text.append(f"PASS  {r.spec:<40} |G| = {rep['order']:<6} {rep['branch']:<18} |C_G(x)| = {x}")
        else:
            text += render_group(vars(r))
    text.append(render_summary(doc))
    _emit(doc, args, text, out)
    return exit_code_for(r.status for r in results)


def cmd_sharpness(args, out=None) -> int:
    start = time.perf_counter()
    if args.n_max < 1:
        print("error: sharpness needs n_max >= 1", file=sys.stderr)
        return EXIT_INPUT
    try:
        records = sharpness_scan(range(1, args.n_max + 1), cap=args.cap)
    except CapacityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except SpecError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    checks = check_sharpness(records)
    rows = []
    for rec, chk in zip(records, checks):
        rows.append({
            "n": chk.n,
            "order": rec.order,
            "involution_centralizer": rec.involution_centralizer,
            "max_centralizer": rec.max_nonidentity_centralizer,
            "ratio": f"{rec.ratio_num}/{rec.ratio_den}",
            "ratio_decimal": decimal_ratio(rec.ratio_num, rec.ratio_den),
            "ok": chk.ok,
        })
    doc = ReportDocument("sharpness", [f"n_max={args.n_max}"], rows=rows, timing=time.perf_counter() - start)
    text = [f"{'n':>2}  {'|G|':>6}  {'|C(t)|':>6}  {'max|C|':>6}  {'(max|C|)^3/|G|':>16}  {'decimal':>12}  check"]
    for row in rows:
        text.append(
            f"{row['n']:>2}  {row['order']:>6}  {row['involution_centralizer']!s:>6}  {row['max_centralizer']:>6}"
            f"  {row['ratio']:>16}  {row['ratio_decimal']:>12}  {'PASS' if row['ok'] else 'FAIL'}"
        )
    _emit(doc, args, text, out)
    return EXIT_OK if all(c.ok for c in checks) else EXIT_VIOLATION


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "machine"), default=argparse.SUPPRESS)
    common.add_argument("--cap", type=int, default=argparse.SUPPRESS, help="maximum group order to enumerate")
    common.add_argument("--timing", action="store_true", default=argparse.SUPPRESS, help="report elapsed time")

    parser = argparse.ArgumentParser(prog="bfcheck", description="Exact verification of centralizer bounds on finite groups.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--format", choices=("text", "machine"), default="text")
    parser.add_argument("--cap", type=int, default=None, help="maximum group order to enumerate (env BFCHECK_CAP)")
    parser.add_argument("--timing", action="store_true", default=False, help="report elapsed time")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", parents=[common], help="verify one group, e.g. sym:3 or sl2:8")
    p.add_argument("spec")
    p.add_argument("--all-t", action="store_true", help="also verify every valid t, not just the least one")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("sweep", parents=[common], help="verify every group in a manifest")
    p.add_argument("manifest", nargs="?", default=None, help="manifest file (default: the bundled catalog)")
    p.add_argument("--all-t", action="store_true")
    p.add_argument("--jobs", type=int, default=1, help="worker processes; output does not depend on it")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("sharpness", parents=[common], help="centralizer extremes of SL(2, 2^n) for n = 1..n_max")
    p.add_argument("n_max", type=int)
    p.set_defaults(func=cmd_sharpness)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.cap = resolve_cap(args.cap)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
