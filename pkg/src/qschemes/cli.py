"""Command-line entry point: ``qschemes <subcommand> ...``.

Exit codes: 0 when every record is PASS, EXCLUDED or unflagged OBSERVED;
1 when any FAIL is present; 2 on usage errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from pathlib import Path

from qschemes import lemmas
from qschemes.errors import CapExceeded, ParameterError, UnsupportedField
from qschemes.spectra import Eigenmatrix, Family, SchemeParams, eigenmatrix
from qschemes.sweep import Grid, VerdictReport, get_check, parse_values, run_check
from qschemes.verdict import Status, jsonable

EIGENMATRIX_SCHEMA = "qschemes.eigenmatrix/1"
ORACLE_SCHEMA = "qschemes.oracle/1"

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2

VERIFY_CHECKS = ("grassmann-monotone", "grassmann-exceptional", "bilinear-min", "hermitian-suite", "cross-check-forms")
SCAN_CHECKS = {"hamming": "hamming-distinct"}


def _values(flag: str):
    def parse(text: str) -> tuple[int, ...]:
        try:
            values = parse_values(text)
        except ValueError:
            raise argparse.ArgumentTypeError(f"{flag} expects an integer, a range a..b or a list a,b,c") from None
        if not values:
            raise argparse.ArgumentTypeError(f"{flag} expects at least one value")
        return values

    return parse


def _int_flag(flag: str):
    def parse(text: str) -> int:
        try:
            return int(text)
        except ValueError:
            raise argparse.ArgumentTypeError(f"{flag} expects an integer, got {text!r}") from None

    return parse


def _add_params(p: argparse.ArgumentParser) -> None:
    p.add_argument("family", choices=[f.value for f in Family])
    p.add_argument("--n", type=_int_flag("--n"), help="ambient dimension (grassmann, n >= 2d)")
    p.add_argument("--d", type=_int_flag("--d"), required=True, help="diameter / subspace dimension")
    p.add_argument("--e", type=_int_flag("--e"), help="column count (bilinear, e >= d)")
    p.add_argument("--q", type=_int_flag("--q"), required=True, help="field or alphabet size")


def _add_grid(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("grid", "values are N, A..B (inclusive) or A,B,C")
    g.add_argument("--q", type=_values("--q"))
    g.add_argument("--d", type=_values("--d"))
    g.add_argument("--n", type=_values("--n"), help="absolute n values (overrides --n-offset)")
    g.add_argument("--n-offset", type=_values("--n-offset"), help="n = 2d + offset")
    g.add_argument("--e", type=_values("--e"), help="absolute e values (overrides --e-offset)")
    g.add_argument("--e-offset", type=_values("--e-offset"), help="e = d + offset")
    g.add_argument("--j", type=_values("--j"), help="restrict the class index j")
    g.add_argument("--m", type=_values("--m"), help="m values (signed-base suites) or seeds (alternating)")


def _add_run(p: argparse.ArgumentParser) -> None:
    p.add_argument("--jobs", type=_int_flag("--jobs"), default=1, help="worker processes")
    p.add_argument("--checkpoint", type=Path, help="JSONL checkpoint to append to and resume from")
    p.add_argument("--output", type=Path, help="write the JSON report here instead of stdout")
    p.add_argument("--csv", type=Path, help="also write the records as CSV")
    p.add_argument("--no-timing", action="store_true", help="omit the timing block for byte-stable reports")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qschemes", description="Exact eigenmatrices of classical association schemes.")
    parser.add_argument("-v", "--verbose", action="count", default=0)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eigenmatrix", help="print the eigenmatrix P")
    _add_params(p)
    p.add_argument("--j", type=_int_flag("--j"), help="print only column j")
    p.add_argument("--format", choices=("json", "csv", "table"), default="table")
    p.add_argument("--output", type=Path)

    p = sub.add_parser("verify", help="run a verification sweep")
    p.add_argument("check", choices=VERIFY_CHECKS + ("hamming-distinct",))
    _add_grid(p)
    _add_run(p)

    p = sub.add_parser("lemma-check", help="run a bound suite")
    p.add_argument("check", choices=sorted(lemmas.SUITES))
    _add_grid(p)
    _add_run(p)

    p = sub.add_parser("scan", help="run a report-only scan")
    p.add_argument("target", choices=sorted(SCAN_CHECKS))
    _add_grid(p)
    _add_run(p)

    p = sub.add_parser("oracle-check", help="build the scheme explicitly and validate the formulas")
    _add_params(p)
    p.add_argument("--cap", type=_int_flag("--cap"), help="vertex cap (default: QSCHEMES_ORACLE_CAP or 100000)")
    p.add_argument("--no-spectra", action="store_true", help="skip the exact-rank spectra")
    p.add_argument("--output", type=Path)
    return parser


def _params(args: argparse.Namespace) -> SchemeParams:
    family = Family(args.family)
    n = args.n if family is Family.GRASSMANN else None
    e = args.e if family is Family.BILINEAR else None
    if family is not Family.GRASSMANN and args.n is not None:
        raise ParameterError("n", args.n, "only used by the grassmann family")
    if family is not Family.BILINEAR and args.e is not None:
        raise ParameterError("e", args.e, "only used by the bilinear family")
    return SchemeParams(family, args.d, args.q, n=n, e=e)


def _emit(text: str, path: Path | None) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        path.write_text(text, encoding="utf-8")


def eigenmatrix_json(P: Eigenmatrix, columns: list[int]) -> str:
    # entries can exceed 53 bits, so they travel as decimal strings
    payload = {
        "schema": EIGENMATRIX_SCHEMA,
        "params": P.params.as_dict(),
        "columns": columns,
        "rows": [[str(P[i, j]) for j in columns] for i in range(P.size)],
    }
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def eigenmatrix_csv(P: Eigenmatrix, columns: list[int]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["i", *(f"j={j}" for j in columns)])
    for i in range(P.size):
        writer.writerow([i, *(P[i, j] for j in columns)])
    return buf.getvalue()


def eigenmatrix_table(P: Eigenmatrix, columns: list[int]) -> str:
    cells = [["i", *(f"j={j}" for j in columns)]]
    cells += [[str(i), *(str(P[i, j]) for j in columns)] for i in range(P.size)]
    widths = [max(len(row[c]) for row in cells) for c in range(len(cells[0]))]
    lines = [P.params.label()]
    lines += ["  ".join(cell.rjust(w) for cell, w in zip(row, widths)) for row in cells]
    return "\n".join(lines) + "\n"


def cmd_eigenmatrix(args: argparse.Namespace) -> int:
    params = _params(args)
    if args.j is not None and not 0 <= args.j <= params.d:
        raise ParameterError("j", args.j, f"integer 0 <= j <= d = {params.d}")
    P = eigenmatrix(params)
    columns = list(range(P.size)) if args.j is None else [args.j]
    render = {"json": eigenmatrix_json, "csv": eigenmatrix_csv, "table": eigenmatrix_table}[args.format]
    _emit(render(P, columns), args.output)
    return EXIT_OK


def _grid(args: argparse.Namespace, name: str) -> Grid:
    overrides = {
        "q": args.q,
        "d": args.d,
        "n": args.n,
        "n_offset": args.n_offset,
        "e": args.e,
        "e_offset": args.e_offset,
        "j": args.j,
        "m": args.m,
    }
    grid = get_check(name).default_grid.with_overrides(**overrides)
    if any(q < 2 for q in grid.q):
        raise ParameterError("q", list(grid.q), "integers q >= 2")
    if any(d < 1 for d in grid.d):
        raise ParameterError("d", list(grid.d), "integers d >= 1")
    return grid


def _run_sweep(args: argparse.Namespace, name: str) -> int:
    if args.jobs < 1:
        raise ParameterError("jobs", args.jobs, "integer >= 1")
    report = run_check(name, _grid(args, name), jobs=args.jobs, checkpoint=args.checkpoint)
    _emit(report.to_json(include_timing=not args.no_timing), args.output)
    if args.csv:
        args.csv.write_text(report.to_csv(), encoding="utf-8")
    _summarize(report)
    return EXIT_FAIL if report.has_fail else EXIT_OK


def _summarize(report: VerdictReport) -> None:
    counts = ", ".join(f"{k} {v}" for k, v in report.counts().items() if v)
    print(f"{report.check}: {counts or 'no tuples'}", file=sys.stderr)
    for r in report.records:
        if r.status is Status.FAIL:
            print(f"  FAIL {r.key}: {r.detail}", file=sys.stderr)
    if report.flagged:
        print(f"  {len(report.flagged)} flagged observation(s)", file=sys.stderr)


def cmd_oracle(args: argparse.Namespace) -> int:
    from qschemes.oracle import oracle_check

    params = _params(args)
    result = oracle_check(params, cap=args.cap, with_spectra=not args.no_spectra)
    payload = {
        "schema": ORACLE_SCHEMA,
        "params": result.params,
        "status": result.status.value,
        "num_vertices": result.num_vertices,
        "class_sizes": result.class_sizes,
        "valencies": result.valencies,
        "eigenvector": result.eigenvector.as_dict(),
        "spectra": {str(j): [[lam, m] for lam, m in s] for j, s in result.spectra.items()},
    }
    _emit(json.dumps(jsonable(payload), indent=2, sort_keys=True) + "\n", args.output)
    print(f"{params.label()}: {result.status.value}", file=sys.stderr)
    return EXIT_OK if result.status is Status.PASS else EXIT_FAIL


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    logging.basicConfig(level=logging.WARNING - 10 * min(args.verbose, 2), format="%(levelname)s %(name)s: %(message)s")
    try:
        if args.command == "eigenmatrix":
            return cmd_eigenmatrix(args)
        if args.command == "oracle-check":
            return cmd_oracle(args)
        if args.command == "scan":
            return _run_sweep(args, SCAN_CHECKS[args.target])
        return _run_sweep(args, args.check)
    except ParameterError as exc:
        print(f"qschemes: error: --{exc.name.replace('_', '-')}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (CapExceeded, UnsupportedField) as exc:
        print(f"qschemes: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
