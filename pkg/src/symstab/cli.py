"""Command-line interface.

Exit codes: 0 success, 1 verification or regression failure, 2 input error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import __version__
from .catalog import CatalogError, build_model, load_catalog
from .report import ReportDocument, analyze_entry, classify_catalog, to_csv, to_json
from .spectrum import MissingSpectralData, spectrum_sample
from .verify import SUITES, run_suite

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def _p_arg(text: str) -> str:
    t = text.strip()
    if t.startswith("half-dim"):
        rest = t[len("half-dim"):]
        if rest:
            try:
                float(rest)
            except ValueError:
                raise argparse.ArgumentTypeError(f"bad p policy {text!r}") from None
        return t
    try:
        float(t)
    except ValueError:
        raise argparse.ArgumentTypeError(f"p must be a number or 'half-dim[+K]', got {text!r}") from None
    return t


def _p_value(text: str):
    return text if text.startswith("half-dim") else float(text)


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_bytes(text.encode("utf-8"))
    else:
        sys.stdout.write(text)


def _entry(args):
    catalog = load_catalog(args.catalog)
    if not args.space:
        raise InputError("--space is required")
    try:
        return catalog.get(args.space)
    except KeyError:
        raise InputError(f"unknown space id {args.space!r}; see 'symstab list'") from None


def cmd_list(args) -> int:
    catalog = load_catalog(args.catalog)
    if args.format == "json":
        rows = [{"id": e.id, "family": e.family, "params": list(e.params), "dim": e.dim,
                 "expectedVerdict": e.expected_verdict} for e in catalog]
        _emit(to_json(rows), args.out)
    else:
        lines = [f"{e.id}\t{e.family}\tdim={e.dim}\texpected={e.expected_verdict or '-'}" for e in catalog]
        _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def cmd_analyze(args) -> int:
    result = analyze_entry(_entry(args), _p_value(args.p))
    if args.format == "csv":
        _emit(to_csv(ReportDocument(args.p, "", [result], 0.0)), args.out)
    else:
        _emit(to_json(result.as_dict()), args.out)
    return EXIT_OK


def cmd_classify_all(args) -> int:
    doc = classify_catalog(load_catalog(args.catalog), _p_value(args.p), jobs=args.jobs)
    _emit(to_csv(doc) if args.format == "csv" else to_json(doc.as_dict()), args.out)
    if doc.mismatches:
        print(f"verdict mismatches: {', '.join(doc.mismatches)}", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


def cmd_spectrum(args) -> int:
    entry = _entry(args)
    try:
        values = spectrum_sample(build_model(entry), args.count)
    except MissingSpectralData as exc:
        raise InputError(str(exc)) from None
    if args.format == "json":
        _emit(to_json({"id": entry.id, "eigenvalues": values}), args.out)
    else:
        _emit("".join(f"{v:.15g}\n" for v in values), args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    catalog = load_catalog(args.catalog)
    checks = run_suite(args.suite, catalog)
    if args.format == "json":
        _emit(to_json({"suite": args.suite, "checks": [c.as_dict() for c in checks]}), args.out)
    else:
        failed = sum(not c.passed for c in checks)
        text = "".join(c.line() + "\n" for c in checks)
        text += f"{len(checks) - failed}/{len(checks)} checks passed\n"
        _emit(text, args.out)
    return EXIT_OK if all(c.passed for c in checks) else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="symstab", description="Conformal stability of symmetric spaces for the L^p curvature functional.")
    parser.add_argument("--version", action="version", version=f"symstab {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp, formats=("json", "csv"), default="json"):
        sp.add_argument("--catalog", help="catalog JSON (default: shipped catalog)")
        sp.add_argument("--format", choices=formats, default=default)
        sp.add_argument("--out", help="write output to this file instead of stdout")

    sp = sub.add_parser("list", help="list catalog entries")
    common(sp, ("text", "json"), "text")
    sp.set_defaults(func=cmd_list)

    sp = sub.add_parser("analyze", help="classify one space")
    common(sp)
    sp.add_argument("--space", required=True)
    sp.add_argument("--p", type=_p_arg, default="half-dim", help="number, 'half-dim' or 'half-dim+K'")
    sp.set_defaults(func=cmd_analyze)

    sp = sub.add_parser("classify-all", help="classify every catalog entry and compare with expected verdicts")
    common(sp)
    sp.add_argument("--p", type=_p_arg, default="half-dim")
    sp.add_argument("--jobs", type=int, default=1)
    sp.set_defaults(func=cmd_classify_all)

    sp = sub.add_parser("spectrum", help="smallest distinct Laplace eigenvalues")
    common(sp, ("text", "json"), "text")
    sp.add_argument("--space", required=True)
    sp.add_argument("--count", type=int, default=10)
    sp.set_defaults(func=cmd_spectrum)

    sp = sub.add_parser("verify", help="run verification suites")
    common(sp, ("text", "json"), "text")
    sp.add_argument("--suite", choices=SUITES, default="all")
    sp.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    try:
        return args.func(args)
    except (CatalogError, InputError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
