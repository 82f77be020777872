"""Command-line interface: ``nzebkit <subcommand> --project FILE [options]``.

Exit codes: 0 success, 1 internal error, 2 input/parse error, 3 design infeasible,
4 ``verify`` found values outside tolerance.
"""
from __future__ import annotations

import argparse
import os
import sys
import traceback
from pathlib import Path

from . import __version__
from .errors import DesignError, DomainError, InputError
from .pipeline import Pipeline, build_report
from .project import load_project
from .reference import verify
from .report import FORMATS, PLOT_KINDS, cumulative_profit_series, emit, emit_plot_data, hourly_trace_csv

OUT_ENV = "NZEBKIT_OUT"
EXT = {"json": "json", "csv": "csv", "text": "txt"}
SUBCOMMANDS = ("lighting", "cooling", "loads", "pv-design", "pv-simulate", "finance", "carbon", "report")


def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--project", required=True, type=Path, help="project file (YAML)")
    common.add_argument("--meteo", type=Path, help="hourly meteo CSV (timestamp,ghi,dhi,tamb)")
    common.add_argument("--out", type=Path, help=f"output directory (default: ${OUT_ENV}, else stdout)")
    common.add_argument("--format", choices=FORMATS, default="json")
    common.add_argument("--seed", type=int, help="accepted for compatibility; the pipeline is deterministic")

    parser = argparse.ArgumentParser(prog="nzebkit", description="NZEB retrofit feasibility toolkit")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in SUBCOMMANDS:
        sub.add_parser(name, parents=[common], help=f"run the {name} stage" if name != "report" else "full pipeline")
    plot = sub.add_parser("plot-data", parents=[common], help="write a plot-ready CSV series")
    plot.add_argument("--kind", required=True, help=f"one of: {', '.join(PLOT_KINDS)}")
    ver = sub.add_parser("verify", parents=[common], help="compare the full report against reference values")
    ver.add_argument("--tolerance", action="append", default=[], metavar="NAME=VALUE",
                     help="override the absolute tolerance of one check (repeatable)")
    return parser


def _out_dir(args) -> Path | None:
    out = args.out or (Path(os.environ[OUT_ENV]) if os.environ.get(OUT_ENV) else None)
    if out is not None:
        out.mkdir(parents=True, exist_ok=True)
    return out


def _write(out: Path, name: str, text: str, written: list):
    path = out / name
    path.write_text(text)
    written.append(path)


def _run_stage(args, pipeline: Pipeline) -> int:
    report = build_report(pipeline, args.command)
    text = emit(report, args.format)
    out = _out_dir(args)
    if out is None:
        sys.stdout.write(text)
        return 0
    written = []
    stem = args.command.replace("-", "_")
    _write(out, f"{stem}.{EXT[args.format]}", text, written)
    if "loads" in report:
        rows = ["Load,Va Per Unit,Units,Subtotal (kVA)"]
        rows += [f"{i['name']},{i['va_per_unit']},{i['units']},{i['subtotal_kva']:.2f}" for i in report["loads"]["items"]]
        rows.append(f"Total,,,{report['loads']['total_kva']:.2f}")
        _write(out, "load_schedule.csv", "\n".join(rows) + "\n", written)
    if "finance" in report:
        schedule = pipeline.finance_result[0]
        _write(out, "cash_flow.csv", schedule.to_csv(), written)
        _write(out, "plot_cumulative_profit.csv", cumulative_profit_series(schedule), written)
    if "pv_simulation" in report:
        _write(out, "hourly_trace.csv", hourly_trace_csv(pipeline.energy), written)
        for kind in ("monthly-energy", "duration-curve"):
            _write(out, f"plot_{kind.replace('-', '_')}.csv", emit_plot_data(pipeline, kind), written)
    for path in written:
        print(f"wrote {path}", file=sys.stderr)
    return 0


def _run_plot(args, pipeline: Pipeline) -> int:
    if args.kind not in PLOT_KINDS:
        raise InputError(f"unknown plot kind {args.kind!r}; choose from {', '.join(PLOT_KINDS)}", "--kind")
    text = emit_plot_data(pipeline, args.kind)
    out = _out_dir(args)
    if out is None:
        sys.stdout.write(text)
    else:
        path = out / f"plot_{args.kind.replace('-', '_')}.csv"
        path.write_text(text)
        print(f"wrote {path}", file=sys.stderr)
    return 0


def _run_verify(args, pipeline: Pipeline) -> int:
    overrides = {}
    for item in args.tolerance:
        name, sep, value = item.partition("=")
        try:
            if not sep:
                raise ValueError
            overrides[name.strip()] = float(value)
        except ValueError:
            raise InputError(f"expected NAME=VALUE, got {item!r}", "--tolerance") from None
    report = build_report(pipeline, "report")
    failures = 0
    for check, actual, passed in verify(report, overrides, with_meteo=pipeline.meteo_path is not None):
        failures += not passed
        print(f"{'PASS' if passed else 'FAIL'} {check.name}: actual={actual} expected={check.expected}")
    return 4 if failures else 0


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    try:
        pipeline = Pipeline(load_project(args.project), args.meteo)
        if args.command == "plot-data":
            return _run_plot(args, pipeline)
        if args.command == "verify":
            return _run_verify(args, pipeline)
        return _run_stage(args, pipeline)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except DesignError as exc:
        print(f"design infeasible: {exc}", file=sys.stderr)
        return 3
    except DomainError as exc:
        print(f"error: {args.project}: {exc}", file=sys.stderr)
        return 2
    except Exception:  # noqa: BLE001 - last-resort handler for the exit-code contract
        traceback.print_exc()
        return 1


if __name__ == "__main__":
    sys.exit(main())
