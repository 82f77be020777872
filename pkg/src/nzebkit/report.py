"""Report emitters (json, csv, text) and plot-ready data series."""
from __future__ import annotations

import csv
import io
import json

import numpy as np

from .finance import present

FORMATS = ("json", "csv", "text")
PLOT_KINDS = ("cumulative-profit", "monthly-energy", "duration-curve")


def _flatten(value, prefix=""):
    if isinstance(value, dict):
        for k, v in value.items():
            yield from _flatten(v, f"{prefix}.{k}" if prefix else str(k))
    elif isinstance(value, list):
        if not value:
            yield prefix, ""
        for i, v in enumerate(value):
            yield from _flatten(v, f"{prefix}[{i}]")
    else:
        yield prefix, value


def _scalar(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    return str(value)


def to_json(report: dict) -> str:
    return json.dumps(report, indent=2, ensure_ascii=False) + "\n"


def to_csv(report: dict) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(("key", "value"))
    for key, value in _flatten(report):
        w.writerow((key, _scalar(value)))
    return buf.getvalue()


def _text_lines(value, indent=0):
    pad = "  " * indent
    if isinstance(value, dict):
        for k, v in value.items():
            if isinstance(v, (dict, list)) and v:
                yield f"{pad}{k}:"
                yield from _text_lines(v, indent + 1)
            else:
                yield f"{pad}{k}: {_scalar(v) if not isinstance(v, (dict, list)) else ''}".rstrip()
    elif isinstance(value, list):
        for item in value:
            if isinstance(item, dict):
                lines = list(_text_lines(item, indent + 1))
                yield f"{pad}- {lines[0].strip()}" if lines else f"{pad}-"
                yield from lines[1:]
            else:
                yield f"{pad}- {_scalar(item)}"


def to_text(report: dict) -> str:
    return "\n".join(_text_lines(report)) + "\n"


def emit(report: dict, fmt: str) -> str:
    return {"json": to_json, "csv": to_csv, "text": to_text}[fmt](report)


def _csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def cumulative_profit_series(schedule) -> str:
    cur = schedule.currency.lower()
    return _csv(("year", f"cumulative_profit_{cur}"),
                [(r.year, present(r.cumulative_profit)) for r in schedule.rows])


def monthly_energy_series(energy) -> str:
    if len(energy.trace.timestamps) == 0:
        return _csv(("month", "ac_kwh", "self_consumed_kwh", "exported_kwh"), [])
    rows = [(m, f"{ac:.3f}", f"{sc:.3f}", f"{ex:.3f}") for m, ac, sc, ex in energy.monthly()]
    return _csv(("month", "ac_kwh", "self_consumed_kwh", "exported_kwh"), rows)


def duration_curve_series(energy) -> str:
    """Hourly AC power sorted from highest to lowest (nonincreasing by construction)."""
    ac = np.sort(np.asarray(energy.trace.ac, dtype=float))[::-1]
    return _csv(("rank_hour", "ac_kw"), [(i + 1, f"{p / 1000.0:.3f}") for i, p in enumerate(ac)])


def hourly_trace_csv(energy) -> str:
    t = energy.trace
    rows = ((ts.isoformat(timespec="minutes"), f"{poa:.2f}", f"{tc:.2f}", f"{dc:.1f}", f"{ac:.0f}", f"{ld:.0f}",
             f"{sc:.0f}", f"{ex:.0f}")
            for ts, poa, tc, dc, ac, ld, sc, ex in zip(t.timestamps, t.poa, t.t_cell, t.dc, t.ac, t.load,
                                                       t.self_consumed, t.exported))
    return _csv(("timestamp", "poa_w_m2", "t_cell_c", "dc_w", "ac_wh", "load_wh", "self_consumed_wh", "exported_wh"),
                rows)


def emit_plot_data(pipeline, kind: str) -> str:
    """CSV series for plotting; ``kind`` is one of :data:`PLOT_KINDS`."""
    if kind == "cumulative-profit":
        return cumulative_profit_series(pipeline.finance_result[0])
    if kind == "monthly-energy":
        return monthly_energy_series(pipeline.energy)
    if kind == "duration-curve":
        return duration_curve_series(pipeline.energy)
    raise ValueError(f"unknown plot kind {kind!r}; choose from {', '.join(PLOT_KINDS)}")
