"""Hourly meteorological series: CSV ingestion and a synthetic representative year.

CSV format: header ``timestamp,ghi,dhi,tamb``; ISO-8601 local civil timestamps that label
the start of each hourly interval; ``dhi`` may be empty; exactly one calendar year.
"""
from __future__ import annotations

import calendar
import csv
from collections.abc import Sequence
from dataclasses import dataclass
from datetime import datetime, timedelta
from pathlib import Path

import numpy as np

from .errors import InputError
from .solar import SiteSpec, solar_angles

COLUMNS = ("timestamp", "ghi", "dhi", "tamb")


@dataclass(frozen=True)
class MeteoRecord:
    timestamp: datetime
    ghi: float
    dhi: float | None
    t_ambient: float


class MeteoSeries(Sequence):
    """Column-oriented hourly year; indexing yields :class:`MeteoRecord`."""

    def __init__(self, timestamps, ghi, dhi, t_ambient):
        self.timestamps = list(timestamps)
        self.ghi = np.asarray(ghi, dtype=float)
        self.dhi = np.asarray(dhi, dtype=float)  # NaN where missing
        self.t_ambient = np.asarray(t_ambient, dtype=float)
        n = len(self.timestamps)
        if not (len(self.ghi) == len(self.dhi) == len(self.t_ambient) == n):
            raise ValueError("meteo columns differ in length")

    def __len__(self):
        return len(self.timestamps)

    def __getitem__(self, i):
        if isinstance(i, slice):
            return [self[j] for j in range(*i.indices(len(self)))]
        d = self.dhi[i]
        return MeteoRecord(self.timestamps[i], float(self.ghi[i]), None if np.isnan(d) else float(d),
                           float(self.t_ambient[i]))

    @property
    def day_of_year(self):
        return np.array([t.timetuple().tm_yday for t in self.timestamps])

    @property
    def hour(self):
        return np.array([t.hour + t.minute / 60.0 for t in self.timestamps])

    @property
    def month(self):
        return np.array([t.month for t in self.timestamps])

    @property
    def weekday(self):
        return np.array([t.weekday() for t in self.timestamps])

    def scaled(self, factor: float) -> "MeteoSeries":
        """Copy with every irradiance value multiplied by ``factor``."""
        return MeteoSeries(self.timestamps, self.ghi * factor, self.dhi * factor, self.t_ambient)

    @classmethod
    def from_records(cls, records):
        records = list(records)
        return cls([r.timestamp for r in records], [r.ghi for r in records],
                   [np.nan if r.dhi is None else r.dhi for r in records], [r.t_ambient for r in records])


def _parse_float(text, column, where, allow_empty=False):
    text = (text or "").strip()
    if not text:
        if allow_empty:
            return np.nan
        raise InputError(f"empty {column}", where)
    try:
        return float(text)
    except ValueError:
        raise InputError(f"{column} is not a number: {text!r}", where) from None


def load_meteo(path) -> MeteoSeries:
    """Read and validate a one-year hourly meteo CSV. Errors name the file and line."""
    path = Path(path)
    if not path.is_file():
        raise InputError("meteo file not found", str(path))
    stamps, ghi, dhi, tamb = [], [], [], []
    with path.open(newline="") as fh:
        reader = csv.DictReader(fh)
        missing = [c for c in COLUMNS if c not in (reader.fieldnames or ())]
        if missing:
            raise InputError(f"missing columns {missing}; expected header {','.join(COLUMNS)}", f"{path}:1")
        for lineno, row in enumerate(reader, start=2):
            where = f"{path}:{lineno}"
            try:
                ts = datetime.fromisoformat((row["timestamp"] or "").strip())
            except ValueError:
                raise InputError(f"bad timestamp {row['timestamp']!r}", where) from None
            ts = ts.replace(tzinfo=None)
            g = _parse_float(row["ghi"], "ghi", where)
            d = _parse_float(row["dhi"], "dhi", where, allow_empty=True)
            t = _parse_float(row["tamb"], "tamb", where)
            if g < 0:
                raise InputError(f"ghi must be >= 0, got {g}", where)
            if not np.isnan(d) and (d < 0 or d > g + 1e-9):
                raise InputError(f"dhi must lie within [0, ghi], got {d} with ghi {g}", where)
            if stamps and ts != stamps[-1] + timedelta(hours=1):
                raise InputError(f"timestamp {ts.isoformat()} does not follow {stamps[-1].isoformat()} "
                                 "by exactly one hour", where)
            stamps.append(ts)
            ghi.append(g)
            dhi.append(d)
            tamb.append(t)
    if not stamps:
        raise InputError("no data rows", str(path))
    year = stamps[0].year
    expected = 8784 if calendar.isleap(year) else 8760
    if stamps[0] != datetime(year, 1, 1) or len(stamps) != expected:
        raise InputError(f"expected {expected} hourly rows covering calendar year {year} from "
                         f"{year}-01-01T00:00, got {len(stamps)} rows from {stamps[0].isoformat()}", str(path))
    return MeteoSeries(stamps, ghi, dhi, tamb)


def write_meteo(series: MeteoSeries, path) -> None:
    path = Path(path)
    with path.open("w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(COLUMNS)
        for ts, g, d, t in zip(series.timestamps, series.ghi, series.dhi, series.t_ambient):
            w.writerow([ts.isoformat(timespec="minutes"), f"{g:.1f}", "" if np.isnan(d) else f"{d:.1f}", f"{t:.1f}"])


# Monthly sky clearness (fraction of clear-sky GHI) and mean temperature for a
# monsoon-climate site in central Luzon. Synthetic climatology, not measured data.
_CLEARNESS = (0.78, 0.80, 0.82, 0.81, 0.74, 0.64, 0.57, 0.53, 0.59, 0.67, 0.72, 0.75)
_MEAN_TEMP = (25.6, 26.3, 27.8, 29.5, 29.6, 28.6, 27.7, 27.4, 27.4, 27.4, 26.9, 25.9)
_DIURNAL_SWING = (4.5, 4.8, 5.0, 5.0, 4.5, 3.8, 3.2, 3.0, 3.2, 3.6, 4.0, 4.3)


def synthetic_year(site: SiteSpec, year: int = 2020, seed: int = 2020) -> MeteoSeries:
    """Deterministic synthetic hourly year (Haurwitz clear sky x stochastic monthly clearness).

    Stands in for a proprietary meteorological database; DHI is left empty.
    """
    rng = np.random.default_rng(seed)
    start = datetime(year, 1, 1)
    n = 8784 if calendar.isleap(year) else 8760
    stamps = [start + timedelta(hours=h) for h in range(n)]
    doy = np.array([t.timetuple().tm_yday for t in stamps])
    hour = np.array([t.hour for t in stamps], dtype=float)
    month = np.array([t.month for t in stamps]) - 1
    elev, _ = solar_angles(site, doy, hour + 0.5)
    cos_z = np.sin(np.radians(np.maximum(elev, 0.0)))
    with np.errstate(divide="ignore", over="ignore"):
        clear = np.where(cos_z > 0.01, 1098.0 * cos_z * np.exp(-0.057 / np.maximum(cos_z, 1e-3)), 0.0)
    days = doy.max()
    base = np.array(_CLEARNESS)[month[::24][:days]]
    daily = np.clip(base + rng.normal(0.0, 0.12, days), 0.15, 0.98)
    hourly = np.clip(daily[doy - 1] + rng.normal(0.0, 0.05, n), 0.05, 1.0)
    ghi = np.round(clear * hourly, 1)
    swing = np.array(_DIURNAL_SWING)[month]
    daily_offset = rng.normal(0.0, 0.8, days)[doy - 1]
    tamb = np.array(_MEAN_TEMP)[month] + daily_offset + swing * np.cos(2 * np.pi * (hour - 14.0) / 24.0)
    return MeteoSeries(stamps, ghi, np.full(n, np.nan), np.round(tamb, 1))
