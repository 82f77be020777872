"""Hourly energy-yield simulation of an :class:`~nzebkit.pvdesign.ArrayDesign`.

Each hour: sun position at the interval midpoint, GHI split into beam and diffuse,
isotropic transposition per orientation, NOCT cell temperature, temperature-corrected
DC power with a lumped derate, inverter efficiency and AC clipping. The AC output is
then split against the building load into self-consumed and exported energy.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .meteo import MeteoSeries
from .pvdesign import ArrayDesign
from .solar import (DECOMPOSITION_MODEL, TRANSPOSITION_MODEL, SiteSpec, cos_incidence, decompose_ghi,
                    poa_components, solar_angles)

DEFAULT_DERATE = 0.90


def cell_temperature(t_ambient, poa, noct):
    return t_ambient + (noct - 20.0) / 800.0 * poa


def ac_power_step(design: ArrayDesign, poa, t_ambient, derate: float = DEFAULT_DERATE, clip: bool = True):
    """DC/AC power (W) and cell temperatures for one step.

    ``poa`` holds one irradiance (W/m2, scalar or array) per sub-array. Returns a dict with
    ``dc``, ``ac`` and ``t_cell`` (one entry per sub-array).
    """
    if len(poa) != len(design.sub_arrays):
        raise DomainError(f"need {len(design.sub_arrays)} POA values, got {len(poa)}")
    dc = 0.0
    t_cells = []
    for sub, g in zip(design.sub_arrays, poa):
        g = np.asarray(g, dtype=float)
        t_cell = cell_temperature(t_ambient, g, sub.module.noct)
        p = sub.p_stc * (g / 1000.0) * (1.0 + sub.module.gamma_p / 100.0 * (t_cell - 25.0)) * derate
        dc = dc + np.maximum(p, 0.0)
        t_cells.append(t_cell)
    ac = dc * design.inverter.efficiency
    if clip:
        ac = np.minimum(ac, design.p_ac_nominal)
    if np.ndim(ac) == 0:
        return {"dc": float(dc), "ac": float(ac), "t_cell": [float(t) for t in t_cells]}
    return {"dc": dc, "ac": ac, "t_cell": t_cells}


# Hourly utilisation of the connected load (fraction), weekday / Saturday / Sunday.
# Gymnasium pattern: classes and practice on weekdays, light weekend use.
_WEEKDAY = ([0.02] * 7 + [0.19, 0.32, 0.32, 0.32, 0.32, 0.26, 0.26, 0.32, 0.32, 0.29]
            + [0.19, 0.13, 0.06] + [0.02] * 4)
_SATURDAY = [0.02] * 7 + [0.16] * 10 + [0.02] * 7
_SUNDAY = [0.02] * 24
DEFAULT_WEEK_TEMPLATE = tuple([tuple(_WEEKDAY)] * 5 + [tuple(_SATURDAY), tuple(_SUNDAY)])


def building_load_profile(meteo: MeteoSeries, connected_kva: float, power_factor: float = 1.0,
                          week_template=DEFAULT_WEEK_TEMPLATE):
    """Hourly building demand (kW): weekly utilisation template x connected load x power factor."""
    template = np.asarray(week_template, dtype=float)
    if template.shape != (7, 24):
        raise DomainError("week template must be 7 days x 24 hours (Monday first)")
    if not 0 < power_factor <= 1:
        raise DomainError("power factor must lie in (0, 1]")
    hours = np.array([t.hour for t in meteo.timestamps])
    return template[meteo.weekday, hours] * connected_kva * power_factor


@dataclass(frozen=True)
class HourlyTrace:
    timestamps: list
    poa: np.ndarray  # DC-share weighted W/m2
    t_cell: np.ndarray  # DC-share weighted degC
    dc: np.ndarray  # W
    ac: np.ndarray  # W
    load: np.ndarray  # W
    self_consumed: np.ndarray  # W
    exported: np.ndarray  # W


@dataclass(frozen=True)
class EnergyResult:
    annual_dc: float  # kWh
    annual_ac: float
    self_consumed: float
    exported: float
    annual_load: float
    poa_insolation: float  # kWh/m2, DC-share weighted
    nominal_kwp: float
    trace: HourlyTrace
    transposition_model: str = TRANSPOSITION_MODEL
    decomposition_model: str = DECOMPOSITION_MODEL

    @property
    def specific_yield(self) -> float:
        return self.annual_ac / self.nominal_kwp if self.nominal_kwp else 0.0

    @property
    def performance_ratio(self) -> float:
        ref = self.nominal_kwp * self.poa_insolation
        return self.annual_ac / ref if ref else 0.0

    def monthly(self):
        """(month, ac kWh, self-consumed kWh, exported kWh) for months 1..12."""
        months = np.array([t.month for t in self.trace.timestamps], dtype=int)
        rows = []
        for m in range(1, 13):
            sel = months == m
            rows.append((m, float(self.trace.ac[sel].sum()) / 1000, float(self.trace.self_consumed[sel].sum()) / 1000,
                         float(self.trace.exported[sel].sum()) / 1000))
        return rows


def annual_simulation(design: ArrayDesign, meteo: MeteoSeries, site: SiteSpec, building_load,
                      derate: float = DEFAULT_DERATE, clip: bool = True) -> EnergyResult:
    """Simulate a full year hour by hour. ``building_load`` is kW per meteo hour.

    Hourly AC and load are rounded to whole watt-hours before the self-consumption split,
    so self-consumed + exported equals AC exactly in the annual totals.
    """
    load_kw = np.asarray(building_load, dtype=float)
    if load_kw.shape != (len(meteo),):
        raise DomainError(f"load profile has {load_kw.size} hours, meteo has {len(meteo)}")
    if np.any(load_kw < 0):
        raise DomainError("building load must be >= 0")
    doy = meteo.day_of_year

    elev, az = solar_angles(site, doy, meteo.hour + 0.5)
    dni, dhi = decompose_ghi(meteo.ghi, elev, doy, meteo.dhi)
    poas = []
    for sub in design.sub_arrays:
        ci = cos_incidence(elev, az, sub.orientation.tilt, sub.orientation.azimuth)
        beam, sky, ground = poa_components(dni, dhi, meteo.ghi, ci, sub.orientation.tilt, site.albedo)
        poas.append(np.maximum(beam + sky + ground, 0.0))
    step = ac_power_step(design, poas, meteo.t_ambient, derate=derate, clip=clip)
    dc = np.broadcast_to(step["dc"], elev.shape).astype(float)
    ac = np.broadcast_to(step["ac"], elev.shape).astype(float)

    # Integer watt-hours make the energy split exact and order-independent.
    ac_wh = np.rint(ac).astype(np.int64)
    load_wh = np.rint(load_kw * 1000.0).astype(np.int64)
    self_wh = np.minimum(ac_wh, load_wh)
    export_wh = ac_wh - self_wh

    p_total = design.p_dc_nominal
    weights = [sub.p_stc / p_total if p_total else 0.0 for sub in design.sub_arrays]
    poa_w = sum(w * p for w, p in zip(weights, poas)) if poas else np.zeros_like(elev)
    t_cell_w = sum(w * t for w, t in zip(weights, step["t_cell"])) if poas else np.asarray(meteo.t_ambient)
    trace = HourlyTrace(meteo.timestamps, np.asarray(poa_w), np.asarray(t_cell_w), dc, ac_wh.astype(float),
                        load_wh.astype(float), self_wh.astype(float), export_wh.astype(float))
    return EnergyResult(
        annual_dc=float(np.sum(dc)) / 1000.0,
        annual_ac=int(ac_wh.sum()) / 1000.0,
        self_consumed=int(self_wh.sum()) / 1000.0,
        exported=int(export_wh.sum()) / 1000.0,
        annual_load=int(load_wh.sum()) / 1000.0,
        poa_insolation=float(np.sum(poa_w)) / 1000.0,
        nominal_kwp=p_total / 1000.0,
        trace=trace,
    )
