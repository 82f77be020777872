"""PV module/inverter models, string sizing and array configuration.

Azimuths follow the south-referenced convention: 0 = due south, negative towards east,
positive towards west (so -8 and 172 describe two opposite roof faces).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import DesignError, DomainError

DEFAULT_T_MIN = 15.0  # degC, coldest expected ambient
DEFAULT_T_CELL_MAX = 65.0  # degC, hottest expected cell


def compass_to_south_azimuth(compass: float) -> float:
    """North-referenced compass bearing (0 = N, 90 = E) to the south-referenced convention."""
    az = (compass - 180.0) % 360.0
    return az - 360.0 if az > 180.0 else az


def south_to_compass_azimuth(azimuth: float) -> float:
    return (azimuth + 180.0) % 360.0


@dataclass(frozen=True)
class PVModuleSpec:
    name: str
    p_stc: float  # Wp
    v_mp: float
    v_oc: float
    i_mp: float
    i_sc: float
    gamma_p: float  # %/K
    beta_voc: float  # %/K
    noct: float = 45.0
    module_area: float = 0.0
    unit_cost: float = 0.0

    def __post_init__(self):
        if self.p_stc <= 0:
            raise DomainError(f"{self.name}: p_stc must be positive")
        if not 0 < self.v_mp < self.v_oc:
            raise DomainError(f"{self.name}: require 0 < v_mp < v_oc")
        if self.gamma_p > 0 or self.beta_voc > 0:
            raise DomainError(f"{self.name}: temperature coefficients must be <= 0")

    def v_oc_at(self, t_cell: float) -> float:
        return self.v_oc * (1.0 + self.beta_voc / 100.0 * (t_cell - 25.0))

    def v_mp_at(self, t_cell: float) -> float:
        # Datasheets rarely give a Vmp coefficient; the power coefficient stands in for it.
        return self.v_mp * (1.0 + self.gamma_p / 100.0 * (t_cell - 25.0))


@dataclass(frozen=True)
class InverterSpec:
    name: str
    p_ac_nominal: float  # W
    mppt_v_min: float
    mppt_v_max: float
    v_dc_max: float
    efficiency: float = 0.97
    unit_cost: float = 0.0

    def __post_init__(self):
        if not 0 < self.mppt_v_min < self.mppt_v_max <= self.v_dc_max:
            raise DomainError(f"{self.name}: require 0 < mppt_v_min < mppt_v_max <= v_dc_max")
        if not 0 < self.efficiency <= 1:
            raise DomainError(f"{self.name}: efficiency must lie in (0, 1]")
        if self.p_ac_nominal <= 0:
            raise DomainError(f"{self.name}: nominal AC power must be positive")


@dataclass(frozen=True)
class Orientation:
    tilt: float
    azimuth: float


@dataclass(frozen=True)
class SubArray:
    module: PVModuleSpec
    modules_in_series: int
    parallel_strings: int
    orientation: Orientation

    @property
    def module_count(self) -> int:
        return self.modules_in_series * self.parallel_strings

    @property
    def p_stc(self) -> float:
        """Nominal DC power in W."""
        return self.module_count * self.module.p_stc


@dataclass(frozen=True)
class ArrayDesign:
    sub_arrays: tuple[SubArray, ...]
    inverter: InverterSpec
    inverter_count: int
    t_min: float = DEFAULT_T_MIN
    t_cell_max: float = DEFAULT_T_CELL_MAX

    @property
    def module_count(self) -> int:
        return sum(s.module_count for s in self.sub_arrays)

    @property
    def string_count(self) -> int:
        return sum(s.parallel_strings for s in self.sub_arrays)

    @property
    def p_dc_nominal(self) -> float:
        return sum(s.p_stc for s in self.sub_arrays)

    @property
    def p_ac_nominal(self) -> float:
        return self.inverter.p_ac_nominal * self.inverter_count

    @property
    def dc_ac_ratio(self) -> float:
        return self.p_dc_nominal / self.p_ac_nominal if self.inverter_count else 0.0

    @property
    def module_area(self) -> float:
        return sum(s.module_count * s.module.module_area for s in self.sub_arrays)

    def connection_summary(self) -> list[str]:
        """One line per sub-array: strings x series, module, orientation."""
        lines = []
        for i, s in enumerate(self.sub_arrays, start=1):
            lines.append(
                f"sub-array {i}: {s.parallel_strings} strings x {s.modules_in_series} in series "
                f"of {s.module.name} ({s.module_count} modules, {s.p_stc / 1000:.2f} kWp) "
                f"at tilt {s.orientation.tilt:g} / azimuth {s.orientation.azimuth:g}"
            )
        lines.append(
            f"{self.inverter_count} x {self.inverter.name} "
            f"({self.p_ac_nominal / 1000:.1f} kWac total, DC:AC {self.dc_ac_ratio:.3f})"
        )
        return lines


def series_bounds(module: PVModuleSpec, inverter: InverterSpec,
                  t_min: float = DEFAULT_T_MIN, t_cell_max: float = DEFAULT_T_CELL_MAX) -> tuple[int, int]:
    """(min, max) modules per string keeping the string inside the inverter voltage window.

    The maximum keeps cold open-circuit voltage under ``v_dc_max``; the minimum keeps
    hot maximum-power voltage above the MPPT floor.
    """
    if not t_min < 25.0 < t_cell_max:
        raise DomainError("require t_min < 25 < t_cell_max")
    max_series = math.floor(inverter.v_dc_max / module.v_oc_at(t_min))
    min_series = math.ceil(inverter.mppt_v_min / module.v_mp_at(t_cell_max))
    if min_series > max_series:
        raise DesignError(
            f"{module.name} on {inverter.name}: no feasible string length "
            f"(min {min_series} > max {max_series})"
        )
    return min_series, max_series


def configure_array(target_dc: float, modules, inverter: InverterSpec, inverter_count: int, orientations,
                    t_min: float = DEFAULT_T_MIN, t_cell_max: float = DEFAULT_T_CELL_MAX,
                    series: int | None = None) -> ArrayDesign:
    """Pick a string length and a per-orientation string count close to ``target_dc`` W.

    Orientation ``i`` is populated with ``modules[i % len(modules)]`` and every orientation
    carries the same number of strings, so each roof face (and its inverter) is equally
    loaded. All string lengths feasible for every module are enumerated; the design with
    the smallest deviation from the target wins, ties going to fewer strings.
    """
    modules = list(modules)
    orientations = list(orientations)
    if target_dc <= 0:
        raise DomainError("target DC power must be positive")
    if not modules or not orientations:
        raise DomainError("need at least one module and one orientation")
    if inverter_count < 1:
        raise DomainError("need at least one inverter")
    assigned = [modules[i % len(modules)] for i in range(len(orientations))]

    lo, hi = 0, math.inf
    for m in assigned:
        m_lo, m_hi = series_bounds(m, inverter, t_min, t_cell_max)
        lo, hi = max(lo, m_lo), min(hi, m_hi)
    if series is not None:
        if not lo <= series <= hi:
            raise DesignError(f"requested series length {series} outside feasible range [{lo}, {hi}]")
        lo = hi = series
    if lo > hi:
        raise DesignError(f"module catalog has no common feasible string length ({lo} > {hi})")

    per_string_set = sum(m.p_stc for m in assigned)  # one string on every orientation, per module in series
    best = None
    for s in range(lo, hi + 1):
        step = s * per_string_set
        for n in {max(1, math.floor(target_dc / step)), max(1, math.ceil(target_dc / step))}:
            key = (abs(n * step - target_dc), n * len(orientations), -s)
            if best is None or key < best[0]:
                best = (key, s, n)
    _, s, n = best
    subs = tuple(SubArray(m, s, n, o) for m, o in zip(assigned, orientations))
    design = ArrayDesign(subs, inverter, inverter_count, t_min, t_cell_max)
    report = validate_design(design)
    if report.violations:
        raise DesignError("; ".join(report.violations))
    return design


@dataclass(frozen=True)
class ValidationReport:
    violations: list[str] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)
    dc_ac_ratio: float = 0.0

    @property
    def valid(self) -> bool:
        return not self.violations


def validate_design(design: ArrayDesign) -> ValidationReport:
    """Check every string against the inverter voltage window; violations are returned, not raised."""
    inv = design.inverter
    violations, warnings = [], []
    for i, s in enumerate(design.sub_arrays, start=1):
        if s.parallel_strings == 0:
            continue
        cold_voc = s.modules_in_series * s.module.v_oc_at(design.t_min)
        hot_vmp = s.modules_in_series * s.module.v_mp_at(design.t_cell_max)
        cold_vmp = s.modules_in_series * s.module.v_mp_at(design.t_min)
        if cold_voc > inv.v_dc_max:
            violations.append(
                f"sub-array {i}: cold Voc {cold_voc:.1f} V at {design.t_min:g} degC exceeds "
                f"inverter maximum {inv.v_dc_max:g} V"
            )
        if hot_vmp < inv.mppt_v_min:
            violations.append(
                f"sub-array {i}: hot Vmp {hot_vmp:.1f} V at {design.t_cell_max:g} degC below "
                f"MPPT minimum {inv.mppt_v_min:g} V"
            )
        if cold_vmp > inv.mppt_v_max:
            warnings.append(f"sub-array {i}: cold Vmp {cold_vmp:.1f} V above MPPT maximum {inv.mppt_v_max:g} V")
    ratio = design.dc_ac_ratio
    if design.string_count == 0:
        warnings.append("design has no strings (DC:AC ratio 0)")
    return ValidationReport(violations, warnings, ratio)
