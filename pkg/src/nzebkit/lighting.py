"""Zonal-cavity (lumen method) lighting design.

Cavity ratios follow CR = 5 h (L + W) / (L W). Effective cavity reflectance uses the
interreflection relation behind the standard IES tables:

    rho_eff = rho_avg * A_o / (A_s - rho_avg * A_s + rho_avg * A_o)

where A_o is the cavity opening, A_s the total cavity surface (base + walls) and rho_avg
the area-weighted reflectance of those surfaces. For a rectangular cavity the wall area
is 0.4 * CR times the base area, so only the ratio is needed.
"""
from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
from scipy.interpolate import RegularGridInterpolator

from .errors import DomainError, InputError

# Relative guard so float noise on an exact integer ratio does not add a fixture.
_CEIL_EPS = 1e-9


def cavity_ratio(cavity_height: float, length: float, width: float) -> float:
    if length <= 0 or width <= 0:
        raise DomainError("room length and width must be positive")
    if cavity_height < 0:
        raise DomainError("cavity height must be >= 0")
    return 5.0 * cavity_height * (length + width) / (length * width)


def effective_cavity_reflectance(base: float, wall: float, cavity_ratio: float) -> float:
    """Effective reflectance seen through the opening of a cavity.

    ``base`` is the ceiling (or floor) reflectance, ``wall`` the cavity wall reflectance.
    """
    for name, value in (("base", base), ("wall", wall)):
        if not 0.0 <= value <= 1.0:
            raise DomainError(f"{name} reflectance must be within [0, 1], got {value}")
    if cavity_ratio < 0:
        raise DomainError("cavity ratio must be >= 0")
    if cavity_ratio == 0:
        return base
    wall_area = 0.4 * cavity_ratio  # per unit base area
    surface = 1.0 + wall_area
    avg = (base + wall * wall_area) / surface
    return avg / (surface - avg * surface + avg)


class CUTable:
    """Coefficient-of-utilization grid over (RCR, effective ceiling reflectance, wall reflectance).

    Linear interpolation inside the grid; queries outside it are clamped to the edges,
    matching how printed photometric tables are read.
    """

    def __init__(self, rcr, rho_cc, rho_w, values):
        self.axes = tuple(np.asarray(a, dtype=float) for a in (rcr, rho_cc, rho_w))
        self.values = np.asarray(values, dtype=float)
        expected = tuple(len(a) for a in self.axes)
        if self.values.shape != expected:
            raise DomainError(f"CU grid shape {self.values.shape} does not match axes {expected}")
        # RegularGridInterpolator needs at least two points per axis; duplicate singleton axes.
        axes, values = [], self.values
        for i, a in enumerate(self.axes):
            if len(a) == 1:
                a = np.array([a[0], a[0] + 1.0])
                values = np.concatenate([values, values], axis=i)
            axes.append(a)
        self._interp = RegularGridInterpolator(axes, values, method="linear")
        self._lo = [a[0] for a in self.axes]
        self._hi = [a[-1] for a in self.axes]

    def __call__(self, rcr: float, rho_cc: float, rho_w: float) -> float:
        point = [min(max(x, lo), hi) for x, lo, hi in zip((rcr, rho_cc, rho_w), self._lo, self._hi)]
        return float(self._interp(point)[0])

    @classmethod
    def from_csv(cls, path) -> "CUTable":
        """Read rows of ``rcr,rho_cc,rho_w,cu``; every grid combination must be present."""
        path = Path(path)
        rows = {}
        with path.open(newline="") as fh:
            reader = csv.DictReader(fh)
            missing = {"rcr", "rho_cc", "rho_w", "cu"} - set(reader.fieldnames or ())
            if missing:
                raise InputError(f"missing columns {sorted(missing)}", f"{path}:1")
            for lineno, row in enumerate(reader, start=2):
                try:
                    key = (float(row["rcr"]), float(row["rho_cc"]), float(row["rho_w"]))
                    rows[key] = float(row["cu"])
                except (TypeError, ValueError) as exc:
                    raise InputError(f"bad number ({exc})", f"{path}:{lineno}") from None
        axes = [sorted({k[i] for k in rows}) for i in range(3)]
        grid = np.empty(tuple(len(a) for a in axes))
        for i, r in enumerate(axes[0]):
            for j, c in enumerate(axes[1]):
                for k, w in enumerate(axes[2]):
                    if (r, c, w) not in rows:
                        raise InputError(f"CU grid has no entry for rcr={r}, rho_cc={c}, rho_w={w}", str(path))
                    grid[i, j, k] = rows[(r, c, w)]
        return cls(*axes, grid)


@dataclass(frozen=True)
class Reflectances:
    ceiling: float
    wall: float
    floor: float


@dataclass(frozen=True)
class RoomLightingModel:
    length: float
    width: float
    ceiling_height: float
    fixture_mounting_height: float
    reflectances: Reflectances
    work_plane_height: float = 0.0
    # Direct overrides for effective reflectances taken from a photometric table.
    ceiling_cavity_reflectance: float | None = None
    floor_cavity_reflectance: float | None = None

    def __post_init__(self):
        if self.length <= 0 or self.width <= 0:
            raise DomainError("room length and width must be positive")
        if not 0 <= self.work_plane_height < self.fixture_mounting_height <= self.ceiling_height:
            raise DomainError("require 0 <= work plane < mounting height <= ceiling height")
        for value in (self.reflectances.ceiling, self.reflectances.wall, self.reflectances.floor):
            if not 0.0 <= value <= 1.0:
                raise DomainError(f"reflectance {value} outside [0, 1]")

    @property
    def floor_area(self) -> float:
        return self.length * self.width

    @property
    def room_cavity_height(self) -> float:
        return self.fixture_mounting_height - self.work_plane_height

    @property
    def ceiling_cavity_height(self) -> float:
        return self.ceiling_height - self.fixture_mounting_height

    @property
    def floor_cavity_height(self) -> float:
        return self.work_plane_height


@dataclass(frozen=True)
class LuminaireSpec:
    lamps_per_fixture: int
    lumens_per_lamp: float
    lamp_lumen_depreciation: float
    luminaire_dirt_depreciation: float
    coefficient_of_utilization: float | None = None
    cu_table: CUTable | None = field(default=None, compare=False)
    input_power_per_fixture: float = 0.0  # VA
    name: str = ""

    def __post_init__(self):
        if self.lumens_per_lamp <= 0 or self.lamps_per_fixture <= 0:
            raise DomainError("lamp count and lumens per lamp must be positive")
        factors = [self.lamp_lumen_depreciation, self.luminaire_dirt_depreciation]
        if self.coefficient_of_utilization is not None:
            factors.append(self.coefficient_of_utilization)
        elif self.cu_table is None:
            raise DomainError("luminaire needs a coefficient of utilization or a CU table")
        if any(not 0.0 < f <= 1.0 for f in factors):
            raise DomainError("photometric factors must lie in (0, 1]")


@dataclass(frozen=True)
class CavityReport:
    room_cavity_ratio: float
    ceiling_cavity_ratio: float
    floor_cavity_ratio: float
    ceiling_effective_reflectance: float
    floor_effective_reflectance: float


def cavity_report(room: RoomLightingModel) -> CavityReport:
    rcr = cavity_ratio(room.room_cavity_height, room.length, room.width)
    ccr = cavity_ratio(room.ceiling_cavity_height, room.length, room.width)
    fcr = cavity_ratio(room.floor_cavity_height, room.length, room.width)
    rho_cc = room.ceiling_cavity_reflectance
    if rho_cc is None:
        rho_cc = effective_cavity_reflectance(room.reflectances.ceiling, room.reflectances.wall, ccr)
    rho_fc = room.floor_cavity_reflectance
    if rho_fc is None:
        rho_fc = effective_cavity_reflectance(room.reflectances.floor, room.reflectances.wall, fcr)
    return CavityReport(rcr, ccr, fcr, rho_cc, rho_fc)


def resolve_cu(room: RoomLightingModel, lum: LuminaireSpec) -> float:
    """Explicit CU wins; otherwise interpolate the luminaire's grid at the room's RCR."""
    if lum.coefficient_of_utilization is not None:
        return lum.coefficient_of_utilization
    cav = cavity_report(room)
    cu = lum.cu_table(cav.room_cavity_ratio, cav.ceiling_effective_reflectance, room.reflectances.wall)
    if cu <= 0:
        raise DomainError("interpolated coefficient of utilization is not positive")
    return cu


def lumens_delivered_per_fixture(room: RoomLightingModel, lum: LuminaireSpec) -> float:
    return (
        lum.lamps_per_fixture
        * lum.lumens_per_lamp
        * resolve_cu(room, lum)
        * lum.lamp_lumen_depreciation
        * lum.luminaire_dirt_depreciation
    )


def required_fixtures(room: RoomLightingModel, lum: LuminaireSpec, target_lux: float) -> int:
    """Smallest fixture count whose maintained illuminance reaches ``target_lux``."""
    if target_lux < 0:
        raise DomainError("target illuminance must be >= 0")
    per_fixture = lumens_delivered_per_fixture(room, lum)
    if per_fixture <= 0:
        raise DomainError("photometric factors give zero delivered lumens")
    exact = target_lux * room.floor_area / per_fixture
    return max(0, math.ceil(exact - _CEIL_EPS * max(1.0, exact)))


def achieved_illuminance(fixture_count: int, room: RoomLightingModel, lum: LuminaireSpec) -> float:
    if fixture_count < 0:
        raise DomainError("fixture count must be >= 0")
    return fixture_count * lumens_delivered_per_fixture(room, lum) / room.floor_area
