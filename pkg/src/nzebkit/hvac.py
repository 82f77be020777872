"""Occupant heat gains and air-conditioning unit count."""
from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError

DEFAULT_SENSIBLE_GAIN_PER_PERSON = 70.0  # W
DEFAULT_UNIT_CAPACITY = 40_090.0  # kJ/hr
DEFAULT_COUNT_TOLERANCE = 0.05


def occupant_sensible_load(occupants: int, per_person: float = DEFAULT_SENSIBLE_GAIN_PER_PERSON) -> float:
    """Sensible gain in kW."""
    if occupants < 0:
        raise DomainError("occupant count must be >= 0")
    return occupants * per_person / 1000.0


def acu_count(total_load: float, unit_capacity: float = DEFAULT_UNIT_CAPACITY,
              tolerance: float = DEFAULT_COUNT_TOLERANCE) -> int:
    """Units needed to cover ``total_load`` kW with units of ``unit_capacity`` kJ/hr.

    Rounds up, except that a fractional remainder of at most ``tolerance`` units is
    dropped (sizing slack). At least one unit is returned for any positive load.
    """
    if unit_capacity <= 0:
        raise DomainError("unit capacity must be positive")
    if total_load <= 0:
        raise DomainError("total load must be positive")
    if not 0 <= tolerance < 1:
        raise DomainError("tolerance must lie in [0, 1)")
    ratio = total_load * 3600.0 / unit_capacity
    whole = math.floor(ratio)
    if whole >= 1 and ratio - whole <= tolerance:
        return whole
    return math.ceil(ratio)


@dataclass(frozen=True)
class CoolingDesign:
    occupants: int
    sensible_gain_per_person: float
    sensible_load: float  # kW
    ventilation_flow: float  # L/s
    total_coil_load: float  # kW
    unit_capacity: float  # kJ/hr
    unit_power_demand: float  # VA
    unit_tonnage: float | None
    units_required: int

    @property
    def installed_capacity_kw(self) -> float:
        return self.units_required * self.unit_capacity / 3600.0

    @property
    def electrical_demand_kva(self) -> float:
        return self.units_required * self.unit_power_demand / 1000.0
