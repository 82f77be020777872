"""Avoided CO2 over the system lifetime."""
from __future__ import annotations

from dataclasses import dataclass

from .errors import DomainError


@dataclass(frozen=True)
class CarbonParams:
    grid_emission_factor: float  # tCO2/MWh
    lifetime: float  # years
    annual_energy: float  # MWh/yr
    system_embodied: float = 0.0  # tCO2

    def __post_init__(self):
        for name in ("grid_emission_factor", "lifetime", "annual_energy", "system_embodied"):
            if getattr(self, name) < 0:
                raise DomainError(f"{name} must be >= 0")


@dataclass(frozen=True)
class CarbonResult:
    gross_avoided: float
    raw: float  # gross minus embodied, may be negative
    reported: float  # raw floored at zero


def avoided_emissions(params: CarbonParams) -> CarbonResult:
    gross = params.annual_energy * params.lifetime * params.grid_emission_factor
    raw = gross - params.system_embodied
    return CarbonResult(gross, raw, max(raw, 0.0))
