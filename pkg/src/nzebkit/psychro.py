"""Moist-air properties and the sensible-heat ventilation relations.

All correlations live in this module so the constant set is defined once:

* saturation pressure over liquid water: Hyland-Wexler (ASHRAE Fundamentals),
* perfect-gas mixture relations for humidity ratio, specific volume and enthalpy.

Temperatures are in degC, pressures in kPa, specific quantities per kg of dry air.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError

STANDARD_PRESSURE = 101.325  # kPa
R_DRY_AIR = 0.287042  # kJ/(kg K)
MOLAR_MASS_RATIO = 0.621945  # M_water / M_dry_air
VOLUME_FACTOR = 1.607858  # 1 / MOLAR_MASS_RATIO
CP_DRY_AIR = 1.006  # kJ/(kg K), enthalpy datum at 0 degC
CP_VAPOUR = 1.86  # kJ/(kg K)
H_FG0 = 2501.0  # kJ/kg at 0 degC

# Hyland-Wexler coefficients, saturation over liquid water, result in Pa
_HW = (-5.8002206e3, 1.3914993, -4.8640239e-2, 4.1764768e-5, -1.4452093e-8, 6.5459673)

T_MIN, T_MAX = -40.0, 120.0

# Reference state used to derive the default specific volume for ventilation sizing.
DEFAULT_REFERENCE_DB = 30.0
DEFAULT_REFERENCE_RH = 0.60
DEFAULT_SUPPLY_DELTA_T = 8.0
DEFAULT_CP = 1.005


def saturation_pressure(dry_bulb: float) -> float:
    """Saturation vapour pressure of water over liquid (kPa)."""
    if not T_MIN <= dry_bulb <= T_MAX:
        raise DomainError(f"dry_bulb {dry_bulb} degC outside [{T_MIN}, {T_MAX}]")
    c8, c9, c10, c11, c12, c13 = _HW
    t = dry_bulb + 273.15
    ln_p = c8 / t + c9 + c10 * t + c11 * t**2 + c12 * t**3 + c13 * math.log(t)
    return math.exp(ln_p) / 1000.0


def humidity_ratio_from_vapour_pressure(p_w: float, pressure: float) -> float:
    return MOLAR_MASS_RATIO * p_w / (pressure - p_w)


def vapour_pressure_from_humidity_ratio(humidity_ratio: float, pressure: float) -> float:
    return pressure * humidity_ratio / (MOLAR_MASS_RATIO + humidity_ratio)


def specific_volume(dry_bulb: float, humidity_ratio: float, pressure: float) -> float:
    """m3 per kg dry air."""
    return R_DRY_AIR * (dry_bulb + 273.15) * (1.0 + VOLUME_FACTOR * humidity_ratio) / pressure


def enthalpy(dry_bulb: float, humidity_ratio: float) -> float:
    """kJ per kg dry air."""
    return CP_DRY_AIR * dry_bulb + humidity_ratio * (H_FG0 + CP_VAPOUR * dry_bulb)


@dataclass(frozen=True)
class MoistAirState:
    dry_bulb: float
    pressure: float
    humidity_ratio: float
    specific_volume: float
    enthalpy: float
    relative_humidity: float


def state_from_db_w(dry_bulb: float, humidity_ratio: float, pressure: float = STANDARD_PRESSURE) -> MoistAirState:
    """State from dry bulb and humidity ratio. Relative humidity is recovered, not clipped."""
    if humidity_ratio < 0:
        raise DomainError(f"humidity ratio must be >= 0, got {humidity_ratio}")
    p_w = vapour_pressure_from_humidity_ratio(humidity_ratio, pressure)
    rh = p_w / saturation_pressure(dry_bulb)
    if rh > 1.0 + 1e-9:
        raise DomainError(f"humidity ratio {humidity_ratio} is supersaturated at {dry_bulb} degC")
    return MoistAirState(
        dry_bulb=dry_bulb,
        pressure=pressure,
        humidity_ratio=humidity_ratio,
        specific_volume=specific_volume(dry_bulb, humidity_ratio, pressure),
        enthalpy=enthalpy(dry_bulb, humidity_ratio),
        relative_humidity=min(rh, 1.0),
    )


def state_from_db_rh(dry_bulb: float, rh: float, pressure: float = STANDARD_PRESSURE) -> MoistAirState:
    """State from dry bulb (degC), relative humidity (fraction) and pressure (kPa)."""
    if not 0.0 <= rh <= 1.0:
        raise DomainError(f"relative humidity must be within [0, 1], got {rh}")
    p_w = rh * saturation_pressure(dry_bulb)
    if pressure <= p_w:
        raise DomainError(f"pressure {pressure} kPa does not exceed vapour pressure {p_w:.4f} kPa")
    w = humidity_ratio_from_vapour_pressure(p_w, pressure)
    return MoistAirState(
        dry_bulb=dry_bulb,
        pressure=pressure,
        humidity_ratio=w,
        specific_volume=specific_volume(dry_bulb, w, pressure),
        enthalpy=enthalpy(dry_bulb, w),
        relative_humidity=rh,
    )


def relative_humidity(dry_bulb: float, humidity_ratio: float, pressure: float = STANDARD_PRESSURE) -> float:
    return vapour_pressure_from_humidity_ratio(humidity_ratio, pressure) / saturation_pressure(dry_bulb)


def default_air_state() -> MoistAirState:
    """Air state whose specific volume (about 0.881 m3/kg) backs the default ventilation sizing."""
    return state_from_db_rh(DEFAULT_REFERENCE_DB, DEFAULT_REFERENCE_RH)


@dataclass(frozen=True)
class VentilationSpec:
    sensible_load: float  # kW
    supply_to_room_delta_t: float = DEFAULT_SUPPLY_DELTA_T  # K
    cp: float = DEFAULT_CP  # kJ/(kg K)


def ventilation_flow_for_sensible_load(spec: VentilationSpec, air: MoistAirState | None = None) -> float:
    """Volume flow (L/s) that removes ``spec.sensible_load`` at the given supply temperature rise.

    Qs = (V / v) * cp * dT, solved for V.
    """
    if spec.supply_to_room_delta_t <= 0:
        raise DomainError("supply-to-room temperature difference must be positive")
    if spec.cp <= 0:
        raise DomainError("cp must be positive")
    if spec.sensible_load < 0:
        raise DomainError("sensible load must be >= 0")
    air = air or default_air_state()
    flow_m3s = spec.sensible_load * air.specific_volume / (spec.cp * spec.supply_to_room_delta_t)
    return flow_m3s * 1000.0


def sensible_load_for_flow(volume_flow: float, air: MoistAirState, cp: float, delta_t: float) -> float:
    """Inverse of :func:`ventilation_flow_for_sensible_load`, kW for a flow in L/s."""
    return volume_flow / 1000.0 / air.specific_volume * cp * delta_t


def coil_load(volume_flow: float, inlet: MoistAirState, outlet: MoistAirState) -> float:
    """Total (sensible + latent) coil load in kW; positive when the coil cools the air."""
    if volume_flow <= 0:
        raise DomainError("volume flow must be positive")
    mass_flow = volume_flow / 1000.0 / inlet.specific_volume
    return mass_flow * (inlet.enthalpy - outlet.enthalpy)
