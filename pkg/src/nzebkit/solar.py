"""Sun position, diffuse decomposition and plane-of-array transposition.

Angles are degrees. Azimuths are south-referenced (0 = south, east negative, west
positive), the same convention as array orientations. Functions accept scalars or numpy
arrays.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError

SOLAR_CONSTANT = 1367.0  # W/m2
TRANSPOSITION_MODEL = "isotropic sky (Liu-Jordan)"
DECOMPOSITION_MODEL = "Erbs clearness-index correlation"

# Below this elevation beam irradiance is folded into diffuse; dividing by sin(elevation)
# near the horizon amplifies measurement noise without adding energy.
MIN_BEAM_ELEVATION = 2.0


@dataclass(frozen=True)
class SiteSpec:
    latitude: float
    longitude: float
    elevation: float = 0.0
    timezone: float = 0.0  # hours east of UTC for the meteo timestamps
    albedo: float = 0.2

    def __post_init__(self):
        if abs(self.latitude) > 90:
            raise DomainError("latitude must lie within [-90, 90]")
        if not 0 <= self.albedo <= 1:
            raise DomainError("albedo must lie within [0, 1]")


@dataclass(frozen=True)
class SunPosition:
    elevation: float
    azimuth: float

    @property
    def zenith(self):
        return 90.0 - self.elevation


def _day_angle(day_of_year):
    return 2.0 * np.pi * (np.asarray(day_of_year, dtype=float) - 1.0) / 365.0


def declination(day_of_year):
    """Spencer (1971) Fourier series, degrees."""
    g = _day_angle(day_of_year)
    rad = (0.006918 - 0.399912 * np.cos(g) + 0.070257 * np.sin(g)
           - 0.006758 * np.cos(2 * g) + 0.000907 * np.sin(2 * g)
           - 0.002697 * np.cos(3 * g) + 0.00148 * np.sin(3 * g))
    return np.degrees(rad)


def equation_of_time(day_of_year):
    """Minutes, Spencer (1971)."""
    g = _day_angle(day_of_year)
    return 229.18 * (0.000075 + 0.001868 * np.cos(g) - 0.032077 * np.sin(g)
                     - 0.014615 * np.cos(2 * g) - 0.040849 * np.sin(2 * g))


def extraterrestrial_normal(day_of_year):
    return SOLAR_CONSTANT * (1.0 + 0.033 * np.cos(2.0 * np.pi * np.asarray(day_of_year, dtype=float) / 365.0))


def solar_angles(site: SiteSpec, day_of_year, clock_hour):
    """Vectorised sun elevation and azimuth for local clock time (decimal hours)."""
    decl = np.radians(declination(day_of_year))
    solar_time = (np.asarray(clock_hour, dtype=float)
                  + (4.0 * (site.longitude - 15.0 * site.timezone) + equation_of_time(day_of_year)) / 60.0)
    omega = np.radians(15.0 * (solar_time - 12.0))
    lat = np.radians(site.latitude)
    cos_zen = np.sin(lat) * np.sin(decl) + np.cos(lat) * np.cos(decl) * np.cos(omega)
    cos_zen = np.clip(cos_zen, -1.0, 1.0)
    zen = np.arccos(cos_zen)
    sin_zen = np.sin(zen)
    with np.errstate(invalid="ignore", divide="ignore"):
        cos_az = (cos_zen * np.sin(lat) - np.sin(decl)) / (sin_zen * np.cos(lat))
    cos_az = np.where(sin_zen * np.cos(lat) == 0, 1.0, np.clip(cos_az, -1.0, 1.0))
    az = np.sign(omega) * np.abs(np.arccos(cos_az))
    return 90.0 - np.degrees(zen), np.degrees(az)


def solar_position(site: SiteSpec, timestamp) -> SunPosition:
    """Sun position at a local civil timestamp (``datetime``)."""
    doy = timestamp.timetuple().tm_yday
    hour = timestamp.hour + timestamp.minute / 60.0 + timestamp.second / 3600.0
    elev, az = solar_angles(site, doy, hour)
    return SunPosition(float(elev), float(az))


def erbs_diffuse_fraction(kt):
    kt = np.asarray(kt, dtype=float)
    mid = 0.9511 - 0.1604 * kt + 4.388 * kt**2 - 16.638 * kt**3 + 12.336 * kt**4
    return np.where(kt <= 0.22, 1.0 - 0.09 * kt, np.where(kt <= 0.80, mid, 0.165))


def decompose_ghi(ghi, sun_elevation, day_of_year=1, dhi=None):
    """Split GHI into (dni, dhi), both >= 0, with ``ghi = dni * sin(elevation) + dhi``.

    A supplied ``dhi`` (scalar or array; NaN marks missing entries) is used as is,
    otherwise the diffuse fraction comes from the Erbs correlation.
    """
    ghi = np.asarray(ghi, dtype=float)
    if np.any(ghi < 0):
        raise DomainError("GHI must be >= 0")
    elev = np.asarray(sun_elevation, dtype=float)
    sin_e = np.sin(np.radians(elev))
    beam_ok = elev >= MIN_BEAM_ELEVATION
    with np.errstate(invalid="ignore", divide="ignore", over="ignore"):
        kt = np.where(beam_ok, ghi / (extraterrestrial_normal(day_of_year) * sin_e), 0.0)
    est = erbs_diffuse_fraction(np.clip(kt, 0.0, 1.0)) * ghi
    if dhi is None:
        diffuse = est
    else:
        given = np.broadcast_to(np.asarray(dhi, dtype=float), ghi.shape)
        diffuse = np.where(np.isnan(given), est, np.minimum(given, ghi))
    diffuse = np.where(beam_ok, diffuse, ghi)
    with np.errstate(invalid="ignore", divide="ignore"):
        dni = np.where(beam_ok, (ghi - diffuse) / sin_e, 0.0)
    dni = np.maximum(dni, 0.0)
    if dni.ndim == 0:
        return float(dni), float(diffuse)
    return dni, diffuse


def cos_incidence(sun_elevation, sun_azimuth, tilt, surface_azimuth):
    zen = np.radians(90.0 - np.asarray(sun_elevation, dtype=float))
    t = np.radians(tilt)
    return (np.cos(zen) * np.cos(t)
            + np.sin(zen) * np.sin(t) * np.cos(np.radians(np.asarray(sun_azimuth, dtype=float) - surface_azimuth)))


def poa_components(dni, dhi, ghi, cos_inc, tilt, albedo):
    """(beam, sky diffuse, ground reflected) on the plane, isotropic sky."""
    ct = np.cos(np.radians(tilt))
    beam = np.asarray(dni, dtype=float) * np.maximum(cos_inc, 0.0)
    sky = np.asarray(dhi, dtype=float) * (1.0 + ct) / 2.0
    ground = np.asarray(ghi, dtype=float) * albedo * (1.0 - ct) / 2.0
    return beam, sky, ground


def poa_irradiance(dni, dhi, ghi, sun: SunPosition, orientation, albedo: float = 0.2):
    """Plane-of-array irradiance (W/m2) for an orientation with ``tilt``/``azimuth``."""
    if np.any(np.asarray(dni) < 0) or np.any(np.asarray(dhi) < 0) or np.any(np.asarray(ghi) < 0):
        raise DomainError("irradiance components must be >= 0")
    ci = cos_incidence(sun.elevation, sun.azimuth, orientation.tilt, orientation.azimuth)
    beam, sky, ground = poa_components(dni, dhi, ghi, ci, orientation.tilt, albedo)
    total = np.maximum(beam + sky + ground, 0.0)
    return float(total) if np.ndim(total) == 0 else total
