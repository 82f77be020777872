import math
from datetime import datetime, timedelta

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nzebkit import solar
from nzebkit.pvdesign import Orientation

TARLAC = solar.SiteSpec(15.8, 120.59, 51, 8)


def _noon_elevation(day):
    stamps = [day + timedelta(minutes=m) for m in range(10 * 60, 14 * 60)]
    return max(solar.solar_position(TARLAC, t).elevation for t in stamps)


def test_equinox_noon_elevation():
    assert _noon_elevation(datetime(2021, 3, 20)) == pytest.approx(90 - 15.8, abs=0.6)


def test_solstice_noon_higher_than_equinox_at_tropical_latitude():
    assert _noon_elevation(datetime(2021, 6, 21)) > _noon_elevation(datetime(2021, 3, 20))


def test_midnight_is_dark():
    assert solar.solar_position(TARLAC, datetime(2021, 3, 20, 0)).elevation < 0


def test_morning_sun_is_east():
    pos = solar.solar_position(TARLAC, datetime(2021, 3, 20, 8))
    assert pos.elevation > 0
    assert pos.azimuth < 0


def _erbs_by_hand(kt):
    if kt <= 0.22:
        return 1 - 0.09 * kt
    if kt <= 0.80:
        return 0.9511 - 0.1604 * kt + 4.388 * kt ** 2 - 16.638 * kt ** 3 + 12.336 * kt ** 4
    return 0.165


def test_erbs_decomposition_against_independent_evaluation():
    doy = 80
    i0 = 1367 * (1 + 0.033 * math.cos(2 * math.pi * doy / 365))
    kt = 800 / (i0 * math.sin(math.radians(60)))
    dhi_expected = _erbs_by_hand(kt) * 800
    dni_expected = (800 - dhi_expected) / math.sin(math.radians(60))
    dni, dhi = solar.decompose_ghi(800, 60, doy)
    assert dhi == pytest.approx(dhi_expected, rel=1e-9)
    assert dni == pytest.approx(dni_expected, rel=1e-9)


@pytest.mark.parametrize("kt", [0.1, 0.22, 0.5, 0.8, 0.95])
def test_erbs_piecewise(kt):
    assert float(solar.erbs_diffuse_fraction(kt)) == pytest.approx(_erbs_by_hand(kt))


def test_decompose_trivial_cases():
    assert solar.decompose_ghi(0, 45) == (0.0, 0.0)
    dni, dhi = solar.decompose_ghi(500, 45, dhi=500)
    assert dni == 0 and dhi == 500


@settings(max_examples=200)
@given(ghi=st.floats(0, 1300), elev=st.floats(-10, 90), doy=st.integers(1, 366))
def test_decomposition_closes_on_ghi(ghi, elev, doy):
    dni, dhi = solar.decompose_ghi(ghi, elev, doy)
    assert dni >= 0 and 0 <= dhi <= ghi + 1e-9
    assert dni * max(math.sin(math.radians(elev)), 0) + dhi == pytest.approx(ghi, abs=1e-6)


def test_poa_hand_example():
    # 600 cos20 + 200 (1 + cos15)/2 + 700 * 0.2 (1 - cos15)/2
    expected = 563.8156 + 196.5926 + 2.3852
    sun = solar.SunPosition(elevation=55.0, azimuth=0.0)
    poa = solar.poa_irradiance(600, 200, 700, sun, Orientation(15, 0), 0.2)
    assert poa == pytest.approx(expected, abs=0.01)
    assert poa == pytest.approx(762.79, abs=0.01)


def test_sun_behind_plane_leaves_diffuse():
    sun = solar.SunPosition(elevation=20.0, azimuth=180.0)
    poa = solar.poa_irradiance(700, 100, 340, sun, Orientation(80, 0), 0.2)
    ct = math.cos(math.radians(80))
    assert poa == pytest.approx(100 * (1 + ct) / 2 + 340 * 0.2 * (1 - ct) / 2)


@settings(max_examples=200)
@given(ghi=st.floats(0, 1300), elev=st.floats(0, 90), az=st.floats(-180, 180),
       tilt=st.floats(0, 90), surf=st.floats(-180, 180))
def test_poa_non_negative_and_horizontal_identity(ghi, elev, az, tilt, surf):
    dni, dhi = solar.decompose_ghi(ghi, elev, 100)
    sun = solar.SunPosition(elev, az)
    assert solar.poa_irradiance(dni, dhi, ghi, sun, Orientation(tilt, surf)) >= 0
    assert solar.poa_irradiance(dni, dhi, ghi, sun, Orientation(0, surf)) == pytest.approx(ghi, abs=1e-6)


def test_vectorised_angles_match_scalar():
    hours = np.arange(24) + 0.5
    elev, az = solar.solar_angles(TARLAC, 172, hours)
    for h, e, a in zip(hours, elev, az):
        pos = solar.solar_position(TARLAC, datetime(2021, 6, 21) + timedelta(hours=float(h)))
        assert pos.elevation == pytest.approx(e)
        assert pos.azimuth == pytest.approx(a)


def test_site_validation():
    with pytest.raises(ValueError):
        solar.SiteSpec(95, 0)
