import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nzebkit import psychro
from nzebkit.errors import DomainError

# Expected values were evaluated by hand from
#   W = 0.621945 pw / (p - pw),  v = 0.287042 T (1 + 1.607858 W) / p,  h = 1.006 t + W (2501 + 1.86 t)
# with pw = rh * pws(t) and pws from the Hyland-Wexler liquid-water correlation.
HAND_EVALUATED = [
    # t, rh, W, v, h
    (25.0, 0.50, 0.0098810, 0.858043, 50.3220),
    (35.0, 0.60, 0.0214411, 0.903048, 90.2299),
    (20.0, 0.40, 0.0057959, 0.838199, 34.8310),
    (10.0, 0.80, 0.0060891, 0.809984, 25.4021),
    (40.0, 0.30, 0.0139000, 0.906944, 76.0381),
    (30.0, 0.60, 0.0160409, 0.880938, 71.1934),
]


@pytest.mark.parametrize("t, expected", [(0.0, 0.6112), (25.0, 3.169)])
def test_saturation_pressure_reference_points(t, expected):
    assert psychro.saturation_pressure(t) == pytest.approx(expected, abs=1e-3 if t else 1e-4)


def test_saturation_pressure_monotonic_dense_grid():
    temps = [-40 + 0.05 * i for i in range(3201)]
    values = [psychro.saturation_pressure(t) for t in temps]
    assert all(b > a for a, b in zip(values, values[1:]))
    assert psychro.saturation_pressure(30) > psychro.saturation_pressure(25)


@pytest.mark.parametrize("t", [-40.01, 120.5, 200])
def test_saturation_pressure_domain(t):
    with pytest.raises(DomainError):
        psychro.saturation_pressure(t)


@pytest.mark.parametrize("t, rh, w, v, h", HAND_EVALUATED)
def test_state_matches_hand_evaluation(t, rh, w, v, h):
    s = psychro.state_from_db_rh(t, rh, 101.325)
    assert s.humidity_ratio == pytest.approx(w, rel=1e-4)
    assert s.specific_volume == pytest.approx(v, rel=1e-5)
    assert s.enthalpy == pytest.approx(h, rel=1e-5)


def test_dry_air_state():
    s = psychro.state_from_db_rh(25, 0.0)
    assert s.humidity_ratio == 0
    assert s.enthalpy == pytest.approx(25.15)


@pytest.mark.parametrize("rh", [-0.01, 1.2])
def test_rh_outside_unit_interval(rh):
    with pytest.raises(DomainError):
        psychro.state_from_db_rh(25, rh)


def test_default_state_specific_volume_near_0_88():
    assert psychro.default_air_state().specific_volume == pytest.approx(0.88, abs=0.002)


@settings(max_examples=200, deadline=None)
@given(t=st.floats(-20, 60), rh=st.floats(0, 1), p=st.floats(80, 110))
def test_rh_round_trip(t, rh, p):
    s = psychro.state_from_db_rh(t, rh, p)
    assert psychro.relative_humidity(t, s.humidity_ratio, p) == pytest.approx(rh, abs=1e-4)
    again = psychro.state_from_db_w(t, s.humidity_ratio, p)
    for field in ("specific_volume", "enthalpy", "relative_humidity"):
        assert getattr(again, field) == pytest.approx(getattr(s, field), rel=1e-3, abs=1e-9)


@settings(max_examples=100, deadline=None)
@given(w=st.floats(0, 0.02), t1=st.floats(10, 40), dt=st.floats(0.1, 20))
def test_enthalpy_increases_with_dry_bulb(w, t1, dt):
    assert psychro.enthalpy(t1 + dt, w) > psychro.enthalpy(t1, w)


def test_ventilation_flow_reference_case():
    air = psychro.MoistAirState(26, 101.325, 0.0116, 0.88, 55.6, 0.55)
    flow = psychro.ventilation_flow_for_sensible_load(psychro.VentilationSpec(105.0, 8.0, 1.005), air)
    assert flow == pytest.approx(11494, rel=1e-3)


def test_ventilation_flow_zero_and_linear():
    air = psychro.default_air_state()
    assert psychro.ventilation_flow_for_sensible_load(psychro.VentilationSpec(0.0), air) == 0
    one = psychro.ventilation_flow_for_sensible_load(psychro.VentilationSpec(50.0), air)
    two = psychro.ventilation_flow_for_sensible_load(psychro.VentilationSpec(100.0), air)
    assert two == pytest.approx(2 * one)


@pytest.mark.parametrize("dt", [0.0, -3.0])
def test_ventilation_flow_rejects_non_positive_delta_t(dt):
    with pytest.raises(DomainError):
        psychro.ventilation_flow_for_sensible_load(psychro.VentilationSpec(10.0, dt))


@settings(max_examples=100, deadline=None)
@given(q=st.floats(0.1, 1000), dt=st.floats(1, 20), t=st.floats(15, 40), rh=st.floats(0.1, 0.9))
def test_ventilation_inverse_holds(q, dt, t, rh):
    air = psychro.state_from_db_rh(t, rh)
    flow = psychro.ventilation_flow_for_sensible_load(psychro.VentilationSpec(q, dt), air)
    assert psychro.sensible_load_for_flow(flow, air, psychro.DEFAULT_CP, dt) == pytest.approx(q, rel=1e-3)


def test_coil_load_round_trip():
    # Oracle: back-solve the enthalpy drop for 200.6 kW at 11,494 L/s and v = 0.88.
    dh = 200.6 * 0.88 / 11.494
    inlet = psychro.MoistAirState(30, 101.325, 0.016, 0.88, 71.0, 0.6)
    outlet = psychro.MoistAirState(14, 101.325, 0.009, 0.82, 71.0 - dh, 0.9)
    assert psychro.coil_load(11494, inlet, outlet) == pytest.approx(200.6, rel=1e-9)
    assert psychro.coil_load(11494 / 2, inlet, outlet) == pytest.approx(100.3, rel=1e-9)
    assert psychro.coil_load(11494, inlet, inlet) == 0


def test_coil_load_sensible_only_matches_sensible_relation():
    inlet = psychro.state_from_db_w(26, 0.011)
    outlet = psychro.state_from_db_w(18, 0.011)
    flow = 5000
    cp_moist = psychro.CP_DRY_AIR + 0.011 * psychro.CP_VAPOUR
    expected = psychro.sensible_load_for_flow(flow, inlet, cp_moist, 8)
    assert psychro.coil_load(flow, inlet, outlet) == pytest.approx(expected, rel=1e-3)
    assert not math.isclose(psychro.coil_load(flow, inlet, outlet), 0)
