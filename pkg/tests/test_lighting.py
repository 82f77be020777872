import dataclasses

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nzebkit import lighting
from nzebkit.errors import DomainError, InputError


def test_cavity_ratios_for_court(court_room):
    rep = lighting.cavity_report(court_room)
    # 5 * 7.9 * 50.51 / 604.81 and 5 * 2.7 * 50.51 / 604.81, evaluated by hand
    assert rep.room_cavity_ratio == pytest.approx(3.29880, abs=1e-5)
    assert rep.ceiling_cavity_ratio == pytest.approx(1.12744, abs=1e-5)
    assert rep.floor_cavity_ratio == 0


def test_cavity_ratio_zero_height():
    assert lighting.cavity_ratio(0, 31, 19.51) == 0


@pytest.mark.parametrize("length, width", [(0, 10), (10, -1)])
def test_cavity_ratio_rejects_bad_plan(length, width):
    with pytest.raises(DomainError):
        lighting.cavity_ratio(2, length, width)


@settings(max_examples=100)
@given(h=st.floats(0, 20), l=st.floats(1, 100), w=st.floats(1, 100), k=st.floats(0.1, 10))
def test_cavity_ratio_scale_invariant(h, l, w, k):
    assert lighting.cavity_ratio(k * h, k * l, k * w) == pytest.approx(lighting.cavity_ratio(h, l, w), rel=1e-9)


def _bounce_series(base, wall, ccr, terms=2000):
    # Light entering the cavity is absorbed or reflected at each bounce; with uniform mixing
    # a reflected ray escapes through the opening with probability opening/surface.
    wall_area = 0.4 * ccr
    surface = 1.0 + wall_area
    rho = (base + wall * wall_area) / surface
    escape = 1.0 / surface
    out, carried = 0.0, 1.0
    for _ in range(terms):
        carried *= rho
        out += carried * escape
        carried *= 1 - escape
    return out


def test_effective_ceiling_reflectance_matches_bounce_series_and_table():
    rho = lighting.effective_cavity_reflectance(0.80, 0.50, 5 * 2.7 * 50.51 / 604.81)
    assert rho == pytest.approx(_bounce_series(0.80, 0.50, 5 * 2.7 * 50.51 / 604.81), rel=1e-9)
    assert rho == pytest.approx(0.64, abs=0.03)


@settings(max_examples=100)
@given(base=st.floats(0, 1), wall=st.floats(0, 1), ccr=st.floats(0, 10))
def test_effective_reflectance_bounded_and_matches_series(base, wall, ccr):
    rho = lighting.effective_cavity_reflectance(base, wall, ccr)
    assert 0 <= rho <= max(base, wall) + 1e-12
    if ccr > 0 and max(base, wall) < 0.95:
        assert rho == pytest.approx(_bounce_series(base, wall, ccr), abs=1e-9)


def test_zero_cavity_returns_surface_reflectance():
    assert lighting.effective_cavity_reflectance(0.35, 0.5, 0) == 0.35
    assert lighting.effective_cavity_reflectance(0.8, 0.1, 0) == 0.8


def test_floor_cavity_of_zero_height(court_room):
    assert lighting.cavity_report(court_room).floor_effective_reflectance == 0.35


def test_reflectance_override(court_room):
    room = dataclasses.replace(court_room, ceiling_cavity_reflectance=0.64, floor_cavity_reflectance=0.34)
    rep = lighting.cavity_report(room)
    assert (rep.ceiling_effective_reflectance, rep.floor_effective_reflectance) == (0.64, 0.34)


def test_court_fixture_count(court_room, high_bay):
    assert court_room.floor_area == pytest.approx(604.81)
    # 500 * 604.81 / (26000 * 0.805 * 0.7 * 0.88) = 23.4552
    assert lighting.lumens_delivered_per_fixture(court_room, high_bay) == pytest.approx(12892.88, abs=0.01)
    assert lighting.required_fixtures(court_room, high_bay, 500) == 24
    assert lighting.achieved_illuminance(24, court_room, high_bay) == pytest.approx(511.614, abs=1e-3)


def test_fixture_count_edge_cases(court_room, high_bay):
    assert lighting.required_fixtures(court_room, high_bay, 0) == 0
    brighter = dataclasses.replace(high_bay, lumens_per_lamp=52000)
    assert lighting.required_fixtures(court_room, brighter, 500) == 12
    assert lighting.achieved_illuminance(0, court_room, high_bay) == 0


def test_exact_integer_ratio_is_not_bumped(court_room, high_bay):
    per = lighting.lumens_delivered_per_fixture(court_room, high_bay)
    target = 20 * per / court_room.floor_area
    assert lighting.required_fixtures(court_room, high_bay, target) == 20


@pytest.mark.parametrize("field, value", [("lamp_lumen_depreciation", 0.0), ("coefficient_of_utilization", 1.2),
                                          ("lumens_per_lamp", 0)])
def test_luminaire_rejects_bad_factors(high_bay, field, value):
    with pytest.raises(DomainError):
        dataclasses.replace(high_bay, **{field: value})


@settings(max_examples=150)
@given(target=st.floats(1, 2000), lumens=st.floats(1000, 60000), cu=st.floats(0.1, 1), lld=st.floats(0.3, 1))
def test_ceiling_round_trip(court_room, target, lumens, cu, lld):
    lum = lighting.LuminaireSpec(1, lumens, lld, 0.88, cu)
    n = lighting.required_fixtures(court_room, lum, target)
    assert lighting.achieved_illuminance(n, court_room, lum) >= target * (1 - 1e-9)
    assert lighting.achieved_illuminance(n - 1, court_room, lum) < target


@settings(max_examples=100)
@given(t1=st.floats(0, 2000), t2=st.floats(0, 2000), cu1=st.floats(0.1, 1), cu2=st.floats(0.1, 1))
def test_fixture_count_monotone(court_room, t1, t2, cu1, cu2):
    lo_t, hi_t = sorted((t1, t2))
    lo_cu, hi_cu = sorted((cu1, cu2))
    a = lighting.LuminaireSpec(1, 26000, 0.7, 0.88, lo_cu)
    b = lighting.LuminaireSpec(1, 26000, 0.7, 0.88, hi_cu)
    assert lighting.required_fixtures(court_room, a, lo_t) <= lighting.required_fixtures(court_room, a, hi_t)
    assert lighting.required_fixtures(court_room, b, hi_t) <= lighting.required_fixtures(court_room, a, hi_t)


def _write_grid(path, rows):
    path.write_text("rcr,rho_cc,rho_w,cu\n" + "".join(f"{r},{c},{w},{cu}\n" for r, c, w, cu in rows))


def test_cu_grid_from_csv_interpolates(tmp_path, court_room):
    rows = []
    for r in (3, 4):
        for c in (0.5, 0.7):
            for w in (0.3, 0.5):
                rows.append((r, c, w, 0.9 - 0.05 * r + 0.2 * c + 0.1 * w))
    path = tmp_path / "cu.csv"
    _write_grid(path, rows)
    table = lighting.CUTable.from_csv(path)
    # Grid values are affine, so trilinear interpolation is exact.
    assert table(3.5, 0.6, 0.4) == pytest.approx(0.9 - 0.175 + 0.12 + 0.04)
    assert table(10, 0.9, 0.9) == pytest.approx(0.9 - 0.2 + 0.14 + 0.05)  # clamped to the far corner
    lum = lighting.LuminaireSpec(1, 26000, 0.7, 0.88, cu_table=table)
    cav = lighting.cavity_report(court_room)
    expected = 0.9 - 0.05 * cav.room_cavity_ratio + 0.2 * cav.ceiling_effective_reflectance + 0.1 * 0.5
    assert lighting.resolve_cu(court_room, lum) == pytest.approx(expected)


def test_explicit_cu_beats_grid(tmp_path, court_room, high_bay):
    path = tmp_path / "cu.csv"
    _write_grid(path, [(r, c, w, 0.5) for r in (1, 5) for c in (0.5, 0.8) for w in (0.3, 0.5)])
    lum = dataclasses.replace(high_bay, cu_table=lighting.CUTable.from_csv(path))
    assert lighting.resolve_cu(court_room, lum) == 0.805


def test_cu_grid_with_hole_is_rejected(tmp_path):
    path = tmp_path / "cu.csv"
    _write_grid(path, [(1, 0.5, 0.3, 0.6), (2, 0.5, 0.3, 0.5), (1, 0.7, 0.3, 0.65)])
    with pytest.raises(InputError):
        lighting.CUTable.from_csv(path)


def test_cu_grid_missing_column(tmp_path):
    path = tmp_path / "cu.csv"
    path.write_text("rcr,cu\n1,0.5\n")
    with pytest.raises(InputError, match=":1"):
        lighting.CUTable.from_csv(path)
