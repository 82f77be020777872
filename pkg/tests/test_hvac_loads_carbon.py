import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nzebkit import carbon, hvac, loads
from nzebkit.errors import DomainError


@pytest.mark.parametrize("n, per, kw", [(1500, 70, 105.0), (0, 70, 0.0), (1500, 140, 210.0)])
def test_occupant_load(n, per, kw):
    assert hvac.occupant_sensible_load(n, per) == pytest.approx(kw)


@pytest.mark.parametrize("load, cap, units", [
    (200.6, 40090, 18),
    (18 * 40090 / 3600, 40090, 18),
    (250, 40090, 23),
    (1.0, 40090, 1),
    (0.5, 40090, 1),
])
def test_acu_count(load, cap, units):
    assert hvac.acu_count(load, cap) == units


def test_strict_ceiling_when_tolerance_zero():
    assert hvac.acu_count(200.6, 40090, tolerance=0) == 19


@pytest.mark.parametrize("load, cap", [(100, 0), (100, -5), (0, 40090)])
def test_acu_count_domain(load, cap):
    with pytest.raises(DomainError):
        hvac.acu_count(load, cap)


@settings(max_examples=200)
@given(a=st.floats(0.01, 5000), b=st.floats(0.01, 5000), cap=st.floats(1000, 100000))
def test_acu_count_monotone_and_covers(a, b, cap):
    lo, hi = sorted((a, b))
    assert hvac.acu_count(lo, cap) <= hvac.acu_count(hi, cap)
    assert hvac.acu_count(hi, cap * 1.5) <= hvac.acu_count(hi, cap)
    n = hvac.acu_count(hi, cap)
    assert n * cap / 3600 >= 0.95 * hi


def test_cooling_design_properties():
    d = hvac.CoolingDesign(1500, 70, 105, 11494, 200.6, 40090, 4500, 3.0, 18)
    assert d.installed_capacity_kw == pytest.approx(200.45)
    assert d.electrical_demand_kva == pytest.approx(81.0)


@pytest.mark.parametrize("area, kva", [(1608, 12.86), (0, 0.0), (804, 6.43)])
def test_outlet_load(area, kva):
    assert loads.report_kva(loads.outlet_load(area, 8)) == kva


def test_gymnasium_schedule():
    sched = loads.aggregate_loads([
        loads.LoadItem("Lighting", 200, 24),
        loads.LoadItem("Air conditioning", 4500, 18),
        loads.LoadItem("Convenience outlets", loads.outlet_load(1608) * 1000, 1),
    ])
    assert [r[3] for r in sched.rows()] == [4.8, 81.0, 12.86]
    assert loads.report_kva(sched.total) == 98.66
    assert loads.aggregate_loads([]).total == 0


def test_negative_quantity_rejected():
    with pytest.raises(DomainError):
        loads.LoadItem("bad", 100, -1)


def test_report_rounding_half_up():
    assert loads.report_kva(0.125) == 0.13
    assert loads.report_kva(2.675) == 2.68


items_st = st.lists(st.builds(loads.LoadItem, st.text(max_size=5), st.floats(0, 10000), st.integers(0, 500)),
                    max_size=20)


@settings(max_examples=150)
@given(a=items_st, b=items_st, seed=st.integers(0, 1000))
def test_total_permutation_invariant_and_additive(a, b, seed):
    shuffled = list(a)
    random.Random(seed).shuffle(shuffled)
    assert loads.aggregate_loads(shuffled).total == loads.aggregate_loads(a).total
    joined = loads.aggregate_loads(a + b).total
    assert joined == pytest.approx(loads.aggregate_loads(a).total + loads.aggregate_loads(b).total, rel=1e-12, abs=1e-12)


def test_carbon_reconciliation():
    res = carbon.avoided_emissions(carbon.CarbonParams(0.72, 20, 140.853))
    assert res.reported == pytest.approx(2028.3, rel=0.01)


def test_carbon_zero_factor_and_floor():
    assert carbon.avoided_emissions(carbon.CarbonParams(0, 20, 140)).reported == 0
    res = carbon.avoided_emissions(carbon.CarbonParams(0.5, 1, 10, system_embodied=20))
    assert res.raw == pytest.approx(-15)
    assert res.reported == 0


def test_carbon_rejects_negative_inputs():
    with pytest.raises(DomainError):
        carbon.CarbonParams(-0.1, 20, 100)


@settings(max_examples=100)
@given(f=st.floats(0, 2), years=st.floats(0.5, 50), mwh=st.floats(0, 1000), k=st.floats(0.1, 10))
def test_carbon_linear(f, years, mwh, k):
    base = carbon.avoided_emissions(carbon.CarbonParams(f, years, mwh)).reported
    assert carbon.avoided_emissions(carbon.CarbonParams(f, years, k * mwh)).reported == pytest.approx(k * base)
    assert carbon.avoided_emissions(carbon.CarbonParams(f, k * years, mwh)).reported == pytest.approx(k * base)
