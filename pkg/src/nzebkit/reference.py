"""Reference values of the TSU gymnasium retrofit and the tolerances used by ``verify``.

Each entry: report path, expected value, absolute tolerance (or ``None`` for an exact
match), and an optional kind (``min``/``max``/``range``) for one-sided checks.
"""
from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Check:
    name: str
    path: str
    expected: object
    tolerance: float | None = None
    kind: str = "eq"  # eq | min | range
    needs_meteo: bool = False

    def evaluate(self, actual, tolerance=None) -> bool:
        tol = self.tolerance if tolerance is None else tolerance
        if actual is None:
            return False
        if self.kind == "min":
            return actual >= self.expected
        if self.kind == "range":
            lo, hi = self.expected
            return lo <= actual <= hi
        if tol is None:
            return actual == self.expected
        return abs(actual - self.expected) <= tol


CHECKS = (
    Check("fixtures", "lighting.fixtures", 24),
    Check("achieved_lux", "lighting.achieved_lux", 500, kind="min"),
    Check("sensible_load_kw", "cooling.sensible_load_kw", 105.0, 1e-9),
    Check("ventilation_flow_l_s", "cooling.ventilation_flow_l_s", 11494.0, 114.94),
    Check("acu_units", "cooling.units", 18),
    Check("total_load_kva", "loads.total_kva", 98.66, 0.0),
    Check("modules", "pv_design.modules", 252),
    Check("strings", "pv_design.strings", 12),
    Check("modules_in_series", "pv_design.sub_arrays[0].modules_in_series", 21),
    Check("dc_ac_ratio", "pv_design.dc_ac_ratio", 1.252, 0.001),
    Check("total_cost", "finance.total_cost", 6_893_433.00, 0.0),
    Check("depreciable_base", "finance.depreciable_base", 6_316_433.00, 0.0),
    Check("annual_depreciation", "finance.annual_depreciation", 315_822, 1),
    Check("year1_sale", "finance.rows[1].electricity_sale", 599_918, 50),
    Check("year1_after_tax_profit", "finance.rows[1].after_tax_profit", 294_643, 50),
    Check("year1_saving", "finance.rows[1].self_consumption_saving", 465_378, 50),
    Check("year20_cumulative_profit", "finance.rows[20].cumulative_profit", 8_306_976, 100),
    Check("payback_years", "finance.summary.payback_years", 9.1, 0.05),
    Check("npv", "finance.summary.npv", 8_306_976, 100),
    Check("irr_percent", "finance.summary.irr_percent", 9.10, 0.05),
    Check("roi_percent", "finance.summary.roi_percent", 120.5, 0.1),
    Check("lcoe", "finance.summary.lcoe_per_kwh", 4.614, 0.005),
    Check("avoided_co2_t", "carbon.avoided_t", 2028.3, 20.283),
    Check("specific_yield", "pv_simulation.specific_yield_kwh_kwp", (1300, 1500), kind="range", needs_meteo=True),
    Check("performance_ratio", "pv_simulation.performance_ratio", (0.75, 0.90), kind="range", needs_meteo=True),
)


def lookup(report: dict, path: str):
    node = report
    for part in path.replace("]", "").replace("[", ".").split("."):
        if isinstance(node, list):
            idx = int(part)
            node = node[idx] if idx < len(node) else None
        elif isinstance(node, dict):
            node = node.get(part)
        else:
            return None
        if node is None:
            return None
    return node


def verify(report: dict, overrides: dict | None = None, with_meteo: bool = True):
    """Yield (check, actual, passed) for every applicable check."""
    overrides = overrides or {}
    for check in CHECKS:
        if check.needs_meteo and not with_meteo:
            continue
        actual = lookup(report, check.path)
        yield check, actual, check.evaluate(actual, overrides.get(check.name))
