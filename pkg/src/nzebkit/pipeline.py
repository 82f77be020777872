"""Orchestration: project file -> per-module results -> structured report sections.

A :class:`Pipeline` computes each stage at most once, so the ``report`` subcommand and
the single-stage subcommands share the same numbers.
"""
from __future__ import annotations

import math
from decimal import Decimal
from functools import cached_property
from pathlib import Path

import numpy as np

from . import carbon, finance, hvac, lighting, loads, psychro, pvdesign
from .errors import InputError
from .meteo import load_meteo
from .project import Project
from .simulation import DEFAULT_WEEK_TEMPLATE, annual_simulation, building_load_profile

DEFAULT_VA_PER_OUTLET = 180.0


def num(value, places: int | None = None):
    """Report-ready number: Decimals to cents and floats to 6 decimals unless ``places`` is given."""
    if value is None:
        return None
    if isinstance(value, Decimal):
        if not value.is_finite():
            return None
        return float(finance.present(value, f"1e-{2 if places is None else places}"))
    if isinstance(value, (bool, int, np.integer)):
        return int(value)
    value = float(value)
    if not math.isfinite(value):
        return None
    rounded = round(value, 6 if places is None else places)
    return 0.0 if rounded == 0 else rounded


class Pipeline:
    def __init__(self, project: Project, meteo_path=None):
        self.project = project
        self.meteo_path = Path(meteo_path) if meteo_path else None

    # Stage results -----------------------------------------------------------

    @cached_property
    def room(self):
        return self.project.room()

    @cached_property
    def luminaire(self):
        return self.project.luminaire()

    @cached_property
    def fixtures(self) -> int:
        return lighting.required_fixtures(self.room, self.luminaire, self.project.data.room.target_lux)

    @cached_property
    def air_state(self) -> psychro.MoistAirState:
        (h,) = self.project.require("hvac")
        return psychro.state_from_db_rh(h.air_state.dry_bulb, h.air_state.rh, h.air_state.pressure)

    @cached_property
    def cooling(self) -> hvac.CoolingDesign:
        (h,) = self.project.require("hvac")
        air = self.air_state
        sensible = hvac.occupant_sensible_load(h.occupants, h.sensible_gain_per_person)
        flow = psychro.ventilation_flow_for_sensible_load(
            psychro.VentilationSpec(sensible, h.supply_delta_t, h.cp), air)
        if h.total_coil_load_kw is not None:
            coil = h.total_coil_load_kw
        else:
            out = psychro.state_from_db_rh(h.coil_outlet.dry_bulb, h.coil_outlet.rh, h.coil_outlet.pressure)
            coil = psychro.coil_load(flow, air, out)
        units = hvac.acu_count(coil, h.unit.capacity_kj_per_hr, h.count_tolerance)
        return hvac.CoolingDesign(
            occupants=h.occupants, sensible_gain_per_person=h.sensible_gain_per_person, sensible_load=sensible,
            ventilation_flow=flow, total_coil_load=coil, unit_capacity=h.unit.capacity_kj_per_hr,
            unit_power_demand=h.unit.power_demand_va, unit_tonnage=h.unit.tonnage, units_required=units,
        )

    @cached_property
    def outlet_kva(self) -> float:
        (ld,) = self.project.require("loads")
        if ld.outlets is None:
            return 0.0
        return loads.outlet_load(ld.outlets.floor_area, ld.outlets.va_per_m2)

    @cached_property
    def load_schedule(self) -> loads.LoadSchedule:
        (ld,) = self.project.require("loads")
        items = []
        for item in ld.items:
            if item.source == "lighting":
                va = item.va_per_unit if item.va_per_unit is not None else self.luminaire.input_power_per_fixture
                qty = self.fixtures
            elif item.source == "cooling":
                va = item.va_per_unit if item.va_per_unit is not None else self.cooling.unit_power_demand
                qty = self.cooling.units_required
            elif item.source == "outlets":
                if ld.outlets is None:
                    raise InputError(f"load item {item.name!r} uses source 'outlets' but loads.outlets is missing",
                                     str(self.project.path))
                va, qty = self.outlet_kva * 1000.0, 1
            else:
                va, qty = item.va_per_unit, item.quantity
            items.append(loads.LoadItem(item.name, va, qty))
        return loads.aggregate_loads(items)

    @cached_property
    def design(self) -> pvdesign.ArrayDesign:
        (pv,) = self.project.require("pv")
        catalog = self.project.module_catalog()
        inverter = self.project.inverter()
        # One module model per orientation, in the order the project lists them.
        design = pvdesign.configure_array(
            pv.target_dc_kwp * 1000.0, [catalog[o.module] for o in pv.orientations], inverter, pv.inverter_count,
            [pvdesign.Orientation(o.tilt, o.azimuth) for o in pv.orientations],
            t_min=pv.t_min, t_cell_max=pv.t_cell_max, series=pv.modules_in_series,
        )
        return design

    @cached_property
    def meteo(self):
        if self.meteo_path is None:
            raise InputError("this command needs hourly weather data: pass --meteo PATH", "--meteo")
        return load_meteo(self.meteo_path)

    @cached_property
    def load_profile(self):
        (ld,) = self.project.require("loads")
        template = ld.week_template or DEFAULT_WEEK_TEMPLATE
        return building_load_profile(self.meteo, self.load_schedule.total, ld.power_factor, template)

    @cached_property
    def energy(self):
        (pv,) = self.project.require("pv")
        return annual_simulation(self.design, self.meteo, self.project.site(), self.load_profile, derate=pv.derate)

    @cached_property
    def energy_basis(self) -> dict:
        (f,) = self.project.require("finance")
        if f.energy.source == "project":
            sold, used = f.energy.sold_kwh, f.energy.self_consumed_kwh
        else:
            sold = finance.dec(round(self.energy.exported, 3))
            used = finance.dec(round(self.energy.self_consumed, 3))
        return {"source": f.energy.source, "sold_kwh": sold, "self_consumed_kwh": used,
                "produced_kwh": sold + used}

    @cached_property
    def finance_result(self):
        (f,) = self.project.require("finance")
        basis = self.energy_basis
        p_dc = self.design.p_dc_nominal if self.project.data.pv is not None else None
        return finance.evaluate(self.project.finance_params(), self.project.ledger(), basis["sold_kwh"],
                                basis["self_consumed_kwh"], basis["produced_kwh"], p_dc,
                                whole_year_payback=f.whole_year_payback)

    @cached_property
    def carbon_result(self):
        (c,) = self.project.require("carbon")
        if c.annual_energy_mwh is not None:
            energy_mwh = c.annual_energy_mwh
        elif self.project.data.finance is not None:
            energy_mwh = float(self.energy_basis["produced_kwh"]) / 1000.0
        else:
            energy_mwh = self.energy.annual_ac / 1000.0
        lifetime = c.lifetime if c.lifetime is not None else (
            self.project.data.finance.lifetime if self.project.data.finance else 20)
        params = carbon.CarbonParams(c.grid_emission_factor, lifetime, energy_mwh, c.system_embodied)
        return params, carbon.avoided_emissions(params)

    # Report sections ---------------------------------------------------------

    def lighting_section(self) -> dict:
        cav = lighting.cavity_report(self.room)
        lum = self.luminaire
        return {
            "floor_area_m2": num(self.room.floor_area),
            "room_cavity_ratio": num(cav.room_cavity_ratio, 4),
            "ceiling_cavity_ratio": num(cav.ceiling_cavity_ratio, 4),
            "floor_cavity_ratio": num(cav.floor_cavity_ratio, 4),
            "ceiling_effective_reflectance": num(cav.ceiling_effective_reflectance, 4),
            "floor_effective_reflectance": num(cav.floor_effective_reflectance, 4),
            "coefficient_of_utilization": num(lighting.resolve_cu(self.room, lum), 4),
            "lamp_lumen_depreciation": num(lum.lamp_lumen_depreciation),
            "luminaire_dirt_depreciation": num(lum.luminaire_dirt_depreciation),
            "lamps_per_fixture": lum.lamps_per_fixture,
            "lumens_per_lamp": num(lum.lumens_per_lamp),
            "target_lux": num(self.project.data.room.target_lux),
            "fixtures": self.fixtures,
            "achieved_lux": num(lighting.achieved_illuminance(self.fixtures, self.room, lum), 2),
            "connected_load_va": num(self.fixtures * lum.input_power_per_fixture),
        }

    def cooling_section(self) -> dict:
        c = self.cooling
        air = self.air_state
        return {
            "occupants": c.occupants,
            "sensible_gain_per_person_w": num(c.sensible_gain_per_person),
            "sensible_load_kw": num(c.sensible_load, 4),
            "air_state": {
                "dry_bulb_c": num(air.dry_bulb),
                "relative_humidity": num(air.relative_humidity),
                "humidity_ratio": num(air.humidity_ratio, 6),
                "specific_volume_m3_kg": num(air.specific_volume, 5),
                "enthalpy_kj_kg": num(air.enthalpy, 3),
            },
            "supply_delta_t_k": num(self.project.data.hvac.supply_delta_t),
            "ventilation_flow_l_s": num(c.ventilation_flow, 1),
            "total_coil_load_kw": num(c.total_coil_load, 3),
            "unit_capacity_kj_hr": num(c.unit_capacity),
            "unit_tonnage_tr": num(c.unit_tonnage),
            "units": c.units_required,
            "installed_capacity_kw": num(c.installed_capacity_kw, 3),
            "electrical_demand_kva": num(c.electrical_demand_kva, 3),
        }

    def loads_section(self) -> dict:
        (ld,) = self.project.require("loads")
        sched = self.load_schedule
        section = {
            "items": [{"name": n, "va_per_unit": num(va, 2), "units": num(q), "subtotal_kva": s}
                      for n, va, q, s in sched.rows()],
            "total_kva": loads.report_kva(sched.total),
        }
        if ld.outlets is not None:
            section["outlet_load_kva"] = loads.report_kva(self.outlet_kva)
        return section

    def retrofit_section(self) -> list:
        """Before/after comparison of lighting, cooling and outlets."""
        (ld,) = self.project.require("loads")
        existing = ld.existing
        lum_name = self.project.data.luminaire.name or "fixtures"
        unit = self.project.data.hvac.unit
        tonnage = f"{unit.tonnage:g} TR " if unit.tonnage else ""
        per_outlet = ld.outlets.va_per_outlet if ld.outlets else DEFAULT_VA_PER_OUTLET
        outlets = math.ceil(round(self.outlet_kva * 1000.0 / per_outlet, 9))
        return [
            {"load": "Lightings", "before": getattr(existing, "lighting", ""), "after": f"{self.fixtures} {lum_name}"},
            {"load": "ACUs", "before": getattr(existing, "cooling", ""),
             "after": f"{self.cooling.units_required} - {tonnage}{unit.name}".rstrip()},
            {"load": "Outlets", "before": getattr(existing, "outlets", ""), "after": f"{outlets} convenience outlets"},
        ]

    def design_section(self) -> dict:
        d = self.design
        report = pvdesign.validate_design(d)
        catalog = self.project.module_catalog()
        bounds = {}
        for name in dict.fromkeys(s.module.name for s in d.sub_arrays):
            lo, hi = pvdesign.series_bounds(catalog[name], d.inverter, d.t_min, d.t_cell_max)
            bounds[name] = {"min_series": lo, "max_series": hi}
        return {
            "sub_arrays": [{
                "module": s.module.name,
                "tilt_deg": num(s.orientation.tilt),
                "azimuth_deg": num(s.orientation.azimuth),
                "modules_in_series": s.modules_in_series,
                "parallel_strings": s.parallel_strings,
                "modules": s.module_count,
                "p_stc_kwp": num(s.p_stc / 1000.0, 3),
            } for s in d.sub_arrays],
            "series_bounds": bounds,
            "modules": d.module_count,
            "strings": d.string_count,
            "module_area_m2": num(d.module_area, 2),
            "p_dc_kwp": num(d.p_dc_nominal / 1000.0, 3),
            "inverter": d.inverter.name,
            "inverter_count": d.inverter_count,
            "p_ac_kw": num(d.p_ac_nominal / 1000.0, 3),
            "dc_ac_ratio": num(report.dc_ac_ratio, 4),
            "valid": report.valid,
            "violations": list(report.violations),
            "warnings": list(report.warnings),
            "connection_summary": d.connection_summary(),
        }

    def simulation_section(self) -> dict:
        e = self.energy
        ac = e.trace.ac
        return {
            "meteo_file": self.meteo_path.name,
            "transposition_model": e.transposition_model,
            "decomposition_model": e.decomposition_model,
            "derate": num(self.project.data.pv.derate),
            "annual_ghi_kwh_m2": num(float(np.sum(self.meteo.ghi)) / 1000.0, 2),
            "poa_insolation_kwh_m2": num(e.poa_insolation, 2),
            "annual_dc_kwh": num(e.annual_dc, 3),
            "annual_ac_kwh": num(e.annual_ac, 3),
            "self_consumed_kwh": num(e.self_consumed, 3),
            "exported_kwh": num(e.exported, 3),
            "building_load_kwh": num(e.annual_load, 3),
            "specific_yield_kwh_kwp": num(e.specific_yield, 2),
            "performance_ratio": num(e.performance_ratio, 4),
            "peak_ac_kw": num(float(ac.max()) / 1000.0 if ac.size else 0.0, 3),
            "clipped_hours": int(np.sum(ac >= self.design.p_ac_nominal - 0.5)),
        }

    def finance_section(self) -> dict:
        schedule, s = self.finance_result
        ledger = self.project.ledger()
        params = self.project.finance_params()
        basis = self.energy_basis
        return {
            "currency": params.currency,
            "ledger": [{"name": i.name, "category": i.category, "quantity": num(i.quantity),
                        "unit_cost": num(i.unit_cost), "total": num(i.total), "depreciable": i.depreciable}
                       for i in ledger.items],
            "total_cost": num(s.total_cost),
            "depreciable_base": num(s.depreciable_base),
            "annual_depreciation": num(s.annual_depreciation),
            "opex_per_year": num(params.opex),
            "energy_basis": {k: (v if isinstance(v, str) else num(v)) for k, v in basis.items()},
            "feed_in_tariff": num(params.feed_in_tariff, 4),
            "consumption_tariff": num(params.consumption_tariff, 4),
            "lifetime_years": params.lifetime,
            "start_year": params.start_year,
            "rows": [{
                "year": r.year,
                "electricity_sale": num(r.electricity_sale),
                "own_funds": num(r.own_funds),
                "running_costs": num(r.running_costs),
                "depreciation_allowance": num(r.depreciation_allowance),
                "taxable_income": num(r.taxable_income),
                "taxes": num(r.taxes),
                "after_tax_profit": num(r.after_tax_profit),
                "self_consumption_saving": num(r.self_consumption_saving),
                "cumulative_profit": num(r.cumulative_profit),
                "percent_amortized": num(r.percent_amortized * 100, 2),
            } for r in schedule.rows],
            "summary": {
                "payback_years": num(s.payback_years, 4),
                "first_profitable_year": _first_profitable_year(schedule, params.start_year),
                "npv": num(s.npv),
                "irr_percent": num(s.irr * 100 if s.irr is not None else None, 4),
                "roi_percent": num(s.roi * 100, 4),
                "lcoe_per_kwh": num(s.lcoe, 4),
                "specific_cost_per_wp": num(s.specific_cost, 2) if s.specific_cost is not None else None,
            },
        }

    def carbon_section(self) -> dict:
        params, result = self.carbon_result
        return {
            "grid_emission_factor_t_per_mwh": num(params.grid_emission_factor),
            "lifetime_years": num(params.lifetime),
            "annual_energy_mwh": num(params.annual_energy, 4),
            "system_embodied_t": num(params.system_embodied),
            "gross_avoided_t": num(result.gross_avoided, 2),
            "raw_avoided_t": num(result.raw, 2),
            "avoided_t": num(result.reported, 2),
        }

    def section(self, name: str):
        return {
            "lighting": self.lighting_section,
            "cooling": self.cooling_section,
            "loads": self.loads_section,
            "retrofit": self.retrofit_section,
            "pv_design": self.design_section,
            "pv_simulation": self.simulation_section,
            "finance": self.finance_section,
            "carbon": self.carbon_section,
        }[name]()


def _first_profitable_year(schedule, start_year):
    for r in schedule.rows:
        if r.cumulative_profit >= 0:
            return start_year + r.year
    return None


# Subcommand -> report sections, in pipeline order.
SUBCOMMAND_SECTIONS = {
    "lighting": ("lighting",),
    "cooling": ("cooling",),
    "loads": ("loads", "retrofit"),
    "pv-design": ("pv_design",),
    "pv-simulate": ("pv_simulation",),
    "finance": ("finance",),
    "carbon": ("carbon",),
}


def report_sections(pipeline: Pipeline, subcommand: str) -> list[str]:
    if subcommand != "report":
        return list(SUBCOMMAND_SECTIONS[subcommand])
    return ["lighting", "cooling", "loads", "retrofit", "pv_design", "pv_simulation", "finance", "carbon"]


def build_report(pipeline: Pipeline, subcommand: str) -> dict:
    data = pipeline.project.data
    report = {"project": data.name, "schema_version": data.schema_version}
    for name in report_sections(pipeline, subcommand):
        report[name] = pipeline.section(name)
    return report
