"""Project file (YAML) schema, validation and conversion to domain objects.

Unknown keys are rejected. Validation errors carry ``file:line`` resolved from the YAML
node marks so users can jump to the offending entry.
"""
from __future__ import annotations

from decimal import Decimal
from pathlib import Path
from typing import Literal, Optional

import yaml
from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from . import finance, hvac, lighting, loads, pvdesign, psychro
from .errors import InputError
from .solar import SiteSpec

SCHEMA_VERSION = 1


class Strict(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)


class SiteSection(Strict):
    name: str = ""
    latitude: float = Field(ge=-90, le=90)
    longitude: float = Field(ge=-180, le=180)
    elevation: float = 0.0
    timezone: float = 0.0
    albedo: float = Field(0.2, ge=0, le=1)


class ReflectanceSection(Strict):
    ceiling: float = Field(ge=0, le=1)
    wall: float = Field(ge=0, le=1)
    floor: float = Field(ge=0, le=1)


class RoomSection(Strict):
    name: str = ""
    length: float = Field(gt=0)
    width: float = Field(gt=0)
    ceiling_height: float = Field(gt=0)
    fixture_mounting_height: float = Field(gt=0)
    work_plane_height: float = Field(0.0, ge=0)
    reflectances: ReflectanceSection
    ceiling_cavity_reflectance: Optional[float] = Field(None, ge=0, le=1)
    floor_cavity_reflectance: Optional[float] = Field(None, ge=0, le=1)
    target_lux: float = Field(ge=0)


class LuminaireSection(Strict):
    name: str = ""
    manufacturer: str = ""
    model: str = ""
    lamps_per_fixture: int = Field(1, gt=0)
    lumens_per_lamp: float = Field(gt=0)
    coefficient_of_utilization: Optional[float] = Field(None, gt=0, le=1)
    cu_table_csv: Optional[str] = None
    lamp_lumen_depreciation: float = Field(gt=0, le=1)
    luminaire_dirt_depreciation: float = Field(gt=0, le=1)
    input_power_va: float = Field(0.0, ge=0)

    @model_validator(mode="after")
    def _cu_source(self):
        if self.coefficient_of_utilization is None and self.cu_table_csv is None:
            raise ValueError("give coefficient_of_utilization or cu_table_csv")
        return self


class AirStateSection(Strict):
    dry_bulb: float
    rh: float = Field(ge=0, le=1)
    pressure: float = Field(psychro.STANDARD_PRESSURE, gt=0)


class CoolingUnitSection(Strict):
    name: str = ""
    capacity_kj_per_hr: float = Field(hvac.DEFAULT_UNIT_CAPACITY, gt=0)
    power_demand_va: float = Field(ge=0)
    tonnage: Optional[float] = Field(None, gt=0)


class HvacSection(Strict):
    occupants: int = Field(ge=0)
    sensible_gain_per_person: float = Field(hvac.DEFAULT_SENSIBLE_GAIN_PER_PERSON, ge=0)
    supply_delta_t: float = Field(psychro.DEFAULT_SUPPLY_DELTA_T, gt=0)
    cp: float = Field(psychro.DEFAULT_CP, gt=0)
    air_state: AirStateSection = AirStateSection(dry_bulb=psychro.DEFAULT_REFERENCE_DB,
                                                 rh=psychro.DEFAULT_REFERENCE_RH)
    total_coil_load_kw: Optional[float] = Field(None, gt=0)
    coil_outlet: Optional[AirStateSection] = None
    unit: CoolingUnitSection
    count_tolerance: float = Field(hvac.DEFAULT_COUNT_TOLERANCE, ge=0, lt=1)

    @model_validator(mode="after")
    def _coil_source(self):
        if self.total_coil_load_kw is None and self.coil_outlet is None:
            raise ValueError("give total_coil_load_kw or coil_outlet")
        return self


class LoadItemSection(Strict):
    name: str
    va_per_unit: Optional[float] = Field(None, ge=0)
    quantity: Optional[float] = Field(None, ge=0)
    source: Optional[Literal["lighting", "cooling", "outlets"]] = None

    @model_validator(mode="after")
    def _resolvable(self):
        if self.source is None and (self.va_per_unit is None or self.quantity is None):
            raise ValueError("give va_per_unit and quantity, or a source (lighting, cooling, outlets)")
        return self


class OutletSection(Strict):
    floor_area: float = Field(ge=0)
    va_per_m2: float = Field(loads.DEFAULT_OUTLET_DENSITY, ge=0)
    va_per_outlet: float = Field(180.0, gt=0)


class ExistingLoadsSection(Strict):
    """Free-text description of the installation before the retrofit."""

    lighting: str = ""
    cooling: str = ""
    outlets: str = ""


class LoadsSection(Strict):
    power_factor: float = Field(1.0, gt=0, le=1)
    outlets: Optional[OutletSection] = None
    items: list[LoadItemSection]
    existing: Optional[ExistingLoadsSection] = None
    week_template: Optional[list[list[float]]] = None


class ModuleSection(Strict):
    name: str
    manufacturer: str = ""
    p_stc: float = Field(gt=0)
    v_mp: float = Field(gt=0)
    v_oc: float = Field(gt=0)
    i_mp: float = Field(gt=0)
    i_sc: float = Field(gt=0)
    gamma_p: float = Field(le=0)
    beta_voc: float = Field(le=0)
    noct: float = 45.0
    module_area: float = Field(0.0, ge=0)
    unit_cost: float = Field(0.0, ge=0)


class InverterSection(Strict):
    name: str
    manufacturer: str = ""
    p_ac_nominal: float = Field(gt=0)
    mppt_v_min: float = Field(gt=0)
    mppt_v_max: float = Field(gt=0)
    v_dc_max: float = Field(gt=0)
    efficiency: float = Field(0.97, gt=0, le=1)
    unit_cost: float = Field(0.0, ge=0)


class OrientationSection(Strict):
    tilt: float = Field(ge=0, le=90)
    azimuth: float = Field(ge=-180, le=180)
    module: str


class PVSection(Strict):
    modules: list[ModuleSection]
    inverters: list[InverterSection]
    inverter: str
    inverter_count: int = Field(gt=0)
    target_dc_kwp: float = Field(gt=0)
    orientations: list[OrientationSection] = Field(min_length=1)
    modules_in_series: Optional[int] = Field(None, gt=0)
    t_min: float = pvdesign.DEFAULT_T_MIN
    t_cell_max: float = pvdesign.DEFAULT_T_CELL_MAX
    derate: float = Field(0.90, gt=0, le=1)

    @model_validator(mode="after")
    def _names_resolve(self):
        modules = {m.name for m in self.modules}
        for o in self.orientations:
            if o.module not in modules:
                raise ValueError(f"orientation module {o.module!r} not in module catalog {sorted(modules)}")
        if self.inverter not in {i.name for i in self.inverters}:
            raise ValueError(f"inverter {self.inverter!r} not in inverter catalog")
        return self


class LedgerItemSection(Strict):
    name: str
    category: str = ""
    quantity: Decimal = Field(ge=0)
    unit_cost: Decimal = Field(ge=0)
    depreciable: bool = False
    depreciation_period: Optional[int] = Field(None, gt=0)
    salvage: Decimal = Field(Decimal(0), ge=0)


class OpexItemSection(Strict):
    name: str
    amount: Decimal = Field(ge=0)


class EnergyBasisSection(Strict):
    source: Literal["project", "simulation"] = "project"
    sold_kwh: Optional[Decimal] = Field(None, ge=0)
    self_consumed_kwh: Optional[Decimal] = Field(None, ge=0)

    @model_validator(mode="after")
    def _values(self):
        if self.source == "project" and (self.sold_kwh is None or self.self_consumed_kwh is None):
            raise ValueError("source 'project' needs sold_kwh and self_consumed_kwh")
        return self


class FinanceSection(Strict):
    currency: str = "PHP"
    lifetime: int = Field(gt=0)
    start_year: int = 2024
    feed_in_tariff: Decimal = Field(ge=0)
    consumption_tariff: Decimal = Field(ge=0)
    discount_rate: Decimal = Decimal(0)
    inflation: Decimal = Decimal(0)
    income_tax_rate: Decimal = Decimal(0)
    tariff_escalation: Decimal = Decimal(0)
    consumption_tariff_escalation: Decimal = Decimal(0)
    production_aging: Decimal = Decimal(0)
    depreciation_period: Optional[int] = Field(None, gt=0)
    own_funds: Optional[Decimal] = Field(None, ge=0)
    whole_year_payback: bool = False
    ledger: list[LedgerItemSection]
    opex: list[OpexItemSection]
    energy: EnergyBasisSection


class CarbonSection(Strict):
    grid_emission_factor: float = Field(ge=0)
    lifetime: Optional[float] = Field(None, ge=0)
    system_embodied: float = Field(0.0, ge=0)
    annual_energy_mwh: Optional[float] = Field(None, ge=0)


class ProjectFile(Strict):
    schema_version: Literal[1]
    name: str = ""
    site: Optional[SiteSection] = None
    room: Optional[RoomSection] = None
    luminaire: Optional[LuminaireSection] = None
    hvac: Optional[HvacSection] = None
    loads: Optional[LoadsSection] = None
    pv: Optional[PVSection] = None
    finance: Optional[FinanceSection] = None
    carbon: Optional[CarbonSection] = None


def _node_line(node, loc) -> int | None:
    """1-based line of the YAML node addressed by a pydantic error location."""
    line = node.start_mark.line + 1 if node is not None else None
    for key in loc:
        if isinstance(node, yaml.MappingNode):
            for k, v in node.value:
                if k.value == key:
                    node = v
                    line = k.start_mark.line + 1
                    break
            else:
                return line
        elif isinstance(node, yaml.SequenceNode) and isinstance(key, int) and key < len(node.value):
            node = node.value[key]
            line = node.start_mark.line + 1
        else:
            return line
    return line


class Project:
    """A validated project file plus the directory used to resolve relative paths."""

    def __init__(self, data: ProjectFile, path: Path | None = None):
        self.data = data
        self.path = path
        self.base_dir = path.parent if path else Path.cwd()

    def require(self, *sections):
        missing = [s for s in sections if getattr(self.data, s) is None]
        if missing:
            raise InputError(f"project has no {', '.join(missing)} section", str(self.path or "<project>"))
        return [getattr(self.data, s) for s in sections]

    def resolve(self, relative: str) -> Path:
        p = Path(relative)
        return p if p.is_absolute() else self.base_dir / p

    # Domain conversions -------------------------------------------------------

    def site(self) -> SiteSpec:
        (s,) = self.require("site")
        return SiteSpec(s.latitude, s.longitude, s.elevation, s.timezone, s.albedo)

    def room(self) -> lighting.RoomLightingModel:
        (r,) = self.require("room")
        return lighting.RoomLightingModel(
            length=r.length, width=r.width, ceiling_height=r.ceiling_height,
            fixture_mounting_height=r.fixture_mounting_height, work_plane_height=r.work_plane_height,
            reflectances=lighting.Reflectances(r.reflectances.ceiling, r.reflectances.wall, r.reflectances.floor),
            ceiling_cavity_reflectance=r.ceiling_cavity_reflectance,
            floor_cavity_reflectance=r.floor_cavity_reflectance,
        )

    def luminaire(self) -> lighting.LuminaireSpec:
        (lum,) = self.require("luminaire")
        table = lighting.CUTable.from_csv(self.resolve(lum.cu_table_csv)) if lum.cu_table_csv else None
        return lighting.LuminaireSpec(
            lamps_per_fixture=lum.lamps_per_fixture, lumens_per_lamp=lum.lumens_per_lamp,
            lamp_lumen_depreciation=lum.lamp_lumen_depreciation,
            luminaire_dirt_depreciation=lum.luminaire_dirt_depreciation,
            coefficient_of_utilization=lum.coefficient_of_utilization, cu_table=table,
            input_power_per_fixture=lum.input_power_va, name=lum.name,
        )

    def module_catalog(self) -> dict[str, pvdesign.PVModuleSpec]:
        (pv,) = self.require("pv")
        return {m.name: pvdesign.PVModuleSpec(
            name=m.name, p_stc=m.p_stc, v_mp=m.v_mp, v_oc=m.v_oc, i_mp=m.i_mp, i_sc=m.i_sc,
            gamma_p=m.gamma_p, beta_voc=m.beta_voc, noct=m.noct, module_area=m.module_area, unit_cost=m.unit_cost,
        ) for m in pv.modules}

    def inverter(self) -> pvdesign.InverterSpec:
        (pv,) = self.require("pv")
        inv = next(i for i in pv.inverters if i.name == pv.inverter)
        return pvdesign.InverterSpec(
            name=inv.name, p_ac_nominal=inv.p_ac_nominal, mppt_v_min=inv.mppt_v_min, mppt_v_max=inv.mppt_v_max,
            v_dc_max=inv.v_dc_max, efficiency=inv.efficiency, unit_cost=inv.unit_cost,
        )

    def ledger(self) -> finance.CostLedger:
        (f,) = self.require("finance")
        items = tuple(finance.CostItem(
            name=i.name, quantity=i.quantity, unit_cost=i.unit_cost, category=i.category,
            depreciable=i.depreciable, depreciation_period=i.depreciation_period, salvage=i.salvage,
        ) for i in f.ledger)
        return finance.CostLedger(items, f.currency)

    def finance_params(self) -> finance.FinanceParams:
        (f,) = self.require("finance")
        return finance.FinanceParams(
            lifetime=f.lifetime, start_year=f.start_year, feed_in_tariff=f.feed_in_tariff,
            consumption_tariff=f.consumption_tariff, opex=sum((o.amount for o in f.opex), Decimal(0)),
            own_funds=f.own_funds, discount_rate=f.discount_rate, inflation=f.inflation,
            income_tax_rate=f.income_tax_rate, tariff_escalation=f.tariff_escalation,
            consumption_tariff_escalation=f.consumption_tariff_escalation, production_aging=f.production_aging,
            depreciation_period=f.depreciation_period, currency=f.currency,
        )


def parse_project(text: str, source: str = "<project>", path: Path | None = None) -> Project:
    try:
        node = yaml.compose(text)
        raw = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        mark = getattr(exc, "problem_mark", None)
        where = f"{source}:{mark.line + 1}" if mark else source
        raise InputError(f"invalid YAML: {getattr(exc, 'problem', exc)}", where) from None
    if not isinstance(raw, dict):
        raise InputError("project file must be a mapping", source)
    try:
        data = ProjectFile.model_validate(raw)
    except ValidationError as exc:
        err = exc.errors()[0]
        line = _node_line(node, err["loc"])
        dotted = ".".join(str(p) for p in err["loc"]) or "<root>"
        more = f" (+{exc.error_count() - 1} more)" if exc.error_count() > 1 else ""
        raise InputError(f"{dotted}: {err['msg']}{more}", f"{source}:{line}" if line else source) from None
    return Project(data, path)


def load_project(path) -> Project:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise InputError(f"cannot read project file ({exc.strerror})", str(path)) from None
    return parse_project(text, str(path), path)
