"""Capital ledger, straight-line depreciation, yearly cash flows and summary metrics.

Money is carried as :class:`decimal.Decimal` so zero-rate scenarios are exact; values are
rounded half-up to cents only for presentation. Rates are fractions per year
(0.05 = 5 %/yr) and may be given as float, str or Decimal.
"""
from __future__ import annotations

import csv
import io
import math
import warnings
from dataclasses import dataclass, field
from decimal import ROUND_HALF_UP, Decimal

from .errors import DomainError

CENT = Decimal("0.01")
ZERO = Decimal(0)
ONE = Decimal(1)

CASH_FLOW_COLUMNS = (
    "Year", "Electricity sale", "Own funds", "Run. costs", "Deprec. allow.", "Taxable income",
    "Taxes", "After-tax profit", "Self-cons. saving", "Cumul. profit", "% amort.",
)


def dec(value) -> Decimal:
    """Decimal from int/str/Decimal, or from float via its shortest repr."""
    if isinstance(value, Decimal):
        return value
    if isinstance(value, float):
        return Decimal(repr(value))
    return Decimal(value)


def present(value, places: str = "0.01") -> Decimal:
    """Half-up presentation rounding."""
    return dec(value).quantize(Decimal(places), rounding=ROUND_HALF_UP)


@dataclass(frozen=True)
class CostItem:
    name: str
    quantity: Decimal
    unit_cost: Decimal
    category: str = ""
    depreciable: bool = False
    depreciation_period: int | None = None  # years; None falls back to the schedule default
    salvage: Decimal = ZERO

    def __post_init__(self):
        for attr in ("quantity", "unit_cost", "salvage"):
            object.__setattr__(self, attr, dec(getattr(self, attr)))
        if self.quantity < 0 or self.unit_cost < 0:
            raise DomainError(f"cost item {self.name!r}: quantity and unit cost must be >= 0")
        if self.salvage < 0 or self.salvage > self.total:
            raise DomainError(f"cost item {self.name!r}: salvage must lie within [0, total]")

    @property
    def total(self) -> Decimal:
        return self.quantity * self.unit_cost


@dataclass(frozen=True)
class CostLedger:
    items: tuple[CostItem, ...]
    currency: str = "PHP"

    @property
    def total(self) -> Decimal:
        return sum((i.total for i in self.items), ZERO)

    @property
    def depreciable_base(self) -> Decimal:
        return sum((i.total for i in self.items if i.depreciable), ZERO)


@dataclass(frozen=True)
class FinanceParams:
    lifetime: int
    feed_in_tariff: Decimal  # currency/kWh
    consumption_tariff: Decimal  # currency/kWh
    opex: Decimal  # currency/yr
    own_funds: Decimal | None = None  # defaults to the ledger total
    start_year: int = 2024
    discount_rate: Decimal = ZERO
    inflation: Decimal = ZERO  # applied to running costs
    income_tax_rate: Decimal = ZERO
    tariff_escalation: Decimal = ZERO  # feed-in tariff variation
    consumption_tariff_escalation: Decimal = ZERO
    production_aging: Decimal = ZERO
    depreciation_period: int | None = None  # default for items without their own period
    currency: str = "PHP"

    def __post_init__(self):
        for attr in ("feed_in_tariff", "consumption_tariff", "opex", "discount_rate", "inflation",
                     "income_tax_rate", "tariff_escalation", "consumption_tariff_escalation", "production_aging"):
            object.__setattr__(self, attr, dec(getattr(self, attr)))
        if self.own_funds is not None:
            object.__setattr__(self, "own_funds", dec(self.own_funds))
        if self.lifetime <= 0:
            raise DomainError("lifetime must be positive")
        for attr in ("discount_rate", "inflation", "tariff_escalation", "consumption_tariff_escalation",
                     "production_aging", "income_tax_rate"):
            if getattr(self, attr) < -1:
                raise DomainError(f"{attr} must be >= -100 %")


def depreciation_schedule(ledger: CostLedger, method: str = "straight-line", period: int | None = None,
                          years: int | None = None) -> list[Decimal]:
    """Depreciation allowance for years 1..N (index 0 is year 1).

    Each depreciable item spreads ``total - salvage`` evenly over its own period (or
    ``period`` when the item has none). Any sub-cent remainder lands in the item's final
    year so every item sums exactly to its depreciable amount.
    """
    if method.lower().replace("_", "-") != "straight-line":
        raise DomainError(f"unsupported depreciation method {method!r}; only straight-line is available")
    periods = []
    for item in ledger.items:
        if item.depreciable:
            p = item.depreciation_period or period
            if not p or p <= 0:
                raise DomainError(f"cost item {item.name!r} needs a positive depreciation period")
            periods.append((item, p))
    n = years if years is not None else max((p for _, p in periods), default=0)
    schedule = [ZERO] * n
    for item, p in periods:
        amount = item.total - item.salvage
        annual = amount / p
        for y in range(min(p, n)):
            schedule[y] += annual if y < p - 1 else amount - annual * (p - 1)
    return schedule


@dataclass(frozen=True)
class CashFlowRow:
    year: int
    electricity_sale: Decimal = ZERO
    own_funds: Decimal = ZERO
    running_costs: Decimal = ZERO
    depreciation_allowance: Decimal = ZERO
    taxable_income: Decimal = ZERO
    taxes: Decimal = ZERO
    after_tax_profit: Decimal = ZERO
    self_consumption_saving: Decimal = ZERO
    cumulative_profit: Decimal = ZERO
    percent_amortized: Decimal = ZERO

    @property
    def net_flow(self) -> Decimal:
        return self.after_tax_profit + self.self_consumption_saving - self.own_funds


@dataclass(frozen=True)
class CashFlowSchedule:
    rows: tuple[CashFlowRow, ...]
    own_funds: Decimal
    currency: str = "PHP"
    summary: dict = field(default_factory=dict)

    @property
    def net_flows(self) -> list[Decimal]:
        return [r.net_flow for r in self.rows]

    def totals(self) -> CashFlowRow:
        """Column sums over all years; cumulative and amortisation columns take the final year."""
        last = self.rows[-1]
        return CashFlowRow(
            year=-1,
            **{name: sum((getattr(r, name) for r in self.rows), ZERO) for name in (
                "electricity_sale", "own_funds", "running_costs", "depreciation_allowance", "taxable_income",
                "taxes", "after_tax_profit", "self_consumption_saving")},
            cumulative_profit=last.cumulative_profit,
            percent_amortized=last.percent_amortized,
        )

    def to_csv(self, places: str = "1") -> str:
        """Cash-flow CSV, one row per year plus totals; money rounded half-up to ``places``."""
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CASH_FLOW_COLUMNS)
        for r in list(self.rows) + [self.totals()]:
            w.writerow([
                "Total" if r.year < 0 else r.year,
                *(present(getattr(r, name), places) for name in (
                    "electricity_sale", "own_funds", "running_costs", "depreciation_allowance", "taxable_income",
                    "taxes", "after_tax_profit", "self_consumption_saving", "cumulative_profit")),
                f"{present(r.percent_amortized * 100, '0.1')}%",
            ])
        return buf.getvalue()


def cash_flow_table(params: FinanceParams, ledger: CostLedger, sold_kwh, self_consumed_kwh) -> CashFlowSchedule:
    """Year-by-year economics. Year 0 carries the own-funds investment.

    Sale income is taxed after running costs and depreciation (taxable income floored at
    zero); the self-consumption saving is an avoided cost and is not taxed.
    """
    sold, used = dec(sold_kwh), dec(self_consumed_kwh)
    if sold < 0 or used < 0:
        raise DomainError("energy quantities must be >= 0")
    own = params.own_funds if params.own_funds is not None else ledger.total
    depreciation = depreciation_schedule(ledger, period=params.depreciation_period or params.lifetime,
                                         years=params.lifetime)
    cumulative = -own
    rows = [CashFlowRow(0, own_funds=own, cumulative_profit=cumulative, percent_amortized=ZERO)]
    for y in range(1, params.lifetime + 1):
        k = y - 1
        production = (ONE - params.production_aging) ** k
        sale = sold * production * params.feed_in_tariff * (ONE + params.tariff_escalation) ** k
        saving = used * production * params.consumption_tariff * (ONE + params.consumption_tariff_escalation) ** k
        running = params.opex * (ONE + params.inflation) ** k
        dep = depreciation[k]
        taxable = max(ZERO, sale - running - dep)
        taxes = params.income_tax_rate * taxable
        after_tax = sale - running - taxes
        cumulative = cumulative + after_tax + saving
        rows.append(CashFlowRow(
            year=y, electricity_sale=sale, running_costs=running, depreciation_allowance=dep,
            taxable_income=taxable, taxes=taxes, after_tax_profit=after_tax, self_consumption_saving=saving,
            cumulative_profit=cumulative, percent_amortized=(cumulative + own) / own if own else ZERO,
        ))
    return CashFlowSchedule(tuple(rows), own, params.currency)


def simple_payback(schedule: CashFlowSchedule, whole_years: bool = False) -> float | None:
    """Years until cumulative profit reaches zero, interpolated linearly inside the crossing year.

    Returns ``None`` when the investment is never recovered. ``whole_years`` reports the
    first year whose cumulative profit is non-negative instead.
    """
    rows = schedule.rows
    if rows[0].cumulative_profit >= 0:
        return 0.0
    for prev, row in zip(rows, rows[1:]):
        if row.cumulative_profit >= 0:
            if whole_years:
                return float(row.year)
            gained = row.cumulative_profit - prev.cumulative_profit
            return float(prev.year + (-prev.cumulative_profit) / gained)
    return None


def npv(schedule: CashFlowSchedule, discount_rate=0) -> Decimal:
    r = dec(discount_rate)
    if r <= -1:
        raise DomainError("discount rate must exceed -100 %")
    base = ONE + r
    return sum((flow / base**row.year for flow, row in zip(schedule.net_flows, schedule.rows)), ZERO)


def roi(schedule: CashFlowSchedule, discount_rate=0) -> Decimal:
    """Net present value per unit of own funds."""
    return npv(schedule, discount_rate) / schedule.own_funds


def _npv_float(flows, years, r):
    return math.fsum(f / (1.0 + r) ** y for f, y in zip(flows, years))


def _bisect(f, lo, hi, xtol):
    f_lo = f(lo)
    for _ in range(400):
        mid = 0.5 * (lo + hi)
        f_mid = f(mid)
        if f_mid == 0:
            return mid
        if (f_mid > 0) == (f_lo > 0):
            lo, f_lo = mid, f_mid
        else:
            hi = mid
        if hi - lo < xtol:
            break
    return 0.5 * (lo + hi)


def sign_changes(flows) -> int:
    signs = [f > 0 for f in flows if f != 0]
    return sum(a != b for a, b in zip(signs, signs[1:]))


def irr(schedule: CashFlowSchedule, lo: float = -0.99, hi: float = 10.0, xtol: float = 1e-12) -> float | None:
    """Internal rate of return by bracketing bisection on ``[lo, hi]``.

    ``None`` when the flows never change sign or no root lies in the bracket. With more
    than one sign change a warning is issued and the smallest positive root is returned
    (the smallest root if none is positive).
    """
    flows = [float(f) for f in schedule.net_flows]
    years = [r.year for r in schedule.rows]
    changes = sign_changes(flows)
    if changes == 0:
        return None

    def f(r):
        return _npv_float(flows, years, r)

    if changes == 1:
        if (f(lo) > 0) == (f(hi) > 0):
            return None
        return _bisect(f, lo, hi, xtol)
    warnings.warn(f"cash flows change sign {changes} times; IRR may not be unique", RuntimeWarning, stacklevel=2)
    grid = [lo + (hi - lo) * i / 20000 for i in range(20001)]
    roots = []
    prev_r, prev_v = grid[0], f(grid[0])
    for r in grid[1:]:
        v = f(r)
        if v == 0 or (v > 0) != (prev_v > 0):
            roots.append(_bisect(f, prev_r, r, xtol))
        prev_r, prev_v = r, v
    if not roots:
        return None
    positive = [r for r in roots if r > 0]
    return min(positive) if positive else min(roots)


def lcoe(ledger: CostLedger, params: FinanceParams, annual_energy_kwh) -> Decimal:
    """Levelized cost: discounted capital plus running costs over discounted production."""
    energy = dec(annual_energy_kwh)
    if energy <= 0:
        raise DomainError("annual energy must be positive")
    base = ONE + params.discount_rate
    capex = params.own_funds if params.own_funds is not None else ledger.total
    cost, produced = capex, ZERO
    for y in range(1, params.lifetime + 1):
        k = y - 1
        disc = base**y
        cost += params.opex * (ONE + params.inflation) ** k / disc
        produced += energy * (ONE - params.production_aging) ** k / disc
    return cost / produced


@dataclass(frozen=True)
class FinanceSummary:
    total_cost: Decimal
    depreciable_base: Decimal
    annual_depreciation: Decimal  # first-year allowance
    payback_years: float | None
    npv: Decimal
    irr: float | None
    roi: Decimal
    lcoe: Decimal
    specific_cost: Decimal | None = None  # currency per Wp


def evaluate(params: FinanceParams, ledger: CostLedger, sold_kwh, self_consumed_kwh,
             produced_kwh=None, p_dc_nominal_w=None, whole_year_payback: bool = False):
    """Cash-flow table plus the summary metrics in one call."""
    schedule = cash_flow_table(params, ledger, sold_kwh, self_consumed_kwh)
    produced = dec(produced_kwh) if produced_kwh is not None else dec(sold_kwh) + dec(self_consumed_kwh)
    dep = schedule.rows[1].depreciation_allowance if len(schedule.rows) > 1 else ZERO
    summary = FinanceSummary(
        total_cost=ledger.total,
        depreciable_base=ledger.depreciable_base,
        annual_depreciation=dep,
        payback_years=simple_payback(schedule, whole_years=whole_year_payback),
        npv=npv(schedule, params.discount_rate),
        irr=irr(schedule),
        roi=roi(schedule, params.discount_rate),
        lcoe=lcoe(ledger, params, produced) if produced > 0 else Decimal("NaN"),
        specific_cost=(schedule.own_funds / dec(p_dc_nominal_w)) if p_dc_nominal_w else None,
    )
    return schedule, summary
