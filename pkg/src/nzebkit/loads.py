"""Electrical load schedule in apparent power (VA / kVA)."""
from __future__ import annotations

import math
from dataclasses import dataclass
from decimal import ROUND_HALF_UP, Decimal

from .errors import DomainError

DEFAULT_OUTLET_DENSITY = 8.0  # VA/m2


def report_kva(value: float) -> float:
    """Two-decimal, half-up rounding used in schedules."""
    return float(Decimal(repr(value)).quantize(Decimal("0.01"), rounding=ROUND_HALF_UP))


def outlet_load(floor_area: float, va_per_m2: float = DEFAULT_OUTLET_DENSITY) -> float:
    """Convenience-outlet provision in kVA (full precision; round with :func:`report_kva`)."""
    if floor_area < 0 or va_per_m2 < 0:
        raise DomainError("floor area and outlet density must be >= 0")
    return floor_area * va_per_m2 / 1000.0


@dataclass(frozen=True)
class LoadItem:
    name: str
    va_per_unit: float
    quantity: float = 1

    def __post_init__(self):
        if self.quantity < 0:
            raise DomainError(f"load {self.name!r}: quantity must be >= 0")
        if self.va_per_unit < 0:
            raise DomainError(f"load {self.name!r}: VA per unit must be >= 0")

    @property
    def subtotal(self) -> float:
        """kVA."""
        return self.va_per_unit * self.quantity / 1000.0


@dataclass(frozen=True)
class LoadSchedule:
    items: tuple[LoadItem, ...]

    @property
    def total(self) -> float:
        # fsum is exactly rounded, so the total does not depend on item order.
        return math.fsum(item.subtotal for item in self.items)

    def rows(self):
        """Schedule rows: name, VA/unit, units, subtotal kVA."""
        return [(i.name, i.va_per_unit, i.quantity, report_kva(i.subtotal)) for i in self.items]


def aggregate_loads(items) -> LoadSchedule:
    return LoadSchedule(tuple(items))
