"""Feasibility toolkit for nearly zero-energy building retrofits.

Lighting redesign, cooling sizing, load aggregation, grid-tied PV design and hourly
yield simulation, cash-flow economics and avoided-CO2 accounting.
"""

__version__ = "0.1.0"
