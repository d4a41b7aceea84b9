"""Consecutive detecting arrays: constructions, verifiers and fault location."""

from .catalog import catalog_seed, list_seeds, seed_array
from .locate import OutcomeVector, Verdict, locate_faults, simulate_outcomes
from .model import (
    Array,
    ConsecutiveInteraction,
    RowDivisibleArray,
    enumerate_consecutive_interactions,
    rho,
    rho_union,
    window,
)
from .verify import (
    cdan_bound_report,
    equivalence_crosscheck,
    is_ca,
    is_cca,
    is_cda_direct,
    is_coa,
    is_oa,
    is_simple_coa,
    is_super_simple_oa,
)

__version__ = "0.1.0"

__all__ = [
    "Array",
    "ConsecutiveInteraction",
    "OutcomeVector",
    "RowDivisibleArray",
    "Verdict",
    "catalog_seed",
    "cdan_bound_report",
    "enumerate_consecutive_interactions",
    "equivalence_crosscheck",
    "is_ca",
    "is_cca",
    "is_cda_direct",
    "is_coa",
    "is_oa",
    "is_simple_coa",
    "is_super_simple_oa",
    "list_seeds",
    "locate_faults",
    "rho",
    "rho_union",
    "seed_array",
    "simulate_outcomes",
    "window",
]
