"""Python access to the kontact residual checks.

The C++ extension returns JSON text for structured results; the helpers here
decode it into plain dictionaries.
"""

import json

from ._kontact import (
    KontactError,
    RegularityError,
    ResidualReport,
    UsageError,
    angle_function,
    laplacian_of_angle_function,
    reeb_energy_closed_form,
    run_suite,
)
from . import _kontact

__all__ = [
    "KontactError",
    "RegularityError",
    "ResidualReport",
    "UsageError",
    "angle_function",
    "describe",
    "energy",
    "laplacian_of_angle_function",
    "reeb_energy_closed_form",
    "report",
    "run_suite",
]


def describe(manifold):
    """Shipped structure pair, sign conventions and golden constants."""
    return json.loads(_kontact.describe_json(manifold))


def report(manifold, samples=500, seed=42, exclusion=0.9, tol=None):
    """Full suite output in the same schema as ``kontact verify``."""
    return json.loads(_kontact.report_json(manifold, samples, seed, exclusion, tol or {}))


def energy(manifold, field="reeb", samples=10000, seed=42, exclusion=0.9):
    return json.loads(_kontact.energy_json(manifold, field, samples, seed, exclusion))
