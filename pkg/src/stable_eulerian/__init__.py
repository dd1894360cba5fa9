"""Multivariate Eulerian polynomials of Coxeter and coloured permutation groups.

Exact constructions by enumeration and by stability-preserving recurrences,
together with real-rootedness, stability and Motzkin-path checks.
"""
from __future__ import annotations

__version__ = "0.1.0"

from .eulerian import FamilySpec, brute_force, recurrence, univariate  # noqa: E402
from .multipoly import MPoly, parse  # noqa: E402
from .upoly import UPoly  # noqa: E402

__all__ = ["FamilySpec", "MPoly", "UPoly", "brute_force", "parse", "recurrence",
           "univariate", "__version__"]
