"""Empirical harness: live pseudo-random draws and chi-square tests.

This is the only part of the package that uses floating point.
"""

from ._backend import BACKENDS, DEFAULT as DEFAULT_BACKEND, get_backend
from .gof import (
    ALPHAS,
    ExpectedCountError,
    GofResult,
    chi2_isf,
    chi2_sf,
    chi_square_test,
    gammainc_lower,
    gammainc_upper,
)
from .rng import SeededGenerator, draw_continuous, draw_discrete, splitmix64
from .sampling import (
    CONSTRUCTIONS,
    FrequencyTable,
    sample_biased_tuples,
    sample_indices,
    sample_tuples,
)

__all__ = [
    "ALPHAS",
    "BACKENDS",
    "CONSTRUCTIONS",
    "DEFAULT_BACKEND",
    "ExpectedCountError",
    "FrequencyTable",
    "GofResult",
    "SeededGenerator",
    "chi2_isf",
    "chi2_sf",
    "chi_square_test",
    "draw_continuous",
    "draw_discrete",
    "gammainc_lower",
    "gammainc_upper",
    "get_backend",
    "sample_biased_tuples",
    "sample_indices",
    "sample_tuples",
    "splitmix64",
]
