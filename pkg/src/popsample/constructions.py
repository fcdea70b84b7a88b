"""Explicit experiment spaces with simple sampler mappings.

Three constructions are provided:

* the product construction: experiment space ``pop**n`` with product
  weights and the identity table;
* the discrete-generator construction: ``E = {0, ..., N**n - 1}`` uniform,
  each outcome mapped to its ``n`` base-``N`` digits (most significant
  first);
* the continuous-generator construction: ``E = [0, 1)`` with Lebesgue
  measure, each point mapped to the first ``n`` digits of its base-``N``
  expansion.  The preimage of a tuple is the half-open cell
  ``[lo, lo + N**-n)``, so the construction is handled exactly through
  those cells.

Points with two base-``N`` expansions (``0.0111..._2 == 0.1_2``) are
assigned by the floor rule, i.e. the terminating expansion.  ``u = 1`` is
not in the generator's range.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

from .measure import FinitePopulationSpace, InvalidSizeError
from .sampler import ArityError, FiniteExperimentSpace, FiniteSampler, uniform_experiment

__all__ = [
    "DEFAULT_ENUMERATION_CAP",
    "IntervalPreimage",
    "product_construction",
    "discrete_construction",
    "continuous_construction",
    "digits_decompose",
    "recompose",
    "continuous_digits",
    "tuple_preimage_interval",
    "all_cells",
]

DEFAULT_ENUMERATION_CAP = 10 ** 6


@dataclass(frozen=True, order=True)
class IntervalPreimage:
    """Half-open interval ``[lo, hi)`` inside ``[0, 1)``."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        if not 0 <= self.lo < self.hi <= 1:
            raise ValueError(f"need 0 <= lo < hi <= 1, got [{self.lo}, {self.hi})")

    @property
    def length(self) -> Fraction:
        return self.hi - self.lo

    def __contains__(self, u) -> bool:
        return self.lo <= u < self.hi


def _check_sizes(N, n):
    if not isinstance(N, int) or isinstance(N, bool) or N < 1:
        raise InvalidSizeError(f"population size N must be a positive integer, got {N!r}")
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise ArityError(f"sample size n must be a positive integer, got {n!r}")


def product_construction(pop: FinitePopulationSpace, n: int) -> FiniteSampler:
    """Experiment space ``pop**n`` with the identity table.

    Outcomes are ordered lexicographically by tuple.
    """
    _check_sizes(pop.size, n)
    tuples = list(itertools.product(range(pop.size), repeat=n))
    w = pop.weights
    weights = tuple(math.prod((w[a] for a in t), start=Fraction(1)) for t in tuples)
    return FiniteSampler(FiniteExperimentSpace(weights), n, tuple(tuples), pop.size)


def digits_decompose(e: int, N: int, n: int) -> tuple[int, ...]:
    """The ``n`` base-``N`` digits of ``e``, most significant first."""
    _check_sizes(N, n)
    if not isinstance(e, int) or not 0 <= e < N ** n:
        raise ValueError(f"e={e!r} outside 0..{N ** n - 1}")
    digits = [0] * n
    for i in range(n - 1, -1, -1):
        e, digits[i] = divmod(e, N)
    return tuple(digits)


def recompose(digits, N: int) -> int:
    """Inverse of :func:`digits_decompose`."""
    e = 0
    for a in digits:
        if not 0 <= a < N:
            raise ValueError(f"digit {a} outside 0..{N - 1}")
        e = e * N + a
    return e


def discrete_construction(N: int, n: int, cap: int = DEFAULT_ENUMERATION_CAP) -> FiniteSampler:
    _check_sizes(N, n)
    M = N ** n
    if M > cap:
        raise InvalidSizeError(f"N**n = {M} exceeds the enumeration cap {cap}")
    # itertools.product over range(N) yields digit tuples in the order of e
    table = tuple(itertools.product(range(N), repeat=n))
    return FiniteSampler(uniform_experiment(M), n, table, N)


def continuous_digits(u, N: int, n: int) -> tuple[int, ...]:
    """First ``n`` base-``N`` digits of ``u`` in ``[0, 1)``.

    ``a_i = floor(u * N**i) mod N``.  ``u`` is converted exactly, so a
    float argument is treated as the dyadic rational it represents.
    """
    _check_sizes(N, n)
    u = Fraction(u)
    if not 0 <= u < 1:
        raise ValueError(f"u={u} outside [0, 1)")
    num, den = u.numerator, u.denominator
    digits = []
    for _ in range(n):
        a, num = divmod(num * N, den)
        digits.append(a)
    return tuple(digits)


def tuple_preimage_interval(t, N: int) -> IntervalPreimage:
    """Set of ``u`` in ``[0, 1)`` whose first ``len(t)`` digits are ``t``."""
    n = len(t)
    _check_sizes(N, n)
    scale = N ** n
    lo = Fraction(recompose(t, N), scale)
    return IntervalPreimage(lo, lo + Fraction(1, scale))


def all_cells(N: int, n: int):
    """Yield ``(tuple, interval)`` for every digit tuple, in order of ``lo``."""
    _check_sizes(N, n)
    for t in itertools.product(range(N), repeat=n):
        yield t, tuple_preimage_interval(t, N)


def continuous_construction(N: int, n: int, cap: int = DEFAULT_ENUMERATION_CAP) -> FiniteSampler:
    """Finite sampler equivalent to the continuous construction.

    One outcome per preimage cell, weighted by the cell's length.  Any
    quantity that depends on the sample only through ``S`` (tuple
    probabilities, induced variables) is the same as on ``[0, 1)`` since
    ``S`` is constant on each cell.
    """
    _check_sizes(N, n)
    if N ** n > cap:
        raise InvalidSizeError(f"N**n = {N ** n} exceeds the enumeration cap {cap}")
    cells = list(all_cells(N, n))
    weights = tuple(iv.length for _, iv in cells)
    return FiniteSampler(FiniteExperimentSpace(weights), n, tuple(t for t, _ in cells), N)
