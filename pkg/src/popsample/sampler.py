"""Experiment spaces, sampler mappings and exact simpleness checks.

A sampler maps every outcome of a finite experiment space to an ordered
n-tuple of population indices (repeats allowed).  It is *simple* when the
probability of every rectangle event ``{e : S_i(e) in B_i for all i}``
equals the product of the population probabilities of the ``B_i``.

On finite spaces it suffices to compare single tuples (atoms): every
rectangle is a disjoint union of atoms, and both sides are additive.
:func:`simpleness_report` does that; :func:`exhaustive_rectangle_check`
enumerates all rectangles and is kept as a small-instance oracle.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .measure import (
    FinitePopulationSpace,
    InvalidSizeError,
    ShapeError,
    _as_fractions,
    check_weights,
)

__all__ = [
    "FiniteExperimentSpace",
    "FiniteSampler",
    "SimplenessReport",
    "NotApplicableError",
    "ArityError",
    "uniform_experiment",
    "tuple_distribution",
    "rectangle_probability",
    "simpleness_report",
    "exhaustive_rectangle_check",
    "count_rectangles",
    "classical_tuple_check",
    "subset_selection_probability",
]

# 2**(N*n) rectangles; 8 keeps the all-rectangles oracle at <= 256 cases.
MAX_RECTANGLE_CELLS = 8


class NotApplicableError(ValueError):
    """The check only makes sense for a different kind of population."""


class ArityError(InvalidSizeError):
    """A tuple or subset has the wrong number of entries."""


@dataclass(frozen=True)
class FiniteExperimentSpace:
    weights: tuple[Fraction, ...]
    _uniform: bool = field(default=False, init=False, repr=False, compare=False)

    def __post_init__(self):
        weights = _as_fractions(self.weights)
        if not weights:
            raise InvalidSizeError("experiment space must have at least one outcome")
        distinct = check_weights(weights, "experiment weights")
        object.__setattr__(self, "weights", weights)
        object.__setattr__(self, "_uniform", distinct == 1)

    @property
    def size(self) -> int:
        return len(self.weights)

    @property
    def is_uniform(self) -> bool:
        return self._uniform


def uniform_experiment(M: int) -> FiniteExperimentSpace:
    if not isinstance(M, int) or M < 1:
        raise InvalidSizeError(f"experiment size must be a positive integer, got {M!r}")
    return FiniteExperimentSpace((Fraction(1, M),) * M)


@dataclass(frozen=True)
class FiniteSampler:
    """A total table from experiment outcomes to n-tuples of population indices."""

    experiment: FiniteExperimentSpace
    n: int
    table: tuple[tuple[int, ...], ...]
    population_size: int

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 1:
            raise ArityError(f"sample size n must be >= 1, got {self.n!r}")
        if not isinstance(self.population_size, int) or self.population_size < 1:
            raise InvalidSizeError(f"population size must be >= 1, got {self.population_size!r}")
        table = tuple(tuple(int(i) for i in row) for row in self.table)
        if len(table) != self.experiment.size:
            raise ShapeError(f"table has {len(table)} rows for {self.experiment.size} outcomes")
        N = self.population_size
        for e, row in enumerate(table):
            if len(row) != self.n:
                raise ArityError(f"row {e} has length {len(row)}, expected {self.n}")
            for i in row:
                if not 0 <= i < N:
                    raise IndexError(f"row {e} references element {i} outside population of size {N}")
        object.__setattr__(self, "table", table)

    def component(self, i: int, e: int) -> int:
        """``S_i(e)`` with a 1-based coordinate ``i``."""
        return self.table[e][i - 1]


@dataclass(frozen=True)
class SimplenessReport:
    is_simple: bool
    worst_tuple: tuple[int, ...] | None
    worst_deviation: Fraction
    checked_rectangles: int


def tuple_distribution(s: FiniteSampler) -> dict[tuple[int, ...], Fraction]:
    """Pushforward of the experiment weights through the sampler table.

    Only tuples with positive probability are present.
    """
    if s.experiment.is_uniform:
        M = s.experiment.size
        return {t: Fraction(c, M) for t, c in Counter(s.table).items()}
    dist: dict[tuple[int, ...], Fraction] = {}
    for t, w in zip(s.table, s.experiment.weights):
        if w:
            dist[t] = dist.get(t, Fraction(0)) + w
    return dist


def _check_sets(s: FiniteSampler, sets: Sequence[Iterable[int]]) -> list[frozenset[int]]:
    if len(sets) != s.n:
        raise ArityError(f"need {s.n} sets, got {len(sets)}")
    out = []
    for B in sets:
        B = frozenset(B)
        for i in B:
            if not isinstance(i, int) or not 0 <= i < s.population_size:
                raise IndexError(f"element {i!r} not in population of size {s.population_size}")
        out.append(B)
    return out


def rectangle_probability(s: FiniteSampler, sets: Sequence[Iterable[int]],
                          _dist: dict | None = None) -> Fraction:
    """``P_E({e : S_i(e) in sets[i-1] for every i})``."""
    sets = _check_sets(s, sets)
    dist = tuple_distribution(s) if _dist is None else _dist
    total = Fraction(0)
    for t, p in dist.items():
        if all(a in B for a, B in zip(t, sets)):
            total += p
    return total


def _check_population(s: FiniteSampler, pop: FinitePopulationSpace) -> None:
    if s.population_size != pop.size:
        raise ShapeError(f"sampler is over {s.population_size} elements, population has {pop.size}")


def simpleness_report(s: FiniteSampler, pop: FinitePopulationSpace) -> SimplenessReport:
    """Compare every tuple's probability with the product of its weights.

    The worst tuple is the one with the largest absolute deviation; ties go
    to the lexicographically smallest tuple.
    """
    _check_population(s, pop)
    dist = tuple_distribution(s)
    w = pop.weights
    worst_t = None
    worst = Fraction(0)
    checked = 0
    zero = Fraction(0)
    for t in itertools.product(range(pop.size), repeat=s.n):
        checked += 1
        expected = math.prod((w[a] for a in t), start=Fraction(1))
        dev = abs(dist.get(t, zero) - expected)
        if dev > worst:
            worst, worst_t = dev, t
    return SimplenessReport(worst == 0, worst_t, worst, checked)


def _all_rectangles(N: int, n: int):
    subsets = [frozenset(c) for r in range(N + 1) for c in itertools.combinations(range(N), r)]
    return itertools.product(subsets, repeat=n)


def count_rectangles(N: int, n: int) -> int:
    return 2 ** (N * n)


def exhaustive_rectangle_check(s: FiniteSampler, pop: FinitePopulationSpace) -> bool:
    """Check the product identity on every rectangle ``B_1 x ... x B_n``.

    Refuses instances with ``N * n > 8`` (more than 256 rectangles).
    """
    _check_population(s, pop)
    N, n = pop.size, s.n
    if N * n > MAX_RECTANGLE_CELLS:
        raise InvalidSizeError(
            f"all-rectangles check limited to N*n <= {MAX_RECTANGLE_CELLS}, got N={N}, n={n}")
    dist = tuple_distribution(s)
    pmass = {}
    for rect in _all_rectangles(N, n):
        lhs = rectangle_probability(s, rect, _dist=dist)
        rhs = Fraction(1)
        for B in rect:
            if B not in pmass:
                pmass[B] = sum((pop.weights[i] for i in B), Fraction(0))
            rhs *= pmass[B]
        if lhs != rhs:
            return False
    return True


def classical_tuple_check(s: FiniteSampler, pop: FinitePopulationSpace | None = None) -> bool:
    """True iff each of the ``N**n`` ordered tuples has probability ``N**-n``.

    If ``pop`` is given it must be classical; without it the population is
    taken to be the classical one of size ``s.population_size``.
    """
    if pop is not None:
        _check_population(s, pop)
        if not pop.is_classical:
            raise NotApplicableError("tuple-version check needs a classical population")
    N, n = s.population_size, s.n
    dist = tuple_distribution(s)
    target = Fraction(1, N ** n)
    return len(dist) == N ** n and all(p == target for p in dist.values())


def subset_selection_probability(s: FiniteSampler, subset: Iterable[int]) -> Fraction:
    """Probability that the drawn tuple is some ordering of ``subset``.

    ``subset`` must have exactly ``n`` distinct elements.
    """
    subset = list(subset)
    target = frozenset(subset)
    if len(subset) != s.n or len(target) != s.n:
        raise ArityError(f"subset must have exactly n={s.n} distinct elements, got {subset!r}")
    for i in target:
        if not isinstance(i, int) or not 0 <= i < s.population_size:
            raise IndexError(f"element {i!r} not in population of size {s.population_size}")
    dist = tuple_distribution(s)
    total = Fraction(0)
    for t, p in dist.items():
        if len(set(t)) == s.n and frozenset(t) == target:
            total += p
    return total
