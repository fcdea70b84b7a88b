"""Induced sample variables and an exact iid check.

Given a sampler ``S`` and a population variable ``X``, the induced sample
variables are ``X_i(e) = X(S_i(e))``.  For a simple sampler they are
independent and each is distributed like ``X``; :func:`check_iid`
confirms or refutes both claims by exact enumeration of the experiment
space.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

from .measure import Distribution, FinitePopulationSpace, RandomVariable, ShapeError, pushforward
from .sampler import FiniteSampler, tuple_distribution

__all__ = [
    "JointValueDistribution",
    "IidReport",
    "induced_joint",
    "marginal",
    "check_iid",
    "joint_below",
]


@dataclass(frozen=True)
class JointValueDistribution:
    """Law of ``(X_1, ..., X_n)``; tuples of zero mass are absent."""

    n: int
    masses: dict

    def __post_init__(self):
        if any(len(v) != self.n for v in self.masses):
            raise ShapeError("every value tuple must have length n")
        if any(p < 0 for p in self.masses.values()) or sum(self.masses.values()) != 1:
            raise ValueError("joint masses must be non-negative and sum to 1")

    def __getitem__(self, values) -> Fraction:
        return self.masses.get(tuple(Fraction(v) for v in values), Fraction(0))


@dataclass(frozen=True)
class IidReport:
    marginals_identical: bool
    marginals_match_population: bool
    independent: bool
    witness: tuple | None = None
    failed_check: str | None = None

    @property
    def ok(self) -> bool:
        return self.marginals_identical and self.marginals_match_population and self.independent


def induced_joint(s: FiniteSampler, pop: FinitePopulationSpace,
                  X: RandomVariable) -> JointValueDistribution:
    if s.population_size != pop.size:
        raise ShapeError(f"sampler is over {s.population_size} elements, population has {pop.size}")
    if len(X) != pop.size:
        raise ShapeError(f"variable has {len(X)} values but population has {pop.size} elements")
    masses: dict[tuple, Fraction] = {}
    for t, p in tuple_distribution(s).items():
        v = tuple(X.values[a] for a in t)
        masses[v] = masses.get(v, Fraction(0)) + p
    return JointValueDistribution(s.n, masses)


def marginal(joint: JointValueDistribution, i: int) -> Distribution:
    """Law of ``X_i``; ``i`` is 1-based."""
    if not isinstance(i, int) or not 1 <= i <= joint.n:
        raise IndexError(f"coordinate {i!r} outside 1..{joint.n}")
    masses: dict[Fraction, Fraction] = {}
    for v, p in joint.masses.items():
        masses[v[i - 1]] = masses.get(v[i - 1], Fraction(0)) + p
    return Distribution.from_mapping(masses)


def joint_below(joint: JointValueDistribution, thresholds) -> Fraction:
    """``P(X_1 < u_1, ..., X_n < u_n)`` from the joint law."""
    us = [Fraction(u) for u in thresholds]
    if len(us) != joint.n:
        raise ShapeError(f"need {joint.n} thresholds, got {len(us)}")
    return sum((p for v, p in joint.masses.items() if all(a < u for a, u in zip(v, us))),
               Fraction(0))


def _first_mismatch(a: Distribution, b: Distribution):
    da, db = a.as_dict(), b.as_dict()
    for v in sorted(set(da) | set(db)):
        if da.get(v) != db.get(v):
            return v
    return None


def check_iid(s: FiniteSampler, pop: FinitePopulationSpace, X: RandomVariable) -> IidReport:
    """Exact check that ``X_1, ..., X_n`` are iid with the law of ``X``.

    Independence is tested on the joint mass function: every tuple in the
    product of the marginal supports must have mass equal to the product
    of its marginal masses.  The witness is the first failing tuple in
    lexicographic order (for a marginal failure, a 1-tuple holding the
    first mismatching value).
    """
    joint = induced_joint(s, pop, X)
    margs = [marginal(joint, i) for i in range(1, s.n + 1)]
    target = pushforward(pop, X)

    identical = all(m == margs[0] for m in margs[1:])
    matches = all(m == target for m in margs)
    witness = None
    failed = None
    if not matches:
        i = next(k for k, m in enumerate(margs) if m != target)
        witness, failed = (_first_mismatch(margs[i], target),), f"marginal {i + 1}"

    independent = True
    mdicts = [m.as_dict() for m in margs]
    zero = Fraction(0)
    for v in itertools.product(*(m.support for m in margs)):
        prod = math.prod((d[a] for d, a in zip(mdicts, v)), start=Fraction(1))
        if joint.masses.get(v, zero) != prod:
            independent = False
            if witness is None:
                witness, failed = v, "independence"
            break
    # mass off the product of supports is impossible: every joint tuple's
    # coordinates are in the marginal supports by construction
    return IidReport(identical, matches, independent, witness, failed)

