"""Finite population probability spaces and random variables over them.

Everything here is exact: probabilities and variable values are
:class:`fractions.Fraction` instances and no floating point is used.

Population elements are the 0-based indices ``0 .. N-1``.  The sigma-field
is the full powerset of the population and is never built; events are
passed around as explicit collections of indices.

Note on distribution functions: :func:`cdf` uses the *strict* convention
``P(X < u)``, not the ``P(X <= u)`` most libraries use.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

__all__ = [
    "Rational",
    "InvalidSizeError",
    "ShapeError",
    "RationalParseError",
    "parse_rational",
    "format_rational",
    "FinitePopulationSpace",
    "RandomVariable",
    "Distribution",
    "make_classical",
    "event_probability",
    "pushforward",
    "cdf",
]

Rational = Fraction

_RATIONAL_RE = re.compile(r"^([+-]?\d+)(?:/(\d+))?$")


class InvalidSizeError(ValueError):
    """A size or arity parameter is outside its allowed range."""


class ShapeError(ValueError):
    """Objects that must agree in length or population size do not."""


class RationalParseError(ValueError):
    """A string is not of the form ``p`` or ``p/q`` with ``q > 0``."""


def parse_rational(text) -> Fraction:
    """Parse ``"p/q"`` or ``"p"`` into a Fraction.

    Only an optional sign on the numerator is accepted; ``"1/-3"``,
    ``"1/0"``, decimals and whitespace are rejected.  Plain ``int`` values
    (as JSON may produce) are accepted too.
    """
    if isinstance(text, bool):
        raise RationalParseError(f"not a rational: {text!r}")
    if isinstance(text, int):
        return Fraction(text)
    if not isinstance(text, str):
        raise RationalParseError(f"not a rational: {text!r}")
    m = _RATIONAL_RE.match(text)
    if m is None:
        raise RationalParseError(f"not a rational: {text!r}")
    num = int(m.group(1))
    den = 1 if m.group(2) is None else int(m.group(2))
    if den == 0:
        raise RationalParseError(f"zero denominator: {text!r}")
    return Fraction(num, den)


def format_rational(q: Fraction) -> str:
    """Render as ``"p/q"`` in lowest terms, or ``"p"`` for integers."""
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def _as_fractions(values: Iterable) -> tuple[Fraction, ...]:
    out = []
    for v in values:
        if isinstance(v, float):
            raise TypeError("floats are not allowed; use Fraction or 'p/q' strings")
        if type(v) is not Fraction:
            v = parse_rational(v) if isinstance(v, str) else Fraction(v)
        out.append(v)
    return tuple(out)


def _grouped(values: Iterable[Fraction]) -> Counter:
    # keyed on integer pairs: Fraction.__hash__ is slow for large populations
    return Counter((v.numerator, v.denominator) for v in values)


def _group_sum(groups: Counter) -> Fraction:
    return sum((Fraction(p * c, q) for (p, q), c in groups.items()), Fraction(0))


def exact_sum(values: Iterable[Fraction]) -> Fraction:
    """Sum grouped by distinct value; fast when few distinct weights occur."""
    return _group_sum(_grouped(values))


def check_weights(weights: tuple[Fraction, ...], what: str) -> int:
    """Raise unless the weights are non-negative and sum to 1.

    Returns the number of distinct weights.
    """
    groups = _grouped(weights)
    if any(p < 0 for p, _ in groups):
        raise ValueError(f"{what} must be non-negative")
    total = _group_sum(groups)
    if total != 1:
        raise ValueError(f"{what} sum to {format_rational(total)}, not 1")
    return len(groups)


@dataclass(frozen=True)
class FinitePopulationSpace:
    """A finite population with one probability weight per element."""

    weights: tuple[Fraction, ...]
    labels: tuple[str, ...] | None = None
    _classical: bool = field(default=False, init=False, repr=False, compare=False)

    def __post_init__(self):
        weights = _as_fractions(self.weights)
        object.__setattr__(self, "weights", weights)
        if not weights:
            raise InvalidSizeError("population must have at least one element")
        distinct = check_weights(weights, "weights")
        if self.labels is not None:
            labels = tuple(str(s) for s in self.labels)
            if len(labels) != len(weights):
                raise ShapeError("labels and weights differ in length")
            object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "_classical", distinct == 1)

    @property
    def size(self) -> int:
        return len(self.weights)

    @property
    def is_classical(self) -> bool:
        """True when every element carries the same weight ``1/N``."""
        return self._classical

    def check_index(self, i: int) -> int:
        if not isinstance(i, int) or isinstance(i, bool) or not 0 <= i < self.size:
            raise IndexError(f"element {i!r} not in population of size {self.size}")
        return i


@dataclass(frozen=True)
class RandomVariable:
    """A total map from population elements to exact values.

    ``values[i]`` is the value of the variable at element ``i``.
    """

    values: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "values", _as_fractions(self.values))

    def __len__(self) -> int:
        return len(self.values)

    def __call__(self, i: int) -> Fraction:
        return self.values[i]


@dataclass(frozen=True)
class Distribution:
    """A finitely supported distribution on exact values.

    ``support`` is strictly increasing and ``probs[k]`` is the mass of
    ``support[k]``.  Zero-mass values are not stored.
    """

    support: tuple[Fraction, ...]
    probs: tuple[Fraction, ...]

    def __post_init__(self):
        support = _as_fractions(self.support)
        probs = _as_fractions(self.probs)
        if len(support) != len(probs):
            raise ShapeError("support and probs differ in length")
        if any(a >= b for a, b in zip(support, support[1:])):
            raise ValueError("support must be strictly increasing")
        if any(p < 0 for p in probs) or sum(probs) != 1:
            raise ValueError("probs must be non-negative and sum to 1")
        object.__setattr__(self, "support", support)
        object.__setattr__(self, "probs", probs)

    @classmethod
    def from_mapping(cls, masses: dict) -> "Distribution":
        items = sorted((v, p) for v, p in masses.items() if p != 0)
        return cls(tuple(v for v, _ in items), tuple(p for _, p in items))

    def as_dict(self) -> dict[Fraction, Fraction]:
        return dict(zip(self.support, self.probs))

    def mass(self, v) -> Fraction:
        return self.as_dict().get(Fraction(v), Fraction(0))

    def below(self, u) -> Fraction:
        """``P(V < u)`` for this distribution."""
        u = Fraction(u)
        return sum((p for v, p in zip(self.support, self.probs) if v < u), Fraction(0))


def make_classical(N: int, labels: Sequence[str] | None = None) -> FinitePopulationSpace:
    """Population of size ``N`` with every weight equal to ``1/N``."""
    if not isinstance(N, int) or isinstance(N, bool) or N < 1:
        raise InvalidSizeError(f"population size must be a positive integer, got {N!r}")
    w = Fraction(1, N)
    return FinitePopulationSpace((w,) * N, None if labels is None else tuple(labels))


def event_probability(space: FinitePopulationSpace, event: Iterable[int]) -> Fraction:
    """Sum of the weights of the (distinct) elements in ``event``."""
    idx = {space.check_index(i) for i in event}
    return exact_sum(space.weights[i] for i in idx)


def _check_variable(space: FinitePopulationSpace, X: RandomVariable) -> None:
    if len(X) != space.size:
        raise ShapeError(f"variable has {len(X)} values but population has {space.size} elements")


def pushforward(space: FinitePopulationSpace, X: RandomVariable) -> Distribution:
    """Law of ``X`` under the population weights.

    Values carried only by zero-weight elements get no mass and are
    dropped from the support.
    """
    _check_variable(space, X)
    masses: dict[Fraction, Fraction] = {}
    for v, w in zip(X.values, space.weights):
        masses[v] = masses.get(v, Fraction(0)) + w
    return Distribution.from_mapping(masses)


def cdf(space: FinitePopulationSpace, X: RandomVariable, u) -> Fraction:
    """``P({i : X(i) < u})`` -- strict inequality."""
    _check_variable(space, X)
    u = Fraction(u)
    return sum((w for v, w in zip(X.values, space.weights) if v < u), Fraction(0))
