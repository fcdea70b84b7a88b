"""Pearson chi-square goodness-of-fit against an exact tuple distribution.

Upper-tail probabilities come from the regularized incomplete gamma
function, ``P(chi2_df > x) = Q(df/2, x/2)``, evaluated with the usual
series (small ``x``) or Lentz continued fraction (large ``x``).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .sampling import FrequencyTable

__all__ = [
    "ALPHAS",
    "MIN_EXPECTED",
    "GofResult",
    "ExpectedCountError",
    "gammainc_lower",
    "gammainc_upper",
    "chi2_sf",
    "chi2_isf",
    "chi_square_test",
]

ALPHAS = (0.05, 0.01, 0.001)
MIN_EXPECTED = 5

_EPS = 1e-16
_MAX_ITER = 10_000


class ExpectedCountError(ValueError):
    """Some expected count ``k * p`` is below :data:`MIN_EXPECTED`."""


def _series(a: float, x: float) -> float:
    # P(a, x) = x**a e**-x / Gamma(a+1) * sum_n x**n / ((a+1)...(a+n))
    term = total = 1.0 / a
    ap = a
    for _ in range(_MAX_ITER):
        ap += 1.0
        term *= x / ap
        total += term
        if abs(term) < abs(total) * _EPS:
            break
    return total * math.exp(-x + a * math.log(x) - math.lgamma(a))


def _continued_fraction(a: float, x: float) -> float:
    # Q(a, x) by modified Lentz
    tiny = 1e-300
    b = x + 1.0 - a
    c = 1.0 / tiny
    d = 1.0 / b
    h = d
    for i in range(1, _MAX_ITER):
        an = -i * (i - a)
        b += 2.0
        d = an * d + b
        if abs(d) < tiny:
            d = tiny
        c = b + an / c
        if abs(c) < tiny:
            c = tiny
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _EPS:
            break
    return h * math.exp(-x + a * math.log(x) - math.lgamma(a))


def gammainc_lower(a: float, x: float) -> float:
    """Regularized lower incomplete gamma ``P(a, x)``."""
    if a <= 0 or x < 0:
        raise ValueError("need a > 0 and x >= 0")
    if x == 0:
        return 0.0
    if x < a + 1.0:
        return _series(a, x)
    return 1.0 - _continued_fraction(a, x)


def gammainc_upper(a: float, x: float) -> float:
    """Regularized upper incomplete gamma ``Q(a, x) = 1 - P(a, x)``."""
    if a <= 0 or x < 0:
        raise ValueError("need a > 0 and x >= 0")
    if x == 0:
        return 1.0
    if x < a + 1.0:
        return 1.0 - _series(a, x)
    return _continued_fraction(a, x)


def chi2_sf(x: float, df: int) -> float:
    if x <= 0:
        return 1.0
    return gammainc_upper(df / 2.0, x / 2.0)


def chi2_isf(alpha: float, df: int) -> float:
    """``x`` with ``chi2_sf(x, df) == alpha``, by bisection."""
    if not 0 < alpha < 1:
        raise ValueError("alpha must be in (0, 1)")
    if df < 1:
        raise ValueError("df must be >= 1")
    lo, hi = 0.0, max(1.0, 2.0 * df)
    while chi2_sf(hi, df) > alpha:
        lo, hi = hi, 2.0 * hi
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if chi2_sf(mid, df) > alpha:
            lo = mid
        else:
            hi = mid
        if hi - lo <= 1e-12 * hi:
            break
    return 0.5 * (lo + hi)


@dataclass(frozen=True)
class GofResult:
    statistic: float
    degrees_of_freedom: int
    threshold: float
    reject: bool
    alpha: float


def chi_square_test(ft: FrequencyTable, expected: dict, alpha: float = 0.01) -> GofResult:
    """Pearson test of observed tuple counts against exact probabilities.

    ``expected`` maps tuples to probabilities (Fractions) summing to 1;
    tuples with zero probability are ignored unless observed, in which
    case the statistic is infinite.
    """
    if alpha not in ALPHAS:
        raise ValueError(f"alpha must be one of {ALPHAS}, got {alpha!r}")
    probs = {tuple(t): Fraction(p) for t, p in expected.items() if p}
    if sum(probs.values()) != 1:
        raise ValueError("expected probabilities must sum to 1")
    k = ft.total
    low = [t for t, p in probs.items() if k * p < MIN_EXPECTED]
    if low:
        need = math.ceil(max(MIN_EXPECTED / probs[t] for t in low))
        raise ExpectedCountError(
            f"{len(low)} cells have expected count below {MIN_EXPECTED} with k={k}; "
            f"raise the number of draws to at least {need}")
    df = len(probs) - 1
    if df < 1:
        raise ValueError("need at least two cells with positive probability")
    if any(t not in probs for t, c in ft.counts.items() if c):
        stat = math.inf
    else:
        stat = 0.0
        for t, p in probs.items():
            e = k * p
            # exact numerator keeps the statistic independent of summation order
            stat += float((ft[t] - e) ** 2 / e)
    threshold = chi2_isf(alpha, df)
    return GofResult(stat, df, threshold, stat > threshold, alpha)
