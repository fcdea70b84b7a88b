"""Draw tuples through the generator constructions and tally them."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

from ..constructions import digits_decompose
from ._backend import get_backend
from .rng import SeededGenerator

__all__ = [
    "FrequencyTable",
    "CONSTRUCTIONS",
    "sample_indices",
    "sample_tuples",
    "sample_biased_tuples",
]

CONSTRUCTIONS = {"discrete": 0, "continuous": 1}
_SLOTS = 2

# counts are tallied in a dense array up to this many cells
_DENSE_LIMIT = 1 << 20
# N * 2**53 must fit in a 64-bit word for the continuous digit loop
_MAX_CONTINUOUS_N = (1 << 11) - 1


@dataclass(frozen=True)
class FrequencyTable:
    N: int
    n: int
    counts: dict = field(default_factory=dict)

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    def __getitem__(self, t) -> int:
        return self.counts.get(tuple(t), 0)

    @classmethod
    def from_tuples(cls, N: int, n: int, tuples) -> "FrequencyTable":
        counts = Counter()
        for t in tuples:
            t = tuple(t)
            if len(t) != n or not all(0 <= a < N for a in t):
                raise ValueError(f"tuple {t} is not an {n}-tuple over 0..{N - 1}")
            counts[t] += 1
        return cls(N, n, dict(counts))


def _validate(mode, N, n, k, slots=()):
    if not isinstance(N, int) or N < 1 or not isinstance(n, int) or n < 1:
        raise ValueError(f"need N >= 1 and n >= 1, got N={N!r}, n={n!r}")
    if not isinstance(k, int) or k < 1:
        raise ValueError(f"draw count k must be >= 1, got {k!r}")
    L = N ** n
    if L >= 1 << 64:
        raise OverflowError(f"N**n = {L} does not fit the generator's 64-bit word")
    if mode == CONSTRUCTIONS["continuous"] and N > _MAX_CONTINUOUS_N:
        raise OverflowError(f"continuous path supports N <= {_MAX_CONTINUOUS_N}")
    if mode == _SLOTS and (not slots or not all(0 <= d < N for d in slots)):
        raise ValueError(f"slot map must be non-empty with digits in 0..{N - 1}")
    return L


def _mode(construction):
    try:
        return CONSTRUCTIONS[construction]
    except KeyError:
        raise ValueError(f"construction must be one of {sorted(CONSTRUCTIONS)}, "
                         f"got {construction!r}") from None


def _run_indices(gen, mode, N, n, k, slots, backend):
    L = _validate(mode, N, n, k, slots)
    impl = get_backend(backend)
    state, out = impl.sample_indices(gen.state, mode, N, n, L, k, tuple(slots))
    gen.state = state
    return out


def _run_counts(gen, mode, N, n, k, slots, backend):
    L = _validate(mode, N, n, k, slots)
    impl = get_backend(backend)
    if L <= _DENSE_LIMIT:
        state, dense = impl.count_indices(gen.state, mode, N, n, L, k, tuple(slots))
        tallies = {e: c for e, c in enumerate(dense) if c}
    else:
        state, out = impl.sample_indices(gen.state, mode, N, n, L, k, tuple(slots))
        tallies = Counter(out)
    gen.state = state
    return FrequencyTable(N, n, {digits_decompose(e, N, n): c for e, c in sorted(tallies.items())})


def _generator(seed, gen):
    if gen is None:
        if seed is None:
            raise ValueError("pass either seed or gen")
        gen = SeededGenerator(seed)
    return gen


def sample_indices(construction: str, N: int, n: int, k: int, seed: int | None = None, *,
                   gen: SeededGenerator | None = None, backend: str | None = None) -> list[int]:
    """Stream of ``k`` tuple indices (``recompose(tuple, N)``) in draw order.

    Discrete path: one draw from ``0 .. N**n - 1``.  Continuous path: one
    53-bit uniform ``u`` in ``[0, 1)`` whose first ``n`` base-``N`` digits
    form the tuple.
    """
    return _run_indices(_generator(seed, gen), _mode(construction), N, n, k, (), backend)


def sample_tuples(construction: str, N: int, n: int, k: int, seed: int | None = None, *,
                  gen: SeededGenerator | None = None, backend: str | None = None) -> FrequencyTable:
    """Tally ``k`` tuples drawn through the named construction."""
    return _run_counts(_generator(seed, gen), _mode(construction), N, n, k, (), backend)


def sample_biased_tuples(N: int, n: int, k: int, seed: int | None = None, *, favored: int = 0,
                         factor: int = 2, gen: SeededGenerator | None = None,
                         backend: str | None = None) -> FrequencyTable:
    """Deliberately non-simple sampler for negative controls.

    Every digit is drawn independently with ``favored`` carrying
    ``factor`` times the weight of each other digit.
    """
    if not 0 <= favored < N or factor < 1:
        raise ValueError("need 0 <= favored < N and factor >= 1")
    slots = tuple(range(N)) + (favored,) * (factor - 1)
    return _run_counts(_generator(seed, gen), _SLOTS, N, n, k, slots, backend)
