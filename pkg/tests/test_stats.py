import math
from fractions import Fraction as F

import pytest

from popsample.constructions import continuous_digits, digits_decompose, discrete_construction
from popsample.sampler import tuple_distribution
from popsample.stats import (
    BACKENDS,
    ExpectedCountError,
    FrequencyTable,
    SeededGenerator,
    chi2_isf,
    chi2_sf,
    chi_square_test,
    draw_continuous,
    draw_discrete,
    gammainc_lower,
    gammainc_upper,
    sample_biased_tuples,
    sample_indices,
    sample_tuples,
    splitmix64,
)
from popsample.stats import _pure

backends = pytest.mark.parametrize("backend", sorted(BACKENDS))


def test_compiled_backend_built():
    assert "compiled" in BACKENDS


# Published reference outputs for the two generator building blocks.

def test_splitmix64_reference_vector():
    x, out = 1234567, []
    for _ in range(5):
        x, o = splitmix64(x)
        out.append(o)
    assert out == [6457827717110365317, 3203168211198807973, 9817491932198370423,
                   4593380528125082431, 16408922859458223821]


def test_xoshiro_reference_vector():
    s = [1, 2, 3, 4]
    assert [_pure.next_u64(s) for _ in range(10)] == [
        11520, 0, 1509978240, 1215971899390074240, 1216172134540287360,
        607988272756665600, 16172922978634559625, 8476171486693032832,
        10595114339597558777, 2904607092377533576]


# Golden values frozen from the first build.

def test_golden_words():
    g = SeededGenerator(42)
    assert [g.next_u64() for _ in range(3)] == [
        1546998764402558742, 6990951692964543102, 12544586762248559009]
    assert SeededGenerator(0).state[0] == 16294208416658607535


def test_golden_draw_discrete():
    g = SeededGenerator(42)
    assert [draw_discrete(g, 6) for _ in range(3)] == [0, 0, 5]


def test_golden_draw_continuous():
    assert draw_continuous(SeededGenerator(42)) == 0.08386297105988216


@backends
def test_golden_index_streams(backend):
    assert sample_indices("discrete", 4, 2, 10, 7, backend=backend) == [10, 2, 6, 0, 8, 9, 4, 12, 0, 3]
    assert sample_indices("continuous", 4, 2, 10, 7, backend=backend) == [11, 4, 13, 15, 15, 13, 0, 1, 6, 2]


def test_draw_discrete_single_outcome():
    g = SeededGenerator(1)
    assert {draw_discrete(g, 1) for _ in range(50)} == {0}
    with pytest.raises(ValueError):
        draw_discrete(g, 0)
    with pytest.raises(OverflowError):
        draw_discrete(g, (1 << 64) + 1)


def test_rejection_discards_low_words(monkeypatch):
    words = iter([0, 5, (1 << 64) - 1])
    monkeypatch.setattr(_pure, "next_u64", lambda s: next(words))
    # 2**64 mod 3 == 1, so word 0 is rejected and 5 % 3 is returned
    assert _pure.bounded([1, 2, 3, 4], 3) == 2


@pytest.mark.parametrize("L", [3, 6, 7, 1000, 3 ** 40, (1 << 63) + 1])
def test_accepted_range_is_multiple_of_L(L):
    threshold = (1 << 64) % L
    assert ((1 << 64) - threshold) % L == 0


def test_draw_discrete_uniform_counts():
    g = SeededGenerator(2718)
    counts = [0] * 6
    for _ in range(60000):
        counts[draw_discrete(g, 6)] += 1
    # chi-square, df=5, alpha=0.001
    stat = sum((c - 10000) ** 2 / 10000 for c in counts)
    assert stat < chi2_isf(0.001, 5)


def test_draw_continuous_range_and_mean():
    g = SeededGenerator(99)
    total = 0.0
    for _ in range(10 ** 6):
        u = draw_continuous(g)
        assert 0.0 <= u < 1.0
        total += u
    assert abs(total / 10 ** 6 - 0.5) < 0.002


@backends
@pytest.mark.parametrize("construction", ["discrete", "continuous"])
def test_sample_tuples_envelope(construction, backend):
    ft = sample_tuples(construction, 4, 2, 100000, 2024, backend=backend)
    assert ft.total == 100000
    assert len(ft.counts) == 16
    assert all(5700 <= c <= 6800 for c in ft.counts.values())


def test_sample_tuples_small():
    assert sample_tuples("discrete", 3, 2, 9, 5).total == 9


def test_backends_agree():
    for mode, slots in ((0, ()), (1, ()), (2, (0, 1, 1, 0))):
        for N, n in ((3, 2), (5, 3), (2, 10)):
            state = SeededGenerator(N * 100 + n).state
            L = N ** n
            got = {name: impl.sample_indices(state, mode, N, n, L, 500, slots)
                   for name, impl in BACKENDS.items()}
            assert len({repr(v) for v in got.values()}) == 1
            got = {name: impl.count_indices(state, mode, N, n, L, 500, slots)
                   for name, impl in BACKENDS.items()}
            assert len({repr(v) for v in got.values()}) == 1


def test_generator_state_advances_consistently():
    g1, g2 = SeededGenerator(11), SeededGenerator(11)
    sample_tuples("discrete", 3, 2, 1000, gen=g1, backend="pure")
    sample_tuples("discrete", 3, 2, 1000, gen=g2, backend=max(BACKENDS))
    assert g1.state == g2.state


def test_continuous_path_matches_exact_digits():
    state = SeededGenerator(5).state
    N, n = 7, 3
    idx = sample_indices("continuous", N, n, 200, 5)
    s = list(state)
    for e in idx:
        u = F(_pure.next_u64(s) >> 11, 1 << 53)
        assert digits_decompose(e, N, n) == continuous_digits(u, N, n)


def test_discrete_path_matches_draw_discrete():
    g = SeededGenerator(8)
    expected = [draw_discrete(g, 27) for _ in range(100)]
    assert sample_indices("discrete", 3, 3, 100, 8) == expected


def test_reproducible():
    a = sample_tuples("continuous", 4, 3, 5000, 77)
    b = sample_tuples("continuous", 4, 3, 5000, 77)
    assert a == b
    assert sample_tuples("continuous", 4, 3, 5000, 78) != a


def test_overflow_errors():
    with pytest.raises(OverflowError):
        sample_indices("discrete", 2, 64, 1, 0)
    with pytest.raises(OverflowError):
        sample_indices("continuous", 4096, 1, 1, 0)
    with pytest.raises(ValueError):
        sample_indices("bogus", 2, 2, 1, 0)
    with pytest.raises(ValueError):
        sample_tuples("discrete", 2, 2, 0, 0)


def test_large_cell_count_uses_sparse_tally():
    ft = sample_tuples("discrete", 10, 7, 1000, 3)
    assert ft.total == 1000 and all(len(t) == 7 for t in ft.counts)


# --- incomplete gamma and chi-square ---

def _q_closed_form(df, x):
    """Chi-square survival function from the textbook finite sums.

    Even df: Poisson tail.  Odd df: erfc term plus a finite half-integer sum.
    """
    h = x / 2.0
    if df % 2 == 0:
        return math.exp(-h) * sum(h ** j / math.factorial(j) for j in range(df // 2))
    total = math.erfc(math.sqrt(h))
    for j in range(1, (df - 1) // 2 + 1):
        total += math.exp(-h) * h ** (j - 0.5) / math.gamma(j + 0.5)
    return total


@pytest.mark.parametrize("df", [1, 2, 3, 5, 8, 15, 24, 63])
@pytest.mark.parametrize("x", [0.1, 1.0, 4.0, 15.0, 37.7, 80.0])
def test_chi2_sf_closed_form(df, x):
    assert chi2_sf(x, df) == pytest.approx(_q_closed_form(df, x), rel=1e-10, abs=1e-300)


def test_gamma_complement():
    for a in (0.5, 1.0, 7.5, 30.0):
        for x in (0.01, 1.0, a, a + 2.0, 100.0):
            assert gammainc_lower(a, x) + gammainc_upper(a, x) == pytest.approx(1.0, abs=1e-13)


def test_chi2_isf_against_scipy():
    scipy_stats = pytest.importorskip("scipy.stats")
    for df in (1, 2, 5, 15, 63, 255):
        for alpha in (0.05, 0.01, 0.001):
            assert chi2_isf(alpha, df) == pytest.approx(scipy_stats.chi2.isf(alpha, df), rel=1e-9)


def test_threshold_df15():
    assert abs(chi2_isf(0.001, 15) - 37.70) <= 0.01


def _uniform(N, n):
    return tuple_distribution(discrete_construction(N, n))


def test_perfect_fit():
    exp = _uniform(4, 2)
    ft = FrequencyTable(4, 2, {t: 100 for t in exp})
    r = chi_square_test(ft, exp, 0.05)
    assert r.statistic == 0 and not r.reject and r.degrees_of_freedom == 15


def test_biased_sampler_rejected():
    r = chi_square_test(sample_biased_tuples(4, 2, 100000, 1), _uniform(4, 2), 0.001)
    assert r.reject and r.statistic > 10 * r.threshold


def test_biased_digit_weights():
    ft = sample_biased_tuples(4, 1, 200000, 3)
    assert ft[(0,)] / ft.total == pytest.approx(2 / 5, abs=0.005)


def test_expected_count_rule():
    exp = _uniform(4, 2)
    ft = FrequencyTable(4, 2, {(0, 0): 50})
    with pytest.raises(ExpectedCountError, match="at least 80"):
        chi_square_test(ft, exp, 0.01)


def test_alpha_restricted():
    exp = _uniform(2, 1)
    ft = FrequencyTable(2, 1, {(0,): 10, (1,): 10})
    with pytest.raises(ValueError):
        chi_square_test(ft, exp, 0.1)


def test_observation_outside_support_rejects():
    exp = {(0,): F(1, 2), (1,): F(1, 2), (2,): F(0)}
    ft = FrequencyTable(3, 1, {(0,): 10, (1,): 10, (2,): 1})
    r = chi_square_test(ft, exp, 0.05)
    assert r.reject and math.isinf(r.statistic) and r.degrees_of_freedom == 1
