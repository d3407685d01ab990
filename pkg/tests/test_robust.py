import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rpdepth import DomainError, empirical_quantile, sample_mad, sample_median


# brute-force references: full sort, explicit order-statistic rules
def ref_median(z):
    s = sorted(z)
    n = len(s)
    return s[(n - 1) // 2] if n % 2 else 0.5 * (s[n // 2 - 1] + s[n // 2])


def ref_mad(z):
    m = ref_median(z)
    return ref_median([abs(x - m) for x in z])


def test_median_examples():
    assert sample_median([3, 1, 2]) == 2
    assert sample_median([4, 1, 3, 2]) == 2.5
    assert sample_median([7]) == 7


def test_mad_examples():
    assert sample_mad([1, 2, 3]) == 1
    assert sample_mad([5, 5, 5, 5]) == 0
    assert sample_mad([0, 0, 10, 10]) == 5


def test_quantile_examples():
    s = [10, 20, 30, 40]
    assert empirical_quantile(s, 0) == 10
    assert empirical_quantile(s, 0.5) == 20
    assert empirical_quantile(s, 0.75) == 30


def test_quantile_domain():
    for bad in (-0.1, 1.0, 1.5):
        with pytest.raises(DomainError):
            empirical_quantile([1.0, 2.0], bad)


def test_empty_rejected():
    for fn in (sample_median, sample_mad):
        with pytest.raises(DomainError):
            fn([])


def test_oracle_equivalence_bulk():
    rng = np.random.default_rng(314)
    for _ in range(10000):
        n = int(rng.integers(1, 26))
        z = np.round(rng.standard_normal(n) * 10, 2)  # ties likely
        assert sample_median(z) == ref_median(z.tolist())
        assert sample_mad(z) == ref_mad(z.tolist())
        u = float(rng.uniform(0, 0.999))
        k = max(1, int(np.ceil(u * n)))
        assert empirical_quantile(z, u) == sorted(z.tolist())[k - 1]


@given(st.lists(st.floats(-1e6, 1e6), min_size=1, max_size=40),
       st.floats(-100, 100))
@settings(max_examples=300, deadline=None)
def test_translation_equivariance(z, c):
    z = np.asarray(z)
    assert sample_median(z + c) == pytest.approx(sample_median(z) + c, abs=1e-9)
    assert sample_mad(z + c) == pytest.approx(sample_mad(z), abs=1e-9)


@given(st.lists(st.floats(-1e3, 1e3), min_size=1, max_size=40),
       st.floats(-50, 50))
@settings(max_examples=300, deadline=None)
def test_scale_equivariance(z, c):
    z = np.asarray(z)
    if c > 0:
        assert sample_median(c * z) == pytest.approx(
            c * sample_median(z), rel=1e-12, abs=1e-12)
    assert sample_mad(c * z) == pytest.approx(
        abs(c) * sample_mad(z), rel=1e-12, abs=1e-12)


@given(st.lists(st.floats(-1e6, 1e6), min_size=1, max_size=40))
@settings(max_examples=500, deadline=None)
def test_mad_bounded_by_twice_median_abs(z):
    z = np.asarray(z)
    assert sample_mad(z) <= 2 * sample_median(np.abs(z)) + 1e-9


@given(st.lists(st.floats(-1e6, 1e6), min_size=1, max_size=30),
       st.randoms())
@settings(max_examples=200, deadline=None)
def test_permutation_invariance(z, rnd):
    perm = z[:]
    rnd.shuffle(perm)
    assert sample_median(perm) == sample_median(z)
    assert sample_mad(perm) == sample_mad(z)
