import numpy as np
import pytest

from rpdepth import (FunctionalSample, Grid, StructuralError, fd, fd_batch,
                     hd_univariate, id_batch, id_depth, pointwise_profile)


def test_hd_examples():
    assert hd_univariate(3, [1, 2, 3, 4, 5]) == 0.6
    assert hd_univariate(0, [1, 2, 3]) == 0
    assert hd_univariate(7, [7, 7, 7]) == 1


def test_hd_oracle_bulk():
    rng = np.random.default_rng(99)
    for _ in range(10000):
        n = int(rng.integers(1, 20))
        z = rng.integers(-5, 6, n).astype(float)  # heavy ties
        u = float(rng.integers(-6, 7))
        lo = sum(1 for x in z if x <= u)
        hi = sum(1 for x in z if x >= u)
        assert hd_univariate(u, z) == min(lo, hi) / n


def two_curve_sample():
    g = Grid.regular(4)
    return FunctionalSample(g, np.array([[0.0] * 4, [1.0] * 4]))


def test_fd_examples():
    s = two_curve_sample()
    assert fd(np.zeros(4), s) == 0.5        # equals the lower of two curves
    assert fd(np.full(4, -3.0), s) == 0     # strictly below everything
    assert id_depth(np.zeros(4), s) == 0.5


def test_id_examples():
    g = Grid.regular(3)
    rng = np.random.default_rng(1)
    s = FunctionalSample(g, rng.standard_normal((9, 3)))
    prof = pointwise_profile(s.matrix[0], s)
    assert id_depth(s.matrix[0], s) == prof.min()
    assert fd(s.matrix[0], s) == pytest.approx(prof.mean())
    x = s.matrix[0].copy()
    x[1] = 100.0  # outside the sample range at one point
    assert id_depth(x, s) == 0


def test_id_le_fd_random():
    rng = np.random.default_rng(5)
    g = Grid.regular(11)
    s = FunctionalSample(g, rng.standard_normal((25, 11)))
    Q = rng.standard_normal((200, 11)) * 2
    assert np.all(id_batch(Q, s) <= fd_batch(Q, s) + 1e-15)
    assert np.all(fd_batch(Q, s) <= 1) and np.all(id_batch(Q, s) >= 0)


def test_grid_point_permutation_invariance():
    rng = np.random.default_rng(8)
    g = Grid.regular(13)
    s = FunctionalSample(g, rng.standard_normal((30, 13)))
    x = rng.standard_normal(13)
    perm = rng.permutation(13)
    sp = FunctionalSample(g, s.matrix[:, perm])
    assert fd(x[perm], sp) == fd(x, s)
    assert id_depth(x[perm], sp) == id_depth(x, s)


def test_batch_matches_scalar():
    rng = np.random.default_rng(12)
    g = Grid.regular(7)
    s = FunctionalSample(g, rng.standard_normal((15, 7)))
    Q = rng.standard_normal((6, 7))
    fb, ib = fd_batch(Q, s), id_batch(Q, s)
    for i, q in enumerate(Q):
        assert fb[i] == fd(q, s)
        assert ib[i] == id_depth(q, s)


def test_dimension_mismatch():
    s = two_curve_sample()
    with pytest.raises(StructuralError):
        fd(np.zeros(5), s)
