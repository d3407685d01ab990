"""Baseline functional depths: pointwise halfspace depth, its grid mean (FD)
and grid minimum (ID)."""

from __future__ import annotations

import numpy as np

from .core import Curve, FunctionalSample
from .errors import DomainError, StructuralError


def hd_univariate(u: float, s) -> float:
    """One-dimensional halfspace depth: min(#{z <= u}, #{z >= u}) / n."""
    z = np.asarray(s, dtype=np.float64)
    if z.ndim != 1 or z.size == 0:
        raise DomainError("expected a non-empty 1-d sample")
    return min(np.count_nonzero(z <= u), np.count_nonzero(z >= u)) / z.size


def _profiles(queries: np.ndarray, sample: FunctionalSample) -> np.ndarray:
    """(nq, d) matrix of pointwise halfspace depths, one row per query.

    Per grid point, tail counts come from one sorted pass + searchsorted
    instead of nq * n comparisons.
    """
    X = sample.matrix
    n, d = X.shape
    if queries.shape[1] != d:
        raise StructuralError(
            f"query dimension {queries.shape[1]} != sample grid size {d}")
    prof = np.empty((queries.shape[0], d))
    for j in range(d):
        col = np.sort(X[:, j])
        lo = np.searchsorted(col, queries[:, j], side="right")   # z <= u
        hi = n - np.searchsorted(col, queries[:, j], side="left")  # z >= u
        prof[:, j] = np.minimum(lo, hi) / n
    return prof


def pointwise_profile(x, sample: FunctionalSample) -> np.ndarray:
    """Halfspace depth of x(t_j) within {X_i(t_j)} at every grid point."""
    xv = x.values if isinstance(x, Curve) else np.asarray(x, dtype=np.float64)
    return _profiles(xv[None, :], sample)[0]


def fd(x, sample: FunctionalSample) -> float:
    """Integrated halfspace depth: grid mean of the pointwise profile."""
    return float(np.mean(pointwise_profile(x, sample)))


def id_depth(x, sample: FunctionalSample) -> float:
    """Infimal halfspace depth: grid minimum of the pointwise profile."""
    return float(np.min(pointwise_profile(x, sample)))


def fd_batch(queries, sample: FunctionalSample) -> np.ndarray:
    Q = queries.matrix if isinstance(queries, FunctionalSample) else \
        np.atleast_2d(np.asarray(queries, dtype=np.float64))
    return _profiles(Q, sample).mean(axis=1)


def id_batch(queries, sample: FunctionalSample) -> np.ndarray:
    Q = queries.matrix if isinstance(queries, FunctionalSample) else \
        np.atleast_2d(np.asarray(queries, dtype=np.float64))
    return _profiles(Q, sample).min(axis=1)
