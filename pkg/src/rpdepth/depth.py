"""Projection outlyingness and the regularized depth built on a fitted pool.

Depth of a query x is (1 + worst-case outlyingness)^{-1}, the worst case taken
over the kept directions of a :class:`RegularizedPool`.  Batch evaluation
streams over the directions in chunks so very large pools (the degeneracy
demo uses 2e5) never materialize an n-by-M matrix at once.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.stats import rankdata

from . import _kernels
from .core import Curve, Direction, FunctionalSample
from .directions import DirectionPool, RegularizedPool
from .errors import DomainError, EmptyDirectionSetError, StructuralError
from .robust import sample_median

_CHUNK = 20000  # directions per streamed block


@dataclass(frozen=True)
class DepthValue:
    """A depth in (0, 1] plus the index of the direction that attained it."""

    value: float
    worst_direction: int


def outlyingness(x, v, med: float, mad: float) -> float:
    """|<x, v> - med| / mad for a single direction with positive scale."""
    if mad <= 0:
        raise DomainError(f"projected MAD must be positive, got {mad}")
    xv = x.values if isinstance(x, Curve) else np.asarray(x, dtype=np.float64)
    vv = v.vector if isinstance(v, Direction) else np.asarray(v, dtype=np.float64)
    if xv.shape != vv.shape:
        raise StructuralError(f"shape mismatch {xv.shape} vs {vv.shape}")
    return abs(float(xv @ vv) - med) / mad


def _as_matrix(queries, dim: int) -> np.ndarray:
    if isinstance(queries, FunctionalSample):
        X = queries.matrix
    elif isinstance(queries, Curve):
        X = queries.values[None, :]
    else:
        X = np.atleast_2d(np.asarray(queries, dtype=np.float64))
    if X.shape[1] != dim:
        raise StructuralError(
            f"query dimension {X.shape[1]} != pool dimension {dim}")
    return X


def _stream_max_out(X, D, med, mad, zero_mad: bool = False):
    """Row-wise max outlyingness over directions, streamed in chunks.

    Strict ``>`` updates keep the first attaining direction index regardless
    of how the chunking slices the pool.
    """
    kernel = _kernels.max_out_zero_mad if zero_mad else _kernels.max_out
    n = X.shape[0]
    best = np.full(n, -1.0)
    arg = np.zeros(n, dtype=np.int64)
    for start in range(0, D.shape[0], _CHUNK):
        stop = min(start + _CHUNK, D.shape[0])
        Q = np.ascontiguousarray(X @ D[start:stop].T)
        b, a = kernel(Q, np.ascontiguousarray(med[start:stop]),
                      np.ascontiguousarray(mad[start:stop]))
        upd = b > best
        best[upd] = b[upd]
        arg[upd] = a[upd] + start
    return best, arg


def rpd_batch(queries, pool: RegularizedPool) -> list[DepthValue]:
    """Regularized depth of each query against the pool's kept directions."""
    X = _as_matrix(queries, pool.pool.grid.size)
    out, arg = _stream_max_out(X, pool.directions, pool.proj_median,
                               pool.proj_mad)
    return [DepthValue(1.0 / (1.0 + o), int(a)) for o, a in zip(out, arg)]


def rpd(x, pool: RegularizedPool) -> DepthValue:
    """Regularized depth of a single curve."""
    return rpd_batch(x, pool)[0]


def unregularized_depth_batch(queries, pool: DirectionPool) -> np.ndarray:
    """Depth with no MAD filter at all (the degenerate construction).

    Directions with zero projected MAD contribute outlyingness +inf when the
    query is off their median hyperplane (depth 0) and 0 otherwise.
    """
    X = _as_matrix(queries, pool.grid.size)
    out, _ = _stream_max_out(X, pool.directions, pool.proj_median,
                             pool.proj_mad, zero_mad=True)
    with np.errstate(divide="ignore"):
        return np.where(np.isinf(out), 0.0, 1.0 / (1.0 + out))


def max_outlyingness(x, pool: DirectionPool, t: float) -> float:
    """Worst outlyingness over pool directions whose projected MAD is >= t.

    Non-increasing in t (larger t means a smaller direction set).
    """
    if t <= 0:
        raise DomainError(f"threshold must be positive, got {t}")
    keep = np.flatnonzero(pool.proj_mad >= t)
    if keep.size == 0:
        raise EmptyDirectionSetError(t, float(np.max(pool.proj_mad)))
    X = _as_matrix(x, pool.grid.size)
    out, _ = _stream_max_out(X, pool.directions[keep], pool.proj_median[keep],
                             pool.proj_mad[keep])
    return float(out[0])


def depth_ranks(depths) -> np.ndarray:
    """Normalized midranks in (0, 1]: least deep gets ~1/n, deepest 1."""
    vals = np.asarray([d.value if isinstance(d, DepthValue) else d
                       for d in depths], dtype=np.float64)
    if vals.size == 0:
        raise DomainError("need at least one depth value")
    return rankdata(vals, method="average") / vals.size


def deepest_index(sample: FunctionalSample, pool: RegularizedPool) -> int:
    """Index of the deepest sample curve; ties broken by smallest index."""
    vals = np.array([d.value for d in rpd_batch(sample, pool)])
    return int(np.argmax(vals))


def rpd_median(sample: FunctionalSample, pool: RegularizedPool) -> Curve:
    """The deepest observed curve (the sample depth median)."""
    return sample.curve(deepest_index(sample, pool))


def depth_floor(x, sample: FunctionalSample, beta: float) -> float:
    """Guaranteed positive lower bound on the regularized depth of x.

    Every kept direction has projection MAD >= beta and a projection median
    bounded by the median sample norm, so the depth can never fall below
    (1 + (||x|| + med ||X_i||) / beta)^{-1}.
    """
    if beta <= 0:
        raise DomainError(f"beta must be positive, got {beta}")
    xv = x.values if isinstance(x, Curve) else np.asarray(x, dtype=np.float64)
    med_norm = sample_median(np.linalg.norm(sample.matrix, axis=1))
    return 1.0 / (1.0 + (float(np.linalg.norm(xv)) + med_norm) / beta)
