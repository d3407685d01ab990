"""Direction pools: random unit directions plus their projection statistics.

A pool is fitted once against a reference sample (the "source") and stores,
for every direction v, the sample median and MAD of the projections <X_i, v>.
Regularization keeps only directions whose projected MAD clears a threshold
beta; beta itself is tuned as a low empirical quantile of the pool's MADs.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .core import FunctionalSample, Grid
from .errors import (DegenerateSampleError, DomainError,
                     EmptyDirectionSetError, StructuralError)
from .robust import empirical_quantile


def sample_unit_direction(rng: np.random.Generator, dim: int) -> np.ndarray:
    """One draw from the uniform distribution on the unit sphere in R^dim."""
    while True:
        v = rng.standard_normal(dim)
        nrm = np.linalg.norm(v)
        if nrm > 1e-12:
            return v / nrm


def sample_sphere(rng: np.random.Generator, count: int, dim: int) -> np.ndarray:
    """(count, dim) matrix of independent uniform sphere directions."""
    G = rng.standard_normal((count, dim))
    nrm = np.linalg.norm(G, axis=1)
    bad = nrm <= 1e-12
    while np.any(bad):  # probability ~0, but keep the draw well-defined
        G[bad] = rng.standard_normal((int(bad.sum()), dim))
        nrm = np.linalg.norm(G, axis=1)
        bad = nrm <= 1e-12
    return G / nrm[:, None]


def sample_id(sample: FunctionalSample) -> str:
    """Stable content hash of a sample (grid + values), for provenance checks."""
    h = hashlib.sha256()
    h.update(np.ascontiguousarray(sample.grid.points).tobytes())
    h.update(np.ascontiguousarray(sample.matrix).tobytes())
    return h.hexdigest()


@dataclass(frozen=True)
class DirectionPool:
    """Fitted pool: unit directions with per-direction projection median/MAD."""

    grid: Grid
    directions: np.ndarray      # (M, d), rows unit-norm
    proj_median: np.ndarray     # (M,)
    proj_mad: np.ndarray        # (M,)
    source_sample_id: str
    seed: int | None = None

    def __post_init__(self):
        D = np.asarray(self.directions, dtype=np.float64)
        if D.ndim != 2 or D.shape[1] != self.grid.size:
            raise StructuralError("direction matrix does not match the grid")
        if D.shape[0] == 0:
            raise StructuralError("pool needs at least one direction")
        med = np.asarray(self.proj_median, dtype=np.float64)
        mad = np.asarray(self.proj_mad, dtype=np.float64)
        if med.shape != (D.shape[0],) or mad.shape != (D.shape[0],):
            raise StructuralError("statistics do not match the direction count")
        if np.any(mad < 0):
            raise DomainError("projected MAD cannot be negative")
        for a in (D, med, mad):
            a.flags.writeable = False
        object.__setattr__(self, "directions", D)
        object.__setattr__(self, "proj_median", med)
        object.__setattr__(self, "proj_mad", mad)

    @property
    def size(self) -> int:
        return self.directions.shape[0]

    def to_json(self) -> str:
        payload = {
            "grid": _fmt_array(self.grid.points),
            "directions": [_fmt_array(row) for row in self.directions],
            "proj_median": _fmt_array(self.proj_median),
            "proj_mad": _fmt_array(self.proj_mad),
            "source_sample_id": self.source_sample_id,
            "seed": self.seed,
        }
        return json.dumps(payload)

    @classmethod
    def from_json(cls, text: str) -> "DirectionPool":
        try:
            payload = json.loads(text)
            grid = Grid(np.array(payload["grid"], dtype=np.float64))
            return cls(
                grid=grid,
                directions=np.array(payload["directions"], dtype=np.float64),
                proj_median=np.array(payload["proj_median"], dtype=np.float64),
                proj_mad=np.array(payload["proj_mad"], dtype=np.float64),
                source_sample_id=payload["source_sample_id"],
                seed=payload["seed"],
            )
        except (KeyError, TypeError, ValueError, json.JSONDecodeError) as e:
            raise StructuralError(f"malformed pool file: {e}") from e


@dataclass(frozen=True)
class RegularizedPool:
    """The beta-kept subset of a pool (projected MAD >= beta)."""

    pool: DirectionPool
    beta: float
    kept: np.ndarray            # indices into pool.directions

    def __post_init__(self):
        idx = np.asarray(self.kept, dtype=np.int64)
        if idx.size == 0:
            raise EmptyDirectionSetError(self.beta, float(np.max(self.pool.proj_mad)))
        idx.flags.writeable = False
        object.__setattr__(self, "kept", idx)

    @property
    def size(self) -> int:
        return self.kept.size

    @property
    def directions(self) -> np.ndarray:
        return self.pool.directions[self.kept]

    @property
    def proj_median(self) -> np.ndarray:
        return self.pool.proj_median[self.kept]

    @property
    def proj_mad(self) -> np.ndarray:
        return self.pool.proj_mad[self.kept]


def _fmt_array(a) -> list:
    # 17 significant digits round-trips float64 exactly through JSON
    return [float("%.17g" % x) for x in np.asarray(a, dtype=np.float64)]


def pool_from_directions(sample: FunctionalSample, D: np.ndarray,
                         seed: int | None = None) -> DirectionPool:
    """Fit projection statistics of `sample` for an explicit direction matrix."""
    D = np.asarray(D, dtype=np.float64)
    if D.ndim != 2 or D.shape[1] != sample.dim:
        raise StructuralError("direction matrix does not match the sample grid")
    nrm = np.linalg.norm(D, axis=1)
    if np.any(nrm <= 1e-12):
        raise DomainError("direction with (near) zero norm")
    D = D / nrm[:, None]
    P = sample.matrix @ D.T                       # (n, M)
    med, mad = _kernels.median_mad_columns(np.ascontiguousarray(P))
    return DirectionPool(sample.grid, D, med, mad, sample_id(sample), seed)


def build_pool(sample: FunctionalSample, num_directions: int = 10000,
               seed: int | None = None,
               rng: np.random.Generator | None = None) -> DirectionPool:
    """Draw uniform sphere directions and fit their projection statistics."""
    if num_directions < 1:
        raise DomainError("need at least one direction")
    if rng is None:
        rng = np.random.default_rng(seed)
    D = sample_sphere(rng, num_directions, sample.dim)
    return pool_from_directions(sample, D, seed)


def tune_beta(pool: DirectionPool, u: float) -> float:
    """beta = lower empirical u-quantile of the pool's projected MADs.

    Guarantees that at least ceil((1-u) * M) directions survive the filter.
    """
    if not np.any(pool.proj_mad > 0):
        raise DegenerateSampleError(
            "every sampled direction has zero projected MAD; the sample is "
            "constant along all of them")
    return empirical_quantile(pool.proj_mad, u)


def filter_pool(pool: DirectionPool, beta: float) -> RegularizedPool:
    """Keep directions with projected MAD >= beta; error if none survive."""
    if beta <= 0:
        raise DomainError(f"beta must be positive, got {beta}")
    kept = np.flatnonzero(pool.proj_mad >= beta)
    return RegularizedPool(pool, float(beta), kept)
