"""Core data model: evaluation grids, curves, samples, unit directions.

Functional data are curves observed on a shared finite grid; everything
downstream works on the vectors of grid values, so a sample is stored as a
single (n, d) matrix.  Arrays handed to these types are copied and frozen
(writeable=False) so that fitted statistics cannot be invalidated by mutation.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError, StructuralError

_ZERO_NORM_TOL = 1e-12


def _frozen(a, dtype=np.float64, ndim=1) -> np.ndarray:
    arr = np.array(a, dtype=dtype)
    if arr.ndim != ndim:
        raise StructuralError(f"expected {ndim}-d array, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise DomainError("non-finite values are not allowed")
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True)
class Grid:
    """Strictly increasing evaluation points 0 <= t_1 < ... < t_d <= 1."""

    points: np.ndarray

    def __post_init__(self):
        pts = _frozen(self.points)
        if pts.size < 2:
            raise StructuralError("grid needs at least two points")
        if not np.all(np.diff(pts) > 0):
            raise DomainError("grid points must be strictly increasing")
        if pts[0] < 0.0 or pts[-1] > 1.0:
            raise DomainError("grid points must lie in [0, 1]")
        object.__setattr__(self, "points", pts)

    @property
    def size(self) -> int:
        return self.points.size

    @classmethod
    def regular(cls, d: int, a: float = 0.0, b: float = 1.0) -> "Grid":
        if d < 2:
            raise DomainError("grid needs at least two points")
        return cls(np.linspace(a, b, d))


@dataclass(frozen=True)
class Curve:
    """One function observed on a grid: values[i] = x(t_i)."""

    grid: Grid
    values: np.ndarray

    def __post_init__(self):
        vals = _frozen(self.values)
        if vals.size != self.grid.size:
            raise StructuralError(
                f"curve has {vals.size} values on a grid of {self.grid.size}")
        object.__setattr__(self, "values", vals)


@dataclass(frozen=True)
class FunctionalSample:
    """n curves on a common grid, stored as an (n, d) matrix (one row each)."""

    grid: Grid
    matrix: np.ndarray

    def __post_init__(self):
        mat = _frozen(self.matrix, ndim=2)
        if mat.shape[1] != self.grid.size:
            raise StructuralError(
                f"sample width {mat.shape[1]} != grid size {self.grid.size}")
        if mat.shape[0] < 1:
            raise StructuralError("sample needs at least one curve")
        object.__setattr__(self, "matrix", mat)

    @property
    def n(self) -> int:
        return self.matrix.shape[0]

    @property
    def dim(self) -> int:
        return self.matrix.shape[1]

    def curve(self, i: int) -> Curve:
        return Curve(self.grid, self.matrix[i])

    @classmethod
    def from_curves(cls, curves) -> "FunctionalSample":
        curves = list(curves)
        if not curves:
            raise StructuralError("sample needs at least one curve")
        g = curves[0].grid
        for c in curves[1:]:
            if c.grid.size != g.size or not np.array_equal(c.grid.points, g.points):
                raise StructuralError("all curves must share the same grid")
        return cls(g, np.stack([c.values for c in curves]))


@dataclass(frozen=True)
class Direction:
    """A unit vector in the grid space; inputs are renormalized on entry."""

    grid: Grid
    vector: np.ndarray

    def __post_init__(self):
        vec = np.array(self.vector, dtype=np.float64)
        if vec.ndim != 1:
            raise StructuralError(f"direction must be 1-d, got shape {vec.shape}")
        if vec.size != self.grid.size:
            raise StructuralError(
                f"direction length {vec.size} != grid size {self.grid.size}")
        if not np.all(np.isfinite(vec)):
            raise DomainError("non-finite values are not allowed")
        nrm = float(np.linalg.norm(vec))
        if nrm < _ZERO_NORM_TOL:
            raise DomainError("direction has (near) zero norm")
        vec = vec / nrm
        vec.flags.writeable = False
        object.__setattr__(self, "vector", vec)


def inner_product(x: Curve | np.ndarray, v: Direction | np.ndarray) -> float:
    """Euclidean inner product of grid values, <x, v> = sum_i x(t_i) v_i."""
    xv = x.values if isinstance(x, Curve) else np.asarray(x, dtype=np.float64)
    vv = v.vector if isinstance(v, Direction) else np.asarray(v, dtype=np.float64)
    if xv.shape != vv.shape:
        raise StructuralError(f"shape mismatch {xv.shape} vs {vv.shape}")
    return float(xv @ vv)


def norm(x: Curve | np.ndarray) -> float:
    xv = x.values if isinstance(x, Curve) else np.asarray(x, dtype=np.float64)
    return float(np.linalg.norm(xv))
