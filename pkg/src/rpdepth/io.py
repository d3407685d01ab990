"""Curve CSV files: rows are curves, columns are grid values.

An optional first row may carry the grid abscissae; without it the curves
are placed on the regular grid over [0, 1].
"""

from __future__ import annotations

import csv

import numpy as np

from .core import FunctionalSample, Grid
from .errors import CurveFileError, RpdError


def read_sample(path: str, grid_header: bool = False) -> FunctionalSample:
    try:
        with open(path, newline="") as fh:
            rows = [row for row in csv.reader(fh) if row]
    except OSError as e:
        raise CurveFileError(f"{path}: {e}") from e
    if not rows:
        raise CurveFileError(f"{path}: file is empty")
    width = len(rows[0])
    if any(len(r) != width for r in rows):
        raise CurveFileError(f"{path}: rows have unequal length")
    try:
        data = np.array(rows, dtype=np.float64)
    except ValueError as e:
        raise CurveFileError(f"{path}: non-numeric cell ({e})") from e
    if not np.all(np.isfinite(data)):
        raise CurveFileError(f"{path}: non-finite value")
    try:
        if grid_header:
            if data.shape[0] < 2:
                raise CurveFileError(f"{path}: header row but no curves")
            grid = Grid(data[0])
            return FunctionalSample(grid, data[1:])
        return FunctionalSample(Grid.regular(width), data)
    except CurveFileError:
        raise
    except RpdError as e:
        raise CurveFileError(f"{path}: {e}") from e


def write_sample(path: str, sample: FunctionalSample,
                 grid_header: bool = False) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        if grid_header:
            w.writerow(["%.17g" % t for t in sample.grid.points])
        for row in sample.matrix:
            w.writerow(["%.17g" % x for x in row])
