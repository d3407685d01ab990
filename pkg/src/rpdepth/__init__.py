"""Regularized projection depth for discretized functional data."""

from .core import Curve, Direction, FunctionalSample, Grid, inner_product, norm
from .depth import (DepthValue, deepest_index, depth_floor, depth_ranks,
                    max_outlyingness, outlyingness, rpd, rpd_batch,
                    rpd_median, unregularized_depth_batch)
from .comparators import fd, fd_batch, hd_univariate, id_batch, id_depth, \
    pointwise_profile
from .directions import (DirectionPool, RegularizedPool, build_pool,
                         filter_pool, pool_from_directions,
                         sample_unit_direction, tune_beta)
from .errors import (CurveFileError, DegenerateSampleError, DomainError,
                     EmptyDirectionSetError, RpdError, StructuralError)
from .robust import (STANDARD_NORMAL_QUARTILE, empirical_quantile,
                     sample_mad, sample_median)
from .simulation import (BasisMatrix, CoefficientModel, ExperimentConfig,
                         ExperimentFailureError, ExperimentReport,
                         breakdown_displacement, build_basis, clean_model,
                         degeneracy_table, elliptical_mad_fraction,
                         generate_curves, outlier_model, run_experiment)

__version__ = "0.1.0"

__all__ = [
    "Curve", "Direction", "FunctionalSample", "Grid", "inner_product", "norm",
    "DepthValue", "deepest_index", "depth_floor", "depth_ranks",
    "max_outlyingness", "outlyingness", "rpd", "rpd_batch", "rpd_median",
    "unregularized_depth_batch",
    "fd", "fd_batch", "hd_univariate", "id_batch", "id_depth",
    "pointwise_profile",
    "DirectionPool", "RegularizedPool", "build_pool", "filter_pool",
    "pool_from_directions", "sample_unit_direction", "tune_beta",
    "CurveFileError", "DegenerateSampleError", "DomainError",
    "EmptyDirectionSetError", "RpdError", "StructuralError",
    "STANDARD_NORMAL_QUARTILE", "empirical_quantile", "sample_mad",
    "sample_median",
    "BasisMatrix", "CoefficientModel", "ExperimentConfig",
    "ExperimentFailureError", "ExperimentReport", "breakdown_displacement",
    "build_basis", "clean_model", "degeneracy_table",
    "elliptical_mad_fraction", "generate_curves", "outlier_model",
    "run_experiment",
]
