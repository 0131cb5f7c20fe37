"""Simulation and analysis of multifractional Gaussian time series.

Simulators for Brownian motion, bridges, fractional Brownian motion /
noise and the Haar-based multifractional process; quadratic-variation
estimation of time-varying Hurst functions and local fractal dimension;
theoretical and empirical covariance; clustering of realizations by
roughness; and geometric statistics (sojourn, excursion area, RSI,
crossings, streaks, extrema).
"""

from .clustering import (
    ClusterResult,
    MergeTree,
    hclust_features,
    hclust_hurst,
    kmeans_hurst,
    lloyd_kmeans,
    pairwise_distance,
)
from .covariance import CovMatrix, cov_ghbmp, est_cov, smooth_matrix
from .errors import (
    DataError,
    DomainError,
    ExprEvalError,
    ExprSyntaxError,
    GridMismatchError,
    InsufficientDataError,
    MfracError,
    UnknownNameError,
)
from .estimation import (
    EstimatorParams,
    HurstEstimate,
    estimate_hurst,
    estimate_lfd,
    gqv_coefficients,
    lfd_from_hurst,
    loess_smooth,
    smooth_estimates,
)
from .expr import HurstExpr, format_expr, parse_hurst_expr, to_hurst_spec
from .geomstats import (
    LevelQuery,
    cross_count,
    cross_mean,
    cross_rate,
    exc_area,
    extremum,
    rs_index,
    sojourn,
    streak_stats,
)
from .hurst import HurstSpec, clamp_hurst, constant, from_function, from_level_function, piecewise_ramp
from .kernel import haar_kernel
from .series import GridSpec, TimeSeries
from .simulate import (
    fgn_autocovariance,
    simulate_bbridge,
    simulate_bm,
    simulate_fbbridge,
    simulate_fbm,
    simulate_fgn,
    simulate_ghbmp,
)

__version__ = "0.1.0"

__all__ = [
    "ClusterResult",
    "CovMatrix",
    "DataError",
    "DomainError",
    "EstimatorParams",
    "ExprEvalError",
    "ExprSyntaxError",
    "GridMismatchError",
    "GridSpec",
    "HurstEstimate",
    "HurstExpr",
    "HurstSpec",
    "InsufficientDataError",
    "LevelQuery",
    "MergeTree",
    "MfracError",
    "TimeSeries",
    "UnknownNameError",
    "clamp_hurst",
    "constant",
    "cov_ghbmp",
    "cross_count",
    "cross_mean",
    "cross_rate",
    "est_cov",
    "estimate_hurst",
    "estimate_lfd",
    "exc_area",
    "extremum",
    "fgn_autocovariance",
    "format_expr",
    "from_function",
    "from_level_function",
    "gqv_coefficients",
    "haar_kernel",
    "hclust_features",
    "hclust_hurst",
    "kmeans_hurst",
    "lfd_from_hurst",
    "lloyd_kmeans",
    "loess_smooth",
    "pairwise_distance",
    "parse_hurst_expr",
    "piecewise_ramp",
    "rs_index",
    "simulate_bbridge",
    "simulate_bm",
    "simulate_fbbridge",
    "simulate_fbm",
    "simulate_fgn",
    "simulate_ghbmp",
    "smooth_estimates",
    "smooth_matrix",
    "sojourn",
    "streak_stats",
    "to_hurst_spec",
]
