"""Theoretical and empirical covariance of multifractional paths."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DataError, DomainError, GridMismatchError
from .hurst import HurstSpec
from .kernel import haar_kernel
from .series import TimeSeries


@dataclass(frozen=True)
class CovMatrix:
    """Symmetric covariance matrix over an ascending time grid."""

    grid: np.ndarray
    entries: np.ndarray

    def __post_init__(self):
        grid = np.asarray(self.grid, dtype=float)
        entries = np.asarray(self.entries, dtype=float)
        object.__setattr__(self, "grid", grid)
        object.__setattr__(self, "entries", entries)
        n = grid.shape[0]
        if entries.shape != (n, n):
            raise DataError(f"entries must be {n}x{n}, got {entries.shape}")
        if n > 1 and not np.all(np.diff(grid) > 0):
            raise DataError("grid must be strictly increasing")


def cov_ghbmp(grid, H: HurstSpec, J: int = 8, theta: float | None = None) -> CovMatrix:
    """Truncated wavelet-series covariance of the multifractional process.

    Entry (i, j) sums kernel(t_i) * kernel(t_j) over all levels up to J and
    all translates, which keeps the matrix positive semidefinite by
    construction.  ``theta`` applies Gaussian smoothing afterwards.
    """
    t = np.asarray(grid, dtype=float)
    if t.ndim != 1 or t.shape[0] < 1:
        raise DomainError("grid must be a one-dimensional time sequence")
    if np.any(t < 0.0) or np.any(t > 1.0):
        raise DomainError("the multifractional process is defined on [0, 1]")
    J = int(J)
    if J < 0:
        raise DomainError("truncation level J must be >= 0")

    n = t.shape[0]
    C = np.zeros((n, n))
    for j in range(J + 1):
        pj = 1 << j
        hj = H.eval(j, np.arange(pj, dtype=float) / pj)
        V = np.empty((n, pj))
        for k in range(pj):
            V[:, k] = haar_kernel(j, k, float(hj[k]), t)
        C += V @ V.T
    C = 0.5 * (C + C.T)
    out = CovMatrix(grid=t, entries=C)
    if theta is not None:
        out = smooth_matrix(out, theta)
    return out


def est_cov(realizations: list[TimeSeries], theta: float | None = None) -> CovMatrix:
    """Empirical covariance from M realizations sharing one grid.

    Uses the 1/M normalization (deviations from the cross-realization mean),
    so a single realization gives the zero matrix.
    """
    if len(realizations) < 1:
        raise DataError("need at least one realization")
    grid = realizations[0].times
    for i, r in enumerate(realizations[1:], start=2):
        if r.times.shape != grid.shape or not np.array_equal(r.times, grid):
            raise GridMismatchError(f"realization {i} is on a different time grid")
    X = np.stack([r.values for r in realizations])
    dev = X - X.mean(axis=0)
    C = dev.T @ dev / X.shape[0]
    C = 0.5 * (C + C.T)
    out = CovMatrix(grid=grid, entries=C)
    if theta is not None:
        out = smooth_matrix(out, theta)
    return out


def smooth_matrix(C: CovMatrix, theta: float) -> CovMatrix:
    """Separable Gaussian smoothing with bandwidth theta (in time units).

    The kernel is the Gaussian shifted to reach zero continuously at
    distance 2*theta (max(exp(-d^2/2 theta^2) - exp(-2), 0)), row
    renormalized, so a theta below half a grid step leaves the matrix
    untouched; output is re-symmetrized.
    """
    if not theta > 0.0:
        raise DomainError("theta must be positive")
    g = C.grid
    d = np.abs(g[:, None] - g[None, :])
    W = np.maximum(np.exp(-0.5 * (d / theta) ** 2) - np.exp(-2.0), 0.0)
    W /= W.sum(axis=1, keepdims=True)
    S = W @ C.entries @ W.T
    return CovMatrix(grid=g, entries=0.5 * (S + S.T))
