"""Simulators for Brownian, fractional and Haar-based multifractional paths.

Every simulator is a pure function of (parameters, seed): calling it twice
with the same arguments returns bit-identical output regardless of thread
count.
"""

from __future__ import annotations

from typing import Callable

import numpy as np

from . import rng
from ._fastpath import wavelet_sum
from .errors import DomainError
from .hurst import HurstSpec
from .series import GridSpec, TimeSeries

#: Truncation levels above this make the term count (2^{J+1}) impractical.
MAX_TRUNCATION_LEVEL = 26


def simulate_ghbmp(
    grid: GridSpec,
    H: HurstSpec,
    J: int = 15,
    seed: int = 0,
    innovations: Callable[[int], np.ndarray] | None = None,
) -> TimeSeries:
    """Simulate a Haar-based multifractional path on a grid inside [0, 1].

    The path is the truncated wavelet series
    ``X(t) = sum_{j<=J} sum_k kernel(j, k, H_j(k/2^j), t) * eps_{j,k}``
    with i.i.d. standard normal innovations drawn deterministically from the
    seed, keyed by (j, k).  ``X(0) = 0`` exactly.

    ``innovations`` overrides the seeded innovation source; it must map a
    level j to an array of 2^j values (used by linearity tests and variance
    experiments).
    """
    J = int(J)
    if J < 0:
        raise DomainError("truncation level J must be >= 0")
    if J > MAX_TRUNCATION_LEVEL:
        raise DomainError(
            f"truncation level J={J} exceeds the practical bound "
            f"{MAX_TRUNCATION_LEVEL} (term count 2^(J+1))"
        )
    t = grid.times()
    if t[0] < 0.0 or t[-1] > 1.0:
        raise DomainError("the multifractional process is defined on [0, 1]")

    if innovations is None:
        seed = rng.check_seed(seed)
        innovations = lambda j: rng.ghbmp_innovations(seed, j)

    total = (1 << (J + 1)) - 1
    hvals = np.empty(total)
    weights = np.empty(total)
    for j in range(J + 1):
        off = (1 << j) - 1
        kk = np.arange(1 << j, dtype=float)
        hj = H.eval(j, kk / (1 << j))
        eps = np.asarray(innovations(j), dtype=float)
        if eps.shape != (1 << j,):
            raise DomainError(f"innovation source returned wrong shape at level {j}")
        hvals[off : off + (1 << j)] = hj
        weights[off : off + (1 << j)] = eps / (2.0 ** (j * hj) * (hj + 0.5))

    x = wavelet_sum(np.ascontiguousarray(t, dtype=float), J, hvals, weights)
    return TimeSeries(times=t, values=x)


def simulate_bm(grid: GridSpec, seed: int = 0) -> TimeSeries:
    """Brownian motion: X(t_0) = 0, independent N(0, dt) increments."""
    t = grid.times()
    gen = rng.stream(seed, rng.TAG_BM)
    inc = gen.standard_normal(t.shape[0] - 1) * np.sqrt(np.diff(t))
    x = np.concatenate(([0.0], np.cumsum(inc)))
    return TimeSeries(times=t, values=x)


def simulate_bbridge(grid: GridSpec, a: float = 0.0, seed: int = 0) -> TimeSeries:
    """Brownian bridge pinned to terminal value ``a`` at the grid's end.

    Built as X(t) - (t/T)(X(T) - a) from a fresh Brownian path X; the final
    value equals ``a`` exactly.
    """
    bm = simulate_bm(grid, seed=seed)
    t = bm.times
    T = t[-1]
    x = bm.values - (t / T) * (bm.values[-1] - a)
    x[-1] = a
    return TimeSeries(times=t, values=x)


def fgn_autocovariance(H: float, lags) -> np.ndarray:
    """Autocovariance of fractional Gaussian noise at the given lags."""
    k = np.abs(np.asarray(lags, dtype=float))
    return 0.5 * ((k + 1) ** (2 * H) - 2 * k ** (2 * H) + np.abs(k - 1) ** (2 * H))


def simulate_fgn(n: int, H: float, seed: int = 0) -> np.ndarray:
    """Stationary fractional Gaussian noise of length n, unit time step.

    Uses circulant embedding of the autocovariance (exact in distribution);
    if the embedding has negative eigenvalues it falls back to a Cholesky
    factorization of the n x n covariance.
    """
    n = int(n)
    if n < 1:
        raise DomainError("n must be >= 1")
    if not (0.0 < H < 1.0):
        raise DomainError(f"Hurst value must lie in (0, 1), got {H!r}")
    gen = rng.stream(seed, rng.TAG_FGN)
    if n == 1:
        return gen.standard_normal(1)

    gamma = fgn_autocovariance(H, np.arange(n + 1))
    # Circulant first row [g0 .. gn, g_{n-1} .. g1] of size 2n.
    row = np.concatenate([gamma, gamma[-2:0:-1]])
    lam = np.fft.fft(row).real
    tol = -1e-9 * lam.max()
    if lam.min() < tol:
        return _fgn_cholesky(n, H, gen)
    lam = np.maximum(lam, 0.0)

    m = 2 * n
    v = gen.standard_normal(m)
    w = np.empty(m, dtype=complex)
    w[0] = np.sqrt(lam[0] / m) * v[0]
    w[n] = np.sqrt(lam[n] / m) * v[n]
    half = np.sqrt(lam[1:n] / (2 * m))
    w[1:n] = half * (v[1:n] + 1j * v[n + 1 :])
    w[n + 1 :] = np.conj(w[n - 1 : 0 : -1])
    return np.fft.fft(w).real[:n]


def _fgn_cholesky(n: int, H: float, gen: np.random.Generator) -> np.ndarray:
    idx = np.arange(n)
    cov = fgn_autocovariance(H, idx[:, None] - idx[None, :])
    chol = np.linalg.cholesky(cov)
    return chol @ gen.standard_normal(n)


def simulate_fbm(grid: GridSpec, H: float, seed: int = 0) -> TimeSeries:
    """Fractional Brownian motion on a uniform grid, zero at the first point.

    Cumulative sum of fractional Gaussian noise scaled by step^H, so the
    covariance matches (t^{2H} + s^{2H} - |t-s|^{2H}) / 2 on the grid.
    """
    t = grid.times()
    step = GridSpec.from_times(t).step
    noise = simulate_fgn(t.shape[0] - 1, H, seed=seed) * step**H
    x = np.concatenate(([0.0], np.cumsum(noise)))
    return TimeSeries(times=t, values=x)


def simulate_fbbridge(grid: GridSpec, H: float, a: float = 0.0, seed: int = 0) -> TimeSeries:
    """Fractional Brownian bridge terminating at ``a`` at the grid's end."""
    fbm = simulate_fbm(grid, H, seed=seed)
    t = fbm.times
    T = t[-1]
    ratio = t / T
    bracket = 1.0 + ratio ** (2 * H) - (1.0 - ratio) ** (2 * H)
    x = fbm.values - 0.5 * (fbm.values[-1] - a) * bracket
    x[-1] = a
    return TimeSeries(times=t, values=x)
