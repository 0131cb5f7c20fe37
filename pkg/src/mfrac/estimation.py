"""Time-varying Hurst estimation via generalized quadratic variations.

The estimator rescales the input to [0, 1], samples it on a fine grid of
density M_f and a coarse grid of density M_f / Q, forms L-th order
increments on both, localizes their mean squares over N subintervals, and
reads the Hurst value off the log-ratio of coarse to fine variations:

    H_hat(I) = clamp( log_{Q^2}( V_coarse(I) / V_fine(I) ), 0, 1 )

For uniformly sampled input the two grids are the data grid itself (minus
the last len-1 mod Q points) and its Q-strided subgrid, so no interpolation
happens at all.  Interpolating a rough path onto a grid near its own
density systematically deflates the fine-grid variations and biases H_hat
upward, so the non-uniform fallback interpolates onto grids at most half
the data density.  The local fractal dimension estimate is 2 - H_hat.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field, replace

import numpy as np

from .errors import DegenerateSegmentWarning, DomainError, InsufficientDataError
from .series import TimeSeries

#: Variations at or below (eps * scale)^2 are treated as exactly zero, so
#: affine inputs (annihilated up to rounding) register as degenerate.
_ZERO_VARIATION_EPS = 1e-12


@dataclass(frozen=True)
class EstimatorParams:
    """Quadratic-variation estimator parameters (defaults N=100, Q=2, L=2)."""

    N: int = 100
    Q: int = 2
    L: int = 2

    def __post_init__(self):
        if self.N < 2:
            raise DomainError("N (subinterval count) must be >= 2")
        if self.Q < 2:
            raise DomainError("Q must be >= 2")
        if self.L < 2:
            raise DomainError("L must be >= 2")


@dataclass(frozen=True)
class HurstEstimate:
    """Per-subinterval Hurst (or fractal-dimension) estimates.

    ``interval_starts`` are the left endpoints of the N subintervals on the
    original time scale; ``smoothed`` is None until smoothing is applied;
    ``degenerate`` flags subintervals whose variations vanished.
    """

    interval_starts: np.ndarray
    raw: np.ndarray
    smoothed: np.ndarray | None = None
    degenerate: np.ndarray = field(default=None)

    def __post_init__(self):
        if self.degenerate is None:
            object.__setattr__(self, "degenerate", np.zeros(len(self.raw), dtype=bool))


def gqv_coefficients(L: int) -> np.ndarray:
    """Increment weights a_l = (-1)^(L-l) C(L, l); they kill affine trends."""
    L = int(L)
    if L < 2:
        raise DomainError("L must be >= 2")
    l = np.arange(L + 1)
    return np.array([(-1.0) ** (L - li) * math.comb(L, li) for li in l])


def _localized_variations(x: np.ndarray, M: int, N: int, a: np.ndarray):
    """Mean squared L-th increments of x (sampled at k/M) per subinterval."""
    L = len(a) - 1
    # d_k = sum_l a_l x_{k+l}, k = 0 .. M-L
    d = np.correlate(x, a, mode="valid")
    d2 = d * d
    k_stop = M - L + 1
    sums = np.zeros(N)
    counts = np.zeros(N, dtype=int)
    for n in range(N):
        # cell n holds k with k/M in [n/N, (n+1)/N); the last cell is closed
        lo = min((n * M + N - 1) // N, k_stop)
        hi = min(((n + 1) * M + N - 1) // N, k_stop) if n < N - 1 else k_stop
        if hi > lo:
            sums[n] = d2[lo:hi].sum()
            counts[n] = hi - lo
    return sums, counts


def _sampling_grids(X: TimeSeries, N: int, Q: int):
    """Fine and coarse sample sequences (x_fine, M_fine, x_coarse, M_coarse)."""
    n = len(X) - 1
    gaps = np.diff(X.times)
    if np.allclose(gaps, gaps[0], rtol=1e-8, atol=0.0):
        # Uniform data: exact Q-strided subsampling, no interpolation.
        m_fine = n - (n % Q)
        x_fine = X.values[: m_fine + 1]
        x_coarse = x_fine[::Q]
        return x_fine, m_fine, x_coarse, m_fine // Q
    # Non-uniform data: interpolate, keeping a >=2x density margin so the
    # interpolation does not deflate the fine-grid variations.
    u = (X.times - X.times[0]) / (X.times[-1] - X.times[0])
    m_coarse = Q * N * max(1, n // (Q * Q * N * 2))
    m_fine = Q * m_coarse
    x_fine = np.interp(np.arange(m_fine + 1) / m_fine, u, X.values)
    x_coarse = np.interp(np.arange(m_coarse + 1) / m_coarse, u, X.values)
    return x_fine, m_fine, x_coarse, m_coarse


def estimate_hurst(X: TimeSeries, params: EstimatorParams = EstimatorParams()) -> HurstEstimate:
    """Estimate the time-varying Hurst function of a sampled path.

    Needs at least Q*N*L points.  Subintervals where both variations vanish
    (e.g. affine input) return 1 and are flagged degenerate.
    """
    N, Q, L = params.N, params.Q, params.L
    n_pts = len(X)
    if n_pts < Q * N * L or (n_pts - 1) // Q < N:
        raise InsufficientDataError(
            f"series of length {n_pts} is too short for N={N}, Q={Q}, L={L} "
            f"(needs at least {Q * N * L} points)"
        )
    a = gqv_coefficients(L)
    t0, t1 = X.t_start, X.t_end

    scale = max(1.0, float(np.max(np.abs(X.values))))
    zero_tol = (_ZERO_VARIATION_EPS * scale) ** 2

    x_fine, m_fine, x_coarse, m_coarse = _sampling_grids(X, N, Q)
    sums_c, counts_c = _localized_variations(x_coarse, m_coarse, N, a)
    sums_f, counts_f = _localized_variations(x_fine, m_fine, N, a)

    empty = (counts_c == 0) | (counts_f == 0)
    if np.any(empty):
        # Borrow the nearest populated neighbor so N outputs survive.
        warnings.warn(
            f"{int(empty.sum())} subinterval(s) had no increments; merged with a neighbor",
            DegenerateSegmentWarning,
            stacklevel=2,
        )
        filled = np.flatnonzero(~empty)
        for n in np.flatnonzero(empty):
            src = filled[np.argmin(np.abs(filled - n))]
            sums_c[n], counts_c[n] = sums_c[src], counts_c[src]
            sums_f[n], counts_f[n] = sums_f[src], counts_f[src]

    v_coarse = sums_c / counts_c
    v_fine = sums_f / counts_f

    raw = np.empty(N)
    degenerate = np.zeros(N, dtype=bool)
    log_q2 = 2.0 * math.log(Q)
    for n in range(N):
        vc = v_coarse[n] if v_coarse[n] > zero_tol else 0.0
        vf = v_fine[n] if v_fine[n] > zero_tol else 0.0
        if vf == 0.0:
            raw[n] = 1.0
            degenerate[n] = vc == 0.0
        elif vc == 0.0:
            raw[n] = 0.0
        else:
            raw[n] = min(max(math.log(vc / vf) / log_q2, 0.0), 1.0)
    if np.any(degenerate):
        warnings.warn(
            f"{int(degenerate.sum())} subinterval(s) had vanishing variations",
            DegenerateSegmentWarning,
            stacklevel=2,
        )

    starts = t0 + (np.arange(N) / N) * (t1 - t0)
    return HurstEstimate(interval_starts=starts, raw=raw, degenerate=degenerate)


def estimate_lfd(X: TimeSeries, params: EstimatorParams = EstimatorParams()) -> HurstEstimate:
    """Local fractal dimension estimate, 2 - H_hat per subinterval."""
    est = estimate_hurst(X, params)
    return replace(est, raw=2.0 - est.raw)


def lfd_from_hurst(est: HurstEstimate) -> HurstEstimate:
    """Convert a Hurst estimate (raw and smoothed) to fractal dimension."""
    return replace(
        est,
        raw=2.0 - est.raw,
        smoothed=None if est.smoothed is None else 2.0 - est.smoothed,
    )


def loess_smooth(x: np.ndarray, y: np.ndarray, span: float = 0.75) -> np.ndarray:
    """Locally weighted linear regression with tricube weights.

    For each x_i, fits a degree-1 polynomial weighted by the tricube kernel
    over the ceil(span * n) nearest neighbors; reproduces constants and
    affine sequences exactly (up to rounding).
    """
    if not 0.0 < span <= 1.0:
        raise DomainError("span must lie in (0, 1]")
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    n = x.shape[0]
    r = min(int(math.ceil(span * n)), n - 1)
    dist = np.abs(x[:, None] - x[None, :])
    h = np.sort(dist, axis=1)[:, r]
    h = np.maximum(h, 1e-300)
    w = np.clip(dist / h[:, None], 0.0, 1.0)
    w = (1.0 - w**3) ** 3
    out = np.empty(n)
    for i in range(n):
        wi = w[i]
        sw = wi.sum()
        swx = wi @ x
        swy = wi @ y
        swxx = wi @ (x * x)
        swxy = wi @ (x * y)
        denom = sw * swxx - swx * swx
        if abs(denom) <= 1e-12 * max(sw * swxx, swx * swx, 1e-300):
            out[i] = swy / sw
        else:
            b1 = (sw * swxy - swx * swy) / denom
            b0 = (swy - b1 * swx) / sw
            out[i] = b0 + b1 * x[i]
    return out


def smooth_estimates(est: HurstEstimate, span: float = 0.75) -> HurstEstimate:
    """Fill the smoothed field via LOESS and clamp it into [0, 1]."""
    if len(est.raw) == 0:
        raise DomainError("nothing to smooth")
    smoothed = loess_smooth(est.interval_starts, est.raw, span=span)
    return replace(est, smoothed=np.clip(smoothed, 0.0, 1.0))
