"""Geometric and level statistics of a single realization.

Level statistics (sojourn, excursion area, streaks) resample the path by
linear interpolation onto a uniform grid of N steps over the query window
and reduce the sampled values; crossings and extrema work on the raw
samples directly.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError, InsufficientDataError
from .series import TimeSeries


@dataclass(frozen=True)
class LevelQuery:
    """A level A, a direction, and an optional sub-interval of the time range."""

    A: float
    direction: str = "greater"  # "greater" | "lower"
    N: int = 10000
    subI: tuple[float, float] | None = None

    def __post_init__(self):
        if self.direction not in ("greater", "lower"):
            raise DomainError('direction must be "greater" or "lower"')
        if self.N < 1:
            raise DomainError("N must be >= 1")
        if self.subI is not None and not self.subI[0] < self.subI[1]:
            raise DomainError("subI must satisfy lo < hi")


def _window(X: TimeSeries, q: LevelQuery) -> tuple[float, float]:
    lo, hi = (X.t_start, X.t_end) if q.subI is None else (float(q.subI[0]), float(q.subI[1]))
    if lo < X.t_start or hi > X.t_end:
        raise DomainError(
            f"subI [{lo}, {hi}] must lie inside the series range [{X.t_start}, {X.t_end}]"
        )
    return lo, hi


def _resample(X: TimeSeries, q: LevelQuery):
    """Values of X on the uniform query grid T1 + k*delta, k = 0..N."""
    t1, t2 = _window(X, q)
    delta = (t2 - t1) / q.N
    grid = t1 + delta * np.arange(q.N + 1)
    return X.interp(grid), delta


def sojourn(X: TimeSeries, q: LevelQuery) -> float:
    """Estimated time the path spends above (or below) level A.

    delta times the count of resampled points satisfying the level
    condition; endpoints are included, so a constant series above A scores
    the window length plus one delta.
    """
    x, delta = _resample(X, q)
    if q.direction == "greater":
        count = int(np.count_nonzero(x >= q.A))
    else:
        count = int(np.count_nonzero(x <= q.A))
    return delta * count


def exc_area(X: TimeSeries, q: LevelQuery) -> float:
    """Estimated area of the path's excursion above (or below) level A."""
    x, delta = _resample(X, q)
    if q.direction == "greater":
        contrib = np.maximum(x - q.A, 0.0)
    else:
        contrib = np.maximum(q.A - x, 0.0)
    return delta * float(np.sum(contrib))


def rs_index(prices, period: int = 14) -> np.ndarray:
    """Relative Strength Index with Wilder smoothing; NaN until warmed up.

    The first ``period`` outputs are NaN.  Initial average gain/loss are
    arithmetic means of the first ``period`` price changes; afterwards
    avg = (prev * (period - 1) + current) / period.  A zero average loss
    gives RSI 100.
    """
    prices = np.asarray(prices, dtype=float)
    period = int(period)
    if period < 1:
        raise DomainError("period must be >= 1")
    if prices.ndim != 1 or prices.shape[0] < period + 1:
        raise InsufficientDataError(f"need at least {period + 1} prices, got {prices.shape}")
    changes = np.diff(prices)
    gains = np.maximum(changes, 0.0)
    losses = np.maximum(-changes, 0.0)

    out = np.full(prices.shape[0], np.nan)
    avg_gain = float(np.mean(gains[:period]))
    avg_loss = float(np.mean(losses[:period]))
    out[period] = 100.0 if avg_loss == 0.0 else 100.0 - 100.0 / (1.0 + avg_gain / avg_loss)
    for i in range(period + 1, prices.shape[0]):
        avg_gain = (avg_gain * (period - 1) + gains[i - 1]) / period
        avg_loss = (avg_loss * (period - 1) + losses[i - 1]) / period
        out[i] = 100.0 if avg_loss == 0.0 else 100.0 - 100.0 / (1.0 + avg_gain / avg_loss)
    return out


def _effective_signs(values: np.ndarray, A: float) -> np.ndarray:
    """Signs of (x - A) with exact hits carrying the previous sign forward."""
    s = np.sign(values - A)
    out = []
    prev = 0.0
    for si in s:
        if si != 0.0:
            prev = si
        if prev != 0.0:
            out.append(prev)
    return np.asarray(out)


def cross_count(X: TimeSeries, A: float) -> int:
    """Number of sign changes of (X - A) across consecutive samples."""
    s = _effective_signs(X.values, float(A))
    if s.shape[0] < 2:
        return 0
    return int(np.count_nonzero(s[1:] != s[:-1]))


def cross_rate(X: TimeSeries, A: float) -> float:
    """Level crossings per unit time over the series' full range."""
    return cross_count(X, A) / (X.t_end - X.t_start)


def cross_mean(X: TimeSeries) -> int:
    """Crossings of the series' own empirical mean level."""
    return cross_count(X, float(np.mean(X.values)))


def streak_stats(X: TimeSeries, q: LevelQuery) -> dict:
    """Longest and mean duration of maximal runs satisfying the level query.

    Durations count delta per resampled point in the run; with no
    satisfying points both statistics are 0.
    """
    x, delta = _resample(X, q)
    ok = x >= q.A if q.direction == "greater" else x <= q.A
    runs = _run_lengths(ok)
    if not runs:
        return {"longest": 0.0, "mean": 0.0}
    durations = np.asarray(runs, dtype=float) * delta
    return {"longest": float(np.max(durations)), "mean": float(np.mean(durations))}


def _run_lengths(mask: np.ndarray) -> list[int]:
    runs = []
    count = 0
    for m in mask:
        if m:
            count += 1
        elif count:
            runs.append(count)
            count = 0
    if count:
        runs.append(count)
    return runs


def extremum(X: TimeSeries, kind: str = "max") -> dict:
    """Extreme sampled value and the earliest time attaining it."""
    if kind not in ("max", "min"):
        raise DomainError('kind must be "max" or "min"')
    idx = int(np.argmax(X.values)) if kind == "max" else int(np.argmin(X.values))
    return {"value": float(X.values[idx]), "time": float(X.times[idx])}
