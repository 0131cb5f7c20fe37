"""Time-series and grid containers used by every simulator and estimator."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DataError, DomainError


@dataclass(frozen=True)
class TimeSeries:
    """A sampled path: strictly increasing times with one value per time."""

    times: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        times = np.asarray(self.times, dtype=float)
        values = np.asarray(self.values, dtype=float)
        object.__setattr__(self, "times", times)
        object.__setattr__(self, "values", values)
        if times.ndim != 1 or values.ndim != 1:
            raise DataError("times and values must be one-dimensional")
        if times.shape[0] != values.shape[0]:
            raise DataError(
                f"length mismatch: {times.shape[0]} times vs {values.shape[0]} values"
            )
        if times.shape[0] < 2:
            raise DataError("a time series needs at least 2 points")
        if not np.all(np.diff(times) > 0):
            raise DataError("times must be strictly increasing")
        if not (np.all(np.isfinite(times)) and np.all(np.isfinite(values))):
            raise DataError("times and values must be finite")

    def __len__(self) -> int:
        return self.times.shape[0]

    @property
    def t_start(self) -> float:
        return float(self.times[0])

    @property
    def t_end(self) -> float:
        return float(self.times[-1])

    def interp(self, at: np.ndarray) -> np.ndarray:
        """Linear interpolation of the path at the given times."""
        return np.interp(at, self.times, self.values)


@dataclass(frozen=True)
class GridSpec:
    """A time grid, either uniform (start, end, n_points) or explicit."""

    t_start: float = 0.0
    t_end: float = 1.0
    n_points: int = 1025
    explicit: np.ndarray | None = field(default=None)

    @classmethod
    def uniform(cls, t_start: float, t_end: float, n_points: int) -> "GridSpec":
        return cls(t_start=float(t_start), t_end=float(t_end), n_points=int(n_points))

    @classmethod
    def from_times(cls, times) -> "GridSpec":
        times = np.asarray(times, dtype=float)
        if times.ndim != 1 or times.shape[0] < 2:
            raise DomainError("explicit grid needs at least 2 points")
        if not np.all(np.diff(times) > 0):
            raise DomainError("explicit grid must be strictly increasing")
        return cls(
            t_start=float(times[0]),
            t_end=float(times[-1]),
            n_points=int(times.shape[0]),
            explicit=times,
        )

    def __post_init__(self):
        if self.explicit is None:
            if not self.t_end > self.t_start:
                raise DomainError("t_end must exceed t_start")
            if self.n_points < 2:
                raise DomainError("a grid needs at least 2 points")

    def times(self) -> np.ndarray:
        if self.explicit is not None:
            return self.explicit
        return np.linspace(self.t_start, self.t_end, self.n_points)

    @property
    def step(self) -> float:
        """Uniform grid step; raises for explicit non-uniform grids."""
        t = self.times()
        d = np.diff(t)
        if not np.allclose(d, d[0], rtol=1e-9, atol=0.0):
            raise DomainError("grid is not uniform")
        return float(d[0])
