"""Hurst-function specifications.

A :class:`HurstSpec` maps a wavelet level ``j`` and a time ``t`` in [0, 1] to
a roughness value in (0, 1).  Smooth targets use the same function at every
level; discontinuous targets are approximated by a sequence of continuous
per-level functions (see :func:`piecewise_ramp`).
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import ExprEvalError, HurstClampWarning

#: Hurst values are clamped into [CLAMP_EPS, 1 - CLAMP_EPS].
CLAMP_EPS = 1e-6


def clamp_hurst(values, warn: bool = True) -> np.ndarray:
    """Clamp Hurst values into [eps, 1-eps], warning if any value grazed."""
    arr = np.asarray(values, dtype=float)
    if not np.all(np.isfinite(arr)):
        # +/-inf clamp to the boundary; NaN has no usable direction.
        if np.any(np.isnan(arr)):
            raise ExprEvalError("Hurst function evaluated to NaN")
    clamped = np.clip(arr, CLAMP_EPS, 1.0 - CLAMP_EPS)
    if warn and np.any(clamped != arr):
        warnings.warn(
            "Hurst values outside (0,1) were clamped to the boundary",
            HurstClampWarning,
            stacklevel=3,
        )
    return clamped


@dataclass(frozen=True)
class HurstSpec:
    """Level-indexed Hurst function with values clamped into (0, 1).

    ``fn(j, t)`` must accept an integer level and a float array of times and
    return an array of the same shape.  ``eval`` applies the clamp policy.
    """

    fn: Callable[[int, np.ndarray], np.ndarray]
    level_dependent: bool = False

    def eval(self, j: int, t) -> np.ndarray:
        t = np.asarray(t, dtype=float)
        raw = np.asarray(self.fn(int(j), t), dtype=float)
        raw = np.broadcast_to(raw, t.shape).copy() if raw.shape != t.shape else raw
        return clamp_hurst(raw)

    def eval_scalar(self, j: int, t: float) -> float:
        return float(self.eval(j, np.asarray([t]))[0])


def constant(h: float) -> HurstSpec:
    """Constant Hurst function H(t) = h."""
    h = float(h)
    return HurstSpec(fn=lambda j, t: np.full_like(t, h), level_dependent=False)


def from_function(f: Callable[[np.ndarray], np.ndarray]) -> HurstSpec:
    """Level-independent spec from a plain function of t."""
    return HurstSpec(fn=lambda j, t: np.asarray(f(t), dtype=float), level_dependent=False)


def from_level_function(f: Callable[[int, np.ndarray], np.ndarray]) -> HurstSpec:
    """Fully level-dependent spec from a function of (j, t)."""
    return HurstSpec(fn=f, level_dependent=True)


def piecewise_ramp(lo: float = 0.2, hi: float = 0.8, center: float = 0.5) -> HurstSpec:
    """Continuous per-level approximations of a step Hurst function.

    Level j is ``lo`` left of the center, ``hi`` right of it, with a linear
    ramp of width 1/max(j,1) bridging the jump; as j grows the ramp narrows
    and the sequence converges to the discontinuous step target.
    """
    lo, hi, center = float(lo), float(hi), float(center)

    def fn(j: int, t: np.ndarray) -> np.ndarray:
        half = 0.5 / max(j, 1)
        ramp = lo + (hi - lo) * (t - (center - half)) / (2.0 * half)
        return np.clip(ramp, min(lo, hi), max(lo, hi))

    return HurstSpec(fn=fn, level_dependent=True)
