"""Accuracy/runtime study of the multifractional simulator over truncation levels.

For each truncation level J the sampling step is 2^-n with n = max(J-4, 3),
so the sample size grows with J.  The Hurst estimator runs with a
subinterval count balancing resolution against per-cell variance
(~ sqrt(sample size) / 2, floored at 2 and capped by the data invariant),
and the raw estimates are scored as a step function against the true Hurst
curve on a fixed fine grid, which keeps the error metrics comparable
across levels.
"""

from __future__ import annotations

import math
import time
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateSegmentWarning, DomainError
from .estimation import EstimatorParams, estimate_hurst
from .expr import HurstExpr, to_hurst_spec
from .series import GridSpec
from .simulate import simulate_ghbmp

#: Fine evaluation grid for the error metrics (half-open [0, 1)).
_EVAL_POINTS = 400


def sampling_exponent(J: int) -> int:
    """Grid-step exponent n for level J; the step is 2^-n."""
    return max(J - 4, 3)


def bench_subintervals(points: int, Q: int = 2, L: int = 2) -> int:
    """Benchmark cell count: ~sqrt(sample size)/2 within the data invariant."""
    n = points - 1
    return int(max(2, min(round(math.sqrt(n) / 2), 100, n // (Q * L), n // Q)))


def child_seed(seed: int, *key: int) -> int:
    ss = np.random.SeedSequence(entropy=int(seed), spawn_key=tuple(key))
    return int(ss.generate_state(1, np.uint64)[0])


@dataclass(frozen=True)
class BenchRow:
    J: int
    max_err: float
    mean_err: float
    mse: float
    mean_elapsed_s: float
    reps: int
    subintervals: int


def truncation_benchmark(
    expr: HurstExpr,
    J: int,
    reps: int = 10,
    seed: int = 0,
    Q: int = 2,
    L: int = 2,
) -> BenchRow:
    """Simulate/estimate ``reps`` paths at level J and average the errors."""
    if not 3 <= J <= 20:
        raise DomainError("J must lie in [3, 20]")
    spec = to_hurst_spec(expr)
    points = 2 ** sampling_exponent(J) + 1
    N = bench_subintervals(points, Q, L)
    params = EstimatorParams(N=N, Q=Q, L=L)
    grid = GridSpec.uniform(0.0, 1.0, points)

    fine = np.linspace(0.0, 1.0, _EVAL_POINTS, endpoint=False)
    truth = np.asarray(expr(fine), dtype=float)
    cells = np.minimum((fine * N).astype(int), N - 1)

    maxes, means, mses, times = [], [], [], []
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", DegenerateSegmentWarning)
        for rep in range(reps):
            t0 = time.perf_counter()
            X = simulate_ghbmp(grid, spec, J=J, seed=child_seed(seed, J, rep))
            times.append(time.perf_counter() - t0)
            est = estimate_hurst(X, params)
            diff = np.abs(est.raw[cells] - truth)
            maxes.append(float(diff.max()))
            means.append(float(diff.mean()))
            mses.append(float((diff**2).mean()))
    return BenchRow(
        J=J,
        max_err=float(np.mean(maxes)),
        mean_err=float(np.mean(means)),
        mse=float(np.mean(mses)),
        mean_elapsed_s=float(np.mean(times)),
        reps=reps,
        subintervals=N,
    )


def scaled_reps(J: int, base_reps: int = 10, cap: int = 400) -> int:
    """More repetitions at small J, where single runs are cheap and noisy."""
    points = 2 ** sampling_exponent(J)
    return int(min(cap, base_reps * max(1, 1024 // points)))
