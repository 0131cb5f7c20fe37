"""Empirical vs theoretical covariance of the multifractional process.

Simulates M realizations with a constant Hurst function on a step-0.01
grid and compares the empirical covariance against the truncated series
covariance, printing the maximum absolute deviation.

Usage: python scripts/covariance_agreement.py [M [H]]
"""

import sys
import warnings

import numpy as np

from mfrac import GridSpec, constant, cov_ghbmp, est_cov, simulate_ghbmp
from mfrac.bench import child_seed

warnings.simplefilter("ignore")

M = int(sys.argv[1]) if len(sys.argv) > 1 else 200
H = float(sys.argv[2]) if len(sys.argv) > 2 else 0.3

grid = GridSpec.uniform(0.0, 1.0, 101)
spec = constant(H)
theoretical = cov_ghbmp(grid.times(), spec, J=8)
realizations = [simulate_ghbmp(grid, spec, J=8, seed=child_seed(42, k)) for k in range(M)]
empirical = est_cov(realizations)

dev = np.abs(empirical.entries - theoretical.entries)
print(f"M={M} H={H}")
print(f"max |empirical - theoretical| = {dev.max():.4f}")
print(f"mean|empirical - theoretical| = {dev.mean():.4f}")
print(f"max variance on the grid      = {np.diag(theoretical.entries).max():.4f}")
