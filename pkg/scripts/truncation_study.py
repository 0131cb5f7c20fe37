"""Accuracy vs truncation level for the multifractional simulator.

Reproduces the accuracy/runtime table: for each J, simulate at step
2^-max(J-4,3), estimate the Hurst function, and report the average errors
against the true curve.

Usage: python scripts/truncation_study.py [J_MIN J_MAX [REPS]]
"""

import sys

from mfrac import parse_hurst_expr
from mfrac.bench import scaled_reps, truncation_benchmark

j_min = int(sys.argv[1]) if len(sys.argv) > 1 else 5
j_max = int(sys.argv[2]) if len(sys.argv) > 2 else 15
reps = int(sys.argv[3]) if len(sys.argv) > 3 else 10

expr = parse_hurst_expr("0.4 - 0.25*sin(6*pi*t)")
print("J,max_err,mean_err,mse,mean_elapsed_s,reps,subintervals")
for J in range(j_min, j_max + 1):
    row = truncation_benchmark(expr, J, reps=scaled_reps(J, reps), seed=0)
    print(
        f"{row.J},{row.max_err:.6f},{row.mean_err:.6f},{row.mse:.6f},"
        f"{row.mean_elapsed_s:.4f},{row.reps},{row.subintervals}"
    )
