"""Cluster 15 multifractional realizations by estimated roughness.

Five realizations each of a constant, a linear and an oscillating Hurst
family on a step 2^-11 grid, grouped into three clusters; prints the
per-item cluster table in the style of the clustering result summary.

Usage: python scripts/clustering_example.py [SEED]
"""

import sys
import warnings

import numpy as np

from mfrac import EstimatorParams, GridSpec, constant, from_function, hclust_hurst, kmeans_hurst, simulate_ghbmp
from mfrac.bench import child_seed

warnings.simplefilter("ignore")

seed = int(sys.argv[1]) if len(sys.argv) > 1 else 6

# moderately coarse cells and light smoothing keep the family shapes visible
params = EstimatorParams(N=64)
span = 0.15

grid = GridSpec.uniform(0.0, 1.0, 2**11 + 1)
families = [
    ("constant 0.3", constant(0.3)),
    ("linear 0.8-0.55t", from_function(lambda t: 0.8 - 0.55 * t)),
    ("sine 0.4-0.25sin(6pi t)", from_function(lambda t: 0.4 - 0.25 * np.sin(6 * np.pi * t))),
]
series = []
for fam_idx, (_name, spec) in enumerate(families):
    for rep in range(5):
        series.append(simulate_ghbmp(grid, spec, J=13, seed=child_seed(seed, fam_idx, rep)))

for name, result in (
    ("hierarchical (euclidean, complete)", hclust_hurst(series, k=3, params=params, span=span)),
    ("k-means (nstart=5)", kmeans_hurst(series, k=3, nstart=5, seed=seed, params=params, span=span)),
):
    sizes = ", ".join(str(s) for s in result.cluster_sizes)
    print(f"\n{name}: {len(result.cluster_sizes)} clusters of sizes {sizes}")
    print("  Item  Cluster  Distance_from_center")
    for i, (c, d) in enumerate(zip(result.cluster, result.distances), start=1):
        print(f"  {i:4d}  {c:7d}  {d:20.7f}")
