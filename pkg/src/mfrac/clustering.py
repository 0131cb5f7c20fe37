"""Clustering of realizations by their smoothed Hurst-function estimates.

Both algorithms first reduce each realization to its smoothed Hurst curve
(one feature vector of length N per realization), then cluster the rows:
agglomerative clustering with Lance-Williams linkage updates, or Lloyd
k-means with seeded random restarts.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from . import rng
from .errors import DataError, DomainError
from .estimation import EstimatorParams, estimate_hurst, smooth_estimates
from .series import TimeSeries

LINKAGES = ("single", "complete", "average", "ward.D", "ward.D2", "mcquitty", "median", "centroid")
#: Linkages whose merge heights are nondecreasing (no inversions).
MONOTONE_LINKAGES = ("single", "complete", "average", "ward.D", "ward.D2", "mcquitty")
DISTANCE_METHODS = ("euclidean", "manhattan", "minkowski", "supremum", "canberra")


def pairwise_distance(u, v, method: str | Callable = "euclidean", p: float = 2.0) -> float:
    """Distance between two equal-length vectors.

    ``method`` is one of euclidean, manhattan, minkowski (with order p >= 1),
    supremum, canberra, or any callable (u, v) -> float.
    """
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    if u.shape != v.shape:
        raise DataError(f"length mismatch: {u.shape} vs {v.shape}")
    if callable(method):
        return float(method(u, v))
    diff = np.abs(u - v)
    if method == "euclidean":
        return float(np.sqrt(np.sum(diff**2)))
    if method == "manhattan":
        return float(np.sum(diff))
    if method == "minkowski":
        if not p >= 1.0:
            raise DomainError("minkowski order p must be >= 1")
        return float(np.sum(diff**p) ** (1.0 / p))
    if method == "supremum":
        return float(np.max(diff))
    if method == "canberra":
        denom = np.abs(u) + np.abs(v)
        terms = np.where(denom > 0.0, diff / np.where(denom > 0.0, denom, 1.0), 0.0)
        return float(np.sum(terms))
    raise DomainError(f"unknown distance method {method!r}")


def distance_matrix(rows: np.ndarray, method="euclidean", p: float = 2.0) -> np.ndarray:
    n = rows.shape[0]
    D = np.zeros((n, n))
    for i in range(n):
        for j in range(i + 1, n):
            D[i, j] = D[j, i] = pairwise_distance(rows[i], rows[j], method, p)
    return D


@dataclass(frozen=True)
class MergeTree:
    """Agglomeration record: one (left, right, height) triple per merge.

    Leaves are 0..n-1; the cluster created by step s has id n+s.  Cutting by
    cluster count k applies the first n-k merges; cutting by height applies
    merges in order while their height stays <= h.
    """

    n_items: int
    steps: list  # [(left_id, right_id, height), ...]

    def cut_k(self, k: int) -> np.ndarray:
        if not 1 <= k <= self.n_items:
            raise DomainError(f"k must lie in [1, {self.n_items}]")
        return self._labels(self.steps[: self.n_items - k])

    def cut_h(self, h: float) -> np.ndarray:
        applied = []
        for step in self.steps:
            if step[2] <= h:
                applied.append(step)
            else:
                break
        return self._labels(applied)

    def _labels(self, steps) -> np.ndarray:
        n = self.n_items
        parent = list(range(n + len(steps)))

        def find(i):
            while parent[i] != i:
                parent[i] = parent[parent[i]]
                i = parent[i]
            return i

        for s, (a, b, _h) in enumerate(steps):
            parent[find(a)] = parent[find(b)] = n + s
        roots = [find(i) for i in range(n)]
        labels = np.empty(n, dtype=int)
        seen: dict[int, int] = {}
        for i, r in enumerate(roots):
            if r not in seen:
                seen[r] = len(seen) + 1
            labels[i] = seen[r]
        return labels


def _lw_coefficients(linkage: str, ni: int, nj: int, nk: int):
    """Lance-Williams update coefficients (alpha_i, alpha_j, beta).

    single/complete are handled directly as min/max and never reach here.
    """
    if linkage == "average":
        s = ni + nj
        return ni / s, nj / s, 0.0
    if linkage == "mcquitty":
        return 0.5, 0.5, 0.0
    if linkage == "median":
        return 0.5, 0.5, -0.25
    if linkage == "centroid":
        s = ni + nj
        return ni / s, nj / s, -ni * nj / s**2
    if linkage in ("ward.D", "ward.D2"):
        s = ni + nj + nk
        return (ni + nk) / s, (nj + nk) / s, -nk / s
    raise DomainError(f"unknown linkage {linkage!r}")


def hclust_features(features: np.ndarray, dist_method="euclidean", linkage: str = "complete",
                    p: float = 2.0) -> MergeTree:
    """Agglomerative clustering of feature rows via Lance-Williams updates.

    ward.D2, median and centroid update in squared-distance space (heights
    are reported as square roots); ties break on the lowest pair indices.
    """
    if linkage not in LINKAGES:
        raise DomainError(f"unknown linkage {linkage!r}")
    n = features.shape[0]
    if n < 2:
        raise DataError("need at least 2 items to cluster")
    D = distance_matrix(features, dist_method, p)
    squared = linkage in ("ward.D2", "median", "centroid")
    if squared:
        D = D**2
    active = list(range(n))
    sizes = {i: 1 for i in range(n)}
    ids = {i: i for i in range(n)}  # active index -> tree id
    steps = []
    for step in range(n - 1):
        best = None
        for ai in range(len(active)):
            for aj in range(ai + 1, len(active)):
                dij = D[active[ai], active[aj]]
                if best is None or dij < best[0]:
                    best = (dij, ai, aj)
        dij, ai, aj = best
        i, j = active[ai], active[aj]
        height = float(np.sqrt(dij)) if squared else float(dij)
        steps.append((ids[i], ids[j], height))
        # Lance-Williams update of distances to the merged cluster, stored at i.
        # single/complete reduce to exact min/max of the previous distances.
        for ak in range(len(active)):
            k = active[ak]
            if k in (i, j):
                continue
            if linkage == "single":
                D[i, k] = D[k, i] = min(D[i, k], D[j, k])
            elif linkage == "complete":
                D[i, k] = D[k, i] = max(D[i, k], D[j, k])
            else:
                alpha_i, alpha_j, beta = _lw_coefficients(linkage, sizes[i], sizes[j], sizes[k])
                D[i, k] = D[k, i] = alpha_i * D[i, k] + alpha_j * D[j, k] + beta * D[i, j]
        sizes[i] = sizes[i] + sizes[j]
        ids[i] = n + step
        del active[aj]
    return MergeTree(n_items=n, steps=steps)


@dataclass(frozen=True)
class ClusterResult:
    """Cluster assignments plus the feature matrices they were built from."""

    cluster: np.ndarray  # labels 1..k per item
    cluster_sizes: np.ndarray
    centers: np.ndarray  # k x N coordinate-wise means
    distances: np.ndarray  # per-item distance to its own center
    smoothed_hurst: np.ndarray  # item x N feature matrix
    raw_hurst: np.ndarray
    interval_starts: np.ndarray
    call: dict
    merge_tree: MergeTree | None = None
    wcss: float | None = None


def _features_from_realizations(realizations: Sequence[TimeSeries], params: EstimatorParams,
                                span: float):
    raws, smooths = [], []
    starts = None
    for idx, series in enumerate(realizations, start=1):
        try:
            est = smooth_estimates(estimate_hurst(series, params), span=span)
        except Exception as exc:
            raise DataError(f"estimation failed for realization {idx}: {exc}") from exc
        raws.append(est.raw)
        smooths.append(est.smoothed)
        starts = est.interval_starts
    return np.array(raws), np.array(smooths), starts


def _assemble(labels: np.ndarray, features: np.ndarray, center_dist) -> tuple:
    k = labels.max()
    centers = np.array([features[labels == c].mean(axis=0) for c in range(1, k + 1)])
    sizes = np.array([(labels == c).sum() for c in range(1, k + 1)])
    dists = np.array([center_dist(features[i], centers[labels[i] - 1]) for i in range(len(labels))])
    return centers, sizes, dists


def hclust_hurst(
    realizations: Sequence[TimeSeries],
    k: int | None = None,
    h: float | None = None,
    dist_method: str | Callable = "euclidean",
    linkage: str = "complete",
    params: EstimatorParams = EstimatorParams(),
    span: float = 0.75,
    p: float = 2.0,
) -> ClusterResult:
    """Hierarchical clustering of realizations by smoothed Hurst estimates.

    Cut the dendrogram at ``k`` clusters or height ``h`` (k wins when both
    are given).  Per-item distances use the clustering distance method.
    """
    if len(realizations) < 2:
        raise DataError("need at least 2 realizations")
    if k is None and h is None:
        raise DomainError("provide a cluster count k or a cut height h")
    raw, smoothed, starts = _features_from_realizations(realizations, params, span)
    tree = hclust_features(smoothed, dist_method, linkage, p)
    labels = tree.cut_k(int(k)) if k is not None else tree.cut_h(float(h))
    centers, sizes, dists = _assemble(
        labels, smoothed, lambda u, v: pairwise_distance(u, v, dist_method, p)
    )
    return ClusterResult(
        cluster=labels,
        cluster_sizes=sizes,
        centers=centers,
        distances=dists,
        smoothed_hurst=smoothed,
        raw_hurst=raw,
        interval_starts=starts,
        call={
            "algorithm": "hclust", "k": k, "h": h, "dist_method": getattr(dist_method, "__name__", dist_method),
            "linkage": linkage, "N": params.N, "Q": params.Q, "L": params.L, "span": span,
        },
        merge_tree=tree,
    )


def kmeanspp_init(features: np.ndarray, k: int, gen: np.random.Generator) -> np.ndarray:
    """Draw k distinct row indices, each subsequent row weighted by its
    squared distance to the nearest center chosen so far."""
    n = features.shape[0]
    idx = [int(gen.integers(n))]
    d2 = ((features - features[idx[0]]) ** 2).sum(axis=1)
    for _ in range(1, k):
        weights = d2.copy()
        weights[idx] = 0.0
        total = weights.sum()
        if total > 0.0:
            nxt = int(gen.choice(n, p=weights / total))
        else:
            remaining = [i for i in range(n) if i not in idx]
            nxt = int(gen.choice(remaining))
        idx.append(nxt)
        d2 = np.minimum(d2, ((features - features[nxt]) ** 2).sum(axis=1))
    return np.asarray(idx, dtype=int)


def lloyd_kmeans(features: np.ndarray, init_idx: np.ndarray, iter_max: int = 10):
    """Lloyd iterations from given initial rows.

    Returns (labels 1..k, centers, wcss_history); assignment ties resolve to
    the lowest cluster index, and a cluster that empties is reseeded with the
    point farthest from its current center.
    """
    X = features
    centers = X[np.asarray(init_idx, dtype=int)].copy()
    k = centers.shape[0]
    labels = np.zeros(X.shape[0], dtype=int)
    history = []
    for _ in range(iter_max):
        d2 = ((X[:, None, :] - centers[None, :, :]) ** 2).sum(axis=2)
        new_labels = np.argmin(d2, axis=1)  # argmin takes the lowest index on ties
        for c in range(k):
            members = new_labels == c
            if np.any(members):
                centers[c] = X[members].mean(axis=0)
            else:
                centers[c] = X[np.argmax(((X - centers[c]) ** 2).sum(axis=1))]
        wcss = float(((X - centers[new_labels]) ** 2).sum())
        history.append(wcss)
        if np.array_equal(new_labels, labels) and len(history) > 1:
            labels = new_labels
            break
        labels = new_labels
    return labels + 1, centers, history


def kmeans_hurst(
    realizations: Sequence[TimeSeries],
    k: int,
    iter_max: int = 10,
    nstart: int = 1,
    seed: int = 0,
    params: EstimatorParams = EstimatorParams(),
    span: float = 0.75,
) -> ClusterResult:
    """Seeded k-means clustering of realizations by smoothed Hurst estimates.

    Runs ``nstart`` restarts, each started from k distinct feature rows
    drawn by distance-weighted sampling, and keeps the run with the
    smallest within-cluster sum of squares.
    """
    if len(realizations) < 1:
        raise DataError("need at least 1 realization")
    if not 1 <= k <= len(realizations):
        raise DomainError(f"k must lie in [1, {len(realizations)}]")
    if nstart < 1:
        raise DomainError("nstart must be >= 1")
    raw, smoothed, starts = _features_from_realizations(realizations, params, span)
    best = None
    for run in range(nstart):
        gen = rng.stream(seed, rng.TAG_KMEANS, run)
        init_idx = kmeanspp_init(smoothed, k, gen)
        labels, centers, history = lloyd_kmeans(smoothed, init_idx, iter_max=iter_max)
        if best is None or history[-1] < best[0]:
            best = (history[-1], labels, centers)
    wcss, labels, _ = best
    labels = _relabel_by_first_appearance(labels)
    centers, sizes, dists = _assemble(
        labels, smoothed, lambda u, v: pairwise_distance(u, v, "euclidean")
    )
    return ClusterResult(
        cluster=labels,
        cluster_sizes=sizes,
        centers=centers,
        distances=dists,
        smoothed_hurst=smoothed,
        raw_hurst=raw,
        interval_starts=starts,
        call={
            "algorithm": "kmeans", "k": k, "iter_max": iter_max, "nstart": nstart,
            "seed": seed, "N": params.N, "Q": params.Q, "L": params.L, "span": span,
        },
        wcss=wcss,
    )


def _relabel_by_first_appearance(labels: np.ndarray) -> np.ndarray:
    seen: dict[int, int] = {}
    out = np.empty_like(labels)
    for i, lab in enumerate(labels):
        if lab not in seen:
            seen[lab] = len(seen) + 1
        out[i] = seen[lab]
    return out
